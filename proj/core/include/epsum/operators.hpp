#pragma once

#include "epsum/eps_series.hpp"
#include "epsum/linalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace epsum {

/// sum_{i=0}^{d} a_i(ep, var) F(var + offset + i)
class RecOperator {
public:
    RecOperator() = default;
    explicit RecOperator(std::vector<Polynomial> coeffs, int offset = 0, Var var = Var::N);

    int order() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
    int offset() const { return offset_; }
    Var var() const { return var_; }
    const std::vector<Polynomial>& coeffs() const { return coeffs_; }
    const Polynomial& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    bool is_zero() const;
    bool uses_eps() const;

    /// Leading and trailing zero coefficients removed, offset adjusted.
    RecOperator trimmed() const;
    /// gcd of all coefficients (monic).
    Polynomial content() const;
    /// Divided by its content.
    RecOperator primitive() const;
    /// Coefficients multiplied by f (exact division for rational f is required).
    RecOperator scaled(const RationalFunction& f) const;
    /// var -> var + j in every coefficient.
    RecOperator shifted(int j) const;
    /// Offset set to zero by var -> var - offset.
    RecOperator normalized_offset() const;
    RecOperator substitute_eps(const Rational& value) const;

    std::string to_string(const std::string& name = "F") const;

    friend bool operator==(const RecOperator& a, const RecOperator& b)
    {
        return a.offset_ == b.offset_ && a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<Polynomial> coeffs_;
    int offset_ = 0;
    Var var_ = Var::N;
};

/// Parses sum c_i * F(N + j) with rational c_i; polynomial denominators are cleared, numeric ones kept.
RecOperator parse_rec_operator(std::string_view text, const std::string& name = "F", Var var = Var::N);

struct ScalarRecurrence {
    RecOperator op;
    EpsSeries rhs;
};

/// sum_i a_i * e(var + offset + i); ep is replaced by eps_val when given.
SumExpression op_apply(const RecOperator& op, const SumExpression& e, std::optional<Rational> eps_val = std::nullopt);
/// sum_i a_i(ep, var) * s(var + offset + i) with truncation bookkeeping.
EpsSeries op_apply(const RecOperator& op, const EpsSeries& s);
/// Coefficient of ep^k in every a_i.
RecOperator op_specialize_eps(const RecOperator& op, int k);
/// Numeric application to a sequence of values at fixed ep.
Rational op_apply_values(const RecOperator& op, const std::function<Rational(long)>& f, long n, const Rational& eps);

/// Memoizing sequence; concurrent reads are serialized internally and never change results.
class SequenceOracle {
public:
    SequenceOracle() = default;
    /// Values for n >= base produced by step(n) in increasing n; step may query this oracle below n.
    SequenceOracle(long base, std::function<Rational(long)> step);
    Rational operator()(long n) const;
    long base() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

enum class SystemKind { Differential, Difference };

/// One equation of a difference system:
///   sum terms[(unknown, shift)] * X_unknown(N + shift) = sum known[(name, shift)] * name(N + shift) + rhs
struct SystemEquation {
    std::map<std::pair<std::size_t, int>, RationalFunction> terms;
    std::map<std::pair<std::string, int>, RationalFunction> known;
    EpsSeries rhs = EpsSeries(0, {}, kExactOrder);
    /// Smallest N for which the equation holds.
    int base = 0;
};

/// Square first-order system. Differential kind: D_x X = matrix * X + sum inputs[i][name] * name(x).
/// Difference kind: equations over the coefficient sequences.
struct CoupledSystem {
    SystemKind kind = SystemKind::Difference;
    std::vector<std::string> unknowns;
    Matrix<RationalFunction> matrix;
    std::vector<std::map<std::string, RationalFunction>> inputs;
    std::vector<SystemEquation> equations;
    /// Expansions of the known sequences (or generating-function coefficients).
    std::map<std::string, EpsSeries> known;

    std::size_t size() const { return unknowns.size(); }
    std::size_t index_of(const std::string& name) const;
    /// Explicit right hand side of equation i with the known expansions inserted.
    EpsSeries resolved_rhs(std::size_t i) const;
    std::string equation_string(std::size_t i, bool with_rhs = true) const;
};

/// Parses  lhs = rhs  pairs: lhs a linear form in the unknowns, rhs a series (may use known names).
SystemEquation parse_system_equation(std::string_view lhs, std::string_view rhs, const std::vector<std::string>& unknowns,
                                     int base = 0);

/// A(N) X(N+1) + B(N) X(N) = h(N) for N >= base, with h_i the right hand side of equation i
/// (after re-indexing by reindex[i]).
struct FirstOrderSystem {
    Matrix<RationalFunction> a;
    Matrix<RationalFunction> b;
    std::vector<int> reindex;
    int base = 0;
};

/// Re-indexes each equation so its shifts are 0 and 1; throws DomainError for wider spans.
FirstOrderSystem first_order_form(const CoupledSystem& sys);

/// Generating-function translation x -> N (coefficient comparison of x^N).
CoupledSystem ode_to_rec(const CoupledSystem& sys);

/// Forward iteration of A X(N+1) + B X(N) = h(N) at fixed ep from X(base) = init.
/// rhs(i, n) is the value of h_i at n (already re-indexed).
std::vector<SequenceOracle> system_oracle(const FirstOrderSystem& sys, const std::vector<Rational>& init, const Rational& eps,
                                          std::function<Rational(std::size_t, long)> rhs);

/// Matrix x vector helpers over Q(ep, N).
Matrix<RationalFunction> multiply(const Matrix<RationalFunction>& a, const Matrix<RationalFunction>& b);
Matrix<RationalFunction> shift_matrix(const Matrix<RationalFunction>& a, Var v, int j);

}  // namespace epsum
