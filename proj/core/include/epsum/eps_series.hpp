#pragma once

#include "epsum/sum_expr.hpp"

#include <string>
#include <vector>

namespace epsum {

/// Truncation order of a series that is known exactly.
inline constexpr int kExactOrder = 1 << 24;

/// Truncated Laurent series sum_{o >= start} c_o ep^o + O(ep^trunc) with SumExpression coefficients.
class EpsSeries {
public:
    EpsSeries() : start_(kExactOrder), trunc_(kExactOrder) {}
    /// Zero series known up to (excluding) order trunc.
    static EpsSeries zero(int trunc, Var var = Var::N);
    static EpsSeries exact(const SumExpression& e, int order = 0);
    EpsSeries(int start, std::vector<SumExpression> coeffs, int trunc, Var var = Var::N);

    int start() const { return start_; }
    int trunc() const { return trunc_; }
    bool is_exact() const { return trunc_ >= kExactOrder; }
    Var var() const { return var_; }
    /// Lowest order with a nonzero coefficient; trunc() if none.
    int valuation() const;
    bool is_zero() const;

    /// Coefficient of ep^order; zero below start, TruncationError at or beyond trunc.
    SumExpression coefficient(int order) const;
    void set_coefficient(int order, const SumExpression& e);
    /// Recorded coefficients, also leading zeros kept by the constructor.
    const std::vector<SumExpression>& coefficients() const { return coeffs_; }

    EpsSeries truncated(int trunc) const;
    EpsSeries with_var(Var v) const;

    EpsSeries operator-() const;
    EpsSeries& operator+=(const EpsSeries& o);
    EpsSeries& operator-=(const EpsSeries& o);
    friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { return a += b; }
    friend EpsSeries operator-(EpsSeries a, const EpsSeries& b) { return a -= b; }
    friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b);
    friend EpsSeries operator*(const EpsSeries& a, const SumExpression& e);
    friend bool operator==(const EpsSeries& a, const EpsSeries& b);

    /// Multiply by ep^k (k may be negative).
    EpsSeries times_eps_power(int k) const;
    /// Divide by ep^k.
    EpsSeries div_eps(int k) const { return times_eps_power(-k); }
    /// Series at var + j, rewritten over S-sums at var.
    EpsSeries shift(int j) const;
    EpsSeries map_coefficients(const std::function<SumExpression(const SumExpression&)>& f) const;
    /// Exact value at var = n (coefficients become constant expressions).
    EpsSeries evaluate(long n) const;

    /// exp(s) for a series with valuation >= 1.
    EpsSeries exp() const;
    /// log(1 + s) for a series with valuation >= 1.
    EpsSeries log1p() const;

    std::string to_string() const;

private:
    int start_;
    std::vector<SumExpression> coeffs_;
    int trunc_;
    Var var_ = Var::N;
};

/// Laurent expansion of f in ep: f = sum_{o >= start} coeffs[o - start] ep^o, listed up to order < upto.
/// exact is set when the expansion terminates below upto.
struct LaurentExpansion {
    int start = 0;
    std::vector<RationalFunction> coeffs;
    bool exact = false;
};

/// Order of vanishing of f at ep = 0 (negative for poles).
int eps_valuation(const RationalFunction& f);
LaurentExpansion laurent_expand(const RationalFunction& f, int upto);

/// s * f for f rational in ep and the remaining variables.
/// For exact s and non-terminating f the result is truncated at target (TruncationError if target is exact).
EpsSeries multiply(const EpsSeries& s, const RationalFunction& f, int target = kExactOrder);
/// Series of f itself, known through order < trunc.
EpsSeries series_of(const RationalFunction& f, int trunc, Var var = Var::N);
/// Expands every coefficient of e in ep; trunc = kExactOrder requires terminating expansions.
EpsSeries eps_expand(const SumExpression& e, int trunc);

/// Saturating order arithmetic used by truncation bookkeeping.
int order_add(int a, int b);

}  // namespace epsum
