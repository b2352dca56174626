#pragma once

#include "epsum/rational_function.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace epsum {

/// One index (a, x) of a generalized S-sum: the nesting level contributes x^i / i^a.
struct SIndex {
    int weight = 1;
    Rational base = 1;

    friend bool operator==(const SIndex& a, const SIndex& b) { return a.weight == b.weight && a.base == b.base; }
    friend std::strong_ordering operator<=>(const SIndex& a, const SIndex& b);
};

/// S_{(a1,x1),...,(ad,xd)}(n) = sum_{n >= i1 >= ... >= id >= 1} prod_j x_j^{i_j} / i_j^{a_j}.
using SWord = std::vector<SIndex>;

/// Index list for the signed notation S_{1,-2}: a negative entry -a becomes (a, -1).
SWord signed_word(const std::vector<int>& indices);

enum class ConstantKind : std::uint8_t { Zeta, EulerGamma, Log };

struct FormalConstant {
    ConstantKind kind = ConstantKind::Zeta;
    int zeta_arg = 0;
    Rational log_arg = 0;

    static FormalConstant zeta(int s);
    static FormalConstant euler_gamma();
    static FormalConstant log(const Rational& q);

    friend bool operator==(const FormalConstant& a, const FormalConstant& b)
    {
        return a.kind == b.kind && a.zeta_arg == b.zeta_arg && a.log_arg == b.log_arg;
    }
    friend std::strong_ordering operator<=>(const FormalConstant& a, const FormalConstant& b);
    std::string to_string() const;
};

/// Product of formal constants with positive exponents, sorted by constant.
using ConstMonomial = std::vector<std::pair<FormalConstant, int>>;

struct TermKey {
    Rational geometric = 1;
    ConstMonomial constants;
    SWord sum;

    friend bool operator==(const TermKey& a, const TermKey& b)
    {
        return a.geometric == b.geometric && a.constants == b.constants && a.sum == b.sum;
    }
    friend std::strong_ordering operator<=>(const TermKey& a, const TermKey& b);
};

/// Finite linear combination of coefficient(var, ...) * c^var * constants * S_w(var).
/// Products of S-sums are linearized by the quasi-shuffle product so each term carries at most one sum.
class SumExpression {
public:
    using TermMap = std::map<TermKey, RationalFunction>;

    SumExpression() = default;
    explicit SumExpression(Var var) : var_(var) {}
    SumExpression(const RationalFunction& c, Var var = Var::N);

    static SumExpression ssum(const SWord& w, Var var = Var::N);
    static SumExpression constant(const FormalConstant& c, Var var = Var::N);
    static SumExpression geometric(const Rational& c, Var var = Var::N);
    static SumExpression term(const TermKey& key, const RationalFunction& coeff, Var var = Var::N);

    Var var() const { return var_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// No sums, no geometric factor, no constants.
    bool is_rational() const;
    RationalFunction as_rational() const;
    /// No sums, no geometric factor and coefficients free of the sum variable.
    bool is_constant_expression() const;
    /// Largest S-sum depth.
    int depth() const;

    SumExpression with_var(Var v) const;

    SumExpression operator-() const;
    SumExpression& operator+=(const SumExpression& o);
    SumExpression& operator-=(const SumExpression& o);
    SumExpression& operator*=(const SumExpression& o);
    SumExpression& operator*=(const RationalFunction& c);
    friend SumExpression operator+(SumExpression a, const SumExpression& b) { return a += b; }
    friend SumExpression operator-(SumExpression a, const SumExpression& b) { return a -= b; }
    friend SumExpression operator*(const SumExpression& a, const SumExpression& b);
    friend SumExpression operator*(SumExpression a, const RationalFunction& c) { return a *= c; }
    friend SumExpression operator*(const RationalFunction& c, SumExpression a) { return a *= c; }
    friend bool operator==(const SumExpression& a, const SumExpression& b) { return a.terms_ == b.terms_; }

    void add_term(const TermKey& key, const RationalFunction& coeff);

    /// Rewrites e(var + j) back in terms of S-sums at var.
    SumExpression shift(int j) const;
    /// Substitute a number for a variable in every coefficient (not the sum variable).
    SumExpression substitute(Var v, const Rational& value) const;
    SumExpression map_coefficients(const std::function<RationalFunction(const RationalFunction&)>& f) const;

    /// Exact value at var = n >= 0; the result only contains constants.
    SumExpression evaluate(long n) const;
    /// Rational value of a constant-free expression; throws if formal constants remain.
    Rational rational_value() const;

    std::string to_string() const;

private:
    Var var_ = Var::N;
    TermMap terms_;
};

/// Quasi-shuffle product of two index words.
std::map<SWord, Integer> stuffle(const SWord& a, const SWord& b);

/// Exact value of S_w(n).
Rational ssum_value(const SWord& w, long n);

std::string word_to_string(const SWord& w);

}  // namespace epsum
