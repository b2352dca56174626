#pragma once

#include "epsum/numeric.hpp"
#include "epsum/parse.hpp"

#include <map>
#include <string>
#include <vector>

namespace epsum {

/// Gamma(arg)^exponent with arg integer-linear in k and N plus a term r*ep.
struct GammaFactor {
    Polynomial arg;
    int exponent = 1;
};

/// Binomial(top, bottom) with integer-linear arguments in k and N.
struct BinomialFactor {
    Polynomial top;
    Polynomial bottom;
    int exponent = 1;
};

/// Product  rational * prod_v base_v^v * prod Gamma(...)^e * prod Binomial(...)^e * exp(exponent).
/// exponent may only involve ep and formal constants.
class HyperTerm {
public:
    HyperTerm() = default;
    explicit HyperTerm(const RationalFunction& r) : rational_(r) {}

    const RationalFunction& rational() const { return rational_; }
    const std::map<Var, Rational>& geometric() const { return geometric_; }
    const std::vector<GammaFactor>& gammas() const { return gammas_; }
    const std::vector<BinomialFactor>& binomials() const { return binomials_; }
    const SumExpression& exp_argument() const { return exp_argument_; }

    HyperTerm& operator*=(const HyperTerm& o);
    friend HyperTerm operator*(HyperTerm a, const HyperTerm& b) { return a *= b; }
    HyperTerm& operator*=(const RationalFunction& r);
    void add_gamma(const Polynomial& arg, int exponent);
    void add_binomial(const Polynomial& top, const Polynomial& bottom, int exponent);
    void add_geometric(Var v, const Rational& base);
    void add_exp(const SumExpression& e);

    /// t(v + 1) / t(v) as a rational function.
    RationalFunction ratio(Var v) const;
    /// t with v replaced by v + j (j integer), as a new term.
    HyperTerm shifted(Var v, int j) const;
    /// Substitute a rational number for a variable.
    HyperTerm specialized(Var v, const Rational& value) const;

    /// Numeric value at the given point (values for k, N, ep, x).
    Real evaluate(const std::array<Rational, kVarCount>& point) const;

    std::string to_string() const;

private:
    RationalFunction rational_ = RationalFunction(1);
    std::map<Var, Rational> geometric_;
    std::vector<GammaFactor> gammas_;
    std::vector<BinomialFactor> binomials_;
    SumExpression exp_argument_;
};

/// Term syntax: products and quotients of rational functions, c^k, c^N, Gamma[a], Beta[a,b],
/// Binomial[n,k], Factorial[a], Exp[e].
HyperTerm parse_hyper_term(std::string_view text);
HyperTerm to_hyper_term(const Node& n);

/// Pochhammer-type products: prod_{i=0}^{m-1} (p + i) for m >= 0, and 1/prod_{i=1}^{-m} (p - i) for m < 0.
RationalFunction rising_product(const Polynomial& p, int m);

}  // namespace epsum
