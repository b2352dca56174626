#pragma once

#include "epsum/hyper.hpp"
#include "epsum/operators.hpp"

#include <functional>
#include <optional>

namespace epsum {

/// Gosper-Petkovsek form of a shift quotient: ratio = a(k)/b(k) * c(k+1)/c(k) with
/// gcd(a(k), b(k+h)) = 1 for all integers h >= 0.
struct GosperForm {
    Polynomial a;
    Polynomial b;
    Polynomial c;
};
GosperForm gosper_form(const RationalFunction& ratio, Var k = Var::k);

/// r with r(k+1) t(k+1) - r(k) t(k) = t(k), where ratio = t(k+1)/t(k); nothing if t is not Gosper-summable.
std::optional<RationalFunction> gosper(const RationalFunction& ratio, Var k = Var::k);
std::optional<RationalFunction> gosper(const HyperTerm& t, Var k = Var::k);
bool gosper_verify(const RationalFunction& ratio, const RationalFunction& r, Var k = Var::k);

/// t(n + j)/t(n) from ratio = t(n+1)/t(n), for any integer j.
RationalFunction shift_quotient(const RationalFunction& ratio, Var n, int j);

/// sum_i op.coeff(i) t(N + offset + i, k) = g(N, k+1) - g(N, k) with g = certificate * t.
struct Telescoper {
    RecOperator op;
    RationalFunction certificate;
};

/// Creative telescoping over Q(ep)[N]; the lowest order d <= dmax wins. Throws NotFoundError.
Telescoper zeilberger(const RationalFunction& ratio_k, const RationalFunction& ratio_n, int dmax, Var n = Var::N,
                      Var k = Var::k);
Telescoper zeilberger(const HyperTerm& t, int dmax, Var n = Var::N, Var k = Var::k);

/// Exact rational-function check of the telescoping identity.
bool certificate_verify(const RecOperator& op, const RationalFunction& ratio_k, const RationalFunction& ratio_n,
                        const RationalFunction& certificate, Var n = Var::N, Var k = Var::k);
bool certificate_verify(const RecOperator& op, const HyperTerm& t, const RationalFunction& certificate, Var n = Var::N,
                        Var k = Var::k);

/// Value of op applied to F(n) = sum_{k=lo}^{n} t(n, k) obtained from the certificate at the two boundaries
/// and the summand terms that the natural range leaves out. t(n, k) are exact values; ep is fixed by eps.
Rational definite_sum_rhs(const Telescoper& z, const std::function<Rational(long, long)>& t, long n, long lo,
                          const Rational& eps, Var nv = Var::N, Var kv = Var::k);

}  // namespace epsum
