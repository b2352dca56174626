#pragma once

#include "epsum/polynomial.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace epsum {

/// Dense univariate polynomial over Q, coefficient i belongs to x^i. Always trimmed.
using UPoly = std::vector<Rational>;

UPoly to_upoly(const Polynomial& p, Var v);
Polynomial from_upoly(const UPoly& p, Var v);

void trim(UPoly& p);
int degree(const UPoly& p);
UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly scale(UPoly a, const Rational& c);
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly derivative(const UPoly& p);
UPoly monic(UPoly p);
/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
Rational evaluate(const UPoly& p, const Rational& x);
/// p(x) -> p(x + c)
UPoly shift(const UPoly& p, const Rational& c);
Rational resultant(const UPoly& a, const UPoly& b);
/// s with s * a = 1 mod m; a and m coprime.
UPoly inverse_mod(const UPoly& a, const UPoly& m);
/// Polynomial through the points (xs[i], ys[i]).
UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// Distinct integer roots in increasing order.
std::vector<Integer> integer_roots(const UPoly& p);
/// Distinct rational roots in increasing order.
std::vector<Rational> rational_roots(const UPoly& p);
/// Yun decomposition: p = lc * prod f_i^{m_i}, f_i monic squarefree and pairwise coprime.
std::vector<std::pair<UPoly, int>> squarefree_factorization(const UPoly& p);

/// p = lc * prod f_i^{m_i} with monic, pairwise coprime f_i such that any two f_i are either
/// integer shifts of each other or have no common root up to integer shifts. Linear factors over Q are split off.
std::vector<std::pair<UPoly, int>> shift_atoms(const UPoly& p);
/// h with g(x) = f(x + h), if it exists.
std::optional<Integer> shift_distance(const UPoly& f, const UPoly& g);

/// Integers h (optionally only h >= 0) with deg gcd(a(v), b(v + h)) > 0.
/// a and b may contain other variables; those are treated as generic parameters.
std::vector<Integer> shift_coincidences(const Polynomial& a, const Polynomial& b, Var v, bool nonnegative_only);

}  // namespace epsum
