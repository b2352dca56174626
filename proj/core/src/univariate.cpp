#include "epsum/univariate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace epsum {

UPoly to_upoly(const Polynomial& p, Var v)
{
    if (p.variable_mask() & ~(1u << static_cast<unsigned>(v)))
        throw std::invalid_argument("expected a univariate polynomial in " + std::string(var_name(v)) + ": " + p.to_string());
    UPoly out(static_cast<std::size_t>(std::max(p.degree(v), 0)) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e[static_cast<std::size_t>(v)])] = c;
    trim(out);
    return out;
}

Polynomial from_upoly(const UPoly& p, Var v)
{
    std::vector<Polynomial::Term> terms;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        Exponents e{};
        e[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(i);
        terms.emplace_back(e, p[i]);
    }
    return Polynomial::from_terms(std::move(terms));
}

void trim(UPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly operator+(const UPoly& a, const UPoly& b)
{
    UPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

UPoly operator-(const UPoly& a, const UPoly& b)
{
    UPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

UPoly scale(UPoly a, const Rational& c)
{
    for (auto& x : a) x *= c;
    trim(a);
    return a;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
{
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    UPoly r = a;
    if (r.size() < b.size()) return {UPoly{}, r};
    UPoly q(r.size() - b.size() + 1, Rational(0));
    Rational inv = 1 / b.back();
    for (std::size_t s = q.size(); s-- > 0;) {
        Rational c = r[s + b.size() - 1] * inv;
        q[s] = c;
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j) r[s + j] -= c * b[j];
    }
    trim(q);
    trim(r);
    return {q, r};
}

UPoly derivative(const UPoly& p)
{
    if (p.size() <= 1) return {};
    UPoly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    trim(d);
    return d;
}

UPoly monic(UPoly p)
{
    if (p.empty()) return p;
    Rational inv = 1 / p.back();
    for (auto& c : p) c *= inv;
    return p;
}

UPoly gcd(const UPoly& a, const UPoly& b)
{
    UPoly x = a, y = b;
    while (!y.empty()) {
        auto r = divmod(x, y).second;
        x = std::move(y);
        y = monic(std::move(r));
    }
    return monic(x);
}

Rational evaluate(const UPoly& p, const Rational& x)
{
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

UPoly shift(const UPoly& p, const Rational& c)
{
    // Horner with (x + c)
    UPoly r;
    UPoly lin = {c, Rational(1)};
    for (std::size_t i = p.size(); i-- > 0;) {
        r = r * lin;
        r = r + UPoly{p[i]};
    }
    trim(r);
    return r;
}

Rational resultant(const UPoly& a, const UPoly& b)
{
    if (a.empty() || b.empty()) return 0;
    int da = degree(a), db = degree(b);
    if (db == 0) return rational_pow(b[0], da);
    if (da == 0) return rational_pow(a[0], db);
    UPoly r = divmod(a, b).second;
    if (r.empty()) return 0;
    int dr = degree(r);
    Rational s = rational_pow(b.back(), da - dr) * resultant(b, r);
    if ((da * db) % 2) s = -s;
    return s;
}

UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    UPoly out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] == 0) continue;
        UPoly basis = {Rational(1)};
        Rational den = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * UPoly{-xs[j], Rational(1)};
            den *= xs[i] - xs[j];
        }
        out = out + scale(basis, ys[i] / den);
    }
    return out;
}

namespace {

using ZPoly = std::vector<Integer>;

ZPoly integer_coefficients(const UPoly& p)
{
    Integer l = 1;
    for (const auto& c : p) l = integer_lcm(l, c.get_den());
    ZPoly z(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational t = p[i] * l;
        z[i] = t.get_num();
    }
    return z;
}

int sign_at(const ZPoly& p, const Integer& x)
{
    Integer r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return sgn(r);
}

ZPoly zderiv(const ZPoly& p)
{
    ZPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return d;
}

// Integers c such that every real root of p in [lo, hi] lies in [c, c + 1].
std::set<Integer> root_brackets(const ZPoly& p, const Integer& lo, const Integer& hi)
{
    std::set<Integer> out;
    if (p.size() <= 1) return out;
    std::set<Integer> crit = root_brackets(zderiv(p), lo, hi);
    std::vector<Integer> pts;
    pts.push_back(lo);
    for (const auto& c : crit) {
        out.insert(c);
        if (c > lo && c < hi) pts.push_back(c);
        if (c + 1 > lo && c + 1 < hi) pts.push_back(c + 1);
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (sign_at(p, pts[i]) == 0) out.insert(pts[i]);
        if (i + 1 == pts.size()) break;
        Integer a = pts[i], b = pts[i + 1];
        int sa = sign_at(p, a), sb = sign_at(p, b);
        if (sa == 0 || sb == 0 || sa == sb) continue;
        while (b - a > 1) {
            Integer m = (a + b) / 2;
            int sm = sign_at(p, m);
            if (sm == 0) {
                a = m;
                break;
            }
            if (sm == sa)
                a = m;
            else
                b = m;
        }
        out.insert(a);
    }
    return out;
}

}  // namespace

std::vector<Integer> integer_roots(const UPoly& p)
{
    if (p.empty()) throw std::invalid_argument("integer roots of the zero polynomial");
    std::vector<Integer> roots;
    if (p.size() == 1) return roots;
    UPoly q = p;
    std::size_t lowest = 0;
    while (q[lowest] == 0) ++lowest;
    if (lowest > 0) {
        roots.push_back(0);
        q.erase(q.begin(), q.begin() + static_cast<long>(lowest));
    }
    if (q.size() > 1) {
        UPoly g = gcd(q, derivative(q));
        if (g.size() > 1) q = divmod(q, g).first;
        ZPoly z = integer_coefficients(q);
        Integer bound = 0;
        for (std::size_t i = 0; i + 1 < z.size(); ++i) {
            Integer a = abs(z[i]);
            if (a > bound) bound = a;
        }
        Integer lead = abs(z.back());
        bound = bound / lead + 2;
        for (const auto& c : root_brackets(z, -bound, bound)) {
            if (sign_at(z, c) == 0) roots.push_back(c);
            if (sign_at(z, c + 1) == 0) roots.push_back(c + 1);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<Rational> rational_roots(const UPoly& p)
{
    if (p.empty()) throw std::invalid_argument("rational roots of the zero polynomial");
    ZPoly z = integer_coefficients(p);
    std::size_t n = z.size() - 1;
    if (n == 0) return {};
    // y = lead * x turns p into a monic integer polynomial.
    Integer lead = z.back();
    UPoly q(n + 1);
    Integer pw = 1;
    for (std::size_t i = n; i-- > 0;) {
        q[i] = Rational(z[i] * pw);
        pw *= lead;
    }
    q[n] = 1;
    std::vector<Rational> out;
    for (const auto& y : integer_roots(q)) out.push_back(make_rational(y, lead));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<UPoly, int>> squarefree_factorization(const UPoly& p)
{
    std::vector<std::pair<UPoly, int>> out;
    if (p.size() <= 1) return out;
    UPoly a = monic(p);
    UPoly b = derivative(a);
    UPoly c = gcd(a, b);
    UPoly w = divmod(a, c).first;
    UPoly y = divmod(b, c).first;
    UPoly z = y - derivative(w);
    int i = 1;
    while (w.size() > 1) {
        UPoly g = gcd(w, z);
        if (g.size() > 1) out.emplace_back(g, i);
        w = divmod(w, g).first;
        y = divmod(z, g).first;
        z = y - derivative(w);
        ++i;
    }
    return out;
}

std::vector<Integer> shift_coincidences(const Polynomial& a, const Polynomial& b, Var v, bool nonnegative_only)
{
    if (a.degree(v) <= 0 || b.degree(v) <= 0) return {};
    unsigned others = (a.variable_mask() | b.variable_mask()) & ~(1u << static_cast<unsigned>(v));
    const long probes[][4] = {{31, 37, 41, 43}, {-53, 59, -61, 67}, {71, -73, 79, 83}, {89, 97, -101, 103}};
    std::vector<std::set<Integer>> candidate_sets;
    for (const auto& pr : probes) {
        Polynomial sa = a, sb = b;
        for (std::size_t i = 0; i < kVarCount; ++i) {
            if (!(others & (1u << i))) continue;
            sa = sa.evaluate(static_cast<Var>(i), pr[i]);
            sb = sb.evaluate(static_cast<Var>(i), pr[i]);
        }
        if (sa.degree(v) != a.degree(v) || sb.degree(v) != b.degree(v)) continue;
        UPoly ua = to_upoly(sa, v), ub = to_upoly(sb, v);
        int deg = degree(ua) * degree(ub);
        std::vector<Rational> hs, rs;
        for (int h = 0; h <= deg; ++h) {
            hs.emplace_back(h);
            rs.push_back(resultant(ua, shift(ub, h)));
        }
        UPoly res = interpolate(hs, rs);
        std::set<Integer> cands;
        if (res.empty()) {
            // identically zero resultant: all shifts coincide, which cannot happen for nonzero polynomials
            throw std::logic_error("degenerate shift resultant");
        }
        for (const auto& h : integer_roots(res))
            if (!nonnegative_only || h >= 0) cands.insert(h);
        candidate_sets.push_back(std::move(cands));
        if (candidate_sets.size() == 2 || others == 0) break;
    }
    if (candidate_sets.empty()) throw std::runtime_error("no admissible specialization for shift resultant");
    std::set<Integer> cands = candidate_sets[0];
    for (std::size_t i = 1; i < candidate_sets.size(); ++i) {
        std::set<Integer> keep;
        for (const auto& h : cands)
            if (candidate_sets[i].count(h)) keep.insert(h);
        cands = std::move(keep);
    }
    std::vector<Integer> out;
    for (const auto& h : cands) {
        Polynomial g = gcd(a, b.shift(v, Rational(h)));
        if (g.degree(v) > 0) out.push_back(h);
    }
    return out;
}

UPoly inverse_mod(const UPoly& a, const UPoly& m)
{
    // extended Euclid on (a mod m, m) tracking the cofactor of a
    UPoly r0 = divmod(a, m).second, r1 = m;
    UPoly s0{Rational(1)}, s1;
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        UPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (degree(r0) != 0) throw std::domain_error("inverse_mod: arguments are not coprime");
    return divmod(scale(s0, 1 / r0[0]), m).second;
}

std::optional<Integer> shift_distance(const UPoly& f, const UPoly& g)
{
    if (degree(f) != degree(g) || degree(f) < 1) return std::nullopt;
    std::size_t d = f.size() - 1;
    // matching the x^(d-1) coefficients of monic f(x + h) and g(x)
    Rational h = (g[d - 1] / g[d] - f[d - 1] / f[d]) / static_cast<long>(d);
    if (h.get_den() != 1) return std::nullopt;
    if (monic(shift(f, h)) != monic(g)) return std::nullopt;
    return h.get_num();
}

std::vector<std::pair<UPoly, int>> shift_atoms(const UPoly& p)
{
    std::vector<std::pair<UPoly, int>> atoms;
    for (auto& [f, m] : squarefree_factorization(p)) {
        UPoly rest = f;
        for (const auto& rho : rational_roots(f)) {
            UPoly lin{-rho, Rational(1)};
            rest = divmod(rest, lin).first;
            atoms.emplace_back(lin, m);
        }
        if (degree(rest) > 0) atoms.emplace_back(monic(rest), m);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < atoms.size() && !changed; ++i) {
            for (std::size_t j = 0; j < atoms.size() && !changed; ++j) {
                const UPoly& fi = atoms[i].first;
                const UPoly& fj = atoms[j].first;
                if (degree(fi) <= 1 && degree(fj) <= 1) continue;
                Polynomial pi = from_upoly(fi, Var::N), pj = from_upoly(fj, Var::N);
                for (const auto& hz : shift_coincidences(pi, pj, Var::N, false)) {
                    if (i == j && hz == 0) continue;
                    Rational h(hz);
                    UPoly g = gcd(fi, shift(fj, h));
                    if (degree(g) < 1) continue;
                    if (degree(g) < degree(fi)) {
                        int m = atoms[i].second;
                        UPoly other = monic(divmod(fi, g).first);
                        atoms[i].first = g;
                        atoms.emplace_back(other, m);
                        changed = true;
                        break;
                    }
                    UPoly gj = monic(shift(g, -h));
                    if (degree(gj) < degree(fj)) {
                        int m = atoms[j].second;
                        UPoly other = monic(divmod(fj, gj).first);
                        atoms[j].first = gj;
                        atoms.emplace_back(other, m);
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    return atoms;
}

}  // namespace epsum
