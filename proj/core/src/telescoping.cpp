#include "epsum/telescoping.hpp"
#include "epsum/errors.hpp"
#include "epsum/univariate.hpp"

#include <algorithm>

namespace epsum {

GosperForm gosper_form(const RationalFunction& ratio, Var k)
{
    if (ratio.is_zero()) throw DomainError("zero shift quotient");
    GosperForm f{ratio.num(), ratio.den(), Polynomial(1)};
    for (const auto& hz : shift_coincidences(f.a, f.b, k, true)) {
        long h = hz.get_si();
        while (true) {
            Polynomial g = gcd(f.a, f.b.shift(k, Rational(h)));
            if (g.degree(k) <= 0) break;
            f.a = divide_known(f.a, g);
            f.b = divide_known(f.b, g.shift(k, Rational(-h)));
            for (long i = 1; i <= h; ++i) f.c *= g.shift(k, Rational(-i));
        }
    }
    return f;
}

namespace {

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b)
{
    return divide_known(a * b, gcd(a, b)).monic();
}

struct GosperSolution {
    Polynomial x;
    std::vector<Polynomial> eta;
};

// a(k) x(k+1) - b(k-1) x(k) = sum_i eta_i f_i(k) for a polynomial x and not all eta_i zero.
std::optional<GosperSolution> solve_gosper_equation(const Polynomial& a, const Polynomial& b, const std::vector<Polynomial>& fs,
                                                    Var k)
{
    Polynomial bm = b.shift(k, Rational(-1));
    Polynomial p0 = a - bm, q0 = a + bm;
    int dp = p0.is_zero() ? -1 : p0.degree(k);
    int dq = q0.is_zero() ? -1 : q0.degree(k);
    int df = -1;
    for (const auto& f : fs)
        if (!f.is_zero()) df = std::max(df, f.degree(k));
    if (df < 0) return std::nullopt;
    int bound;
    if (!p0.is_zero() && dp >= dq) {
        bound = df - dp;
    } else {
        bound = df - dq + 1;
        Polynomial coef = dq >= 1 ? p0.coefficient(k, dq - 1) : Polynomial();
        RationalFunction cand = RationalFunction(coef * Rational(-2)) / RationalFunction(q0.coefficient(k, dq));
        if (cand.is_constant()) {
            Rational v = cand.constant_value();
            if (v.get_den() == 1 && v >= 0 && v < 100000) bound = std::max(bound, static_cast<int>(v.get_num().get_si()));
        }
    }
    if (bound < 0) bound = -1;

    std::vector<Polynomial> cols;
    Polynomial kv = var_poly(k), kp1 = kv + Polynomial(1);
    Polynomial pk(1), pk1(1);
    for (int j = 0; j <= bound; ++j) {
        cols.push_back(a * pk1 - bm * pk);
        pk *= kv;
        pk1 *= kp1;
    }
    for (const auto& f : fs) cols.push_back(-f);
    int rows = 0;
    for (const auto& c : cols)
        if (!c.is_zero()) rows = std::max(rows, c.degree(k) + 1);
    Matrix<RationalFunction> m(static_cast<std::size_t>(rows), std::vector<RationalFunction>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto cs = cols[j].coefficients(k);
        for (std::size_t r = 0; r < cs.size(); ++r) m[r][j] = RationalFunction(cs[r]);
    }
    std::size_t nx = static_cast<std::size_t>(bound + 1);
    for (auto& v : nullspace(m, cols.size())) {
        bool has_eta = false;
        for (std::size_t i = nx; i < v.size(); ++i) has_eta = has_eta || !v[i].is_zero();
        if (!has_eta) continue;
        Polynomial den(1);
        for (const auto& e : v) den = poly_lcm(den, e.den());
        std::vector<Polynomial> nums;
        Polynomial content;
        for (const auto& e : v) {
            RationalFunction s = e * RationalFunction(den);
            Polynomial p = s.num() * (1 / s.den().constant_value());
            if (!p.is_zero()) content = content.is_zero() ? p.monic() : gcd(content, p);
            nums.push_back(p);
        }
        GosperSolution sol;
        Polynomial kpow(1);
        for (std::size_t j = 0; j < v.size(); ++j) {
            Polynomial p = nums[j].is_zero() ? nums[j] : divide_known(nums[j], content);
            if (j < nx) {
                sol.x += p * kpow;
                kpow *= kv;
            } else {
                sol.eta.push_back(p);
            }
        }
        return sol;
    }
    return std::nullopt;
}

}  // namespace

std::optional<RationalFunction> gosper(const RationalFunction& ratio, Var k)
{
    GosperForm f = gosper_form(ratio, k);
    auto sol = solve_gosper_equation(f.a, f.b, {f.c}, k);
    if (!sol) return std::nullopt;
    return RationalFunction(f.b.shift(k, Rational(-1)) * sol->x, f.c * sol->eta[0]);
}

std::optional<RationalFunction> gosper(const HyperTerm& t, Var k)
{
    return gosper(t.ratio(k), k);
}

bool gosper_verify(const RationalFunction& ratio, const RationalFunction& r, Var k)
{
    return r.shift(k, 1) * ratio - r == RationalFunction(1);
}

RationalFunction shift_quotient(const RationalFunction& ratio, Var n, int j)
{
    RationalFunction q(1);
    for (int i = 0; i < j; ++i) q *= ratio.shift(n, i);
    for (int i = 1; i <= -j; ++i) q /= ratio.shift(n, -i);
    return q;
}

Telescoper zeilberger(const RationalFunction& ratio_k, const RationalFunction& ratio_n, int dmax, Var n, Var k)
{
    if (dmax < 1) throw DomainError("zeilberger needs dmax >= 1");
    for (int d = 1; d <= dmax; ++d) {
        std::vector<RationalFunction> qs;
        Polynomial den(1);
        for (int i = 0; i <= d; ++i) {
            qs.push_back(shift_quotient(ratio_n, n, i));
            den = poly_lcm(den, qs.back().den());
        }
        RationalFunction ratio_u = ratio_k * RationalFunction(den, den.shift(k, 1));
        GosperForm f = gosper_form(ratio_u, k);
        std::vector<Polynomial> fs;
        for (const auto& q : qs) fs.push_back(q.num() * divide_known(den, q.den()) * f.c);
        auto sol = solve_gosper_equation(f.a, f.b, fs, k);
        if (!sol) continue;
        bool k_free = std::none_of(sol->eta.begin(), sol->eta.end(), [k](const Polynomial& p) { return p.uses(k); });
        if (!k_free) throw std::logic_error("telescoper coefficients depend on the summation variable");
        RecOperator raw(sol->eta, 0, n);
        Telescoper z;
        z.op = raw.primitive();
        std::size_t j = 0;
        while (raw.coeffs()[j].is_zero()) ++j;
        RationalFunction scale = RationalFunction(z.op.coeffs()[j]) / RationalFunction(raw.coeffs()[j]);
        z.certificate = RationalFunction(f.b.shift(k, Rational(-1)) * sol->x, f.c * den) * scale;
        return z;
    }
    throw NotFoundError("no telescoper of order <= " + std::to_string(dmax));
}

Telescoper zeilberger(const HyperTerm& t, int dmax, Var n, Var k)
{
    return zeilberger(t.ratio(k), t.ratio(n), dmax, n, k);
}

bool certificate_verify(const RecOperator& op, const RationalFunction& ratio_k, const RationalFunction& ratio_n,
                        const RationalFunction& certificate, Var n, Var k)
{
    RationalFunction lhs;
    for (int i = 0; i <= op.order(); ++i) {
        if (op.coeff(i).is_zero()) continue;
        lhs += RationalFunction(op.coeff(i)) * shift_quotient(ratio_n, n, op.offset() + i);
    }
    return lhs == certificate.shift(k, 1) * ratio_k - certificate;
}

bool certificate_verify(const RecOperator& op, const HyperTerm& t, const RationalFunction& certificate, Var n, Var k)
{
    return certificate_verify(op, t.ratio(k), t.ratio(n), certificate, n, k);
}

Rational definite_sum_rhs(const Telescoper& z, const std::function<Rational(long, long)>& t, long n, long lo,
                          const Rational& eps, Var nv, Var kv)
{
    const RecOperator& op = z.op;
    long hi = n + op.offset() + op.order();
    std::array<Rational, kVarCount> point{};
    point[static_cast<std::size_t>(nv)] = Rational(n);
    point[static_cast<std::size_t>(Var::ep)] = eps;
    auto step = [&](long kk) {
        Rational s = 0;
        point[static_cast<std::size_t>(kv)] = 0;
        for (int i = 0; i <= op.order(); ++i)
            if (!op.coeff(i).is_zero()) s += op.coeff(i).evaluate_all(point) * t(n + op.offset() + i, kk);
        return s;
    };
    auto direct = [&](long kk) -> std::optional<Rational> {
        point[static_cast<std::size_t>(kv)] = Rational(kk);
        Rational cden = z.certificate.den().evaluate_all(point);
        if (cden == 0) return std::nullopt;
        Rational tv = t(n, kk);
        if (tv == 0) return Rational(0);
        return z.certificate.num().evaluate_all(point) / cden * tv;
    };
    // where the certificate has a pole, g follows from g(k+1) - g(k) = sum_i a_i t(n+i, k)
    auto g = [&](long kk) {
        for (long j = 0; j <= hi - lo + 2; ++j) {
            if (auto v = direct(kk - j)) {
                Rational s = *v;
                for (long m = kk - j; m < kk; ++m) s += step(m);
                return s;
            }
            if (auto v = direct(kk + j)) {
                Rational s = *v;
                for (long m = kk; m < kk + j; ++m) s -= step(m);
                return s;
            }
        }
        throw PoleError("certificate undefined near k = " + std::to_string(kk));
    };
    Rational total = g(hi + 1) - g(lo);
    point[static_cast<std::size_t>(kv)] = 0;
    for (int i = 0; i <= op.order(); ++i) {
        if (op.coeff(i).is_zero()) continue;
        long m = n + op.offset() + i;
        Rational extra = 0;
        for (long kk = std::max(m + 1, lo); kk <= hi; ++kk) extra += t(m, kk);
        total -= op.coeff(i).evaluate_all(point) * extra;
    }
    return total;
}

}  // namespace epsum
