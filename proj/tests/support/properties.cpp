#include "properties.hpp"

#include "oracles.hpp"

#include "epsum/errors.hpp"
#include "epsum/gamma.hpp"
#include "epsum/numeric.hpp"
#include "epsum/parse.hpp"
#include "epsum/telescoping.hpp"
#include "epsum/worked_examples.hpp"

#include <algorithm>
#include <sstream>

namespace epsum::testing {

void PropertyResult::check(bool ok, const std::string& what)
{
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
}

std::string PropertyResult::summary() const
{
    std::ostringstream os;
    os << name << ": " << cases << " cases, " << failures << " failures";
    if (skipped) os << ", " << skipped << " discarded";
    if (!note.empty()) os << "; " << note;
    if (failures) os << "; first: " << first_failure;
    return os.str();
}

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

Polynomial nvar() { return var_poly(Var::N); }
Polynomial epvar() { return var_poly(Var::ep); }

std::array<Rational, kVarCount> at(long n, const Rational& eps = 0, long k = 0)
{
    std::array<Rational, kVarCount> p{};
    p[static_cast<std::size_t>(Var::k)] = k;
    p[static_cast<std::size_t>(Var::N)] = n;
    p[static_cast<std::size_t>(Var::ep)] = eps;
    return p;
}

std::optional<Rational> value_at(const RationalFunction& f, const std::array<Rational, kVarCount>& p)
{
    Rational d = f.den().evaluate_all(p);
    if (d == 0) return std::nullopt;
    return f.num().evaluate_all(p) / d;
}

// value of an exact series with ep-free rational coefficients
Rational exact_series_value(const EpsSeries& s, long n, const Rational& eps)
{
    Rational v = 0;
    for (int o = s.start(); o < s.start() + static_cast<int>(s.coefficients().size()); ++o) {
        SumExpression c = s.coefficient(o);
        if (c.is_zero()) continue;
        v += c.evaluate(n).rational_value() * rational_pow(eps, o);
    }
    return v;
}

Polynomial coeff_at(const RecOperator& op, int shift)
{
    int i = shift - op.offset();
    if (i < 0 || i > op.order()) return Polynomial();
    return op.coeff(i);
}

std::string str(const Rational& q) { return q.get_str(); }

Real determinant(std::vector<std::vector<Real>> a)
{
    std::size_t n = a.size();
    Real det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(a[r][c]) > abs(a[p][c])) p = r;
        if (a[p][c] == 0) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Real f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

Rational exact_binomial(const Rational& top, const Rational& bottom)
{
    if (top.get_den() != 1 || bottom.get_den() != 1) throw DomainError("non-integer binomial");
    long t = top.get_num().get_si(), b = bottom.get_num().get_si();
    if (b < 0 || t < 0 || b > t) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(t), static_cast<unsigned long>(b));
    return Rational(r);
}

// exact value of a term without Gamma factors
Rational exact_term(const HyperTerm& t, const std::array<Rational, kVarCount>& p)
{
    if (!t.gammas().empty() || !t.exp_argument().is_zero()) throw DomainError("term has no exact value");
    Rational r = t.rational().evaluate_all(p);
    for (const auto& [v, b] : t.geometric()) r *= rational_pow(b, p[static_cast<std::size_t>(v)].get_num().get_si());
    for (const auto& b : t.binomials()) {
        Rational bv = exact_binomial(b.top.evaluate_all(p), b.bottom.evaluate_all(p));
        if (b.exponent < 0 && bv == 0) throw PoleError("binomial in a denominator vanishes");
        r *= rational_pow(bv, b.exponent);
    }
    return r;
}

}  // namespace

Rational random_rational(Rng& rng, long range, long max_den)
{
    return make_rational(Integer(uniform(rng, -range, range)), Integer(uniform(rng, 1, max_den)));
}

Polynomial random_polynomial(Rng& rng, const std::vector<Var>& vars, int max_degree, long range)
{
    std::vector<Polynomial::Term> terms;
    std::vector<Exponents> all{Exponents{}};
    for (Var v : vars) {
        std::vector<Exponents> next;
        for (const auto& e : all)
            for (int d = 0; d <= max_degree; ++d) {
                Exponents f = e;
                f[static_cast<std::size_t>(v)] = d;
                int total = 0;
                for (auto x : f) total += x;
                if (total <= max_degree) next.push_back(f);
            }
        all = std::move(next);
    }
    for (const auto& e : all)
        if (coin(rng)) terms.emplace_back(e, random_rational(rng, range, coin(rng, 0.2) ? 3 : 1));
    return Polynomial::from_terms(std::move(terms));
}

Polynomial random_safe_denominator(Rng& rng, int factors)
{
    Polynomial d(1);
    for (int i = 0; i < factors; ++i) d *= nvar() + Polynomial(uniform(rng, 1, 4));
    return d;
}

RationalFunction random_rational_function(Rng& rng, const std::vector<Var>& vars, int max_degree)
{
    Polynomial den = random_polynomial(rng, vars, max_degree);
    if (den.is_zero()) den = Polynomial(1);
    return RationalFunction(random_polynomial(rng, vars, max_degree), den);
}

SWord random_word(Rng& rng, int max_depth, int max_weight, bool generalized)
{
    int depth = static_cast<int>(uniform(rng, 1, max_depth));
    int budget = std::max(max_weight, depth);
    SWord w;
    for (int i = 0; i < depth; ++i) {
        int left = budget - (depth - i - 1);
        SIndex s;
        s.weight = static_cast<int>(uniform(rng, 1, std::min(left, 3)));
        budget -= s.weight;
        static const Rational gen[] = {Rational(1), Rational(-1), Rational(1, 2), Rational(2), Rational(-1, 2)};
        s.base = generalized ? gen[uniform(rng, 0, 4)] : (coin(rng) ? Rational(1) : Rational(-1));
        w.push_back(s);
    }
    return w;
}

SumExpression random_sum_expression(Rng& rng, int terms, int max_depth)
{
    SumExpression e(Var::N);
    for (int i = 0; i < terms; ++i) {
        Polynomial num = random_polynomial(rng, {Var::N}, 2);
        if (num.is_zero()) num = Polynomial(1);
        RationalFunction c(num, random_safe_denominator(rng, static_cast<int>(uniform(rng, 0, 2))));
        if (coin(rng, 0.3))
            e += SumExpression(c);
        else
            e += SumExpression::ssum(random_word(rng, max_depth, 3)) * c;
    }
    return e;
}

EpsSeries random_series(Rng& rng, int start, int length)
{
    std::vector<SumExpression> cs;
    for (int i = 0; i < length; ++i) cs.push_back(random_sum_expression(rng, 2, 1));
    return EpsSeries(start, std::move(cs), start + length);
}

RecOperator compose(const RecOperator& p, const RecOperator& q)
{
    std::vector<Polynomial> c(static_cast<std::size_t>(p.order() + q.order() + 1));
    for (int i = 0; i <= p.order(); ++i)
        for (int j = 0; j <= q.order(); ++j)
            c[static_cast<std::size_t>(i + j)] += p.coeff(i) * q.coeff(j).shift(Var::N, Rational(p.offset() + i));
    return RecOperator(c, p.offset() + q.offset());
}

RecOperator random_factorable_operator(Rng& rng, int order)
{
    RecOperator op({Polynomial(1)});
    for (int i = 0; i < order; ++i) {
        Polynomial a = nvar() + Polynomial(uniform(rng, 1, 4));
        Polynomial b = nvar() + Polynomial(uniform(rng, 1, 4));
        long c = coin(rng, 0.7) ? 1 : -1;
        op = compose(op, RecOperator({b * Rational(-c), a}));
    }
    return op;
}

CoupledSystem random_first_order_system(Rng& rng, std::size_t size)
{
    CoupledSystem sys;
    for (std::size_t i = 0; i < size; ++i) sys.unknowns.push_back("X" + std::to_string(i + 1));
    for (std::size_t i = 0; i < size; ++i) {
        SystemEquation eq;
        eq.base = 0;
        for (std::size_t j = 0; j < size; ++j) {
            Polynomial a = random_polynomial(rng, {Var::N, Var::ep}, 2, 3);
            Polynomial b = random_polynomial(rng, {Var::N, Var::ep}, 2, 3);
            if (i == j && a.is_zero()) a = nvar() + Polynomial(1);
            if (!a.is_zero()) eq.terms[{j, 1}] = RationalFunction(a);
            if (!b.is_zero()) eq.terms[{j, 0}] = RationalFunction(b);
        }
        if (!eq.terms.count({i, 0})) eq.terms[{i, 0}] = RationalFunction(Polynomial(1));
        eq.rhs = EpsSeries::exact(SumExpression(RationalFunction(random_polynomial(rng, {Var::N}, 1, 3))));
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

// core algebra

PropertyResult ring_axioms(Rng& rng, long cases)
{
    PropertyResult r{"ring axioms"};
    const std::vector<Var> vars{Var::k, Var::N, Var::ep, Var::x};
    for (long c = 0; c < cases; ++c) {
        Polynomial a = random_polynomial(rng, vars, 2), b = random_polynomial(rng, vars, 2), d = random_polynomial(rng, vars, 2);
        bool ok = (a + b) + d == a + (b + d) && (a * b) * d == a * (b * d) && a * (b + d) == a * b + a * d && a + b == b + a &&
                  a * b == b * a && a - a == Polynomial();
        r.check(ok, "a = " + a.to_string() + ", b = " + b.to_string() + ", c = " + d.to_string());
    }
    return r;
}

PropertyResult gcd_divides(Rng& rng, long cases)
{
    PropertyResult r{"gcd divides"};
    const std::vector<Var> vars{Var::N, Var::ep};
    for (long c = 0; r.cases < cases && c < 20 * cases; ++c) {
        Polynomial f = random_polynomial(rng, vars, 2);
        Polynomial a = random_polynomial(rng, vars, 3) * f, b = random_polynomial(rng, vars, 3) * f;
        if (a.is_zero() && b.is_zero()) {
            ++r.skipped;
            continue;
        }
        Polynomial g = gcd(a, b);
        bool ok = divide_exact(a, g).has_value() && divide_exact(b, g).has_value() && (f.is_zero() || divide_exact(g, f).has_value());
        r.check(ok, "gcd(" + a.to_string() + ", " + b.to_string() + ") = " + g.to_string());
    }
    return r;
}

PropertyResult evaluation_homomorphism(Rng& rng, long cases)
{
    PropertyResult r{"evaluation homomorphism"};
    const std::vector<Var> vars{Var::N, Var::ep};
    for (long c = 0; r.cases < cases && c < 20 * cases; ++c) {
        RationalFunction f = random_rational_function(rng, vars, 2), g = random_rational_function(rng, vars, 2);
        auto p = at(uniform(rng, -6, 6), random_rational(rng, 5, 4));
        auto fv = value_at(f, p), gv = value_at(g, p);
        if (!fv || !gv) {
            ++r.skipped;
            continue;
        }
        auto prod = value_at(f * g, p), sum = value_at(f + g, p);
        r.check(prod && sum && *prod == *fv * *gv && *sum == *fv + *gv, "f = " + f.to_string() + ", g = " + g.to_string());
    }
    return r;
}

PropertyResult canonical_forms(Rng& rng, long cases)
{
    PropertyResult r{"canonical forms"};
    const std::vector<Var> vars{Var::k, Var::N, Var::ep};
    for (long c = 0; c < cases; ++c) {
        Polynomial p = random_polynomial(rng, vars, 3);
        auto terms = p.terms();
        std::shuffle(terms.begin(), terms.end(), rng);
        Polynomial q;
        for (const auto& [e, coef] : terms) q += Polynomial::monomial(e, coef);
        Polynomial s = Polynomial::from_terms(terms);
        RationalFunction f(p, p.is_zero() ? Polynomial(1) : p), one(1);
        r.check(p == q && p == s && (p.is_zero() || f == one), p.to_string());
    }
    return r;
}

// nested sums

PropertyResult ssum_telescoping(Rng& rng, long cases)
{
    PropertyResult r{"S-sum telescoping"};
    for (long c = 0; c < cases; ++c) {
        SWord w = random_word(rng, 3, 5, coin(rng, 0.4));
        SWord rest(w.begin() + 1, w.end());
        bool ok = true;
        for (long n = 1; n <= 40 && ok; ++n) {
            Rational outer = rational_pow(w[0].base, n) / rational_pow(Rational(n), w[0].weight) * ssum_value(rest, n);
            ok = ssum_value(w, n) - ssum_value(w, n - 1) == outer;
        }
        r.check(ok, word_to_string(w));
    }
    return r;
}

PropertyResult stuffle_numeric(Rng& rng, long cases)
{
    PropertyResult r{"stuffle products"};
    PrecisionScope prec(30);
    for (long c = 0; c < cases; ++c) {
        SWord a = random_word(rng, 3, 5), b = random_word(rng, 3, 5);
        auto prod = stuffle(a, b);
        bool ok = true;
        for (long n = 0; n <= 50 && ok; ++n) {
            Rational exact = 0;
            Real approx = 0;
            for (const auto& [w, m] : prod) {
                exact += Rational(m) * ssum_value(w, n);
                approx += to_real(Rational(m)) * ssum_real(w, n);
            }
            Rational direct = ssum_value(a, n) * ssum_value(b, n);
            ok = exact == direct && relative_deviation(approx, to_real(direct)) < Real("1e-25");
        }
        r.check(ok, word_to_string(a) + " * " + word_to_string(b));
    }
    return r;
}

PropertyResult shift_roundtrip(Rng& rng, long cases)
{
    PropertyResult r{"shift synchronization"};
    PrecisionScope prec(40);
    for (long c = 0; c < cases; ++c) {
        SumExpression e = random_sum_expression(rng, 3);
        if (coin(rng, 0.3)) e += SumExpression::constant(FormalConstant::zeta(2)) * RationalFunction(nvar());
        bool ok = e.shift(1).shift(-1) == e && e.shift(-2).shift(2) == e;
        SumExpression s = e.shift(1);
        for (long n = 0; n <= 30 && ok; ++n) ok = relative_deviation(evaluate_real(s, n), evaluate_real(e, n + 1)) < Real("1e-30");
        r.check(ok, e.to_string());
    }
    return r;
}

PropertyResult normalization_idempotent(Rng& rng, long cases)
{
    PropertyResult r{"canonical sum expressions"};
    for (long c = 0; c < cases; ++c) {
        SumExpression a = random_sum_expression(rng, 2), b = random_sum_expression(rng, 2), d = random_sum_expression(rng, 1);
        SumExpression ab = a * b;
        bool ok = ab == b * a && (a * b) * d == a * (b * d) && (a + b) + d == d + (b + a) && (a - a).is_zero() &&
                  ab + SumExpression() == ab && ab * RationalFunction(1) == ab;
        r.check(ok, a.to_string() + " ; " + b.to_string());
    }
    return r;
}

// series

PropertyResult series_product_numeric(Rng& rng, long cases)
{
    PropertyResult r{"series products"};
    PrecisionScope prec(40);
    for (long c = 0; c < cases; ++c) {
        EpsSeries a = random_series(rng, static_cast<int>(uniform(rng, -2, 0)), static_cast<int>(uniform(rng, 1, 3)));
        EpsSeries b = random_series(rng, static_cast<int>(uniform(rng, -2, 0)), static_cast<int>(uniform(rng, 1, 3)));
        EpsSeries p = a * b;
        bool ok = p.trunc() == std::min(a.start() + b.trunc(), b.start() + a.trunc());
        for (Rational eps : {Rational(1, 100), Rational(1, 1000)}) {
            Real e = to_real(eps);
            for (long n = 1; n <= 20 && ok; ++n) {
                Real bound = 0;
                for (std::size_t i = 0; i < a.coefficients().size(); ++i)
                    for (std::size_t j = 0; j < b.coefficients().size(); ++j)
                        bound += abs(evaluate_real(a.coefficients()[i], n)) * abs(evaluate_real(b.coefficients()[j], n));
                Real diff = abs(evaluate_series(p, n, e) - evaluate_series(a, n, e) * evaluate_series(b, n, e));
                ok = diff <= bound * boost::multiprecision::pow(e, p.trunc()) * Real("1.000001");
            }
        }
        r.check(ok, a.to_string() + " * " + b.to_string());
    }
    return r;
}

PropertyResult exp_log_inverse(Rng& rng, long cases)
{
    PropertyResult r{"exp and log"};
    for (long c = 0; c < cases; ++c) {
        EpsSeries s = random_series(rng, static_cast<int>(uniform(rng, 1, 2)), static_cast<int>(uniform(rng, 1, 3)));
        EpsSeries one = EpsSeries::exact(SumExpression(RationalFunction(1)));
        EpsSeries lhs = s.log1p().exp(), rhs = one + s;
        int t = std::min(lhs.trunc(), rhs.trunc());
        r.check(t == s.trunc() && lhs.truncated(t) == rhs.truncated(t), s.to_string());
    }
    return r;
}

PropertyResult gamma_numeric(long max_n, int order)
{
    PropertyResult r{"Gamma expansions"};
    PrecisionScope prec(50);
    const Rational rs[] = {Rational(1), Rational(-1), Rational(1, 2), Rational(-3, 2), Rational(3)};
    Real worst = 0, lo_ratio = 1e30, hi_ratio = 0;
    const Real e1("1e-3"), e2("1e-4");
    auto run = [&](const EpsSeries& s, long n, const std::function<Real(const Real&)>& exact, const std::string& what) {
        Real err1 = relative_deviation(evaluate_series(s, n, e1), exact(e1));
        Real err2 = relative_deviation(evaluate_series(s, n, e2), exact(e2));
        worst = std::max(worst, std::max(err1, err2));
        Real ratio = err1 / err2;
        lo_ratio = std::min(lo_ratio, ratio);
        hi_ratio = std::max(hi_ratio, ratio);
        Real expected = boost::multiprecision::pow(e1 / e2, order);
        r.check(err1 < Real("1e-8") && err2 < Real("1e-8") && ratio > expected / 4 && ratio < expected * 4,
                what + " at n = " + std::to_string(n) + ": errors " + format_real(err1, 4) + ", " + format_real(err2, 4));
    };
    for (int p = 0; p <= 3; ++p)
        for (const auto& rr : rs) {
            EpsSeries s = gamma_expand(p, Var::N, rr, order);
            for (long n = 1; n <= max_n; ++n)
                run(s, n, [&](const Real& e) { return real_gamma(Real(n + p) + to_real(rr) * e) / real_gamma(Real(n + p)); },
                    "Gamma(N+" + std::to_string(p) + "+(" + str(rr) + ")ep)/Gamma(N+" + std::to_string(p) + ")");
        }
    for (int p = 1; p <= 3; ++p)
        for (const auto& rr : rs) {
            EpsSeries s = gamma_expand(p, std::nullopt, rr, order);
            run(s, 0, [&](const Real& e) { return real_gamma(Real(p) + to_real(rr) * e); },
                "Gamma(" + std::to_string(p) + "+(" + str(rr) + ")ep)");
        }
    r.note = "max relative error " + format_real(worst, 3) + ", error ratio between ep = 1e-3 and 1e-4 in [" + format_real(lo_ratio, 4) +
             ", " + format_real(hi_ratio, 4) + "]";
    return r;
}

PropertyResult summand_numeric()
{
    PropertyResult r{"summand expansion"};
    PrecisionScope prec(40);
    HyperTerm t = fixtures::summand();
    const int order = 1;
    SummandExpansion e = summand_expand(t, Var::k, order);
    Rational eps(1, 1000);
    Real ev = to_real(eps), worst = 0;
    for (long n = 1; n <= 8; ++n) {
        Real series_sum = 0, direct = 0;
        for (long k = 1; k <= n; ++k) {
            auto p = at(n, eps, k);
            series_sum += e.hyper.evaluate(p) * evaluate_series(e.series, k, ev);
            direct += t.evaluate(p);
        }
        Real dev = relative_deviation(series_sum, direct);
        worst = std::max(worst, dev);
        Real tol = 100 * boost::multiprecision::pow(ev, order - e.series.start());
        r.check(dev < tol, "N = " + std::to_string(n) + ": deviation " + format_real(dev, 4));
    }
    r.note = "max relative defect " + format_real(worst, 3) + " at ep = 1/1000";
    return r;
}

// operators

PropertyResult op_apply_numeric(Rng& rng, long cases)
{
    PropertyResult r{"operator application"};
    Rational eps(1, 7);
    for (long c = 0; r.cases < cases && c < 20 * cases; ++c) {
        std::vector<Polynomial> cs;
        for (int i = 0; i < 3; ++i) cs.push_back(random_polynomial(rng, {Var::N, Var::ep}, 2));
        RecOperator op(cs);
        if (op.is_zero()) {
            ++r.skipped;
            continue;
        }
        SumExpression e = random_sum_expression(rng, 3);
        SumExpression applied = op_apply(op, e, eps);
        bool ok = true;
        for (long n = 0; n <= 30 && ok; ++n)
            ok = applied.evaluate(n).rational_value() ==
                 op_apply_values(op, [&](long m) { return e.evaluate(m).rational_value(); }, n, eps);
        r.check(ok, op.to_string() + " on " + e.to_string());
    }
    return r;
}

PropertyResult op_specialize_reassembles(Rng& rng, long cases)
{
    PropertyResult r{"ep specialization"};
    for (long c = 0; c < cases; ++c) {
        std::vector<Polynomial> cs;
        for (int i = 0; i < 3; ++i) cs.push_back(random_polynomial(rng, {Var::N, Var::ep}, 3));
        RecOperator op(cs, static_cast<int>(uniform(rng, -1, 1)));
        int deg = 0;
        for (const auto& p : cs) deg = std::max(deg, p.is_zero() ? 0 : p.degree(Var::ep));
        bool ok = true;
        for (int s = op.offset(); s <= op.offset() + op.order(); ++s) {
            Polynomial sum;
            for (int k = 0; k <= deg; ++k) sum += coeff_at(op_specialize_eps(op, k), s) * epvar().pow(static_cast<unsigned>(k));
            ok = ok && sum == coeff_at(op, s);
        }
        r.check(ok, op.to_string());
    }
    return r;
}

PropertyResult ode_roundtrip(Rng& rng, long cases)
{
    PropertyResult r{"differential to difference"};
    const long K = 30;
    for (long c = 0; c < cases; ++c) {
        CoupledSystem ode;
        ode.kind = SystemKind::Differential;
        ode.unknowns = {"X1", "X2"};
        Polynomial onex = Polynomial(1) - var_poly(Var::x);
        std::vector<std::vector<Polynomial>> pm(2, std::vector<Polynomial>(2));
        std::vector<Rational> cin(2);
        for (std::size_t i = 0; i < 2; ++i) {
            std::vector<RationalFunction> row;
            for (std::size_t j = 0; j < 2; ++j) {
                pm[i][j] = random_polynomial(rng, {Var::ep}, 1, 3);
                row.push_back(RationalFunction(pm[i][j], onex));
            }
            ode.matrix.push_back(row);
            cin[i] = random_rational(rng, 3);
            ode.inputs.push_back({{"B", RationalFunction(Polynomial(cin[i]), onex)}});
        }
        ode.known["B"] = EpsSeries::exact(SumExpression(RationalFunction(Polynomial(1), nvar() + Polynomial(1))));
        Rational eps(2, 9);
        bool ok = true;
        std::string what;
        try {
            CoupledSystem rec = ode_to_rec(ode);
            FirstOrderSystem fo = first_order_form(rec);
            auto h = first_order_rhs(rec, fo);
            std::vector<Rational> init{random_rational(rng, 4), random_rational(rng, 4)};
            auto x = system_oracle(fo, init, eps, [&](std::size_t i, long n) { return exact_series_value(h[i].evaluate(n), n, eps); });
            if (fo.base > 0) throw DomainError("translated system starts at N = " + std::to_string(fo.base));
            for (long n = 0; n < K && ok; ++n)
                for (std::size_t i = 0; i < 2 && ok; ++i) {
                    // (N+1) X_{N+1} - N X_N = sum_j P_ij X_j(N) + c_i B_N
                    Rational lhs = Rational(n + 1) * x[i](n + 1) - Rational(n) * x[i](n);
                    Rational rhs = cin[i] / Rational(n + 1);
                    for (std::size_t j = 0; j < 2; ++j) rhs += pm[i][j].evaluate_all(at(n, eps)) * x[j](n);
                    ok = lhs == rhs;
                    if (!ok) what = "coefficient of x^" + std::to_string(n) + " in line " + std::to_string(i + 1);
                }
        } catch (const Error& e) {
            ok = false;
            what = e.what();
        }
        r.check(ok, what);
    }
    return r;
}

// telescoping

PropertyResult gosper_certificates(Rng& rng, long cases)
{
    PropertyResult r{"Gosper certificates"};
    Polynomial kv = var_poly(Var::k);
    long found = 0;
    for (long c = 0; r.cases < cases && c < 20 * cases; ++c) {
        bool summable = c % 2 == 0;
        RationalFunction ratio;
        if (summable) {
            Polynomial qn(random_rational(rng, 2) == 0 ? Rational(1) : Rational(uniform(rng, 1, 2)) * (coin(rng) ? 1 : -1));
            Polynomial qd(1);
            for (long i = uniform(rng, 0, 2); i > 0; --i) qn *= kv + Polynomial(uniform(rng, 1, 5));
            for (long i = uniform(rng, 0, 2); i > 0; --i) qd *= kv + Polynomial(uniform(rng, 1, 5));
            RationalFunction q(qn, qd);
            Polynomial rn = random_polynomial(rng, {Var::k}, 1, 3);
            if (rn.is_zero()) rn = kv;
            RationalFunction rr(rn, coin(rng) ? Polynomial(1) : kv + Polynomial(uniform(rng, 1, 3)));
            // t(k) = r(k+1) h(k+1) - r(k) h(k) with h(k+1)/h(k) = q(k)
            RationalFunction u = rr.shift(Var::k, 1) * q - rr;
            if (u.is_zero()) {
                ++r.skipped;
                continue;
            }
            ratio = q * (rr.shift(Var::k, 2) * q.shift(Var::k, 1) - rr.shift(Var::k, 1)) / u;
            if (ratio.is_zero()) {
                ++r.skipped;
                continue;
            }
        } else {
            Polynomial num = random_polynomial(rng, {Var::k}, 2, 4), den = random_polynomial(rng, {Var::k}, 2, 4);
            if (num.is_zero() || den.is_zero()) {
                ++r.skipped;
                continue;
            }
            ratio = RationalFunction(num, den);
        }
        std::optional<RationalFunction> cert;
        try {
            cert = gosper(ratio);
        } catch (const Error&) {
        }
        if (cert) ++found;
        bool ok = cert ? gosper_verify(ratio, *cert) : !summable;
        r.check(ok, (summable ? "summable ratio " : "ratio ") + ratio.to_string());
    }
    r.note = std::to_string(found) + " certificates found";
    return r;
}

namespace {

const char* const kTelescopingTerms[] = {
    "Binomial[N,k]",
    "Binomial[N,k]^2",
    "(-1)^k*Binomial[N,k]/(k+1+ep)",
    "Binomial[N,k]*Binomial[N+k,k]",
    "(-1)^k*Binomial[N,k]*(k+ep)/(k+2)",
    "2^k*Binomial[N,k]/(k+ep+1)",
};

}  // namespace

PropertyResult zeilberger_fibers()
{
    PropertyResult r{"telescoper fibers"};
    Rational eps(1, 7);
    for (const char* text : kTelescopingTerms) {
        HyperTerm t = parse_hyper_term(text);
        bool ok = true;
        std::string what = text;
        try {
            Telescoper z = zeilberger(t, 3);
            ok = certificate_verify(z.op, t, z.certificate);
            auto tv = [&](long n, long k) { return exact_term(t, at(n, eps, k)); };
            auto sum = [&](long m) {
                Rational s = 0;
                for (long k = 0; k <= m; ++k) s += tv(m, k);
                return s;
            };
            int checked = 0;
            for (long n = std::max(0, -z.op.offset()); n <= 12 && ok; ++n) {
                Rational lhs = op_apply_values(z.op, sum, n, eps), rhs;
                try {
                    rhs = definite_sum_rhs(z, tv, n, 0, eps);
                } catch (const PoleError&) {
                    // certificate singular for every k at this N
                    continue;
                }
                ++checked;
                ok = lhs == rhs;
                if (!ok) what += " at N = " + std::to_string(n);
            }
            if (ok && checked < 8) {
                ok = false;
                what += ": only " + std::to_string(checked) + " values of N checked";
            }
        } catch (const Error& e) {
            ok = false;
            what += std::string(": ") + e.what();
        }
        r.check(ok, what);
    }
    return r;
}

PropertyResult zeilberger_minimal()
{
    PropertyResult r{"telescoper minimality"};
    std::vector<HyperTerm> terms;
    for (const char* text : kTelescopingTerms) terms.push_back(parse_hyper_term(text));
    terms.push_back(fixtures::summand());
    for (const auto& t : terms) {
        bool ok = true;
        try {
            Telescoper z = zeilberger(t, 3);
            if (z.op.order() > 1) {
                try {
                    zeilberger(t, z.op.order() - 1);
                    ok = false;
                } catch (const NotFoundError&) {
                }
            }
        } catch (const Error&) {
            ok = false;
        }
        r.check(ok, t.to_string());
    }
    return r;
}

// recurrence solving

PropertyResult rec_solutions(Rng& rng, long cases)
{
    PropertyResult r{"recurrence solutions"};
    PrecisionScope prec(40);
    for (long c = 0; c < cases; ++c) {
        int order = static_cast<int>(uniform(rng, 1, 3));
        RecOperator op = random_factorable_operator(rng, order);
        SumExpression rhs(Var::N);
        switch (c % 3) {
        case 1: rhs = SumExpression(RationalFunction(Polynomial(1), nvar() + Polynomial(uniform(rng, 1, 3)))); break;
        case 2: rhs = SumExpression(RationalFunction(nvar() * Rational(uniform(rng, 1, 3)))); break;
        default: break;
        }
        std::string what = op.to_string() + " = " + rhs.to_string();
        bool ok = true;
        try {
            SolutionSet set = dalembertian_solve(op, rhs);
            ok = set.complete && static_cast<int>(set.homogeneous_basis.size()) == op.order() && set.particular.has_value();
            if (!ok) what += ": incomplete solution set";
            for (const auto& b : set.homogeneous_basis) ok = ok && op_apply(op, b).is_zero();
            if (ok && set.particular) ok = (op_apply(op, *set.particular) - rhs).is_zero();
            if (ok) {
                std::vector<std::vector<Real>> cas;
                for (int i = 0; i < order; ++i) {
                    std::vector<Real> row;
                    for (const auto& b : set.homogeneous_basis) row.push_back(evaluate_real(b, 5 + i));
                    cas.push_back(row);
                }
                ok = abs(determinant(cas)) > Real("1e-20");
                if (!ok) what += ": Casoratian vanishes";
            }
            if (ok) {
                std::vector<InitialValue> ivs;
                std::vector<Rational> vals;
                for (int i = 0; i < order; ++i) {
                    vals.push_back(random_rational(rng, 5, 3));
                    ivs.push_back({1 + i, SumExpression(RationalFunction(vals.back()))});
                }
                MatchResult m = match_initial_values(set, ivs);
                for (int i = 0; i < order && ok; ++i) ok = m.solution.evaluate(1 + i).rational_value() == vals[static_cast<std::size_t>(i)];
                for (long n = 1; ok && static_cast<long>(vals.size()) < order + 10; ++n) {
                    Rational s = rhs.evaluate(n).rational_value();
                    for (int i = 0; i < order; ++i) s -= op.coeff(i).evaluate_all(at(n)) * vals[static_cast<std::size_t>(n - 1 + i)];
                    vals.push_back(s / op.coeff(order).evaluate_all(at(n)));
                    ok = m.solution.evaluate(n + order).rational_value() == vals.back();
                }
                if (!ok) what += ": initial values not reproduced";
            }
        } catch (const Error& e) {
            ok = false;
            what += std::string(": ") + e.what();
        }
        r.check(ok, what);
    }
    return r;
}

// bootstrap

PropertyResult bootstrap_random(Rng& rng, long cases)
{
    PropertyResult r{"bootstrap"};
    for (long c = 0; c < cases; ++c) {
        RecOperator base = random_factorable_operator(rng, 2);
        std::vector<Polynomial> cs = base.coeffs();
        for (auto& p : cs) p += epvar() * random_polynomial(rng, {Var::N}, 1, 2);
        RecOperator op(cs);
        std::vector<SumExpression> phi;
        for (int i = 0; i < 3; ++i) phi.push_back(random_sum_expression(rng, 2, 1));
        EpsSeries exact(-1, phi, kExactOrder);
        EpsSeries rhs = op_apply(op, exact);
        std::vector<EpsSeries> ivs{exact.evaluate(1), exact.evaluate(2)};
        std::string what = op.to_string() + " with solution " + exact.to_string();
        bool ok = true;
        try {
            BootstrapResult b = bootstrap_expansion(op, rhs, ivs, 3);
            ok = b.complete;
            if (!ok) what += ": " + b.failure;
            for (int o = -1; o <= 1 && ok; ++o) ok = b.series.coefficient(o) == exact.coefficient(o);
            ok = ok && bootstrap_certify(op, rhs, b.series);
            for (std::size_t i = 0; i < ivs.size() && ok; ++i)
                for (int o = -1; o <= 1 && ok; ++o)
                    ok = b.series.coefficient(o).evaluate(static_cast<long>(i) + 1) == ivs[i].coefficient(o);
            NormalizedRecurrence n1 = normalize_leading(op.scaled(RationalFunction(epvar())), rhs.times_eps_power(1), ivs);
            NormalizedRecurrence n2 = normalize_leading(n1.op, n1.rhs, ivs);
            ok = ok && n1.eps_shift == 1 && n1.op == op && n2.op == n1.op && n2.rhs == n1.rhs && n2.lambda == n1.lambda &&
                 n2.eps_shift == 0;
        } catch (const Error& e) {
            ok = false;
            what += std::string(": ") + e.what();
        }
        r.check(ok, what);
    }
    return r;
}

PropertyResult bootstrap_numeric()
{
    PropertyResult r{"bootstrap against iteration"};
    PrecisionScope prec(40);
    RecOperator op = fixtures::expansion_operator();
    EpsSeries rhs = fixtures::expansion_rhs();
    auto ivs = fixtures::expansion_ivs();
    const int orders = 3;
    BootstrapResult b = bootstrap_expansion(op, rhs, ivs, orders);
    r.check(b.complete, "bootstrap incomplete");
    auto deviations = [&](const Rational& eps) {
        Real ev = to_real(eps);
        RecOperator at_eps = op.substitute_eps(eps);
        auto f = iterate_real(at_eps, [&](long n) { return evaluate_series(rhs, n, ev); },
                              {evaluate_series(ivs[0], 1, ev), evaluate_series(ivs[1], 2, ev)}, 1, 12);
        std::vector<Real> dev;
        for (long n = 1; n <= 12; ++n)
            dev.push_back(relative_deviation(evaluate_series(b.series, n, ev), f[static_cast<std::size_t>(n - 1)]));
        return dev;
    };
    // the truncation error must be O(ep^orders): bounded at 1e-3 and scaling by ~1e3 down to 1e-4
    auto d3 = deviations(Rational(1, 1000)), d4 = deviations(Rational(1, 10000));
    Real bound = 1000 * boost::multiprecision::pow(Real("1e-3"), orders), worst = 0, min_ratio = -1;
    for (std::size_t i = 0; i < d3.size(); ++i) {
        worst = std::max(worst, d3[i]);
        Real ratio = d4[i] > 0 ? d3[i] / d4[i] : Real(1e30);
        if (min_ratio < 0 || ratio < min_ratio) min_ratio = ratio;
        r.check(d3[i] < bound && ratio > 300, "N = " + std::to_string(i + 1) + ": deviation " + format_real(d3[i], 4) +
                                                   ", ratio " + format_real(ratio, 4));
    }
    r.note = "max relative deviation " + format_real(worst, 3) + " at ep = 1/1000, smallest ratio to ep = 1/10000 " +
             format_real(min_ratio, 4);
    return r;
}

// coupled systems

PropertyResult uncoupling_fibers(Rng& rng, long cases, long max_n)
{
    PropertyResult r{"uncoupling fibers"};
    long attempts = 0;
    for (long c = 0; c < cases;) {
        if (++attempts > 20 * cases) break;
        std::size_t size = c % 2 == 0 ? 2 : 3;
        CoupledSystem sys = random_first_order_system(rng, size);
        std::optional<UncoupledForm> form;
        try {
            form = uncouple_auto(sys);
        } catch (const DegeneratePivotError&) {
            ++r.skipped;
            continue;
        } catch (const DomainError&) {
            ++r.skipped;
            continue;
        }
        const auto& fo = form->first_order;
        auto h = first_order_rhs(sys, fo);
        bool ok = true, usable = true;
        std::string what;
        for (Rational eps : {Rational(1, 3), Rational(1, 7)}) {
            auto hv = [&](std::size_t i, long n) { return exact_series_value(h[i].evaluate(n), n, eps); };
            std::vector<Rational> init;
            for (std::size_t i = 0; i < size; ++i) init.push_back(random_rational(rng, 5, 2));
            auto x = system_oracle(fo, init, eps, hv);
            try {
                x[0](max_n + static_cast<long>(size));
            } catch (const PoleError&) {
                usable = false;
                break;
            }
            const auto& xp = x[form->pivot];
            for (long n = fo.base; n + form->scalar_op.order() + form->scalar_op.offset() <= max_n && ok; ++n) {
                bool defined = true;
                for (const auto& p : form->scalar_op.coeffs()) defined = defined && true;
                Rational lhs = op_apply_values(form->scalar_op, [&](long m) { return xp(m); }, n, eps);
                Rational rhs;
                try {
                    rhs = form->scalar_rhs.evaluate(n, eps, hv);
                } catch (const PoleError&) {
                    continue;
                }
                ok = defined && lhs == rhs;
                if (!ok) what = "scalar relation at N = " + std::to_string(n) + ", ep = " + str(eps);
            }
            for (std::size_t u = 0; u < size && ok; ++u) {
                if (u == form->pivot) continue;
                for (long n = fo.base; n + static_cast<long>(size) <= max_n && ok; ++n) {
                    Rational v = 0;
                    bool defined = true;
                    for (std::size_t j = 0; j < form->coeffs[u].size() && defined; ++j) {
                        if (form->coeffs[u][j].is_zero()) continue;
                        auto cv = value_at(form->coeffs[u][j], at(n, eps));
                        if (!cv) defined = false;
                        else v += *cv * xp(n + static_cast<long>(j));
                    }
                    if (!defined) continue;
                    try {
                        v += form->tails[u].evaluate(n, eps, hv);
                    } catch (const PoleError&) {
                        continue;
                    }
                    ok = v == x[u](n);
                    if (!ok) what = "back substitution of " + sys.unknowns[u] + " at N = " + std::to_string(n) + ", ep = " + str(eps);
                }
            }
        }
        if (!usable) {
            ++r.skipped;
            continue;
        }
        ++c;
        r.check(ok, what + " in " + sys.equation_string(0) + " ...");
    }
    if (r.cases < cases) r.check(false, "only " + std::to_string(r.cases) + " usable systems generated");
    return r;
}

PropertyResult cluster_topological(Rng& rng, long cases)
{
    PropertyResult r{"cluster order"};
    for (long c = 0; c < cases; ++c) {
        std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 12));
        std::vector<std::vector<std::size_t>> deps(n);
        for (std::size_t i = 0; i < n; ++i) {
            deps[i].push_back(i);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && coin(rng, j < i ? 0.3 : 0.08)) deps[i].push_back(j);
        }
        ClusterPlan plan = cluster_order(deps);
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (auto j : deps[i]) reach[i][j] = true;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[i][k] && reach[k][j]) reach[i][j] = true;
        std::vector<long> where(n, -1);
        bool ok = is_topological(plan, deps);
        for (std::size_t ci = 0; ci < plan.clusters.size(); ++ci)
            for (auto u : plan.clusters[ci]) {
                ok = ok && where[u] < 0;
                where[u] = static_cast<long>(ci);
            }
        for (std::size_t i = 0; i < n && ok; ++i) {
            ok = where[i] >= 0;
            for (auto j : deps[i]) ok = ok && where[j] <= where[i];
            for (std::size_t j = 0; j < n && ok; ++j)
                ok = (where[i] == where[j]) == (i == j || (reach[i][j] && reach[j][i]));
        }
        r.check(ok, "graph with " + std::to_string(n) + " unknowns");
    }
    return r;
}

PropertyResult coupled_residuals_zero()
{
    PropertyResult r{"coupled residuals"};
    auto check = [&](const CoupledSystem& sys, const std::map<std::string, PivotValues>& ivs, int orders, const std::string& name) {
        bool ok = true;
        std::string what = name;
        try {
            CoupledSolution sol = solve_coupled_system(sys, ivs, orders);
            ok = sol.complete;
            for (const auto& res : coupled_residuals(sys, sol.series)) ok = ok && res.is_zero();
        } catch (const Error& e) {
            ok = false;
            what += std::string(": ") + e.what();
        }
        r.check(ok, what);
    };
    CoupledSystem companion = companion_system(fixtures::expansion_operator(), fixtures::expansion_rhs());
    auto ivs = fixtures::expansion_ivs();
    check(companion, {{"F0", {1, {ivs[0], ivs[1]}}}}, 3, "companion system");
    auto lad = fixtures::ladder_ivs();
    check(fixtures::ladder_recurrences(), {{"I1", {1, lad}}}, 2, "three-unknown system");
    return r;
}

PropertyResult ode_pipeline()
{
    PropertyResult r{"differential pipeline"};
    // (1-x) X' = P X + c B with B(x) = sum x^N/(N+1)
    CoupledSystem ode;
    ode.kind = SystemKind::Differential;
    ode.unknowns = {"X1", "X2"};
    Polynomial onex = Polynomial(1) - var_poly(Var::x);
    ode.matrix = {{RationalFunction(epvar(), onex), RationalFunction(Polynomial(1), onex)},
                  {RationalFunction(), RationalFunction(epvar() * Rational(2), onex)}};
    ode.inputs = {{}, {{"B", RationalFunction(Polynomial(1), onex)}}};
    ode.known["B"] = EpsSeries::exact(SumExpression(RationalFunction(Polynomial(1), nvar() + Polynomial(1))));
    CoupledSystem rec = ode_to_rec(ode);
    // X(0) = (1, 1): X1(1) = ep + 1, X2(1) = 2 ep + 1
    EpsSeries x11 = parse_series("1 + ep"), x21 = parse_series("1 + 2*ep");
    const int orders = 4;
    bool ok = true;
    std::string what;
    try {
        CoupledSolution sol = solve_coupled_system(ode, {{"X1", {1, {x11}}}, {"X2", {1, {x21}}}}, orders);
        ok = sol.complete;
        if (!ok) what = "incomplete";
        for (const auto& res : coupled_residuals(rec, sol.series)) ok = ok && res.is_zero();
        if (ok) {
            PrecisionScope prec(40);
            Rational eps(1, 1000);
            FirstOrderSystem fo = first_order_form(rec);
            auto h = first_order_rhs(rec, fo);
            auto x = system_oracle(fo, {Rational(1), Rational(1)}, eps,
                                   [&](std::size_t i, long n) { return exact_series_value(h[i].evaluate(n), n, eps); });
            Rational eps_small = eps / 10;
            auto y = system_oracle(fo, {Rational(1), Rational(1)}, eps_small, [&](std::size_t i, long n) {
                return exact_series_value(h[i].evaluate(n), n, eps_small);
            });
            Real tol = 1000 * boost::multiprecision::pow(to_real(eps), orders);
            for (long n = 1; n <= 30 && ok; ++n)
                for (std::size_t u = 0; u < 2 && ok; ++u) {
                    const auto& series = sol.series.at(rec.unknowns[u]);
                    Real dev = relative_deviation(evaluate_series(series, n, to_real(eps)), to_real(x[u](n)));
                    Real dev_small = relative_deviation(evaluate_series(series, n, to_real(eps / 10)), to_real(y[u](n)));
                    ok = dev < tol && (dev_small == 0 || dev / dev_small > 3000);
                    if (!ok)
                        what = rec.unknowns[u] + "(" + std::to_string(n) + ") deviates by " + format_real(dev, 4) + ", " +
                               format_real(dev_small, 4) + " at ep / 10";
                }
        }
    } catch (const Error& e) {
        ok = false;
        what = e.what();
    }
    r.check(ok, what);
    return r;
}

std::vector<Suite> all_property_suites(std::uint64_t seed, double fraction)
{
    auto n = [fraction](long full) { return std::max(1L, static_cast<long>(full * fraction)); };
    Rng rng(seed);
    std::vector<Suite> out;
    out.push_back({"core_algebra", {ring_axioms(rng, n(1000)), gcd_divides(rng, n(200)), evaluation_homomorphism(rng, n(500)),
                                     canonical_forms(rng, n(200))}});
    out.push_back({"sum_expr", {ssum_telescoping(rng, n(60)), stuffle_numeric(rng, n(50)), shift_roundtrip(rng, n(100)),
                                 normalization_idempotent(rng, n(50))}});
    out.push_back({"eps_series", {series_product_numeric(rng, n(40)), exp_log_inverse(rng, n(40)), gamma_numeric(), summand_numeric()}});
    out.push_back({"operators", {op_apply_numeric(rng, n(50)), op_specialize_reassembles(rng, n(100)), ode_roundtrip(rng, n(20))}});
    out.push_back({"telescoping", {gosper_certificates(rng, n(200)), zeilberger_fibers(), zeilberger_minimal()}});
    out.push_back({"rec_solver", {rec_solutions(rng, n(12))}});
    out.push_back({"eps_solver", {bootstrap_random(rng, n(10)), bootstrap_numeric()}});
    out.push_back({"coupled", {uncoupling_fibers(rng, n(100)), cluster_topological(rng, n(100)), coupled_residuals_zero(), ode_pipeline()}});
    return out;
}

}  // namespace epsum::testing
