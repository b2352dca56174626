#include "epsum/rec_solver.hpp"
#include "epsum/errors.hpp"
#include "epsum/univariate.hpp"

#include <algorithm>
#include <map>

namespace epsum {

namespace {

void require_univariate(const RecOperator& op)
{
    for (const auto& c : op.coeffs())
        if (c.variable_mask() & ~(1u << static_cast<unsigned>(op.var())))
            throw DomainError("operator coefficient " + c.to_string() + " depends on more than " + var_name(op.var()));
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b)
{
    return divide_known(a * b, gcd(a, b)).monic();
}

// sum_i a_i(N) p(N + offset + i)
Polynomial apply_poly(const RecOperator& op, const Polynomial& p)
{
    Polynomial out;
    for (int i = 0; i <= op.order(); ++i)
        if (!op.coeff(i).is_zero()) out += op.coeff(i) * p.shift(op.var(), Rational(op.offset() + i));
    return out;
}

// Basis of (p, eta) with op p = sum_i eta_i fs[i]; p has degree <= bound.
std::vector<std::pair<Polynomial, std::vector<Rational>>> parametric_polynomials(const RecOperator& op,
                                                                              const std::vector<Polynomial>& fs, int bound)
{
    Var v = op.var();
    std::vector<Polynomial> cols;
    Polynomial pw(1);
    for (int j = 0; j <= bound; ++j) {
        cols.push_back(apply_poly(op, pw));
        pw *= var_poly(v);
    }
    for (const auto& f : fs) cols.push_back(-f);
    int rows = 0;
    for (const auto& c : cols)
        if (!c.is_zero()) rows = std::max(rows, c.degree(v) + 1);
    Matrix<Rational> m(static_cast<std::size_t>(rows), std::vector<Rational>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        UPoly u = to_upoly(cols[j], v);
        for (std::size_t r = 0; r < u.size(); ++r) m[r][j] = u[r];
    }
    std::vector<std::pair<Polynomial, std::vector<Rational>>> out;
    std::size_t nx = static_cast<std::size_t>(bound + 1);
    for (const auto& vec : nullspace(m, cols.size())) {
        UPoly p(vec.begin(), vec.begin() + static_cast<long>(nx));
        trim(p);
        out.emplace_back(from_upoly(p, v), std::vector<Rational>(vec.begin() + static_cast<long>(nx), vec.end()));
    }
    return out;
}

UPoly falling(int j)
{
    UPoly p{Rational(1)};
    for (int t = 0; t < j; ++t) p = p * UPoly{Rational(-t), Rational(1)};
    return p;
}

struct PartialFractions {
    UPoly polynomial;
    // numerator / atom^power with deg numerator < deg atom
    struct Part {
        UPoly atom;
        int power;
        UPoly numerator;
    };
    std::vector<Part> parts;
};

UPoly upow(const UPoly& p, int e)
{
    UPoly r{Rational(1)};
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

std::optional<PartialFractions> partial_fractions(const RationalFunction& r, Var v)
{
    if (r.variable_mask() & ~(1u << static_cast<unsigned>(v))) return std::nullopt;
    UPoly num = to_upoly(r.num(), v), den = to_upoly(r.den(), v);
    auto [q, rem] = divmod(num, den);
    PartialFractions pf;
    pf.polynomial = q;
    if (rem.empty()) return pf;
    for (const auto& [f, m] : shift_atoms(den)) {
        UPoly full = upow(f, m);
        UPoly other = divmod(den, full).first;
        UPoly a = divmod(rem * inverse_mod(other, full), full).second;
        for (int l = 0; l < m && !a.empty(); ++l) {
            auto [qq, c] = divmod(a, f);
            if (!c.empty()) pf.parts.push_back({f, m - l, c});
            a = qq;
        }
    }
    return pf;
}

// q with q(N) x^N - q(N-1) x^(N-1) = p(N) x^N
Polynomial geometric_antidifference(const Polynomial& p, const Rational& x, Var v)
{
    int dp = p.is_zero() ? -1 : p.degree(v);
    int dq = x == 1 ? dp + 1 : dp;
    std::vector<Polynomial> cols;
    Polynomial pw(1);
    for (int j = 0; j <= dq; ++j) {
        cols.push_back(pw - pw.shift(v, Rational(-1)) * (1 / x));
        pw *= var_poly(v);
    }
    std::size_t rows = static_cast<std::size_t>(std::max(dq, dp) + 1);
    Matrix<Rational> m(rows, std::vector<Rational>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        UPoly u = to_upoly(cols[j], v);
        for (std::size_t r = 0; r < u.size(); ++r) m[r][j] = u[r];
    }
    UPoly rhs = to_upoly(p, v);
    rhs.resize(rows);
    auto sol = solve_linear(m, rhs, Rational(0));
    if (!sol) throw std::logic_error("polynomial antidifference failed");
    trim(*sol);
    return from_upoly(*sol, v);
}

SumExpression word_sum(const SWord& w, Var v)
{
    return w.empty() ? SumExpression(RationalFunction(1), v) : SumExpression::ssum(w, v);
}

// T with T(N) - T(N-1) = u(N)
std::optional<SumExpression> backward_sum(SumExpression u)
{
    Var v = u.var();
    SumExpression total(v);
    Polynomial nv = var_poly(v);
    std::size_t guard = 0;
    while (!u.is_zero()) {
        if (++guard > 100000) throw std::logic_error("antidifference did not terminate");
        auto pick = u.terms().begin();
        for (auto it = u.terms().begin(); it != u.terms().end(); ++it)
            if (it->first.sum.size() > pick->first.sum.size()) pick = it;
        TermKey key = pick->first;
        RationalFunction r = pick->second;
        u.add_term(key, -r);
        auto pf = partial_fractions(r, v);
        if (!pf) return std::nullopt;
        const Rational& x = key.geometric;
        SumExpression konst = SumExpression::term(TermKey{Rational(1), key.constants, {}}, RationalFunction(1), v);
        SumExpression sw = word_sum(key.sum, v);
        Polynomial p = from_upoly(pf->polynomial, v);
        if (!p.is_zero()) {
            Polynomial q = geometric_antidifference(p, x, v);
            SumExpression qe = SumExpression::term(TermKey{x, {}, {}}, RationalFunction(q), v);
            total += konst * qe * sw;
            if (!key.sum.empty()) {
                const SIndex& first = key.sum.front();
                SWord tail(key.sum.begin() + 1, key.sum.end());
                RationalFunction c = RationalFunction(q.shift(v, Rational(-1))) /
                                     RationalFunction(nv.pow(static_cast<unsigned>(first.weight))) * RationalFunction(1 / x);
                u -= konst * SumExpression::term(TermKey{x * first.base, {}, tail}, c, v);
            }
        }
        // atoms other than x + integer: members of a shift class telescope against the class representative
        struct Member {
            UPoly atom;
            long h;
            int power;
            UPoly numerator;
        };
        std::vector<std::vector<Member>> classes;
        std::vector<std::pair<Rational, int>> linear;
        std::vector<Rational> linear_c;
        for (const auto& part : pf->parts) {
            if (degree(part.atom) == 1 && part.atom[0].get_den() == 1) {
                linear.emplace_back(-part.atom[0], part.power);
                linear_c.push_back(part.numerator[0]);
                continue;
            }
            bool placed = false;
            for (auto& cls : classes) {
                if (auto h = shift_distance(cls.front().atom, part.atom)) {
                    cls.push_back({part.atom, cls.front().h + h->get_si(), part.power, part.numerator});
                    placed = true;
                    break;
                }
            }
            if (!placed) classes.push_back({{part.atom, 0, part.power, part.numerator}});
        }
        if (!classes.empty()) {
            if (x != 1) return std::nullopt;
            RationalFunction rr;
            for (const auto& cls : classes) {
                long hmax = cls.front().h;
                for (const auto& mb : cls) hmax = std::max(hmax, mb.h);
                UPoly f0 = shift(cls.front().atom, Rational(hmax - cls.front().h));
                std::map<int, UPoly> leftover;
                for (const auto& mb : cls) {
                    long j = hmax - mb.h;
                    leftover[mb.power] = leftover[mb.power] + shift(mb.numerator, Rational(j));
                    for (long t = 0; t < j; ++t)
                        rr -= RationalFunction(from_upoly(shift(mb.numerator, Rational(j - t)), v),
                                               from_upoly(upow(shift(f0, Rational(-t)), mb.power), v));
                }
                for (auto& [pw, n] : leftover) {
                    trim(n);
                    if (!n.empty()) return std::nullopt;
                }
            }
            total += konst * sw * rr;
            if (!key.sum.empty()) {
                const SIndex& first = key.sum.front();
                SWord tail(key.sum.begin() + 1, key.sum.end());
                RationalFunction c = rr.shift(v, -1) / RationalFunction(nv.pow(static_cast<unsigned>(first.weight)));
                u -= konst * SumExpression::term(TermKey{first.base, {}, tail}, c, v);
            }
        }
        for (std::size_t li = 0; li < linear.size(); ++li) {
            Rational alpha = -linear[li].first;
            PartialFractions::Part part{UPoly{}, linear[li].second, UPoly{}};
            Rational part_c = linear_c[li];
            int a = static_cast<int>(alpha.get_num().get_si());
            SWord w2;
            w2.push_back(SIndex{part.power, x});
            w2.insert(w2.end(), key.sum.begin(), key.sum.end());
            total += konst * SumExpression::ssum(w2, v).shift(a) * RationalFunction(part_c * rational_pow(x, -a));
            if (!key.sum.empty()) {
                RationalFunction kernel = RationalFunction(Polynomial(part_c)) /
                                          RationalFunction((nv + Polynomial(alpha)).pow(static_cast<unsigned>(part.power)));
                u -= konst * SumExpression::geometric(x, v) * (sw.shift(a) - sw) * kernel;
            }
        }
    }
    return total;
}

std::vector<std::pair<UPoly, int>> factor_atoms(const UPoly& p)
{
    std::vector<std::pair<UPoly, int>> atoms;
    UPoly rest = monic(p);
    for (const auto& rho : rational_roots(p)) {
        UPoly lin{-rho, Rational(1)};
        int mult = 0;
        while (true) {
            auto [q, r] = divmod(rest, lin);
            if (!r.empty()) break;
            rest = q;
            ++mult;
        }
        atoms.emplace_back(lin, mult);
    }
    if (degree(rest) > 0)
        for (auto& f : squarefree_factorization(rest)) atoms.push_back(std::move(f));
    return atoms;
}

std::vector<UPoly> monic_divisors(const UPoly& p)
{
    std::vector<UPoly> out{UPoly{Rational(1)}};
    for (const auto& [atom, mult] : factor_atoms(p)) {
        std::vector<UPoly> next;
        for (const auto& d : out) {
            UPoly cur = d;
            for (int e = 0; e <= mult; ++e) {
                next.push_back(cur);
                cur = cur * atom;
            }
        }
        out = std::move(next);
    }
    return out;
}

RecOperator normalized(const RecOperator& op)
{
    return op.trimmed().normalized_offset();
}

struct Level {
    std::vector<SumExpression> basis;
    std::optional<SumExpression> particular;
    bool complete = true;
    std::vector<std::string> notes;
};

Level reduce_level(const RecOperator& op, const SumExpression& rhs, const GeometricSolution& h);

Level solve_level(const RecOperator& op, const SumExpression& rhs)
{
    Var v = op.var();
    Level out;
    int d = op.order();
    if (d == 0) {
        out.particular = rhs * RationalFunction(RationalFunction(1) / RationalFunction(op.coeff(0)));
        return out;
    }
    auto gs = geometric_solutions(op);
    if (gs.empty()) {
        out.complete = false;
        out.notes.push_back("no solution c^N*rational for " + op.to_string());
        if (rhs.is_zero()) out.particular = SumExpression(v);
        return out;
    }
    // reduction over the first solution that leads to a complete chain
    std::optional<Level> best;
    for (const auto& h : gs) {
        Level lv = reduce_level(op, rhs, h);
        bool done = lv.complete && lv.particular.has_value();
        auto score = [&](const Level& l) { return 2 * l.basis.size() + (l.particular ? 1 : 0); };
        if (!best || score(lv) > score(*best)) best = std::move(lv);
        if (done) break;
    }
    return *best;
}

Level reduce_level(const RecOperator& op, const SumExpression& rhs, const GeometricSolution& h)
{
    Var v = op.var();
    Level out;
    int d = op.order();
    std::vector<RationalFunction> b;
    for (int i = 0; i <= d; ++i)
        b.push_back(RationalFunction(op.coeff(i)) * RationalFunction(rational_pow(h.base, i)) * h.factor.shift(v, i));
    std::vector<RationalFunction> e(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        for (int i = j + 1; i <= d; ++i) e[static_cast<std::size_t>(j)] += b[static_cast<std::size_t>(i)];
    Polynomial m(1);
    for (const auto& x : e) m = poly_lcm(m, x.den());
    std::vector<Polynomial> cs;
    for (const auto& x : e) {
        RationalFunction y = x * RationalFunction(m);
        cs.push_back(y.num() * (1 / y.den().constant_value()));
    }
    Polynomial g = RecOperator(cs, 0, v).content();
    for (auto& c : cs) c = divide_known(c, g);
    RecOperator next = normalized(RecOperator(cs, 0, v));
    int off = RecOperator(cs, 0, v).trimmed().offset();
    SumExpression rhs2 = rhs * SumExpression::geometric(1 / h.base, v) * RationalFunction(RationalFunction(m) / RationalFunction(g));
    Level sub = solve_level(next, rhs2.shift(-off));
    SumExpression hx = h.expression(v);
    out.basis.push_back(hx);
    out.complete = sub.complete;
    out.notes = sub.notes;
    auto lift = [&](const SumExpression& w) -> std::optional<SumExpression> {
        auto t = antidifference(w);
        if (!t) {
            out.notes.push_back("indefinite sum outside the S-sum class: " + w.to_string());
            return std::nullopt;
        }
        return hx * *t;
    };
    for (const auto& w : sub.basis) {
        if (auto s = lift(w)) out.basis.push_back(*s);
        else out.complete = false;
    }
    if (sub.particular) {
        if (auto s = lift(*sub.particular)) out.particular = *s;
    }
    if (out.particular && !(op_apply(op, *out.particular) == rhs))
        throw std::logic_error("level check failed at order " + std::to_string(d) + ": " + op.to_string() + " | " + rhs.to_string() + " | " + out.particular->to_string());
    return out;
}

}  // namespace

int polynomial_degree_bound(const RecOperator& op, int rhs_degree)
{
    Var v = op.var();
    int d = op.order();
    int best = -1000000;
    std::vector<Polynomial> bs(static_cast<std::size_t>(d + 1));
    for (int j = 0; j <= d; ++j) {
        for (int i = j; i <= d; ++i)
            bs[static_cast<std::size_t>(j)] += op.coeff(i) * Rational(binomial(i, j));
        if (!bs[static_cast<std::size_t>(j)].is_zero()) best = std::max(best, bs[static_cast<std::size_t>(j)].degree(v) - j);
    }
    if (best == -1000000) return rhs_degree;
    UPoly ind;
    for (int j = 0; j <= d; ++j) {
        const Polynomial& bj = bs[static_cast<std::size_t>(j)];
        if (bj.is_zero() || bj.degree(v) - j != best) continue;
        ind = ind + scale(falling(j), bj.coefficient(v, bj.degree(v)).constant_value());
    }
    int bound = rhs_degree >= 0 ? rhs_degree - best : -1;
    for (const auto& r : integer_roots(ind))
        if (r >= 0) bound = std::max(bound, static_cast<int>(r.get_si()));
    return bound;
}

PolynomialSolutions polynomial_solutions(const RecOperator& op_in, const Polynomial& rhs_in)
{
    require_univariate(op_in);
    RecOperator op = op_in.normalized_offset();
    Polynomial rhs = rhs_in.shift(op.var(), Rational(-op_in.offset()));
    PolynomialSolutions out;
    if (op.is_zero()) throw DomainError("zero operator");
    int bound = polynomial_degree_bound(op, rhs.is_zero() ? -1 : rhs.degree(op.var()));
    if (bound < 0) return out;
    std::vector<Polynomial> fs;
    if (!rhs.is_zero()) fs.push_back(rhs);
    for (const auto& [p, eta] : parametric_polynomials(op, fs, bound)) {
        if (eta.empty() || eta[0] == 0) {
            if (!p.is_zero()) out.basis.push_back(p);
        } else if (!out.particular) {
            out.particular = p * (1 / eta[0]);
        }
    }
    if (rhs.is_zero()) out.particular = Polynomial();
    return out;
}

Polynomial universal_denominator(const RecOperator& op_in)
{
    RecOperator op = normalized(op_in);
    Var v = op.var();
    int d = op.order();
    Polynomial a = op.coeff(0), b = op.coeff(d).shift(v, Rational(-d));
    Polynomial u(1);
    auto hs = shift_coincidences(b, a, v, true);
    std::sort(hs.rbegin(), hs.rend());
    for (const auto& hz : hs) {
        long h = hz.get_si();
        while (true) {
            Polynomial g = gcd(a.shift(v, Rational(h)), b);
            if (g.degree(v) <= 0) break;
            a = divide_known(a, g.shift(v, Rational(-h)));
            b = divide_known(b, g);
            for (long i = 0; i <= h; ++i) u *= g.shift(v, Rational(-i));
        }
    }
    return u.monic();
}

std::vector<RationalFunction> rational_solutions(const RecOperator& op_in)
{
    require_univariate(op_in);
    RecOperator op = normalized(op_in);
    Var v = op.var();
    if (op.order() == 0) return {};
    Polynomial u = universal_denominator(op);
    Polynomial m(1);
    for (int i = 0; i <= op.order(); ++i) m = poly_lcm(m, u.shift(v, Rational(i)));
    std::vector<Polynomial> cs;
    for (int i = 0; i <= op.order(); ++i) cs.push_back(op.coeff(i) * divide_known(m, u.shift(v, Rational(i))));
    std::vector<RationalFunction> out;
    for (const auto& p : polynomial_solutions(RecOperator(cs, 0, v)).basis) out.emplace_back(p, u);
    return out;
}

SumExpression GeometricSolution::expression(Var v) const
{
    return SumExpression::term(TermKey{base, {}, {}}, factor, v);
}

std::vector<GeometricSolution> geometric_solutions(const RecOperator& op_in)
{
    require_univariate(op_in);
    RecOperator op = normalized(op_in);
    Var v = op.var();
    int d = op.order();
    if (d <= 0) return {};
    int top = -1;
    for (const auto& c : op.coeffs())
        if (!c.is_zero()) top = std::max(top, c.degree(v));
    UPoly chr(static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i)
        if (!op.coeff(i).is_zero() && op.coeff(i).degree(v) == top)
            chr[static_cast<std::size_t>(i)] = op.coeff(i).coefficient(v, top).constant_value();
    trim(chr);
    std::vector<Rational> bases;
    for (const auto& c : rational_roots(chr))
        if (c != 0) bases.push_back(c);
    std::stable_sort(bases.begin(), bases.end(), [](const Rational& a, const Rational& b) { return (a == 1) > (b == 1); });
    std::vector<GeometricSolution> out;
    std::optional<std::vector<RationalFunction>> hyps;
    for (const auto& c : bases) {
        std::vector<Polynomial> cs;
        for (int i = 0; i <= d; ++i) cs.push_back(op.coeff(i) * rational_pow(c, i));
        RecOperator twisted(cs, 0, v);
        // polynomial solutions first, then rational ones outside their span
        std::vector<RationalFunction> basis;
        Matrix<Rational> values;
        auto add = [&](const RationalFunction& r) {
            std::vector<Rational> row;
            for (int j = 0; j <= d + 1; ++j) {
                std::array<Rational, kVarCount> pt{};
                pt[static_cast<std::size_t>(v)] = 10007 + 131 * j;
                row.push_back(r.evaluate_all(pt));
            }
            values.push_back(row);
            if (rank(values) < values.size()) {
                values.pop_back();
                return;
            }
            basis.push_back(r);
        };
        for (const auto& p : polynomial_solutions(twisted).basis) add(RationalFunction(p));
        for (const auto& r : rational_solutions(twisted)) add(r);
        if (basis.size() >= 2) {
            // hypergeometric members of the span go first; their denominators stay small under reduction
            if (!hyps) hyps = hypergeometric_solutions(op);
            std::vector<RationalFunction> members;
            for (const auto& rho : *hyps) {
                RationalFunction q = rho / RationalFunction(c);
                Matrix<Rational> m;
                for (int j = 0; j < static_cast<int>(basis.size()) + 2; ++j) {
                    std::array<Rational, kVarCount> p0{}, p1{};
                    p0[static_cast<std::size_t>(v)] = 10007 + 131 * j;
                    p1[static_cast<std::size_t>(v)] = 10008 + 131 * j;
                    Rational qv = q.evaluate_all(p0);
                    std::vector<Rational> row;
                    for (const auto& r : basis) row.push_back(r.evaluate_all(p1) - qv * r.evaluate_all(p0));
                    m.push_back(row);
                }
                auto ns = nullspace(m, basis.size());
                if (ns.size() != 1) continue;
                RationalFunction member;
                for (std::size_t i = 0; i < basis.size(); ++i) member += basis[i] * RationalFunction(ns[0][i]);
                if (!member.is_zero() && member.shift(v, 1) == q * member) members.push_back(member);
            }
            std::vector<RationalFunction> rest = std::move(basis);
            basis.clear();
            values.clear();
            for (const auto& r : members) add(r);
            for (const auto& r : rest) add(r);
        }
        for (const auto& r : basis) {
            Rational lc = r.num().leading_coefficient();
            out.push_back({c, r * RationalFunction(1 / lc)});
        }
    }
    return out;
}

std::vector<RationalFunction> hypergeometric_solutions(const RecOperator& op_in)
{
    require_univariate(op_in);
    RecOperator op = normalized(op_in);
    Var v = op.var();
    int d = op.order();
    if (d <= 0) return {};
    auto as = monic_divisors(to_upoly(op.coeff(0), v));
    auto bs = monic_divisors(to_upoly(op.coeff(d).shift(v, Rational(1 - d)), v));
    std::vector<RationalFunction> out;
    for (const auto& au : as) {
        Polynomial a = from_upoly(au, v);
        for (const auto& bu : bs) {
            Polynomial b = from_upoly(bu, v);
            std::vector<Polynomial> ps;
            for (int i = 0; i <= d; ++i) {
                Polynomial p = op.coeff(i);
                for (int j = 0; j < i; ++j) p *= a.shift(v, Rational(j));
                for (int j = i; j < d; ++j) p *= b.shift(v, Rational(j));
                ps.push_back(p);
            }
            int top = -1;
            for (const auto& p : ps)
                if (!p.is_zero()) top = std::max(top, p.degree(v));
            UPoly chr(static_cast<std::size_t>(d + 1));
            for (int i = 0; i <= d; ++i)
                if (!ps[static_cast<std::size_t>(i)].is_zero()) chr[static_cast<std::size_t>(i)] = ps[static_cast<std::size_t>(i)].coefficient(v, top).constant_value();
            trim(chr);
            for (const auto& z : rational_roots(chr)) {
                if (z == 0) continue;
                std::vector<Polynomial> cs;
                for (int i = 0; i <= d; ++i) cs.push_back(ps[static_cast<std::size_t>(i)] * rational_pow(z, i));
                for (const auto& c : polynomial_solutions(RecOperator(cs, 0, v)).basis) {
                    RationalFunction ratio = RationalFunction(a * z, b) * RationalFunction(c.shift(v, Rational(1)), c);
                    if (std::find(out.begin(), out.end(), ratio) == out.end()) out.push_back(ratio);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [v](const RationalFunction& x, const RationalFunction& y) {
        int dx = x.num().degree(v) + x.den().degree(v), dy = y.num().degree(v) + y.den().degree(v);
        if (dx != dy) return dx < dy;
        return compare(x, y) < 0;
    });
    return out;
}

std::optional<SumExpression> antidifference(const SumExpression& w)
{
    if (w.is_zero()) return SumExpression(w.var());
    auto t = backward_sum(w.shift(-1));
    if (!t) return std::nullopt;
    if (!(t->shift(1) - *t == w)) throw std::logic_error("antidifference check failed for " + w.to_string() + " -> " + t->to_string());
    return t;
}

SolutionSet dalembertian_solve(const RecOperator& op_in, const SumExpression& rhs_in)
{
    require_univariate(op_in);
    if (op_in.is_zero()) throw DomainError("zero operator");
    Var v = op_in.var();
    RecOperator trimmed = op_in.trimmed();
    SumExpression rhs = rhs_in.with_var(v).shift(-trimmed.offset());
    RecOperator op = trimmed.normalized_offset();
    Level lv = solve_level(op, rhs);
    SolutionSet out;
    out.homogeneous_basis = lv.basis;
    out.particular = lv.particular;
    out.notes = lv.notes;
    out.complete = lv.complete && static_cast<int>(lv.basis.size()) == op.order() && lv.particular.has_value();
    for (std::size_t i = 0; i < out.homogeneous_basis.size(); ++i) {
        if (!op_apply(op_in, out.homogeneous_basis[i]).is_zero())
            throw std::logic_error("homogeneous solution check failed: " + out.homogeneous_basis[i].to_string());
        out.free_constants.push_back("c" + std::to_string(i + 1));
    }
    if (out.particular && !(op_apply(op_in, *out.particular) == rhs_in.with_var(v)))
        throw std::logic_error("particular solution check failed: " + out.particular->to_string());
    if (static_cast<int>(out.homogeneous_basis.size()) < op.order())
        out.notes.push_back("incomplete basis: " + std::to_string(out.homogeneous_basis.size()) + " of " +
                            std::to_string(op.order()) + " solutions");
    return out;
}

bool basis_independent(const std::vector<SumExpression>& basis, long n0)
{
    std::size_t m = basis.size();
    Matrix<Rational> c(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) c[i][j] = basis[j].evaluate(n0 + static_cast<long>(i)).rational_value();
    return rank(c) == m;
}

MatchResult match_initial_values(const SolutionSet& sol, const std::vector<InitialValue>& ivs)
{
    if (!sol.particular) throw DomainError("no particular solution in the class; initial values cannot be matched");
    Var v = sol.particular->var();
    std::size_t m = sol.homogeneous_basis.size();
    Matrix<Rational> a(ivs.size(), std::vector<Rational>(m));
    std::vector<SumExpression> b;
    for (std::size_t r = 0; r < ivs.size(); ++r) {
        for (std::size_t j = 0; j < m; ++j) {
            SumExpression val = sol.homogeneous_basis[j].evaluate(ivs[r].n);
            try {
                a[r][j] = val.rational_value();
            } catch (const Error&) {
                throw DomainError("homogeneous solution with constants at N = " + std::to_string(ivs[r].n));
            }
        }
        b.push_back((ivs[r].value.with_var(v) - sol.particular->evaluate(ivs[r].n).with_var(v)));
    }
    auto x = solve_linear(a, b, SumExpression(v));
    if (!x) throw DomainError("initial values are inconsistent with the solution set");
    MatchResult out;
    out.solution = *sol.particular;
    for (std::size_t j = 0; j < m; ++j) {
        SumExpression c = (*x)[j].with_var(v);
        out.constants.push_back(c);
        out.solution += c * sol.homogeneous_basis[j];
    }
    for (const auto& dir : nullspace(a, m)) {
        SumExpression f(v);
        for (std::size_t j = 0; j < m; ++j) f += sol.homogeneous_basis[j] * RationalFunction(dir[j]);
        out.family.push_back(f);
    }
    return out;
}

RecSolution solve_rec(const RecOperator& op, const SumExpression& rhs, const std::vector<InitialValue>& ivs)
{
    RecSolution out;
    out.set = dalembertian_solve(op, rhs);
    out.match = match_initial_values(out.set, ivs);
    if (!(op_apply(op, out.match.solution) == rhs.with_var(op.var())))
        throw std::logic_error("solution does not satisfy the recurrence");
    return out;
}

}  // namespace epsum
