#include "epsum/gamma.hpp"
#include "epsum/errors.hpp"

#include <algorithm>

namespace epsum {

namespace {

struct Split {
    Polynomial linear;
    Rational offset;
    Rational r;
};

Split split_argument(const Polynomial& arg)
{
    Split s;
    s.offset = arg.constant_term();
    Polynomial re = arg.coefficient(Var::ep, 1);
    s.r = re.is_zero() ? Rational(0) : re.constant_value();
    s.linear = arg - Polynomial(s.offset) - Polynomial(s.r) * var_poly(Var::ep);
    return s;
}

// e * log Gamma(1 + r ep) through orders < trunc
EpsSeries log_gamma_one(const Rational& r, int e, int trunc, Var var)
{
    EpsSeries out = EpsSeries::zero(trunc, var);
    for (int j = 1; j < trunc; ++j) {
        Rational c = rational_pow(r, j) * e / j;
        SumExpression term = j == 1 ? SumExpression::constant(FormalConstant::euler_gamma(), var) * RationalFunction(-c)
                                    : SumExpression::constant(FormalConstant::zeta(j), var) * RationalFunction(j % 2 == 0 ? c : -c);
        out.set_coefficient(j, term);
    }
    return out;
}

// e * log(Gamma(v + p + r ep) / (Gamma(v + p) Gamma(1 + r ep))) = e * sum_j (-1)^(j-1) (r ep)^j S_j(v + p - 1) / j
EpsSeries log_rising(Var v, int p, const Rational& r, int e, int trunc)
{
    EpsSeries out = EpsSeries::zero(trunc, v);
    for (int j = 1; j < trunc; ++j) {
        Rational c = rational_pow(r, j) * e / j;
        if (j % 2 == 0) c = -c;
        SumExpression s = SumExpression::ssum(SWord{SIndex{j, 1}}, v).shift(p - 1);
        out.set_coefficient(j, s * RationalFunction(c));
    }
    return out;
}

struct PoolEntry {
    Polynomial arg;
    int exponent;
};

// Groups ep-free Gamma factors by linear part; groups whose offsets differ by integers and whose
// exponents cancel become rational functions.
void reduce_pool(const std::vector<PoolEntry>& pool, RationalFunction& rational, HyperTerm& hyper)
{
    std::vector<bool> used(pool.size(), false);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        Split si = split_argument(pool[i].arg);
        std::vector<std::pair<Rational, int>> group;
        for (std::size_t j = i; j < pool.size(); ++j) {
            if (used[j]) continue;
            Split sj = split_argument(pool[j].arg);
            Rational d = sj.offset - si.offset;
            if (!(sj.linear == si.linear) || d.get_den() != 1) continue;
            used[j] = true;
            group.emplace_back(sj.offset, pool[j].exponent);
        }
        Rational lo = group.front().first;
        int net = 0;
        for (const auto& [p, e] : group) {
            lo = std::min(lo, p);
            net += e;
        }
        Polynomial base = si.linear + Polynomial(lo);
        for (const auto& [p, e] : group) {
            int m = static_cast<int>(Rational(p - lo).get_num().get_si());
            if (m != 0) rational *= rising_product(base, m).pow(e);
        }
        if (net == 0) continue;
        if (base.is_constant()) {
            Rational z = base.constant_value();
            if (z <= 0 && z.get_den() == 1) throw PoleError("Gamma at the pole " + z.get_str());
            if (z.get_den() == 1) {
                rational *= RationalFunction(Rational(factorial(z.get_num().get_si() - 1))).pow(net);
                continue;
            }
        }
        hyper.add_gamma(base, net);
    }
}

}  // namespace

SummandExpansion summand_expand(const HyperTerm& t, Var sum_var, int order, int vmin)
{
    SummandExpansion out;
    RationalFunction rational = t.rational();
    std::vector<PoolEntry> pool;
    struct LogPiece {
        bool rising;
        int p;
        Rational r;
        int e;
    };
    std::vector<LogPiece> logs;

    for (const auto& [v, b] : t.geometric()) out.hyper.add_geometric(v, b);
    for (const auto& b : t.binomials()) out.hyper.add_binomial(b.top, b.bottom, b.exponent);

    for (const auto& g : t.gammas()) {
        Split s = split_argument(g.arg);
        if (s.r == 0) {
            pool.push_back({g.arg, g.exponent});
            continue;
        }
        if (s.offset.get_den() != 1)
            throw DomainError("unsupported Gamma argument " + g.arg.to_string() + ": offset must be an integer");
        int p = static_cast<int>(s.offset.get_num().get_si());
        Polynomial rep = Polynomial(s.r) * var_poly(Var::ep);
        if (s.linear.is_zero()) {
            // Gamma(p + r ep) = Gamma(1 + r ep) * prod_{i=1}^{p-1} (i + r ep), or / prod_{i=p}^{0} (i + r ep)
            if (p >= 1)
                rational *= rising_product(rep + Polynomial(1), p - 1).pow(g.exponent);
            else
                rational /= rising_product(rep + Polynomial(p), 1 - p).pow(g.exponent);
            logs.push_back({false, 0, s.r, g.exponent});
            continue;
        }
        if (!(s.linear == var_poly(sum_var)))
            throw DomainError("unsupported Gamma argument " + g.arg.to_string() + ": expected " + var_name(sum_var) +
                              " + integer + r*ep");
        int lowest = 1 - vmin;
        if (p < lowest) {
            // Gamma(v + p + r ep) = Gamma(v + lowest + r ep) / prod_{i=p}^{lowest-1} (v + i + r ep)
            rational /= rising_product(s.linear + Polynomial(p) + rep, lowest - p).pow(g.exponent);
            p = lowest;
        }
        pool.push_back({s.linear + Polynomial(p), g.exponent});
        logs.push_back({false, 0, s.r, g.exponent});
        logs.push_back({true, p, s.r, g.exponent});
    }
    reduce_pool(pool, rational, out.hyper);

    int vr = eps_valuation(rational);
    if (vr >= kExactOrder) {
        out.series = EpsSeries::zero(order, sum_var);
        return out;
    }
    int trunc = order - vr;
    EpsSeries expo;
    if (trunc <= 0) {
        expo = EpsSeries::zero(trunc, sum_var);
    } else {
        EpsSeries log = EpsSeries::zero(trunc, sum_var);
        for (const auto& piece : logs) {
            if (piece.rising)
                log += log_rising(sum_var, piece.p, piece.r, piece.e, trunc);
            else
                log += log_gamma_one(piece.r, piece.e, trunc, sum_var);
        }
        if (!t.exp_argument().is_zero()) {
            EpsSeries a = eps_expand(t.exp_argument().with_var(sum_var), trunc);
            if (a.valuation() < 1) throw DomainError("Exp argument must vanish at ep = 0");
            log += a;
        }
        expo = log.exp();
    }
    out.series = multiply(expo, rational, order);
    return out;
}

EpsSeries gamma_expand(int p, std::optional<Var> v, const Rational& r, int order, int vmin)
{
    HyperTerm t;
    Polynomial rep = Polynomial(r) * var_poly(Var::ep);
    if (v) {
        t.add_gamma(var_poly(*v) + Polynomial(p) + rep, 1);
        t.add_gamma(var_poly(*v) + Polynomial(p), -1);
    } else {
        t.add_gamma(Polynomial(p) + rep, 1);
    }
    SummandExpansion e = summand_expand(t, v.value_or(Var::N), order, vmin);
    if (!e.hyper.gammas().empty()) throw std::logic_error("Gamma prefactor did not cancel");
    return e.series;
}

Real evaluate_series(const EpsSeries& s, long n, const Real& eps)
{
    Real total = 0;
    const auto& cs = s.coefficients();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].is_zero()) continue;
        int o = s.start() + static_cast<int>(i);
        total += evaluate_real(cs[i], n) * boost::multiprecision::pow(eps, o);
    }
    return total;
}

}  // namespace epsum
