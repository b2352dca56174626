#include "epsum/hyper.hpp"
#include "epsum/errors.hpp"

#include <sstream>

namespace epsum {

namespace {

// Coefficient of v in a linear argument, required to be an integer.
int shift_step(const Polynomial& arg, Var v)
{
    Polynomial c = arg.coefficient(v, 1);
    if (!c.is_constant()) throw DomainError("Gamma argument " + arg.to_string() + " is not linear");
    Rational q = c.is_zero() ? Rational(0) : c.constant_value();
    if (q.get_den() != 1) throw DomainError("Gamma argument " + arg.to_string() + " has a non-integer coefficient of " + var_name(v));
    return static_cast<int>(q.get_num().get_si());
}

void check_linear(const Polynomial& p, const Node& at)
{
    if (p.total_degree() > 1) fail_at(at, "argument " + p.to_string() + " is not linear");
    if (p.uses(Var::x)) fail_at(at, "argument may not contain x");
    for (Var v : {Var::k, Var::N}) {
        Polynomial c = p.coefficient(v, 1);
        if (!c.is_zero() && c.constant_value().get_den() != 1)
            fail_at(at, "argument " + p.to_string() + " is not integer-linear in " + var_name(v));
    }
}

Polynomial linear_argument(const Node& n)
{
    SumExpression e = to_sum_expression(n, Var::k);
    if (!e.is_rational() || !e.as_rational().is_polynomial()) fail_at(n, "argument must be polynomial");
    RationalFunction f = e.as_rational();
    Polynomial p = f.num() * (1 / f.den().constant_value());
    check_linear(p, n);
    return p;
}

HyperTerm inverse(const HyperTerm& t)
{
    if (t.rational().is_zero()) throw PoleError("inverse of a zero term");
    HyperTerm r(RationalFunction(1) / t.rational());
    for (const auto& [v, b] : t.geometric()) r.add_geometric(v, 1 / b);
    for (const auto& g : t.gammas()) r.add_gamma(g.arg, -g.exponent);
    for (const auto& b : t.binomials()) r.add_binomial(b.top, b.bottom, -b.exponent);
    r.add_exp(-t.exp_argument());
    return r;
}

HyperTerm power(const HyperTerm& t, long e)
{
    HyperTerm base = e < 0 ? inverse(t) : t;
    HyperTerm r;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
    return r;
}

Real gamma_at(const Rational& z)
{
    if (z <= 0 && z.get_den() == 1) throw PoleError("Gamma evaluated at the pole " + z.get_str());
    return real_gamma(to_real(z));
}

Real binomial_at(const Rational& t, const Rational& b)
{
    if (t.get_den() == 1 && b.get_den() == 1) {
        const Integer& n = t.get_num();
        const Integer& m = b.get_num();
        if (m < 0) return Real(0);
        if (n >= 0) {
            if (m > n) return Real(0);
            return to_real(Rational(binomial(n.get_si(), m.get_si())));
        }
        // binom(n, m) = (-1)^m binom(m - n - 1, m) for negative n
        Integer top = m - n - 1;
        Rational v(binomial(top.get_si(), m.get_si()));
        if (m.get_si() % 2 != 0) v = -v;
        return to_real(v);
    }
    return gamma_at(t + 1) / (gamma_at(b + 1) * gamma_at(t - b + 1));
}

}  // namespace

RationalFunction rising_product(const Polynomial& p, int m)
{
    Polynomial acc(1);
    if (m >= 0) {
        for (int i = 0; i < m; ++i) acc *= p + Polynomial(i);
        return RationalFunction(acc);
    }
    for (int i = 1; i <= -m; ++i) acc *= p - Polynomial(i);
    return RationalFunction(Polynomial(1), acc);
}

HyperTerm& HyperTerm::operator*=(const HyperTerm& o)
{
    rational_ *= o.rational_;
    for (const auto& [v, b] : o.geometric_) add_geometric(v, b);
    for (const auto& g : o.gammas_) add_gamma(g.arg, g.exponent);
    for (const auto& b : o.binomials_) add_binomial(b.top, b.bottom, b.exponent);
    add_exp(o.exp_argument_);
    return *this;
}

HyperTerm& HyperTerm::operator*=(const RationalFunction& r)
{
    rational_ *= r;
    return *this;
}

void HyperTerm::add_gamma(const Polynomial& arg, int exponent)
{
    if (exponent == 0) return;
    for (auto it = gammas_.begin(); it != gammas_.end(); ++it) {
        if (it->arg == arg) {
            it->exponent += exponent;
            if (it->exponent == 0) gammas_.erase(it);
            return;
        }
    }
    gammas_.push_back({arg, exponent});
}

void HyperTerm::add_binomial(const Polynomial& top, const Polynomial& bottom, int exponent)
{
    if (exponent == 0) return;
    for (auto it = binomials_.begin(); it != binomials_.end(); ++it) {
        if (it->top == top && it->bottom == bottom) {
            it->exponent += exponent;
            if (it->exponent == 0) binomials_.erase(it);
            return;
        }
    }
    binomials_.push_back({top, bottom, exponent});
}

void HyperTerm::add_geometric(Var v, const Rational& base)
{
    if (base == 0) throw DomainError("geometric factor with base 0");
    auto [it, inserted] = geometric_.try_emplace(v, base);
    if (!inserted) it->second *= base;
    if (it->second == 1) geometric_.erase(it);
}

void HyperTerm::add_exp(const SumExpression& e)
{
    if (e.is_zero()) return;
    for (const auto& [key, c] : e.terms())
        if (!key.sum.empty() || key.geometric != 1 || c.uses(Var::k) || c.uses(Var::N) || c.uses(Var::x))
            throw DomainError("Exp argument may only contain ep and constants: " + e.to_string());
    exp_argument_ += e;
}

RationalFunction HyperTerm::ratio(Var v) const
{
    RationalFunction r = rational_.shift(v, 1) / rational_;
    if (auto it = geometric_.find(v); it != geometric_.end()) r *= RationalFunction(it->second);
    for (const auto& g : gammas_) {
        int d = shift_step(g.arg, v);
        if (d != 0) r *= rising_product(g.arg, d).pow(g.exponent);
    }
    for (const auto& b : binomials_) {
        int dt = shift_step(b.top, v), db = shift_step(b.bottom, v);
        Polynomial t1 = b.top + Polynomial(1), b1 = b.bottom + Polynomial(1), d1 = b.top - b.bottom + Polynomial(1);
        RationalFunction f = rising_product(t1, dt) / (rising_product(b1, db) * rising_product(d1, dt - db));
        r *= f.pow(b.exponent);
    }
    return r;
}

HyperTerm HyperTerm::shifted(Var v, int j) const
{
    HyperTerm t;
    t.rational_ = rational_.shift(v, j);
    t.geometric_ = geometric_;
    if (auto it = geometric_.find(v); it != geometric_.end()) t.rational_ *= RationalFunction(rational_pow(it->second, j));
    for (const auto& g : gammas_) t.gammas_.push_back({g.arg.shift(v, j), g.exponent});
    for (const auto& b : binomials_) t.binomials_.push_back({b.top.shift(v, j), b.bottom.shift(v, j), b.exponent});
    t.exp_argument_ = exp_argument_;
    return t;
}

HyperTerm HyperTerm::specialized(Var v, const Rational& value) const
{
    HyperTerm t(rational_.evaluate(v, value));
    for (const auto& [w, b] : geometric_) {
        if (w != v) {
            t.add_geometric(w, b);
            continue;
        }
        if (value.get_den() != 1) throw DomainError("geometric factor at a non-integer point");
        t.rational_ *= RationalFunction(rational_pow(b, value.get_num().get_si()));
    }
    for (const auto& g : gammas_) t.add_gamma(g.arg.evaluate(v, value), g.exponent);
    for (const auto& b : binomials_) t.add_binomial(b.top.evaluate(v, value), b.bottom.evaluate(v, value), b.exponent);
    t.exp_argument_ = exp_argument_;
    return t;
}

Real HyperTerm::evaluate(const std::array<Rational, kVarCount>& point) const
{
    Real r = to_real(rational_.evaluate_all(point));
    for (const auto& [v, b] : geometric_) {
        const Rational& e = point[static_cast<std::size_t>(v)];
        if (e.get_den() != 1) throw DomainError("geometric factor at a non-integer point");
        r *= to_real(rational_pow(b, e.get_num().get_si()));
    }
    for (const auto& g : gammas_) {
        Real gv = gamma_at(g.arg.evaluate_all(point));
        r *= boost::multiprecision::pow(gv, g.exponent);
    }
    for (const auto& b : binomials_) {
        Real bv = binomial_at(b.top.evaluate_all(point), b.bottom.evaluate_all(point));
        if (b.exponent < 0 && bv == 0) throw PoleError("binomial in a denominator vanishes");
        r *= boost::multiprecision::pow(bv, b.exponent);
    }
    if (!exp_argument_.is_zero()) {
        Real a = 0;
        for (const auto& [key, c] : exp_argument_.terms())
            a += to_real(c.evaluate_all(point)) * constant_monomial_value(key.constants);
        r *= boost::multiprecision::exp(a);
    }
    return r;
}

std::string HyperTerm::to_string() const
{
    std::vector<std::string> parts;
    if (!(rational_ == RationalFunction(1))) parts.push_back(rational_.to_string());
    for (const auto& [v, b] : geometric_) {
        std::string s = b.get_str();
        if (b < 0 || b.get_den() != 1) s = "(" + s + ")";
        parts.push_back(s + "^" + var_name(v));
    }
    auto with_exponent = [](std::string s, int e) { return e == 1 ? s : s + "^" + std::to_string(e); };
    for (const auto& g : gammas_) parts.push_back(with_exponent("Gamma[" + g.arg.to_string() + "]", g.exponent));
    for (const auto& b : binomials_)
        parts.push_back(with_exponent("Binomial[" + b.top.to_string() + "," + b.bottom.to_string() + "]", b.exponent));
    if (!exp_argument_.is_zero()) parts.push_back("Exp[" + exp_argument_.to_string() + "]");
    if (parts.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    return os.str();
}

HyperTerm to_hyper_term(const Node& n)
{
    switch (n.kind) {
    case Node::Kind::Mul:
        return to_hyper_term(*n.args[0]) * to_hyper_term(*n.args[1]);
    case Node::Kind::Div:
        return to_hyper_term(*n.args[0]) * inverse(to_hyper_term(*n.args[1]));
    case Node::Kind::Neg:
        return to_hyper_term(*n.args[0]) * HyperTerm(RationalFunction(-1));
    case Node::Kind::Pow: {
        SumExpression ex = to_sum_expression(*n.args[1], Var::k);
        if (ex.is_rational() && ex.as_rational().is_constant()) {
            Rational q = ex.is_zero() ? Rational(0) : ex.as_rational().constant_value();
            if (q.get_den() != 1) fail_at(*n.args[1], "fractional exponent");
            return power(to_hyper_term(*n.args[0]), q.get_num().get_si());
        }
        if (!ex.is_rational() || !ex.as_rational().is_polynomial()) fail_at(*n.args[1], "unsupported exponent");
        Polynomial p = ex.as_rational().num();
        Var v = p.uses(Var::k) ? Var::k : Var::N;
        Polynomial rest = p - var_poly(v);
        if (!rest.is_constant() || (!rest.is_zero() && rest.constant_value().get_den() != 1))
            fail_at(*n.args[1], "exponent must be k + integer or N + integer");
        SumExpression base = to_sum_expression(*n.args[0], Var::k);
        if (!base.is_rational() || !base.as_rational().is_constant() || base.is_zero())
            fail_at(*n.args[0], "base of a geometric factor must be a nonzero rational");
        Rational c = base.as_rational().constant_value();
        HyperTerm t(RationalFunction(rest.is_zero() ? Rational(1) : rational_pow(c, rest.constant_value().get_num().get_si())));
        t.add_geometric(v, c);
        return t;
    }
    case Node::Kind::Call: {
        HyperTerm t;
        auto arity = [&](std::size_t m) {
            if (n.args.size() != m) fail_at(n, n.name + " takes " + std::to_string(m) + " argument(s)");
            if (n.applied) fail_at(n, n.name + " takes no applied argument");
        };
        if (n.name == "Gamma") {
            arity(1);
            t.add_gamma(linear_argument(*n.args[0]), 1);
            return t;
        }
        if (n.name == "Factorial") {
            arity(1);
            t.add_gamma(linear_argument(*n.args[0]) + Polynomial(1), 1);
            return t;
        }
        if (n.name == "Beta") {
            arity(2);
            Polynomial a = linear_argument(*n.args[0]), b = linear_argument(*n.args[1]);
            t.add_gamma(a, 1);
            t.add_gamma(b, 1);
            t.add_gamma(a + b, -1);
            return t;
        }
        if (n.name == "Binomial") {
            arity(2);
            Polynomial a = linear_argument(*n.args[0]), b = linear_argument(*n.args[1]);
            if (a.uses(Var::ep) || b.uses(Var::ep)) fail_at(n, "Binomial arguments may not contain ep");
            t.add_binomial(a, b, 1);
            return t;
        }
        if (n.name == "Exp") {
            arity(1);
            try {
                t.add_exp(to_sum_expression(*n.args[0], Var::k));
            } catch (const DomainError& e) {
                fail_at(n, e.what());
            }
            return t;
        }
        break;
    }
    default:
        break;
    }
    SumExpression e = to_sum_expression(n, Var::k);
    if (!e.is_rational()) fail_at(n, "unsupported factor in a hypergeometric term");
    return HyperTerm(e.as_rational());
}

HyperTerm parse_hyper_term(std::string_view text) { return to_hyper_term(*parse_ast(text)); }

}  // namespace epsum
