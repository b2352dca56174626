#include "epsum/rational_function.hpp"
#include "epsum/errors.hpp"

#include <algorithm>

namespace epsum {

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) : num_(num), den_(den)
{
    if (den_.is_zero()) throw PoleError("rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize()
{
    if (num_.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    if (!den_.is_constant()) {
        Polynomial g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = divide_known(num_, g);
            den_ = divide_known(den_, g);
        }
    }
    Rational lc = den_.leading_coefficient();
    if (lc != 1) {
        Rational inv = 1 / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

Rational RationalFunction::constant_value() const
{
    return num_.constant_value() / den_.constant_value();
}

RationalFunction RationalFunction::operator-() const
{
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o)
{
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    if (den_.is_constant() && o.den_.is_constant()) {
        num_ = num_ * o.den_.constant_value() + o.num_ * den_.constant_value();
        den_ = den_ * o.den_.constant_value();
        normalize();
        return *this;
    }
    Polynomial g = gcd(den_, o.den_);
    Polynomial a = divide_known(den_, g), b = divide_known(o.den_, g);
    num_ = num_ * b + o.num_ * a;
    den_ = den_ * b;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o)
{
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = RationalFunction();
    if (is_polynomial() && o.is_polynomial()) {
        num_ = num_ * o.num_ * (1 / (den_.constant_value() * o.den_.constant_value()));
        den_ = Polynomial(1);
        return *this;
    }
    // cross cancellation keeps intermediate sizes down
    Polynomial g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    Polynomial n1 = g1.is_constant() ? num_ : divide_known(num_, g1);
    Polynomial d2 = g1.is_constant() ? o.den_ : divide_known(o.den_, g1);
    Polynomial n2 = g2.is_constant() ? o.num_ : divide_known(o.num_, g2);
    Polynomial d1 = g2.is_constant() ? den_ : divide_known(den_, g2);
    num_ = n1 * n2;
    den_ = d1 * d2;
    Rational lc = den_.leading_coefficient();
    if (lc != 1) {
        num_ *= 1 / lc;
        den_ *= 1 / lc;
    }
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o)
{
    if (o.is_zero()) throw PoleError("division by zero rational function");
    RationalFunction inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    Rational lc = inv.den_.leading_coefficient();
    if (lc != 1) {
        inv.num_ *= 1 / lc;
        inv.den_ *= 1 / lc;
    }
    return *this *= inv;
}

RationalFunction RationalFunction::pow(int e) const
{
    if (e < 0) return RationalFunction(1) / pow(-e);
    RationalFunction r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

RationalFunction RationalFunction::substitute(Var v, const Polynomial& value) const
{
    return RationalFunction(num_.substitute(v, value), den_.substitute(v, value));
}

namespace {

Polynomial homogenized(const Polynomial& p, Var v, const Polynomial& a, const Polynomial& b, int d)
{
    auto cs = p.coefficients(v);
    Polynomial out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].is_zero()) continue;
        out += cs[i] * a.pow(static_cast<unsigned>(i)) * b.pow(static_cast<unsigned>(d - static_cast<int>(i)));
    }
    return out;
}

}  // namespace

RationalFunction RationalFunction::substitute(Var v, const RationalFunction& value) const
{
    if (value.is_polynomial()) return substitute(v, value.num() * (1 / value.den().constant_value()));
    int d = std::max(num_.degree(v), den_.degree(v));
    if (d <= 0) return *this;
    Polynomial n = homogenized(num_, v, value.num(), value.den(), d);
    Polynomial m = homogenized(den_, v, value.num(), value.den(), d);
    if (m.is_zero()) throw PoleError("substitution hits a pole");
    return RationalFunction(n, m);
}

RationalFunction RationalFunction::shift(Var v, const Rational& c) const
{
    if (c == 0 || !uses(v)) return *this;
    RationalFunction r;
    r.num_ = num_.shift(v, c);
    r.den_ = den_.shift(v, c);
    return r;
}

RationalFunction RationalFunction::evaluate(Var v, const Rational& value) const
{
    if (!uses(v)) return *this;
    Polynomial d = den_.evaluate(v, value);
    if (d.is_zero()) throw PoleError("denominator " + den_.to_string() + " vanishes at " + var_name(v) + " = " + value.get_str());
    return RationalFunction(num_.evaluate(v, value), d);
}

Rational RationalFunction::evaluate_all(const std::array<Rational, kVarCount>& point) const
{
    Rational d = den_.evaluate_all(point);
    if (d == 0) throw PoleError("denominator " + den_.to_string() + " vanishes");
    return num_.evaluate_all(point) / d;
}

std::string RationalFunction::to_string() const
{
    if (den_.is_constant()) {
        Polynomial p = num_ * (1 / den_.constant_value());
        if (p.terms().size() <= 1) return p.to_string();
        return "(" + p.to_string() + ")";
    }
    Polynomial p = num_.integer_primitive(), q = den_.integer_primitive();
    Rational c = num_.rational_content() / den_.rational_content();
    Integer a = c.get_num(), b = c.get_den();
    auto wrapped = [](const Polynomial& x) { return x.terms().size() <= 1 ? x.to_string() : "(" + x.to_string() + ")"; };
    std::string n;
    if (p.is_constant())
        n = a.get_str();
    else if (a == 1)
        n = wrapped(p);
    else if (a == -1)
        n = "-" + wrapped(p);
    else
        n = a.get_str() + "*" + wrapped(p);
    std::string d = b == 1 ? "(" + q.to_string() + ")" : "(" + b.get_str() + "*" + wrapped(q) + ")";
    return n + "/" + d;
}

std::strong_ordering compare(const RationalFunction& a, const RationalFunction& b)
{
    auto c = compare(a.num_, b.num_);
    if (c != 0) return c;
    return compare(a.den_, b.den_);
}

}  // namespace epsum
