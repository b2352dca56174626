#include "epsum/eps_series.hpp"
#include "epsum/errors.hpp"

#include <algorithm>
#include <sstream>

namespace epsum {

int order_add(int a, int b)
{
    if (a >= kExactOrder || b >= kExactOrder) return kExactOrder;
    return a + b;
}

EpsSeries EpsSeries::zero(int trunc, Var var)
{
    EpsSeries s;
    s.start_ = trunc;
    s.trunc_ = trunc;
    s.var_ = var;
    return s;
}

EpsSeries EpsSeries::exact(const SumExpression& e, int order)
{
    EpsSeries s(order, {e}, kExactOrder, e.var());
    return s;
}

EpsSeries::EpsSeries(int start, std::vector<SumExpression> coeffs, int trunc, Var var)
    : start_(start), coeffs_(std::move(coeffs)), trunc_(trunc), var_(var)
{
    if (trunc_ < kExactOrder && start_ + static_cast<int>(coeffs_.size()) > trunc_)
        throw TruncationError("series lists coefficients beyond its truncation order");
    if (trunc_ >= kExactOrder) trunc_ = kExactOrder;
    for (auto& c : coeffs_) c = c.with_var(var_);
    if (coeffs_.empty() && start_ > trunc_) start_ = trunc_;
}

int EpsSeries::valuation() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return start_ + static_cast<int>(i);
    return trunc_;
}

bool EpsSeries::is_zero() const { return valuation() >= trunc_; }

SumExpression EpsSeries::coefficient(int order) const
{
    if (order >= trunc_)
        throw TruncationError("coefficient of ep^" + std::to_string(order) + " requested, series known below ep^" +
                              std::to_string(trunc_));
    if (order < start_ || order >= start_ + static_cast<int>(coeffs_.size())) return SumExpression(var_);
    return coeffs_[static_cast<std::size_t>(order - start_)];
}

void EpsSeries::set_coefficient(int order, const SumExpression& e)
{
    if (order >= trunc_) throw TruncationError("cannot set a coefficient at or beyond the truncation order");
    if (coeffs_.empty()) {
        start_ = order;
    } else if (order < start_) {
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(start_ - order), SumExpression(var_));
        start_ = order;
    }
    std::size_t idx = static_cast<std::size_t>(order - start_);
    if (idx >= coeffs_.size()) coeffs_.resize(idx + 1, SumExpression(var_));
    coeffs_[idx] = e.with_var(var_);
}

EpsSeries EpsSeries::truncated(int trunc) const
{
    int t = std::min(trunc, trunc_);
    std::vector<SumExpression> cs;
    for (int o = start_; o < t && o < start_ + static_cast<int>(coeffs_.size()); ++o) cs.push_back(coeffs_[static_cast<std::size_t>(o - start_)]);
    return EpsSeries(std::min(start_, t), std::move(cs), t, var_);
}

EpsSeries EpsSeries::with_var(Var v) const
{
    EpsSeries s = *this;
    s.var_ = v;
    for (auto& c : s.coeffs_) c = c.with_var(v);
    return s;
}

EpsSeries EpsSeries::operator-() const
{
    EpsSeries s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& o)
{
    int t = std::min(trunc_, o.trunc_);
    int s = std::min(start_, o.start_);
    int top = std::max(start_ + static_cast<int>(coeffs_.size()), o.start_ + static_cast<int>(o.coeffs_.size()));
    top = std::min(top, t);
    std::vector<SumExpression> cs;
    for (int ord = s; ord < top; ++ord) {
        SumExpression c(var_);
        if (ord >= start_ && ord < start_ + static_cast<int>(coeffs_.size())) c += coeffs_[static_cast<std::size_t>(ord - start_)];
        if (ord >= o.start_ && ord < o.start_ + static_cast<int>(o.coeffs_.size())) c += o.coeffs_[static_cast<std::size_t>(ord - o.start_)];
        cs.push_back(std::move(c));
    }
    *this = EpsSeries(std::min(s, t), std::move(cs), t, var_);
    return *this;
}

EpsSeries& EpsSeries::operator-=(const EpsSeries& o) { return *this += -o; }

EpsSeries operator*(const EpsSeries& a, const EpsSeries& b)
{
    int va = a.valuation(), vb = b.valuation();
    int t = std::min(order_add(va, b.trunc_), order_add(vb, a.trunc_));
    if (va >= a.trunc_ || vb >= b.trunc_) return EpsSeries::zero(t, a.var_);
    int top = (a.start_ + static_cast<int>(a.coeffs_.size()) - 1) + (b.start_ + static_cast<int>(b.coeffs_.size()) - 1);
    top = std::min(top, t - 1);
    std::vector<SumExpression> cs;
    for (int o = va + vb; o <= top; ++o) {
        SumExpression c(a.var_);
        for (int i = va; i <= o - vb; ++i) {
            int j = o - i;
            if (i >= a.start_ + static_cast<int>(a.coeffs_.size())) break;
            if (j >= b.start_ + static_cast<int>(b.coeffs_.size()) || j < b.start_) continue;
            const auto& x = a.coeffs_[static_cast<std::size_t>(i - a.start_)];
            const auto& y = b.coeffs_[static_cast<std::size_t>(j - b.start_)];
            if (x.is_zero() || y.is_zero()) continue;
            c += x * y;
        }
        cs.push_back(std::move(c));
    }
    return EpsSeries(std::min(va + vb, t), std::move(cs), t, a.var_);
}

EpsSeries operator*(const EpsSeries& a, const SumExpression& e)
{
    EpsSeries s = a;
    for (auto& c : s.coeffs_) c = c * e;
    return s;
}

bool operator==(const EpsSeries& a, const EpsSeries& b)
{
    if (a.trunc_ != b.trunc_) return false;
    int lo = std::min(a.start_, b.start_);
    int hi = std::max(a.start_ + static_cast<int>(a.coeffs_.size()), b.start_ + static_cast<int>(b.coeffs_.size()));
    for (int o = lo; o < hi && o < a.trunc_; ++o)
        if (!(a.coefficient(o) == b.coefficient(o))) return false;
    return true;
}

EpsSeries EpsSeries::times_eps_power(int k) const
{
    EpsSeries s = *this;
    s.start_ = order_add(start_, k);
    s.trunc_ = order_add(trunc_, k);
    return s;
}

EpsSeries EpsSeries::shift(int j) const
{
    return map_coefficients([j](const SumExpression& e) { return e.shift(j); });
}

EpsSeries EpsSeries::map_coefficients(const std::function<SumExpression(const SumExpression&)>& f) const
{
    EpsSeries s = *this;
    for (auto& c : s.coeffs_) c = f(c).with_var(var_);
    return s;
}

EpsSeries EpsSeries::evaluate(long n) const
{
    return map_coefficients([n](const SumExpression& e) { return e.evaluate(n); });
}

EpsSeries EpsSeries::exp() const
{
    int v = valuation();
    if (v < 1) throw DomainError("exp of a series needs valuation >= 1");
    if (is_exact()) throw TruncationError("exp of an exact series needs a truncation order");
    EpsSeries one(0, {SumExpression(RationalFunction(1), var_)}, kExactOrder, var_);
    if (is_zero()) return one.truncated(trunc_);
    EpsSeries result = one + *this;
    EpsSeries term = *this;
    for (int n = 2; order_add(term.valuation(), v) < trunc_; ++n) {
        term = term * *this;
        term = term.map_coefficients([n](const SumExpression& e) { return e * RationalFunction(make_rational(1, n)); });
        result += term;
    }
    return result.truncated(trunc_);
}

EpsSeries EpsSeries::log1p() const
{
    int v = valuation();
    if (v < 1) throw DomainError("log(1 + s) needs valuation >= 1");
    if (is_exact()) throw TruncationError("log of an exact series needs a truncation order");
    EpsSeries result = *this;
    EpsSeries power = *this;
    for (int n = 2; order_add(power.valuation(), v) < trunc_; ++n) {
        power = power * *this;
        Rational c = make_rational(n % 2 == 0 ? -1 : 1, n);
        result += power.map_coefficients([&](const SumExpression& e) { return e * RationalFunction(c); });
    }
    return result.truncated(trunc_);
}

std::string EpsSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        int o = start_ + static_cast<int>(i);
        if (!first) os << " + ";
        first = false;
        if (o == 0)
            os << "(" << coeffs_[i].to_string() << ")";
        else if (o == 1)
            os << "ep*(" << coeffs_[i].to_string() << ")";
        else
            os << "ep^" << o << "*(" << coeffs_[i].to_string() << ")";
    }
    if (!is_exact()) {
        if (!first) os << " + ";
        os << "O[ep]^" << trunc_;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

int eps_valuation(const RationalFunction& f)
{
    if (f.is_zero()) return kExactOrder;
    return f.num().low_degree(Var::ep) - f.den().low_degree(Var::ep);
}

LaurentExpansion laurent_expand(const RationalFunction& f, int upto)
{
    LaurentExpansion out;
    if (f.is_zero()) {
        out.start = upto;
        out.exact = true;
        return out;
    }
    int vn = f.num().low_degree(Var::ep), vd = f.den().low_degree(Var::ep);
    out.start = vn - vd;
    auto ncs = f.num().coefficients(Var::ep);
    auto dcs = f.den().coefficients(Var::ep);
    ncs.erase(ncs.begin(), ncs.begin() + vn);
    dcs.erase(dcs.begin(), dcs.begin() + vd);
    if (dcs.size() == 1) {
        out.exact = true;
        for (const auto& c : ncs) out.coeffs.push_back(RationalFunction(c, dcs[0]));
        while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
        return out;
    }
    int count = upto - out.start;
    if (count <= 0) return out;
    std::vector<RationalFunction> inv;
    RationalFunction e0 = RationalFunction(Polynomial(1), dcs[0]);
    inv.push_back(e0);
    for (int n = 1; n < count; ++n) {
        RationalFunction acc;
        for (int j = 1; j <= n && j < static_cast<int>(dcs.size()); ++j) {
            if (dcs[static_cast<std::size_t>(j)].is_zero()) continue;
            acc += RationalFunction(dcs[static_cast<std::size_t>(j)]) * inv[static_cast<std::size_t>(n - j)];
        }
        inv.push_back(-(acc * e0));
    }
    for (int n = 0; n < count; ++n) {
        RationalFunction acc;
        for (int j = 0; j <= n && j < static_cast<int>(ncs.size()); ++j) {
            if (ncs[static_cast<std::size_t>(j)].is_zero()) continue;
            acc += RationalFunction(ncs[static_cast<std::size_t>(j)]) * inv[static_cast<std::size_t>(n - j)];
        }
        out.coeffs.push_back(acc);
    }
    return out;
}

EpsSeries multiply(const EpsSeries& s, const RationalFunction& f, int target)
{
    if (f.is_zero()) return EpsSeries::zero(std::min(target, s.trunc()), s.var());
    int vf = eps_valuation(f);
    int vs = s.valuation();
    int t = std::min(target, order_add(s.trunc(), vf));
    LaurentExpansion lf = laurent_expand(f, t >= kExactOrder ? vf + 1 : t - std::min(vs, t));
    if (!lf.exact && t >= kExactOrder) throw TruncationError("product of an exact series with a non-terminating expansion needs a target order");
    if (s.is_zero()) return EpsSeries::zero(t, s.var());
    int top = s.start() + static_cast<int>(s.coefficients().size()) - 1 + lf.start + static_cast<int>(lf.coeffs.size()) - 1;
    top = std::min(top, t - 1);
    std::vector<SumExpression> cs;
    for (int o = vs + lf.start; o <= top; ++o) {
        SumExpression c(s.var());
        for (std::size_t j = 0; j < lf.coeffs.size(); ++j) {
            int i = o - lf.start - static_cast<int>(j);
            if (i < vs) break;
            if (i >= s.start() + static_cast<int>(s.coefficients().size())) continue;
            if (lf.coeffs[j].is_zero()) continue;
            const SumExpression& x = s.coefficients()[static_cast<std::size_t>(i - s.start())];
            if (!x.is_zero()) c += x * lf.coeffs[j];
        }
        cs.push_back(std::move(c));
    }
    int start = std::min(vs + lf.start, t);
    return EpsSeries(start, std::move(cs), t, s.var());
}

EpsSeries series_of(const RationalFunction& f, int trunc, Var var)
{
    LaurentExpansion l = laurent_expand(f, trunc);
    std::vector<SumExpression> cs;
    int limit = l.exact ? static_cast<int>(l.coeffs.size()) : std::min(static_cast<int>(l.coeffs.size()), trunc - l.start);
    if (l.exact && trunc < kExactOrder) limit = std::max(0, std::min(limit, trunc - l.start));
    for (int i = 0; i < limit; ++i) cs.push_back(SumExpression(l.coeffs[static_cast<std::size_t>(i)], var));
    int t = l.exact && trunc >= kExactOrder ? kExactOrder : trunc;
    if (f.is_zero()) return EpsSeries::zero(t, var);
    return EpsSeries(std::min(l.start, t), std::move(cs), t, var);
}

EpsSeries eps_expand(const SumExpression& e, int trunc)
{
    EpsSeries out = trunc >= kExactOrder ? EpsSeries(0, {}, kExactOrder, e.var()) : EpsSeries::zero(trunc, e.var());
    for (const auto& [key, c] : e.terms()) {
        LaurentExpansion l = laurent_expand(c, trunc);
        if (!l.exact && trunc >= kExactOrder)
            throw TruncationError("coefficient " + c.to_string() + " has no terminating expansion in ep");
        std::vector<SumExpression> cs;
        for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
            if (l.start + static_cast<int>(i) >= trunc) break;
            cs.push_back(SumExpression::term(key, l.coeffs[i], e.var()));
        }
        if (cs.empty()) continue;
        out += EpsSeries(l.start, std::move(cs), kExactOrder, e.var());
    }
    return out;
}

}  // namespace epsum
