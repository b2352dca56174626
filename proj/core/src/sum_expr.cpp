#include "epsum/sum_expr.hpp"
#include "epsum/errors.hpp"

#include <algorithm>
#include <sstream>

namespace epsum {

std::strong_ordering operator<=>(const SIndex& a, const SIndex& b)
{
    if (a.weight != b.weight) return a.weight <=> b.weight;
    int c = cmp(a.base, b.base);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

SWord signed_word(const std::vector<int>& indices)
{
    SWord w;
    for (int a : indices) {
        if (a == 0) throw DomainError("S-sum index 0 is not allowed");
        w.push_back({a > 0 ? a : -a, a > 0 ? Rational(1) : Rational(-1)});
    }
    return w;
}

FormalConstant FormalConstant::zeta(int s)
{
    if (s < 2) throw DomainError("zeta constant needs an argument >= 2");
    FormalConstant c;
    c.kind = ConstantKind::Zeta;
    c.zeta_arg = s;
    return c;
}

FormalConstant FormalConstant::euler_gamma()
{
    FormalConstant c;
    c.kind = ConstantKind::EulerGamma;
    return c;
}

FormalConstant FormalConstant::log(const Rational& q)
{
    if (q <= 0) throw DomainError("logarithm of a non-positive number");
    FormalConstant c;
    c.kind = ConstantKind::Log;
    c.log_arg = q;
    return c;
}

std::strong_ordering operator<=>(const FormalConstant& a, const FormalConstant& b)
{
    if (a.kind != b.kind) return a.kind <=> b.kind;
    if (a.zeta_arg != b.zeta_arg) return a.zeta_arg <=> b.zeta_arg;
    int c = cmp(a.log_arg, b.log_arg);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string FormalConstant::to_string() const
{
    switch (kind) {
    case ConstantKind::Zeta: return "z" + std::to_string(zeta_arg);
    case ConstantKind::EulerGamma: return "eg";
    case ConstantKind::Log: return "Log[" + log_arg.get_str() + "]";
    }
    return "?";
}

std::strong_ordering operator<=>(const TermKey& a, const TermKey& b)
{
    if (a.sum != b.sum) return a.sum.size() != b.sum.size() ? a.sum.size() <=> b.sum.size() : (a.sum < b.sum ? std::strong_ordering::less : std::strong_ordering::greater);
    if (a.constants != b.constants) return a.constants < b.constants ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(a.geometric, b.geometric);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

namespace {

ConstMonomial multiply_constants(const ConstMonomial& a, const ConstMonomial& b)
{
    ConstMonomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

using WordCache = std::map<std::pair<SWord, SWord>, std::map<SWord, Integer>>;

std::map<SWord, Integer> stuffle_rec(const SWord& a, const SWord& b, WordCache& cache)
{
    if (a.empty()) return {{b, Integer(1)}};
    if (b.empty()) return {{a, Integer(1)}};
    auto key = std::make_pair(a, b);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::map<SWord, Integer> out;
    SWord ra(a.begin() + 1, a.end()), rb(b.begin() + 1, b.end());
    auto prepend = [&](const SIndex& head, const std::map<SWord, Integer>& tail, int sign) {
        for (const auto& [w, c] : tail) {
            SWord full;
            full.reserve(w.size() + 1);
            full.push_back(head);
            full.insert(full.end(), w.begin(), w.end());
            out[full] += sign * c;
        }
    };
    prepend(a[0], stuffle_rec(ra, b, cache), 1);
    prepend(b[0], stuffle_rec(a, rb, cache), 1);
    prepend(SIndex{a[0].weight + b[0].weight, a[0].base * b[0].base}, stuffle_rec(ra, rb, cache), -1);
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0)
            it = out.erase(it);
        else
            ++it;
    }
    cache.emplace(key, out);
    return out;
}

RationalFunction inverse_power(Var v, int shift, int a)
{
    Polynomial lin = Polynomial::variable(v) + Polynomial(shift);
    return RationalFunction(Polynomial(1), lin.pow(static_cast<unsigned>(a)));
}

}  // namespace

std::map<SWord, Integer> stuffle(const SWord& a, const SWord& b)
{
    WordCache cache;
    return stuffle_rec(a, b, cache);
}

SumExpression::SumExpression(const RationalFunction& c, Var var) : var_(var)
{
    if (!c.is_zero()) terms_.emplace(TermKey{}, c);
}

SumExpression SumExpression::ssum(const SWord& w, Var var)
{
    for (const auto& i : w) {
        if (i.weight < 1) throw DomainError("S-sum weights must be positive");
        if (i.base == 0) throw DomainError("S-sum base must be nonzero");
    }
    TermKey k;
    k.sum = w;
    return term(k, RationalFunction(1), var);
}

SumExpression SumExpression::constant(const FormalConstant& c, Var var)
{
    TermKey k;
    k.constants.emplace_back(c, 1);
    return term(k, RationalFunction(1), var);
}

SumExpression SumExpression::geometric(const Rational& c, Var var)
{
    if (c == 0) throw DomainError("geometric factor with base 0");
    TermKey k;
    k.geometric = c;
    return term(k, RationalFunction(1), var);
}

SumExpression SumExpression::term(const TermKey& key, const RationalFunction& coeff, Var var)
{
    SumExpression e(var);
    e.add_term(key, coeff);
    return e;
}

void SumExpression::add_term(const TermKey& key, const RationalFunction& coeff)
{
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool SumExpression::is_rational() const
{
    for (const auto& [k, c] : terms_)
        if (!k.sum.empty() || !k.constants.empty() || k.geometric != 1) return false;
    return true;
}

RationalFunction SumExpression::as_rational() const
{
    if (!is_rational()) throw DomainError("expression is not a rational function: " + to_string());
    if (terms_.empty()) return RationalFunction();
    return terms_.begin()->second;
}

bool SumExpression::is_constant_expression() const
{
    for (const auto& [k, c] : terms_)
        if (!k.sum.empty() || k.geometric != 1 || c.uses(var_)) return false;
    return true;
}

int SumExpression::depth() const
{
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.sum.size()));
    return d;
}

SumExpression SumExpression::with_var(Var v) const
{
    SumExpression r = *this;
    r.var_ = v;
    return r;
}

SumExpression SumExpression::operator-() const
{
    SumExpression r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

SumExpression& SumExpression::operator+=(const SumExpression& o)
{
    if (terms_.empty()) var_ = o.var_;
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

SumExpression& SumExpression::operator-=(const SumExpression& o) { return *this += -o; }

SumExpression operator*(const SumExpression& a, const SumExpression& b)
{
    SumExpression out(a.terms_.empty() ? b.var_ : a.var_);
    WordCache cache;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            RationalFunction c = ca * cb;
            TermKey base;
            base.geometric = ka.geometric * kb.geometric;
            base.constants = multiply_constants(ka.constants, kb.constants);
            if (ka.sum.empty() || kb.sum.empty()) {
                base.sum = ka.sum.empty() ? kb.sum : ka.sum;
                out.add_term(base, c);
                continue;
            }
            for (const auto& [w, m] : stuffle_rec(ka.sum, kb.sum, cache)) {
                base.sum = w;
                out.add_term(base, c * RationalFunction(Rational(m)));
            }
        }
    }
    return out;
}

SumExpression& SumExpression::operator*=(const SumExpression& o)
{
    *this = *this * o;
    return *this;
}

SumExpression& SumExpression::operator*=(const RationalFunction& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

namespace {

// S_w(v + dir) written over S-sums at v, for dir = +1 or -1.
SumExpression shifted_word(const SWord& w, int dir, Var v, std::map<SWord, SumExpression>& cache)
{
    if (w.empty()) return SumExpression(RationalFunction(1), v);
    if (auto it = cache.find(w); it != cache.end()) return it->second;
    SWord rest(w.begin() + 1, w.end());
    SumExpression result = SumExpression::ssum(w, v);
    TermKey g;
    g.geometric = w[0].base;
    if (dir > 0) {
        // + x1^(v+1) / (v+1)^a1 * S_rest(v+1)
        RationalFunction c = inverse_power(v, 1, w[0].weight) * RationalFunction(w[0].base);
        result += SumExpression::term(g, c, v) * shifted_word(rest, dir, v, cache);
    } else {
        // - x1^v / v^a1 * S_rest(v)
        RationalFunction c = -inverse_power(v, 0, w[0].weight);
        result += SumExpression::term(g, c, v) * SumExpression::ssum(rest, v);
    }
    cache.emplace(w, result);
    return result;
}

}  // namespace

SumExpression SumExpression::shift(int j) const
{
    if (j == 0) return *this;
    int dir = j > 0 ? 1 : -1;
    SumExpression cur = *this;
    std::map<SWord, SumExpression> cache;
    for (int step = 0; step < std::abs(j); ++step) {
        SumExpression next(var_);
        for (const auto& [k, c] : cur.terms_) {
            TermKey head;
            head.constants = k.constants;
            head.geometric = k.geometric;
            RationalFunction coeff = c.shift(var_, dir);
            if (dir > 0)
                coeff *= RationalFunction(k.geometric);
            else
                coeff *= RationalFunction(1 / k.geometric);
            SumExpression factor = SumExpression::term(head, coeff, var_);
            if (k.sum.empty())
                next += factor;
            else
                next += factor * shifted_word(k.sum, dir, var_, cache);
        }
        cur = std::move(next);
    }
    return cur;
}

SumExpression SumExpression::substitute(Var v, const Rational& value) const
{
    if (v == var_) throw DomainError("use evaluate() to substitute the sum variable");
    return map_coefficients([&](const RationalFunction& c) { return c.evaluate(v, value); });
}

SumExpression SumExpression::map_coefficients(const std::function<RationalFunction(const RationalFunction&)>& f) const
{
    SumExpression out(var_);
    for (const auto& [k, c] : terms_) out.add_term(k, f(c));
    return out;
}

Rational ssum_value(const SWord& w, long n)
{
    if (n < 0) throw DomainError("S-sum evaluated at a negative argument");
    if (w.empty()) return 1;
    // inner[i] = S_{w[d..]}(i), built from the innermost index outwards
    std::size_t count = static_cast<std::size_t>(n) + 1;
    std::vector<Rational> inner(count, Rational(1));
    for (std::size_t d = w.size(); d-- > 0;) {
        std::vector<Rational> outer(count, Rational(0));
        Rational pw = 1;
        for (std::size_t i = 1; i < count; ++i) {
            pw *= w[d].base;
            Rational den = rational_pow(Rational(static_cast<long>(i)), w[d].weight);
            outer[i] = outer[i - 1] + pw / den * inner[i];
        }
        inner = std::move(outer);
    }
    return inner[static_cast<std::size_t>(n)];
}

SumExpression SumExpression::evaluate(long n) const
{
    SumExpression out(var_);
    Rational nv(n);
    for (const auto& [k, c] : terms_) {
        RationalFunction coeff = c.evaluate(var_, nv);
        if (k.geometric != 1) coeff *= RationalFunction(rational_pow(k.geometric, n));
        if (!k.sum.empty()) coeff *= RationalFunction(ssum_value(k.sum, n));
        TermKey key;
        key.constants = k.constants;
        out.add_term(key, coeff);
    }
    return out;
}

Rational SumExpression::rational_value() const
{
    Rational v = 0;
    for (const auto& [k, c] : terms_) {
        if (!k.constants.empty() || !k.sum.empty() || k.geometric != 1 || !c.is_constant())
            throw DomainError("expression has no rational value: " + to_string());
        v += c.constant_value();
    }
    return v;
}

std::string word_to_string(const SWord& w)
{
    bool signed_form = std::all_of(w.begin(), w.end(), [](const SIndex& i) { return i.base == 1 || i.base == -1; });
    std::ostringstream os;
    os << "S[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ",";
        if (signed_form)
            os << (w[i].base == 1 ? w[i].weight : -w[i].weight);
        else
            os << "{" << w[i].weight << "," << w[i].base.get_str() << "}";
    }
    os << "]";
    return os.str();
}

std::string SumExpression::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    const char* v = var_name(var_);
    for (const auto& [k, c] : terms_) {
        std::vector<std::string> factors;
        bool unit = c.is_constant() && (c.constant_value() == 1 || c.constant_value() == -1);
        bool negative = c.num().leading_coefficient() < 0;
        if (!unit) {
            factors.push_back(negative ? (-c).to_string() : c.to_string());
        }
        if (k.geometric != 1) {
            std::string b = k.geometric.get_str();
            if (k.geometric < 0 || k.geometric.get_den() != 1) b = "(" + b + ")";
            factors.push_back(b + "^" + v);
        }
        for (const auto& [fc, e] : k.constants) factors.push_back(fc.to_string() + (e > 1 ? "^" + std::to_string(e) : ""));
        if (!k.sum.empty()) factors.push_back(word_to_string(k.sum) + "(" + v + ")");
        if (factors.empty()) factors.push_back("1");
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

}  // namespace epsum
