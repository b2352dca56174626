#include "epsum/polynomial.hpp"
#include "epsum/univariate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace epsum {

const char* var_name(Var v)
{
    switch (v) {
    case Var::k: return "k";
    case Var::N: return "N";
    case Var::ep: return "ep";
    case Var::x: return "x";
    }
    return "?";
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: " + s);
    q.canonicalize();
    return q;
}

bool monomial_greater(const Exponents& a, const Exponents& b)
{
    int da = 0, db = 0;
    for (std::size_t i = 0; i < kVarCount; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da > db;
    for (std::size_t i = kVarCount; i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

namespace {

struct MonoGreater {
    bool operator()(const Exponents& a, const Exponents& b) const { return monomial_greater(a, b); }
};

Exponents add_exp(const Exponents& a, const Exponents& b)
{
    Exponents r;
    for (std::size_t i = 0; i < kVarCount; ++i) r[i] = a[i] + b[i];
    return r;
}

constexpr std::size_t idx(Var v) { return static_cast<std::size_t>(v); }

}  // namespace

Polynomial::Polynomial(const Rational& c)
{
    if (c != 0) terms_.emplace_back(Exponents{}, c);
}

Polynomial Polynomial::variable(Var v)
{
    Exponents e{};
    e[idx(v)] = 1;
    return monomial(e, 1);
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c)
{
    Polynomial p;
    if (c != 0) p.terms_.emplace_back(e, c);
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms)
{
    std::map<Exponents, Rational, MonoGreater> acc;
    for (auto& [e, c] : terms) acc[e] += c;
    Polynomial p;
    for (auto& [e, c] : acc)
        if (c != 0) p.terms_.emplace_back(e, c);
    return p;
}

Polynomial Polynomial::from_coefficients(Var v, const std::vector<Polynomial>& coeffs)
{
    std::vector<Term> all;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (const auto& [e, c] : coeffs[i].terms_) {
            Exponents f = e;
            f[idx(v)] += static_cast<std::int32_t>(i);
            all.emplace_back(f, c);
        }
    }
    return from_terms(std::move(all));
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exponents{});
}

Rational Polynomial::constant_value() const
{
    if (!is_constant()) throw std::logic_error("polynomial is not constant: " + to_string());
    return terms_.empty() ? Rational(0) : terms_[0].second;
}

Rational Polynomial::constant_term() const
{
    if (!terms_.empty() && terms_.back().first == Exponents{}) return terms_.back().second;
    return 0;
}

const Rational& Polynomial::leading_coefficient() const
{
    if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return terms_[0].second;
}

const Exponents& Polynomial::leading_monomial() const
{
    if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
    return terms_[0].first;
}

int Polynomial::degree(Var v) const
{
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first[idx(v)]));
    return d;
}

int Polynomial::total_degree() const
{
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
}

int Polynomial::low_degree(Var v) const
{
    if (terms_.empty()) return -1;
    int d = terms_[0].first[idx(v)];
    for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.first[idx(v)]));
    return d;
}

unsigned Polynomial::variable_mask() const
{
    unsigned m = 0;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < kVarCount; ++i)
            if (e[i] > 0) m |= 1u << i;
    return m;
}

std::vector<Polynomial> Polynomial::coefficients(Var v) const
{
    int d = degree(v);
    if (d < 0) return {};
    std::vector<std::vector<Term>> parts(static_cast<std::size_t>(d) + 1);
    for (const auto& [e, c] : terms_) {
        Exponents f = e;
        f[idx(v)] = 0;
        parts[static_cast<std::size_t>(e[idx(v)])].emplace_back(f, c);
    }
    std::vector<Polynomial> out;
    out.reserve(parts.size());
    for (auto& p : parts) out.push_back(from_terms(std::move(p)));
    return out;
}

Polynomial Polynomial::coefficient(Var v, int power) const
{
    std::vector<Term> part;
    for (const auto& [e, c] : terms_) {
        if (e[idx(v)] == power) {
            Exponents f = e;
            f[idx(v)] = 0;
            part.emplace_back(f, c);
        }
    }
    return from_terms(std::move(part));
}

Polynomial Polynomial::leading_coefficient_in(Var v) const { return coefficient(v, degree(v)); }

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].first == o.terms_[j].first) {
            Rational c = terms_[i].second + o.terms_[j].second;
            if (c != 0) out.emplace_back(terms_[i].first, std::move(c));
            ++i;
            ++j;
        } else if (monomial_greater(terms_[i].first, o.terms_[j].first)) {
            out.push_back(std::move(terms_[i++]));
        } else {
            out.push_back(o.terms_[j++]);
        }
    }
    while (i < terms_.size()) out.push_back(std::move(terms_[i++]));
    while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
    terms_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (b.is_constant()) return a * b.terms_[0].second;
    if (a.is_constant()) return b * a.terms_[0].second;
    std::map<Exponents, Rational, MonoGreater> acc;
    Rational tmp;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            tmp = ca * cb;
            acc[add_exp(ea, eb)] += tmp;
        }
    }
    Polynomial p;
    p.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (c != 0) p.terms_.emplace_back(e, std::move(c));
    return p;
}

Polynomial& Polynomial::operator*=(const Polynomial& o)
{
    *this = *this * o;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

std::strong_ordering compare(const Polynomial& a, const Polynomial& b)
{
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [ea, ca] = a.terms_[i];
        const auto& [eb, cb] = b.terms_[i];
        if (ea != eb) return monomial_greater(ea, eb) ? std::strong_ordering::greater : std::strong_ordering::less;
        int c = cmp(ca, cb);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.terms_.size() <=> b.terms_.size();
}

Polynomial Polynomial::pow(unsigned e) const
{
    Polynomial r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Polynomial Polynomial::substitute(Var v, const Polynomial& value) const
{
    auto cs = coefficients(v);
    Polynomial r;
    for (std::size_t i = cs.size(); i-- > 0;) {
        r *= value;
        r += cs[i];
    }
    return r;
}

Polynomial Polynomial::evaluate(Var v, const Rational& value) const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
        Exponents f = e;
        int p = f[idx(v)];
        f[idx(v)] = 0;
        Rational cc = c * rational_pow(value, p);
        if (cc != 0) out.emplace_back(f, std::move(cc));
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::shift(Var v, const Rational& c) const
{
    if (c == 0 || !uses(v)) return *this;
    return substitute(v, variable(v) + Polynomial(c));
}

Polynomial Polynomial::derivative(Var v) const
{
    std::vector<Term> out;
    for (const auto& [e, c] : terms_) {
        if (e[idx(v)] == 0) continue;
        Exponents f = e;
        f[idx(v)] -= 1;
        out.emplace_back(f, c * e[idx(v)]);
    }
    return from_terms(std::move(out));
}

Rational Polynomial::evaluate_all(const std::array<Rational, kVarCount>& point) const
{
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < kVarCount; ++i)
            if (e[i]) t *= rational_pow(point[i], e[i]);
        s += t;
    }
    return s;
}

Polynomial Polynomial::monic() const
{
    if (terms_.empty()) return {};
    Rational inv = 1 / terms_[0].second;
    return *this * inv;
}

Rational Polynomial::rational_content() const
{
    if (terms_.empty()) return 0;
    Integer g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        g = integer_gcd(g, c.get_num());
        l = integer_lcm(l, c.get_den());
    }
    Rational r = make_rational(g, l);
    if (terms_[0].second < 0) r = -r;
    return r;
}

Polynomial Polynomial::integer_primitive() const
{
    if (terms_.empty()) return {};
    return *this * (1 / rational_content());
}

std::string Polynomial::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool is_one = (e == Exponents{});
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (a != 1 || is_one) {
            os << a.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < kVarCount; ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << var_name(static_cast<Var>(i));
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return Polynomial{};
    if (b.is_constant()) return a * (1 / b.constant_value());
    const auto& [lb, cb] = b.terms().front();
    Polynomial r = a;
    std::vector<Polynomial::Term> qterms;
    while (!r.is_zero()) {
        const auto& [lr, cr] = r.terms().front();
        Exponents d;
        for (std::size_t i = 0; i < kVarCount; ++i) {
            d[i] = lr[i] - lb[i];
            if (d[i] < 0) return std::nullopt;
        }
        Polynomial t = Polynomial::monomial(d, cr / cb);
        qterms.emplace_back(d, cr / cb);
        r -= t * b;
    }
    return Polynomial::from_terms(std::move(qterms));
}

Polynomial divide_known(const Polynomial& a, const Polynomial& b)
{
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("inexact polynomial division: (" + a.to_string() + ") / (" + b.to_string() + ")");
    return *q;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Var v)
{
    int db = b.degree(v);
    Polynomial lcb = b.leading_coefficient_in(v);
    Polynomial r = a;
    Exponents e{};
    while (!r.is_zero() && r.degree(v) >= db) {
        int dr = r.degree(v);
        Polynomial lcr = r.leading_coefficient_in(v);
        e[static_cast<std::size_t>(v)] = dr - db;
        r = lcb * r - lcr * Polynomial::monomial(e, 1) * b;
    }
    return r;
}

std::pair<Polynomial, Polynomial> divide_univariate(const Polynomial& a, const Polynomial& b, Var v)
{
    auto [q, r] = divmod(to_upoly(a, v), to_upoly(b, v));
    return {from_upoly(q, v), from_upoly(r, v)};
}

namespace {

int top_var(unsigned mask)
{
    for (int i = static_cast<int>(kVarCount) - 1; i >= 0; --i)
        if (mask & (1u << i)) return i;
    return -1;
}

// Deterministic evaluation points for the coprimality shortcut.
const std::array<long, 6> kProbe = {7, -11, 13, 17, -19, 23};

bool images_coprime(const Polynomial& a, const Polynomial& b, Var v, unsigned others)
{
    for (int attempt = 0; attempt < 2; ++attempt) {
        Polynomial ia = a, ib = b;
        for (std::size_t i = 0; i < kVarCount; ++i) {
            if (!(others & (1u << i))) continue;
            Rational val = kProbe[(i + 3 * static_cast<std::size_t>(attempt)) % kProbe.size()] + 5 * attempt;
            ia = ia.evaluate(static_cast<Var>(i), val);
            ib = ib.evaluate(static_cast<Var>(i), val);
        }
        if (ia.degree(v) != a.degree(v) || ib.degree(v) != b.degree(v)) continue;
        auto g = gcd(to_upoly(ia, v), to_upoly(ib, v));
        return degree(g) == 0;
    }
    return false;
}

Integer max_norm(const Polynomial& p)
{
    Integer m = 0;
    for (const auto& [e, c] : p.terms()) {
        Integer a = abs(c.get_num());
        if (a > m) m = a;
    }
    return m;
}

Integer integer_content(const Polynomial& p)
{
    Integer g = 0;
    for (const auto& [e, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    return g;
}

// gcd over Z of integer polynomials: evaluate the top variable at a large integer, recurse, read the
// result back in base xi and accept its primitive part if it divides both primitive parts
std::optional<Polynomial> heuristic_gcd(const Polynomial& a, const Polynomial& b, int depth = 0)
{
    Integer ca = integer_content(a), cb = integer_content(b), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    unsigned mask = a.variable_mask() | b.variable_mask();
    if (mask == 0) return Polynomial(Rational(c));
    if (depth > 4) return std::nullopt;
    Polynomial pa = a * Rational(1 / Rational(ca)), pb = b * Rational(1 / Rational(cb));
    Var v = static_cast<Var>(top_var(mask));
    Integer xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Polynomial ea = pa.evaluate(v, Rational(xi)), eb = pb.evaluate(v, Rational(xi));
        if (ea.is_zero() || eb.is_zero()) return std::nullopt;
        auto h = heuristic_gcd(ea, eb, depth + 1);
        if (!h) return std::nullopt;
        std::vector<Polynomial::Term> terms;
        for (const auto& [e, coef] : h->terms()) {
            Integer rest = coef.get_num();
            for (int i = 0; rest != 0; ++i) {
                Integer d = rest % xi;
                if (d < 0) d += xi;
                if (2 * d > xi) d -= xi;
                if (d != 0) {
                    Exponents f = e;
                    f[static_cast<std::size_t>(v)] = i;
                    terms.emplace_back(f, Rational(d));
                }
                rest = (rest - d) / xi;
            }
        }
        Polynomial g = Polynomial::from_terms(std::move(terms));
        if (!g.is_zero()) {
            g = g * Rational(1 / Rational(integer_content(g)));
            if (divide_exact(pa, g) && divide_exact(pb, g)) return g * Rational(c);
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

Polynomial primitive_gcd(Polynomial a, Polynomial b, Var v)
{
    unsigned mask = a.variable_mask() | b.variable_mask();
    unsigned vbit = 1u << static_cast<unsigned>(v);
    if (mask == vbit) {
        return from_upoly(gcd(to_upoly(a, v), to_upoly(b, v)), v);
    }
    if (a.degree(v) < b.degree(v)) std::swap(a, b);
    if (divide_exact(a, b)) return b;
    if (images_coprime(a, b, v, mask & ~vbit)) return Polynomial(1);
    while (!b.is_zero()) {
        Polynomial r = pseudo_remainder(a, b, v);
        a = std::move(b);
        if (r.is_zero()) break;
        if (r.degree(v) == 0) return Polynomial(1);
        b = divide_known(r, content_in(r, v)).integer_primitive();
    }
    return divide_known(a, content_in(a, v));
}

}  // namespace

Polynomial content_in(const Polynomial& p, Var v)
{
    auto cs = p.coefficients(v);
    Polynomial g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return Polynomial(1);
    }
    return g;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    unsigned mask = a.variable_mask() | b.variable_mask();
    if (a.total_degree() + b.total_degree() > 6)
        if (auto h = heuristic_gcd(a.integer_primitive(), b.integer_primitive())) return h->monic();
    Var v = static_cast<Var>(top_var(mask));
    if (!a.uses(v)) return gcd(a, content_in(b, v));
    if (!b.uses(v)) return gcd(content_in(a, v), b);
    Polynomial ca = content_in(a, v), cb = content_in(b, v);
    Polynomial pa = ca.is_constant() ? a : divide_known(a, ca);
    Polynomial pb = cb.is_constant() ? b : divide_known(b, cb);
    Polynomial gc = (ca.is_constant() || cb.is_constant()) ? Polynomial(1) : gcd(ca, cb);
    Polynomial gp = primitive_gcd(pa.integer_primitive(), pb.integer_primitive(), v);
    return (gc * gp).monic();
}

}  // namespace epsum
