#include "epsum/numeric.hpp"
#include "epsum/errors.hpp"

#include <cstdlib>
#include <sstream>

namespace epsum {

unsigned default_digits()
{
    if (const char* env = std::getenv("EPSUM_DIGITS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 10 && v <= 10000) return static_cast<unsigned>(v);
    }
    return 40;
}

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision())
{
    Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real to_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real real_zeta(int s)
{
    Real r;
    mpfr_zeta_ui(r.backend().data(), static_cast<unsigned long>(s), MPFR_RNDN);
    return r;
}

Real real_euler_gamma()
{
    Real r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

Real real_log(const Rational& q) { return log(to_real(q)); }

Real real_gamma(const Real& x)
{
    Real r;
    mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Real real_lgamma_abs(const Real& x)
{
    Real r;
    int sign = 0;
    mpfr_lgamma(r.backend().data(), &sign, x.backend().data(), MPFR_RNDN);
    return r;
}

Real constant_value(const FormalConstant& c)
{
    switch (c.kind) {
    case ConstantKind::Zeta: return real_zeta(c.zeta_arg);
    case ConstantKind::EulerGamma: return real_euler_gamma();
    case ConstantKind::Log: return real_log(c.log_arg);
    }
    return Real(0);
}

Real constant_monomial_value(const ConstMonomial& m)
{
    Real r = 1;
    for (const auto& [c, e] : m) r *= pow(constant_value(c), e);
    return r;
}

Real ssum_real(const SWord& w, long n)
{
    if (n < 0) throw DomainError("S-sum evaluated at a negative argument");
    if (w.empty()) return Real(1);
    std::size_t count = static_cast<std::size_t>(n) + 1;
    std::vector<Real> inner(count, Real(1));
    for (std::size_t d = w.size(); d-- > 0;) {
        std::vector<Real> outer(count, Real(0));
        Real x = to_real(w[d].base);
        Real pw = 1;
        for (std::size_t i = 1; i < count; ++i) {
            pw *= x;
            outer[i] = outer[i - 1] + pw / pow(Real(static_cast<long>(i)), w[d].weight) * inner[i];
        }
        inner = std::move(outer);
    }
    return inner[static_cast<std::size_t>(n)];
}

Real evaluate_real(const SumExpression& e, long n)
{
    Real total = 0;
    Rational nv(n);
    for (const auto& [k, c] : e.terms()) {
        RationalFunction cv = c.evaluate(e.var(), nv);
        if (!cv.is_constant()) throw DomainError("coefficient depends on further variables: " + c.to_string());
        Real t = to_real(cv.constant_value());
        if (k.geometric != 1) t *= pow(to_real(k.geometric), n);
        if (!k.constants.empty()) t *= constant_monomial_value(k.constants);
        if (!k.sum.empty()) t *= ssum_real(k.sum, n);
        total += t;
    }
    return total;
}

Real evaluate_real(const SumExpression& e)
{
    Real total = 0;
    for (const auto& [k, c] : e.terms()) {
        if (!k.sum.empty() || k.geometric != 1 || !c.is_constant())
            throw DomainError("not a constant expression: " + e.to_string());
        total += to_real(c.constant_value()) * constant_monomial_value(k.constants);
    }
    return total;
}

std::string format_real(const Real& x, unsigned digits)
{
    std::ostringstream os;
    os.precision(static_cast<std::streamsize>(digits));
    os << x;
    return os.str();
}

Real relative_deviation(const Real& a, const Real& b)
{
    Real scale = std::max(abs(a), abs(b));
    Real diff = abs(a - b);
    if (scale < Real("1e-30")) return diff;
    return diff / scale;
}

}  // namespace epsum
