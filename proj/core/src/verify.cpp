#include "epsum/verify.hpp"
#include "epsum/errors.hpp"

#include <algorithm>
#include <sstream>

namespace epsum {

std::string VerifyReport::to_string() const
{
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " compared " << compared << " points, max relative deviation " << max_deviation;
    if (compared > 0) {
        os << " at N = " << worst_n;
        if (worst_eps) os << ", ep = " << worst_eps->get_str();
    }
    if (!skipped.empty()) {
        os << "; skipped poles at N =";
        for (auto n : skipped) os << " " << n;
    }
    return os.str();
}

namespace {

struct Tracker {
    PrecisionScope scope;
    Real worst = 0;
    VerifyReport report;
    explicit Tracker(unsigned digits) : scope(digits) {}

    void add(const Real& a, const Real& b, long n, std::optional<Rational> eps)
    {
        Real d = relative_deviation(a, b);
        if (report.compared == 0 || d > worst) {
            worst = d;
            report.worst_n = n;
            report.worst_eps = eps;
        }
        ++report.compared;
    }

    VerifyReport finish(unsigned digits)
    {
        Real tol = pow(Real(10), -static_cast<int>(digits / 2));
        report.pass = report.compared > 0 && worst < tol;
        report.max_deviation = format_real(worst, 6);
        std::sort(report.skipped.begin(), report.skipped.end());
        report.skipped.erase(std::unique(report.skipped.begin(), report.skipped.end()), report.skipped.end());
        return report;
    }
};

bool uses_eps(const SumExpression& e)
{
    for (const auto& [k, c] : e.terms())
        if (c.uses(Var::ep)) return true;
    return false;
}

void compare(Tracker& t, const SumExpression& a, const SumExpression& b, long lo, long hi, const std::vector<Rational>& eps_vals)
{
    bool with_eps = !eps_vals.empty() && (uses_eps(a) || uses_eps(b));
    std::vector<std::optional<Rational>> points;
    if (with_eps)
        for (const auto& e : eps_vals) points.emplace_back(e);
    else
        points.emplace_back();
    for (const auto& eps : points) {
        SumExpression x = eps ? a.substitute(Var::ep, *eps) : a;
        SumExpression y = eps ? b.substitute(Var::ep, *eps) : b;
        for (long n = lo; n <= hi; ++n) {
            try {
                t.add(evaluate_real(x, n), evaluate_real(y, n), n, eps);
            } catch (const PoleError&) {
                t.report.skipped.push_back(n);
            }
        }
    }
}

}  // namespace

VerifyReport numeric_verify(const SumExpression& lhs, const SumExpression& rhs, long lo, long hi,
                            const std::vector<Rational>& eps_vals, unsigned digits)
{
    Tracker t(digits);
    compare(t, lhs, rhs, lo, hi, eps_vals);
    return t.finish(digits);
}

VerifyReport numeric_verify(const EpsSeries& lhs, const EpsSeries& rhs, long lo, long hi, const std::vector<Rational>& eps_vals,
                            unsigned digits)
{
    Tracker t(digits);
    int from = std::min(lhs.start(), rhs.start());
    int to = std::min(lhs.trunc(), rhs.trunc());
    if (to >= kExactOrder) to = std::max(lhs.start() + static_cast<int>(lhs.coefficients().size()),
                                         rhs.start() + static_cast<int>(rhs.coefficients().size()));
    for (int o = from; o < to; ++o) compare(t, lhs.coefficient(o), rhs.coefficient(o), lo, hi, eps_vals);
    return t.finish(digits);
}

VerifyReport numeric_verify(const SumExpression& lhs, const std::function<Real(long)>& oracle, long lo, long hi,
                            unsigned digits)
{
    Tracker t(digits);
    for (long n = lo; n <= hi; ++n) {
        try {
            t.add(evaluate_real(lhs, n), oracle(n), n, std::nullopt);
        } catch (const PoleError&) {
            t.report.skipped.push_back(n);
        }
    }
    return t.finish(digits);
}

}  // namespace epsum
