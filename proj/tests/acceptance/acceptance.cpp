#include "oracles.hpp"
#include "properties.hpp"

#include "epsum/eps_solver.hpp"
#include "epsum/gamma.hpp"
#include "epsum/rec_solver.hpp"
#include "epsum/worked_examples.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>

using namespace epsum;
using namespace epsum::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    /// Seconds; 0 for no limit.
    double limit;
    std::function<Outcome()> run;
};

Outcome from_fixture(const std::string& id)
{
    for (const auto& f : fixtures::all_fixtures())
        if (f.id == id) {
            auto r = f.run();
            return {r.pass, r.detail};
        }
    return {false, "no fixture " + id};
}

Outcome from_property(const PropertyResult& r) { return {r.pass(), r.summary()}; }

// closed forms of criteria 1 to 3 against 40-digit summation and iteration
Outcome numeric_sweep()
{
    const long last = 20;
    const Real tol("1e-20");
    HyperTerm t = fixtures::summand();
    SummandExpansion e = summand_expand(t, Var::k, 0);
    RecOperator pole_op = fixtures::pole_operator();
    SumExpression pole_rhs = fixtures::pole_rhs(), closed = fixtures::pole_closed_form();
    RecSolution rec = solve_rec(pole_op, pole_rhs, {{1, closed.evaluate(1)}, {2, closed.evaluate(2)}});
    BootstrapResult boot = bootstrap_expansion(fixtures::expansion_operator(), fixtures::expansion_rhs(), fixtures::expansion_ivs(), 3);
    if (!boot.complete) return {false, "bootstrap incomplete: " + boot.failure};

    PrecisionScope prec(120);
    Real worst_term = 0, worst_sum = 0, worst_rec = 0, worst_iter = 0;
    long compared = 0;
    auto point = [](long n, long k, const Rational& ep) {
        std::array<Rational, kVarCount> p{};
        p[static_cast<std::size_t>(Var::k)] = k;
        p[static_cast<std::size_t>(Var::N)] = n;
        p[static_cast<std::size_t>(Var::ep)] = ep;
        return p;
    };
    // summand: t(k, k) / factor against the expanded coefficients
    for (long k = 1; k <= last; ++k) {
        Real factor = e.hyper.evaluate(point(k, k, 0));
        auto c = laurent_coefficients([&](const Rational& ep) { return t.evaluate(point(k, k, ep)) / factor; }, 3, 3);
        for (int j = 0; j < 3; ++j) {
            worst_term = std::max(worst_term, relative_deviation(c[static_cast<std::size_t>(j)], evaluate_real(e.series.coefficient(j - 3), k)));
            ++compared;
        }
    }
    // definite sum: expansion coefficients and the closed form of the recurrence
    std::vector<Real> minus_one;
    for (long n = 1; n <= last; ++n) {
        auto c = definite_sum_laurent(t, n, 1, 3, 3);
        for (int j = 0; j < 3; ++j) {
            worst_sum = std::max(worst_sum, relative_deviation(c[static_cast<std::size_t>(j)], evaluate_real(boot.series.coefficient(j - 3), n)));
            ++compared;
        }
        minus_one.push_back(c[2]);
        worst_rec = std::max(worst_rec, relative_deviation(c[2], evaluate_real(rec.match.solution, n)));
        ++compared;
    }
    // forward iteration of the recurrence from the summed values at N = 1, 2
    auto it = iterate_real(pole_op, [&](long n) { return evaluate_real(pole_rhs, n); }, {minus_one[0], minus_one[1]}, 1, last);
    for (long n = 1; n <= last; ++n) {
        worst_iter = std::max(worst_iter, relative_deviation(it[static_cast<std::size_t>(n - 1)], evaluate_real(rec.match.solution, n)));
        ++compared;
    }
    Real worst = std::max({worst_term, worst_sum, worst_rec, worst_iter});
    std::string detail = std::to_string(compared) + " values, N = 1.." + std::to_string(last) + "; max relative deviation: summand " +
                         format_real(worst_term, 3) + ", expansion " + format_real(worst_sum, 3) + ", recurrence solution " +
                         format_real(worst_rec, 3) + ", iteration " + format_real(worst_iter, 3);
    return {worst < tol, detail};
}

Outcome all_suites()
{
    bool pass = true;
    long cases = 0;
    std::string failed;
    for (const auto& suite : all_property_suites(20240611)) {
        for (const auto& r : suite.results) {
            cases += r.cases;
            std::printf("    %-4s %s %s\n", r.pass() ? "ok" : "FAIL", suite.module.c_str(), r.summary().c_str());
            if (!r.pass()) {
                pass = false;
                failed += (failed.empty() ? "" : ", ") + suite.module + "/" + r.name;
            }
        }
    }
    return {pass, std::to_string(cases) + " cases" + (failed.empty() ? "" : "; failing: " + failed)};
}

}  // namespace

int main(int argc, char** argv)
{
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    const std::vector<Criterion> criteria = {
        {1, "summand pole term", 10, [] { return from_fixture("pole-term"); }},
        {2, "pole recurrence", 30, [] { return from_fixture("pole-recurrence"); }},
        {3, "expansion bootstrap", 60, [] { return from_fixture("expansion"); }},
        {4, "telescoper", 120, [] { return from_fixture("telescoper"); }},
        {5, "translation", 1, [] { return from_fixture("translation"); }},
        {6, "uncoupling of random systems", 600,
         [] {
             Rng rng(7);
             return from_property(uncoupling_fibers(rng, 100, 40));
         }},
        {7, "companion pipeline", 120, [] { return from_fixture("companion"); }},
        {8, "numeric oracle sweep", 300, numeric_sweep},
        {9, "Gamma expansion", 0, [] { return from_property(gamma_numeric(15, 4)); }},
        {10, "property suites", 0, all_suites},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.limit <= 0 || s < c.limit;
        bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::string limit = c.limit > 0 ? ", limit " + std::to_string(static_cast<long>(c.limit)) + " s" : "";
        std::printf("%s criterion %d (%s): %.2f s%s%s\n    %s\n", pass ? "PASS" : "FAIL", c.id, c.title, s, limit.c_str(),
                    in_time ? "" : ", over the limit", o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
