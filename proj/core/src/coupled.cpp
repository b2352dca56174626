#include "epsum/coupled.hpp"
#include "epsum/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace epsum {

ClusterPlan cluster_order(const std::vector<std::vector<std::size_t>>& deps)
{
    std::size_t n = deps.size();
    for (const auto& d : deps)
        for (auto j : d)
            if (j >= n) throw DomainError("dependency on unknown index " + std::to_string(j) + " out of range");

    // Tarjan
    std::vector<long> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    long counter = 0, ncomp = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : deps[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = ncomp;
            } while (w != v);
            ++ncomp;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);

    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(ncomp));
    std::vector<std::set<std::size_t>> edges(static_cast<std::size_t>(ncomp));
    for (std::size_t v = 0; v < n; ++v) {
        members[static_cast<std::size_t>(comp[v])].push_back(v);
        for (auto w : deps[v])
            if (comp[w] != comp[v]) edges[static_cast<std::size_t>(comp[v])].insert(static_cast<std::size_t>(comp[w]));
    }
    // Kahn, smallest member first among ready blocks
    std::vector<std::size_t> missing(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) missing[c] = edges[c].size();
    std::vector<long> position(members.size(), -1);
    ClusterPlan plan;
    std::vector<bool> done(members.size(), false);
    for (std::size_t step = 0; step < members.size(); ++step) {
        std::size_t best = members.size();
        for (std::size_t c = 0; c < members.size(); ++c)
            if (!done[c] && missing[c] == 0 && (best == members.size() || members[c].front() < members[best].front())) best = c;
        if (best == members.size()) throw DomainError("cycle between clusters");
        done[best] = true;
        position[best] = static_cast<long>(plan.clusters.size());
        plan.clusters.push_back(members[best]);
        std::vector<std::size_t> before;
        for (auto e : edges[best]) before.push_back(static_cast<std::size_t>(position[e]));
        std::sort(before.begin(), before.end());
        plan.depends_on.push_back(before);
        for (std::size_t c = 0; c < members.size(); ++c)
            if (!done[c] && edges[c].count(best)) --missing[c];
    }
    return plan;
}

namespace {

std::vector<std::vector<std::size_t>> dependency_lists(const CoupledSystem& sys)
{
    std::size_t n = sys.size();
    std::vector<std::vector<std::size_t>> deps(n);
    if (sys.kind == SystemKind::Differential) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!sys.matrix[i][j].is_zero()) deps[i].push_back(j);
    } else {
        if (sys.equations.size() != n) throw DomainError("system is not square");
        for (std::size_t i = 0; i < n; ++i) {
            std::set<std::size_t> s;
            for (const auto& [key, c] : sys.equations[i].terms)
                if (!c.is_zero()) s.insert(key.first);
            deps[i].assign(s.begin(), s.end());
        }
    }
    return deps;
}

}  // namespace

ClusterPlan cluster_order(const CoupledSystem& sys)
{
    return cluster_order(dependency_lists(sys));
}

bool is_topological(const ClusterPlan& plan, const std::vector<std::vector<std::size_t>>& deps)
{
    std::vector<long> where(deps.size(), -1);
    for (std::size_t c = 0; c < plan.clusters.size(); ++c)
        for (auto v : plan.clusters[c]) {
            if (v >= deps.size() || where[v] >= 0) return false;
            where[v] = static_cast<long>(c);
        }
    for (std::size_t v = 0; v < deps.size(); ++v) {
        if (where[v] < 0) return false;
        for (auto w : deps[v])
            if (where[w] > where[v]) return false;
    }
    return true;
}

RhsCombination RhsCombination::shifted(int j) const
{
    RhsCombination out;
    for (const auto& [key, c] : terms) out.terms[{key.first, key.second + j}] = c.shift(Var::N, j);
    return out;
}

RhsCombination& RhsCombination::operator+=(const RhsCombination& o)
{
    for (const auto& [key, c] : o.terms) {
        RationalFunction& t = terms[key];
        t += c;
        if (t.is_zero()) terms.erase(key);
    }
    return *this;
}

RhsCombination RhsCombination::scaled(const RationalFunction& f) const
{
    RhsCombination out;
    if (f.is_zero()) return out;
    for (const auto& [key, c] : terms) out.terms[key] = c * f;
    return out;
}

Rational RhsCombination::evaluate(long n, const Rational& eps, const std::function<Rational(std::size_t, long)>& h) const
{
    std::array<Rational, kVarCount> point{};
    point[static_cast<std::size_t>(Var::N)] = Rational(n);
    point[static_cast<std::size_t>(Var::ep)] = eps;
    Rational total = 0;
    for (const auto& [key, c] : terms) {
        Rational d = c.den().evaluate_all(point);
        if (d == 0) throw PoleError("coefficient " + c.to_string() + " has a pole at N = " + std::to_string(n));
        total += c.num().evaluate_all(point) / d * h(key.first, n + key.second);
    }
    return total;
}

EpsSeries RhsCombination::series(const std::vector<EpsSeries>& h, int target) const
{
    int trunc = target;
    for (const auto& s : h) trunc = std::min(trunc, s.trunc());
    EpsSeries out = trunc >= kExactOrder ? EpsSeries(0, {}, kExactOrder) : EpsSeries::zero(trunc);
    for (const auto& [key, c] : terms) out += multiply(h.at(key.first).shift(key.second), c, target);
    return out;
}

namespace {

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b)
{
    return divide_known(a * b, gcd(a, b)).monic();
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

Polynomial cleared(const RationalFunction& f, const Polynomial& l)
{
    if (f.is_zero()) return Polynomial();
    return divide_known(f.num() * l, f.den());
}

// fraction-free elimination (Bareiss)
Polynomial determinant(PolyMatrix a)
{
    std::size_t n = a.size();
    if (n == 0) return Polynomial(1);
    if (n == 1) return a[0][0];
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    Polynomial prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return Polynomial();
            std::swap(a[k], a[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = divide_known(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

PolyMatrix adjugate(const PolyMatrix& a)
{
    std::size_t n = a.size();
    PolyMatrix out(n, std::vector<Polynomial>(n));
    if (n == 1) {
        out[0][0] = Polynomial(1);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            PolyMatrix minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<Polynomial> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(a[r][c]);
                minor.push_back(std::move(row));
            }
            Polynomial d = determinant(std::move(minor));
            out[i][j] = (i + j) % 2 == 0 ? d : -d;
        }
    return out;
}

std::vector<Polynomial> poly_row_times(const std::vector<Polynomial>& r, const PolyMatrix& m)
{
    std::vector<Polynomial> out(m.empty() ? 0 : m[0].size());
    for (std::size_t l = 0; l < r.size(); ++l) {
        if (r[l].is_zero()) continue;
        for (std::size_t j = 0; j < out.size(); ++j)
            if (!m[l][j].is_zero()) out[j] += r[l] * m[l][j];
    }
    return out;
}

// rank test at sample points first; exact elimination only when they all look deficient
bool full_rank(const std::vector<std::vector<Polynomial>>& rows)
{
    static const Rational samples[][2] = {{Rational(113, 7), Rational(29, 17)}, {Rational(-59, 11), Rational(41, 13)}};
    for (const auto& s : samples) {
        std::array<Rational, kVarCount> point{};
        point[static_cast<std::size_t>(Var::N)] = s[0];
        point[static_cast<std::size_t>(Var::ep)] = s[1];
        Matrix<Rational> m;
        for (const auto& r : rows) {
            std::vector<Rational> v;
            for (const auto& c : r) v.push_back(c.evaluate_all(point));
            m.push_back(std::move(v));
        }
        if (rank(m) == rows.size()) return true;
    }
    Matrix<RationalFunction> m;
    for (const auto& r : rows) {
        std::vector<RationalFunction> v;
        for (const auto& c : r) v.push_back(RationalFunction(c));
        m.push_back(std::move(v));
    }
    return rank(m) == rows.size();
}

int total_degree(const RecOperator& op)
{
    int d = 0;
    for (const auto& c : op.coeffs())
        if (!c.is_zero()) d += c.degree(Var::N) + c.degree(Var::ep);
    return d;
}

}  // namespace

std::vector<EpsSeries> first_order_rhs(const CoupledSystem& sys, const FirstOrderSystem& fo)
{
    std::vector<EpsSeries> h;
    for (std::size_t i = 0; i < sys.size(); ++i) h.push_back(sys.resolved_rhs(i).shift(fo.reindex[i]));
    return h;
}

UncoupledForm uncouple(const CoupledSystem& sys_in, std::size_t pivot)
{
    const CoupledSystem sys = sys_in.kind == SystemKind::Differential ? ode_to_rec(sys_in) : sys_in;
    std::size_t n = sys.size();
    if (pivot >= n) throw DomainError("pivot index out of range");
    UncoupledForm out;
    out.pivot = pivot;
    out.first_order = first_order_form(sys);
    const auto& fo = out.first_order;

    // rows of A and B with cleared denominators: ap = diag(l) A, bp = diag(l) B
    PolyMatrix ap(n, std::vector<Polynomial>(n)), bp = ap;
    std::vector<Polynomial> l(n, Polynomial(1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) l[i] = poly_lcm(poly_lcm(l[i], fo.a[i][j].den()), fo.b[i][j].den());
        for (std::size_t j = 0; j < n; ++j) {
            ap[i][j] = cleared(fo.a[i][j], l[i]);
            bp[i][j] = cleared(fo.b[i][j], l[i]);
        }
    }
    Polynomial delta = determinant(ap);
    if (delta.is_zero()) throw DomainError("the matrix of the highest shifts is singular");
    PolyMatrix adj = adjugate(ap);
    // A^-1 = adj diag(l) / delta,  M = -A^-1 B = -adj bp / delta
    PolyMatrix ainv(n, std::vector<Polynomial>(n)), m(n, std::vector<Polynomial>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ainv[i][j] = adj[i][j] * l[j];
            for (std::size_t k = 0; k < n; ++k) m[i][j] -= adj[i][k] * bp[k][j];
        }

    // X_p(N + j) = rows[j] / dens[j] . X(N) + tails[j]
    std::vector<std::vector<Polynomial>> rows;
    std::vector<Polynomial> dens;
    std::vector<RhsCombination> tails;
    std::vector<Polynomial> e(n);
    e[pivot] = Polynomial(1);
    rows.push_back(e);
    dens.push_back(Polynomial(1));
    tails.emplace_back();
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Polynomial> shifted;
        for (const auto& c : rows.back()) shifted.push_back(c.shift(Var::N, Rational(1)));
        Polynomial dshift = dens.back().shift(Var::N, Rational(1));
        RhsCombination t = tails.back().shifted(1);
        auto g = poly_row_times(shifted, ainv);
        for (std::size_t i = 0; i < n; ++i)
            if (!g[i].is_zero()) t.terms[{i, 0}] += RationalFunction(g[i], dshift * delta);
        rows.push_back(poly_row_times(shifted, m));
        dens.push_back(dshift * delta);
        tails.push_back(std::move(t));
        if (j + 1 < n && !full_rank(rows))
            throw DegeneratePivotError("shifts of " + sys.unknowns[pivot] + " span only " + std::to_string(j + 1) + " of " +
                                       std::to_string(n) + " unknowns");
    }

    // sum_j v_j rows[j] = 0 by Cramer's rule, so sum_j v_j dens[j] X_p(N + j) = sum_j v_j dens[j] tails[j]
    std::vector<Polynomial> raw_coeffs;
    for (std::size_t j = 0; j <= n; ++j) {
        PolyMatrix minor;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Polynomial> r;
            for (std::size_t k = 0; k <= n; ++k)
                if (k != j) r.push_back(rows[k][i]);
            minor.push_back(std::move(r));
        }
        Polynomial v = determinant(minor);
        raw_coeffs.push_back(j % 2 == 0 ? v * dens[j] : -(v * dens[j]));
    }
    if (raw_coeffs.back().is_zero()) throw std::logic_error("cyclic vector relation not found");
    RecOperator raw(raw_coeffs, 0, Var::N);
    out.scalar_op = raw.primitive();
    for (std::size_t j = 0; j <= n; ++j)
        if (!out.scalar_op.coeff(static_cast<int>(j)).is_zero())
            out.scalar_rhs += tails[j].scaled(RationalFunction(out.scalar_op.coeff(static_cast<int>(j))));

    // X = R^-1 (P - T) with R = diag(dens)^-1 rows, R^-1 = adj(rows) diag(dens) / det(rows)
    PolyMatrix pm(rows.begin(), rows.begin() + static_cast<long>(n));
    Polynomial pdet = determinant(pm);
    PolyMatrix padj = adjugate(pm);
    out.coeffs.assign(n, std::vector<RationalFunction>(n));
    for (std::size_t u = 0; u < n; ++u) {
        RhsCombination t;
        for (std::size_t j = 0; j < n; ++j) {
            if (padj[u][j].is_zero()) continue;
            out.coeffs[u][j] = RationalFunction(padj[u][j] * dens[j], pdet);
            t += tails[j].scaled(-out.coeffs[u][j]);
        }
        out.tails.push_back(std::move(t));
    }
    return out;
}

UncoupledForm uncouple_auto(const CoupledSystem& sys, const std::vector<std::size_t>& candidates)
{
    std::vector<std::size_t> order = candidates;
    if (order.empty())
        for (std::size_t i = 0; i < sys.size(); ++i) order.push_back(i);
    std::optional<UncoupledForm> best;
    std::string last_error;
    for (auto p : order) {
        try {
            UncoupledForm f = uncouple(sys, p);
            if (!best || f.scalar_op.order() < best->scalar_op.order() ||
                (f.scalar_op.order() == best->scalar_op.order() && total_degree(f.scalar_op) < total_degree(best->scalar_op)))
                best = std::move(f);
        } catch (const DegeneratePivotError& e) {
            last_error = e.what();
        }
    }
    if (!best) throw DegeneratePivotError("no pivot uncouples the system: " + last_error);
    return *best;
}

namespace {

CoupledSystem subsystem(const CoupledSystem& sys, const std::vector<std::size_t>& cluster,
                        const std::map<std::string, EpsSeries>& solved)
{
    CoupledSystem sub;
    sub.kind = SystemKind::Difference;
    sub.known = sys.known;
    for (const auto& [name, s] : solved) sub.known[name] = s;
    std::map<std::size_t, std::size_t> local;
    for (auto u : cluster) {
        local[u] = sub.unknowns.size();
        sub.unknowns.push_back(sys.unknowns[u]);
    }
    for (auto u : cluster) {
        const SystemEquation& eq = sys.equations[u];
        SystemEquation e;
        e.rhs = eq.rhs;
        e.known = eq.known;
        e.base = eq.base;
        for (const auto& [key, c] : eq.terms) {
            auto it = local.find(key.first);
            if (it != local.end()) {
                e.terms[{it->second, key.second}] += c;
            } else {
                auto& k = e.known[{sys.unknowns[key.first], key.second}];
                k -= c;
            }
        }
        sub.equations.push_back(std::move(e));
    }
    return sub;
}

}  // namespace

CoupledSolution solve_coupled_system(const CoupledSystem& sys_in, const std::map<std::string, PivotValues>& ivs, int orders,
                                     const CoupledOptions& opts)
{
    CoupledSolution out;
    out.from_differential = sys_in.kind == SystemKind::Differential;
    const CoupledSystem sys = out.from_differential ? ode_to_rec(sys_in) : sys_in;
    ClusterPlan plan = cluster_order(sys);
    for (const auto& cluster : plan.clusters) {
        ClusterResult cr;
        for (auto u : cluster) cr.unknowns.push_back(sys.unknowns[u]);
        try {
            CoupledSystem sub = subsystem(sys, cluster, out.series);
            std::vector<std::size_t> candidates;
            for (std::size_t i = 0; i < sub.size(); ++i)
                if (std::find(opts.pivots.begin(), opts.pivots.end(), sub.unknowns[i]) != opts.pivots.end())
                    candidates.push_back(i);
            if (candidates.empty())
                for (std::size_t i = 0; i < sub.size(); ++i)
                    if (ivs.count(sub.unknowns[i])) candidates.push_back(i);
            if (candidates.empty()) throw DomainError("no initial values for any unknown of the cluster");
            UncoupledForm form = uncouple_auto(sub, candidates);
            cr.pivot = sub.unknowns[form.pivot];
            auto iv = ivs.find(cr.pivot);
            if (iv == ivs.end()) throw DomainError("no initial values for pivot " + cr.pivot);
            std::vector<EpsSeries> h = first_order_rhs(sub, form.first_order);
            EpsSeries rhs = form.scalar_rhs.series(h, opts.target);
            BootstrapResult boot = bootstrap_expansion(form.scalar_op, rhs, iv->second.values, orders, iv->second.first_n);
            cr.form = form;
            cr.expansion = boot;
            if (!boot.complete) throw DomainError("pivot " + cr.pivot + " at order " + std::to_string(*boot.failed_order) + ": " +
                                                  boot.failure);
            const EpsSeries& p = boot.series;
            for (std::size_t u = 0; u < sub.size(); ++u) {
                if (u == form.pivot) {
                    out.series[sub.unknowns[u]] = p;
                    continue;
                }
                EpsSeries s = form.tails[u].series(h, std::min(opts.target, p.trunc()));
                for (std::size_t j = 0; j < form.coeffs[u].size(); ++j)
                    if (!form.coeffs[u][j].is_zero())
                        s += multiply(p.shift(static_cast<int>(j)), form.coeffs[u][j], std::min(opts.target, p.trunc()));
                out.series[sub.unknowns[u]] = s;
            }
            cr.complete = true;
            out.clusters.push_back(std::move(cr));
        } catch (const Error& e) {
            cr.failure = e.what();
            out.clusters.push_back(std::move(cr));
            return out;
        }
    }
    out.complete = true;
    return out;
}

std::vector<EpsSeries> coupled_residuals(const CoupledSystem& sys_in, const std::map<std::string, EpsSeries>& series)
{
    const CoupledSystem sys = sys_in.kind == SystemKind::Differential ? ode_to_rec(sys_in) : sys_in;
    std::vector<EpsSeries> out;
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        EpsSeries r = -sys.resolved_rhs(i);
        for (const auto& [key, c] : sys.equations[i].terms) {
            auto it = series.find(sys.unknowns[key.first]);
            if (it == series.end()) throw DomainError("no expansion for " + sys.unknowns[key.first]);
            r += multiply(it->second.shift(key.second), c, it->second.trunc());
        }
        out.push_back(r);
    }
    return out;
}

CoupledSystem companion_system(const RecOperator& op_in, const EpsSeries& rhs, const std::string& name)
{
    RecOperator op = op_in.trimmed().normalized_offset();
    int d = op.order();
    if (d < 1) throw DomainError("companion system needs order >= 1");
    CoupledSystem sys;
    sys.kind = SystemKind::Difference;
    for (int k = 0; k < d; ++k) sys.unknowns.push_back(name + std::to_string(k));
    for (int k = 0; k + 1 < d; ++k) {
        SystemEquation e;
        e.terms[{static_cast<std::size_t>(k), 1}] = RationalFunction(1);
        e.terms[{static_cast<std::size_t>(k + 1), 0}] = RationalFunction(-1);
        sys.equations.push_back(std::move(e));
    }
    SystemEquation last;
    last.terms[{static_cast<std::size_t>(d - 1), 1}] = RationalFunction(op.coeff(d));
    for (int i = 0; i < d; ++i)
        if (!op.coeff(i).is_zero()) last.terms[{static_cast<std::size_t>(i), 0}] = RationalFunction(op.coeff(i));
    last.rhs = rhs;
    sys.equations.push_back(std::move(last));
    return sys;
}

}  // namespace epsum
