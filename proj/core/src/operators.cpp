#include "epsum/operators.hpp"
#include "epsum/errors.hpp"
#include "epsum/parse.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace epsum {

RecOperator::RecOperator(std::vector<Polynomial> coeffs, int offset, Var var)
    : coeffs_(std::move(coeffs)), offset_(offset), var_(var)
{
}

bool RecOperator::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool RecOperator::uses_eps() const
{
    return std::any_of(coeffs_.begin(), coeffs_.end(), [](const Polynomial& p) { return p.uses(Var::ep); });
}

RecOperator RecOperator::trimmed() const
{
    std::size_t lo = 0, hi = coeffs_.size();
    while (lo < hi && coeffs_[lo].is_zero()) ++lo;
    while (hi > lo && coeffs_[hi - 1].is_zero()) --hi;
    return RecOperator(std::vector<Polynomial>(coeffs_.begin() + static_cast<long>(lo), coeffs_.begin() + static_cast<long>(hi)),
                       offset_ + static_cast<int>(lo), var_);
}

Polynomial RecOperator::content() const
{
    Polynomial g;
    for (const auto& c : coeffs_) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? Polynomial(1) : g;
}

RecOperator RecOperator::primitive() const
{
    Polynomial g = content();
    std::vector<Polynomial> cs;
    for (const auto& c : coeffs_) cs.push_back(c.is_zero() ? c : divide_known(c, g));
    // integer coefficients without common factor, last nonzero coefficient with positive leading term
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& c : cs)
        for (const auto& [e, q] : c.terms()) {
            num_gcd = integer_gcd(num_gcd, q.get_num());
            den_lcm = integer_lcm(den_lcm, q.get_den());
        }
    if (num_gcd == 0) return *this;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        if (it->is_zero()) continue;
        if (it->leading_coefficient() < 0) scale = -scale;
        break;
    }
    for (auto& c : cs) c *= scale;
    return RecOperator(std::move(cs), offset_, var_);
}

RecOperator RecOperator::scaled(const RationalFunction& f) const
{
    std::vector<Polynomial> cs;
    for (const auto& c : coeffs_) {
        RationalFunction r = RationalFunction(c) * f;
        if (!r.is_polynomial()) throw DomainError("scaling leaves a non-polynomial coefficient");
        cs.push_back(r.num() * (1 / r.den().constant_value()));
    }
    return RecOperator(std::move(cs), offset_, var_);
}

RecOperator RecOperator::shifted(int j) const
{
    std::vector<Polynomial> cs;
    for (const auto& c : coeffs_) cs.push_back(c.shift(var_, j));
    return RecOperator(std::move(cs), offset_, var_);
}

RecOperator RecOperator::normalized_offset() const
{
    if (offset_ == 0) return *this;
    RecOperator r = shifted(-offset_);
    r.offset_ = 0;
    return r;
}

RecOperator RecOperator::substitute_eps(const Rational& value) const
{
    std::vector<Polynomial> cs;
    for (const auto& c : coeffs_) cs.push_back(c.evaluate(Var::ep, value));
    return RecOperator(std::move(cs), offset_, var_);
}

namespace {

std::string shift_string(Var v, int s)
{
    std::string out = var_name(v);
    if (s > 0) out += "+" + std::to_string(s);
    if (s < 0) out += "-" + std::to_string(-s);
    return out;
}

// Appends " + c*name(arg)" with sign handling.
void append_term(std::ostringstream& os, bool& first, const RationalFunction& c, const std::string& atom)
{
    bool negative = c.num().leading_coefficient() < 0;
    RationalFunction a = negative ? -c : c;
    std::string cs;
    if (!(a == RationalFunction(1))) {
        cs = a.to_string() + "*";
    }
    if (first)
        os << (negative ? "-" : "");
    else
        os << (negative ? " - " : " + ");
    first = false;
    os << cs << atom;
}

}  // namespace

std::string RecOperator::to_string(const std::string& name) const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        append_term(os, first, RationalFunction(coeffs_[i]), name + "(" + shift_string(var_, offset_ + static_cast<int>(i)) + ")");
    }
    if (first) os << "0";
    return os.str();
}

RecOperator parse_rec_operator(std::string_view text, const std::string& name, Var var)
{
    NodePtr root = parse_ast(text);
    LinearForm f = to_linear_form(*root, var);
    if (!f.constant.is_zero()) fail_at(*root, "operator has an inhomogeneous part");
    if (f.terms.empty()) fail_at(*root, "operator has no terms");
    int lo = 0, hi = 0;
    bool seen = false;
    Polynomial den(1);
    for (const auto& [key, c] : f.terms) {
        if (key.first != name) fail_at(*root, "unexpected function '" + key.first + "', expected " + name);
        lo = seen ? std::min(lo, key.second) : key.second;
        hi = seen ? std::max(hi, key.second) : key.second;
        seen = true;
        if (!c.den().is_constant()) den = divide_known(den * c.den(), gcd(den, c.den()));
    }
    std::vector<Polynomial> cs(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [key, c] : f.terms) {
        RationalFunction r = c * RationalFunction(den);
        cs[static_cast<std::size_t>(key.second - lo)] = r.num() * (1 / r.den().constant_value());
    }
    return RecOperator(std::move(cs), lo, var);
}

SumExpression op_apply(const RecOperator& op, const SumExpression& e, std::optional<Rational> eps_val)
{
    SumExpression out(op.var());
    for (int i = 0; i <= op.order(); ++i) {
        Polynomial c = op.coeff(i);
        if (c.is_zero()) continue;
        if (eps_val) c = c.evaluate(Var::ep, *eps_val);
        out += e.with_var(op.var()).shift(op.offset() + i) * RationalFunction(c);
    }
    return out;
}

EpsSeries op_apply(const RecOperator& op, const EpsSeries& s)
{
    EpsSeries out = s.is_exact() ? EpsSeries(0, {}, kExactOrder, op.var()) : EpsSeries::zero(s.trunc(), op.var());
    for (int i = 0; i <= op.order(); ++i) {
        const Polynomial& c = op.coeff(i);
        if (c.is_zero()) continue;
        out += multiply(s.with_var(op.var()).shift(op.offset() + i), RationalFunction(c));
    }
    return out;
}

RecOperator op_specialize_eps(const RecOperator& op, int k)
{
    std::vector<Polynomial> cs;
    for (const auto& c : op.coeffs()) cs.push_back(k < 0 ? Polynomial() : c.coefficient(Var::ep, k));
    return RecOperator(std::move(cs), op.offset(), op.var());
}

Rational op_apply_values(const RecOperator& op, const std::function<Rational(long)>& f, long n, const Rational& eps)
{
    std::array<Rational, kVarCount> point{};
    point[static_cast<std::size_t>(op.var())] = Rational(n);
    point[static_cast<std::size_t>(Var::ep)] = eps;
    Rational total = 0;
    for (int i = 0; i <= op.order(); ++i) {
        const Polynomial& c = op.coeff(i);
        if (c.is_zero()) continue;
        total += c.evaluate_all(point) * f(n + op.offset() + i);
    }
    return total;
}

struct SequenceOracle::State {
    long base = 0;
    std::function<Rational(long)> step;
    std::vector<Rational> values;
    std::recursive_mutex mutex;
};

SequenceOracle::SequenceOracle(long base, std::function<Rational(long)> step) : state_(std::make_shared<State>())
{
    state_->base = base;
    state_->step = std::move(step);
}

long SequenceOracle::base() const { return state_ ? state_->base : 0; }

Rational SequenceOracle::operator()(long n) const
{
    if (!state_) throw std::logic_error("empty sequence oracle");
    std::lock_guard<std::recursive_mutex> lock(state_->mutex);
    if (n < state_->base) throw DomainError("sequence queried at " + std::to_string(n) + " below its base index " + std::to_string(state_->base));
    while (static_cast<long>(state_->values.size()) <= n - state_->base) {
        long m = state_->base + static_cast<long>(state_->values.size());
        Rational v = state_->step(m);
        state_->values.push_back(v);
    }
    return state_->values[static_cast<std::size_t>(n - state_->base)];
}

std::size_t CoupledSystem::index_of(const std::string& name) const
{
    auto it = std::find(unknowns.begin(), unknowns.end(), name);
    if (it == unknowns.end()) throw DomainError("unknown '" + name + "' is not part of the system");
    return static_cast<std::size_t>(it - unknowns.begin());
}

EpsSeries CoupledSystem::resolved_rhs(std::size_t i) const
{
    const SystemEquation& eq = equations.at(i);
    EpsSeries out = eq.rhs;
    for (const auto& [key, c] : eq.known) {
        auto it = known.find(key.first);
        if (it == known.end()) throw DomainError("no expansion supplied for '" + key.first + "'");
        out += multiply(it->second.shift(key.second), c);
    }
    return out;
}

std::string CoupledSystem::equation_string(std::size_t i, bool with_rhs) const
{
    const SystemEquation& eq = equations.at(i);
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : eq.terms)
        append_term(os, first, c, unknowns.at(key.first) + "(" + shift_string(Var::N, key.second) + ")");
    if (first) os << "0";
    if (!with_rhs) return os.str();
    os << " = ";
    first = true;
    for (const auto& [key, c] : eq.known) append_term(os, first, c, key.first + "(" + shift_string(Var::N, key.second) + ")");
    if (!eq.rhs.is_zero() || first) {
        if (!first) os << " + ";
        os << eq.rhs.to_string();
    }
    return os.str();
}

SystemEquation parse_system_equation(std::string_view lhs, std::string_view rhs, const std::vector<std::string>& unknowns, int base)
{
    SystemEquation eq;
    eq.base = base;
    NodePtr root = parse_ast(lhs);
    LinearForm f = to_linear_form(*root, Var::N);
    for (const auto& [key, c] : f.terms) {
        auto it = std::find(unknowns.begin(), unknowns.end(), key.first);
        if (it == unknowns.end())
            eq.known[key] -= c;
        else
            eq.terms[{static_cast<std::size_t>(it - unknowns.begin()), key.second}] += c;
    }
    SeriesWithKnown r = parse_series_with_known(rhs, Var::N);
    for (const auto& [key, c] : r.known) {
        if (std::find(unknowns.begin(), unknowns.end(), key.first) != unknowns.end())
            fail_at(*parse_ast(rhs), "unknown '" + key.first + "' on the right hand side");
        eq.known[key] += c;
    }
    eq.rhs = r.series;
    if (!f.constant.is_zero()) eq.rhs -= eps_expand(f.constant, kExactOrder);
    for (auto it = eq.known.begin(); it != eq.known.end();) {
        if (it->second.is_zero()) it = eq.known.erase(it);
        else ++it;
    }
    return eq;
}

FirstOrderSystem first_order_form(const CoupledSystem& sys)
{
    if (sys.kind != SystemKind::Difference) throw DomainError("first_order_form needs a difference system");
    std::size_t m = sys.size();
    if (sys.equations.size() != m) throw DomainError("system is not square");
    FirstOrderSystem out;
    out.a.assign(m, std::vector<RationalFunction>(m));
    out.b.assign(m, std::vector<RationalFunction>(m));
    out.reindex.assign(m, 0);
    bool base_set = false;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& eq = sys.equations[i];
        if (eq.terms.empty()) throw DomainError("equation " + std::to_string(i + 1) + " has no unknowns");
        int lo = eq.terms.begin()->first.second, hi = lo;
        for (const auto& [key, c] : eq.terms) {
            lo = std::min(lo, key.second);
            hi = std::max(hi, key.second);
        }
        if (hi - lo > 1)
            throw DomainError("equation " + std::to_string(i + 1) + " spans more than one shift; companionize it first");
        int r = 1 - hi;
        out.reindex[i] = r;
        for (const auto& [key, c] : eq.terms) {
            RationalFunction s = c.shift(Var::N, r);
            if (key.second + r == 1)
                out.a[i][key.first] = s;
            else
                out.b[i][key.first] = s;
        }
        int base = eq.base - r;
        out.base = base_set ? std::max(out.base, base) : base;
        base_set = true;
    }
    return out;
}

namespace {

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b)
{
    return divide_known(a * b, gcd(a, b)).monic();
}

void check_x_rational(const RationalFunction& f)
{
    if (f.uses(Var::N) || f.uses(Var::k)) throw DomainError("system entry " + f.to_string() + " is not rational in x and ep");
}

}  // namespace

CoupledSystem ode_to_rec(const CoupledSystem& sys)
{
    if (sys.kind != SystemKind::Differential) throw DomainError("ode_to_rec needs a differential system");
    std::size_t m = sys.size();
    if (sys.matrix.size() != m) throw DomainError("matrix size does not match the unknowns");
    CoupledSystem out;
    out.kind = SystemKind::Difference;
    out.unknowns = sys.unknowns;
    out.known = sys.known;
    Polynomial nv = var_poly(Var::N);
    for (std::size_t i = 0; i < m; ++i) {
        if (sys.matrix[i].size() != m) throw DomainError("matrix row " + std::to_string(i + 1) + " has the wrong length");
        Polynomial l(1);
        for (const auto& f : sys.matrix[i]) {
            check_x_rational(f);
            l = poly_lcm(l, f.den());
        }
        std::map<std::string, RationalFunction> inputs = i < sys.inputs.size() ? sys.inputs[i] : std::map<std::string, RationalFunction>{};
        for (const auto& [name, f] : inputs) {
            check_x_rational(f);
            l = poly_lcm(l, f.den());
        }
        SystemEquation eq;
        int lowest = 0;
        // L(x) D_x X_i: x^p D_x f -> (N - p + 1) f(N - p + 1)
        auto lc = l.coefficients(Var::x);
        for (std::size_t p = 0; p < lc.size(); ++p) {
            if (lc[p].is_zero()) continue;
            int s = 1 - static_cast<int>(p);
            eq.terms[{i, s}] += RationalFunction(lc[p] * (nv + Polynomial(s)));
            lowest = std::min(lowest, s);
        }
        // - L(x) M_ij X_j: x^p f -> f(N - p)
        for (std::size_t j = 0; j < m; ++j) {
            RationalFunction q = sys.matrix[i][j] * RationalFunction(l);
            if (q.is_zero()) continue;
            Polynomial qp = q.num() * (1 / q.den().constant_value());
            auto qc = qp.coefficients(Var::x);
            for (std::size_t p = 0; p < qc.size(); ++p) {
                if (qc[p].is_zero()) continue;
                eq.terms[{j, -static_cast<int>(p)}] -= RationalFunction(qc[p]);
                lowest = std::min(lowest, -static_cast<int>(p));
            }
        }
        for (const auto& [name, f] : inputs) {
            RationalFunction q = f * RationalFunction(l);
            Polynomial qp = q.num() * (1 / q.den().constant_value());
            auto qc = qp.coefficients(Var::x);
            for (std::size_t p = 0; p < qc.size(); ++p) {
                if (qc[p].is_zero()) continue;
                eq.known[{name, -static_cast<int>(p)}] += RationalFunction(qc[p]);
                lowest = std::min(lowest, -static_cast<int>(p));
            }
        }
        for (auto it = eq.terms.begin(); it != eq.terms.end();) {
            if (it->second.is_zero()) it = eq.terms.erase(it);
            else ++it;
        }
        for (auto it = eq.known.begin(); it != eq.known.end();) {
            if (it->second.is_zero()) it = eq.known.erase(it);
            else ++it;
        }
        eq.base = -lowest;
        out.equations.push_back(std::move(eq));
    }
    return out;
}

std::vector<SequenceOracle> system_oracle(const FirstOrderSystem& sys, const std::vector<Rational>& init, const Rational& eps,
                                          std::function<Rational(std::size_t, long)> rhs)
{
    std::size_t m = sys.a.size();
    if (init.size() != m) throw DomainError("need one initial value per unknown");
    struct Table {
        std::mutex mutex;
        std::vector<std::vector<Rational>> rows;
    };
    auto table = std::make_shared<Table>();
    table->rows.push_back(init);
    long base = sys.base;
    auto a = sys.a, b = sys.b;
    auto compute = [table, a, b, m, base, eps, rhs](long n, std::size_t j) {
        std::lock_guard<std::mutex> lock(table->mutex);
        while (static_cast<long>(table->rows.size()) <= n - base) {
            long cur = base + static_cast<long>(table->rows.size()) - 1;
            std::array<Rational, kVarCount> point{};
            point[static_cast<std::size_t>(Var::N)] = Rational(cur);
            point[static_cast<std::size_t>(Var::ep)] = eps;
            Matrix<Rational> am(m, std::vector<Rational>(m));
            std::vector<Rational> v(m);
            const auto& x = table->rows.back();
            for (std::size_t i = 0; i < m; ++i) {
                v[i] = rhs(i, cur);
                for (std::size_t k = 0; k < m; ++k) {
                    am[i][k] = a[i][k].is_zero() ? Rational(0) : a[i][k].evaluate_all(point);
                    if (!b[i][k].is_zero()) v[i] -= b[i][k].evaluate_all(point) * x[k];
                }
            }
            if (rank(am) < m) throw PoleError("singular pivot matrix at N = " + std::to_string(cur));
            auto sol = solve_linear(am, v, Rational(0));
            table->rows.push_back(*sol);
        }
        return table->rows[static_cast<std::size_t>(n - base)][j];
    };
    std::vector<SequenceOracle> out;
    for (std::size_t j = 0; j < m; ++j) out.emplace_back(base, [compute, j](long n) { return compute(n, j); });
    return out;
}

Matrix<RationalFunction> multiply(const Matrix<RationalFunction>& a, const Matrix<RationalFunction>& b)
{
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Matrix<RationalFunction> c(n, std::vector<RationalFunction>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

Matrix<RationalFunction> shift_matrix(const Matrix<RationalFunction>& a, Var v, int j)
{
    Matrix<RationalFunction> out = a;
    for (auto& row : out)
        for (auto& e : row) e = e.shift(v, j);
    return out;
}

}  // namespace epsum
