#include "jobs.hpp"

#include "epsum/errors.hpp"
#include "epsum/gamma.hpp"
#include "epsum/telescoping.hpp"
#include "epsum/verify.hpp"
#include "epsum/worked_examples.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace epsum::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// file contents without comment lines
std::string input_text(const JobSpec& spec, const std::string& name)
{
    auto it = spec.inputs.find(name);
    if (it == spec.inputs.end()) throw UsageError(spec.command + " needs --" + name);
    std::error_code ec;
    bool is_file = std::filesystem::is_regular_file(it->second, ec);
    std::istringstream in(is_file ? read_file(it->second) : it->second);
    std::string line, out;
    while (std::getline(in, line))
        if (trim(line).rfind('#', 0) != 0) out += line + "\n";
    return trim(out);
}

bool has_input(const JobSpec& spec, const std::string& name) { return spec.inputs.count(name) > 0; }

std::string option(const JobSpec& spec, const std::string& name, const std::string& fallback)
{
    auto it = spec.options.find(name);
    return it == spec.options.end() ? fallback : it->second;
}

long int_option(const JobSpec& spec, const std::string& name, long fallback)
{
    std::string v = option(spec, name, "");
    if (v.empty()) return fallback;
    try {
        std::size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("option --" + name + " expects an integer, got '" + v + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

Var parse_var(const std::string& s)
{
    if (s == "k") return Var::k;
    if (s == "N") return Var::N;
    throw UsageError("variable must be k or N, got '" + s + "'");
}

std::string comb_string(const RhsCombination& c)
{
    if (c.terms.empty()) return "0";
    std::string out;
    for (const auto& [key, f] : c.terms) {
        if (!out.empty()) out += " + ";
        int s = key.second;
        out += "(" + f.to_string() + ")*h" + std::to_string(key.first + 1) + "(N" +
               (s > 0 ? "+" + std::to_string(s) : s < 0 ? std::to_string(s) : "") + ")";
    }
    return out;
}

JobReport expand_sum(const JobSpec& spec)
{
    HyperTerm t = parse_hyper_term(input_text(spec, "term"));
    Var v = parse_var(option(spec, "var", "k"));
    long orders = int_option(spec, "orders", 3);
    if (orders < 1) throw UsageError("--orders must be positive");
    SummandExpansion e = summand_expand(t, v, 0);
    int start = e.series.valuation();
    if (start >= std::min(e.series.trunc(), 0)) start = 0;
    e = summand_expand(t, v, start + static_cast<int>(orders));
    JobReport r;
    std::ostringstream os;
    os << "factor: " << e.hyper.to_string() << "\n";
    for (int o = e.series.start(); o < e.series.trunc(); ++o) os << "ep^" << o << ": " << e.series.coefficient(o).to_string() << "\n";
    r.text = os.str();
    r.json["command"] = "expand-sum";
    r.json["factor"] = e.hyper.to_string();
    r.json["series"] = e.series.to_string();
    r.artifacts["expansion.series"] = e.series.to_string() + "\n";
    return r;
}

JobReport zeilberger_job(const JobSpec& spec)
{
    HyperTerm t = parse_hyper_term(input_text(spec, "term"));
    long dmax = int_option(spec, "dmax", 3);
    Telescoper z = zeilberger(t, static_cast<int>(dmax));
    bool ok = certificate_verify(z.op, t, z.certificate);
    JobReport r;
    r.exit_code = ok ? 0 : 1;
    r.text = "operator: " + z.op.to_string() + "\ncertificate: " + z.certificate.to_string() +
             "\ncertificate check: " + (ok ? "PASS" : "FAIL") + "\n";
    r.json["command"] = "zeilberger";
    r.json["operator"] = z.op.to_string();
    r.json["order"] = z.op.order();
    r.json["certificate"] = z.certificate.to_string();
    r.json["verified"] = ok;
    r.artifacts["operator.rec"] = z.op.to_string() + "\n";
    return r;
}

JobReport solve_rec_job(const JobSpec& spec)
{
    RecOperator op = parse_rec_operator(input_text(spec, has_input(spec, "op") ? "op" : "rec"));
    SumExpression rhs = has_input(spec, "rhs") ? parse_sum_expression(input_text(spec, "rhs")) : SumExpression(Var::N);
    std::vector<InitialValue> ivs;
    if (has_input(spec, "iv"))
        for (const auto& [n, s] : parse_value_lines(input_text(spec, "iv"))) ivs.push_back({n, parse_sum_expression(s)});
    JobReport r;
    r.json["command"] = "solve-rec";
    std::ostringstream os;
    if (ivs.empty()) {
        SolutionSet set = dalembertian_solve(op, rhs);
        os << "homogeneous solutions (" << set.homogeneous_basis.size() << " of order " << op.order() << "):\n";
        for (const auto& b : set.homogeneous_basis) os << "  " << b.to_string() << "\n";
        os << "particular: " << (set.particular ? set.particular->to_string() : "none in the class") << "\n";
        ordered_json basis = json::array();
        for (const auto& b : set.homogeneous_basis) basis.push_back(b.to_string());
        r.json["basis"] = basis;
        r.json["particular"] = set.particular ? json(set.particular->to_string()) : json(nullptr);
        r.json["complete"] = set.complete;
        r.exit_code = set.particular ? 0 : 1;
    } else {
        RecSolution sol = solve_rec(op, rhs, ivs);
        os << "solution: " << sol.match.solution.to_string() << "\n";
        for (std::size_t i = 0; i < sol.match.constants.size(); ++i)
            os << sol.set.free_constants[i] << " = " << sol.match.constants[i].to_string() << "\n";
        for (const auto& f : sol.match.family) os << "free direction: " << f.to_string() << "\n";
        r.json["solution"] = sol.match.solution.to_string();
        ordered_json cs = ordered_json::object();
        for (std::size_t i = 0; i < sol.match.constants.size(); ++i) cs[sol.set.free_constants[i]] = sol.match.constants[i].to_string();
        r.json["constants"] = cs;
        r.artifacts["solution.expr"] = sol.match.solution.to_string() + "\n";
    }
    r.text = os.str();
    return r;
}

std::vector<EpsSeries> series_values(const std::string& text, long& first)
{
    auto lines = parse_value_lines(text);
    std::vector<EpsSeries> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i == 0) first = lines[i].first;
        if (lines[i].first != first + static_cast<long>(i)) throw UsageError("initial values must be at consecutive N");
        out.push_back(parse_series(lines[i].second));
    }
    return out;
}

JobReport eps_expand(const JobSpec& spec)
{
    RecOperator op = parse_rec_operator(input_text(spec, "rec"));
    EpsSeries rhs = parse_series(input_text(spec, "rhs"));
    long first = 1;
    std::vector<EpsSeries> ivs = series_values(input_text(spec, "iv"), first);
    long orders = int_option(spec, "orders", 3);
    BootstrapResult b = bootstrap_expansion(op, rhs, ivs, static_cast<int>(orders), first);
    JobReport r;
    r.exit_code = b.complete ? 0 : 1;
    std::ostringstream os;
    os << b.series.to_string() << "\n";
    if (!b.complete)
        os << "stopped at order " << *b.failed_order << ": " << b.failure << "\nconstraint: " << b.constraint << "\n";
    else
        os << "residual check: " << (bootstrap_certify(op, rhs, b.series) ? "PASS" : "FAIL") << "\n";
    r.text = os.str();
    r.json["command"] = "eps-expand";
    r.json["series"] = b.series.to_string();
    r.json["complete"] = b.complete;
    if (!b.complete) {
        r.json["failed_order"] = *b.failed_order;
        r.json["failure"] = b.failure;
        r.json["constraint"] = b.constraint;
    }
    r.artifacts["expansion.series"] = b.series.to_string() + "\n";
    return r;
}

CoupledSystem system_input(const JobSpec& spec)
{
    json j;
    try {
        j = json::parse(input_text(spec, "sys"));
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("system file: ") + e.what());
    }
    return parse_system(j);
}

JobReport ode_to_rec_job(const JobSpec& spec)
{
    CoupledSystem rec = ode_to_rec(system_input(spec));
    JobReport r;
    for (std::size_t i = 0; i < rec.size(); ++i) r.text += rec.equation_string(i) + "\n";
    r.json = system_to_json(rec);
    r.artifacts["system.json"] = r.json.dump(2) + "\n";
    return r;
}

std::size_t pivot_index(const CoupledSystem& sys, const std::string& name)
{
    for (std::size_t i = 0; i < sys.size(); ++i)
        if (sys.unknowns[i] == name) return i;
    throw UsageError("unknown pivot '" + name + "'");
}

JobReport uncouple_job(const JobSpec& spec)
{
    CoupledSystem sys = system_input(spec);
    if (sys.kind == SystemKind::Differential) sys = ode_to_rec(sys);
    std::string pivot = option(spec, "pivot", "auto");
    UncoupledForm f = pivot == "auto" ? uncouple_auto(sys) : uncouple(sys, pivot_index(sys, pivot));
    const std::string& p = sys.unknowns[f.pivot];
    JobReport r;
    std::ostringstream os;
    os << "pivot: " << p << "\n";
    os << "scalar: " << f.scalar_op.to_string(p) << " = " << comb_string(f.scalar_rhs) << "\n";
    r.json["pivot"] = p;
    r.json["operator"] = f.scalar_op.to_string(p);
    r.json["rhs_combination"] = comb_string(f.scalar_rhs);
    std::vector<EpsSeries> h;
    try {
        h = first_order_rhs(sys, f.first_order);
        EpsSeries rhs = f.scalar_rhs.series(h, static_cast<int>(int_option(spec, "target", kExactOrder)));
        os << "scalar rhs: " << rhs.to_string() << "\n";
        r.json["rhs"] = rhs.to_string();
    } catch (const Error& e) {
        os << "scalar rhs: not expanded (" << e.what() << ")\n";
    }
    ordered_json subs = ordered_json::object();
    for (std::size_t u = 0; u < sys.size(); ++u) {
        if (u == f.pivot) continue;
        std::string s;
        for (std::size_t j = 0; j < f.coeffs[u].size(); ++j) {
            if (f.coeffs[u][j].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + f.coeffs[u][j].to_string() + ")*" + p + "(N" + (j ? "+" + std::to_string(j) : "") + ")";
        }
        s += " + " + comb_string(f.tails[u]);
        os << sys.unknowns[u] << "(N) = " << s << "\n";
        subs[sys.unknowns[u]] = s;
    }
    os << "h_i(N): right hand side of equation i in first-order form, N >= " << f.first_order.base << "\n";
    r.json["back_substitutions"] = subs;
    r.json["base"] = f.first_order.base;
    r.text = os.str();
    return r;
}

JobReport solve_system_job(const JobSpec& spec)
{
    CoupledSystem sys = system_input(spec);
    json ivj;
    try {
        ivj = json::parse(input_text(spec, "iv"));
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("initial value file: ") + e.what());
    }
    auto ivs = parse_pivot_values(ivj);
    CoupledOptions opts;
    std::string pivot = option(spec, "pivot", "auto");
    if (pivot != "auto") opts.pivots = split(pivot, ',');
    opts.target = static_cast<int>(int_option(spec, "target", kExactOrder));
    long orders = int_option(spec, "orders", 3);
    CoupledSolution sol = solve_coupled_system(sys, ivs, static_cast<int>(orders), opts);
    JobReport r;
    std::ostringstream os;
    ordered_json clusters = json::array();
    for (const auto& c : sol.clusters) {
        ordered_json cj;
        std::string names;
        for (const auto& u : c.unknowns) names += (names.empty() ? "" : ",") + u;
        cj["unknowns"] = c.unknowns;
        cj["pivot"] = c.pivot;
        cj["complete"] = c.complete;
        os << "cluster {" << names << "} pivot " << (c.pivot.empty() ? "-" : c.pivot) << ": "
           << (c.complete ? "solved" : "FAILED: " + c.failure) << "\n";
        if (c.form) {
            cj["operator"] = c.form->scalar_op.to_string(c.pivot);
            os << "  scalar: " << c.form->scalar_op.to_string(c.pivot) << "\n";
        }
        if (!c.complete) cj["failure"] = c.failure;
        clusters.push_back(cj);
    }
    r.json["clusters"] = clusters;
    r.json["coefficients_of"] = sol.from_differential ? "x^N in the generating functions" : "the sequences in N";
    ordered_json series = ordered_json::object();
    for (const auto& [name, s] : sol.series) {
        os << name << "(N) = " << s.to_string() << "\n";
        series[name] = s.to_string();
        r.artifacts[name + ".series"] = s.to_string() + "\n";
    }
    r.json["series"] = series;
    ordered_json cert;
    bool all_zero = sol.complete;
    if (sol.complete) {
        auto res = coupled_residuals(sys, sol.series);
        ordered_json eqs = json::array();
        for (std::size_t i = 0; i < res.size(); ++i) {
            bool z = res[i].is_zero();
            all_zero = all_zero && z;
            eqs.push_back({{"equation", i + 1}, {"zero", z}, {"through_order", res[i].trunc() - 1}, {"residual", res[i].to_string()}});
        }
        cert["equations"] = eqs;
    }
    cert["pass"] = all_zero;
    r.json["residual_certificate"] = cert;
    r.artifacts["residuals.json"] = cert.dump(2) + "\n";
    os << "residual certificate: " << (all_zero ? "PASS" : "FAIL") << "\n";
    r.text = os.str();
    r.exit_code = sol.complete && all_zero ? 0 : 1;
    return r;
}

JobReport verify_job(const JobSpec& spec)
{
    long lo = int_option(spec, "from", 1), hi = int_option(spec, "to", 20);
    unsigned digits = static_cast<unsigned>(int_option(spec, "digits", default_digits()));
    std::vector<Rational> eps;
    for (const auto& e : split(option(spec, "eps", ""), ',')) eps.push_back(parse_rational_function(e).constant_value());
    JobReport r;
    std::ostringstream os;
    bool pass = true;
    if (has_input(spec, "rec")) {
        RecOperator op = parse_rec_operator(input_text(spec, "rec"));
        SumExpression sol = parse_sum_expression(input_text(spec, "solution"));
        SumExpression rhs = has_input(spec, "rhs") ? parse_sum_expression(input_text(spec, "rhs")) : SumExpression(Var::N);
        SumExpression lhs = op_apply(op, sol);
        bool symbolic = (lhs - rhs).is_zero();
        VerifyReport v = numeric_verify(lhs, rhs, lo, hi, eps, digits);
        pass = symbolic && v.pass;
        os << "symbolic residual: " << (symbolic ? "0" : (lhs - rhs).to_string()) << "\n" << "numeric: " << v.to_string() << "\n";
        r.json["symbolic"] = symbolic;
        r.json["numeric"] = v.to_string();
    } else {
        std::string a = input_text(spec, "lhs"), b = input_text(spec, "rhs");
        VerifyReport v;
        if (a.find("O[") != std::string::npos || b.find("O[") != std::string::npos)
            v = numeric_verify(parse_series(a), parse_series(b), lo, hi, eps, digits);
        else
            v = numeric_verify(parse_sum_expression(a), parse_sum_expression(b), lo, hi, eps, digits);
        pass = v.pass;
        os << v.to_string() << "\n";
        r.json["numeric"] = v.to_string();
        r.json["max_deviation"] = v.max_deviation;
        r.json["worst_n"] = v.worst_n;
        r.json["skipped"] = v.skipped;
    }
    r.json["pass"] = pass;
    os << (pass ? "PASS" : "FAIL") << "\n";
    r.text = os.str();
    r.exit_code = pass ? 0 : 1;
    return r;
}

JobReport reproduce_job(const JobSpec& spec)
{
    auto results = fixtures::reproduce(split(option(spec, "only", ""), ','));
    bool timings = option(spec, "timings", "false") == "true";
    JobReport r;
    std::ostringstream os;
    ordered_json rows = json::array();
    bool all = !results.empty();
    for (const auto& f : results) {
        all = all && f.pass;
        os << (f.pass ? "PASS " : "FAIL ") << f.id;
        if (timings) os << " (" << format_real(Real(f.seconds), 3) << " s)";
        os << ": " << f.detail << "\n";
        rows.push_back({{"id", f.id}, {"topic", f.topic}, {"pass", f.pass}, {"detail", f.detail}});
    }
    if (results.empty()) os << "no fixture matches\n";
    r.json["fixtures"] = rows;
    r.json["pass"] = all;
    r.text = os.str();
    r.exit_code = all ? 0 : 1;
    return r;
}

}  // namespace

void validate(const JobSpec& spec)
{
    if (spec.command.empty()) throw UsageError("no command given");
    if (std::find(std::begin(kCommands), std::end(kCommands), spec.command) == std::end(kCommands))
        throw UsageError("unknown command '" + spec.command + "'");
    static const std::map<std::string, std::vector<std::string>> required = {
        {"expand-sum", {"term"}}, {"zeilberger", {"term"}}, {"eps-expand", {"rec", "rhs", "iv"}},
        {"ode-to-rec", {"sys"}},  {"uncouple", {"sys"}},    {"solve-system", {"sys", "iv"}},
    };
    if (auto it = required.find(spec.command); it != required.end())
        for (const auto& name : it->second)
            if (!spec.inputs.count(name)) throw UsageError(spec.command + " needs --" + name);
    if (spec.command == "solve-rec" && !spec.inputs.count("op") && !spec.inputs.count("rec")) throw UsageError("solve-rec needs --op");
    if (spec.command == "verify" && !spec.inputs.count("rec") && !(spec.inputs.count("lhs") && spec.inputs.count("rhs")))
        throw UsageError("verify needs --rec and --solution, or --lhs and --rhs");
    if (spec.command == "verify" && spec.inputs.count("rec") && !spec.inputs.count("solution"))
        throw UsageError("verify --rec needs --solution");
}

JobReport run_job(const JobSpec& spec)
{
    JobReport r;
    try {
        validate(spec);
        if (spec.command == "expand-sum") r = expand_sum(spec);
        else if (spec.command == "zeilberger") r = zeilberger_job(spec);
        else if (spec.command == "solve-rec") r = solve_rec_job(spec);
        else if (spec.command == "eps-expand") r = eps_expand(spec);
        else if (spec.command == "ode-to-rec") r = ode_to_rec_job(spec);
        else if (spec.command == "uncouple") r = uncouple_job(spec);
        else if (spec.command == "solve-system") r = solve_system_job(spec);
        else if (spec.command == "verify") r = verify_job(spec);
        else r = reproduce_job(spec);
    } catch (const UsageError& e) {
        r = JobReport{};
        r.exit_code = 2;
        r.text = std::string("usage error: ") + e.what() + "\n";
        r.json["error"] = e.what();
    } catch (const ParseError& e) {
        r = JobReport{};
        r.exit_code = 2;
        r.text = std::string("parse error: ") + e.what() + "\n";
        r.json["error"] = e.what();
        r.json["line"] = e.line();
        r.json["column"] = e.column();
    } catch (const std::exception& e) {
        r = JobReport{};
        r.exit_code = 2;
        r.text = spec.command + ": " + e.what() + "\n";
        r.json["error"] = e.what();
    }
    if (!r.json.contains("command")) r.json["command"] = spec.command;
    r.json["exit_code"] = r.exit_code;
    return r;
}

JobSpec parse_job(const std::string& text)
{
    if (trim(text).empty()) throw UsageError("empty job file");
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("job file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string()) throw UsageError("job file needs a \"command\"");
    JobSpec spec;
    spec.command = j["command"].get<std::string>();
    for (const char* part : {"inputs", "options"}) {
        if (!j.contains(part)) continue;
        if (!j[part].is_object()) throw UsageError(std::string("\"") + part + "\" must be an object");
        auto& target = std::string(part) == "inputs" ? spec.inputs : spec.options;
        for (const auto& [k, v] : j[part].items()) target[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    return spec;
}

CoupledSystem parse_system(const json& j)
{
    if (!j.is_object()) throw UsageError("system must be a JSON object");
    CoupledSystem sys;
    std::string kind = j.value("kind", "difference");
    if (kind == "rec") kind = "difference";
    if (kind == "ode") kind = "differential";
    if (kind != "difference" && kind != "differential") throw UsageError("system kind must be difference (rec) or differential (ode)");
    sys.kind = kind == "difference" ? SystemKind::Difference : SystemKind::Differential;
    const char* unknowns = j.contains("unknowns") ? "unknowns" : "vars";
    if (!j.contains(unknowns)) throw UsageError("system needs \"unknowns\"");
    sys.unknowns = j.at(unknowns).get<std::vector<std::string>>();
    if (j.contains("known"))
        for (const auto& [name, s] : j.at("known").items()) sys.known[name] = parse_series(s.get<std::string>());
    if (sys.kind == SystemKind::Difference) {
        if (!j.contains("equations")) throw UsageError("difference system needs \"equations\"");
        for (const auto& e : j.at("equations"))
            sys.equations.push_back(
                parse_system_equation(e.at("lhs").get<std::string>(), e.value("rhs", std::string("0")), sys.unknowns, e.value("base", 0)));
    } else {
        if (!j.contains("matrix")) throw UsageError("differential system needs \"matrix\"");
        for (const auto& row : j.at("matrix")) {
            std::vector<RationalFunction> r;
            for (const auto& e : row) r.push_back(parse_rational_function(e.get<std::string>()));
            sys.matrix.push_back(std::move(r));
        }
        const char* inputs = j.contains("inputs") ? "inputs" : "rhs";
        if (j.contains(inputs))
            for (const auto& row : j.at(inputs)) {
                std::map<std::string, RationalFunction> m;
                for (const auto& [name, f] : row.items()) m[name] = parse_rational_function(f.get<std::string>());
                sys.inputs.push_back(std::move(m));
            }
    }
    return sys;
}

ordered_json system_to_json(const CoupledSystem& sys)
{
    ordered_json j;
    j["kind"] = sys.kind == SystemKind::Difference ? "difference" : "differential";
    j["unknowns"] = sys.unknowns;
    if (sys.kind == SystemKind::Difference) {
        ordered_json eqs = json::array();
        for (std::size_t i = 0; i < sys.equations.size(); ++i) {
            std::string full = sys.equation_string(i);
            std::string lhs = sys.equation_string(i, false);
            eqs.push_back({{"lhs", lhs}, {"rhs", full.substr(lhs.size() + 3)}, {"base", sys.equations[i].base}});
        }
        j["equations"] = eqs;
    } else {
        ordered_json m = json::array();
        for (const auto& row : sys.matrix) {
            ordered_json r = json::array();
            for (const auto& f : row) r.push_back(f.to_string());
            m.push_back(r);
        }
        j["matrix"] = m;
    }
    if (!sys.known.empty()) {
        ordered_json k = ordered_json::object();
        for (const auto& [name, s] : sys.known) k[name] = s.to_string();
        j["known"] = k;
    }
    return j;
}

std::map<std::string, PivotValues> parse_pivot_values(const json& j)
{
    if (!j.is_object()) throw UsageError("initial values must be a JSON object");
    std::map<std::string, PivotValues> out;
    for (const auto& [name, v] : j.items()) {
        PivotValues p;
        p.first_n = v.value("first", 1L);
        for (const auto& s : v.at("values")) p.values.push_back(parse_series(s.get<std::string>()));
        out[name] = std::move(p);
    }
    return out;
}

std::vector<std::pair<long, std::string>> parse_value_lines(const std::string& text)
{
    std::vector<std::pair<long, std::string>> out;
    std::string lines = text;
    if (lines.find('\n') == std::string::npos) std::replace(lines.begin(), lines.end(), ';', '\n');
    std::istringstream in(lines);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'n = value'", lineno, 1);
        std::string left = trim(t.substr(0, eq));
        if (auto open = left.find('('); open != std::string::npos) {
            auto close = left.find(')', open);
            if (close == std::string::npos) throw ParseError("missing ')'", lineno, static_cast<int>(open) + 1);
            left = trim(left.substr(open + 1, close - open - 1));
        }
        try {
            std::size_t pos = 0;
            long n = std::stol(left, &pos);
            if (pos != left.size()) throw std::invalid_argument(left);
            out.emplace_back(n, trim(t.substr(eq + 1)));
        } catch (const std::logic_error&) {
            throw ParseError("expected an integer N before '='", lineno, 1);
        }
    }
    return out;
}

}  // namespace epsum::cli
