#include "jobs.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace {

struct CommandArgs {
    const char* name;
    const char* help;
    std::vector<std::string> inputs;
    std::vector<std::string> options;
};

const std::vector<CommandArgs> kArgs = {
    {"expand-sum", "expand a summand in ep", {"term"}, {"orders", "var"}},
    {"zeilberger", "creative telescoping for a definite sum", {"term"}, {"dmax"}},
    {"solve-rec", "solve a linear recurrence in the S-sum class", {"op", "rec", "rhs", "iv"}, {}},
    {"eps-expand", "ep-expansion of a recurrence solution from initial values", {"rec", "rhs", "iv"}, {"orders"}},
    {"ode-to-rec", "translate a differential system to recurrences", {"sys"}, {}},
    {"uncouple", "scalar recurrence for one unknown of a first-order system", {"sys"}, {"pivot", "target"}},
    {"solve-system", "expand all unknowns of a coupled system", {"sys", "iv"}, {"orders", "pivot", "target"}},
    {"verify", "numeric or symbolic check of an identity", {"lhs", "rhs", "rec", "solution"}, {"from", "to", "eps", "digits"}},
    {"reproduce", "run the built-in fixtures", {}, {"only", "timings"}},
};

const std::map<std::string, std::string> kOptionHelp = {
    {"orders", "number of ep orders"},
    {"var", "summation variable"},
    {"dmax", "largest telescoper order"},
    {"pivot", "pivot unknown or auto"},
    {"target", "truncation order for right hand sides with ep poles"},
    {"from", "first N"},
    {"to", "last N"},
    {"eps", "comma separated ep values"},
    {"digits", "working precision"},
    {"only", "fixture ids or topics"},
    {"timings", "true to print timings"},
};

int emit(const epsum::cli::JobReport& r, bool as_json, const std::string& out_dir)
{
    if (as_json)
        std::cout << r.json.dump(2) << "\n";
    else
        (r.exit_code == 2 ? std::cerr : std::cout) << r.text;
    if (!out_dir.empty() && r.exit_code != 2) {
        std::filesystem::create_directories(out_dir);
        for (const auto& [name, contents] : r.artifacts) std::ofstream(std::filesystem::path(out_dir) / name) << contents;
        std::ofstream(std::filesystem::path(out_dir) / "report.json") << r.json.dump(2) << "\n";
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"epsilon expansions of parametric sums and recurrences"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    std::string out_dir;
    app.add_flag("--json", as_json, "print the JSON report");
    app.add_option("--out", out_dir, "directory for result files");

    std::map<std::string, epsum::cli::JobSpec> specs;
    for (const auto& c : kArgs) {
        auto* sub = app.add_subcommand(c.name, c.help);
        auto& spec = specs[c.name];
        spec.command = c.name;
        for (const auto& in : c.inputs)
            sub->add_option_function<std::string>("--" + in, [&spec, in](const std::string& v) { spec.inputs[in] = v; }, in + " file or inline text");
        for (const auto& opt : c.options)
            sub->add_option_function<std::string>("--" + opt, [&spec, opt](const std::string& v) { spec.options[opt] = v; },
                                                  kOptionHelp.at(opt));
    }
    std::string job_file;
    auto* run = app.add_subcommand("run", "execute a JSON job file");
    run->add_option("job", job_file, "job file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed()) {
        epsum::cli::JobSpec spec;
        try {
            spec = epsum::cli::parse_job(epsum::cli::read_file(job_file));
        } catch (const epsum::cli::UsageError& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
        }
        return emit(epsum::cli::run_job(spec), as_json, out_dir);
    }
    for (auto* sub : app.get_subcommands()) return emit(epsum::cli::run_job(specs[sub->get_name()]), as_json, out_dir);
    return 2;
}
