#pragma once

#include "epsum/coupled.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace epsum::cli {

inline constexpr const char* kCommands[] = {"expand-sum", "zeilberger", "solve-rec", "eps-expand", "ode-to-rec",
                                            "uncouple",   "solve-system", "verify",  "reproduce"};

struct JobSpec {
    std::string command;
    /// Input name -> file path.
    std::map<std::string, std::string> inputs;
    std::map<std::string, std::string> options;
};

struct JobReport {
    /// 0 = success or all checks passed, 1 = a check failed, 2 = usage or input error.
    int exit_code = 0;
    std::string text;
    nlohmann::ordered_json json;
    /// Output file name -> contents.
    std::map<std::string, std::string> artifacts;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws UsageError for unknown commands and missing inputs.
void validate(const JobSpec& spec);
/// Never throws; errors become reports with exit code 2.
JobReport run_job(const JobSpec& spec);

/// {"command": ..., "inputs": {...}, "options": {...}}
JobSpec parse_job(const std::string& text);

std::string read_file(const std::string& path);

/// Difference or differential system from its JSON description.
CoupledSystem parse_system(const nlohmann::json& j);
nlohmann::ordered_json system_to_json(const CoupledSystem& sys);
/// {"I1": {"first": 1, "values": ["series", ...]}}
std::map<std::string, PivotValues> parse_pivot_values(const nlohmann::json& j);
/// Lines "n = value" or "F(n) = value".
std::vector<std::pair<long, std::string>> parse_value_lines(const std::string& text);

}  // namespace epsum::cli
