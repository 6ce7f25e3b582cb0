#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exactkit/json_io.hpp"

namespace exactkit {

/// Everything that determines a report. Worker count is deliberately absent.
struct RunConfig {
    std::string command;
    unsigned p = 2;
    unsigned N = 2;
    unsigned D = 3;
    unsigned trials = 200;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    std::vector<unsigned> generators;
    std::string variant = "cov";
    bool inject_fault = false;

    /// Throws InputError on p not prime (or > 251), N = 0, D < N, bad generators or variant.
    void validate() const;
    CategoryConfig category() const { return {p, N}; }
};

Json to_json(const RunConfig& rc);

inline constexpr const char* kSchemaExtTable = "exactkit.ext-table.v1";
inline constexpr const char* kSchemaVerifyCore = "exactkit.verify-core.v1";
inline constexpr const char* kSchemaEnumerate = "exactkit.enumerate.v1";
inline constexpr const char* kSchemaSubcategory = "exactkit.subcategory.v1";

struct Report {
    Json json;
    std::string tsv;  ///< "# key value" preamble lines, a header row, then data rows
    int exit_code = 0;

    std::string render(const std::string& format) const;
};

Report ext_table_report(const RunConfig& rc);
Report verify_core_report(const RunConfig& rc);
/// Throws BudgetError when the candidate count exceeds the guard.
Report enumerate_report(const RunConfig& rc, bool parallel = true);
Report subcategory_report(const RunConfig& rc, bool parallel = true);

/// Dispatch on rc.command.
Report run_command(const RunConfig& rc, bool parallel = true);

}  // namespace exactkit
