// suites.hpp -- named verification suites and the report-writing runner.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "subshift/config.hpp"

namespace subshift {

struct SuiteResult {
    std::string name;
    std::string outcome;  // "pass" | "fail" | "skipped"
    std::string reason;   // populated for fail/skipped
    nlohmann::ordered_json details;
    double seconds = 0;  // runner wall clock; kept out of the report files
};

const std::vector<std::string>& all_suite_names();

SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

struct RunOutcome {
    std::vector<SuiteResult> results;
    int exit_code;  // 0 all good, 1 some suite failed
};

// Runs the selected suites (all when cfg.suites is empty) and, if out_dir is
// nonempty, writes verify_<suite>.json reports, CSV tables and manifest.json.
// Report files are byte-deterministic for a fixed config+seed; timing lives
// only in the manifest.
RunOutcome run_suites(const RunConfig& cfg, const std::string& out_dir);

}  // namespace subshift
