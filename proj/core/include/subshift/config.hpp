// config.hpp -- run configuration: parameter ingestion and JSON (de)serialization.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "subshift/params.hpp"

namespace subshift {

constexpr const char* kToolVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 20240817;

struct RunConfig {
    ParamSeq params;
    PSpec p;
    bool strict = false;
    long horizon = 10;
    std::size_t cap_materialize = 100'000'000;
    std::size_t cap_scan = 10'000'000;
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::string> suites;  // empty selects every suite
};

// {"n": [2,2] | {"rule": "4^(k+4)"}, "p": {"rule": "n^2"} | [..], ...}
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
// canonical serialization; equal configs serialize identically
std::string config_canonical(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

// parses "BASE^(k+OFFSET)" (also "BASE^k", "BASE^(k-OFFSET)")
SeqRule parse_seq_rule(const std::string& text);

}  // namespace subshift
