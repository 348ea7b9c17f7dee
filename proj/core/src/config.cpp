#include "subshift/config.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace subshift {

SeqRule parse_seq_rule(const std::string& text) {
    static const std::regex re(R"(^\s*(\d+)\s*\^\s*(?:k|\(\s*k\s*([+-])\s*(\d+)\s*\))\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw std::invalid_argument("unrecognized sequence rule: " + text +
                                    " (expected e.g. \"4^(k+4)\")");
    SeqRule r;
    r.base = Int(m[1].str());
    r.offset = 0;
    if (m[2].matched) {
        r.offset = std::stol(m[3].str());
        if (m[2].str() == "-") r.offset = -r.offset;
    }
    if (r.base < 2) throw std::invalid_argument("sequence rule base must be >= 2");
    return r;
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    if (!j.contains("n")) throw std::invalid_argument("config: missing \"n\"");
    const auto& n = j.at("n");
    if (n.is_array()) {
        for (const auto& v : n) {
            if (v.is_number_integer())
                cfg.params.entries.emplace_back(v.get<long>());
            else
                cfg.params.entries.emplace_back(Int(v.get<std::string>()));
        }
    } else if (n.is_object()) {
        cfg.params.rule = parse_seq_rule(n.at("rule").get<std::string>());
    } else {
        throw std::invalid_argument("config: \"n\" must be a list or a rule object");
    }
    if (j.contains("p")) {
        const auto& p = j.at("p");
        if (p.is_array()) {
            for (const auto& v : p) cfg.p.list.emplace_back(v.get<long>());
        } else if (p.is_object()) {
            static const std::regex re(R"(^\s*n\s*\^\s*(\d+)\s*$)");
            std::smatch m;
            std::string rule = p.at("rule").get<std::string>();
            if (!std::regex_match(rule, m, re))
                throw std::invalid_argument("config: unrecognized p rule: " + rule +
                                            " (expected e.g. \"n^2\")");
            cfg.p.power = std::stol(m[1].str());
        }
    }
    cfg.strict = j.value("strict", false);
    cfg.horizon = j.value("horizon", 10l);
    cfg.cap_materialize = j.value("cap_materialize", cfg.cap_materialize);
    cfg.cap_scan = j.value("cap_scan", cfg.cap_scan);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("suites")) cfg.suites = j.at("suites").get<std::vector<std::string>>();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

std::string config_canonical(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    if (cfg.params.rule) {
        j["n"] = {{"base", cfg.params.rule->base.get_str()},
                  {"offset", cfg.params.rule->offset}};
    } else {
        std::vector<std::string> xs;
        for (const auto& e : cfg.params.entries) xs.push_back(e.get_str());
        j["n"] = xs;
    }
    if (cfg.p.power) j["p_power"] = *cfg.p.power;
    if (!cfg.p.list.empty()) {
        std::vector<std::string> xs;
        for (const auto& e : cfg.p.list) xs.push_back(e.get_str());
        j["p_list"] = xs;
    }
    j["strict"] = cfg.strict;
    j["horizon"] = cfg.horizon;
    j["cap_materialize"] = cfg.cap_materialize;
    j["cap_scan"] = cfg.cap_scan;
    j["seed"] = cfg.seed;
    j["suites"] = cfg.suites;
    return j.dump();
}

std::string config_hash(const RunConfig& cfg) {
    // FNV-1a over the canonical serialization
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : config_canonical(cfg)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace subshift
