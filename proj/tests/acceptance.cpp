// Acceptance gate: one criterion per numbered check, each printing a single
// pass/fail line. Run all with no arguments or one with --criterion N.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "subshift/analysis.hpp"
#include "subshift/fbar.hpp"
#include "subshift/suites.hpp"

using namespace subshift;
namespace fs = std::filesystem;

namespace {

RunConfig desk_config() {
    RunConfig cfg;
    cfg.params = ParamSeq::from_list({2, 2});
    cfg.p.power = 2;
    return cfg;
}

bool suite_passes(const char* name, std::string& why) {
    auto r = run_suite(name, desk_config());
    if (r.outcome != "pass") {
        why = r.outcome + (r.reason.empty() ? "" : ": " + r.reason);
        return false;
    }
    return true;
}

// 1: exhaustive-oracle equivalence on >= 1000 small random pairs
bool c1(std::string& why) { return suite_passes("oracle", why); }

// 2: bit-parallel LCS == plain DP on 500 pairs up to length 4096
bool c2(std::string& why) { return suite_passes("bitpar", why); }

// 3: deletion-lemma slack >= 0 on 1000 random cases
bool c3(std::string& why) { return suite_passes("gerber", why); }

// 4: gamma sequence at n_k = 4^(k+4)
bool c4(std::string& why) {
    auto p = ParamSeq::from_rule(4, 4);
    auto g = gamma(p, 50);
    if (g.gamma[1] != rat_parse("512/64516")) {
        why = "gamma_1 = " + rat_str(g.gamma[1]);
        return false;
    }
    if (!g.leq_one_eighth) {
        why = "gamma exceeds 1/8 below k = 50";
        return false;
    }
    for (long k = 0; k <= 50; ++k)
        if (g.gamma[static_cast<std::size_t>(k)] != gamma_closed(p, k)) {
            why = "recurrence/closed-form mismatch at k = " + std::to_string(k);
            return false;
        }
    return true;
}

// 5: growth validator passes the witness rule and rejects constant 2
bool c5(std::string& why) {
    if (!validate(ParamSeq::from_rule(4, 4), 10).all_pass()) {
        why = "witness rule 4^(k+4) did not pass on horizon 10";
        return false;
    }
    if (validate(ParamSeq::from_list({2, 2, 2, 2}), 4).all_pass()) {
        why = "constant n_k = 2 was not rejected";
        return false;
    }
    return true;
}

// 6: construction correctness at n=(2,2)
bool c6(std::string& why) {
    WordFactory f(ParamSeq::from_list({2, 2}));
    if (f.length_L(1) != 2049 || f.length_L(2) != 4198401) {
        why = "L_1/L_2 mismatch";
        return false;
    }
    return suite_passes("construction", why);
}

// 7: complexity identities and the structural bound at m = 64
bool c7(std::string& why) {
    if (!suite_passes("complexity", why)) return false;
    if (!suite_passes("rightspecial", why)) return false;
    WordFactory f(ParamSeq::from_list({2, 2}));
    auto e = complexity_brute(f, 64, 2);
    if (!(e.count <= 768)) {
        why = "P(64) = " + e.count.get_str() + " > 768";
        return false;
    }
    return true;
}

// 8: interior/multiplicity formulas bound the exact counts
bool c8(std::string& why) {
    WordFactory f(ParamSeq::from_list({2, 2}));
    auto im = interior_multiplicity(f, 0, 1, Tower::C);
    if (im.interior != 2046 || !im.true_count || *im.true_count != 2047) {
        why = "C-tower m=0,k=1 fixture mismatch";
        return false;
    }
    return suite_passes("interior", why);
}

// 9: pairwise fbar over c_k c_k windows stays below the telescoping bound
bool c9(std::string& why) { return suite_passes("lb", why); }

// 10: separation fixtures and the deletion inequality
bool c10(std::string& why) { return suite_passes("separation", why); }

int run_cli(const std::string& args) {
    std::string cmd = std::string(SUBSHIFT_CLI_PATH) + " " + args;
    return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// 11: verify-all twice with identical config+seed -> byte-identical reports
bool c11(std::string& why) {
    fs::path base = fs::temp_directory_path() / "subshift-acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    fs::path cfg = base / "config.json";
    {
        std::ofstream f(cfg);
        f << R"({"n": [2, 2], "p": {"rule": "n^2"}})" << "\n";
    }
    for (const char* run : {"r1", "r2"}) {
        int rc = run_cli("--config " + cfg.string() + " --out " + (base / run).string() +
                         " --seed 20240817 verify-all > " + (base / run).string() + ".log");
        if (rc != 0) {
            why = std::string("verify-all exited nonzero on ") + run;
            return false;
        }
    }
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(base / "r1")) {
        std::string name = e.path().filename().string();
        if (name == "manifest.json") continue;  // carries wall-clock timings
        if (slurp(e.path()) != slurp(base / "r2" / name)) {
            why = "report differs between runs: " + name;
            return false;
        }
        ++compared;
    }
    if (compared == 0) {
        why = "no reports were produced";
        return false;
    }
    return true;
}

struct Criterion {
    int id;
    const char* title;
    bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "fbar DP equals the exhaustive oracle on small random pairs", c1},
    {2, "bit-parallel LCS equals plain DP up to length 4096", c2},
    {3, "deletion-lemma slack is nonnegative on random cases", c3},
    {4, "gamma sequence: closed form, recurrence and 1/8 bound", c4},
    {5, "growth validator: witness rule passes, constant 2 fails", c5},
    {6, "construction correctness at n=(2,2)", c6},
    {7, "complexity identities and the m(3n+6) bound", c7},
    {8, "interior/multiplicity counts bound exact scans", c8},
    {9, "pairwise fbar of c_k c_k windows under the telescoping bound", c9},
    {10, "separation fixtures and deletion inequality", c10},
    {11, "verify-all determinism: byte-identical reports", c11},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--criterion") only = std::atoi(argv[i + 1]);
    bool all_ok = true;
    for (const auto& c : kCriteria) {
        if (only && c.id != only) continue;
        std::string why;
        bool ok = false;
        try {
            ok = c.fn(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        std::cout << "criterion " << c.id << " [" << (ok ? "PASS" : "FAIL") << "] "
                  << c.title;
        if (!ok && !why.empty()) std::cout << " -- " << why;
        std::cout << std::endl;
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
