// subshift -- build recursive words, compute the fbar metric, run block
// statistics, and execute the verification suites.
//
// Exit codes: 0 success, 1 suite/assertion failure, 2 usage or config
// error, 3 runtime error (I/O, caps, invalid ranges).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "subshift/analysis.hpp"
#include "subshift/config.hpp"
#include "subshift/fbar.hpp"
#include "subshift/suites.hpp"

using namespace subshift;
using nlohmann::ordered_json;

namespace {

struct Global {
    std::string config_path;
    std::string out_dir;
    RunConfig cfg;  // resolved after parsing

    std::uint64_t seed = kDefaultSeed;
    std::size_t cap_materialize = 0;
    std::size_t cap_scan = 0;
    int jobs = 1;

    void resolve() {
        if (!config_path.empty()) {
            cfg = load_config(config_path);
        } else {
            cfg.params = ParamSeq::from_list({2, 2});
            cfg.p.power = 2;
        }
        if (seed != kDefaultSeed) cfg.seed = seed;
        if (cap_materialize) cfg.cap_materialize = cap_materialize;
        if (cap_scan) cfg.cap_scan = cap_scan;
    }
};

ordered_json rj(const Rat& q) {
    return ordered_json{{"exact", rat_str(q)}, {"approx", rat_double(q)}};
}

Seq read_word_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open word file: " + path);
    Seq w;
    long v;
    while (f >> v) {
        if (v < 0 || v > 0xFFFF) throw std::runtime_error("symbol id out of range in " + path);
        w.push_back(static_cast<Sym>(v));
    }
    return w;
}

void write_word(std::ostream& os, const Seq& w) {
    for (Sym s : w) os << s << "\n";
}

void emit(const ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << j.dump(2) << "\n";
    }
}

int cmd_params_validate(Global& g, long horizon, bool strict) {
    g.resolve();
    WordFactory factory(g.cfg.params);
    std::function<Int(long)> L = [&](long k) { return factory.length_L(k); };
    auto rep = validate(g.cfg.params, horizon, strict, &g.cfg.p, &L);
    ordered_json out;
    out["horizon"] = horizon;
    out["strict"] = strict;
    ordered_json conds = ordered_json::array();
    for (const auto& c : rep.conditions) {
        ordered_json jc{{"id", c.id},
                        {"description", c.description},
                        {"status", to_string(c.status)},
                        {"finite_horizon", c.finite_horizon},
                        {"bounded_eval", c.bounded_eval}};
        if (c.value) jc["value"] = rj(*c.value);
        if (c.threshold) jc["threshold"] = rj(*c.threshold);
        if (c.slack) jc["slack"] = rj(*c.slack);
        if (!c.note.empty()) jc["note"] = c.note;
        conds.push_back(std::move(jc));
    }
    out["conditions"] = std::move(conds);
    out["all_pass"] = rep.all_pass();
    emit(out, g.out_dir.empty() ? "" : g.out_dir + "/params_validate.json");
    return rep.all_pass() ? 0 : 1;
}

GrammarWord::Ptr build_word(WordFactory& f, const std::string& kind, long level, long index) {
    if (kind == "a") return f.feldman(level, index);
    if (kind == "b") return f.extended(level, index);
    if (kind == "c") return f.cword(level);
    throw CLI::ValidationError("--kind must be a, b or c");
}

int cmd_words(Global& g, const std::string& kind, long level, long index, bool stats,
              const std::string& at_pos, const std::string& start, long len,
              const std::string& word_out) {
    g.resolve();
    WordFactory f(g.cfg.params);
    auto w = build_word(f, kind, level, index);
    ordered_json out{{"kind", kind}, {"level", level}};
    if (kind != "c") out["index"] = index;
    out["length"] = w->length().get_str();
    if (stats) {
        out["nodes"] = w->node_count();
        out["depth"] = w->depth();
    }
    if (!at_pos.empty()) {
        Sym s = w->symbol_at(Int(at_pos));
        out["at"] = ordered_json{{"pos", at_pos},
                                 {"symbol", s},
                                 {"name", symbol_name(g.cfg.params, s)}};
    }
    if (len >= 0) {
        Seq piece = w->extract(Int(start.empty() ? "0" : start),
                               static_cast<std::size_t>(len), g.cfg.cap_materialize);
        if (word_out.empty()) {
            std::ostringstream os;
            write_word(os, piece);
            out["extract"] = os.str();
        } else {
            std::ofstream fo(word_out, std::ios::binary);
            if (!fo) throw std::runtime_error("cannot write " + word_out);
            write_word(fo, piece);
            out["extract_file"] = word_out;
        }
    }
    emit(out, "");
    return 0;
}

int cmd_fbar(Global& g, const std::string& xf, const std::string& yf, bool bitpar,
             bool align) {
    g.resolve();
    Seq x = read_word_file(xf), y = read_word_file(yf);
    auto m = fbar(x, y, bitpar, align);
    ordered_json out{{"pi", m.pi.get_str()},
                     {"fbar_c", rat_str(m.fbar_c)},
                     {"fbar", rat_str(m.fbar)},
                     {"fbar_approx", rat_double(m.fbar)}};
    if (m.alignment) {
        ordered_json al = ordered_json::array();
        for (auto [i, j] : *m.alignment) al.push_back(ordered_json::array({i, j}));
        out["alignment"] = std::move(al);
    }
    emit(out, "");
    return 0;
}

int cmd_fbar_lbtest(Global& g, const std::string& dir, const std::string& eps_str) {
    g.resolve();
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<Seq> words;
    for (const auto& p : paths) words.push_back(read_word_file(p));
    if (words.empty()) throw std::runtime_error("no word files in " + dir);
    auto res = lb_test(words, rat_parse(eps_str));
    ordered_json out{{"words", words.size()},
                     {"pairs", res.pairs},
                     {"eps", eps_str},
                     {"max_fbar", rat_str(res.max_fbar)},
                     {"max_fbar_approx", rat_double(res.max_fbar)},
                     {"witness", ordered_json::array({paths[res.witness.first],
                                                      paths[res.witness.second]})},
                     {"pass", res.pass}};
    emit(out, "");
    return res.pass ? 0 : 1;
}

int cmd_analysis_complexity(Global& g, const std::string& n_list, long level,
                            const std::string& format) {
    g.resolve();
    WordFactory f(g.cfg.params);
    std::vector<std::size_t> ns;
    std::stringstream ss(n_list);
    for (std::string tok; std::getline(ss, tok, ',');) ns.push_back(std::stoul(tok));
    ordered_json rows = ordered_json::array();
    std::string csv = "n,count,prefix_len,stable\n";
    for (std::size_t n : ns) {
        auto e = complexity_brute(f, n, level, g.cfg.cap_scan);
        rows.push_back(ordered_json{{"n", e.n},
                                    {"count", e.count.get_str()},
                                    {"prefix_len", e.prefix_len.get_str()},
                                    {"stable", e.stable}});
        csv += std::to_string(e.n) + "," + e.count.get_str() + "," +
               e.prefix_len.get_str() + "," + (e.stable ? "1" : "0") + "\n";
    }
    if (format == "csv") {
        std::cout << csv;
    } else {
        emit(ordered_json{{"level", level}, {"rows", rows}}, "");
    }
    return 0;
}

int cmd_analysis_freq(Global& g, const std::string& tower_s, const std::string& target,
                      long m, long scan) {
    g.resolve();
    WordFactory f(g.cfg.params);
    Tower tower = tower_s == "c" ? Tower::C : Tower::B;
    std::vector<Seq> targets;
    std::string name;
    if (target == "bf") {
        long nm = f.params().n(m).get_si();
        for (long i = 1; i <= nm; ++i)
            targets.push_back(f.extended(m, i)->materialize(g.cfg.cap_scan));
        name = "[[B_" + std::to_string(m) + "^F]]";
    } else if (target == "c") {
        targets.push_back(f.cword(m)->materialize(g.cfg.cap_scan));
        name = "[[c_" + std::to_string(m) + "]]";
    } else if (target.rfind("word:", 0) == 0) {
        targets.push_back(read_word_file(target.substr(5)));
        name = "[[" + target.substr(5) + "]]";
    } else {
        throw CLI::ValidationError("--target must be bf, c or word:FILE");
    }
    auto rep = frequency(f, tower, std::move(targets), name, scan, g.cfg.cap_scan);
    emit(ordered_json{{"tower", tower == Tower::B ? "b" : "c"},
                      {"target", rep.target},
                      {"N", rep.N.get_str()},
                      {"window", rep.window},
                      {"count", rep.count.get_str()},
                      {"freq", rj(rep.freq)},
                      {"tail_discarded", rep.tail_discarded.get_str()}},
         "");
    return 0;
}

int cmd_verify(Global& g, const std::vector<std::string>& suites) {
    g.resolve();
    if (!suites.empty()) g.cfg.suites = suites;
    auto out = run_suites(g.cfg, g.out_dir);
    for (const auto& sr : out.results) {
        std::cout << sr.name << ": " << sr.outcome;
        if (!sr.reason.empty()) std::cout << " (" << sr.reason << ")";
        std::cout << "\n";
    }
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"recursive-word subshift toolkit"};
    app.require_subcommand(1);

    Global g;
    app.add_option("--config", g.config_path, "JSON run configuration")
        ->envname("SUBSHIFT_CONFIG");
    app.add_option("--out", g.out_dir, "output directory for reports")
        ->envname("SUBSHIFT_OUT");
    app.add_option("--seed", g.seed, "seed for randomized suites")
        ->envname("SUBSHIFT_SEED");
    app.add_option("--cap-materialize", g.cap_materialize, "materialization cap (symbols)")
        ->envname("SUBSHIFT_CAP_MATERIALIZE");
    app.add_option("--cap-scan", g.cap_scan, "scan cap (symbols)")
        ->envname("SUBSHIFT_CAP_SCAN");
    app.add_option("--jobs", g.jobs, "parallel suite workers (reports stay deterministic)")
        ->envname("SUBSHIFT_JOBS");

    int rc = 0;

    auto* params = app.add_subcommand("params", "parameter sequence tools");
    {
        auto* v = params->add_subcommand("validate", "check the growth conditions");
        auto horizon = std::make_shared<long>(10);
        auto strict = std::make_shared<bool>(false);
        v->add_option("--horizon", *horizon, "number of explicit levels to check");
        v->add_flag("--strict", *strict, "treat inconclusive bounds as failures");
        v->callback([&, horizon, strict] { rc = cmd_params_validate(g, *horizon, *strict); });
    }

    auto* words = app.add_subcommand("words", "recursive word construction");
    {
        auto kind = std::make_shared<std::string>("b");
        auto level = std::make_shared<long>(1);
        auto index = std::make_shared<long>(1);
        auto stats = std::make_shared<bool>(false);
        auto b = words->add_subcommand("build", "build a word and report its size");
        b->add_option("--kind", *kind, "a | b | c");
        b->add_option("--level", *level, "recursion level k");
        b->add_option("--index", *index, "word index i (a/b only)");
        b->add_flag("--stats", *stats, "include DAG node count and depth");
        b->callback([&, kind, level, index, stats] {
            rc = cmd_words(g, *kind, *level, *index, *stats, "", "", -1, "");
        });

        auto pos = std::make_shared<std::string>();
        auto a = words->add_subcommand("at", "random access into a word");
        a->add_option("--kind", *kind, "a | b | c");
        a->add_option("--level", *level, "recursion level k");
        a->add_option("--index", *index, "word index i (a/b only)");
        a->add_option("--pos", *pos, "0-based position (decimal, arbitrary size)")->required();
        a->callback([&, kind, level, index, pos] {
            rc = cmd_words(g, *kind, *level, *index, false, *pos, "", -1, "");
        });

        auto start = std::make_shared<std::string>("0");
        auto len = std::make_shared<long>(0);
        auto wout = std::make_shared<std::string>();
        auto e = words->add_subcommand("extract", "materialize a range of a word");
        e->add_option("--kind", *kind, "a | b | c");
        e->add_option("--level", *level, "recursion level k");
        e->add_option("--index", *index, "word index i (a/b only)");
        e->add_option("--start", *start, "0-based start position");
        e->add_option("--len", *len, "number of symbols")->required();
        e->add_option("--out-file", *wout, "write symbols here (newline-separated ids)");
        e->callback([&, kind, level, index, start, len, wout] {
            rc = cmd_words(g, *kind, *level, *index, false, "", *start, *len, *wout);
        });
    }

    auto* fb = app.add_subcommand("fbar", "exact fbar metric");
    {
        auto xf = std::make_shared<std::string>();
        auto yf = std::make_shared<std::string>();
        auto bitpar = std::make_shared<bool>(false);
        auto align = std::make_shared<bool>(false);
        fb->add_option("--x", *xf, "word file (newline-separated decimal symbol ids)");
        fb->add_option("--y", *yf, "word file");
        fb->add_flag("--bitpar", *bitpar, "use the bit-parallel path");
        fb->add_flag("--align", *align, "recover an optimal match");
        fb->callback([&, xf, yf, bitpar, align] {
            if (fb->get_subcommands().empty()) {
                if (xf->empty() || yf->empty())
                    throw CLI::ValidationError("fbar requires --x and --y");
                rc = cmd_fbar(g, *xf, *yf, *bitpar, *align);
            }
        });

        auto dir = std::make_shared<std::string>();
        auto eps = std::make_shared<std::string>();
        auto lb = fb->add_subcommand("lbtest", "pairwise fbar threshold test");
        lb->add_option("--words", *dir, "directory of word files")->required();
        lb->add_option("--eps", *eps, "threshold as p/q")->required();
        lb->callback([&, dir, eps] { rc = cmd_fbar_lbtest(g, *dir, *eps); });
    }

    auto* an = app.add_subcommand("analysis", "block statistics and verification");
    {
        auto nlist = std::make_shared<std::string>("1,2,4,8");
        auto level = std::make_shared<long>(2);
        auto format = std::make_shared<std::string>("json");
        auto c = an->add_subcommand("complexity", "distinct window counts");
        c->add_option("--n-list", *nlist, "comma-separated window lengths");
        c->add_option("--level", *level, "scan the L_K prefix");
        c->add_option("--format", *format, "json | csv");
        c->callback([&, nlist, level, format] {
            rc = cmd_analysis_complexity(g, *nlist, *level, *format);
        });

        auto tower = std::make_shared<std::string>("b");
        auto target = std::make_shared<std::string>("bf");
        auto m = std::make_shared<long>(1);
        auto scan = std::make_shared<long>(2);
        auto fr = an->add_subcommand("freq", "empirical window frequencies");
        fr->add_option("--tower", *tower, "b | c");
        fr->add_option("--target", *target, "bf | c | word:FILE");
        fr->add_option("--m", *m, "target level");
        fr->add_option("--scan", *scan, "scan the L_K prefix");
        fr->callback([&, tower, target, m, scan] {
            rc = cmd_analysis_freq(g, *tower, *target, *m, *scan);
        });

        auto suites = std::make_shared<std::vector<std::string>>();
        auto ve = an->add_subcommand("verify", "run selected verification suites");
        ve->add_option("--suite", *suites, "suite names (repeatable)")->required();
        ve->callback([&, suites] { rc = cmd_verify(g, *suites); });
    }

    auto* va = app.add_subcommand("verify-all", "run every verification suite");
    va->callback([&] { rc = cmd_verify(g, {}); });

    // accept the global flags in any position
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
        for (auto* sub : a->get_subcommands(nullptr)) {
            sub->fallthrough();
            allow_fallthrough(sub);
        }
    };
    allow_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int cli_rc = app.exit(e);
        return cli_rc == 0 ? 0 : 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
