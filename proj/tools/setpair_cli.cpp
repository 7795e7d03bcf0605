// setpair: command-line front end for set-pair and subspace-pair systems.
//
// Exit codes: 0 success or inequality holds, 1 mathematical finding
// (violation, witness, sum above 1, non-strong system), 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "setpair/setpair.hpp"

namespace {

using namespace setpair;

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kInputError = 2;
constexpr std::uint64_t kDefaultSeed = 20240229;

struct Globals {
    bool json = false;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = std::max(1U, std::thread::hardware_concurrency());
    double time_budget = 0;
    std::string checkpoint;
};

void emit(const Globals& g, const Json& report, const std::string& text) {
    if (g.json) {
        std::cout << dump(report);
    } else {
        std::cout << text;
    }
}

std::string decimal(const Rational& r) {
    std::ostringstream out;
    out.precision(10);
    out << to_double(r);
    return out.str();
}

std::size_t max_ground() {
    const char* env = std::getenv("SETPAIR_MAX_GROUND");
    if (env == nullptr || *env == '\0') return 64;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw ConfigError("SETPAIR_MAX_GROUND must be a positive integer");
    if (v > 1024) throw ConfigError("SETPAIR_MAX_GROUND is limited to 1024");
    return v;
}

// Calls f.template operator()<W>() with the narrowest word count covering the cap.
template <class F>
int with_width(F&& f) {
    const std::size_t cap = max_ground();
    if (cap <= 64) return f.template operator()<1>(cap);
    if (cap <= 256) return f.template operator()<4>(cap);
    return f.template operator()<16>(cap);
}

void check_cap(long long n, std::size_t cap) {
    if (n > static_cast<long long>(cap)) {
        throw CapacityError("ground size " + std::to_string(n) + " exceeds the cap " + std::to_string(cap) +
                            " (raise SETPAIR_MAX_GROUND)");
    }
}

template <std::size_t W>
BasicSetPairSystem<W> read_sets(const Json& j, std::size_t cap) {
    if (j.is_object() && j.contains("ground_size") && j["ground_size"].is_number_integer()) {
        check_cap(j["ground_size"].get<long long>(), cap);
    }
    return set_system_from_json<W>(j);
}

enum class FileKind { sets, subspaces, family };

FileKind detect(const Json& j) {
    if (j.is_object() && j.contains("family")) return FileKind::family;
    if (j.is_object() && j.contains("ambient_dim")) return FileKind::subspaces;
    if (j.is_object() && j.contains("ground_size")) return FileKind::sets;
    throw ParseError("unrecognised file: expected a set system, subspace system or family");
}

std::string verdict_word(const ClassificationReport& r) {
    if (r.strong) return "strong";
    if (r.skew) return "skew";
    return "neither";
}

// ---- classify --------------------------------------------------------------

int cmd_classify(const Globals& g, const std::string& path, int t) {
    const Json doc = read_json_file(path);
    ClassificationReport report;
    std::string what;
    if (detect(doc) == FileKind::subspaces) {
        report = classify_subspace(subspace_system_from_json(doc), t);
        what = "subspaces";
    } else {
        with_width([&]<std::size_t W>(std::size_t cap) {
            report = classify(read_sets<W>(doc, cap), t);
            return 0;
        });
        what = "sets";
    }
    std::ostringstream text;
    text << verdict_word(report) << " " << t << "-system (" << what << ")\n";
    if (!report.self_ok) text << "self-intersection exceeds t\n";
    for (const auto& w : report.witnesses) {
        if (w.i == w.j) {
            text << "  pair " << w.i << ": self-intersection " << w.observed << " > " << t << "\n";
        } else {
            text << "  pairs (" << w.i << "," << w.j << "): cross-intersection " << w.observed << " <= " << t
                 << "\n";
        }
    }
    Json j = to_json(report);
    j["verdict"] = verdict_word(report);
    emit(g, j, text.str());
    return report.strong ? kOk : kFinding;
}

// ---- sum -------------------------------------------------------------------

template <std::size_t W>
std::vector<BasicSubset<W>> read_family(const Json& doc, int& n, std::size_t cap) {
    const auto& size = doc.at("ground_size");
    if (!size.is_number_integer() || size.get<long long>() < 1) throw ParseError("ground_size must be positive");
    check_cap(size.get<long long>(), cap);
    n = size.get<int>();
    if (!doc.at("family").is_array()) throw ParseError("family must be an array");
    std::vector<BasicSubset<W>> family;
    for (const auto& member : doc.at("family")) {
        family.push_back(detail::subset_from_json<W>(member, n, "family member"));
    }
    return family;
}

int cmd_sum(const Globals& g, const std::string& path, int t, const std::string& which) {
    const Json doc = read_json_file(path);
    const FileKind kind = detect(doc);
    Rational value;
    Json extra = Json::object();
    if (which == "lym") {
        if (kind != FileKind::family) throw ParseError("lym expects a file with ground_size and family");
        with_width([&]<std::size_t W>(std::size_t cap) {
            int n = 0;
            const auto family = read_family<W>(doc, n, cap);
            value = lym_sum(family, n);
            extra["antichain"] = is_antichain(family);
            return 0;
        });
    } else if (kind == FileKind::subspaces) {
        if (which != "furedi") throw ParseError(which + " sum is defined for set systems only");
        value = subspace_furedi_sum(subspace_system_from_json(doc), t);
    } else if (kind == FileKind::sets) {
        with_width([&]<std::size_t W>(std::size_t cap) {
            const auto sys = read_sets<W>(doc, cap);
            value = which == "zhu" ? zhu_sum(sys, t) : furedi_sum(sys, t);
            return 0;
        });
    } else {
        throw ParseError(which + " sum expects a set or subspace system file");
    }
    const bool above = value > 1;
    std::ostringstream text;
    text << which << " sum";
    if (which != "lym") text << " (t=" << t << ")";
    text << ": " << to_fraction_string(value) << " ~ " << decimal(value) << (above ? " > 1" : " <= 1") << "\n";
    if (extra.contains("antichain") && !extra["antichain"].get<bool>()) text << "family is not an antichain\n";
    Json j = {{"which", which}, {"sum", to_json(value)}, {"decimal", to_double(value)}, {"exceeds_one", above}};
    if (which != "lym") j["t"] = t;
    j.update(extra);
    emit(g, j, text.str());
    return above ? kFinding : kOk;
}

// ---- generate / embed ------------------------------------------------------

void write_or_print(const std::optional<std::string>& out, const std::string& text) {
    if (out) {
        write_text_file(*out, text);
    } else {
        std::cout << text;
    }
}

int cmd_generate(const Globals& g, int a, int b, int t, const std::optional<std::string>& out) {
    return with_width([&]<std::size_t W>(std::size_t cap) {
        check_cap(static_cast<long long>(a) + b + t, cap);
        const auto sys = generate_sharp_system<W>(a, b, t);
        write_or_print(out, dump(to_json(sys)));
        if (out) {
            std::ostringstream text;
            text << "wrote " << sys.m() << " pairs over [" << sys.ground_size() << "] to " << *out << "\n";
            emit(g, {{"pairs", sys.m()}, {"ground_size", sys.ground_size()}, {"path", *out}}, text.str());
        }
        return kOk;
    });
}

int cmd_embed(const Globals& g, const std::string& in, const std::optional<std::string>& out) {
    const Json doc = read_json_file(in);
    return with_width([&]<std::size_t W>(std::size_t cap) {
        const auto sys = embed_sets_as_coordinate_subspaces(read_sets<W>(doc, cap));
        write_or_print(out, dump(to_json(sys)));
        if (out) {
            std::ostringstream text;
            text << "embedded " << sys.m() << " pairs into Q^" << sys.ambient_dim() << ", wrote " << *out << "\n";
            emit(g, {{"pairs", sys.m()}, {"ambient_dim", sys.ambient_dim()}, {"path", *out}}, text.str());
        }
        return kOk;
    });
}

// ---- reduce ----------------------------------------------------------------

int cmd_reduce(const Globals& g, const std::string& in, int t, const std::optional<std::string>& out) {
    const Json doc = read_json_file(in);
    SubspacePairSystem input(1, {});
    if (detect(doc) == FileKind::subspaces) {
        input = subspace_system_from_json(doc);
    } else if (detect(doc) == FileKind::sets) {
        with_width([&]<std::size_t W>(std::size_t cap) {
            input = embed_sets_as_coordinate_subspaces(read_sets<W>(doc, cap));
            return 0;
        });
    } else {
        throw ParseError("reduce expects a set or subspace system file");
    }
    const Rational before = subspace_furedi_sum(input, t);
    const ReductionResult result = reduce_with_details(input, t, g.seed);
    const Rational after = subspace_furedi_sum(result.system, 0);
    if (out) write_text_file(*out, dump(to_json(result.system)));

    std::ostringstream text;
    text << "seed " << g.seed << ", t=" << t << ", ambient " << input.ambient_dim();
    if (result.padding > 0) text << " padded by " << result.padding;
    text << ", W0 of dimension " << result.w0.dim() << " after " << result.attempts << " attempt(s)\n";
    Json pairs = Json::array();
    for (std::size_t i = 0; i < input.m(); ++i) {
        const auto& p = input.pairs()[i];
        const auto& q = result.system.pairs()[i];
        text << "  pair " << i + 1 << ": dim U " << p.u() << " -> " << q.u() << ", dim V " << p.v()
             << " -> " << q.v() << "\n";
        pairs.push_back({{"u", {p.u(), q.u()}}, {"v", {p.v(), q.v()}}});
    }
    text << "furedi sum " << to_fraction_string(before) << " -> " << to_fraction_string(after) << "\n";
    if (out) text << "wrote " << *out << "\n";
    emit(g,
         {{"seed", g.seed},
          {"t", t},
          {"padding", result.padding},
          {"attempts", result.attempts},
          {"dims", std::move(pairs)},
          {"sum_before", to_json(before)},
          {"sum_after", to_json(after)}},
         text.str());
    return kOk;
}

// ---- search / verify-corpus ------------------------------------------------

struct SearchFlags {
    int n = 3;
    int t = 0;
    std::string mode = "strong";
    std::string ordering = "none";
    std::optional<int> uniform_n;
    std::vector<int> uniform_rs;
    int max_pairs = 0;
    int min_pairs = 1;
    bool no_pruning = false;
    bool quiet = false;
    std::optional<std::string> record_path;
    std::optional<std::string> findings_path;
};

void add_search_flags(CLI::App* cmd, SearchFlags& f, bool findings) {
    cmd->add_option("--n", f.n, "ground set size (1..6)")->capture_default_str();
    cmd->add_option("--t", f.t, "intersection threshold")->capture_default_str();
    cmd->add_option("--mode", f.mode)->check(CLI::IsMember({"strong", "skew"}))->capture_default_str();
    cmd->add_option("--ordering", f.ordering)->check(CLI::IsMember({"none", "monotone"}))->capture_default_str();
    cmd->add_option("--uniform-n", f.uniform_n, "require |A_i| + |B_i| = N");
    cmd->add_option("--uniform-rs", f.uniform_rs, "require |A_i| = r and |B_i| = s")->expected(2);
    cmd->add_option("--max-pairs", f.max_pairs, "0 for unlimited")->capture_default_str();
    cmd->add_option("--min-pairs", f.min_pairs)->capture_default_str();
    cmd->add_flag("--no-pruning", f.no_pruning, "unpruned reference enumeration");
    cmd->add_flag("--quiet", f.quiet, "no progress lines on stderr");
    cmd->add_option("--record", f.record_path, "write the JSON report here");
    if (findings) cmd->add_option("--findings", f.findings_path, "write the best system here when it exceeds 1");
}

SearchConfig make_config(const Globals& g, const SearchFlags& f) {
    SearchConfig c;
    c.ground_size = f.n;
    c.t = f.t;
    c.mode = f.mode == "skew" ? Mode::skew : Mode::strong;
    c.ordering = f.ordering == "monotone" ? Ordering::monotone : Ordering::none;
    c.uniform_n = f.uniform_n;
    if (!f.uniform_rs.empty()) c.uniform_rs = std::pair{f.uniform_rs[0], f.uniform_rs[1]};
    c.max_pairs = f.max_pairs;
    c.min_pairs = f.min_pairs;
    c.seed = g.seed;
    c.time_budget = g.time_budget;
    c.pruning = !f.no_pruning;
    validate(c);
    return c;
}

RunOptions make_options(const Globals& g, const SearchFlags& f) {
    RunOptions o;
    o.workers = g.workers;
    o.checkpoint_path = g.checkpoint;
    if (!f.quiet) {
        auto last = std::make_shared<std::chrono::steady_clock::time_point>();
        o.progress = [last](std::size_t done, std::size_t total) {
            const auto now = std::chrono::steady_clock::now();
            if (done < total && now - *last < std::chrono::seconds(1)) return;
            *last = now;
            std::fprintf(stderr, "progress: %zu/%zu tasks\n", done, total);
        };
    }
    return o;
}

std::string describe(const SearchRecord& r) {
    std::ostringstream text;
    text << "systems enumerated: " << r.systems_enumerated << "\n"
         << "extensions pruned:  " << r.nodes_pruned << "\n"
         << "spot checks:        " << r.spot_checked << "\n"
         << "tasks:              " << r.tasks_completed << "/" << r.tasks_total
         << (r.exhausted ? " (exhausted)" : " (incomplete: budget cut)") << "\n";
    return text.str();
}

int cmd_search(const Globals& g, const SearchFlags& f) {
    const SearchConfig config = make_config(g, f);
    const SearchRecord record = max_furedi_sum(config, make_options(g, f));
    const bool finding = record.best_sum > 1;

    Json j = to_json(record);
    j["config"] = to_json(config);
    j["finding"] = finding;
    if (f.record_path) write_text_file(*f.record_path, dump(j));
    if (finding && f.findings_path) {
        Json found = to_json(record.best_system);
        found["sum"] = to_json(record.best_sum);
        found["config"] = to_json(config);
        found["seed"] = config.seed;
        write_text_file(*f.findings_path, dump(found));
    }

    std::ostringstream text;
    text << "seed " << config.seed << ", " << f.mode << " " << config.t << "-systems over [" << config.ground_size
         << "], ordering " << f.ordering << "\n"
         << "best furedi sum: " << to_fraction_string(record.best_sum) << " ~ " << decimal(record.best_sum)
         << (finding ? " > 1" : "") << "\n";
    if (record.systems_enumerated > 0) {
        text << "best system:";
        for (const auto& p : record.best_system.pairs()) {
            text << " (" << to_json(p.a_set).dump() << ", " << to_json(p.b_set).dump() << ")";
        }
        text << "\n";
    }
    text << describe(record);
    if (finding && f.findings_path) text << "finding written to " << *f.findings_path << "\n";
    emit(g, j, text.str());
    return finding ? kFinding : kOk;
}

int cmd_verify_corpus(const Globals& g, const SearchFlags& f) {
    const SearchConfig config = make_config(g, f);
    const CorpusReport report = verify_corpus(config, make_options(g, f));

    Json j = to_json(report);
    j["config"] = to_json(config);
    if (f.record_path) write_text_file(*f.record_path, dump(j));

    std::ostringstream text;
    text << "seed " << config.seed << ", " << f.mode << " " << config.t << "-systems over [" << config.ground_size
         << "]\n"
         << "systems checked: " << report.checked << "\n";
    for (const auto& [statement, count] : report.checks) text << "  " << statement << ": " << count << " checked\n";
    for (const auto& v : report.violations) {
        text << "VIOLATION " << v.statement << (v.proven ? "" : " (unproven)") << ": " << to_fraction_string(v.lhs)
             << " > " << to_fraction_string(v.rhs) << "\n";
    }
    text << describe(report.record);
    emit(g, j, text.str());
    return report.violations.empty() ? kOk : kFinding;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bollobas-type set-pair and subspace-pair systems"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_option("--seed", g.seed, "seed for randomized steps")->capture_default_str();
    app.add_option("--workers", g.workers, "search threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--time-budget", g.time_budget, "seconds; 0 for none")->check(CLI::NonNegativeNumber);
    app.add_option("--checkpoint", g.checkpoint, "search checkpoint file (resumed if present)");
    app.fallthrough();

    std::string path;
    int t = 0;
    std::string which = "furedi";
    std::optional<std::string> out;
    int a = 0, b = 0;
    SearchFlags sf;

    auto* classify_cmd = app.add_subcommand("classify", "report the strongest t-system class of a file");
    classify_cmd->add_option("file", path)->required();
    classify_cmd->add_option("--t", t)->capture_default_str();

    auto* sum_cmd = app.add_subcommand("sum", "exact furedi, zhu or lym sum of a file");
    sum_cmd->add_option("file", path)->required();
    sum_cmd->add_option("--t", t)->capture_default_str();
    sum_cmd->add_option("--which", which)->check(CLI::IsMember({"furedi", "zhu", "lym"}))->capture_default_str();

    auto* generate_cmd = app.add_subcommand("generate", "write the sharp construction for (a, b, t)");
    generate_cmd->add_option("a", a)->required();
    generate_cmd->add_option("b", b)->required();
    generate_cmd->add_option("t", t)->required();
    generate_cmd->add_option("--out", out);

    auto* embed_cmd = app.add_subcommand("embed", "coordinate-subspace image of a set system");
    embed_cmd->add_option("file", path)->required();
    embed_cmd->add_option("--out", out);

    auto* reduce_cmd = app.add_subcommand("reduce", "reduce a skew t-system to a 0-system");
    reduce_cmd->add_option("file", path)->required();
    reduce_cmd->add_option("--t", t)->required();
    reduce_cmd->add_option("--out", out);

    auto* search_cmd = app.add_subcommand("search", "exhaustive maximum of the furedi sum");
    add_search_flags(search_cmd, sf, true);
    auto* corpus_cmd = app.add_subcommand("verify-corpus", "check every proven inequality on a search space");
    add_search_flags(corpus_cmd, sf, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInputError;
    }

    try {
        if (*classify_cmd) return cmd_classify(g, path, t);
        if (*sum_cmd) return cmd_sum(g, path, t, which);
        if (*generate_cmd) return cmd_generate(g, a, b, t, out);
        if (*embed_cmd) return cmd_embed(g, path, out);
        if (*reduce_cmd) return cmd_reduce(g, path, t, out);
        if (*search_cmd) return cmd_search(g, sf);
        if (*corpus_cmd) return cmd_verify_corpus(g, sf);
    } catch (const setpair::Error& e) {
        std::cerr << "setpair: " << e.what() << "\n";
        return kInputError;
    } catch (const Json::exception& e) {
        std::cerr << "setpair: invalid input: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
