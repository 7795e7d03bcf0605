#pragma once

// Exhaustive search over set-pair systems on small ground sets.
//
// Candidate pairs (A, B) with |A n B| <= t, |A|, |B| >= t and the configured
// size filters are listed once and sorted by (|A|, A, |B|, B). Strong systems
// are increasing index sets that form cliques of the pairwise compatibility
// graph; skew systems are repetition-free sequences in which every earlier A
// meets every later B in more than t elements. The search tree is split at
// its first level into independent tasks, one per leading candidate; tasks run
// on a worker pool and their results are merged in task order, so the outcome
// does not depend on scheduling. Completed tasks can be checkpointed to a JSON
// file and skipped when a run is resumed.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "setpair/errors.hpp"
#include "setpair/exact_math.hpp"
#include "setpair/io.hpp"
#include "setpair/set_pair.hpp"

namespace setpair {

enum class Mode { strong, skew };
enum class Ordering { none, monotone };

inline constexpr int kMaxSearchGround = 6;

struct SearchConfig {
    int ground_size = 1;
    int t = 0;
    Mode mode = Mode::strong;
    Ordering ordering = Ordering::none;  // monotone: |A| nondecreasing, |B| nonincreasing
    std::optional<int> uniform_n;        // every |A_i| + |B_i| equals this
    std::optional<std::pair<int, int>> uniform_rs;  // every (|A_i|, |B_i|) equals this
    int max_pairs = 0;                   // 0: no limit
    int min_pairs = 1;                   // smaller systems are not visited
    std::uint64_t seed = 1;              // drives the soundness spot checks
    double time_budget = 0;              // seconds, 0: no limit
    bool pruning = true;

    friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

inline void validate(const SearchConfig& config) {
    if (config.ground_size < 1 || config.ground_size > kMaxSearchGround) {
        throw ConfigError("ground size must lie in [1, " + std::to_string(kMaxSearchGround) + "]");
    }
    if (config.t < 0) throw ConfigError("t must be non-negative");
    if (config.max_pairs < 0) throw ConfigError("max_pairs must be non-negative");
    if (config.min_pairs < 1) throw ConfigError("min_pairs must be at least 1");
    if (config.time_budget < 0) throw ConfigError("time budget must be non-negative");
}

/// Execution knobs that do not change what a completed search reports.
struct RunOptions {
    unsigned workers = 1;
    std::string checkpoint_path;       // empty: no checkpointing
    double checkpoint_interval = 10;   // seconds between checkpoint writes
    std::size_t stop_after_tasks = 0;  // 0: no limit; otherwise a task budget for this run
    std::function<void(std::size_t completed, std::size_t total)> progress;
};

struct SearchRecord {
    Rational best_sum = 0;
    SetPairSystem best_system{1};
    std::uint64_t systems_enumerated = 0;
    std::uint64_t nodes_pruned = 0;
    std::uint64_t spot_checked = 0;
    bool exhausted = false;
    std::size_t tasks_total = 0;
    std::size_t tasks_completed = 0;

    friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

// --------------------------------------------------------------------------
// Candidate table

/// Fixed-width bitset over candidate indices.
class CandidateBits {
public:
    CandidateBits() = default;
    explicit CandidateBits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

    std::size_t count() const {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    /// Clears every index <= i.
    void clear_through(std::size_t i) {
        const std::size_t word = i / 64;
        for (std::size_t k = 0; k < word; ++k) words_[k] = 0;
        const std::size_t bit = i % 64;
        words_[word] &= bit == 63 ? 0 : ~((std::uint64_t{2} << bit) - 1);
    }

    CandidateBits& operator&=(const CandidateBits& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
        return *this;
    }

    template <class F>
    bool for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            for (auto w = words_[k]; w != 0; w &= w - 1) {
                if (!f(64 * k + static_cast<std::size_t>(std::countr_zero(w)))) return false;
            }
        }
        return true;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct Candidate {
    std::uint64_t a = 0;  // bit e-1 <-> element e
    std::uint64_t b = 0;
    int a_size = 0;
    int b_size = 0;
    int self = 0;               // |A n B|
    std::int64_t scaled = 0;    // scale / C(a+b-2t, a-t)
};

/// All admissible pairs of a configuration with their compatibility relation
/// and sum terms scaled by a common denominator.
class CandidateTable {
public:
    explicit CandidateTable(const SearchConfig& config) : config_(config) {
        validate(config);
        const int n = config.ground_size;
        const int t = config.t;
        for (int x = 0; x <= 2 * n; ++x)
            for (int y = 0; y <= x; ++y) {
                scale_ = std::lcm(scale_, binomial(x, y).convert_to<std::int64_t>());
            }

        const std::uint64_t full = std::uint64_t{1} << n;
        for (std::uint64_t a = 0; a < full; ++a) {
            for (std::uint64_t b = 0; b < full; ++b) {
                Candidate c{a, b, std::popcount(a), std::popcount(b), std::popcount(a & b), 0};
                if (c.self > t || c.a_size < t || c.b_size < t) continue;
                if (config.uniform_n && c.a_size + c.b_size != *config.uniform_n) continue;
                if (config.uniform_rs &&
                    (c.a_size != config.uniform_rs->first || c.b_size != config.uniform_rs->second)) {
                    continue;
                }
                c.scaled = scaled_reciprocal(c.a_size + c.b_size - 2 * t, c.a_size - t);
                list_.push_back(c);
            }
        }
        std::sort(list_.begin(), list_.end(), [](const Candidate& x, const Candidate& y) {
            return std::tie(x.a_size, x.a, x.b_size, x.b) < std::tie(y.a_size, y.a, y.b_size, y.b);
        });

        const std::size_t size = list_.size();
        forward_.assign(size, CandidateBits(size));
        if (config.mode == Mode::skew && config.ordering == Ordering::monotone) {
            monotone_after_.assign(size, CandidateBits(size));
        }
        for (std::size_t i = 0; i < size; ++i) {
            for (std::size_t j = 0; j < size; ++j) {
                if (allowed_after(i, j)) forward_[i].set(j);
                if (!monotone_after_.empty() && monotone_step(i, j)) monotone_after_[i].set(j);
            }
        }
    }

    const SearchConfig& config() const noexcept { return config_; }
    std::size_t size() const noexcept { return list_.size(); }
    const Candidate& operator[](std::size_t i) const { return list_[i]; }
    std::int64_t scale() const noexcept { return scale_; }

    std::int64_t scaled_reciprocal(int x, int y) const {
        return scale_ / binomial(x, y).convert_to<std::int64_t>();
    }

    /// Strong mode: i and j may share a system. Skew mode: j may follow i.
    const CandidateBits& successors(std::size_t i) const { return forward_[i]; }

    /// Skew + monotone mode: j may directly follow i.
    const CandidateBits* monotone_successors(std::size_t i) const {
        return monotone_after_.empty() ? nullptr : &monotone_after_[i];
    }

    bool meets(std::size_t i, std::size_t j) const {
        return std::popcount(list_[i].a & list_[j].b) > config_.t;
    }

    bool allowed_after(std::size_t i, std::size_t j) const {
        if (config_.mode == Mode::skew) return meets(i, j);
        if (i == j || !meets(i, j) || !meets(j, i)) return false;
        return config_.ordering == Ordering::none || comparable(i, j);
    }

    /// Some order of {i, j} has |A| nondecreasing and |B| nonincreasing.
    bool comparable(std::size_t i, std::size_t j) const {
        return (list_[i].a_size - list_[j].a_size) * (list_[i].b_size - list_[j].b_size) <= 0;
    }

    bool monotone_step(std::size_t i, std::size_t j) const {
        return list_[j].a_size >= list_[i].a_size && list_[j].b_size <= list_[i].b_size;
    }

    SetPairSystem materialize(std::span<const std::uint32_t> indices) const {
        std::vector<std::uint32_t> order(indices.begin(), indices.end());
        if (config_.mode == Mode::strong && config_.ordering == Ordering::monotone) {
            std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
                if (list_[x].a_size != list_[y].a_size) return list_[x].a_size < list_[y].a_size;
                return list_[x].b_size > list_[y].b_size;
            });
        }
        std::vector<SetPair> pairs;
        pairs.reserve(order.size());
        for (auto i : order) {
            pairs.push_back({BasicSubset<1>::from_mask(list_[i].a), BasicSubset<1>::from_mask(list_[i].b)});
        }
        return SetPairSystem(config_.ground_size, std::move(pairs));
    }

private:
    SearchConfig config_;
    std::int64_t scale_ = 1;
    std::vector<Candidate> list_;
    std::vector<CandidateBits> forward_;
    std::vector<CandidateBits> monotone_after_;
};

/// A system visited by the search: candidate indices in system order.
class SystemView {
public:
    SystemView(const CandidateTable& table, std::span<const std::uint32_t> indices,
               std::int64_t scaled_sum)
        : table_(&table), indices_(indices), scaled_sum_(scaled_sum) {}

    std::size_t m() const noexcept { return indices_.size(); }
    const Candidate& pair(std::size_t i) const { return (*table_)[indices_[i]]; }
    std::span<const std::uint32_t> indices() const noexcept { return indices_; }
    const CandidateTable& table() const noexcept { return *table_; }

    /// Fractional sum times table().scale().
    std::int64_t scaled_sum() const noexcept { return scaled_sum_; }
    Rational furedi() const { return Rational(scaled_sum_, table_->scale()); }
    SetPairSystem to_system() const { return table_->materialize(indices_); }

private:
    const CandidateTable* table_;
    std::span<const std::uint32_t> indices_;
    std::int64_t scaled_sum_;
};

// --------------------------------------------------------------------------
// Engine

struct TaskCounters {
    std::uint64_t visited = 0;
    std::uint64_t pruned = 0;
    std::uint64_t spot_checked = 0;
};

namespace detail {

struct Deadline {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double budget = 0;
    std::atomic<bool> cut{false};

    bool expired() {
        if (cut.load(std::memory_order_relaxed)) return true;
        if (budget > 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > budget) {
            cut.store(true, std::memory_order_relaxed);
        }
        return cut.load(std::memory_order_relaxed);
    }
};

/// Re-derives a visited system from scratch and compares it with the
/// configuration it was generated under.
inline void spot_check(const SystemView& view) {
    const auto& config = view.table().config();
    const auto system = view.to_system();
    const auto report = classify(system, config.t);
    const bool ok_mode = config.mode == Mode::strong ? report.strong : report.skew;
    bool ok_filters = true;
    for (const auto& p : system.pairs()) {
        if (config.uniform_n && p.a() + p.b() != *config.uniform_n) ok_filters = false;
        if (config.uniform_rs && (p.a() != config.uniform_rs->first || p.b() != config.uniform_rs->second)) {
            ok_filters = false;
        }
    }
    if (config.ordering == Ordering::monotone && !is_monotone_ordered(system)) ok_filters = false;
    if (!ok_mode || !ok_filters || furedi_sum(system, config.t) != view.furedi()) {
        throw std::logic_error("search soundness spot check failed");
    }
}

template <class State, class Visit>
class TaskRunner {
public:
    TaskRunner(const CandidateTable& table, Visit& visit, State& state, TaskCounters& counters,
               Deadline& deadline, std::uint64_t spot_seed)
        : table_(table), config_(table.config()), visit_(visit), state_(state),
          counters_(counters), deadline_(deadline), spot_seed_(spot_seed) {}

    /// Runs the subtree of systems starting with candidate `first`. Returns
    /// false when the deadline cut the task short.
    bool run(std::size_t first) {
        stack_.assign(1, static_cast<std::uint32_t>(first));
        scaled_ = table_[first].scaled;
        if (config_.pruning) {
            CandidateBits next = table_.successors(first);
            if (config_.mode == Mode::strong) next.clear_through(first);
            if (const auto* mono = table_.monotone_successors(first)) next &= *mono;
            const std::size_t reachable =
                config_.mode == Mode::strong ? table_.size() - first - 1 : table_.size() - 1;
            counters_.pruned += reachable - next.count();
            pruned_dfs(next);
        } else {
            used_.assign(table_.size(), false);
            used_[first] = true;
            plain_dfs(true);
        }
        return !aborted_;
    }

private:
    bool at_depth_limit() const {
        return config_.max_pairs > 0 && stack_.size() >= static_cast<std::size_t>(config_.max_pairs);
    }

    /// Visits the current stack; false stops the task.
    bool emit() {
        if ((++ticks_ & 0xFFF) == 0 && deadline_.expired()) {
            aborted_ = true;
            return false;
        }
        if (stack_.size() < static_cast<std::size_t>(config_.min_pairs)) return true;
        SystemView view(table_, stack_, scaled_);
        ++counters_.visited;
        if (derive_seed(spot_seed_, counters_.visited) % 100 == 0) {
            spot_check(view);
            ++counters_.spot_checked;
        }
        if (!visit_(state_, view)) {
            stopped_ = true;
            return false;
        }
        return true;
    }

    bool pruned_dfs(const CandidateBits& next) {
        if (!emit()) return false;
        if (at_depth_limit()) return true;
        const std::size_t before = next.count();
        std::size_t position = 0;
        return next.for_each([&](std::size_t p) {
            CandidateBits deeper = next;
            deeper &= table_.successors(p);
            // Strong systems only grow upward; skew sequences may revisit lower indices.
            std::size_t reachable = before - 1;
            if (config_.mode == Mode::strong) {
                deeper.clear_through(p);
                reachable = before - position - 1;
            }
            ++position;
            if (const auto* mono = table_.monotone_successors(p)) deeper &= *mono;
            counters_.pruned += reachable - deeper.count();
            stack_.push_back(static_cast<std::uint32_t>(p));
            scaled_ += table_[p].scaled;
            const bool go_on = pruned_dfs(deeper);
            scaled_ -= table_[p].scaled;
            stack_.pop_back();
            return go_on;
        });
    }

    /// Unpruned reference enumeration: every subset (strong) or sequence
    /// (skew) is expanded and only valid ones are visited.
    bool plain_dfs(bool valid) {
        if (valid && !emit()) return false;
        if (aborted_ || stopped_) return false;
        if (at_depth_limit()) return true;
        const std::size_t start = config_.mode == Mode::strong ? stack_.back() + 1 : 0;
        for (std::size_t p = start; p < table_.size(); ++p) {
            if (config_.mode == Mode::skew && used_[p]) continue;
            bool ok = valid;
            if (ok) {
                for (auto i : stack_) {
                    if (!table_.allowed_after(i, p)) {
                        ok = false;
                        break;
                    }
                }
                if (ok && config_.mode == Mode::skew && config_.ordering == Ordering::monotone) {
                    ok = table_.monotone_step(stack_.back(), p);
                }
            }
            stack_.push_back(static_cast<std::uint32_t>(p));
            used_[p] = true;
            scaled_ += table_[p].scaled;
            const bool go_on = plain_dfs(ok);
            scaled_ -= table_[p].scaled;
            used_[p] = false;
            stack_.pop_back();
            if (!go_on) return false;
        }
        return true;
    }

    const CandidateTable& table_;
    const SearchConfig& config_;
    Visit& visit_;
    State& state_;
    TaskCounters& counters_;
    Deadline& deadline_;
    std::uint64_t spot_seed_;
    std::vector<std::uint32_t> stack_;
    std::vector<bool> used_;
    std::int64_t scaled_ = 0;
    std::uint64_t ticks_ = 0;
    bool aborted_ = false;
    bool stopped_ = false;
};

}  // namespace detail

inline Json to_json(const SearchConfig& config) {
    Json rs = nullptr;
    if (config.uniform_rs) rs = Json::array({config.uniform_rs->first, config.uniform_rs->second});
    return {{"ground_size", config.ground_size},
            {"t", config.t},
            {"mode", config.mode == Mode::strong ? "strong" : "skew"},
            {"ordering", config.ordering == Ordering::none ? "none" : "monotone"},
            {"uniform_N", config.uniform_n ? Json(*config.uniform_n) : Json(nullptr)},
            {"uniform_rs", rs},
            {"max_pairs", config.max_pairs},
            {"min_pairs", config.min_pairs},
            {"seed", config.seed},
            {"time_budget", config.time_budget},
            {"pruning", config.pruning}};
}

inline SearchConfig search_config_from_json(const Json& j) {
    SearchConfig c;
    try {
        c.ground_size = j.at("ground_size").get<int>();
        c.t = j.at("t").get<int>();
        c.mode = j.at("mode").get<std::string>() == "skew" ? Mode::skew : Mode::strong;
        c.ordering = j.at("ordering").get<std::string>() == "monotone" ? Ordering::monotone : Ordering::none;
        if (!j.at("uniform_N").is_null()) c.uniform_n = j.at("uniform_N").get<int>();
        if (!j.at("uniform_rs").is_null()) {
            c.uniform_rs = std::pair{j.at("uniform_rs").at(0).get<int>(), j.at("uniform_rs").at(1).get<int>()};
        }
        c.max_pairs = j.at("max_pairs").get<int>();
        c.min_pairs = j.at("min_pairs").get<int>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.time_budget = j.at("time_budget").get<double>();
        c.pruning = j.at("pruning").get<bool>();
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid search config: ") + e.what());
    }
    return c;
}

template <class State>
struct EngineResult {
    State state;
    TaskCounters counters;
    std::size_t tasks_total = 0;
    std::size_t tasks_completed = 0;
    bool exhausted = false;
};

namespace detail {

inline constexpr const char* kCheckpointFormat = "setpair-search-checkpoint";
inline constexpr int kCheckpointVersion = 1;

template <class State>
struct TaskSlot {
    bool done = false;
    State state;
    TaskCounters counters;
};

// The time budget only bounds one run, so a resume may change it.
inline Json search_identity(const SearchConfig& config) {
    Json j = to_json(config);
    j.erase("time_budget");
    return j;
}

template <class State>
Json checkpoint_json(const std::string& kind, const SearchConfig& config,
                     const std::vector<TaskSlot<State>>& slots) {
    Json done = Json::array();
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (!slots[k].done) continue;
        done.push_back({{"task", k},
                        {"visited", slots[k].counters.visited},
                        {"pruned", slots[k].counters.pruned},
                        {"spot_checked", slots[k].counters.spot_checked},
                        {"state", slots[k].state.to_json()}});
    }
    return {{"format", kCheckpointFormat},
            {"version", kCheckpointVersion},
            {"kind", kind},
            {"config", search_identity(config)},
            {"tasks_total", slots.size()},
            {"completed", std::move(done)}};
}

template <class State>
void load_checkpoint(const std::string& path, const std::string& kind, const SearchConfig& config,
                     std::vector<TaskSlot<State>>& slots) {
    const Json j = read_json_file(path);
    try {
        if (j.at("format") != kCheckpointFormat || j.at("version") != kCheckpointVersion) {
            throw ParseError("'" + path + "' is not a version-1 search checkpoint");
        }
        if (j.at("kind") != kind || j.at("config") != search_identity(config) ||
            j.at("tasks_total").get<std::size_t>() != slots.size()) {
            throw ConfigError("checkpoint '" + path + "' belongs to a different search");
        }
        for (const auto& entry : j.at("completed")) {
            const auto k = entry.at("task").get<std::size_t>();
            if (k >= slots.size()) throw ParseError("checkpoint task index out of range");
            slots[k].done = true;
            slots[k].counters = {entry.at("visited").get<std::uint64_t>(),
                                 entry.at("pruned").get<std::uint64_t>(),
                                 entry.at("spot_checked").get<std::uint64_t>()};
            slots[k].state = State::from_json(entry.at("state"));
        }
    } catch (const Json::exception& e) {
        throw ParseError("corrupt checkpoint '" + path + "': " + e.what());
    }
}

}  // namespace detail

/// Runs every task of the search, `visit(State&, const SystemView&)` being
/// called for each visited system with the state of the task that owns it.
/// A false return ends that task early (it still counts as completed).
/// State must provide merge(State&&), to_json() and static from_json(Json).
template <class State, class Visit>
EngineResult<State> run_search(const CandidateTable& table, const RunOptions& options,
                               const std::string& kind, Visit visit) {
    const SearchConfig& config = table.config();
    std::vector<detail::TaskSlot<State>> slots(table.size());
    const bool checkpointing = !options.checkpoint_path.empty();
    if (checkpointing && std::filesystem::exists(options.checkpoint_path)) {
        detail::load_checkpoint(options.checkpoint_path, kind, config, slots);
    }
    std::vector<std::size_t> pending;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (!slots[k].done) pending.push_back(k);
    }
    const std::size_t resumed = slots.size() - pending.size();

    detail::Deadline deadline;
    deadline.budget = config.time_budget;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> finished_this_run{0};
    std::mutex mutex;
    auto last_write = std::chrono::steady_clock::now();
    std::exception_ptr failure;

    auto write_checkpoint = [&] {
        write_text_file(options.checkpoint_path, dump(detail::checkpoint_json(kind, config, slots)));
        last_write = std::chrono::steady_clock::now();
    };

    auto worker = [&] {
        try {
            while (!deadline.expired()) {
                if (options.stop_after_tasks > 0 &&
                    finished_this_run.load() >= options.stop_after_tasks) {
                    break;
                }
                const std::size_t slot = next.fetch_add(1);
                if (slot >= pending.size()) break;
                const std::size_t task = pending[slot];
                State state;
                TaskCounters counters;
                detail::TaskRunner<State, Visit> runner(table, visit, state, counters, deadline,
                                                        derive_seed(config.seed, task));
                if (!runner.run(task)) break;
                std::lock_guard lock(mutex);
                if (options.stop_after_tasks > 0 &&
                    finished_this_run.load() >= options.stop_after_tasks) {
                    break;
                }
                slots[task].done = true;
                slots[task].state = std::move(state);
                slots[task].counters = counters;
                ++finished_this_run;
                if (options.progress) options.progress(resumed + finished_this_run.load(), slots.size());
                if (checkpointing &&
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - last_write).count() >=
                        options.checkpoint_interval) {
                    write_checkpoint();
                }
            }
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            deadline.cut.store(true);
        }
    };

    const unsigned workers = std::max(1U, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    if (checkpointing) write_checkpoint();

    EngineResult<State> result;
    result.tasks_total = slots.size();
    for (auto& slot : slots) {
        if (!slot.done) continue;
        ++result.tasks_completed;
        result.counters.visited += slot.counters.visited;
        result.counters.pruned += slot.counters.pruned;
        result.counters.spot_checked += slot.counters.spot_checked;
        result.state.merge(std::move(slot.state));
    }
    result.exhausted = result.tasks_completed == result.tasks_total;
    return result;
}

// --------------------------------------------------------------------------
// Operations

namespace detail {

struct NoState {
    void merge(NoState&&) {}
    Json to_json() const { return Json::object(); }
    static NoState from_json(const Json&) { return {}; }
};

/// Best system by fractional sum; ties keep the earliest in task order.
struct BestState {
    std::int64_t best = -1;
    std::vector<std::uint32_t> indices;

    void offer(const SystemView& view) {
        if (view.scaled_sum() > best) {
            best = view.scaled_sum();
            indices.assign(view.indices().begin(), view.indices().end());
        }
    }
    void merge(BestState&& other) {
        if (other.best > best) *this = std::move(other);
    }
    Json to_json() const { return {{"best", best}, {"indices", indices}}; }
    static BestState from_json(const Json& j) {
        return {j.at("best").get<std::int64_t>(), j.at("indices").get<std::vector<std::uint32_t>>()};
    }
};

inline SearchRecord make_record(const CandidateTable& table, const EngineResult<BestState>& run) {
    SearchRecord record;
    record.best_system = SetPairSystem(table.config().ground_size);
    if (run.state.best >= 0) {
        record.best_sum = Rational(run.state.best, table.scale());
        record.best_system = table.materialize(run.state.indices);
    }
    record.systems_enumerated = run.counters.visited;
    record.nodes_pruned = run.counters.pruned;
    record.spot_checked = run.counters.spot_checked;
    record.exhausted = run.exhausted;
    record.tasks_total = run.tasks_total;
    record.tasks_completed = run.tasks_completed;
    return record;
}

}  // namespace detail

/// Calls visit(const SystemView&) for every system of the configuration and
/// reports the best fractional sum seen. With several workers, calls are
/// serialized but arrive in no particular order.
template <class Visit>
SearchRecord enumerate_systems(const SearchConfig& config, Visit&& visit, const RunOptions& options = {}) {
    const CandidateTable table(config);
    std::mutex mutex;
    auto run = run_search<detail::BestState>(
        table, options, "enumerate", [&](detail::BestState& best, const SystemView& view) {
            best.offer(view);
            std::lock_guard lock(mutex);
            if constexpr (std::is_same_v<std::invoke_result_t<Visit&, const SystemView&>, bool>) {
                return visit(view);
            } else {
                visit(view);
                return true;
            }
        });
    return detail::make_record(table, run);
}

/// Exact maximum of the fractional sum over every system of the configuration.
inline SearchRecord max_furedi_sum(const SearchConfig& config, const RunOptions& options = {}) {
    const CandidateTable table(config);
    auto run = run_search<detail::BestState>(table, options, "max-furedi-sum",
                                             [](detail::BestState& best, const SystemView& view) {
                                                 best.offer(view);
                                                 return true;
                                             });
    return detail::make_record(table, run);
}

/// First skew 0-system (in search order) whose fractional sum exceeds 1.
inline std::optional<SetPairSystem> find_skew_violation(const SearchConfig& config,
                                                        const RunOptions& options = {}) {
    if (config.mode != Mode::skew) {
        throw HypothesisError("find_skew_violation needs skew mode; strong systems cannot exceed 1");
    }
    if (config.t != 0) throw HypothesisError("find_skew_violation is defined for t = 0");
    const CandidateTable table(config);
    struct Found {
        std::vector<std::uint32_t> indices;
        void merge(Found&& other) {
            if (indices.empty()) indices = std::move(other.indices);
        }
        Json to_json() const { return {{"indices", indices}}; }
        static Found from_json(const Json& j) {
            return {j.at("indices").get<std::vector<std::uint32_t>>()};
        }
    };
    std::atomic<std::size_t> first_hit{table.size()};
    auto run = run_search<Found>(table, options, "skew-violation", [&](Found& found, const SystemView& view) {
        if (view.indices()[0] > first_hit.load()) return false;
        if (view.scaled_sum() <= table.scale()) return true;
        found.indices.assign(view.indices().begin(), view.indices().end());
        std::size_t seen = first_hit.load();
        while (view.indices()[0] < seen && !first_hit.compare_exchange_weak(seen, view.indices()[0])) {
        }
        return false;
    });
    if (run.state.indices.empty()) return std::nullopt;
    return table.materialize(run.state.indices);
}

struct Violation {
    std::string statement;
    bool proven = true;  // false: the statement is a conjecture
    Rational lhs = 0;
    Rational rhs = 0;
    SetPairSystem system{1};

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct CorpusReport {
    std::uint64_t checked = 0;
    std::map<std::string, std::uint64_t> checks;  // statement -> systems it was applied to
    std::vector<Violation> violations;
    SearchRecord record;
};

inline Json to_json(const Violation& v) {
    return {{"statement", v.statement},
            {"proven", v.proven},
            {"lhs", to_string(v.lhs)},
            {"rhs", to_string(v.rhs)},
            {"system", to_json(v.system)}};
}

inline Violation violation_from_json(const Json& j) {
    return {j.at("statement").get<std::string>(), j.at("proven").get<bool>(),
            parse_rational(j.at("lhs").get<std::string>()), parse_rational(j.at("rhs").get<std::string>()),
            set_system_from_json(j.at("system"))};
}

namespace detail {

struct CorpusState {
    std::uint64_t checked = 0;
    std::map<std::string, std::uint64_t> checks;
    std::vector<Violation> violations;
    BestState best;

    void merge(CorpusState&& other) {
        checked += other.checked;
        for (const auto& [k, v] : other.checks) checks[k] += v;
        for (auto& v : other.violations) violations.push_back(std::move(v));
        best.merge(std::move(other.best));
    }
    Json to_json() const {
        Json vs = Json::array();
        for (const auto& v : violations) vs.push_back(setpair::to_json(v));
        return {{"checked", checked}, {"checks", checks}, {"violations", vs}, {"best", best.to_json()}};
    }
    static CorpusState from_json(const Json& j) {
        CorpusState s;
        s.checked = j.at("checked").get<std::uint64_t>();
        s.checks = j.at("checks").get<std::map<std::string, std::uint64_t>>();
        for (const auto& v : j.at("violations")) s.violations.push_back(violation_from_json(v));
        s.best = BestState::from_json(j.at("best"));
        return s;
    }
};

/// Applies every inequality whose hypotheses the visited system meets.
inline void check_inequalities(CorpusState& state, const SystemView& view) {
    const CandidateTable& table = view.table();
    const SearchConfig& config = table.config();
    const int t = config.t;
    const std::int64_t one = table.scale();
    const bool strong = config.mode == Mode::strong;
    const std::size_t m = view.m();

    bool constant_n = true;
    bool uniform = true;
    bool exact_self = true;
    bool monotone = true;
    int b_max = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Candidate& p = view.pair(i);
        const Candidate& first = view.pair(0);
        constant_n = constant_n && p.a_size + p.b_size == first.a_size + first.b_size;
        uniform = uniform && p.a_size == first.a_size && p.b_size == first.b_size;
        exact_self = exact_self && p.self == t;
        b_max = std::max(b_max, p.b_size);
        if (i > 0) {
            const Candidate& prev = view.pair(i - 1);
            if (strong) {
                for (std::size_t j = 0; j < i; ++j) {
                    monotone = monotone && table.comparable(view.indices()[i], view.indices()[j]);
                }
            } else {
                monotone = monotone && p.a_size >= prev.a_size && p.b_size <= prev.b_size;
            }
        }
    }

    ++state.checked;
    state.best.offer(view);
    auto record = [&](const char* statement, bool proven, std::int64_t lhs, std::int64_t rhs) {
        ++state.checks[statement];
        if (lhs > rhs) {
            state.violations.push_back({statement, proven, Rational(lhs, one), Rational(rhs, one),
                                        view.to_system()});
        }
    };

    // Fractional sum <= 1, under the strongest hypothesis that applies.
    if (strong && t == 0) {
        record("bollobas", true, view.scaled_sum(), one);
    } else if (strong && constant_n) {
        record("uniform-sum", true, view.scaled_sum(), one);
    } else if (monotone) {
        record("monotone-skew", true, view.scaled_sum(), one);
    } else if (strong) {
        record("furedi-conjecture", false, view.scaled_sum(), one);
    }

    if (strong && exact_self) {
        std::int64_t zhu = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Candidate& p = view.pair(i);
            zhu += table.scaled_reciprocal(p.a_size + p.b_size - t, p.b_size - t);
        }
        record("zhu", true, zhu, one);
    }

    if (uniform) {
        const Candidate& p = view.pair(0);
        const auto bound = binomial(p.a_size + p.b_size - 2 * t, p.a_size - t).convert_to<std::int64_t>();
        record("uniform-bound", true, static_cast<std::int64_t>(m) * one, bound * one);
    }

    if (strong) {
        std::int64_t total = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Candidate& p = view.pair(i);
            total += table.scaled_reciprocal(p.a_size + b_max - 2 * t, p.a_size - t);
        }
        record("max-b", true, total, one);
    }
}

}  // namespace detail

/// Checks every applicable inequality on every system of the configuration.
///
/// Statements: "bollobas" (strong, t = 0), "uniform-sum" (strong, constant
/// |A_i|+|B_i|), "monotone-skew" (monotone order), "furedi-conjecture" (strong,
/// none of the above; a conjecture), "zhu" (strong, all |A_i n B_i| = t),
/// "uniform-bound" (all sizes equal, m <= C(r+s-2t, r-t)) and "max-b" (strong,
/// |B_i| replaced by the largest |B_j|).
inline CorpusReport verify_corpus(const SearchConfig& config, const RunOptions& options = {}) {
    const CandidateTable table(config);
    auto run = run_search<detail::CorpusState>(table, options, "verify-corpus",
                                               [](detail::CorpusState& state, const SystemView& view) {
                                                   detail::check_inequalities(state, view);
                                                   return true;
                                               });
    CorpusReport report;
    report.checked = run.state.checked;
    report.checks = run.state.checks;
    report.violations = run.state.violations;
    EngineResult<detail::BestState> best{run.state.best, run.counters, run.tasks_total,
                                         run.tasks_completed, run.exhausted};
    report.record = detail::make_record(table, best);
    return report;
}

inline Json to_json(const SearchRecord& record) {
    return {{"best_sum", to_string(record.best_sum)},
            {"best_system", to_json(record.best_system)},
            {"systems_enumerated", record.systems_enumerated},
            {"nodes_pruned", record.nodes_pruned},
            {"spot_checked", record.spot_checked},
            {"exhausted", record.exhausted},
            {"tasks_total", record.tasks_total},
            {"tasks_completed", record.tasks_completed}};
}

inline Json to_json(const CorpusReport& report) {
    Json vs = Json::array();
    for (const auto& v : report.violations) vs.push_back(to_json(v));
    return {{"checked", report.checked},
            {"checks", report.checks},
            {"violations", vs},
            {"record", to_json(report.record)}};
}

// --------------------------------------------------------------------------
// Antichains

/// Calls visit(const std::vector<std::uint64_t>&) for every antichain of
/// subsets of [n] (as bit masks), including the empty one. n <= 6.
template <class Visit>
std::uint64_t for_each_antichain(int n, Visit&& visit) {
    if (n < 1 || n > kMaxSearchGround) {
        throw ConfigError("antichain enumeration needs 1 <= n <= " + std::to_string(kMaxSearchGround));
    }
    const std::size_t count = std::size_t{1} << n;
    std::vector<CandidateBits> free_with(count, CandidateBits(count));
    for (std::size_t x = 0; x < count; ++x)
        for (std::size_t y = 0; y < count; ++y) {
            if ((x & y) != x && (x & y) != y) free_with[x].set(y);
        }
    std::vector<std::uint64_t> chosen;
    std::uint64_t total = 0;
    std::function<void(const CandidateBits&)> grow = [&](const CandidateBits& open) {
        ++total;
        visit(std::as_const(chosen));
        open.for_each([&](std::size_t x) {
            CandidateBits deeper = open;
            deeper &= free_with[x];
            deeper.clear_through(x);
            chosen.push_back(x);
            grow(deeper);
            chosen.pop_back();
            return true;
        });
    };
    CandidateBits all(count);
    for (std::size_t x = 0; x < count; ++x) all.set(x);
    grow(all);
    return total;
}

}  // namespace setpair
