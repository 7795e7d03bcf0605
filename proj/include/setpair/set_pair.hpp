#pragma once

// Set-pair systems over a ground set [n]: classification as (skew) t-systems,
// the fractional sums bounded by the Bollobas-type inequalities, the sharp
// extremal construction, and the antichain bridge.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setpair/classification.hpp"
#include "setpair/errors.hpp"
#include "setpair/exact_math.hpp"
#include "setpair/subset.hpp"

namespace setpair {

template <std::size_t W = 1>
struct BasicSetPair {
    BasicSubset<W> a_set;
    BasicSubset<W> b_set;

    int a() const { return a_set.size(); }
    int b() const { return b_set.size(); }

    friend bool operator==(const BasicSetPair&, const BasicSetPair&) = default;
};

/// Ordered list of set pairs over [ground_size]. Order matters for skewness.
template <std::size_t W = 1>
class BasicSetPairSystem {
public:
    using Subset = BasicSubset<W>;
    using Pair = BasicSetPair<W>;

    static constexpr std::size_t capacity = Subset::capacity;

    explicit BasicSetPairSystem(int ground_size, std::vector<Pair> pairs = {})
        : ground_size_(ground_size), pairs_(std::move(pairs)) {
        if (ground_size < 1) {
            throw DomainError("ground size must be positive, got " + std::to_string(ground_size));
        }
        if (static_cast<std::size_t>(ground_size) > capacity) {
            throw CapacityError("ground size " + std::to_string(ground_size) +
                                " exceeds the set capacity " + std::to_string(capacity));
        }
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (pairs_[i].a_set.max_element() > ground_size ||
                pairs_[i].b_set.max_element() > ground_size) {
                throw DomainError("pair " + std::to_string(i + 1) + " leaves the ground set [" +
                                  std::to_string(ground_size) + "]");
            }
        }
    }

    int ground_size() const noexcept { return ground_size_; }
    std::size_t m() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }
    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    const Pair& operator[](std::size_t i) const { return pairs_[i]; }

    friend bool operator==(const BasicSetPairSystem&, const BasicSetPairSystem&) = default;

private:
    int ground_size_;
    std::vector<Pair> pairs_;
};

using SetPair = BasicSetPair<1>;
using SetPairSystem = BasicSetPairSystem<1>;

template <std::size_t W>
ClassificationReport classify(const BasicSetPairSystem<W>& system, int t) {
    const auto& pairs = system.pairs();
    return classify_by(pairs.size(), t, [&](std::size_t i, std::size_t j) {
        return intersection_size(pairs[i].a_set, pairs[j].b_set);
    });
}

/// Sum of 1 / C(a_i + b_i - 2t, a_i - t).
template <std::size_t W>
Rational furedi_sum(const BasicSetPairSystem<W>& system, int t) {
    Rational total = 0;
    for (std::size_t i = 0; i < system.m(); ++i) {
        const int a = system[i].a();
        const int b = system[i].b();
        if (a < t || b < t) {
            throw DegeneratePairError(i + 1, "|A|=" + std::to_string(a) + ", |B|=" +
                                                 std::to_string(b) + " below t=" +
                                                 std::to_string(t));
        }
        total += reciprocal(binomial(a + b - 2 * t, a - t));
    }
    return total;
}

/// Sum of 1 / C(a_i + b_i - t, b_i - t). Only evaluates; checking that
/// self-intersections equal t is left to the caller.
template <std::size_t W>
Rational zhu_sum(const BasicSetPairSystem<W>& system, int t) {
    Rational total = 0;
    for (std::size_t i = 0; i < system.m(); ++i) {
        const int a = system[i].a();
        const int b = system[i].b();
        if (b < t) {
            throw DegeneratePairError(i + 1, "|B|=" + std::to_string(b) + " below t=" +
                                                 std::to_string(t));
        }
        total += reciprocal(binomial(a + b - t, b - t));
    }
    return total;
}

/// Sum of 1 / C(a_i + b - 2t, a_i - t) with b the largest |B_i|.
template <std::size_t W>
Rational max_b_furedi_sum(const BasicSetPairSystem<W>& system, int t) {
    int b = 0;
    for (const auto& p : system.pairs()) b = std::max(b, p.b());
    Rational total = 0;
    for (std::size_t i = 0; i < system.m(); ++i) {
        const int a = system[i].a();
        if (a < t || b < t) {
            throw DegeneratePairError(i + 1, "|A|=" + std::to_string(a) + ", max |B|=" +
                                                 std::to_string(b) + " below t=" +
                                                 std::to_string(t));
        }
        total += reciprocal(binomial(a + b - 2 * t, a - t));
    }
    return total;
}

/// The extremal family: ground set [a+b+t], T = {a+b+1, ..., a+b+t}, and one
/// pair (A u T, ([a+b] \ A) u T) per a-subset A of [a+b], in lexicographic order.
template <std::size_t W = 1>
BasicSetPairSystem<W> generate_sharp_system(int a, int b, int t) {
    if (a < 1 || b < 1 || t < 0) {
        throw DomainError("sharp system needs a, b >= 1 and t >= 0");
    }
    const int n = a + b + t;
    if (static_cast<std::size_t>(n) > BasicSubset<W>::capacity) {
        throw CapacityError("a+b+t = " + std::to_string(n) + " exceeds the set capacity " +
                            std::to_string(BasicSubset<W>::capacity));
    }
    const auto base = BasicSubset<W>::range(1, a + b);
    const auto tail = BasicSubset<W>::range(a + b + 1, n);

    std::vector<BasicSetPair<W>> pairs;
    std::vector<int> pick(static_cast<std::size_t>(a));
    for (int i = 0; i < a; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        const auto chosen = BasicSubset<W>::from_elements(pick);
        pairs.push_back({chosen | tail, (base - chosen) | tail});
        int pos = a - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == a + b - (a - 1 - pos)) --pos;
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < a; ++j) {
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return BasicSetPairSystem<W>(n, std::move(pairs));
}

/// {(F_i, [n] \ F_i)}: strong at t = 0 exactly when the family is an antichain.
template <std::size_t W>
BasicSetPairSystem<W> antichain_to_system(const std::vector<BasicSubset<W>>& family, int n) {
    const auto ground = BasicSubset<W>::range(1, n);
    std::vector<BasicSetPair<W>> pairs;
    pairs.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (family[i].max_element() > n) {
            throw DomainError("member " + std::to_string(i + 1) + " exceeds the ground set [" +
                              std::to_string(n) + "]");
        }
        pairs.push_back({family[i], ground - family[i]});
    }
    return BasicSetPairSystem<W>(n, std::move(pairs));
}

/// Sum of 1 / C(n, |F_i|).
template <std::size_t W>
Rational lym_sum(const std::vector<BasicSubset<W>>& family, int n) {
    Rational total = 0;
    for (const auto& f : family) total += reciprocal(binomial(n, f.size()));
    return total;
}

template <std::size_t W>
bool is_antichain(const std::vector<BasicSubset<W>>& family) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (i != j && family[i].is_subset_of(family[j])) return false;
        }
    }
    return true;
}

struct UniformBoundVerdict {
    bool uniform = false;
    int r = 0;
    int s = 0;
    std::optional<BigInt> bound;  // C(r+s-2t, r-t), present only when uniform
    std::size_t m = 0;
    bool holds = true;  // vacuously true when not uniform
};

/// m <= C(r+s-2t, r-t) for skew t-systems with all |A_i| = r and all |B_i| = s.
template <std::size_t W>
UniformBoundVerdict check_uniform_bound(const BasicSetPairSystem<W>& system, int t) {
    if (!classify(system, t).skew) {
        throw HypothesisError("not a skew " + std::to_string(t) + "-system");
    }
    UniformBoundVerdict verdict;
    verdict.m = system.m();
    if (system.empty()) return verdict;
    verdict.r = system[0].a();
    verdict.s = system[0].b();
    verdict.uniform = std::all_of(system.pairs().begin(), system.pairs().end(), [&](const auto& p) {
        return p.a() == verdict.r && p.b() == verdict.s;
    });
    if (!verdict.uniform) return verdict;
    if (verdict.r < t || verdict.s < t) {
        throw DegeneratePairError(1, "uniform sizes r=" + std::to_string(verdict.r) + ", s=" +
                                         std::to_string(verdict.s) + " below t=" +
                                         std::to_string(t));
    }
    verdict.bound = binomial(verdict.r + verdict.s - 2 * t, verdict.r - t);
    verdict.holds = BigInt(verdict.m) <= *verdict.bound;
    return verdict;
}

/// |A_i| nondecreasing and |B_i| nonincreasing along the list.
template <std::size_t W>
bool is_monotone_ordered(const BasicSetPairSystem<W>& system) {
    for (std::size_t i = 1; i < system.m(); ++i) {
        if (system[i].a() < system[i - 1].a() || system[i].b() > system[i - 1].b()) return false;
    }
    return true;
}

/// Applies the ground-set permutation e -> perm[e-1] to every set.
template <std::size_t W>
BasicSetPairSystem<W> relabel(const BasicSetPairSystem<W>& system, const std::vector<int>& perm) {
    std::vector<BasicSetPair<W>> pairs;
    pairs.reserve(system.m());
    for (const auto& p : system.pairs()) {
        pairs.push_back({p.a_set.relabeled(perm), p.b_set.relabeled(perm)});
    }
    return BasicSetPairSystem<W>(system.ground_size(), std::move(pairs));
}

}  // namespace setpair
