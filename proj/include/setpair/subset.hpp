#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "setpair/errors.hpp"

namespace setpair {

/// Finite subset of [64*Words], stored as a fixed array of machine words.
/// Elements are 1-based at the interface; bit e-1 holds element e.
template <std::size_t Words = 1>
class BasicSubset {
    static_assert(Words >= 1);

public:
    static constexpr std::size_t capacity = 64 * Words;

    constexpr BasicSubset() = default;

    static BasicSubset from_elements(const std::vector<int>& elements) {
        BasicSubset s;
        for (int e : elements) s.insert(e);
        return s;
    }

    /// Subset whose bit pattern is `mask` (element e <-> bit e-1).
    static constexpr BasicSubset from_mask(std::uint64_t mask) {
        BasicSubset s;
        s.words_[0] = mask;
        return s;
    }

    /// {first, ..., last}; empty when last < first.
    static BasicSubset range(int first, int last) {
        BasicSubset s;
        for (int e = first; e <= last; ++e) s.insert(e);
        return s;
    }

    void insert(int element) {
        check(element);
        const auto bit = static_cast<std::size_t>(element - 1);
        words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }

    bool contains(int element) const {
        if (element < 1 || static_cast<std::size_t>(element) > capacity) return false;
        const auto bit = static_cast<std::size_t>(element - 1);
        return (words_[bit / 64] >> (bit % 64)) & 1U;
    }

    int size() const {
        int total = 0;
        for (auto w : words_) total += std::popcount(w);
        return total;
    }

    bool empty() const {
        return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
    }

    /// Largest element, 0 for the empty set.
    int max_element() const {
        for (std::size_t i = Words; i-- > 0;) {
            if (words_[i] != 0) return static_cast<int>(64 * i + 64 - std::countl_zero(words_[i]));
        }
        return 0;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < Words; ++i) {
            for (auto w = words_[i]; w != 0; w &= w - 1) {
                out.push_back(static_cast<int>(64 * i) + std::countr_zero(w) + 1);
            }
        }
        return out;
    }

    /// Image under the relabeling e -> perm[e-1] (perm is 1-based).
    BasicSubset relabeled(const std::vector<int>& perm) const {
        BasicSubset out;
        for (int e : elements()) out.insert(perm.at(static_cast<std::size_t>(e - 1)));
        return out;
    }

    friend BasicSubset operator&(const BasicSubset& x, const BasicSubset& y) {
        BasicSubset out;
        for (std::size_t i = 0; i < Words; ++i) out.words_[i] = x.words_[i] & y.words_[i];
        return out;
    }
    friend BasicSubset operator|(const BasicSubset& x, const BasicSubset& y) {
        BasicSubset out;
        for (std::size_t i = 0; i < Words; ++i) out.words_[i] = x.words_[i] | y.words_[i];
        return out;
    }
    /// Set difference x \ y.
    friend BasicSubset operator-(const BasicSubset& x, const BasicSubset& y) {
        BasicSubset out;
        for (std::size_t i = 0; i < Words; ++i) out.words_[i] = x.words_[i] & ~y.words_[i];
        return out;
    }

    bool is_subset_of(const BasicSubset& other) const { return (*this - other).empty(); }

    const std::array<std::uint64_t, Words>& words() const noexcept { return words_; }

    friend bool operator==(const BasicSubset&, const BasicSubset&) = default;
    friend auto operator<=>(const BasicSubset&, const BasicSubset&) = default;

private:
    static void check(int element) {
        if (element < 1 || static_cast<std::size_t>(element) > capacity) {
            throw CapacityError("element " + std::to_string(element) + " outside [1, " +
                                std::to_string(capacity) + "]");
        }
    }

    std::array<std::uint64_t, Words> words_{};
};

using Subset = BasicSubset<1>;

inline int intersection_size(const BasicSubset<1>& x, const BasicSubset<1>& y) {
    return std::popcount(x.words()[0] & y.words()[0]);
}

template <std::size_t W>
int intersection_size(const BasicSubset<W>& x, const BasicSubset<W>& y) {
    return (x & y).size();
}

}  // namespace setpair
