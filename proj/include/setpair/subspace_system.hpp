#pragma once

// Systems of subspace pairs (U_i, V_i) in a common ambient space Q^n:
// classification, the fractional sum, the coordinate embedding of set
// systems, and the constructions that reduce a t-system to a 0-system and
// extend the V_i to a common dimension.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "setpair/classification.hpp"
#include "setpair/errors.hpp"
#include "setpair/exact_math.hpp"
#include "setpair/linalg.hpp"
#include "setpair/set_pair.hpp"

namespace setpair {

struct SubspacePair {
    Subspace u_space;
    Subspace v_space;

    std::size_t u() const { return u_space.dim(); }
    std::size_t v() const { return v_space.dim(); }

    friend bool operator==(const SubspacePair&, const SubspacePair&) = default;
};

class SubspacePairSystem {
public:
    explicit SubspacePairSystem(std::size_t ambient_dim, std::vector<SubspacePair> pairs = {})
        : ambient_dim_(ambient_dim), pairs_(std::move(pairs)) {
        if (ambient_dim_ == 0) throw DomainError("ambient dimension must be positive");
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (pairs_[i].u_space.ambient_dim() != ambient_dim_ ||
                pairs_[i].v_space.ambient_dim() != ambient_dim_) {
                throw AmbientMismatch("pair " + std::to_string(i + 1) +
                                      " does not live in dimension " + std::to_string(ambient_dim_));
            }
        }
    }

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t m() const noexcept { return pairs_.size(); }
    const std::vector<SubspacePair>& pairs() const noexcept { return pairs_; }
    const SubspacePair& operator[](std::size_t i) const { return pairs_[i]; }

    friend bool operator==(const SubspacePairSystem&, const SubspacePairSystem&) = default;

private:
    std::size_t ambient_dim_;
    std::vector<SubspacePair> pairs_;
};

inline ClassificationReport classify_subspace(const SubspacePairSystem& system, int t) {
    const auto& pairs = system.pairs();
    return classify_by(pairs.size(), t, [&](std::size_t i, std::size_t j) {
        return static_cast<int>(intersection_dim(pairs[i].u_space, pairs[j].v_space));
    });
}

/// Sum of 1 / C(u_i + v_i - 2t, u_i - t).
inline Rational subspace_furedi_sum(const SubspacePairSystem& system, int t) {
    Rational total = 0;
    for (std::size_t i = 0; i < system.m(); ++i) {
        const auto u = static_cast<std::int64_t>(system[i].u());
        const auto v = static_cast<std::int64_t>(system[i].v());
        if (u < t || v < t) {
            throw DegeneratePairError(i + 1, "dim U=" + std::to_string(u) + ", dim V=" +
                                                 std::to_string(v) + " below t=" +
                                                 std::to_string(t));
        }
        total += reciprocal(binomial(u + v - 2 * t, u - t));
    }
    return total;
}

/// (A, B) -> (V(A), V(B)) with V(I) = span{e_i : i in I} in Q^n.
template <std::size_t W>
SubspacePairSystem embed_sets_as_coordinate_subspaces(const BasicSetPairSystem<W>& system) {
    const auto n = static_cast<std::size_t>(system.ground_size());
    std::vector<SubspacePair> pairs;
    pairs.reserve(system.m());
    for (const auto& p : system.pairs()) {
        pairs.push_back({Subspace::coordinate(n, p.a_set.elements()),
                         Subspace::coordinate(n, p.b_set.elements())});
    }
    return SubspacePairSystem(n, std::move(pairs));
}

/// Embeds everything in Q^(n+extra); intersection dimensions are unchanged.
inline SubspacePairSystem pad_ambient(const SubspacePairSystem& system, std::size_t extra) {
    if (extra == 0) return system;
    std::vector<SubspacePair> pairs;
    pairs.reserve(system.m());
    for (const auto& p : system.pairs()) {
        pairs.push_back({p.u_space.padded(extra), p.v_space.padded(extra)});
    }
    return SubspacePairSystem(system.ambient_dim() + extra, std::move(pairs));
}

/// Applies one invertible change of basis to every subspace.
inline SubspacePairSystem change_basis(const SubspacePairSystem& system, const RationalMatrix& q) {
    std::vector<SubspacePair> pairs;
    pairs.reserve(system.m());
    for (const auto& p : system.pairs()) {
        pairs.push_back({p.u_space.transformed(q), p.v_space.transformed(q)});
    }
    return SubspacePairSystem(system.ambient_dim(), std::move(pairs));
}

namespace detail {

inline std::string describe_witnesses(const ClassificationReport& report) {
    std::string out;
    for (const auto& w : report.witnesses) {
        if (!out.empty()) out += ", ";
        out += "(" + std::to_string(w.i) + "," + std::to_string(w.j) + ")=" +
               std::to_string(w.observed);
        if (out.size() > 200) {
            out += ", ...";
            break;
        }
    }
    return out;
}

[[noreturn]] inline void verification_failed(const std::string& what) {
    throw Error("construction verification failed: " + what);
}

}  // namespace detail

struct ReductionResult {
    SubspacePairSystem system;  // {(U_i n W0, V_i n W0)}
    Subspace w0;
    std::size_t padding = 0;    // zero columns appended before reducing
    int attempts = 0;
};

/// Intersects a skew t-system with a codimension-t subspace W0 in general
/// position to U_i, V_i and U_i n V_i. The result is a skew 0-system (strong
/// when the input is) whose dimensions all drop by exactly t and whose
/// fractional sum at t = 0 matches the input's at t, term by term. All of this
/// is verified before returning.
inline ReductionResult reduce_with_details(const SubspacePairSystem& input, int t,
                                           std::uint64_t seed) {
    if (t < 0) throw DomainError("t must be non-negative");
    const auto report = classify_subspace(input, t);
    if (!report.skew) {
        throw HypothesisError("not a skew subspace " + std::to_string(t) + "-system; witnesses " +
                              detail::describe_witnesses(report));
    }
    const auto tt = static_cast<std::size_t>(t);
    for (std::size_t i = 0; i < input.m(); ++i) {
        if (input[i].u() < tt || input[i].v() < tt) {
            throw DegeneratePairError(i + 1, "dimension below t=" + std::to_string(t));
        }
    }
    if (t == 0) return {input, Subspace::full(input.ambient_dim()), 0, 0};

    std::vector<Subspace> meets;
    meets.reserve(input.m());
    for (const auto& p : input.pairs()) meets.push_back(intersection_basis(p.u_space, p.v_space));

    std::size_t top = 0;
    for (std::size_t i = 0; i < input.m(); ++i) {
        top = std::max({top, input[i].u(), input[i].v(), meets[i].dim()});
    }
    const std::size_t padding = top >= input.ambient_dim() ? top - input.ambient_dim() + 1 : 0;
    const auto system = pad_ambient(input, padding);
    const std::size_t n = system.ambient_dim();

    std::vector<Subspace> obstacles;
    for (std::size_t i = 0; i < system.m(); ++i) {
        obstacles.push_back(system[i].u_space);
        obstacles.push_back(system[i].v_space);
        obstacles.push_back(meets[i].padded(padding));
    }
    auto found = find_general_position(obstacles, tt, n, seed);
    const Subspace& w0 = found.space;

    std::vector<SubspacePair> reduced;
    reduced.reserve(system.m());
    for (const auto& p : system.pairs()) {
        reduced.push_back({intersection_basis(p.u_space, w0), intersection_basis(p.v_space, w0)});
    }
    SubspacePairSystem out(n, std::move(reduced));

    for (std::size_t i = 0; i < out.m(); ++i) {
        if (out[i].u() != system[i].u() - tt || out[i].v() != system[i].v() - tt) {
            detail::verification_failed("pair " + std::to_string(i + 1) +
                                        " did not lose exactly t dimensions");
        }
        // U_i n V_i n W0 = 0
        if (intersection_dim(out[i].u_space, out[i].v_space) != 0) {
            detail::verification_failed("pair " + std::to_string(i + 1) +
                                        " keeps a nonzero self-intersection");
        }
        if (binomial(static_cast<std::int64_t>(out[i].u() + out[i].v()),
                     static_cast<std::int64_t>(out[i].u())) !=
            binomial(static_cast<std::int64_t>(system[i].u() + system[i].v()) - 2 * t,
                     static_cast<std::int64_t>(system[i].u()) - t)) {
            detail::verification_failed("term " + std::to_string(i + 1) + " changed");
        }
    }
    // U_i n V_j n W0 != 0 for i < j, and for all i != j on strong inputs
    const auto after = classify_subspace(out, 0);
    if (!after.skew || (report.strong && !after.strong)) {
        detail::verification_failed("reduced system lost its cross-intersections: " +
                                    detail::describe_witnesses(after));
    }
    return {std::move(out), w0, padding, found.attempts};
}

inline SubspacePairSystem reduce_to_zero_system(const SubspacePairSystem& system, int t,
                                                std::uint64_t seed) {
    return reduce_with_details(system, t, seed).system;
}

/// Stable reorder by dim U ascending, then dim V descending.
inline SubspacePairSystem sort_for_skew(const SubspacePairSystem& system) {
    std::vector<std::size_t> order(system.m());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (system[x].u() != system[y].u()) return system[x].u() < system[y].u();
        return system[x].v() > system[y].v();
    });
    std::vector<SubspacePair> pairs;
    pairs.reserve(order.size());
    for (auto i : order) pairs.push_back(system[i]);
    return SubspacePairSystem(system.ambient_dim(), std::move(pairs));
}

/// True when dim U_i is nondecreasing and dim V_i nonincreasing.
inline bool is_monotone_ordered(const SubspacePairSystem& system) {
    for (std::size_t i = 1; i < system.m(); ++i) {
        if (system[i].u() < system[i - 1].u() || system[i].v() > system[i - 1].v()) return false;
    }
    return true;
}

/// Replaces each V_i by W_i containing it with dim W_i = max_j dim V_j and
/// U_i n W_i = U_i n V_i. Each added vector is sampled outside U_i + W_i and
/// the ambient space grows when there is no room for it.
inline SubspacePairSystem extend_to_uniform_v(const SubspacePairSystem& input, int t,
                                              std::uint64_t seed = 1) {
    const auto report = classify_subspace(input, t);
    if (!report.strong) {
        throw HypothesisError("not a strong subspace " + std::to_string(t) + "-system; witnesses " +
                              detail::describe_witnesses(report));
    }
    std::size_t v = 0;
    for (const auto& p : input.pairs()) v = std::max(v, p.v());

    std::size_t needed = input.ambient_dim();
    for (const auto& p : input.pairs()) {
        needed = std::max(needed, sum_subspace(p.u_space, p.v_space).dim() + (v - p.v()));
    }
    const auto system = pad_ambient(input, needed - input.ambient_dim());
    const std::size_t n = system.ambient_dim();
    const auto bound = static_cast<std::int64_t>(1000 * (system.m() + 1));

    std::vector<SubspacePair> pairs;
    pairs.reserve(system.m());
    for (std::size_t i = 0; i < system.m(); ++i) {
        const auto& p = system[i];
        RationalMatrix w = p.v_space.basis();
        for (std::size_t step = 0; w.rows() < v; ++step) {
            const auto span_rank = rank(RationalMatrix::stacked(p.u_space.basis(), w));
            bool added = false;
            for (int attempt = 0; attempt < kRetryBudget && !added; ++attempt) {
                const auto salt = derive_seed(derive_seed(seed, i), step);
                auto row = random_integer_matrix(1, n, bound,
                                                 derive_seed(salt, static_cast<std::uint64_t>(attempt)));
                auto grown = RationalMatrix::stacked(w, row);
                if (rank(RationalMatrix::stacked(p.u_space.basis(), grown)) == span_rank + 1) {
                    w = std::move(grown);
                    added = true;
                }
            }
            if (!added) {
                throw ConstructionFailure("no extension vector for pair " + std::to_string(i + 1),
                                          kRetryBudget);
            }
        }
        Subspace extended(n, std::move(w));
        if (intersection_dim(p.u_space, extended) != intersection_dim(p.u_space, p.v_space)) {
            detail::verification_failed("extension of pair " + std::to_string(i + 1) +
                                        " enlarged its self-intersection");
        }
        pairs.push_back({p.u_space, std::move(extended)});
    }
    SubspacePairSystem out(n, std::move(pairs));
    if (!classify_subspace(out, t).strong) detail::verification_failed("extension is not strong");
    return out;
}

}  // namespace setpair
