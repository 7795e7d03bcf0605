#pragma once

// Exact linear algebra over the rationals: matrices, subspaces given by row
// bases, rank by fraction-free elimination, intersections and sums, and the
// randomized construction of subspaces in general position.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "setpair/errors.hpp"
#include "setpair/exact_math.hpp"

namespace setpair {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;

    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows * cols) {
            throw DomainError("matrix entry count " + std::to_string(entries_.size()) +
                              " does not match " + std::to_string(rows) + "x" +
                              std::to_string(cols));
        }
    }

    static RationalMatrix from_rows(std::size_t cols, const std::vector<std::vector<Rational>>& rows) {
        RationalMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) {
                throw DomainError("row " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) + " entries, expected " +
                                  std::to_string(cols));
            }
            std::copy(rows[r].begin(), rows[r].end(), m.row_begin(r));
        }
        return m;
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const {
        return {entries_.data() + r * cols_, cols_};
    }

    const std::vector<Rational>& entries() const noexcept { return entries_; }

    RationalMatrix transposed() const {
        RationalMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    /// Rows of `top` followed by rows of `bottom`.
    static RationalMatrix stacked(const RationalMatrix& top, const RationalMatrix& bottom) {
        if (top.cols_ != bottom.cols_) {
            throw AmbientMismatch("cannot stack matrices with " + std::to_string(top.cols_) +
                                  " and " + std::to_string(bottom.cols_) + " columns");
        }
        std::vector<Rational> entries = top.entries_;
        entries.insert(entries.end(), bottom.entries_.begin(), bottom.entries_.end());
        return RationalMatrix(top.rows_ + bottom.rows_, top.cols_, std::move(entries));
    }

    /// Copy with `extra` zero columns appended on the right.
    RationalMatrix padded(std::size_t extra) const {
        RationalMatrix out(rows_, cols_ + extra);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
        return out;
    }

    friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
        if (x.cols_ != y.rows_) throw DomainError("matrix product dimension mismatch");
        RationalMatrix out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += x(i, k) * y(k, j);
            }
        return out;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::vector<Rational>::iterator row_begin(std::size_t r) {
        return entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

namespace detail {

/// Each row scaled by the lcm of its denominators, so all entries are integers.
inline std::vector<std::vector<BigInt>> integer_rows(const RationalMatrix& m) {
    std::vector<std::vector<BigInt>> out(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BigInt scale = 1;
        for (const auto& x : m.row(r)) {
            scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(x));
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rational& x = m(r, c);
            out[r][c] = boost::multiprecision::numerator(x) *
                        (scale / boost::multiprecision::denominator(x));
        }
    }
    return out;
}

}  // namespace detail

/// Exact rank by Bareiss fraction-free elimination. Rows are first cleared of
/// denominators; every intermediate entry is then a minor of that integer
/// matrix, so the division by the previous pivot is exact.
inline std::size_t rank(const RationalMatrix& m) {
    auto a = detail::integer_rows(m);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

struct RowEchelon {
    RationalMatrix reduced;            // nonzero rows of the reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form by Gauss-Jordan over the rationals.
inline RowEchelon rref(const RationalMatrix& m) {
    RationalMatrix a = m;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        }
        const Rational inv = Rational(1) / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<Rational> kept(a.entries().begin(),
                               a.entries().begin() + static_cast<std::ptrdiff_t>(r * cols));
    return {RationalMatrix(r, cols, std::move(kept)), std::move(pivots)};
}

/// Rows form a basis of the right null space {x : m x = 0}.
inline RationalMatrix kernel(const RationalMatrix& m) {
    const auto [reduced, pivots] = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> x(cols, Rational(0));
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -reduced(r, free);
        basis.push_back(std::move(x));
    }
    return RationalMatrix::from_rows(cols, basis);
}

/// Subspace of Q^n spanned by the rows of an independent basis.
/// The zero subspace has a basis with no rows.
class Subspace {
public:
    Subspace(std::size_t ambient_dim, RationalMatrix basis)
        : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
        if (ambient_dim_ == 0) throw DomainError("ambient dimension must be positive");
        if (basis_.cols() != ambient_dim_) {
            throw AmbientMismatch("basis has " + std::to_string(basis_.cols()) +
                                  " columns, ambient dimension is " + std::to_string(ambient_dim_));
        }
        if (rank(basis_) != basis_.rows()) throw DomainError("basis rows are linearly dependent");
    }

    /// Span of arbitrary generators, stored as its reduced row echelon basis.
    static Subspace span(std::size_t ambient_dim, const RationalMatrix& generators) {
        if (generators.cols() != ambient_dim) {
            throw AmbientMismatch("generators have " + std::to_string(generators.cols()) +
                                  " columns, ambient dimension is " + std::to_string(ambient_dim));
        }
        return Subspace(ambient_dim, rref(generators).reduced, Trusted{});
    }

    static Subspace zero(std::size_t ambient_dim) {
        return Subspace(ambient_dim, RationalMatrix(0, ambient_dim));
    }

    static Subspace full(std::size_t ambient_dim) {
        return Subspace(ambient_dim, RationalMatrix::identity(ambient_dim), Trusted{});
    }

    /// span{e_i : i in indices}, indices 1-based and strictly increasing.
    static Subspace coordinate(std::size_t ambient_dim, const std::vector<int>& indices) {
        RationalMatrix basis(indices.size(), ambient_dim);
        for (std::size_t r = 0; r < indices.size(); ++r) {
            const int i = indices[r];
            if (i < 1 || static_cast<std::size_t>(i) > ambient_dim) {
                throw DomainError("coordinate index " + std::to_string(i) + " outside [1, " +
                                  std::to_string(ambient_dim) + "]");
            }
            basis(r, static_cast<std::size_t>(i - 1)) = 1;
        }
        return Subspace(ambient_dim, std::move(basis));
    }

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const RationalMatrix& basis() const noexcept { return basis_; }

    /// The same subspace embedded in Q^(n+extra) via zero coordinates.
    Subspace padded(std::size_t extra) const {
        return Subspace(ambient_dim_ + extra, basis_.padded(extra), Trusted{});
    }

    /// Image under x -> x q for an invertible n x n matrix q.
    Subspace transformed(const RationalMatrix& q) const {
        if (q.rows() != ambient_dim_ || q.cols() != ambient_dim_) {
            throw AmbientMismatch("change of basis must be " + std::to_string(ambient_dim_) + "x" +
                                  std::to_string(ambient_dim_));
        }
        return Subspace(ambient_dim_, basis_ * q);
    }

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    struct Trusted {};
    Subspace(std::size_t ambient_dim, RationalMatrix basis, Trusted)
        : ambient_dim_(ambient_dim), basis_(std::move(basis)) {}

    std::size_t ambient_dim_;
    RationalMatrix basis_;
};

namespace detail {

inline void require_same_ambient(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) {
        throw AmbientMismatch("ambient dimensions differ: " + std::to_string(u.ambient_dim()) +
                              " vs " + std::to_string(v.ambient_dim()));
    }
}

}  // namespace detail

inline std::size_t intersection_dim(const Subspace& u, const Subspace& v) {
    detail::require_same_ambient(u, v);
    return u.dim() + v.dim() - rank(RationalMatrix::stacked(u.basis(), v.basis()));
}

/// U n V. Left-kernel vectors (x, y) of the stacked bases satisfy
/// x U = -y V, so x U runs over the intersection.
inline Subspace intersection_basis(const Subspace& u, const Subspace& v) {
    detail::require_same_ambient(u, v);
    const auto stack = RationalMatrix::stacked(u.basis(), v.basis());
    const auto left = kernel(stack.transposed());
    RationalMatrix coeffs(left.rows(), u.dim());
    for (std::size_t r = 0; r < left.rows(); ++r)
        for (std::size_t c = 0; c < u.dim(); ++c) coeffs(r, c) = left(r, c);
    return Subspace::span(u.ambient_dim(), coeffs * u.basis());
}

inline Subspace sum_subspace(const Subspace& u, const Subspace& v) {
    detail::require_same_ambient(u, v);
    return Subspace::span(u.ambient_dim(), RationalMatrix::stacked(u.basis(), v.basis()));
}

/// Seed of the attempt-th retry, derived by a splitmix64 step.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t attempt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (attempt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// rows x cols matrix with entries uniform in [-bound, bound].
inline RationalMatrix random_integer_matrix(std::size_t rows, std::size_t cols, std::int64_t bound,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
    return m;
}

/// Random invertible n x n integer matrix (resampled until nonsingular).
inline RationalMatrix random_invertible_matrix(std::size_t n, std::uint64_t seed,
                                               std::int64_t bound = 9) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        auto m = random_integer_matrix(n, n, bound, derive_seed(seed, attempt));
        if (rank(m) == n) return m;
    }
}

inline constexpr int kRetryBudget = 32;

struct GeneralPositionResult {
    Subspace space;
    int attempts = 0;  // samples drawn, including the accepted one
};

/// Condition dim(W n V') = max(dim W - t, 0) for every obstacle W.
inline bool in_general_position(const Subspace& candidate, const std::vector<Subspace>& obstacles,
                                std::size_t t) {
    return std::all_of(obstacles.begin(), obstacles.end(), [&](const Subspace& w) {
        const std::size_t expected = w.dim() > t ? w.dim() - t : 0;
        return intersection_dim(w, candidate) == expected;
    });
}

/// Samples a codimension-t subspace V' of Q^n and accepts it once it meets
/// every obstacle W in dimension max(dim W - t, 0). Entries are drawn from
/// [-M, M] with M = 1000 * (obstacles + 1).
inline GeneralPositionResult find_general_position(const std::vector<Subspace>& obstacles,
                                                   std::size_t t, std::size_t n,
                                                   std::uint64_t seed) {
    if (n == 0) throw DomainError("ambient dimension must be positive");
    if (t > n) {
        throw DomainError("codimension " + std::to_string(t) + " exceeds ambient dimension " +
                          std::to_string(n));
    }
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        if (obstacles[i].ambient_dim() != n) {
            throw AmbientMismatch("obstacle " + std::to_string(i + 1) + " lives in dimension " +
                                  std::to_string(obstacles[i].ambient_dim()) + ", expected " +
                                  std::to_string(n));
        }
        if (obstacles[i].dim() >= n) {
            throw DomainError("obstacle " + std::to_string(i + 1) +
                              " is the whole space; general position needs proper subspaces");
        }
    }
    if (t == 0) return {Subspace::full(n), 0};

    const std::size_t k = n - t;
    const auto bound = static_cast<std::int64_t>(1000 * (obstacles.size() + 1));
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        auto rows = random_integer_matrix(k, n, bound,
                                          derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        if (rank(rows) != k) continue;
        Subspace candidate(n, std::move(rows));
        if (in_general_position(candidate, obstacles, t)) return {std::move(candidate), attempt + 1};
    }
    throw ConstructionFailure("no subspace in general position found", kRetryBudget);
}

inline Subspace general_position_subspace(const std::vector<Subspace>& obstacles, std::size_t t,
                                          std::size_t n, std::uint64_t seed) {
    return find_general_position(obstacles, t, n, seed).space;
}

}  // namespace setpair
