#pragma once

#include <cstddef>
#include <vector>

namespace setpair {

/// One violated constraint. Indices are 1-based; i == j marks a
/// self-intersection above t, i != j a cross-intersection of at most t.
struct Witness {
    std::size_t i = 0;
    std::size_t j = 0;
    int observed = 0;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Verdict of a t-system check.
/// strong implies skew, skew implies self_ok, and witnesses is empty iff strong.
struct ClassificationReport {
    int t = 0;
    bool self_ok = true;
    bool strong = true;
    bool skew = true;
    std::vector<Witness> witnesses;

    friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Shared classification kernel. `meet(i, j)` returns the size (or
/// dimension) of the intersection of the i-th first member with the j-th
/// second member, both 0-based.
template <class Meet>
ClassificationReport classify_by(std::size_t m, int t, Meet&& meet) {
    ClassificationReport report;
    report.t = t;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const int observed = meet(i, j);
            if (i == j) {
                if (observed > t) {
                    report.self_ok = false;
                    report.witnesses.push_back({i + 1, j + 1, observed});
                }
            } else if (observed <= t) {
                if (i < j) report.skew = false;
                report.witnesses.push_back({i + 1, j + 1, observed});
            }
        }
    }
    report.skew = report.skew && report.self_ok;
    report.strong = report.witnesses.empty();
    return report;
}

}  // namespace setpair
