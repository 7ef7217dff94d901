// Independent reference implementations used by the tests. These stay
// deliberately naive (definitional scans, unit-by-unit accounting, direct
// formula evaluation) so they share no code path with the library.
#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

// Definitional h scan: try every candidate value and keep the largest one
// for which at least that many entries are >= it. O(n^2).
inline int reference_h(const std::vector<long long>& citations) {
    int best = 0;
    for (int cand = 0; cand <= static_cast<int>(citations.size()); ++cand) {
        int at_least = 0;
        for (long long c : citations)
            if (c >= cand) ++at_least;
        if (at_least >= cand) best = cand;
    }
    return best;
}

struct AreaShares {
    double lower_pct, square_pct, upper_pct;
};

// Accounts for every single citation unit: unit c of the paper at 1-based
// rank j belongs to the square when j <= h and c <= h, to the upper region
// when j <= h and c > h, and to the lower region when j > h. Requires the
// counts sorted descending.
inline AreaShares unit_partition_shares(const std::vector<long long>& sorted_desc, int h) {
    long long lower = 0, square = 0, upper = 0;
    for (std::size_t idx = 0; idx < sorted_desc.size(); ++idx) {
        const long long rank = static_cast<long long>(idx) + 1;
        for (long long c = 1; c <= sorted_desc[idx]; ++c) {
            if (rank > h) ++lower;
            else if (c <= h) ++square;
            else ++upper;
        }
    }
    const double total = static_cast<double>(lower + square + upper);
    return {100.0 * static_cast<double>(lower) / total,
            100.0 * static_cast<double>(square) / total,
            100.0 * static_cast<double>(upper) / total};
}

// Direct evaluation of the quadratic-plus-linear curve from its four
// coefficients; the break point is where the quadratic peaks.
inline double segmented_value(double b0, double b1, double b2, double b3, double x) {
    const double z0 = -b1 / (2.0 * b2);
    if (x < z0) return b0 + b1 * x + b2 * x * x;
    return b0 + b1 * z0 + b2 * z0 * z0 + b3 * (x - z0);
}

inline std::vector<double> segmented_series(double b0, double b1, double b2, double b3,
                                            std::size_t k) {
    std::vector<double> y(k);
    for (std::size_t j = 0; j < k; ++j)
        y[j] = segmented_value(b0, b1, b2, b3, static_cast<double>(j + 1));
    return y;
}

inline double sse_against(const std::vector<double>& y, double b0, double b1, double b2,
                          double b3) {
    double sse = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double r = y[j] - segmented_value(b0, b1, b2, b3, static_cast<double>(j + 1));
        sse += r * r;
    }
    return sse;
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 5) * 0x1.0p-27);
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

inline std::vector<long long> random_citations(std::mt19937& rng, int max_n, long long max_c) {
    const int n = uniform_int(rng, 0, max_n);
    std::vector<long long> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = uniform_int(rng, 0, static_cast<int>(max_c));
    return c;
}

}  // namespace oracle
