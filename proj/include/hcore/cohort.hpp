#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hcore/errors.hpp"
#include "hcore/indicators.hpp"
#include "hcore/profile.hpp"
#include "hcore/srm.hpp"

namespace hcore {

/// One h-index bin; an absent upper bound means the bin is open-ended.
struct HBin {
    std::string label;
    int lower = 0;
    std::optional<int> upper;

    bool contains(int h) const { return h >= lower && (!upper || h <= *upper); }
};

/// The standard partition: <=7, 8-9, 10-11, ..., 18-19, >=20.
inline std::vector<HBin> default_h_bins() {
    return {{"<=7", 0, 7},    {"8-9", 8, 9},    {"10-11", 10, 11}, {"12-13", 12, 13},
            {"14-15", 14, 15}, {"16-17", 16, 17}, {"18-19", 18, 19}, {">=20", 20, std::nullopt}};
}

/// Bins must partition the non-negative integers: start at 0, be contiguous,
/// and end with one open bin.
inline void validate_bins(const std::vector<HBin>& bins) {
    if (bins.empty()) throw InvalidBins("no bins given");
    if (bins.front().lower != 0) throw InvalidBins("first bin must start at 0");
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const HBin& b = bins[i];
        const bool last = i + 1 == bins.size();
        if (!last) {
            if (!b.upper) throw InvalidBins("only the last bin may be open-ended");
            if (*b.upper < b.lower)
                throw InvalidBins("bin '" + b.label + "' has upper < lower");
            if (bins[i + 1].lower != *b.upper + 1)
                throw InvalidBins("gap or overlap between '" + b.label + "' and '" +
                                  bins[i + 1].label + "'");
        } else if (b.upper) {
            throw InvalidBins("last bin must be open-ended to cover all h values");
        }
    }
}

inline std::size_t find_bin(const std::vector<HBin>& bins, int h) {
    for (std::size_t i = 0; i < bins.size(); ++i)
        if (bins[i].contains(h)) return i;
    throw InvalidBins("no bin contains h = " + std::to_string(h));
}

/// Group profiles by the bin of their h index; result is parallel to `bins`
/// and holds indices into `profiles`.
inline std::vector<std::vector<std::size_t>> bin_by_h(
    const std::vector<ScientistProfile>& profiles, const std::vector<HBin>& bins) {
    validate_bins(bins);
    std::vector<std::vector<std::size_t>> groups(bins.size());
    for (std::size_t i = 0; i < profiles.size(); ++i)
        groups[find_bin(bins, compute_h(profiles[i]))].push_back(i);
    return groups;
}

/// Sample statistics; mean/min/max absent for empty input, sd additionally
/// absent for a single value (n-1 denominator).
struct SummaryStats {
    std::size_t count = 0;
    std::optional<double> mean;
    std::optional<double> sd;
    std::optional<double> min;
    std::optional<double> max;
};

inline SummaryStats summarize(const std::vector<double>& values) {
    SummaryStats s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    double lo = values[0], hi = values[0];
    for (double v : values) {
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double mean = sum / static_cast<double>(values.size());
    s.mean = mean;
    s.min = lo;
    s.max = hi;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

enum class Metric { H2Lower, H2, H2Upper, SrmValue };

inline const char* to_string(Metric m) {
    switch (m) {
        case Metric::H2Lower: return "h2_lower";
        case Metric::H2: return "h2";
        case Metric::H2Upper: return "h2_upper";
        case Metric::SrmValue: return "srm";
    }
    return "?";
}

inline Metric parse_metric(const std::string& name) {
    if (name == "h2_lower") return Metric::H2Lower;
    if (name == "h2") return Metric::H2;
    if (name == "h2_upper") return Metric::H2Upper;
    if (name == "srm" || name == "srm_value") return Metric::SrmValue;
    throw UnknownMetric("unknown metric '" + name +
                        "' (expected h2_lower, h2, h2_upper or srm)");
}

struct CohortRow {
    HBin bin;
    SummaryStats stats;
};

/// Per-bin descriptive statistics of one metric plus a Total row; scientists
/// without a valid value for the metric are counted as excluded.
struct CohortTable {
    Metric metric = Metric::H2;
    std::vector<CohortRow> rows;
    SummaryStats total;
    std::size_t cohort_size = 0;
    std::size_t excluded_count = 0;
};

/// Metric value of one scientist, or absent when it cannot be computed
/// (zero citations for area shares; unusable fit for the sRM value).
inline std::optional<double> metric_value(const ScientistProfile& profile, Metric metric,
                                          const FitOutcome* outcome) {
    if (metric == Metric::SrmValue) {
        if (outcome && outcome->usable()) return outcome->fit->z0;
        return std::nullopt;
    }
    if (profile.total_citations() == 0) return std::nullopt;
    const IndicatorSet ind = compute_areas(profile);
    switch (metric) {
        case Metric::H2Lower: return ind.h2_lower_pct;
        case Metric::H2: return ind.h2_pct;
        case Metric::H2Upper: return ind.h2_upper_pct;
        default: return std::nullopt;
    }
}

/// `outcomes` are matched to profiles by scientist id and only consulted for
/// the sRM metric; pass an empty vector for area-share tables.
inline CohortTable build_table(const std::vector<ScientistProfile>& profiles,
                               const std::vector<FitOutcome>& outcomes, Metric metric,
                               const std::vector<HBin>& bins = default_h_bins()) {
    const auto groups = bin_by_h(profiles, bins);
    std::map<std::string, const FitOutcome*> by_id;
    for (const FitOutcome& o : outcomes) by_id[o.scientist_id] = &o;

    CohortTable table;
    table.metric = metric;
    table.cohort_size = profiles.size();
    std::vector<double> all_values;
    for (std::size_t b = 0; b < bins.size(); ++b) {
        std::vector<double> values;
        for (std::size_t idx : groups[b]) {
            const ScientistProfile& p = profiles[idx];
            const auto it = by_id.find(p.id());
            const FitOutcome* outcome = it == by_id.end() ? nullptr : it->second;
            if (auto v = metric_value(p, metric, outcome)) {
                values.push_back(*v);
                all_values.push_back(*v);
            } else {
                ++table.excluded_count;
            }
        }
        table.rows.push_back({bins[b], summarize(values)});
    }
    table.total = summarize(all_values);
    return table;
}

// ---- synthetic cohort generation -------------------------------------------

/// Knobs of the desk-scale cohort generator: publication counts are
/// log-normal around `pub_mean`, per-paper citation counts follow a bounded
/// discrete power law whose tail exponent is drawn per scientist.
struct SyntheticSpec {
    int size = 297;
    double pub_mean = 20.5;
    double pub_sigma = 0.45;  // sigma of log publication count
    double exponent_min = 2.0;
    double exponent_max = 2.6;
    double citation_scale = 15.0;
    long long max_citations = 10000;
};

namespace detail {

// Uniform in [0, 1) from the top 53 bits; bit-stable across platforms,
// unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double std_normal(std::mt19937_64& rng) {
    double u1 = unit_uniform(rng);
    while (u1 == 0.0) u1 = unit_uniform(rng);
    const double u2 = unit_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// Discrete power-law citation count: floor of a scaled Pareto draw with tail
// exponent `alpha`, truncated at `cap`.
inline long long power_law_citations(std::mt19937_64& rng, double alpha, double scale,
                                     long long cap) {
    const double u = unit_uniform(rng);
    const double x = scale * (std::pow(1.0 - u, -1.0 / (alpha - 1.0)) - 1.0);
    if (!(x < static_cast<double>(cap))) return cap;
    return static_cast<long long>(std::floor(x));
}

}  // namespace detail

inline void validate_spec(const SyntheticSpec& spec) {
    if (spec.size < 0) throw InvalidSpec("cohort size must be non-negative");
    if (!(spec.pub_mean > 0.0)) throw InvalidSpec("pub_mean must be positive");
    if (!(spec.pub_sigma >= 0.0)) throw InvalidSpec("pub_sigma must be non-negative");
    if (!(spec.exponent_min > 1.0))
        throw InvalidSpec("power-law exponent must exceed 1");
    if (!(spec.exponent_max >= spec.exponent_min))
        throw InvalidSpec("exponent_max must be >= exponent_min");
    if (!(spec.citation_scale > 0.0)) throw InvalidSpec("citation_scale must be positive");
    if (spec.max_citations <= 0) throw InvalidSpec("max_citations must be positive");
}

/// Deterministic synthetic cohort: identical (spec, seed) gives identical
/// profiles, ids are zero-padded so id order equals generation order.
inline std::vector<ScientistProfile> generate_cohort(const SyntheticSpec& spec,
                                                     std::uint64_t seed) {
    validate_spec(spec);
    std::mt19937_64 rng(seed);
    const double mu = std::log(spec.pub_mean) - 0.5 * spec.pub_sigma * spec.pub_sigma;

    int width = 1;
    for (int v = spec.size; v >= 10; v /= 10) ++width;

    std::vector<ScientistProfile> cohort;
    cohort.reserve(static_cast<std::size_t>(spec.size));
    for (int i = 0; i < spec.size; ++i) {
        const double alpha =
            spec.exponent_min +
            detail::unit_uniform(rng) * (spec.exponent_max - spec.exponent_min);
        const double n_raw = std::exp(mu + spec.pub_sigma * detail::std_normal(rng));
        const long long n = std::clamp<long long>(std::llround(n_raw), 1, 5000);

        std::vector<long long> citations;
        citations.reserve(static_cast<std::size_t>(n));
        for (long long p = 0; p < n; ++p)
            citations.push_back(detail::power_law_citations(rng, alpha, spec.citation_scale,
                                                            spec.max_citations));
        std::string id = std::to_string(i + 1);
        id.insert(0, static_cast<std::size_t>(width) - id.size(), '0');
        cohort.emplace_back("s" + id, std::move(citations));
    }
    return cohort;
}

}  // namespace hcore
