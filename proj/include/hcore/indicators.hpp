#pragma once

#include <string>
#include <vector>

#include "hcore/errors.hpp"
#include "hcore/profile.hpp"

namespace hcore {

/// h index plus the decomposition of the citation distribution's area into
/// the h-square block, the excess citations of core papers (upper), and the
/// citations of papers outside the core (lower), each as a percent of the
/// total. The three shares sum to 100 whenever the total is positive.
struct IndicatorSet {
    int h = 0;
    long long total_citations = 0;
    double h2_lower_pct = 0.0;
    double h2_pct = 0.0;
    double h2_upper_pct = 0.0;
    int hirsch_core_size = 0;
};

enum class PerformanceType { Perfectionist, Prolific, MassProducer };

inline const char* to_string(PerformanceType t) {
    switch (t) {
        case PerformanceType::Perfectionist: return "perfectionist";
        case PerformanceType::Prolific: return "prolific";
        case PerformanceType::MassProducer: return "mass producer";
    }
    return "?";
}

/// Thresholds (in percent) separating the three performance types.
struct ClassificationConfig {
    double upper_threshold = 75.0;  // h2_upper at or above this ...
    double lower_cap = 10.0;        // ... and h2_lower at or below this: perfectionist
    double lower_threshold = 40.0;  // h2_lower at or above this: mass producer
};

/// Largest h such that at least h papers have >= h citations each.
inline int compute_h(const ScientistProfile& profile) {
    const auto& c = profile.citations();
    int h = 0;
    while (h < static_cast<int>(c.size()) && c[static_cast<std::size_t>(h)] >= h + 1) ++h;
    return h;
}

/// The h most-cited papers (all with at least h citations).
inline std::vector<long long> hirsch_core(const ScientistProfile& profile) {
    const int h = compute_h(profile);
    const auto& c = profile.citations();
    return std::vector<long long>(c.begin(), c.begin() + h);
}

inline IndicatorSet compute_areas(const ScientistProfile& profile) {
    const long long total = profile.total_citations();
    if (total == 0)
        throw ZeroCitations("area shares undefined for scientist '" + profile.id() +
                            "': zero total citations");
    const int h = compute_h(profile);
    const auto& c = profile.citations();

    long long upper = 0;
    for (int j = 0; j < h; ++j) upper += c[static_cast<std::size_t>(j)] - h;
    long long lower = 0;
    for (std::size_t j = static_cast<std::size_t>(h); j < c.size(); ++j) lower += c[j];
    const long long square = static_cast<long long>(h) * h;

    IndicatorSet out;
    out.h = h;
    out.hirsch_core_size = h;
    out.total_citations = total;
    out.h2_upper_pct = 100.0 * static_cast<double>(upper) / static_cast<double>(total);
    out.h2_pct = 100.0 * static_cast<double>(square) / static_cast<double>(total);
    out.h2_lower_pct = 100.0 * static_cast<double>(lower) / static_cast<double>(total);
    return out;
}

inline PerformanceType classify(const IndicatorSet& indicators,
                                const ClassificationConfig& config = {}) {
    const auto in_range = [](double v) { return v >= 0.0 && v <= 100.0; };
    if (!in_range(config.upper_threshold) || !in_range(config.lower_cap) ||
        !in_range(config.lower_threshold))
        throw InvalidThresholds("classification thresholds must lie in [0, 100]");
    if (config.lower_cap > config.lower_threshold)
        throw InvalidThresholds("lower_cap must not exceed lower_threshold");

    if (indicators.h2_upper_pct >= config.upper_threshold &&
        indicators.h2_lower_pct <= config.lower_cap)
        return PerformanceType::Perfectionist;
    if (indicators.h2_lower_pct >= config.lower_threshold)
        return PerformanceType::MassProducer;
    return PerformanceType::Prolific;
}

}  // namespace hcore
