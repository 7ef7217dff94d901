#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hcore/errors.hpp"
#include "hcore/indicators.hpp"
#include "hcore/profile.hpp"
#include "hcore/util.hpp"

namespace hcore {

/// Cumulative citation counts over descending citation rank. Ranks are
/// implicit: y[j] belongs to rank x = j + 1, so x runs exactly 1..k.
struct CumulativeSeries {
    std::vector<double> y;

    std::size_t size() const { return y.size(); }
    double rank(std::size_t j) const { return static_cast<double>(j + 1); }
};

inline CumulativeSeries build_series(const ScientistProfile& profile) {
    if (profile.paper_count() == 0)
        throw EmptyProfile("cannot build cumulative series for scientist '" + profile.id() +
                           "': no publications");
    CumulativeSeries s;
    s.y.reserve(profile.paper_count());
    double running = 0.0;
    for (long long c : profile.citations()) {
        running += static_cast<double>(c);
        s.y.push_back(running);
    }
    return s;
}

/// Parameters of the quadratic-plus-linear model: the curve is
/// b0 + b1*x + b2*x^2 left of the break point and continues linearly with
/// slope b3 from the quadratic's maximum onward.
struct SrmParams {
    double b0 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
};

/// Break point of the model: the maximum of the quadratic segment.
inline double break_point(const SrmParams& p) {
    if (p.b2 == 0.0)
        throw DegenerateQuadratic("b2 = 0: quadratic segment has no maximum");
    return -p.b1 / (2.0 * p.b2);
}

namespace detail {

// Non-throwing model evaluation used inside the fitter; b2 == 0 is treated as
// the continuous limit where the break point sits at infinity.
inline double eval_model(const SrmParams& p, double x) {
    if (p.b2 == 0.0) return p.b0 + p.b1 * x;
    const double z0 = -p.b1 / (2.0 * p.b2);
    if (x < z0) return p.b0 + x * (p.b1 + p.b2 * x);
    const double peak = p.b0 + z0 * (p.b1 + p.b2 * z0);
    return peak + p.b3 * (x - z0);
}

}  // namespace detail

inline double evaluate_model(const SrmParams& params, double x) {
    if (params.b2 == 0.0)
        throw DegenerateQuadratic("b2 = 0: quadratic segment has no maximum");
    return detail::eval_model(params, x);
}

enum class SeedGrid { Adaptive, AppendixA, Explicit };

struct FitConfig {
    double tol = 1e-10;       // relative SSE decrease that counts as converged
    double step_tol = 1e-10;  // parameter step norm that counts as converged
    int max_iter = 200;       // Gauss-Newton iterations per seed
    double r2_threshold = 0.90;
    int min_publications = 15;
    double part_separation_ratio = 3.0;  // initial slope vs tail slope, requirement (i)
    SeedGrid seed_grid = SeedGrid::Adaptive;
    // Used only when seed_grid == Explicit.
    std::vector<double> seeds_b0;
    std::vector<double> seeds_b1;
    std::vector<double> seeds_b2;
    std::vector<double> seeds_b3;
};

struct Requirement {
    bool satisfied = false;
    std::string detail;
};

/// The five preconditions for trusting an sRM fit, each with a short reason,
/// plus the thresholds the verdict was computed with.
struct ApplicabilityReport {
    Requirement two_parts_distinguishable;  // (i)
    Requirement converged;                  // (ii)
    Requirement r_squared_above_threshold;  // (iii)
    Requirement breakpoint_in_range;        // (iv)
    Requirement enough_publications;        // (v)
    double r2_threshold = 0.90;
    double part_separation_ratio = 3.0;
    int min_publications = 15;
    bool overall = false;

    /// Roman numerals of the failing requirements, e.g. "(i), (iii)".
    std::string failed_requirements() const {
        static constexpr const char* names[5] = {"(i)", "(ii)", "(iii)", "(iv)", "(v)"};
        const Requirement* reqs[5] = {&two_parts_distinguishable, &converged,
                                      &r_squared_above_threshold, &breakpoint_in_range,
                                      &enough_publications};
        std::string out;
        for (int i = 0; i < 5; ++i) {
            if (reqs[i]->satisfied) continue;
            if (!out.empty()) out += ", ";
            out += names[i];
        }
        return out;
    }
};

struct SrmFit {
    SrmParams params;
    double z0 = 0.0;  // the sRM value
    double r_squared = 0.0;
    double residual_variance = 0.0;
    double sse = 0.0;
    bool converged = false;
    int iterations = 0;
    ApplicabilityReport applicability;
};

namespace detail {

inline bool feasible(const SrmParams& p, std::size_t k) {
    if (!(p.b2 < 0.0)) return false;
    const double z0 = -p.b1 / (2.0 * p.b2);
    return z0 > 1.0 && z0 < static_cast<double>(k);
}

inline double sse_of(const SrmParams& p, const std::vector<double>& y) {
    double sse = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double r = y[j] - eval_model(p, static_cast<double>(j + 1));
        sse += r * r;
    }
    return sse;
}

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// Gaussian elimination with partial pivoting; false when a pivot vanishes.
inline bool solve4(Mat4 a, Vec4 b, Vec4& x) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int row = 3; row >= 0; --row) {
        double s = b[row];
        for (int c = row + 1; c < 4; ++c) s -= a[row][c] * x[c];
        x[row] = s / a[row][row];
    }
    return true;
}

inline Vec4 as_vec(const SrmParams& p) { return {p.b0, p.b1, p.b2, p.b3}; }
inline SrmParams as_params(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

// Central finite differences; step scaled to the parameter magnitude.
inline void jacobian_row(const SrmParams& p, double x, Vec4& row) {
    Vec4 theta = as_vec(p);
    for (int i = 0; i < 4; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(theta[i]));
        Vec4 hi = theta, lo = theta;
        hi[i] += h;
        lo[i] -= h;
        row[i] = (eval_model(as_params(hi), x) - eval_model(as_params(lo), x)) / (2.0 * h);
    }
}

struct SeedRun {
    SrmParams params;
    double sse = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool singular = false;
    int iterations = 0;
};

// Gauss-Newton with Levenberg-style damping on one starting point. Iterates
// that leave the feasible region (b2 >= 0 or break point outside (1, k)) are
// scored as infinitely bad so the damping escalates instead of clamping.
inline SeedRun run_seed(const std::vector<double>& y, SrmParams theta, const FitConfig& cfg) {
    constexpr double kLambdaMin = 1e-12;
    constexpr double kLambdaMax = 1e10;
    const std::size_t k = y.size();

    SeedRun out;
    out.params = theta;
    out.sse = sse_of(theta, y);

    double lambda = 1e-3;
    int iter = 0;
    bool ever_singular = false;
    while (iter < cfg.max_iter && !out.converged) {
        ++iter;
        Mat4 jtj{};
        Vec4 jtr{};
        Vec4 row{};
        for (std::size_t j = 0; j < k; ++j) {
            const double x = static_cast<double>(j + 1);
            jacobian_row(out.params, x, row);
            const double r = y[j] - eval_model(out.params, x);
            for (int a = 0; a < 4; ++a) {
                jtr[a] += row[a] * r;
                for (int b = a; b < 4; ++b) jtj[a][b] += row[a] * row[b];
            }
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < a; ++b) jtj[a][b] = jtj[b][a];

        double theta_norm = 0.0;
        for (double v : as_vec(out.params)) theta_norm += v * v;
        theta_norm = std::sqrt(theta_norm);

        bool stepped = false;
        while (lambda <= kLambdaMax) {
            Mat4 damped = jtj;
            for (int a = 0; a < 4; ++a)
                damped[a][a] += lambda * (jtj[a][a] > 0.0 ? jtj[a][a] : 1.0);
            Vec4 delta{};
            if (!solve4(damped, jtr, delta)) {
                ever_singular = true;
                lambda *= 10.0;
                continue;
            }
            Vec4 cand_v = as_vec(out.params);
            double step_norm = 0.0;
            for (int a = 0; a < 4; ++a) {
                cand_v[a] += delta[a];
                step_norm += delta[a] * delta[a];
            }
            step_norm = std::sqrt(step_norm);
            const SrmParams cand = as_params(cand_v);
            const bool cand_ok = feasible(cand, k);
            const double cand_sse =
                cand_ok ? sse_of(cand, y) : std::numeric_limits<double>::infinity();
            if (cand_ok && cand_sse <= out.sse) {
                const double rel =
                    (out.sse - cand_sse) / std::max(out.sse, 1e-300);
                out.params = cand;
                out.sse = cand_sse;
                lambda = std::max(lambda * 0.3, kLambdaMin);
                if (rel < cfg.tol || step_norm < cfg.step_tol * std::max(1.0, theta_norm))
                    out.converged = true;
                stepped = true;
                break;
            }
            // A vanishing proposed step that cannot improve a feasible point
            // means we are pinned at a minimum up to round-off.
            if (cand_ok && step_norm < cfg.step_tol * std::max(1.0, theta_norm)) {
                out.converged = true;
                stepped = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) break;  // damping exhausted without progress
    }
    out.iterations = iter;
    out.singular = ever_singular && !out.converged;
    return out;
}

inline void push_seed(std::vector<SrmParams>& seeds, double b0, double b1, double b2,
                      double b3, std::size_t k) {
    SrmParams p{b0, b1, b2, b3};
    if (!feasible(p, k)) return;
    for (const SrmParams& q : seeds)
        if (q.b0 == p.b0 && q.b1 == p.b1 && q.b2 == p.b2 && q.b3 == p.b3) return;
    seeds.push_back(p);
}

// Data-adaptive starting grid: intercepts near 0 and the first value, initial
// slopes around the head of the series, curvatures placed so candidate break
// points span the rank range, tail slopes from the observed tail.
inline std::vector<SrmParams> adaptive_seeds(const std::vector<double>& y) {
    const std::size_t k = y.size();
    const std::size_t q = std::max<std::size_t>(2, (k + 3) / 4);
    const double s_head = (y[q - 1] - y[0]) / static_cast<double>(q - 1);
    const double s_tail = (y[k - 1] - y[k - q]) / static_cast<double>(q - 1);

    std::vector<double> b0s = {0.0, y[0]};
    std::vector<double> b1s;
    for (double f : {0.5, 1.0, 1.5, 2.0})
        if (f * s_head > 0.0) b1s.push_back(f * s_head);
    if (y[0] > 0.0) b1s.push_back(y[0]);
    std::vector<double> z0s;
    for (double f : {0.15, 0.3, 0.5, 0.7, 0.9})
        z0s.push_back(std::min(std::max(2.0, f * static_cast<double>(k)),
                               static_cast<double>(k) - 1.0));
    std::vector<double> b3s = {0.0};
    if (s_tail > 0.0) {
        b3s.push_back(0.5 * s_tail);
        b3s.push_back(s_tail);
    }

    std::vector<SrmParams> seeds;
    for (double b0 : b0s)
        for (double b1 : b1s)
            for (double z0 : z0s)
                for (double b3 : b3s) push_seed(seeds, b0, b1, -b1 / (2.0 * z0), b3, k);
    return seeds;
}

// The literal NLIN-style grid (a: 35..70 by 25, b: 20..80 by 10,
// c: 4..-4 by -0.5, d: 2..-2 by -0.25), kept for fidelity runs on data of
// the original scale.
inline std::vector<SrmParams> appendix_a_seeds(std::size_t k) {
    std::vector<SrmParams> seeds;
    for (double a = 35.0; a <= 70.0 + 1e-9; a += 25.0)
        for (double b = 20.0; b <= 80.0 + 1e-9; b += 10.0)
            for (double c = 4.0; c >= -4.0 - 1e-9; c -= 0.5)
                for (double d = 2.0; d >= -2.0 - 1e-9; d -= 0.25)
                    push_seed(seeds, a, b, c, d, k);
    return seeds;
}

inline std::vector<SrmParams> explicit_seeds(const FitConfig& cfg, std::size_t k) {
    std::vector<SrmParams> seeds;
    for (double b0 : cfg.seeds_b0)
        for (double b1 : cfg.seeds_b1)
            for (double b2 : cfg.seeds_b2)
                for (double b3 : cfg.seeds_b3) push_seed(seeds, b0, b1, b2, b3, k);
    return seeds;
}

}  // namespace detail

/// Evaluate the five applicability requirements against a finished fit.
/// Always produces a report; never throws.
inline ApplicabilityReport check_applicability(const CumulativeSeries& series,
                                               const SrmFit& fit, const FitConfig& config) {
    using detail::strf;
    const std::size_t k = series.size();
    ApplicabilityReport rep;
    rep.r2_threshold = config.r2_threshold;
    rep.part_separation_ratio = config.part_separation_ratio;
    rep.min_publications = config.min_publications;

    const double b1 = fit.params.b1;
    const double b2 = fit.params.b2;
    const double b3 = fit.params.b3;

    // (i) a concave head whose initial slope clearly dominates the tail slope
    bool sep = b2 < 0.0 && b1 > 0.0;
    double ratio = std::numeric_limits<double>::infinity();
    if (sep && b3 != 0.0) {
        ratio = b1 / std::abs(b3);
        sep = ratio >= config.part_separation_ratio;
    }
    rep.two_parts_distinguishable.satisfied = sep;
    rep.two_parts_distinguishable.detail =
        b2 >= 0.0 ? "no concave quadratic part (b2 >= 0)"
                  : strf("initial slope %.4g vs tail slope %.4g (ratio %.3g, needs >= %.3g)",
                         b1, b3, ratio, config.part_separation_ratio);

    rep.converged.satisfied = fit.converged;
    rep.converged.detail = fit.converged
                               ? strf("converged after %d iterations", fit.iterations)
                               : strf("no convergence within %d iterations", fit.iterations);

    rep.r_squared_above_threshold.satisfied = fit.r_squared > config.r2_threshold;
    rep.r_squared_above_threshold.detail =
        strf("R^2 = %.4f (needs > %.2f)", fit.r_squared, config.r2_threshold);

    rep.breakpoint_in_range.satisfied =
        fit.z0 >= 1.0 && fit.z0 <= static_cast<double>(k);
    rep.breakpoint_in_range.detail = strf("break point %.2f, rank range [1, %zu]", fit.z0, k);

    rep.enough_publications.satisfied = static_cast<int>(k) >= config.min_publications;
    rep.enough_publications.detail =
        strf("%zu publications (needs >= %d)", k, config.min_publications);

    rep.overall = rep.two_parts_distinguishable.satisfied && rep.converged.satisfied &&
                  rep.r_squared_above_threshold.satisfied &&
                  rep.breakpoint_in_range.satisfied && rep.enough_publications.satisfied;
    return rep;
}

/// Fit the segmented model to a cumulative series by grid-seeded damped
/// Gauss-Newton least squares. The best seed by final SSE wins; ties go to
/// fewer iterations, then the earlier seed.
inline SrmFit fit(const CumulativeSeries& series, const FitConfig& config = {}) {
    const std::size_t k = series.size();
    if (static_cast<int>(k) < config.min_publications)
        throw TooFewPublications(detail::strf(
            "series has %zu publications, need at least %d", k, config.min_publications));

    std::vector<SrmParams> seeds;
    switch (config.seed_grid) {
        case SeedGrid::Adaptive: seeds = detail::adaptive_seeds(series.y); break;
        case SeedGrid::AppendixA: seeds = detail::appendix_a_seeds(k); break;
        case SeedGrid::Explicit: seeds = detail::explicit_seeds(config, k); break;
    }
    if (seeds.empty())
        throw NoFeasibleSeed("no starting point with b2 < 0 and break point inside (1, k)");

    bool have_best = false;
    bool all_singular = true;
    detail::SeedRun best;
    for (const SrmParams& seed : seeds) {
        detail::SeedRun run = detail::run_seed(series.y, seed, config);
        if (!run.singular) all_singular = false;
        if (!have_best || run.sse < best.sse ||
            (run.sse == best.sse && run.iterations < best.iterations)) {
            best = run;
            have_best = true;
        }
    }
    if (all_singular)
        throw SingularJacobian("normal equations rank-deficient for every seed");

    SrmFit out;
    out.params = best.params;
    out.z0 = break_point(best.params);
    out.sse = best.sse;
    out.converged = best.converged;
    out.iterations = best.iterations;

    double mean = 0.0;
    for (double v : series.y) mean += v;
    mean /= static_cast<double>(k);
    double sst = 0.0;
    for (double v : series.y) sst += (v - mean) * (v - mean);
    out.r_squared = sst > 0.0 ? 1.0 - best.sse / sst
                              : std::numeric_limits<double>::quiet_NaN();
    out.residual_variance = best.sse / static_cast<double>(std::max<std::size_t>(1, k - 4));
    out.applicability = check_applicability(series, out, config);
    return out;
}

/// One scientist's fit attempt for batch processing: either a usable sRM
/// value or the reason it is excluded, without ever aborting the batch.
struct FitOutcome {
    std::string scientist_id;
    std::size_t publication_count = 0;
    int h = 0;
    std::optional<CumulativeSeries> series;
    std::optional<SrmFit> fit;
    std::string exclusion;  // empty when the sRM value is usable

    bool usable() const { return fit.has_value() && exclusion.empty(); }
};

inline FitOutcome fit_profile(const ScientistProfile& profile, const FitConfig& config = {}) {
    FitOutcome out;
    out.scientist_id = profile.id();
    out.publication_count = profile.paper_count();
    out.h = compute_h(profile);
    if (profile.paper_count() == 0) {
        out.exclusion = "(v) no publications";
        return out;
    }
    out.series = build_series(profile);
    try {
        out.fit = fit(*out.series, config);
        if (!out.fit->applicability.overall)
            out.exclusion =
                "requirements not met: " + out.fit->applicability.failed_requirements();
    } catch (const TooFewPublications&) {
        out.exclusion = detail::strf("(v) fewer than %d publications", config.min_publications);
    } catch (const NoFeasibleSeed&) {
        out.exclusion = "(i) no distinguishable quadratic part";
    } catch (const SingularJacobian&) {
        out.exclusion = "(ii) estimation failed (singular normal equations)";
    }
    return out;
}

}  // namespace hcore
