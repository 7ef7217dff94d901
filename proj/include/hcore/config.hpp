#pragma once

#include <charconv>
#include <istream>
#include <string>
#include <vector>

#include "hcore/cohort.hpp"
#include "hcore/errors.hpp"
#include "hcore/indicators.hpp"
#include "hcore/srm.hpp"

namespace hcore {

/// Everything a run can configure, filled from one key-value file.
struct AnalysisConfig {
    FitConfig fit;
    ClassificationConfig classification;
    SyntheticSpec synthetic;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

inline double config_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig("value '" + value + "' for key '" + key + "' is not a number");
    }
}

inline long long config_int(const std::string& key, const std::string& value) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw InvalidConfig("value '" + value + "' for key '" + key + "' is not an integer");
    return v;
}

inline std::vector<double> config_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        if (comma == std::string::npos) comma = value.size();
        const std::string item = trim(value.substr(start, comma - start));
        if (!item.empty()) out.push_back(config_double(key, item));
        start = comma + 1;
    }
    if (out.empty()) throw InvalidConfig("empty list for key '" + key + "'");
    return out;
}

}  // namespace detail

/// Parse `key = value` lines; '#' starts a comment, blank lines are ignored.
/// Unknown keys are an error so that typos do not silently fall back to
/// defaults.
inline AnalysisConfig load_config(std::istream& in) {
    AnalysisConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig("line " + std::to_string(line_no) +
                                ": expected 'key = value', got '" + stripped + "'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw InvalidConfig("line " + std::to_string(line_no) + ": empty key or value");

        using detail::config_double;
        using detail::config_int;
        using detail::config_list;
        if (key == "tol") cfg.fit.tol = config_double(key, value);
        else if (key == "step_tol") cfg.fit.step_tol = config_double(key, value);
        else if (key == "max_iter") cfg.fit.max_iter = static_cast<int>(config_int(key, value));
        else if (key == "r2_threshold") cfg.fit.r2_threshold = config_double(key, value);
        else if (key == "min_publications")
            cfg.fit.min_publications = static_cast<int>(config_int(key, value));
        else if (key == "part_separation_ratio")
            cfg.fit.part_separation_ratio = config_double(key, value);
        else if (key == "seed_grid") {
            if (value == "adaptive") cfg.fit.seed_grid = SeedGrid::Adaptive;
            else if (value == "appendix_a") cfg.fit.seed_grid = SeedGrid::AppendixA;
            else if (value == "explicit") cfg.fit.seed_grid = SeedGrid::Explicit;
            else
                throw InvalidConfig("seed_grid must be adaptive, appendix_a or explicit, got '" +
                                    value + "'");
        } else if (key == "seeds_b0") cfg.fit.seeds_b0 = config_list(key, value);
        else if (key == "seeds_b1") cfg.fit.seeds_b1 = config_list(key, value);
        else if (key == "seeds_b2") cfg.fit.seeds_b2 = config_list(key, value);
        else if (key == "seeds_b3") cfg.fit.seeds_b3 = config_list(key, value);
        else if (key == "upper_threshold")
            cfg.classification.upper_threshold = config_double(key, value);
        else if (key == "lower_cap") cfg.classification.lower_cap = config_double(key, value);
        else if (key == "lower_threshold")
            cfg.classification.lower_threshold = config_double(key, value);
        else if (key == "size") cfg.synthetic.size = static_cast<int>(config_int(key, value));
        else if (key == "pub_mean") cfg.synthetic.pub_mean = config_double(key, value);
        else if (key == "pub_sigma") cfg.synthetic.pub_sigma = config_double(key, value);
        else if (key == "exponent_min") cfg.synthetic.exponent_min = config_double(key, value);
        else if (key == "exponent_max") cfg.synthetic.exponent_max = config_double(key, value);
        else if (key == "citation_scale")
            cfg.synthetic.citation_scale = config_double(key, value);
        else if (key == "max_citations") cfg.synthetic.max_citations = config_int(key, value);
        else
            throw InvalidConfig("line " + std::to_string(line_no) + ": unknown key '" + key +
                                "'");
    }
    return cfg;
}

}  // namespace hcore
