// Command-line front end: per-scientist indicators, segmented-regression
// fits with optional SVG plots, cohort tables, and synthetic dataset
// generation. Tables and plots go to stdout or files, diagnostics to stderr.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hcore/hcore.hpp"

namespace {

using hcore::detail::strf;

struct CommonOpts {
    std::string input;
    std::string format;  // "", "csv" or "json"
    std::string config_path;
    std::string output;
    bool tsv = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_input) {
    auto* in = cmd->add_option("--input", opts.input, "input dataset (CSV or JSON)");
    if (needs_input) in->required();
    cmd->add_option("--format", opts.format, "input format, inferred from extension by default")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--config", opts.config_path, "key-value configuration file");
    cmd->add_option("--output", opts.output, "write the report here instead of stdout");
    cmd->add_flag("--tsv", opts.tsv, "emit tab-separated values instead of aligned text");
}

hcore::AnalysisConfig load_config_file(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw hcore::InvalidConfig("cannot open config file '" + path + "'");
    return hcore::load_config(in);
}

bool is_json_input(const CommonOpts& opts) {
    if (!opts.format.empty()) return opts.format == "json";
    return opts.input.size() >= 5 && opts.input.substr(opts.input.size() - 5) == ".json";
}

std::vector<hcore::ScientistProfile> load_profiles(const CommonOpts& opts) {
    std::ifstream in(opts.input);
    if (!in) throw hcore::MalformedRow("cannot open input file '" + opts.input + "'");
    if (is_json_input(opts)) return hcore::parse_json(in);
    return hcore::assemble_profiles(hcore::parse_csv(in));
}

void write_output(const CommonOpts& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) throw hcore::Error("cannot open output file '" + opts.output + "'");
    out << text;
}

// Rows of already-formatted cells, rendered as TSV or width-aligned text.
std::string render_table(const std::vector<std::vector<std::string>>& rows, bool tsv) {
    std::string out;
    if (tsv) {
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += '\t';
                out += row[c];
            }
            out += '\n';
        }
        return out;
    }
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += "  ";
            out += row[c];
            if (c + 1 < row.size()) out.append(widths[c] - row[c].size(), ' ');
        }
        out += '\n';
    }
    return out;
}

std::string stat_cell(const std::optional<double>& v) {
    return v ? strf("%.2f", *v) : "-";
}

// ---- indicators ------------------------------------------------------------

int cmd_indicators(const CommonOpts& opts, int decimals, const std::string& metric_only) {
    const auto cfg = load_config_file(opts.config_path);
    const auto profiles = load_profiles(opts);

    const auto pct = [&](double v) { return strf("%.*f", decimals, v); };
    std::vector<std::vector<std::string>> rows;
    const std::vector<std::string> columns = {"id",       "n",  "total",    "h",
                                              "h2_lower", "h2", "h2_upper", "type"};
    if (metric_only.empty()) {
        rows.push_back(columns);
    } else if (std::find(columns.begin(), columns.end(), metric_only) == columns.end()) {
        throw hcore::UnknownMetric("unknown column '" + metric_only + "' for --metric-only");
    }

    for (const auto& p : profiles) {
        std::vector<std::string> cells(columns.size(), "-");
        cells[0] = p.id();
        cells[1] = std::to_string(p.paper_count());
        cells[2] = std::to_string(p.total_citations());
        cells[3] = std::to_string(hcore::compute_h(p));
        if (p.total_citations() > 0) {
            const auto ind = hcore::compute_areas(p);
            cells[4] = pct(ind.h2_lower_pct);
            cells[5] = pct(ind.h2_pct);
            cells[6] = pct(ind.h2_upper_pct);
            cells[7] = hcore::to_string(hcore::classify(ind, cfg.classification));
        }
        if (metric_only.empty()) {
            rows.push_back(std::move(cells));
        } else {
            const auto col = std::find(columns.begin(), columns.end(), metric_only);
            rows.push_back({cells[static_cast<std::size_t>(col - columns.begin())]});
        }
    }
    write_output(opts, render_table(rows, opts.tsv));
    return 0;
}

// ---- fit ---------------------------------------------------------------------

nlohmann::ordered_json fit_to_json(const hcore::FitOutcome& o) {
    nlohmann::ordered_json j;
    j["id"] = o.scientist_id;
    j["publications"] = o.publication_count;
    j["h"] = o.h;
    if (o.fit) {
        const auto& f = *o.fit;
        j["params"] = {{"b0", f.params.b0},
                       {"b1", f.params.b1},
                       {"b2", f.params.b2},
                       {"b3", f.params.b3}};
        j["srm"] = f.z0;
        j["r_squared"] = f.r_squared;
        j["residual_variance"] = f.residual_variance;
        j["sse"] = f.sse;
        j["converged"] = f.converged;
        j["iterations"] = f.iterations;
        const auto& a = f.applicability;
        j["applicability"] = {
            {"two_parts_distinguishable", a.two_parts_distinguishable.satisfied},
            {"converged", a.converged.satisfied},
            {"r_squared_above_threshold", a.r_squared_above_threshold.satisfied},
            {"breakpoint_in_range", a.breakpoint_in_range.satisfied},
            {"enough_publications", a.enough_publications.satisfied},
            {"r2_threshold", a.r2_threshold},
            {"part_separation_ratio", a.part_separation_ratio},
            {"min_publications", a.min_publications},
            {"overall", a.overall}};
    }
    j["excluded"] = !o.exclusion.empty();
    if (!o.exclusion.empty()) j["exclusion"] = o.exclusion;
    return j;
}

int cmd_fit(const CommonOpts& opts, const std::string& plot_dir,
            const std::string& emit_json) {
    const auto cfg = load_config_file(opts.config_path);
    const auto profiles = load_profiles(opts);
    if (profiles.empty()) {
        std::cerr << "error: no scientists in input\n";
        return 2;
    }

    std::vector<hcore::FitOutcome> outcomes;
    outcomes.reserve(profiles.size());
    for (const auto& p : profiles) outcomes.push_back(hcore::fit_profile(p, cfg.fit));

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"id", "k", "h", "srm", "r2", "converged", "applicable", "exclusion"});
    for (const auto& o : outcomes) {
        std::vector<std::string> cells;
        cells.push_back(o.scientist_id);
        cells.push_back(std::to_string(o.publication_count));
        cells.push_back(std::to_string(o.h));
        if (o.fit) {
            cells.push_back(strf("%.2f", o.fit->z0));
            cells.push_back(strf("%.3f", o.fit->r_squared));
            cells.push_back(o.fit->converged ? "yes" : "no");
        } else {
            cells.insert(cells.end(), {"-", "-", "-"});
        }
        cells.push_back(o.usable() ? "yes" : "no");
        cells.push_back(o.exclusion.empty() ? "-" : o.exclusion);
        rows.push_back(std::move(cells));
    }
    write_output(opts, render_table(rows, opts.tsv));

    if (!plot_dir.empty()) {
        std::filesystem::create_directories(plot_dir);
        for (const auto& o : outcomes) {
            if (!o.fit || !o.fit->converged || !o.series) continue;
            const auto path = std::filesystem::path(plot_dir) / (o.scientist_id + ".svg");
            std::ofstream out(path, std::ios::binary);
            if (!out) throw hcore::Error("cannot write plot file '" + path.string() + "'");
            out << hcore::render_svg(*o.fit, *o.series, o.h);
        }
    }
    if (!emit_json.empty()) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& o : outcomes) doc.push_back(fit_to_json(o));
        std::ofstream out(emit_json, std::ios::binary);
        if (!out) throw hcore::Error("cannot write JSON file '" + emit_json + "'");
        out << doc.dump(2) << '\n';
    }
    return 0;
}

// ---- cohort ------------------------------------------------------------------

int cmd_cohort(const CommonOpts& opts, const std::string& metric_name) {
    const auto cfg = load_config_file(opts.config_path);
    const auto metric = hcore::parse_metric(metric_name);
    const auto profiles = load_profiles(opts);

    std::vector<hcore::FitOutcome> outcomes;
    if (metric == hcore::Metric::SrmValue) {
        outcomes.reserve(profiles.size());
        for (const auto& p : profiles) outcomes.push_back(hcore::fit_profile(p, cfg.fit));
    }
    const auto table = hcore::build_table(profiles, outcomes, metric);

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"bin", "count", "mean", "sd", "min", "max"});
    for (const auto& row : table.rows)
        rows.push_back({row.bin.label, std::to_string(row.stats.count),
                        stat_cell(row.stats.mean), stat_cell(row.stats.sd),
                        stat_cell(row.stats.min), stat_cell(row.stats.max)});
    rows.push_back({"Total", std::to_string(table.total.count), stat_cell(table.total.mean),
                    stat_cell(table.total.sd), stat_cell(table.total.min),
                    stat_cell(table.total.max)});

    std::string text = strf("# metric: %s\n", hcore::to_string(metric));
    text += render_table(rows, opts.tsv);
    if (metric == hcore::Metric::SrmValue)
        text += strf("# sRM values could not be computed for %zu of %zu scientists\n",
                     table.excluded_count, table.cohort_size);
    write_output(opts, text);
    return 0;
}

// ---- simulate ------------------------------------------------------------------

int cmd_simulate(const CommonOpts& opts, std::uint64_t seed, std::optional<int> size) {
    auto cfg = load_config_file(opts.config_path);
    if (size) cfg.synthetic.size = *size;
    const auto cohort = hcore::generate_cohort(cfg.synthetic, seed);

    std::ostringstream out;
    const bool json = !opts.format.empty()
                          ? opts.format == "json"
                          : opts.output.size() >= 5 &&
                                opts.output.substr(opts.output.size() - 5) == ".json";
    if (json)
        hcore::write_json(cohort, out);
    else
        hcore::write_csv(cohort, out);
    write_output(opts, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bibliometric reliability toolkit: h index, area shares, sRM fits"};
    app.require_subcommand(1);

    CommonOpts ind_opts, fit_opts, coh_opts, sim_opts;
    int decimals = 1;
    std::string metric_only, plot_dir, emit_json, cohort_metric;
    std::uint64_t seed = 1;
    std::optional<int> sim_size;

    auto* ind = app.add_subcommand("indicators", "per-scientist h index and area shares");
    add_common(ind, ind_opts, true);
    ind->add_option("--decimals", decimals, "decimal places for percentages")
        ->check(CLI::Range(0, 12));
    ind->add_option("--metric-only", metric_only, "print a single column");

    auto* fit = app.add_subcommand("fit", "per-scientist segmented-regression (sRM) fits");
    add_common(fit, fit_opts, true);
    fit->add_option("--plot-dir", plot_dir, "write one SVG per fitted scientist here");
    fit->add_option("--emit-json", emit_json, "dump full fit records to this JSON file");

    auto* coh = app.add_subcommand("cohort", "binned descriptive statistics over a cohort");
    add_common(coh, coh_opts, true);
    coh->add_option("--metric", cohort_metric, "h2_lower | h2 | h2_upper | srm")->required();

    auto* sim = app.add_subcommand("simulate", "generate a synthetic power-law cohort");
    add_common(sim, sim_opts, false);
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--size", sim_size, "number of scientists");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ind->parsed()) return cmd_indicators(ind_opts, decimals, metric_only);
        if (fit->parsed()) return cmd_fit(fit_opts, plot_dir, emit_json);
        if (coh->parsed()) return cmd_cohort(coh_opts, cohort_metric);
        if (sim->parsed()) return cmd_simulate(sim_opts, seed, sim_size);
    } catch (const hcore::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
