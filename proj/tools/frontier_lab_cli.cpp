// Command-line front end: experiment execution, walk simulation and
// persistence, measure export, coupling runs, curve metrics, SVG rendering,
// and plain-text reports over result JSON files.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontier_lab/experiments.hpp"
#include "frontier_lab/frontier.hpp"
#include "frontier_lab/measures.hpp"
#include "frontier_lab/metrics.hpp"
#include "frontier_lab/svg.hpp"
#include "frontier_lab/version.hpp"
#include "frontier_lab/walk_io.hpp"

namespace fs = std::filesystem;
using flab::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidRun = 3;

std::vector<int64_t> parse_scales(const std::string& spec) {
    // "16..512" expands dyadically; "32,64,128" is an explicit list.
    std::vector<int64_t> out;
    auto dots = spec.find("..");
    if (dots != std::string::npos) {
        int64_t lo = std::stoll(spec.substr(0, dots));
        int64_t hi = std::stoll(spec.substr(dots + 2));
        for (int64_t r = lo; r <= hi; r *= 2) out.push_back(r);
        return out;
    }
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        out.push_back(std::stoll(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

void emit_result(const flab::ExperimentResult& res, const std::string& out_path) {
    std::string doc = res.json.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << doc;
    } else {
        write_text(out_path, doc);
        std::cout << res.experiment << ": wrote " << out_path << "\n";
    }
}

std::string measure_csv(const flab::EmpiricalMeasure& mu) {
    std::ostringstream out;
    out << "# scale_index=" << mu.scale_index << " n=" << mu.scale_index * std::log(2.0)
        << " c1=" << mu.c1 << "\n";
    out << "x,y,mass\n";
    out.precision(17);
    for (const auto& a : mu.atoms) out << a.point.x << "," << a.point.y << "," << a.mass << "\n";
    return out.str();
}

std::string report_text(const ordered_json& j) {
    std::ostringstream out;
    out << "experiment: " << j.value("experiment", std::string("?")) << "\n";
    out << "config digest: " << j.value("config_digest", std::string("?")) << "\n";
    if (j.contains("config") && j["config"].contains("base_seed"))
        out << "base seed: " << j["config"]["base_seed"] << "\n";
    if (j.contains("per_scale")) {
        out << "scale map (R, n = ln R):\n";
        for (const auto& e : j["per_scale"])
            if (e.contains("R")) out << "  R=" << e["R"] << "  n=" << e["n"] << "\n";
    }
    for (const char* key : {"decay_exponent", "growth_exponent", "ratio_slope", "outer_slope",
                            "inner_slope", "deviation_exponent", "growth_slope"})
        if (j.contains(key)) out << key << ": " << j[key] << "\n";
    for (const char* key : {"expected_decay", "expected_growth", "expected_slope",
                            "expected_outer_slope", "expected_inner_slope", "expected_range"})
        if (j.contains(key)) out << key << ": " << j[key] << "\n";
    if (j.contains("valid")) out << "valid: " << j["valid"] << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frontier-lab: planar random-walk frontier laboratory"};
    app.set_version_flag("--version",
                         std::string(flab::kArtifactName) + " " + flab::kArtifactVersion);
    app.require_subcommand(1);

    // Shared experiment knobs.
    std::string scales_spec = "32..512";
    uint64_t samples = 1000;
    uint64_t seed = 42;
    int workers = 0;
    std::string out_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scales", scales_spec, "dyadic range lo..hi or list r1,r2,...");
        cmd->add_option("--samples", samples, "samples per scale");
        cmd->add_option("--seed", seed, "base seed");
        cmd->add_option("--workers", workers, "worker threads (0 = auto)");
        cmd->add_option("--out", out_path, "output JSON path ('-' for stdout)");
    };

    // exponents
    auto* exp_cmd = app.add_subcommand("exponents", "run a scaling-law experiment");
    std::string experiment = "one_arm";
    int64_t inner_radius = 16;
    exp_cmd->add_option("--experiment", experiment,
                        "one_arm | two_arm | frontier_dimension | green_shape | two_point | "
                        "crossing_tail | bad_disk | frontier_disk_ratio | occupation_stability");
    exp_cmd->add_option("--inner-radius", inner_radius, "one-arm inner radius");
    add_common(exp_cmd);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "sample exit-stopped walks to .frwk files");
    int64_t sim_radius = 256;
    uint64_t sim_count = 1;
    std::string sim_dir = "walks";
    sim_cmd->add_option("--radius", sim_radius, "exit radius (lattice units)");
    sim_cmd->add_option("--count", sim_count, "number of walks");
    sim_cmd->add_option("--seed", seed, "base seed");
    sim_cmd->add_option("--dir", sim_dir, "output directory");

    // couple
    auto* couple_cmd = app.add_subcommand("couple", "Skorokhod coupling deviation experiment");
    std::string couple_scales = "64..2048";
    couple_cmd->add_option("--scales", couple_scales, "dyadic range lo..hi");
    couple_cmd->add_option("--samples", samples, "samples per scale");
    couple_cmd->add_option("--seed", seed, "base seed");
    couple_cmd->add_option("--workers", workers, "worker threads (0 = auto)");
    couple_cmd->add_option("--out", out_path, "output JSON path");

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "occupation measure of one sampled walk");
    int64_t measure_radius = 256;
    std::string measure_csv_path = "measure.csv";
    bool with_minkowski = false;
    measure_cmd->add_option("--radius", measure_radius, "exit radius");
    measure_cmd->add_option("--seed", seed, "base seed");
    measure_cmd->add_option("--csv", measure_csv_path, "output CSV path");
    measure_cmd->add_flag("--minkowski", with_minkowski, "also report a 4/3-content estimate");

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "curve metrics between two walk files");
    std::string walk_a, walk_b;
    double tol = 0.05;
    size_t resample_to = 512;
    metrics_cmd->add_option("walk_a", walk_a, "first .frwk file")->required();
    metrics_cmd->add_option("walk_b", walk_b, "second .frwk file")->required();
    metrics_cmd->add_option("--tol", tol, "metric tolerance");
    metrics_cmd->add_option("--resample", resample_to, "resample curves to this many points");
    metrics_cmd->add_option("--out", out_path, "output JSON path");

    // render
    auto* render_cmd = app.add_subcommand("render", "render a walk file to SVG");
    std::string walk_in, svg_out = "walk.svg";
    bool no_frontier = false;
    render_cmd->add_option("walk", walk_in, ".frwk file")->required();
    render_cmd->add_option("--svg", svg_out, "output SVG path");
    render_cmd->add_flag("--no-frontier", no_frontier, "skip the frontier overlay");

    // report
    auto* report_cmd = app.add_subcommand("report", "summarize result JSON files");
    std::vector<std::string> report_files;
    report_cmd->add_option("files", report_files, "result JSON files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (exp_cmd->parsed()) {
            flab::ExperimentConfig cfg;
            cfg.scales = parse_scales(scales_spec);
            cfg.samples_per_scale = samples;
            cfg.base_seed = seed;
            cfg.workers = workers;
            cfg.inner_radius = inner_radius;
            auto res = flab::run_experiment_by_name(experiment, cfg);
            emit_result(res, out_path);
            if (!res.valid) {
                std::cerr << "run invalid: abort fraction exceeded 1e-3\n";
                return kExitInvalidRun;
            }
        } else if (sim_cmd->parsed()) {
            fs::create_directories(sim_dir);
            for (uint64_t i = 0; i < sim_count; ++i) {
                flab::Rng rng = flab::make_rng(seed, flab::mix_stream(1, i));
                auto sr = flab::sample_walk_until_exit(rng, {0, 0}, sim_radius);
                if (sr.aborted) {
                    std::cerr << "sample " << i << " aborted (step budget)\n";
                    return kExitInvalidRun;
                }
                fs::path p = fs::path(sim_dir) / ("walk_" + std::to_string(i) + ".frwk");
                flab::write_walk_file(p.string(), *sr.walk);
                std::cout << "wrote " << p.string() << " (" << sr.walk->length() << " steps)\n";
            }
        } else if (couple_cmd->parsed()) {
            flab::CouplingConfig cfg;
            cfg.scales = parse_scales(couple_scales);
            cfg.samples_per_scale = samples;
            cfg.base_seed = seed;
            cfg.workers = workers;
            auto res = flab::coupling_deviation_experiment(cfg);
            emit_result(res, out_path);
            if (!res.valid) return kExitInvalidRun;
        } else if (measure_cmd->parsed()) {
            flab::Rng rng = flab::make_rng(seed, 0);
            auto sr = flab::sample_walk_until_exit(rng, {0, 0}, measure_radius);
            if (sr.aborted) return kExitInvalidRun;
            auto occ = flab::build_occupancy(*sr.walk);
            auto fv = flab::frontier_vertices(occ);
            auto mu = flab::occupation_measure(fv, sr.walk->scale_index, 1.0);
            write_text(measure_csv_path, measure_csv(mu));
            std::cout << "wrote " << measure_csv_path << " (" << mu.atoms.size() << " atoms, mass "
                      << mu.total_mass() << ")\n";
            if (with_minkowski) {
                auto est = flab::minkowski_content(fv, 4.0 / 3.0,
                                                   {8.0, 5.6, 4.0, 2.8, 2.0}, 4);
                std::cout << "4/3-content estimates:";
                for (double e : est.estimates) std::cout << " " << e;
                std::cout << " -> " << est.extrapolated << "\n";
            }
        } else if (metrics_cmd->parsed()) {
            flab::Walk wa = flab::read_walk_file(walk_a);
            flab::Walk wb = flab::read_walk_file(walk_b);
            auto curve_a = flab::trace_frontier_curve(wa);
            auto curve_b = flab::trace_frontier_curve(wb);
            auto ta = flab::resample_uniform(
                flab::make_timed(curve_a, 1.0 / double(wa.exit_radius())), resample_to);
            auto tb = flab::resample_uniform(
                flab::make_timed(curve_b, 1.0 / double(wb.exit_radius())), resample_to);
            ordered_json j;
            j["schema_version"] = flab::kSchemaVersion;
            j["artifact"] = std::string(flab::kArtifactName) + " " + flab::kArtifactVersion;
            j["experiment"] = "metrics";
            j["walk_a"] = walk_a;
            j["walk_b"] = walk_b;
            j["tol"] = tol;
            j["hausdorff"] = flab::hausdorff_distance(ta.points, tb.points);
            j["frechet"] = flab::frechet_distance(ta, tb, tol);
            j["np"] = flab::np_distance(ta, tb, tol);
            flab::ExperimentResult res;
            res.experiment = "metrics";
            res.json = std::move(j);
            emit_result(res, out_path);
        } else if (render_cmd->parsed()) {
            flab::Walk w = flab::read_walk_file(walk_in);
            flab::RenderOptions opts;
            opts.draw_frontier = !no_frontier;
            if (no_frontier) {
                write_text(svg_out, flab::render_svg(w, nullptr, opts));
            } else {
                auto curve = flab::trace_frontier_curve(w);
                write_text(svg_out, flab::render_svg(w, &curve, opts));
            }
            std::cout << "wrote " << svg_out << "\n";
        } else if (report_cmd->parsed()) {
            for (const auto& f : report_files) {
                std::ifstream in(f);
                if (!in) throw std::runtime_error("cannot open " + f);
                ordered_json j = ordered_json::parse(in);
                std::cout << "== " << f << " ==\n" << report_text(j);
            }
        }
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return kExitError;
    }
    return kExitOk;
}
