// Command-line harness: dataset generation, single tracking runs, and the
// Monte-Carlo window/bandwidth sweeps, all emitting machine-readable output.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dkde/bench.hpp"
#include "dkde/synthgen.hpp"

namespace {

std::vector<std::uint64_t> expand_seeds(std::uint64_t base, int count) {
    std::vector<std::uint64_t> seeds(count);
    for (int i = 0; i < count; ++i) {
        seeds[i] = base + static_cast<std::uint64_t>(i);
    }
    return seeds;
}

/// "steps.csv" -> "steps.oracle.csv" (used when --mode both writes two files).
std::filesystem::path with_mode_suffix(const std::filesystem::path& path,
                                       const std::string& mode) {
    std::filesystem::path p = path;
    const std::string ext = p.extension().string();
    p.replace_extension();
    p += "." + mode + ext;
    return p;
}

struct ModeOption {
    std::string value = "plugin";

    std::vector<dkde::ParamMode> modes() const {
        if (value == "both") {
            return {dkde::ParamMode::oracle, dkde::ParamMode::plugin};
        }
        return {dkde::parse_mode(value)};
    }

    std::filesystem::path out_path(const std::filesystem::path& base,
                                   dkde::ParamMode mode) const {
        return value == "both" ? with_mode_suffix(base, dkde::to_string(mode)) : base;
    }
};

void add_generator_flags(CLI::App* cmd, dkde::GeneratorConfig& cfg) {
    cmd->add_option("--batches", cfg.num_batches, "Number of batches")->capture_default_str();
    cmd->add_option("--mu0", cfg.mu0, "Mean walk starting point")->capture_default_str();
    cmd->add_option("--gamma0", cfg.gamma0, "Std walk starting point and floor")
        ->capture_default_str();
    cmd->add_option("--mu-step", cfg.mu_step, "Half-width of the uniform mean increment")
        ->capture_default_str();
    cmd->add_option("--gamma-step", cfg.gamma_step, "Half-width of the uniform std increment")
        ->capture_default_str();
    cmd->add_option("--n-min", cfg.n_min, "Smallest batch size")->capture_default_str();
    cmd->add_option("--n-max", cfg.n_max, "Largest batch size")->capture_default_str();
    cmd->add_flag("--start-at-origin", cfg.start_at_origin,
                  "Sample batch 1 at (mu0, gamma0) instead of after one walk step");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sliding-window Gaussian density tracking benchmark"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Write a synthetic evolving-Gaussian dataset");
    dkde::GeneratorConfig gen_cfg;
    std::string gen_out;
    generate->add_option("--seed", gen_cfg.seed, "Generator seed")->capture_default_str();
    add_generator_flags(generate, gen_cfg);
    generate->add_option("--out", gen_out, "Output dataset path")->required();

    // track
    auto* track = app.add_subcommand("track", "Track one dataset and record per-step error");
    std::string track_data;
    std::string track_scheme = "dynamic";
    std::size_t track_window = 5;
    double track_bandwidth = 1.0;
    double track_beta = 0.1;
    ModeOption track_mode;
    std::string track_out;
    std::string track_format = "csv";
    track->add_option("--data", track_data, "Dataset path (from `generate`)")->required();
    track->add_option("--scheme", track_scheme, "dynamic|current|average|exponential")
        ->capture_default_str();
    track->add_option("--window", track_window, "Sliding window size T")->capture_default_str();
    track->add_option("--bandwidth", track_bandwidth, "Kernel bandwidth sigma")
        ->capture_default_str();
    track->add_option("--beta", track_beta, "Exponential decay factor")->capture_default_str();
    track->add_option("--mode", track_mode.value, "oracle|plugin|both")->capture_default_str();
    track->add_option("--out", track_out, "Output path")->required();
    track->add_option("--format", track_format, "csv|json")->capture_default_str();

    // shared sweep flags
    struct SweepFlags {
        int seeds = 20;
        std::uint64_t seed_base = 1;
        double beta = 0.1;
        ModeOption mode;
        int threads = 0;
        std::string out;
        std::string format = "csv";
        dkde::GeneratorConfig generator;
    };
    auto add_sweep_flags = [](CLI::App* cmd, SweepFlags& f) {
        cmd->add_option("--seeds", f.seeds, "Number of Monte-Carlo runs")->capture_default_str();
        cmd->add_option("--seed-base", f.seed_base, "First seed; runs use seed-base..+seeds-1")
            ->capture_default_str();
        cmd->add_option("--beta", f.beta, "Exponential decay factor")->capture_default_str();
        cmd->add_option("--mode", f.mode.value, "oracle|plugin|both")->capture_default_str();
        cmd->add_option("--threads", f.threads, "Worker threads (0 = hardware)")
            ->capture_default_str();
        cmd->add_option("--batches", f.generator.num_batches, "Batches per generated dataset")
            ->capture_default_str();
        cmd->add_option("--out", f.out, "Output path")->required();
        cmd->add_option("--format", f.format, "csv|json")->capture_default_str();
    };

    auto* sweep_window = app.add_subcommand("sweep-window", "Monte-Carlo sweep over window sizes");
    SweepFlags sw;
    std::vector<int> windows{1, 2, 3, 4, 5, 6, 7, 8, 10};
    double sw_bandwidth = 1.0;
    sweep_window->add_option("--windows", windows, "Window sizes (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    sweep_window->add_option("--bandwidth", sw_bandwidth, "Fixed kernel bandwidth")
        ->capture_default_str();
    add_sweep_flags(sweep_window, sw);

    auto* sweep_bandwidth =
        app.add_subcommand("sweep-bandwidth", "Monte-Carlo sweep over kernel bandwidths");
    SweepFlags sb;
    std::vector<double> bandwidths{0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
    int sb_window = 5;
    sweep_bandwidth->add_option("--bandwidths", bandwidths, "Bandwidths (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    sweep_bandwidth->add_option("--window", sb_window, "Fixed window size")
        ->capture_default_str();
    add_sweep_flags(sweep_bandwidth, sb);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            dkde::save_dataset(dkde::generate(gen_cfg), gen_out);
        } else if (track->parsed()) {
            const dkde::Dataset dataset = dkde::load_dataset(track_data);
            const dkde::EmitFormat format = dkde::parse_format(track_format);
            for (dkde::ParamMode mode : track_mode.modes()) {
                const dkde::TrackerConfig cfg{track_window, track_bandwidth,
                                              dkde::parse_scheme(track_scheme), track_beta, mode};
                dkde::emit_results(dkde::run_tracking(dataset, cfg), format,
                                   track_mode.out_path(track_out, mode));
            }
        } else if (sweep_window->parsed()) {
            const auto format = dkde::parse_format(sw.format);
            for (dkde::ParamMode mode : sw.mode.modes()) {
                dkde::SweepConfig cfg{sw.generator, sw.beta, mode, sw.threads};
                dkde::emit_results(
                    dkde::sweep_window(expand_seeds(sw.seed_base, sw.seeds), windows, cfg,
                                       sw_bandwidth),
                    format, sw.mode.out_path(sw.out, mode));
            }
        } else if (sweep_bandwidth->parsed()) {
            const auto format = dkde::parse_format(sb.format);
            for (dkde::ParamMode mode : sb.mode.modes()) {
                dkde::SweepConfig cfg{sb.generator, sb.beta, mode, sb.threads};
                dkde::emit_results(
                    dkde::sweep_bandwidth(expand_seeds(sb.seed_base, sb.seeds), bandwidths, cfg,
                                          sb_window),
                    format, sb.mode.out_path(sb.out, mode));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
