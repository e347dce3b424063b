#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dkde/mise.hpp"
#include "dkde/synthgen.hpp"
#include "dkde/tracker.hpp"

namespace dkde {

/// One tracked step: realized integrated squared error against the true
/// density, plus the exact expected value in oracle mode.
/// Serialized columns: t,scheme,window,bandwidth,ise,exact_mise,wall_nanos
/// (alpha is kept for programmatic use and not serialized).
struct StepRecord {
    std::int64_t t;
    std::string scheme;
    int window;
    double bandwidth;
    double ise;
    std::optional<double> exact_mise;
    WeightVector alpha;
    std::int64_t wall_nanos;
};

/// Across-run aggregate of the per-run time-averaged error for one cell of a
/// sweep (one scheme at one swept value).
struct SweepSummary {
    std::string scheme;
    std::string sweep_variable;  // "window" or "bandwidth"
    double sweep_value;
    double mean_error;
    double std_error;
    int runs;
};

/// Pushes every batch through a tracker and records the realized ISE of the
/// weighted estimate against the batch's true density. Oracle mode also
/// evaluates the exact MISE of the used weights.
std::vector<StepRecord> run_tracking(const Dataset& dataset, const TrackerConfig& cfg);

/// Time-averaged ISE of one run, discarding the first `window` warm-up steps
/// (all steps when the run is no longer than the window).
double mean_ise_after_warmup(const std::vector<StepRecord>& records, std::size_t window);

/// Shared sweep settings: the per-seed generator template (its seed field is
/// replaced by each sweep seed), scheme parameters, and worker count
/// (0 = hardware concurrency). Results are deterministic regardless of the
/// worker count.
struct SweepConfig {
    GeneratorConfig generator;
    double beta = 0.1;
    ParamMode mode = ParamMode::plugin;
    int threads = 0;
};

inline const std::vector<WeightScheme> kAllSchemes{
    WeightScheme::current, WeightScheme::average, WeightScheme::exponential,
    WeightScheme::dynamic};

/// Fresh dataset per seed; every scheme tracked at every window with the
/// fixed bandwidth; mean and standard deviation of the per-run error across
/// seeds, ordered by (scheme, window).
std::vector<SweepSummary> sweep_window(const std::vector<std::uint64_t>& seeds,
                                       const std::vector<int>& windows, const SweepConfig& cfg,
                                       double bandwidth = 1.0);

/// Same protocol with the window fixed and the bandwidth swept.
std::vector<SweepSummary> sweep_bandwidth(const std::vector<std::uint64_t>& seeds,
                                          const std::vector<double>& bandwidths,
                                          const SweepConfig& cfg, int window = 5);

/// Simpson quadrature of the squared difference between a mixture and a
/// Gaussian target, bracketing every component and the target to ten scales.
/// Independent check of closed_form_ise.
double quadrature_ise(const MixtureDensity& h, const GaussianParams& target, int points);

enum class EmitFormat { csv, json };
EmitFormat parse_format(const std::string& name);

/// Deterministic, byte-stable emission; floats as shortest round-trip
/// decimals, CSV with an exact header line, JSON mirroring the CSV fields.
void emit_results(const std::vector<StepRecord>& records, EmitFormat format,
                  const std::filesystem::path& path);
void emit_results(const std::vector<SweepSummary>& summaries, EmitFormat format,
                  const std::filesystem::path& path);

}  // namespace dkde
