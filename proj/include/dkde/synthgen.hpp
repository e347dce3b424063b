#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dkde/tracker.hpp"

namespace dkde {

/// Controls the evolving-Gaussian dataset: a uniform random walk on the mean,
/// a floored uniform random walk on the standard deviation, and uniformly
/// sized batches sampled from the walk's density at each step.
struct GeneratorConfig {
    std::uint64_t seed = 1;
    int num_batches = 100;
    double mu0 = 0.0;
    double gamma0 = 1.0;
    double mu_step = 1.0;     // half-width of the uniform mean increment
    double gamma_step = 0.2;  // half-width of the uniform std increment
    int n_min = 3;
    int n_max = 20;
    /// When set, batch 1 is sampled at (mu0, gamma0) exactly; otherwise the
    /// walk advances once before the first batch.
    bool start_at_origin = false;

    void validate() const;
    bool operator==(const GeneratorConfig&) const = default;
};

struct Dataset {
    GeneratorConfig config;
    std::vector<Batch> batches;
};

/// Deterministic in the seed; samples are drawn via the inverse normal CDF so
/// draw counts (and therefore streams) are identical across platforms.
Dataset generate(const GeneratorConfig& cfg);

/// JSON-lines format: one header object with the config, then one object per
/// batch {"t", "true_mu", "true_gamma", "values"}. UTF-8, LF line endings,
/// floats as round-trip-exact decimals.
void save_dataset(const Dataset& d, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace dkde
