#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "dkde/gaussian.hpp"
#include "dkde/mise.hpp"
#include "dkde/weights.hpp"

namespace dkde {

/// One observed batch of samples, optionally carrying the density it was
/// drawn from (synthetic / oracle runs).
struct Batch {
    std::int64_t t;
    std::vector<double> values;
    std::optional<GaussianParams> true_params;

    Batch(std::int64_t t_, std::vector<double> values_,
          std::optional<GaussianParams> true_params_ = std::nullopt);
};

enum class WeightScheme { current, average, exponential, dynamic };
enum class ParamMode { oracle, plugin };

std::string to_string(WeightScheme scheme);
std::string to_string(ParamMode mode);
WeightScheme parse_scheme(const std::string& name);
ParamMode parse_mode(const std::string& name);

struct TrackerConfig {
    std::size_t window = 5;
    double bandwidth = 1.0;
    WeightScheme scheme = WeightScheme::dynamic;
    double beta = 0.1;
    ParamMode param_mode = ParamMode::plugin;

    void validate() const;
};

/// Summarizes a batch either from its known true parameters or from the
/// sample moments (Bessel-corrected standard deviation, floored at 1e-8).
BatchSummary summarize_batch(const Batch& b, ParamMode mode);

/// Sliding window over the most recent batches. Pushes must be externally
/// serialized; reads between pushes are safe from any thread.
class Tracker {
  public:
    explicit Tracker(TrackerConfig config);

    /// Appends a batch (strictly increasing t) and evicts the oldest entry
    /// once the window is full.
    void push(const Batch& b);

    std::size_t size() const { return ring_.size(); }
    const TrackerConfig& config() const { return config_; }
    std::vector<BatchSummary> summaries() const;

    /// Weights over the current ring: the configured scheme's formula at the
    /// current ring length, or the MISE-optimal solution for `dynamic`.
    WeightVector weights_for(const GaussianParams& target) const;
    WeightVector weights_for(const BatchSummary& target) const;

    /// Pointwise value of the weighted kernel density estimate.
    double estimate_density(const WeightVector& alpha, double x) const;

    /// The realized estimate as an explicit mixture: one component of weight
    /// alpha_i / n_i and scale sigma per stored sample.
    MixtureDensity current_mixture(const WeightVector& alpha) const;

  private:
    struct Entry {
        Batch batch;
        BatchSummary summary;
    };

    TrackerConfig config_;
    std::deque<Entry> ring_;
};

}  // namespace dkde
