#include "dkde/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dkde/qp.hpp"

namespace dkde {

namespace {

constexpr double kStdFloor = 1e-8;

}  // namespace

Batch::Batch(std::int64_t t_, std::vector<double> values_,
             std::optional<GaussianParams> true_params_)
    : t(t_), values(std::move(values_)), true_params(true_params_) {
    if (t < 0) {
        throw std::domain_error("Batch: t must be nonnegative");
    }
    if (values.empty()) {
        throw std::domain_error("Batch: values must be non-empty");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::domain_error("Batch: values must be finite");
        }
    }
}

std::string to_string(WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::current: return "current";
        case WeightScheme::average: return "average";
        case WeightScheme::exponential: return "exponential";
        case WeightScheme::dynamic: return "dynamic";
    }
    return "unknown";
}

std::string to_string(ParamMode mode) {
    return mode == ParamMode::oracle ? "oracle" : "plugin";
}

WeightScheme parse_scheme(const std::string& name) {
    if (name == "current") return WeightScheme::current;
    if (name == "average") return WeightScheme::average;
    if (name == "exponential") return WeightScheme::exponential;
    if (name == "dynamic") return WeightScheme::dynamic;
    throw std::domain_error("unknown weight scheme: " + name);
}

ParamMode parse_mode(const std::string& name) {
    if (name == "oracle") return ParamMode::oracle;
    if (name == "plugin") return ParamMode::plugin;
    throw std::domain_error("unknown parameter mode: " + name);
}

void TrackerConfig::validate() const {
    if (window < 1) {
        throw std::domain_error("TrackerConfig: window must be >= 1");
    }
    if (window > kMaxWindow) {
        throw std::domain_error("TrackerConfig: window exceeds supported maximum");
    }
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw std::domain_error("TrackerConfig: bandwidth must be positive and finite");
    }
    if (!(beta > 0.0) || !(beta < 1.0)) {
        throw std::domain_error("TrackerConfig: beta must be in (0,1)");
    }
}

BatchSummary summarize_batch(const Batch& b, ParamMode mode) {
    const int n = static_cast<int>(b.values.size());
    if (mode == ParamMode::oracle) {
        if (!b.true_params) {
            throw std::domain_error("summarize_batch: oracle mode needs true_params (batch " +
                                    std::to_string(b.t) + ")");
        }
        return BatchSummary(b.true_params->mu, b.true_params->sigma, n);
    }
    if (n < 2) {
        throw std::domain_error("summarize_batch: plugin mode needs at least 2 samples (batch " +
                                std::to_string(b.t) + ")");
    }
    double mean = 0.0;
    for (double v : b.values) {
        mean += v;
    }
    mean /= n;
    double ss = 0.0;
    for (double v : b.values) {
        ss += (v - mean) * (v - mean);
    }
    const double std_dev = std::sqrt(ss / (n - 1));
    return BatchSummary(mean, std::max(std_dev, kStdFloor), n);
}

Tracker::Tracker(TrackerConfig config) : config_(config) { config_.validate(); }

void Tracker::push(const Batch& b) {
    if (!ring_.empty() && b.t <= ring_.back().batch.t) {
        throw std::domain_error("Tracker::push: batch " + std::to_string(b.t) +
                                " is not newer than batch " + std::to_string(ring_.back().batch.t));
    }
    ring_.push_back(Entry{b, summarize_batch(b, config_.param_mode)});
    if (ring_.size() > config_.window) {
        ring_.pop_front();
    }
}

std::vector<BatchSummary> Tracker::summaries() const {
    std::vector<BatchSummary> out;
    out.reserve(ring_.size());
    for (const auto& entry : ring_) {
        out.push_back(entry.summary);
    }
    return out;
}

WeightVector Tracker::weights_for(const GaussianParams& target) const {
    if (ring_.empty()) {
        throw std::domain_error("Tracker::weights_for: no batches pushed yet");
    }
    const std::size_t w = ring_.size();
    switch (config_.scheme) {
        case WeightScheme::current: return current_weights(w);
        case WeightScheme::average: return average_weights(w);
        case WeightScheme::exponential: return exponential_weights(w, config_.beta);
        case WeightScheme::dynamic: break;
    }
    const auto s = summaries();
    return solve_optimal_weights(build_components(s, target, config_.bandwidth)).alpha;
}

WeightVector Tracker::weights_for(const BatchSummary& target) const {
    return weights_for(GaussianParams(target.mu, std::max(target.gamma, kStdFloor)));
}

double Tracker::estimate_density(const WeightVector& alpha, double x) const {
    if (alpha.size() != ring_.size()) {
        throw std::domain_error("estimate_density: weight length does not match window");
    }
    double out = 0.0;
    for (std::size_t i = 0; i < ring_.size(); ++i) {
        const auto& values = ring_[i].batch.values;
        double batch_sum = 0.0;
        for (double v : values) {
            batch_sum += phi(config_.bandwidth, x - v);
        }
        out += alpha[i] / static_cast<double>(values.size()) * batch_sum;
    }
    return out;
}

MixtureDensity Tracker::current_mixture(const WeightVector& alpha) const {
    if (alpha.size() != ring_.size()) {
        throw std::domain_error("current_mixture: weight length does not match window");
    }
    MixtureDensity h;
    for (std::size_t i = 0; i < ring_.size(); ++i) {
        const auto& values = ring_[i].batch.values;
        const double w = alpha[i] / static_cast<double>(values.size());
        for (double v : values) {
            h.components.push_back({w, GaussianParams(v, config_.bandwidth)});
        }
    }
    return h;
}

}  // namespace dkde
