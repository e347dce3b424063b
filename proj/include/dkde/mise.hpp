#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dkde/gaussian.hpp"
#include "dkde/weights.hpp"

namespace dkde {

/// Largest window the dense T x T algebra is sized for.
inline constexpr std::size_t kMaxWindow = 64;

/// Per-batch summary feeding the MISE quadratic form: batch mean, batch
/// standard deviation (zero allowed), and sample count.
struct BatchSummary {
    double mu;
    double gamma;
    int n;

    BatchSummary(double mu_, double gamma_, int n_) : mu(mu_), gamma(gamma_), n(n_) {
        if (!std::isfinite(mu) || !std::isfinite(gamma)) {
            throw std::domain_error("BatchSummary: mu and gamma must be finite");
        }
        if (gamma < 0.0) {
            throw std::domain_error("BatchSummary: gamma must be >= 0");
        }
        if (n < 1) {
            throw std::domain_error("BatchSummary: n must be >= 1");
        }
    }

    bool operator==(const BatchSummary&) const = default;
};

/// The pieces of the exact MISE quadratic form for a window of T batches:
///
///   MISE(alpha) = alpha' (Phi + diag(d)) alpha - 2 theta' alpha + constant
///
/// phi_matrix is the T x T bias Gram matrix (row-major), d_diag the variance
/// diagonal, theta the bias cross term against the target, and constant the
/// target's squared L2 norm.
struct MiseComponents {
    std::vector<double> phi_matrix;
    std::vector<double> d_diag;
    std::vector<double> theta;
    double constant;
    double bandwidth;
    GaussianParams target;

    std::size_t size() const { return d_diag.size(); }
    double phi_at(std::size_t i, std::size_t j) const { return phi_matrix[i * size() + j]; }
};

/// Builds the quadratic form from batch summaries, the tracked target density,
/// and the kernel bandwidth:
///   Phi_ij = phi(sqrt(2 sigma^2 + gamma_i^2 + gamma_j^2), mu_i - mu_j)
///   d_i    = (1 / (2 n_i sqrt(pi))) (1/sigma - 1/sqrt(sigma^2 + gamma_i^2))
///   theta_i = phi(sqrt(sigma^2 + gamma_i^2 + gamma_t^2), mu_i - mu_t)
///   constant = 1 / (2 gamma_t sqrt(pi))
MiseComponents build_components(std::span<const BatchSummary> summaries,
                                const GaussianParams& target, double bandwidth);

/// Exact mean integrated squared error at the given weights.
double exact_mise(const MiseComponents& c, const WeightVector& alpha);

/// Integrated squared bias: the Phi/theta/constant part of the form.
double ib_squared(const MiseComponents& c, const WeightVector& alpha);

/// Integrated variance: sum_i alpha_i^2 d_i.
double iv(const MiseComponents& c, const WeightVector& alpha);

/// A weighted Gaussian mixture, e.g. a realized sliding-window estimate with
/// one component of weight alpha_i / n_i per stored sample.
struct WeightedComponent {
    double weight;
    GaussianParams params;
};

struct MixtureDensity {
    std::vector<WeightedComponent> components;

    double pdf(double x) const;
};

/// Integrated squared error between a realized mixture and a Gaussian target,
/// in closed form via pairwise Gaussian inner products.
double closed_form_ise(const MixtureDensity& h, const GaussianParams& target);

}  // namespace dkde
