#pragma once

#include <cmath>
#include <stdexcept>

namespace dkde {

inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// A univariate Gaussian density identified by its location and scale.
/// Construction rejects non-finite values and non-positive scales.
struct GaussianParams {
    double mu;
    double sigma;

    GaussianParams(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
        if (!std::isfinite(mu) || !std::isfinite(sigma)) {
            throw std::domain_error("GaussianParams: mu and sigma must be finite");
        }
        if (sigma <= 0.0) {
            throw std::domain_error("GaussianParams: sigma must be > 0");
        }
    }

    bool operator==(const GaussianParams&) const = default;
};

/// Centered Gaussian pdf at offset z: exp(-z^2 / (2 scale^2)) / (sqrt(2 pi) scale).
inline double phi(double scale, double z) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::domain_error("phi: scale must be positive and finite");
    }
    if (!std::isfinite(z)) {
        throw std::domain_error("phi: z must be finite");
    }
    const double u = z / scale;
    return kInvSqrt2Pi / scale * std::exp(-0.5 * u * u);
}

/// Product of two Gaussian pdfs, expressed as scale_factor * (another Gaussian pdf).
struct GaussianProduct {
    double scale_factor;
    GaussianParams result;
};

/// phi_a(x - mu_a) * phi_b(x - mu_b) == scale_factor * phi_result(x - mu_result),
/// pointwise in x.
inline GaussianProduct gaussian_product(const GaussianParams& a, const GaussianParams& b) {
    const double va = a.sigma * a.sigma;
    const double vb = b.sigma * b.sigma;
    const double vsum = va + vb;
    const double scale = phi(std::sqrt(vsum), a.mu - b.mu);
    const double mu = (va * b.mu + vb * a.mu) / vsum;
    const double sigma = a.sigma * b.sigma / std::sqrt(vsum);
    return GaussianProduct{scale, GaussianParams(mu, sigma)};
}

/// Integral of the product of two Gaussian pdfs over the real line.
inline double cross_inner(const GaussianParams& a, const GaussianParams& b) {
    const double va = a.sigma * a.sigma;
    const double vb = b.sigma * b.sigma;
    return phi(std::sqrt(va + vb), a.mu - b.mu);
}

/// Integral of the squared pdf: 1 / (2 sigma sqrt(pi)), computed through
/// cross_inner so the two agree bit for bit.
inline double l2_norm_sq(const GaussianParams& g) { return cross_inner(g, g); }

}  // namespace dkde
