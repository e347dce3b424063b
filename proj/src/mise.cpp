#include "dkde/mise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dkde {

namespace {

void require_same_size(std::size_t have, std::size_t want, const char* where) {
    if (have != want) {
        throw std::domain_error(std::string(where) + ": weight length " + std::to_string(have) +
                                " does not match window size " + std::to_string(want));
    }
}

}  // namespace

MiseComponents build_components(std::span<const BatchSummary> summaries,
                                const GaussianParams& target, double bandwidth) {
    const std::size_t t = summaries.size();
    if (t == 0) {
        throw std::domain_error("build_components: need at least one batch summary");
    }
    if (t > kMaxWindow) {
        throw std::domain_error("build_components: window exceeds supported maximum of " +
                                std::to_string(kMaxWindow));
    }
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw std::domain_error("build_components: bandwidth must be positive and finite");
    }

    const double s2 = bandwidth * bandwidth;
    MiseComponents c{
        std::vector<double>(t * t), std::vector<double>(t), std::vector<double>(t),
        1.0 / (2.0 * target.sigma * kSqrtPi), bandwidth, target};

    for (std::size_t i = 0; i < t; ++i) {
        const double gi2 = summaries[i].gamma * summaries[i].gamma;
        for (std::size_t j = 0; j <= i; ++j) {
            const double gj2 = summaries[j].gamma * summaries[j].gamma;
            const double v = phi(std::sqrt(2.0 * s2 + gi2 + gj2), summaries[i].mu - summaries[j].mu);
            c.phi_matrix[i * t + j] = v;
            c.phi_matrix[j * t + i] = v;
        }
        c.d_diag[i] = (1.0 / (2.0 * summaries[i].n * kSqrtPi)) *
                      (1.0 / bandwidth - 1.0 / std::sqrt(s2 + gi2));
        c.theta[i] =
            phi(std::sqrt(s2 + gi2 + target.sigma * target.sigma), summaries[i].mu - target.mu);
    }
    return c;
}

double exact_mise(const MiseComponents& c, const WeightVector& alpha) {
    const std::size_t t = c.size();
    require_same_size(alpha.size(), t, "exact_mise");
    double quad = 0.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < t; ++j) {
            row += c.phi_at(i, j) * alpha[j];
        }
        quad += alpha[i] * (row + c.d_diag[i] * alpha[i]);
        cross += c.theta[i] * alpha[i];
    }
    return quad - 2.0 * cross + c.constant;
}

double ib_squared(const MiseComponents& c, const WeightVector& alpha) {
    const std::size_t t = c.size();
    require_same_size(alpha.size(), t, "ib_squared");
    double quad = 0.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < t; ++j) {
            row += c.phi_at(i, j) * alpha[j];
        }
        quad += alpha[i] * row;
        cross += c.theta[i] * alpha[i];
    }
    return quad - 2.0 * cross + c.constant;
}

double iv(const MiseComponents& c, const WeightVector& alpha) {
    require_same_size(alpha.size(), c.size(), "iv");
    double out = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        out += c.d_diag[i] * alpha[i] * alpha[i];
    }
    return out;
}

double MixtureDensity::pdf(double x) const {
    double out = 0.0;
    for (const auto& [weight, params] : components) {
        out += weight * phi(params.sigma, x - params.mu);
    }
    return out;
}

double closed_form_ise(const MixtureDensity& h, const GaussianParams& target) {
    const std::size_t k = h.components.size();
    if (k == 0) {
        throw std::domain_error("closed_form_ise: empty mixture");
    }
    double self = 0.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& [wi, gi] = h.components[i];
        self += wi * wi * cross_inner(gi, gi);
        for (std::size_t j = 0; j < i; ++j) {
            const auto& [wj, gj] = h.components[j];
            self += 2.0 * wi * wj * cross_inner(gi, gj);
        }
        cross += wi * cross_inner(gi, target);
    }
    return self - 2.0 * cross + l2_norm_sq(target);
}

}  // namespace dkde
