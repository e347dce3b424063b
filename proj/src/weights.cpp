#include "dkde/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dkde {

namespace {

double clamp01(double x) { return std::min(std::max(x, 0.0), 1.0); }

void require_window(std::size_t window) {
    if (window < 1) {
        throw std::domain_error("weights: window must be >= 1");
    }
}

}  // namespace

bool on_simplex(const std::vector<double>& a) {
    if (a.empty()) return false;
    double sum = 0.0;
    for (double x : a) {
        if (!std::isfinite(x) || x < -1e-12) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= 1e-10;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    if (v.empty()) {
        throw std::domain_error("project_to_simplex: empty vector");
    }
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::domain_error("project_to_simplex: non-finite entry");
        }
    }
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double running = 0.0;
    double tau = 0.0;
    std::size_t rho = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        running += u[j];
        const double t = (running - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) {
            rho = j + 1;
            tau = t;
        }
    }
    (void)rho;
    for (double& x : v) {
        x = std::max(x - tau, 0.0);
    }
    return v;
}

WeightVector current_weights(std::size_t window) {
    require_window(window);
    std::vector<double> a(window, 0.0);
    a.back() = 1.0;
    return WeightVector{std::move(a)};
}

WeightVector average_weights(std::size_t window) {
    require_window(window);
    return WeightVector{std::vector<double>(window, 1.0 / static_cast<double>(window))};
}

WeightVector exponential_weights(std::size_t window, double beta) {
    require_window(window);
    if (!(beta > 0.0) || !(beta < 1.0)) {
        throw std::domain_error("exponential_weights: beta must be in (0,1)");
    }
    std::vector<double> a(window);
    const auto T = static_cast<double>(window);
    a[0] = clamp01(std::pow(1.0 - beta, T - 1.0));
    for (std::size_t i = 2; i <= window; ++i) {
        a[i - 1] = clamp01(std::pow(1.0 - beta, T - static_cast<double>(i)) * beta);
    }
    return WeightVector{std::move(a)};
}

}  // namespace dkde
