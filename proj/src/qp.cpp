#include "dkde/qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dkde {

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kStepTol = 1e-12;   // iterate change, infinity norm
constexpr double kKktTol = 1e-10;    // first-order residual at the iterate

// gradient of the objective: 2 (Lambda v - theta)
void gradient(const MiseComponents& c, const std::vector<double>& v, std::vector<double>& g) {
    const std::size_t t = c.size();
    for (std::size_t i = 0; i < t; ++i) {
        double row = c.d_diag[i] * v[i] - c.theta[i];
        for (std::size_t j = 0; j < t; ++j) {
            row += c.phi_at(i, j) * v[j];
        }
        g[i] = 2.0 * row;
    }
}

double objective(const MiseComponents& c, const std::vector<double>& v) {
    const std::size_t t = c.size();
    double quad = 0.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < t; ++j) {
            row += c.phi_at(i, j) * v[j];
        }
        quad += v[i] * (row + c.d_diag[i] * v[i]);
        cross += c.theta[i] * v[i];
    }
    return quad - 2.0 * cross + c.constant;
}

// Max violation of the simplex KKT conditions at alpha, with the multiplier
// estimated as -g'alpha (exact at the optimum).
double kkt_residual(const std::vector<double>& alpha, const std::vector<double>& g) {
    double lambda = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        lambda -= g[i] * alpha[i];
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double slack = g[i] + lambda;
        residual = std::max(residual, alpha[i] > 0.0 ? std::abs(slack) : std::max(0.0, -slack));
    }
    return residual;
}

}  // namespace

QpReport solve_optimal_weights(const MiseComponents& c) {
    const std::size_t t = c.size();
    for (std::size_t i = 0; i < t; ++i) {
        if (!std::isfinite(c.d_diag[i]) || !std::isfinite(c.theta[i])) {
            throw std::domain_error("solve_optimal_weights: non-finite components");
        }
        for (std::size_t j = 0; j < t; ++j) {
            if (!std::isfinite(c.phi_at(i, j))) {
                throw std::domain_error("solve_optimal_weights: non-finite components");
            }
        }
    }

    auto finish = [&](std::vector<double> alpha, int iterations, double residual) {
        for (double& x : alpha) {
            x = std::min(std::max(x, 0.0), 1.0);
        }
        WeightVector w{std::move(alpha)};
        const double obj = objective(c, w.alpha);
        return QpReport{std::move(w), obj, iterations, residual};
    };

    if (t == 1) {
        return finish({1.0}, 0, 0.0);
    }

    // Step size from a cheap eigenvalue bound: the gradient map v -> 2 Lambda v
    // is Lipschitz with constant at most 2 max_i sum_j |Lambda_ij|.
    double max_row_sum = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        double row = std::abs(c.d_diag[i]);
        for (std::size_t j = 0; j < t; ++j) {
            row += std::abs(c.phi_at(i, j));
        }
        max_row_sum = std::max(max_row_sum, row);
    }
    const double step = 1.0 / (4.0 * max_row_sum);

    std::vector<double> alpha = average_weights(t).alpha;
    std::vector<double> prev = alpha;
    std::vector<double> y = alpha;
    std::vector<double> g(t);
    std::vector<double> trial(t);
    double momentum = 1.0;

    for (int k = 1; k <= kMaxIterations; ++k) {
        gradient(c, y, g);
        for (std::size_t i = 0; i < t; ++i) {
            trial[i] = y[i] - step * g[i];
        }
        prev = alpha;
        alpha = project_to_simplex(trial);

        double change = 0.0;
        double restart = 0.0;
        for (std::size_t i = 0; i < t; ++i) {
            change = std::max(change, std::abs(alpha[i] - prev[i]));
            restart += g[i] * (alpha[i] - prev[i]);
        }

        gradient(c, alpha, g);
        const double residual = kkt_residual(alpha, g);
        if (residual < kKktTol || change < kStepTol) {
            return finish(std::move(alpha), k, residual);
        }

        // Nesterov momentum with a gradient-based restart to keep the
        // accelerated sequence monotone enough for tight tolerances.
        if (restart > 0.0) {
            momentum = 1.0;
        }
        const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        const double mix = (momentum - 1.0) / next_momentum;
        for (std::size_t i = 0; i < t; ++i) {
            y[i] = alpha[i] + mix * (alpha[i] - prev[i]);
        }
        momentum = next_momentum;
    }

    gradient(c, alpha, g);
    const double residual = kkt_residual(alpha, g);
    QpReport best = finish(std::move(alpha), kMaxIterations, residual);
    throw ConvergenceError("solve_optimal_weights: iteration cap reached (residual " +
                               std::to_string(residual) + ")",
                           std::move(best));
}

}  // namespace dkde
