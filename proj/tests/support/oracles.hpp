// Test-only oracles: quadrature wrappers, a small symmetric eigensolver,
// Kolmogorov-Smirnov statistics, simplex grid search, and random-instance
// generators. Independent of the library paths they are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "dkde/gaussian.hpp"
#include "dkde/mise.hpp"
#include "dkde/quadrature.hpp"
#include "dkde/rng.hpp"

namespace dkde::testing {

/// Simpson quadrature with the 20,001-point grid used throughout the tests.
template <class F>
double quad(F&& f, double a, double b, int points = 20001) {
    return simpson(std::forward<F>(f), a, b, points);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Smallest eigenvalue of a dense symmetric matrix via cyclic Jacobi rotations.
inline double min_eigenvalue(std::vector<double> m, std::size_t n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += m[i * n + j] * m[i * n + j];
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m[p * n + q];
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                const double app = m[p * n + p];
                const double aqq = m[q * n + q];
                const double phi_angle = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(phi_angle);
                const double s = std::sin(phi_angle);
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m[k * n + p];
                    const double akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m[p * n + k];
                    const double aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double lo = m[0];
    for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, m[i * n + i]);
    }
    return lo;
}

/// Two-sided KS statistic of sorted samples against a CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

/// Asymptotic one-percent KS critical value.
inline double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

struct RandomInstance {
    std::vector<BatchSummary> summaries;
    GaussianParams target;
    double bandwidth;
};

/// Batch parameters along a short random walk matching the synthetic design:
/// mean steps uniform on [-1,1], std steps uniform on [-0.2,0.2] floored at 1,
/// batch sizes uniform on [3,20]. The target is the last batch's density.
inline RandomInstance random_instance(SplitRng& rng, std::size_t window, double sigma_lo = 0.3,
                                      double sigma_hi = 2.0) {
    std::vector<BatchSummary> summaries;
    double mu = rng.next_symmetric(2.0);
    double gamma = 1.0 + rng.next_unit();
    for (std::size_t i = 0; i < window; ++i) {
        mu += rng.next_symmetric(1.0);
        gamma = std::max(gamma + rng.next_symmetric(0.2), 1.0);
        summaries.emplace_back(mu, gamma, rng.next_int(3, 20));
    }
    const double sigma = sigma_lo + rng.next_unit() * (sigma_hi - sigma_lo);
    return RandomInstance{summaries, GaussianParams(summaries.back().mu, summaries.back().gamma),
                          sigma};
}

/// Uniform point on the simplex (normalized exponential spacings).
inline std::vector<double> random_simplex_point(SplitRng& rng, std::size_t n) {
    std::vector<double> w(n);
    double sum = 0.0;
    for (double& x : w) {
        x = -std::log(rng.next_unit());
        sum += x;
    }
    for (double& x : w) {
        x /= sum;
    }
    return w;
}

/// Exhaustive simplex grid search of the MISE objective for T in {1,2,3}.
/// Returns the best objective and argmin over weights i/steps summing to 1.
struct GridResult {
    double objective;
    std::vector<double> alpha;
};

inline GridResult grid_search_mise(const MiseComponents& c, int steps = 1000) {
    const std::size_t t = c.size();
    const double h = 1.0 / steps;
    GridResult best{std::numeric_limits<double>::infinity(), {}};
    auto consider = [&](const std::vector<double>& a) {
        double quad_form = 0.0;
        double cross = 0.0;
        for (std::size_t i = 0; i < t; ++i) {
            double row = c.d_diag[i] * a[i];
            for (std::size_t j = 0; j < t; ++j) {
                row += c.phi_at(i, j) * a[j];
            }
            quad_form += a[i] * row;
            cross += c.theta[i] * a[i];
        }
        const double obj = quad_form - 2.0 * cross + c.constant;
        if (obj < best.objective) {
            best = {obj, a};
        }
    };
    std::vector<double> a(t);
    if (t == 1) {
        a[0] = 1.0;
        consider(a);
    } else if (t == 2) {
        for (int i = 0; i <= steps; ++i) {
            a[0] = i * h;
            a[1] = (steps - i) * h;
            consider(a);
        }
    } else if (t == 3) {
        for (int i = 0; i <= steps; ++i) {
            for (int j = 0; j <= steps - i; ++j) {
                a[0] = i * h;
                a[1] = j * h;
                a[2] = (steps - i - j) * h;
                consider(a);
            }
        }
    }
    return best;
}

}  // namespace dkde::testing
