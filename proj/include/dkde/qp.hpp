#pragma once

#include <stdexcept>

#include "dkde/mise.hpp"
#include "dkde/weights.hpp"

namespace dkde {

/// Solution of the simplex-constrained MISE program, with diagnostics.
struct QpReport {
    WeightVector alpha;
    double objective;
    int iterations;
    double kkt_residual;
};

/// Raised when the iteration cap is hit before the tolerance; carries the best
/// iterate seen so far.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(std::string what, QpReport best_)
        : std::runtime_error(std::move(what)), best(std::move(best_)) {}

    QpReport best;
};

/// Minimizes alpha' Lambda alpha - 2 theta' alpha + constant over the simplex
/// (Lambda = Phi + diag(d), positive semidefinite) by accelerated projected
/// gradient descent. Deterministic: identical inputs give identical outputs.
QpReport solve_optimal_weights(const MiseComponents& c);

}  // namespace dkde
