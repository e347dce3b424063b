#pragma once

#include <cstddef>
#include <vector>

namespace dkde {

/// Simplex-constrained batch weights over a window.
/// alpha[0] is the oldest batch in the window, alpha.back() the current one.
struct WeightVector {
    std::vector<double> alpha;

    std::size_t size() const { return alpha.size(); }
    double operator[](std::size_t i) const { return alpha[i]; }

    bool operator==(const WeightVector&) const = default;
};

/// Sum within 1e-10 of 1 and no entry below -1e-12.
bool on_simplex(const std::vector<double>& a);

/// Euclidean projection onto { w : sum w_i = 1, w_i >= 0 }.
/// Sort-based: exact in finitely many operations, O(n log n).
std::vector<double> project_to_simplex(std::vector<double> v);

/// All mass on the most recent batch.
WeightVector current_weights(std::size_t window);

/// Equal mass 1/T on every batch in the window.
WeightVector average_weights(std::size_t window);

/// Exponential decay with factor beta in (0,1): the current batch gets beta,
/// each step back multiplies by (1-beta), and the oldest batch absorbs the
/// remaining tail (1-beta)^(T-1) so the sequence sums to one.
WeightVector exponential_weights(std::size_t window, double beta);

}  // namespace dkde
