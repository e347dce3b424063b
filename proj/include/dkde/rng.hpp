#pragma once

#include <cstdint>

namespace dkde {

/// Inverse of the standard normal CDF (Wichura's PPND16 rational
/// approximation, absolute error below 1e-15 on (0,1)).
double inverse_normal_cdf(double p);

/// xoshiro256++ with splitmix64-derived state. A (seed, stream) pair names an
/// independent substream: stream s takes words 4s..4s+3 of the splitmix64
/// sequence keyed by the seed, so substreams of one seed never share state.
///
/// The generator module assigns stream 0 to the mean walk, 1 to the standard
/// deviation walk, 2 to batch sizes, and 3 to the samples themselves.
class SplitRng {
  public:
    SplitRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    /// Uniform on (0,1), strictly excluding both endpoints.
    double next_unit();

    /// Uniform on (-half_width, half_width).
    double next_symmetric(double half_width);

    /// Uniform integer on [lo, hi], both inclusive.
    int next_int(int lo, int hi);

    /// Standard normal draw via the inverse CDF; exactly one u64 consumed.
    double next_normal();

  private:
    std::uint64_t state_[4];
};

}  // namespace dkde
