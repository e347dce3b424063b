#pragma once

#include <stdexcept>

namespace dkde {

/// Composite Simpson rule with an odd number of points (>= 3).
template <class F>
double simpson(F&& f, double a, double b, int points) {
    if (points < 3 || points % 2 == 0) {
        throw std::domain_error("simpson: points must be odd and >= 3");
    }
    const double h = (b - a) / (points - 1);
    double sum = f(a) + f(b);
    for (int i = 1; i < points - 1; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

}  // namespace dkde
