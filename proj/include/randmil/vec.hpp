#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace randmil {

/// Dense state vector in R^d. Problems in this library are desk-scale
/// (d small), so no sparse or expression-template machinery.
using Vec = std::vector<double>;

inline double euclidean_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline bool all_finite(const Vec& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace randmil
