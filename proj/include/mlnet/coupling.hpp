#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mlnet {

// Interdependence strengths of a coupled node pair from their degrees:
// alpha_a = k_a^theta / (k_a^theta + k_b^theta), alpha_b = 1 - alpha_a.
// Evaluated through the ratio (k_a/k_b)^theta in log space so large
// |theta| cannot overflow. Zero degrees take the limiting value of the
// formula (for theta<0, 0^theta -> inf): a node whose partner is
// isolated gets alpha 0 for theta<0 and 1 for theta>0; theta=0 or both
// degrees zero give 0.5.
inline std::pair<double, double> coupling_strengths(double k_a, double k_b,
                                                    double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("coupling_strengths: theta must be finite");
    if (k_a < 0 || k_b < 0)
        throw std::invalid_argument("coupling_strengths: negative degree");
    if (theta == 0.0 || k_a == k_b) return {0.5, 0.5};
    if (k_a == 0) return theta < 0 ? std::pair{1.0, 0.0} : std::pair{0.0, 1.0};
    if (k_b == 0) return theta < 0 ? std::pair{0.0, 1.0} : std::pair{1.0, 0.0};
    double t = theta * (std::log(k_a) - std::log(k_b));
    if (t > 700.0) return {1.0, 0.0};
    if (t < -700.0) return {0.0, 1.0};
    double r = std::exp(t);
    double alpha_a = r / (1.0 + r);
    return {alpha_a, 1.0 - alpha_a};
}

}  // namespace mlnet
