#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gisinlab/errors.hpp"

namespace gisinlab {

// Uniform periodic axis covering [-L, L) with N nodes, x_i = -L + i*h, h = 2L/N.
struct Axis {
    double half_length = 0.0;  // L
    int points = 0;            // N (even, >= 16)
    double spacing = 0.0;      // h = 2L/N

    double node(int i) const { return -half_length + i * spacing; }

    std::vector<double> nodes() const {
        std::vector<double> xs(static_cast<std::size_t>(points));
        for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = node(i);
        return xs;
    }

    // Signed wavenumber of mode j in FFT ordering; domain length 2L gives k = pi*m/L.
    double wavenumber(int j) const {
        const int m = (j <= points / 2) ? j : j - points;
        return M_PI * static_cast<double>(m) / half_length;
    }

    bool operator==(const Axis&) const = default;
};

inline Axis make_axis(double half_length, int points, const std::string& label = "axis") {
    if (!(half_length > 0.0))
        throw ConfigError(label + ": half-length must be positive, got " + std::to_string(half_length));
    if (points < 16 || points % 2 != 0)
        throw ConfigError(label + ": point count must be even and >= 16, got " + std::to_string(points));
    return Axis{half_length, points, 2.0 * half_length / points};
}

struct PairGrid {
    Axis axis1;  // coordinate of particle 1
    Axis axis2;  // coordinate of particle 2

    std::size_t size() const {
        return static_cast<std::size_t>(axis1.points) * static_cast<std::size_t>(axis2.points);
    }

    bool operator==(const PairGrid&) const = default;
};

inline PairGrid make_grid(double L1, int N1, double L2, int N2) {
    return PairGrid{make_axis(L1, N1, "axis1"), make_axis(L2, N2, "axis2")};
}

}  // namespace gisinlab
