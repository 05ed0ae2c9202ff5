#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "gisinlab/axis.hpp"
#include "gisinlab/errors.hpp"

namespace gisinlab {

using Complex = std::complex<double>;

// Two-particle wavefunction sampled on the grid, row-major: values[i1*N2 + i2].
struct PairField {
    PairGrid grid;
    std::vector<Complex> values;

    Complex& at(int i1, int i2) {
        return values[static_cast<std::size_t>(i1) * grid.axis2.points + i2];
    }
    Complex at(int i1, int i2) const {
        return values[static_cast<std::size_t>(i1) * grid.axis2.points + i2];
    }
};

// Real-valued field on the same grid (densities, currents, nonlinear functionals).
struct RealPairField {
    PairGrid grid;
    std::vector<double> values;

    double& at(int i1, int i2) {
        return values[static_cast<std::size_t>(i1) * grid.axis2.points + i2];
    }
    double at(int i1, int i2) const {
        return values[static_cast<std::size_t>(i1) * grid.axis2.points + i2];
    }
};

// Profile over axis1, e.g. the marginal density of particle 1.
struct MarginalField {
    Axis axis;
    std::vector<double> values;
};

inline PairField make_field(const PairGrid& grid,
                            const std::function<Complex(double, double)>& f) {
    PairField out{grid, std::vector<Complex>(grid.size())};
    for (int i = 0; i < grid.axis1.points; ++i) {
        const double x1 = grid.axis1.node(i);
        for (int j = 0; j < grid.axis2.points; ++j)
            out.at(i, j) = f(x1, grid.axis2.node(j));
    }
    return out;
}

inline RealPairField make_real_field(const PairGrid& grid,
                                     const std::function<double(double, double)>& f) {
    RealPairField out{grid, std::vector<double>(grid.size())};
    for (int i = 0; i < grid.axis1.points; ++i) {
        const double x1 = grid.axis1.node(i);
        for (int j = 0; j < grid.axis2.points; ++j)
            out.at(i, j) = f(x1, grid.axis2.node(j));
    }
    return out;
}

inline PairField zeros_like(const PairField& f) {
    return PairField{f.grid, std::vector<Complex>(f.values.size(), Complex{0.0, 0.0})};
}

// ||f||^2 = h1*h2 * sum |f|^2  (rectangle rule, spectrally accurate on periodic data)
inline double norm_sq(const PairField& f) {
    double s = 0.0;
    for (const Complex& v : f.values) s += std::norm(v);
    return f.grid.axis1.spacing * f.grid.axis2.spacing * s;
}

// h2 * sum_j f(., x2_j): the integral over x2, one complex value per x1 node.
inline std::vector<Complex> integrate_axis2(const PairField& f) {
    const int n1 = f.grid.axis1.points, n2 = f.grid.axis2.points;
    std::vector<Complex> out(static_cast<std::size_t>(n1), Complex{0.0, 0.0});
    for (int i = 0; i < n1; ++i) {
        Complex s{0.0, 0.0};
        for (int j = 0; j < n2; ++j) s += f.at(i, j);
        out[static_cast<std::size_t>(i)] = s * f.grid.axis2.spacing;
    }
    return out;
}

inline std::vector<double> integrate_axis2(const RealPairField& f) {
    const int n1 = f.grid.axis1.points, n2 = f.grid.axis2.points;
    std::vector<double> out(static_cast<std::size_t>(n1), 0.0);
    for (int i = 0; i < n1; ++i) {
        double s = 0.0;
        for (int j = 0; j < n2; ++j) s += f.at(i, j);
        out[static_cast<std::size_t>(i)] = s * f.grid.axis2.spacing;
    }
    return out;
}

inline double integrate(const MarginalField& m) {
    double s = 0.0;
    for (double v : m.values) s += v;
    return s * m.axis.spacing;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const Complex& x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs(const PairField& f) { return max_abs(f.values); }
inline double max_abs(const RealPairField& f) { return max_abs(f.values); }

// Fraction of the norm carried by the outer `band` fraction of either axis.
// Data admissible for periodic evolution must keep this below ~1e-12.
inline double tail_mass_fraction(const PairField& f, double band = 0.1) {
    const int n1 = f.grid.axis1.points, n2 = f.grid.axis2.points;
    const double lim1 = (1.0 - band) * f.grid.axis1.half_length;
    const double lim2 = (1.0 - band) * f.grid.axis2.half_length;
    double tail = 0.0, total = 0.0;
    for (int i = 0; i < n1; ++i) {
        const double x1 = f.grid.axis1.node(i);
        for (int j = 0; j < n2; ++j) {
            const double p = std::norm(f.at(i, j));
            total += p;
            if (std::abs(x1) > lim1 || std::abs(f.grid.axis2.node(j)) > lim2) tail += p;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

// C0-infinity bump: exp(-1/(1 - ((u-c)/w)^2)) inside |u-c| < w, identically 0 outside.
struct BumpProfile {
    double center = 0.0;
    double width = 1.0;

    double operator()(double u) const {
        const double v = (u - center) / width;
        const double d = 1.0 - v * v;
        return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
    }

    // Analytic first derivative (used as an independent oracle by the closed forms).
    double derivative(double u) const {
        const double v = (u - center) / width;
        const double d = 1.0 - v * v;
        if (d <= 0.0) return 0.0;
        return -(*this)(u)*2.0 * v / (width * d * d);
    }
};

inline BumpProfile bump_profile(double center, double width) {
    if (!(width > 0.0)) throw ConfigError("bump width must be positive");
    return BumpProfile{center, width};
}

}  // namespace gisinlab
