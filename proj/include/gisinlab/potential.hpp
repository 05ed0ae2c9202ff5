#pragma once

#include <cmath>
#include <memory>
#include <variant>
#include <vector>

#include "gisinlab/axis.hpp"
#include "gisinlab/field.hpp"

namespace gisinlab {

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
inline double smooth_step(double t) {
    auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    const double a = f(t), b = f(1.0 - t);
    return a / (a + b);
}

struct PotentialSpec;

struct ZeroPotential {};

// V(x) = kappa * x^2
struct HarmonicPotential {
    double kappa = 0.0;
};

// V(x) = g*x on [a, b], smoothly tapered to 0 outside [a - taper, b + taper].
struct LinearWindowPotential {
    double g = 0.0;
    double a = -1.0;
    double b = 1.0;
    double taper = 1.0;
};

// V(x) = amplitude * bump((x - center)/width)
struct BumpPotential {
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;
};

struct SumPotential {
    std::vector<PotentialSpec> terms;
};

struct PotentialSpec {
    std::variant<ZeroPotential, HarmonicPotential, LinearWindowPotential, BumpPotential,
                 SumPotential>
        node{ZeroPotential{}};

    double operator()(double x) const;

    static PotentialSpec zero() { return {}; }
    static PotentialSpec harmonic(double kappa) { return {HarmonicPotential{kappa}}; }
    static PotentialSpec linear_window(double g, double a, double b, double taper) {
        if (!(b > a)) throw ConfigError("linear window must have b > a");
        if (!(taper > 0.0)) throw ConfigError("linear window taper must be positive");
        return {LinearWindowPotential{g, a, b, taper}};
    }
    static PotentialSpec bump(double amplitude, double center, double width) {
        if (!(width > 0.0)) throw ConfigError("bump potential width must be positive");
        return {BumpPotential{amplitude, center, width}};
    }
    static PotentialSpec sum(std::vector<PotentialSpec> terms) {
        return {SumPotential{std::move(terms)}};
    }
};

inline double PotentialSpec::operator()(double x) const {
    struct Visitor {
        double x;
        double operator()(const ZeroPotential&) const { return 0.0; }
        double operator()(const HarmonicPotential& p) const { return p.kappa * x * x; }
        double operator()(const LinearWindowPotential& p) const {
            if (x <= p.a - p.taper || x >= p.b + p.taper) return 0.0;
            double window = 1.0;
            if (x < p.a) window = smooth_step((x - (p.a - p.taper)) / p.taper);
            else if (x > p.b) window = smooth_step(((p.b + p.taper) - x) / p.taper);
            return p.g * x * window;
        }
        double operator()(const BumpPotential& p) const {
            return p.amplitude * BumpProfile{p.center, p.width}(x);
        }
        double operator()(const SumPotential& p) const {
            double s = 0.0;
            for (const auto& t : p.terms) s += t(x);
            return s;
        }
    };
    return std::visit(Visitor{x}, node);
}

inline std::vector<double> sample(const PotentialSpec& spec, const Axis& axis) {
    std::vector<double> out(static_cast<std::size_t>(axis.points));
    for (int i = 0; i < axis.points; ++i) out[static_cast<std::size_t>(i)] = spec(axis.node(i));
    return out;
}

inline PotentialSpec operator+(const PotentialSpec& a, const PotentialSpec& b) {
    return PotentialSpec::sum({a, b});
}

}  // namespace gisinlab
