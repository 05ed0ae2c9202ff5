#pragma once

#include <cmath>
#include <random>
#include <variant>
#include <vector>

#include "gisinlab/field.hpp"

namespace gisinlab {

// Smooth compactly supported 1D amplitude, a sum of bumps.
struct Profile1D {
    struct Term {
        double amplitude = 1.0;
        double center = 0.0;
        double width = 1.0;
    };
    std::vector<Term> terms;

    double operator()(double u) const {
        double s = 0.0;
        for (const auto& t : terms) s += t.amplitude * BumpProfile{t.center, t.width}(u);
        return s;
    }
    double derivative(double u) const {
        double s = 0.0;
        for (const auto& t : terms)
            s += t.amplitude * BumpProfile{t.center, t.width}.derivative(u);
        return s;
    }

    static Profile1D bump(double amplitude, double center, double width) {
        return Profile1D{{Term{amplitude, center, width}}};
    }
};

// Amplitude specs: r(x1,x2).
struct ProductR {
    Profile1D r1, r2;  // r = r1(x1) r2(x2)
};
struct CorrelatedSeparableR {
    int sign = +1;  // r = (x1 +- x2) r1(x1) r2(x2); carries a node line
    Profile1D r1, r2;
};
struct TabulatedR {
    RealPairField values;
};

// Phase specs: s(x1,x2).
struct PhaseZero {};
struct PhaseBilinear {};  // s = x1*x2
struct TabulatedS {
    RealPairField values;
};

// Initial condition Phi = exp(i s) * r with real smooth r, s.
struct InitialSpec {
    std::variant<ProductR, CorrelatedSeparableR, TabulatedR> r{ProductR{}};
    std::variant<PhaseZero, PhaseBilinear, TabulatedS> s{PhaseZero{}};

    bool bilinear_phase() const { return std::holds_alternative<PhaseBilinear>(s); }
};

inline RealPairField realize_amplitude(const InitialSpec& spec, const PairGrid& grid) {
    struct Visitor {
        const PairGrid& grid;
        RealPairField operator()(const ProductR& p) const {
            return make_real_field(grid,
                                   [&](double x1, double x2) { return p.r1(x1) * p.r2(x2); });
        }
        RealPairField operator()(const CorrelatedSeparableR& p) const {
            const double sg = p.sign >= 0 ? 1.0 : -1.0;
            return make_real_field(grid, [&](double x1, double x2) {
                return (x1 + sg * x2) * p.r1(x1) * p.r2(x2);
            });
        }
        RealPairField operator()(const TabulatedR& p) const {
            if (!(p.values.grid == grid))
                throw ConfigError("tabulated amplitude grid does not match the target grid");
            return p.values;
        }
    };
    return std::visit(Visitor{grid}, spec.r);
}

inline RealPairField realize_phase(const InitialSpec& spec, const PairGrid& grid) {
    struct Visitor {
        const PairGrid& grid;
        RealPairField operator()(const PhaseZero&) const {
            return make_real_field(grid, [](double, double) { return 0.0; });
        }
        RealPairField operator()(const PhaseBilinear&) const {
            return make_real_field(grid, [](double x1, double x2) { return x1 * x2; });
        }
        RealPairField operator()(const TabulatedS& p) const {
            if (!(p.values.grid == grid))
                throw ConfigError("tabulated phase grid does not match the target grid");
            return p.values;
        }
    };
    return std::visit(Visitor{grid}, spec.s);
}

inline PairField realize(const InitialSpec& spec, const PairGrid& grid) {
    const RealPairField r = realize_amplitude(spec, grid);
    const RealPairField s = realize_phase(spec, grid);
    PairField out{grid, std::vector<Complex>(grid.size())};
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = std::polar(1.0, s.values[i]) * r.values[i];
    return out;
}

// Randomized smooth initial data for the property suites: a product of bumps
// modulated by a low-order polynomial, kept well inside the grid.
inline InitialSpec random_initial_spec(std::mt19937_64& rng, const PairGrid& grid,
                                       bool correlated_allowed = true) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    const double w1 = uniform(2.2, 3.0), w2 = uniform(2.2, 3.0);
    const double c1 = uniform(-0.6, 0.6), c2 = uniform(-0.6, 0.6);
    const double p = uniform(-0.25, 0.25), q = uniform(-0.25, 0.25);
    const double u = correlated_allowed ? uniform(-0.3, 0.3) : 0.0;
    const double amp = uniform(0.7, 1.3);

    const BumpProfile b1{c1, w1}, b2{c2, w2};
    RealPairField r = make_real_field(grid, [&](double x1, double x2) {
        return amp * b1(x1) * b2(x2) * (1.0 + p * x1 + q * x2 + u * x1 * x2);
    });

    InitialSpec spec;
    spec.r = TabulatedR{std::move(r)};
    spec.s = (unit(rng) < 0.5) ? std::variant<PhaseZero, PhaseBilinear, TabulatedS>{PhaseBilinear{}}
                               : std::variant<PhaseZero, PhaseBilinear, TabulatedS>{PhaseZero{}};
    return spec;
}

}  // namespace gisinlab
