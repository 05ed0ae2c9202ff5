#pragma once

#include <cmath>
#include <string>

#include "gisinlab/fft.hpp"
#include "gisinlab/field.hpp"

namespace gisinlab {

// The five real coefficients of the nonlinearity
//   R = c1 div J/rho + c2 lap rho/rho + c3 J^2/rho^2
//     + c4 J.grad rho/rho^2 + c5 (grad rho)^2/rho^2,
// with gradients acting jointly on both particle coordinates.
struct DGCoefficients {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;

    // Galilei covariance of the two-particle equation: c3 = 0 and c1 + c4 = 0.
    bool galilei_covariant() const { return c3 == 0.0 && c1 + c4 == 0.0; }
};

enum class RTag { R1, R2, R3, R4, R5, R1minus4 };

inline std::string to_string(RTag tag) {
    switch (tag) {
        case RTag::R1: return "r1";
        case RTag::R2: return "r2";
        case RTag::R3: return "r3";
        case RTag::R4: return "r4";
        case RTag::R5: return "r5";
        case RTag::R1minus4: return "r1minus4";
    }
    return "?";
}

// Which nonlinear functional multiplies Psi in F[Psi] = R[Psi] * Psi.
struct FunctionalKind {
    enum class Family { Linear, BBM, DG, Single };

    Family family = Family::Linear;
    double strength = 0.0;  // BBM lambda, or the Single weight
    RTag tag = RTag::R1;    // Single only
    DGCoefficients dg{};    // DG only

    static FunctionalKind linear() { return {}; }
    static FunctionalKind bbm(double lambda) {
        return {Family::BBM, lambda, RTag::R1, {}};
    }
    static FunctionalKind dg(const DGCoefficients& c) {
        return {Family::DG, 0.0, RTag::R1, c};
    }
    static FunctionalKind single(RTag tag, double weight) {
        return {Family::Single, weight, tag, {}};
    }

    bool is_linear() const { return family == Family::Linear; }

    // Effective coefficient vector: Single and DG expand over R1..R5; BBM is separate.
    DGCoefficients coefficients() const {
        switch (family) {
            case Family::Linear: return {};
            case Family::BBM: return {};
            case Family::DG: return dg;
            case Family::Single: {
                DGCoefficients c{};
                const double w = strength;
                switch (tag) {
                    case RTag::R1: c.c1 = w; break;
                    case RTag::R2: c.c2 = w; break;
                    case RTag::R3: c.c3 = w; break;
                    case RTag::R4: c.c4 = w; break;
                    case RTag::R5: c.c5 = w; break;
                    case RTag::R1minus4: c.c1 = w; c.c4 = -w; break;
                }
                return c;
            }
        }
        return {};
    }

    double bbm_lambda() const { return family == Family::BBM ? strength : 0.0; }
};

// Additive density floor for the divisions: rho_reg = rho + eps_rel * max(rho).
// The floor is a smooth field, so regularized quotients stay C-infinity.
struct Regularization {
    double eps_rel = 1e-12;
};

inline Regularization make_regularization(double eps_rel) {
    if (!(eps_rel > 0.0) || eps_rel > 1e-6)
        throw ConfigError("regularization eps_rel must lie in (0, 1e-6], got " +
                          std::to_string(eps_rel));
    return Regularization{eps_rel};
}

struct DensityCurrent {
    RealPairField rho;  // |Psi|^2
    RealPairField J1;   // Im(conj(Psi) d1 Psi)   (mass-free convention)
    RealPairField J2;   // Im(conj(Psi) d2 Psi)
};

inline DensityCurrent density_and_current(const PairField& psi) {
    const PairField d1 = spectral_partial(psi, 1, 1);
    const PairField d2 = spectral_partial(psi, 2, 1);
    const std::size_t n = psi.values.size();
    DensityCurrent out{
        RealPairField{psi.grid, std::vector<double>(n)},
        RealPairField{psi.grid, std::vector<double>(n)},
        RealPairField{psi.grid, std::vector<double>(n)},
    };
    for (std::size_t i = 0; i < n; ++i) {
        const Complex p = psi.values[i];
        out.rho.values[i] = std::norm(p);
        out.J1.values[i] = std::imag(std::conj(p) * d1.values[i]);
        out.J2.values[i] = std::imag(std::conj(p) * d2.values[i]);
    }
    return out;
}

namespace detail {

inline void check_finite(const RealPairField& f, const std::string& term) {
    for (double v : f.values)
        if (!std::isfinite(v))
            throw SingularityError("nonlinear term " + term +
                                   " produced a non-finite value (vanishing density?)");
}

}  // namespace detail

// R[Psi] as a real field. Divisions use rho + eps_rel*max(rho).
inline RealPairField evaluate_R(const FunctionalKind& kind, const PairField& psi,
                                const Regularization& reg) {
    const std::size_t n = psi.values.size();
    RealPairField out{psi.grid, std::vector<double>(n, 0.0)};
    if (kind.is_linear()) return out;

    const DensityCurrent dc = density_and_current(psi);
    const double floor = reg.eps_rel * max_abs(dc.rho);
    std::vector<double> rho_reg(n);
    for (std::size_t i = 0; i < n; ++i) rho_reg[i] = dc.rho.values[i] + floor;

    if (kind.family == FunctionalKind::Family::BBM) {
        const double lambda = kind.bbm_lambda();
        for (std::size_t i = 0; i < n; ++i) out.values[i] = -lambda * std::log(rho_reg[i]);
        detail::check_finite(out, "bbm");
        return out;
    }

    const DGCoefficients c = kind.coefficients();

    const bool need_grad_rho = (c.c2 != 0.0 || c.c4 != 0.0 || c.c5 != 0.0);
    RealPairField d1rho, d2rho, lap_rho;
    if (need_grad_rho || c.c2 != 0.0) {
        const RealAxisSpectrum s1(dc.rho, 1), s2(dc.rho, 2);
        if (need_grad_rho) {
            d1rho = s1.derivative(1);
            d2rho = s2.derivative(1);
        }
        if (c.c2 != 0.0) {
            lap_rho = s1.derivative(2);
            const RealPairField l2 = s2.derivative(2);
            for (std::size_t i = 0; i < n; ++i) lap_rho.values[i] += l2.values[i];
        }
    }

    RealPairField div_J;
    if (c.c1 != 0.0) {
        div_J = spectral_partial(dc.J1, 1, 1);
        const RealPairField dj2 = spectral_partial(dc.J2, 2, 1);
        for (std::size_t i = 0; i < n; ++i) div_J.values[i] += dj2.values[i];
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double r = rho_reg[i];
        double v = 0.0;
        if (c.c1 != 0.0) v += c.c1 * div_J.values[i] / r;
        if (c.c2 != 0.0) v += c.c2 * lap_rho.values[i] / r;
        if (c.c3 != 0.0) {
            const double j1 = dc.J1.values[i], j2 = dc.J2.values[i];
            v += c.c3 * (j1 * j1 + j2 * j2) / (r * r);
        }
        if (c.c4 != 0.0)
            v += c.c4 * (dc.J1.values[i] * d1rho.values[i] + dc.J2.values[i] * d2rho.values[i]) /
                 (r * r);
        if (c.c5 != 0.0) {
            const double g1 = d1rho.values[i], g2 = d2rho.values[i];
            v += c.c5 * (g1 * g1 + g2 * g2) / (r * r);
        }
        out.values[i] = v;
    }
    detail::check_finite(out, kind.family == FunctionalKind::Family::Single
                                  ? to_string(kind.tag)
                                  : "dg");
    return out;
}

// F[Psi] = R[Psi] * Psi.
inline PairField evaluate_F(const FunctionalKind& kind, const PairField& psi,
                            const Regularization& reg) {
    if (kind.is_linear()) return zeros_like(psi);
    const RealPairField r = evaluate_R(kind, psi, reg);
    PairField out{psi.grid, std::vector<Complex>(psi.values.size())};
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        out.values[i] = r.values[i] * psi.values[i];
    return out;
}

}  // namespace gisinlab
