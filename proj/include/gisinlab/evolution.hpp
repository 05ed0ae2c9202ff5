#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gisinlab/nonlinearity.hpp"
#include "gisinlab/potential.hpp"

namespace gisinlab {

struct Masses {
    double m1 = 1.0;
    double m2 = 1.0;
};

inline Masses make_masses(double m1, double m2) {
    if (!(m1 > 0.0) || !(m2 > 0.0) || !std::isfinite(m1) || !std::isfinite(m2))
        throw ConfigError("masses must be positive and finite");
    return Masses{m1, m2};
}

// Conservative step bound for explicit RK4 on the spectrally discretized
// kinetic term; validated after the fact by the norm audit.
inline double heuristic_dt(const PairGrid& grid, const Masses& masses) {
    const double b1 = grid.axis1.spacing * grid.axis1.spacing * masses.m1 / (M_PI * M_PI);
    const double b2 = grid.axis2.spacing * grid.axis2.spacing * masses.m2 / (M_PI * M_PI);
    return std::min(b1, b2);
}

struct EvolutionConfig {
    double dt = 0.0;      // internal step bound; 0 selects the heuristic
    double t_final = 0.0; // may be negative (time-reversed integration)
    int samples = 1;      // number of equal sampling intervals
    FunctionalKind kind{};
    Regularization reg{};
    double norm_tol = 1e-6;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<PairField> fields;
};

// d Psi/dt = -i [ -(1/2m1) lap1 - (1/2m2) lap2 + V1 + V2 ] Psi - i F(Psi)
class EvolutionOperator {
public:
    EvolutionOperator(const PairGrid& grid, const PotentialSpec& V1, const PotentialSpec& V2,
                      const Masses& masses, const FunctionalKind& kind, const Regularization& reg)
        : grid_(grid),
          v1_(sample(V1, grid.axis1)),
          v2_(sample(V2, grid.axis2)),
          masses_(masses),
          kind_(kind),
          reg_(reg) {}

    PairField rhs(const PairField& psi) const {
        const AxisSpectrum s1(psi, 1), s2(psi, 2);
        PairField lap1 = s1.derivative(2);
        const PairField lap2 = s2.derivative(2);

        PairField h_psi = std::move(lap1);
        const double a1 = -0.5 / masses_.m1, a2 = -0.5 / masses_.m2;
        const int n1 = grid_.axis1.points, n2 = grid_.axis2.points;
        for (int i = 0; i < n1; ++i) {
            const double v1 = v1_[static_cast<std::size_t>(i)];
            for (int j = 0; j < n2; ++j) {
                h_psi.at(i, j) = a1 * h_psi.at(i, j) + a2 * lap2.at(i, j) +
                                 (v1 + v2_[static_cast<std::size_t>(j)]) * psi.at(i, j);
            }
        }

        if (!kind_.is_linear()) {
            const PairField f = evaluate_F(kind_, psi, reg_);
            for (std::size_t i = 0; i < h_psi.values.size(); ++i)
                h_psi.values[i] += f.values[i];
        }

        for (Complex& v : h_psi.values) v *= Complex{0.0, -1.0};
        return h_psi;
    }

    const PairGrid& grid() const { return grid_; }
    const Masses& masses() const { return masses_; }

private:
    PairGrid grid_;
    std::vector<double> v1_, v2_;
    Masses masses_;
    FunctionalKind kind_;
    Regularization reg_;
};

inline PairField rhs(const PairField& psi, const PotentialSpec& V1, const PotentialSpec& V2,
                     const Masses& masses, const FunctionalKind& kind,
                     const Regularization& reg) {
    return EvolutionOperator(psi.grid, V1, V2, masses, kind, reg).rhs(psi);
}

namespace detail {

inline void rk4_step(const EvolutionOperator& op, PairField& psi, double dt) {
    const PairField k1 = op.rhs(psi);
    PairField tmp = psi;
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        tmp.values[i] = psi.values[i] + 0.5 * dt * k1.values[i];
    const PairField k2 = op.rhs(tmp);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        tmp.values[i] = psi.values[i] + 0.5 * dt * k2.values[i];
    const PairField k3 = op.rhs(tmp);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        tmp.values[i] = psi.values[i] + dt * k3.values[i];
    const PairField k4 = op.rhs(tmp);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        psi.values[i] += w * (k1.values[i] + 2.0 * k2.values[i] + 2.0 * k3.values[i] +
                              k4.values[i]);
}

// Interior near-zeros between above-threshold samples along any grid line
// make the divisions in the DG functionals regularization-dominated.
inline bool has_interior_nodes(const PairField& phi, double support_level = 1e-2,
                               double node_level = 1e-6) {
    const double mx = max_abs(phi);
    if (mx == 0.0) return true;
    const double hi = support_level * mx, lo = node_level * mx;
    const int n1 = phi.grid.axis1.points, n2 = phi.grid.axis2.points;

    auto scan = [&](int count_outer, int count_inner, auto value) {
        for (int a = 0; a < count_outer; ++a) {
            int first = -1, last = -1;
            for (int b = 0; b < count_inner; ++b) {
                if (std::abs(value(a, b)) >= hi) {
                    if (first < 0) first = b;
                    last = b;
                }
            }
            for (int b = first; b >= 0 && b <= last; ++b)
                if (std::abs(value(a, b)) < lo) return true;
        }
        return false;
    };

    if (scan(n1, n2, [&](int i, int j) { return phi.at(i, j); })) return true;
    return scan(n2, n1, [&](int j, int i) { return phi.at(i, j); });
}

inline void require_admissible(const PairField& phi, const FunctionalKind& kind) {
    const double tail = tail_mass_fraction(phi);
    if (!(tail < 1e-12))
        throw ConfigError("initial data carries " + std::to_string(tail) +
                          " of its norm in the outer 10% band; enlarge the domain");
    const bool divides = kind.family == FunctionalKind::Family::DG ||
                         kind.family == FunctionalKind::Family::Single;
    if (divides && has_interior_nodes(phi))
        throw SingularityError(
            "initial data has nodes on its effective support; grid evolution with "
            "density-dividing nonlinearities requires nodeless data");
}

}  // namespace detail

// Integrate to each time in `times` (sorted by |t|, one sign per call not
// required: positives and negatives are handled as separate passes from t=0).
// The visitor receives (t, field) for every requested time, t=0 included if listed.
template <typename Visitor>
void evolve_visit(const PairField& phi, const PotentialSpec& V1, const PotentialSpec& V2,
                  const Masses& masses, const FunctionalKind& kind, const Regularization& reg,
                  const std::vector<double>& times, double dt_max, double norm_tol,
                  Visitor&& visit) {
    detail::require_admissible(phi, kind);
    if (dt_max <= 0.0) dt_max = heuristic_dt(phi.grid, masses);

    const EvolutionOperator op(phi.grid, V1, V2, masses, kind, reg);
    const double norm0 = norm_sq(phi);
    if (!(norm0 > 0.0)) throw ConfigError("initial data has zero norm");

    auto run_direction = [&](std::vector<double> targets, int sign) {
        if (targets.empty()) return;
        std::sort(targets.begin(), targets.end(),
                  [](double a, double b) { return std::abs(a) < std::abs(b); });
        PairField current = phi;
        double t = 0.0;
        for (double target : targets) {
            const double span = std::abs(target - t);
            if (span > 0.0) {
                const int steps = std::max(1, static_cast<int>(std::ceil(span / dt_max - 1e-12)));
                const double dt = sign * span / steps;
                for (int s = 0; s < steps; ++s) detail::rk4_step(op, current, dt);
                t = target;
                const double norm = norm_sq(current);
                if (!std::isfinite(norm) || std::abs(norm - norm0) / norm0 > norm_tol)
                    throw AccuracyError(
                        "norm drift " + std::to_string(std::abs(norm - norm0) / norm0) +
                        " at t=" + std::to_string(t) +
                        " exceeds the tolerance; reduce dt or check the data for nodes");
            }
            visit(target, current);
        }
    };

    std::vector<double> forward, backward;
    bool want_zero = false;
    for (double t : times) {
        if (t > 0.0) forward.push_back(t);
        else if (t < 0.0) backward.push_back(t);
        else want_zero = true;
    }
    if (want_zero) visit(0.0, phi);
    run_direction(std::move(forward), +1);
    run_direction(std::move(backward), -1);
}

inline Trajectory evolve(const PairField& phi, const PotentialSpec& V1, const PotentialSpec& V2,
                         const Masses& masses, const EvolutionConfig& config) {
    if (config.samples < 1) throw ConfigError("evolution needs at least one sample interval");
    std::vector<double> times;
    for (int i = 0; i <= config.samples; ++i)
        times.push_back(config.t_final * static_cast<double>(i) / config.samples);

    Trajectory traj;
    evolve_visit(phi, V1, V2, masses, config.kind, config.reg, times, config.dt, config.norm_tol,
                 [&](double t, const PairField& f) {
                     traj.times.push_back(t);
                     traj.fields.push_back(f);
                 });
    return traj;
}

inline double norm_drift(const Trajectory& traj) {
    if (traj.fields.empty()) throw ConfigError("norm_drift of an empty trajectory");
    const double norm0 = norm_sq(traj.fields.front());
    double drift = 0.0;
    for (const PairField& f : traj.fields)
        drift = std::max(drift, std::abs(norm_sq(f) - norm0) / norm0);
    return drift;
}

}  // namespace gisinlab
