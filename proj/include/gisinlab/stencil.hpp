#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gisinlab/errors.hpp"

namespace gisinlab {

// Fornberg's recursion: weights of derivatives 0..m at x0 on arbitrary nodes.
// Returns W[node][derivative].
inline std::vector<std::vector<double>> fornberg_weights(double x0,
                                                         const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    w[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        c1 * (k * w[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                              c5 * w[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
                        c2;
                w[static_cast<std::size_t>(i)][0] =
                    -c1 * c5 * w[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    (c4 * w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                     k * w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) /
                    c3;
            w[static_cast<std::size_t>(j)][0] = c4 * w[static_cast<std::size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    return w;
}

// Weights of the nu-th derivative on the symmetric stencil {-K..K}*tau.
inline std::vector<double> central_weights(int nu, int K, double tau) {
    if (nu < 1) throw ConfigError("derivative order must be >= 1");
    if (2 * K + 1 < nu + 2)
        throw ConfigError("stencil with halfwidth " + std::to_string(K) +
                          " is too short for derivative order " + std::to_string(nu));
    std::vector<double> nodes;
    for (int k = -K; k <= K; ++k) nodes.push_back(k * tau);
    const auto w = fornberg_weights(0.0, nodes, nu);
    std::vector<double> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = w[i][static_cast<std::size_t>(nu)];
    return out;
}

// Truncation order of the symmetric stencil: even, 2(K - ceil(nu/2) + 1).
inline int central_accuracy_order(int nu, int K) {
    return 2 * (K - (nu + 1) / 2 + 1);
}

struct RichardsonResult {
    std::vector<double> value;        // extrapolated profile
    double err_estimate = 0.0;        // max-norm of the last table correction
    std::vector<double> corrections;  // per-level diagonal corrections
};

// Extrapolate estimates D[l] computed with step tau0/2^l, leading error
// order p and even error expansion. Entries are profiles of equal length.
inline RichardsonResult richardson_extrapolate(const std::vector<std::vector<double>>& levels,
                                               int p) {
    if (levels.empty()) throw ConfigError("richardson extrapolation needs at least one level");
    const std::size_t n = levels.front().size();
    for (const auto& l : levels)
        if (l.size() != n) throw ConfigError("richardson levels must have equal length");

    std::vector<std::vector<double>> table = levels;  // table[l] holds T[l][m] in place
    RichardsonResult result;
    for (std::size_t m = 1; m < table.size(); ++m) {
        const double denom = std::pow(2.0, p + 2.0 * (static_cast<double>(m) - 1.0)) - 1.0;
        double corr = 0.0;
        for (std::size_t l = table.size() - 1; l >= m; --l) {
            for (std::size_t i = 0; i < n; ++i) {
                const double d = (table[l][i] - table[l - 1][i]) / denom;
                table[l][i] += d;
                if (l == table.size() - 1) corr = std::max(corr, std::abs(d));
            }
            if (l == m) break;
        }
        result.corrections.push_back(corr);
    }
    result.value = table.back();
    result.err_estimate = result.corrections.empty() ? 0.0 : result.corrections.back();
    return result;
}

// A Richardson sequence has genuinely failed when the corrections grow and
// end up dominating the extrapolated value itself (step too large), as
// opposed to hovering at the floating-point noise floor of a near-zero signal.
inline bool richardson_diverged(const RichardsonResult& r, double signal_floor) {
    if (r.corrections.size() < 2) return false;
    double scale = 0.0;
    for (double v : r.value) scale = std::max(scale, std::abs(v));
    if (scale <= signal_floor) return false;
    return r.corrections.back() > 4.0 * r.corrections.front() &&
           r.corrections.back() > 0.5 * scale;
}

}  // namespace gisinlab
