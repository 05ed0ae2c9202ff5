#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "gisinlab/field.hpp"

namespace gisinlab {
namespace detail {

// Cached FFTW plans, one per transform geometry. Plans are created with
// FFTW_ESTIMATE|FFTW_UNALIGNED so fftw_execute_dft may run them on any buffer;
// creation is serialized, execution is thread-safe on distinct data.
inline fftw_plan fft_plan(int n, int howmany, int istride, int idist, int sign) {
    using Key = std::tuple<int, int, int, int, int>;
    static std::map<Key, fftw_plan> cache;
    static std::mutex mutex;

    std::lock_guard<std::mutex> lock(mutex);
    const Key key{n, howmany, istride, idist, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    fftw_complex* dummy = fftw_alloc_complex(static_cast<std::size_t>(n) * howmany);
    fftw_plan plan = fftw_plan_many_dft(1, &n, howmany,
                                        dummy, nullptr, istride, idist,
                                        dummy, nullptr, istride, idist,
                                        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(dummy);
    cache.emplace(key, plan);
    return plan;
}

inline void fft_axis(std::vector<Complex>& values, const PairGrid& grid, int axis, int sign) {
    const int n1 = grid.axis1.points, n2 = grid.axis2.points;
    fftw_plan plan = (axis == 1) ? fft_plan(n1, n2, n2, 1, sign)
                                 : fft_plan(n2, n1, 1, n2, sign);
    auto* data = reinterpret_cast<fftw_complex*>(values.data());
    fftw_execute_dft(plan, data, data);
}

// (i*k)^order at mode j, already divided by n for the unnormalized inverse.
// The Nyquist mode has no well-defined sign for odd orders and is zeroed.
inline std::vector<Complex> derivative_multipliers(const Axis& axis, int order) {
    const int n = axis.points;
    std::vector<Complex> mult(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double k = axis.wavenumber(j);
        Complex m = (order == 1) ? Complex{0.0, k} : Complex{-k * k, 0.0};
        if (order % 2 == 1 && j == n / 2) m = Complex{0.0, 0.0};
        mult[static_cast<std::size_t>(j)] = m / static_cast<double>(n);
    }
    return mult;
}

}  // namespace detail

// Forward transform of a field along one axis, kept so several derivative
// orders can be extracted with one inverse transform each.
class AxisSpectrum {
public:
    AxisSpectrum(const PairField& f, int axis)
        : grid_(f.grid), axis_(axis), spectrum_(f.values) {
        if (axis != 1 && axis != 2) throw ConfigError("spectral axis must be 1 or 2");
        detail::fft_axis(spectrum_, grid_, axis_, FFTW_FORWARD);
    }

    PairField derivative(int order) const {
        if (order != 1 && order != 2) throw ConfigError("derivative order must be 1 or 2");
        const Axis& ax = (axis_ == 1) ? grid_.axis1 : grid_.axis2;
        const auto mult = detail::derivative_multipliers(ax, order);
        PairField out{grid_, spectrum_};
        const int n1 = grid_.axis1.points, n2 = grid_.axis2.points;
        if (axis_ == 1) {
            for (int i = 0; i < n1; ++i) {
                const Complex m = mult[static_cast<std::size_t>(i)];
                for (int j = 0; j < n2; ++j) out.at(i, j) *= m;
            }
        } else {
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j) out.at(i, j) *= mult[static_cast<std::size_t>(j)];
        }
        detail::fft_axis(out.values, grid_, axis_, FFTW_BACKWARD);
        return out;
    }

private:
    PairGrid grid_;
    int axis_;
    std::vector<Complex> spectrum_;
};

// d^order/dx_axis^order via the discrete Fourier transform; exact for
// band-limited periodic data.
inline PairField spectral_partial(const PairField& f, int axis, int order) {
    return AxisSpectrum(f, axis).derivative(order);
}

class RealAxisSpectrum {
public:
    RealAxisSpectrum(const RealPairField& f, int axis)
        : spectrum_(PairField{f.grid, std::vector<Complex>(f.values.begin(), f.values.end())},
                    axis) {}

    RealPairField derivative(int order) const {
        PairField d = spectrum_.derivative(order);
        RealPairField out{d.grid, std::vector<double>(d.values.size())};
        for (std::size_t i = 0; i < d.values.size(); ++i) out.values[i] = d.values[i].real();
        return out;
    }

private:
    AxisSpectrum spectrum_;
};

inline RealPairField spectral_partial(const RealPairField& f, int axis, int order) {
    return RealAxisSpectrum(f, axis).derivative(order);
}

}  // namespace gisinlab
