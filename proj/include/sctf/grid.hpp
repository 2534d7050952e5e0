#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sctf/common.hpp"
#include "sctf/fft.hpp"

namespace sctf {

/// Uniform periodic grid on [-L/2, L/2) with M points (M a power of two).
///
/// Transform convention used by the whole library: the forward transform
/// pairs with the kernel e^{-i omega x}, the inverse carries the 1/M factor,
/// and the angular dual variable is omega_k = 2 pi k / L with the signed
/// index k in [-M/2, M/2). Multipliers applied through this convention act
/// exactly on the trigonometric interpolant of the samples.
struct Grid {
    double L = 0.0;
    std::size_t M = 0;

    Grid() = default;
    Grid(double length, std::size_t points) : L(length), M(points) {
        if (!(L > 0.0)) throw std::invalid_argument("Grid: period length must be positive");
        if (!detail::is_pow2(M)) throw std::invalid_argument("Grid: point count must be a power of two");
    }

    double dx() const { return L / double(M); }
    double x(std::size_t j) const { return -0.5 * L + double(j) * dx(); }

    /// Signed spectral index of slot j (standard wrap-around order).
    long signed_index(std::size_t j) const {
        return j < M / 2 ? long(j) : long(j) - long(M);
    }
    /// Angular frequency of slot j.
    double omega(std::size_t j) const { return two_pi * double(signed_index(j)) / L; }
    double nyquist() const { return pi / dx(); }

    bool operator==(const Grid& o) const { return L == o.L && M == o.M; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

/// Complex-valued function sampled on a Grid; carries the discrete L^2
/// pairing inner(f,g) = dx * sum_j f_j conj(g_j).
struct SampledState {
    Grid grid;
    std::vector<cplx> values;

    SampledState() = default;
    explicit SampledState(const Grid& g) : grid(g), values(g.M, cplx(0.0, 0.0)) {}
    SampledState(const Grid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.M) throw std::invalid_argument("SampledState: value count != grid size");
    }
};

inline void check_same_grid(const SampledState& f, const SampledState& g) {
    if (f.grid != g.grid) throw std::invalid_argument("states live on different grids");
}

inline cplx inner(const SampledState& f, const SampledState& g) {
    check_same_grid(f, g);
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < f.values.size(); ++j) acc += f.values[j] * std::conj(g.values[j]);
    return acc * f.grid.dx();
}

inline double norm_sq(const SampledState& f) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    return acc * f.grid.dx();
}

inline double l2_norm(const SampledState& f) { return std::sqrt(norm_sq(f)); }

inline double rel_l2_distance(const SampledState& f, const SampledState& g) {
    check_same_grid(f, g);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        num += std::norm(f.values[j] - g.values[j]);
        den += std::norm(g.values[j]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num * f.grid.dx());
}

inline SampledState& operator*=(SampledState& f, cplx a) {
    for (auto& v : f.values) v *= a;
    return f;
}

inline SampledState operator*(cplx a, SampledState f) {
    f *= a;
    return f;
}

inline SampledState operator+(const SampledState& f, const SampledState& g) {
    check_same_grid(f, g);
    SampledState out = f;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += g.values[j];
    return out;
}

inline SampledState operator-(const SampledState& f, const SampledState& g) {
    check_same_grid(f, g);
    SampledState out = f;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] -= g.values[j];
    return out;
}

/// f += a*g without temporaries.
inline void axpy(SampledState& f, cplx a, const SampledState& g) {
    check_same_grid(f, g);
    for (std::size_t j = 0; j < f.values.size(); ++j) f.values[j] += a * g.values[j];
}

/// Builds a state by evaluating fn at the grid points.
inline SampledState sample(const Grid& g, const std::function<cplx(double)>& fn) {
    SampledState out(g);
    for (std::size_t j = 0; j < g.M; ++j) out.values[j] = fn(g.x(j));
    return out;
}

/// Applies a Fourier multiplier m(omega) through the grid's transform
/// convention; exact on the trigonometric interpolant.
inline SampledState apply_multiplier(const SampledState& f, const std::function<cplx(double)>& m) {
    SampledState out = f;
    fft_inplace(out.values, false);
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] *= m(f.grid.omega(j));
    fft_inplace(out.values, true);
    return out;
}

/// Spectral translation x -> x - a (exact for band-limited periodic data,
/// no lattice/grid commensurability needed).
inline SampledState translate(const SampledState& f, double a) {
    return apply_multiplier(f, [a](double w) {
        return cplx(std::cos(w * a), -std::sin(w * a));
    });
}

/// Spectral derivative d/dx.
inline SampledState derivative(const SampledState& f) {
    return apply_multiplier(f, [](double w) { return cplx(0.0, w); });
}

/// Spectrum in signed-index order paired with e^{-i omega x}: out[j] is the
/// coefficient of e^{i omega_j x} in the interpolant, omega_j from slot j.
inline std::vector<cplx> spectrum(const SampledState& f) {
    std::vector<cplx> a = f.values;
    fft_inplace(a, false);
    // The DFT above pairs indices with e^{-2pi i jk/M}; account for the
    // grid offset x_0 = -L/2 so coefficients refer to physical x.
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double ph = f.grid.omega(j) * (0.5 * f.grid.L);
        a[j] *= cplx(std::cos(ph), std::sin(ph)) / double(f.grid.M);
    }
    return a;
}

}  // namespace sctf
