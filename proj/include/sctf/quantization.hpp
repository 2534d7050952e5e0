#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sctf/grid.hpp"
#include "sctf/phase_space.hpp"
#include "sctf/planck.hpp"

namespace sctf {

/// Weyl-Heisenberg shift T^hbar(z0) f(x) = e^{i (p0 x - x0 p0 / 2)/hbar} f(x - x0).
/// The translation is spectral (exact on the interpolant), the modulation is
/// a pointwise phase; unitary on the discrete pairing to rounding.
inline SampledState heisenberg_shift(const PlanckPair& hp, const PhasePoint<1>& z0,
                                     const SampledState& f) {
    const double x0 = z0.x[0];
    const double p0 = z0.xi[0];
    SampledState out = (x0 != 0.0) ? translate(f, x0) : f;
    if (p0 != 0.0 || x0 != 0.0) {
        const double inv_hbar = 1.0 / hp.hbar();
        const double half = 0.5 * x0 * p0;
        for (std::size_t j = 0; j < out.values.size(); ++j) {
            const double ph = inv_hbar * (p0 * out.grid.x(j) - half);
            out.values[j] *= cplx(std::cos(ph), std::sin(ph));
        }
    }
    return out;
}

/// Standard time-frequency shift T(z) = T^{1/(2pi)}(z); up to the phase
/// e^{-pi i xi x} this is the modulation-translation M_xi T_x.
inline SampledState standard_shift(const PhasePoint<1>& z, const SampledState& f) {
    return heisenberg_shift(PlanckPair::standard(), z, f);
}

struct DilationReport {
    double norm_drift = 0.0;        // | ||out|| - ||f|| | / ||f||
    double boundary_residual = 0.0; // max |out| near the period edge / max |out|
    double alias_mass = 0.0;        // relative spectral mass beyond nyquist/lambda
    bool aliasing_risk = false;
};

/// D_lambda f(x) = lambda^{1/2} f(lambda x), resampled on the same grid by
/// evaluating the trigonometric interpolant of f at lambda x_j. Exact to
/// spectral accuracy for well-resolved decaying signals.
inline SampledState dilate(double lambda, const SampledState& f, DilationReport* report = nullptr) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    const Grid& g = f.grid;
    if (lambda == 1.0) {
        if (report) *report = {};
        return f;
    }
    const std::vector<cplx> coeff = spectrum(f);
    SampledState out(g);
    const double amp = std::sqrt(lambda);
    for (std::size_t k = 0; k < g.M; ++k) {
        const cplx c = coeff[k];
        if (std::norm(c) == 0.0) continue;
        const double w = g.omega(k) * lambda;
        const cplx rot(std::cos(w * g.dx()), std::sin(w * g.dx()));
        cplx ph;
        for (std::size_t j = 0; j < g.M; ++j) {
            if ((j & 255u) == 0) {
                const double th = w * g.x(j);
                ph = cplx(std::cos(th), std::sin(th));
            }
            out.values[j] += c * ph;
            ph *= rot;
        }
    }
    out *= amp;

    if (report) {
        DilationReport r;
        const double nf = l2_norm(f);
        if (nf > 0.0) r.norm_drift = std::abs(l2_norm(out) - nf) / nf;
        double peak = 0.0, edge = 0.0;
        const std::size_t band = std::max<std::size_t>(1, g.M / 50);
        for (std::size_t j = 0; j < g.M; ++j) {
            const double a = std::abs(out.values[j]);
            peak = std::max(peak, a);
            if (j < band || j + band >= g.M) edge = std::max(edge, a);
        }
        if (peak > 0.0) r.boundary_residual = edge / peak;
        if (lambda > 1.0) {
            double tail = 0.0, total = 0.0;
            const double cutoff = g.nyquist() / lambda;
            for (std::size_t k = 0; k < g.M; ++k) {
                const double mass = std::norm(coeff[k]);
                total += mass;
                if (std::abs(g.omega(k)) > cutoff) tail += mass;
            }
            if (total > 0.0) r.alias_mass = tail / total;
        }
        r.aliasing_risk = r.alias_mass > 1e-12 || r.boundary_residual > 1e-8;
        *report = r;
    }
    return out;
}

/// Residual of the symplectic covariance identity
/// T^hbar(z) D_lambda f = D_lambda T^hbar(D_lambda^{-1} z) f,
/// where D_lambda projects to diag(1/lambda, lambda) on phase space.
inline double covariance_check(const PlanckPair& hp, double lambda, const PhasePoint<1>& z,
                               const SampledState& f) {
    const SampledState lhs = heisenberg_shift(hp, z, dilate(lambda, f));
    const PhasePoint<1> zin = phase_point(lambda * z.x[0], z.xi[0] / lambda);
    const SampledState rhs = dilate(lambda, heisenberg_shift(hp, zin, f));
    const double nf = l2_norm(f);
    return nf > 0.0 ? l2_norm(lhs - rhs) / nf : 0.0;
}

/// H(z) = 1/2 z.Qz + b.z + c with z = (x, xi), Q symmetric.
struct QuadraticSymbol {
    Eigen::Matrix2d Q = Eigen::Matrix2d::Zero();
    Eigen::Vector2d b = Eigen::Vector2d::Zero();
    double c = 0.0;

    void validate() const {
        if (std::abs(Q(0, 1) - Q(1, 0)) > 1e-12 * (1.0 + Q.norm()))
            throw std::invalid_argument("QuadraticSymbol: Q must be symmetric");
    }

    double eval(const PhasePoint<1>& z) const {
        const Eigen::Vector2d v(z.x[0], z.xi[0]);
        return 0.5 * v.dot(Q * v) + b.dot(v) + c;
    }
};

/// H(x, xi) = kinetic(xi) + potential(x).
struct SeparableSymbol {
    std::function<double(double)> kinetic;
    std::function<double(double)> potential;
};

/// Op^w_hbar[kinetic(xi) + potential(x)]: the kinetic part is the Fourier
/// multiplier kinetic(hbar * omega), the potential acts pointwise.
inline SampledState weyl_apply_separable(const PlanckPair& hp, const SeparableSymbol& sym,
                                         const SampledState& f) {
    const double hbar = hp.hbar();
    SampledState out = apply_multiplier(f, [&](double w) { return cplx(sym.kinetic(hbar * w), 0.0); });
    for (std::size_t j = 0; j < f.values.size(); ++j)
        out.values[j] += sym.potential(f.grid.x(j)) * f.values[j];
    return out;
}

/// Op^w_1 of a quadratic polynomial. x-terms act pointwise, xi-terms as
/// multipliers, and the cross term q xi x quantizes to -i q (x d/dx + 1/2).
inline SampledState weyl_apply_quadratic(const QuadraticSymbol& sym, const SampledState& f) {
    sym.validate();
    const Grid& g = f.grid;
    SampledState out(g);
    const double qxx = sym.Q(0, 0), qxxi = sym.Q(0, 1), qxixi = sym.Q(1, 1);
    const double bx = sym.b(0), bxi = sym.b(1);

    if (qxixi != 0.0 || bxi != 0.0) {
        const SampledState spectral =
            apply_multiplier(f, [&](double w) { return cplx(0.5 * qxixi * w * w + bxi * w, 0.0); });
        for (std::size_t j = 0; j < g.M; ++j) out.values[j] += spectral.values[j];
    }
    if (qxxi != 0.0) {
        const SampledState df = derivative(f);
        const cplx miq(0.0, -qxxi);
        for (std::size_t j = 0; j < g.M; ++j)
            out.values[j] += miq * (g.x(j) * df.values[j] + 0.5 * f.values[j]);
    }
    for (std::size_t j = 0; j < g.M; ++j) {
        const double x = g.x(j);
        out.values[j] += (0.5 * qxx * x * x + bx * x + sym.c) * f.values[j];
    }
    return out;
}

}  // namespace sctf
