#pragma once

#include <cmath>
#include <stdexcept>

#include "sctf/phase_space.hpp"

namespace sctf {

/// Polynomial weight v_s(z) = (1 + |z|^2)^{s/2}. Even, positive, v_s(0) = 1,
/// and v_s-moderate with v_s(z+w) <= 2^{|s|/2} v_{|s|}(z) v_s(w).
struct PolynomialWeight {
    double s = 0.0;

    template <int N>
    double operator()(const PhasePoint<N>& z) const {
        return std::pow(1.0 + norm_sq(z), 0.5 * s);
    }
};

/// m_h(z) = m(h^{-1/2} z) for the base weight m = v_s; on lattice points
/// z = h^{1/2} w the value m_h(z) = m(w) is independent of h.
struct ScaledWeight {
    PolynomialWeight base;
    double h = 1.0;

    ScaledWeight(PolynomialWeight b, double planck_h) : base(b), h(planck_h) {
        if (!(h > 0.0)) throw std::invalid_argument("ScaledWeight: h must be positive");
    }

    template <int N>
    double operator()(const PhasePoint<N>& z) const {
        const double inv = 1.0 / std::sqrt(h);
        return base(inv * z);
    }
};

}  // namespace sctf
