#pragma once

#include <stdexcept>

#include "sctf/common.hpp"

namespace sctf {

/// Planck bookkeeping: hbar in (0, 1], h = 2 pi hbar always derived so the
/// pair cannot drift apart.
class PlanckPair {
public:
    explicit PlanckPair(double hbar) : hbar_(hbar) {
        if (!(hbar > 0.0) || hbar > 1.0)
            throw std::invalid_argument("PlanckPair: hbar must lie in (0, 1]");
    }

    double hbar() const { return hbar_; }
    double h() const { return two_pi * hbar_; }

    /// root_h() = h^{1/2}, the lattice/dilation scale.
    double root_h() const { return std::sqrt(h()); }

    /// hbar = 1/(2 pi), h = 1: the value at which hbar-objects reduce to the
    /// standard time-frequency ones.
    static PlanckPair standard() { return PlanckPair(1.0 / two_pi); }

    bool operator==(const PlanckPair& o) const { return hbar_ == o.hbar_; }

private:
    double hbar_;
};

}  // namespace sctf
