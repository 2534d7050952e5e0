#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sctf/grid.hpp"

namespace sctf {

/// Point z = (x, xi) of the phase space R^{2N}. Dimension is a template
/// parameter so mismatches are compile-time errors; all shipped runs use N=1.
template <int N = 1>
struct PhasePoint {
    std::array<double, N> x{};
    std::array<double, N> xi{};
};

inline PhasePoint<1> phase_point(double x, double xi) { return {{x}, {xi}}; }

template <int N>
inline PhasePoint<N> operator+(const PhasePoint<N>& a, const PhasePoint<N>& b) {
    PhasePoint<N> out;
    for (int i = 0; i < N; ++i) {
        out.x[i] = a.x[i] + b.x[i];
        out.xi[i] = a.xi[i] + b.xi[i];
    }
    return out;
}

template <int N>
inline PhasePoint<N> operator-(const PhasePoint<N>& a, const PhasePoint<N>& b) {
    PhasePoint<N> out;
    for (int i = 0; i < N; ++i) {
        out.x[i] = a.x[i] - b.x[i];
        out.xi[i] = a.xi[i] - b.xi[i];
    }
    return out;
}

template <int N>
inline PhasePoint<N> operator*(double s, const PhasePoint<N>& a) {
    PhasePoint<N> out;
    for (int i = 0; i < N; ++i) {
        out.x[i] = s * a.x[i];
        out.xi[i] = s * a.xi[i];
    }
    return out;
}

template <int N>
inline double norm_sq(const PhasePoint<N>& z) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += z.x[i] * z.x[i] + z.xi[i] * z.xi[i];
    return s;
}

template <int N>
inline double norm(const PhasePoint<N>& z) {
    return std::sqrt(norm_sq(z));
}

/// sigma(z, w) = (Jz) . w with J = [[0, I], [-I, 0]], i.e.
/// sigma(z, w) = xi_z . x_w - x_z . xi_w. Bilinear and antisymmetric.
template <int N>
inline double symplectic_form(const PhasePoint<N>& z, const PhasePoint<N>& w) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += z.xi[i] * w.x[i] - z.x[i] * w.xi[i];
    return s;
}

/// Finite symmetric truncation of scale * (alpha Z^N x beta Z^N): points
/// scale*(alpha k, beta l) with |k_i|, |l_i| <= K. Enumeration order is
/// frequency-major (l outer, k inner), each axis from -K to K, so mixed
/// sequence norms can group by frequency index directly.
template <int N = 1>
class Lattice {
public:
    Lattice() = default;

    static Lattice make(double alpha, double beta, double scale, int K, const Grid& grid) {
        if (!(alpha > 0.0) || !(beta > 0.0) || !(scale > 0.0))
            throw std::invalid_argument("Lattice: alpha, beta, scale must be positive");
        if (K < 0) throw std::invalid_argument("Lattice: truncation K must be >= 0");
        if (scale * alpha * double(K) > 0.5 * grid.L)
            throw std::invalid_argument("Lattice: spatial extent scale*alpha*K exceeds grid half-period L/2");
        Lattice lat;
        lat.alpha_ = alpha;
        lat.beta_ = beta;
        lat.scale_ = scale;
        lat.K_ = K;
        const int side = 2 * K + 1;
        std::size_t count = 1;
        for (int i = 0; i < 2 * N; ++i) count *= std::size_t(side);
        lat.pts_.reserve(count);
        lat.idx_.reserve(count);
        std::array<int, 2 * N> c;
        c.fill(-K);
        // odometer over (l_0..l_{N-1}, k_0..k_{N-1})
        while (true) {
            PhasePoint<N> p;
            for (int i = 0; i < N; ++i) {
                p.xi[i] = scale * beta * double(c[i]);
                p.x[i] = scale * alpha * double(c[N + i]);
            }
            lat.pts_.push_back(p);
            lat.idx_.push_back(c);
            int d = 2 * N - 1;
            for (; d >= 0; --d) {
                if (c[d] < K) {
                    ++c[d];
                    for (int e = d + 1; e < 2 * N; ++e) c[e] = -K;
                    break;
                }
            }
            if (d < 0) break;
        }
        return lat;
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double scale() const { return scale_; }
    int truncation() const { return K_; }
    std::size_t size() const { return pts_.size(); }
    const PhasePoint<N>& point(std::size_t i) const { return pts_[i]; }
    const std::vector<PhasePoint<N>>& points() const { return pts_; }

    /// Integer multi-index (l..., k...) of point i.
    const std::array<int, 2 * N>& multi_index(std::size_t i) const { return idx_[i]; }

    /// Flat index from a multi-index; throws if out of range.
    std::size_t flat_index(const std::array<int, 2 * N>& c) const {
        const int side = 2 * K_ + 1;
        std::size_t f = 0;
        for (int d = 0; d < 2 * N; ++d) {
            if (c[d] < -K_ || c[d] > K_) throw std::out_of_range("Lattice: index outside truncation");
            f = f * std::size_t(side) + std::size_t(c[d] + K_);
        }
        return f;
    }

private:
    double alpha_ = 1.0, beta_ = 1.0, scale_ = 1.0;
    int K_ = 0;
    std::vector<PhasePoint<N>> pts_;
    std::vector<std::array<int, 2 * N>> idx_;
};

inline Lattice<1> make_lattice(double alpha, double beta, double scale, int K, const Grid& grid) {
    return Lattice<1>::make(alpha, beta, scale, K, grid);
}

}  // namespace sctf
