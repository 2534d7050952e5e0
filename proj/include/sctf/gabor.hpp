#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "sctf/common.hpp"
#include "sctf/grid.hpp"
#include "sctf/phase_space.hpp"
#include "sctf/planck.hpp"
#include "sctf/quantization.hpp"

namespace sctf {

enum class WindowKind {
    psi0,       // 2^{1/4} e^{-pi x^2}
    phi0,       // pi^{-1/4} e^{-x^2/2}
    phi0_hbar,  // (pi hbar)^{-1/4} e^{-x^2/(2 hbar)}
};

/// Analytically sampled Gaussian window, unit L^2 norm up to quadrature
/// error (exponentially small once the grid is wide enough).
inline SampledState gaussian_window(WindowKind kind, const PlanckPair& hp, const Grid& grid) {
    double amp = 0.0, decay = 0.0;  // amp * exp(-decay * x^2)
    switch (kind) {
        case WindowKind::psi0:
            amp = std::pow(2.0, 0.25);
            decay = pi;
            break;
        case WindowKind::phi0:
            amp = std::pow(pi, -0.25);
            decay = 0.5;
            break;
        case WindowKind::phi0_hbar:
            amp = std::pow(pi * hp.hbar(), -0.25);
            decay = 0.5 / hp.hbar();
            break;
    }
    const double edge = amp * std::exp(-decay * 0.25 * grid.L * grid.L);
    if (edge >= 1e-15)
        throw std::invalid_argument("gaussian_window: grid too narrow, boundary value " +
                                    std::to_string(edge));
    SampledState w(grid);
    for (std::size_t j = 0; j < grid.M; ++j) {
        const double x = grid.x(j);
        w.values[j] = amp * std::exp(-decay * x * x);
    }
    return w;
}

inline Eigen::Map<const Eigen::VectorXcd> as_vec(const SampledState& f) {
    return {f.values.data(), Eigen::Index(f.values.size())};
}

/// A window, a truncated lattice and a Planck pair. The shifted atoms
/// T^hbar(lambda) g are cached as the columns of atom_mat in lattice order.
/// Immutable after construction.
struct GaborSystem {
    SampledState window;
    Lattice<1> lattice;
    PlanckPair hp;
    Eigen::MatrixXcd atom_mat;  // M x |Lambda|

    SampledState atom(std::size_t i) const {
        SampledState a(window.grid);
        Eigen::VectorXcd::Map(a.values.data(), atom_mat.rows()) = atom_mat.col(Eigen::Index(i));
        return a;
    }
};

inline GaborSystem make_gabor_system(SampledState window, const Lattice<1>& lattice,
                                     const PlanckPair& hp) {
    if (!(l2_norm(window) > 0.0)) throw std::invalid_argument("GaborSystem: window must be nonzero");
    const Grid& g = window.grid;
    if (lattice.scale() * lattice.alpha() * lattice.truncation() > 0.5 * g.L)
        throw std::invalid_argument("GaborSystem: lattice does not fit the window grid");
    const double max_mod = lattice.scale() * lattice.beta() * lattice.truncation() / hp.hbar();
    if (max_mod > g.nyquist())
        throw std::invalid_argument("GaborSystem: outermost atom modulation exceeds the grid Nyquist rate");
    GaborSystem sys{std::move(window), lattice, hp, {}};
    sys.atom_mat.resize(Eigen::Index(g.M), Eigen::Index(lattice.size()));
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const SampledState a = heisenberg_shift(hp, lattice.point(i), sys.window);
        sys.atom_mat.col(Eigen::Index(i)) = as_vec(a);
    }
    return sys;
}

/// c_lambda = <f, T^hbar(lambda) g>.
inline std::vector<cplx> analysis(const GaborSystem& sys, const SampledState& f) {
    check_same_grid(f, sys.window);
    const Eigen::VectorXcd c = sys.window.grid.dx() * (sys.atom_mat.adjoint() * as_vec(f)).conjugate();
    return {c.data(), c.data() + c.size()};
}

/// sum_lambda c_lambda T^hbar(lambda) g.
inline SampledState synthesis(const GaborSystem& sys, const std::vector<cplx>& c) {
    if (Eigen::Index(c.size()) != sys.atom_mat.cols())
        throw std::invalid_argument("synthesis: coefficient count does not match the lattice");
    SampledState out(sys.window.grid);
    Eigen::VectorXcd::Map(out.values.data(), sys.atom_mat.rows()) =
        sys.atom_mat * Eigen::Map<const Eigen::VectorXcd>(c.data(), Eigen::Index(c.size()));
    return out;
}

/// S_{gamma,g} f: analyze against g_sys, synthesize with gamma_sys.
inline SampledState frame_operator(const GaborSystem& g_sys, const GaborSystem& gamma_sys,
                                   const SampledState& f) {
    return synthesis(gamma_sys, analysis(g_sys, f));
}

/// S_{g,g} f.
inline SampledState frame_apply(const GaborSystem& sys, const SampledState& f) {
    return synthesis(sys, analysis(sys, f));
}

struct FrameBounds {
    double A = 0.0;
    double B = 0.0;
    double residual_A = 0.0;
    double residual_B = 0.0;
    int iterations_A = 0;
    int iterations_B = 0;
    int probe_count = 0;
    int probe_rank = 0;
};

struct FrameBoundsOptions {
    int margin = 2;            // lattice layers trimmed off the probe hull
    int refine = 2;            // probe lattice densification factor
    double gram_floor = 1e-10; // relative eigenvalue floor when orthonormalizing probes
    double tol = 1e-8;         // Ritz residual target
    int max_iterations = 400;  // Lanczos / polishing caps
    std::uint64_t seed = 0x5eed5eedULL;
};

namespace detail {

inline Eigen::VectorXcd seeded_vector(Eigen::Index n, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.gaussian_cplx();
    v.normalize();
    return v;
}

/// One spectral end of a Hermitian matrix: seeded Lanczos with full
/// reorthogonalization, then shifted inverse-iteration polishing.
/// Returns (theta, residual, iterations).
inline std::tuple<double, double, int> hermitian_extreme(const Eigen::MatrixXcd& Sv, bool largest,
                                                         double tol, int maxit,
                                                         std::uint64_t seed) {
    const Eigen::Index n = Sv.rows();
    if (n == 1) return {Sv(0, 0).real(), 0.0, 0};
    const int k_max = std::min<int>(maxit, int(n));
    Eigen::MatrixXcd V(n, k_max);
    Eigen::VectorXd a(k_max), b(k_max);
    Eigen::VectorXcd v = seeded_vector(n, seed);
    Eigen::VectorXcd w;
    int k = 0;
    for (; k < k_max; ++k) {
        V.col(k) = v;
        w = Sv * v;
        a(k) = v.dot(w).real();
        w -= a(k) * v;
        if (k > 0) w -= b(k - 1) * V.col(k - 1);
        for (int r = 0; r <= k; ++r) w -= V.col(r).dot(w) * V.col(r);
        b(k) = w.norm();
        if (b(k) < 1e-14) {
            ++k;
            break;
        }
        v = w / b(k);
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        T(i, i) = a(i);
        if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = b(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::Index pick = largest ? k - 1 : 0;
    double theta = es.eigenvalues()(pick);
    Eigen::VectorXcd y = V.leftCols(k) * es.eigenvectors().col(pick).cast<cplx>();
    y.normalize();
    double resid = (Sv * y - theta * y).norm();

    const double scale = std::max(std::abs(theta), Sv.norm() / double(n));
    int polish = 0;
    while (resid > tol * std::max(scale, 1e-300) && polish < 30) {
        const Eigen::MatrixXcd shifted = Sv - theta * Eigen::MatrixXcd::Identity(n, n);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
        const Eigen::VectorXcd z = lu.solve(y);
        const double zn = z.norm();
        if (!(zn > 0.0) || !std::isfinite(zn)) break;
        y = z / zn;
        theta = y.dot(Sv * y).real();
        resid = (Sv * y - theta * y).norm();
        ++polish;
    }
    return {theta, resid, k + polish};
}

}  // namespace detail

/// Frame-bound estimate restricted to states essentially supported in the
/// lattice hull. The probe space is spanned by window shifts on a denser
/// sublattice of the hull interior (margin layers removed, spacing divided
/// by refine); the restricted frame operator is compressed onto an
/// orthonormalized probe basis and its spectral extremes are computed by a
/// seeded Krylov run plus shifted inverse iteration.
inline FrameBounds frame_bounds(const GaborSystem& sys, const FrameBoundsOptions& opt = {}) {
    const Lattice<1>& lat = sys.lattice;
    const double dx = sys.window.grid.dx();
    const int k_inner = std::max(lat.truncation() - opt.margin, 0);
    const int k_probe = std::max(opt.refine * k_inner, 1);
    const Lattice<1> probe_lat = Lattice<1>::make(lat.alpha() / opt.refine, lat.beta() / opt.refine,
                                                  lat.scale(), k_probe, sys.window.grid);
    Eigen::MatrixXcd probe_mat(Eigen::Index(sys.window.grid.M), Eigen::Index(probe_lat.size()));
    for (std::size_t i = 0; i < probe_lat.size(); ++i) {
        const SampledState p = heisenberg_shift(sys.hp, probe_lat.point(i), sys.window);
        probe_mat.col(Eigen::Index(i)) = as_vec(p);
    }

    // C(l, p) = <probe_p, atom_l>, G(q, p) = <probe_p, probe_q>.
    const Eigen::MatrixXcd C = dx * (sys.atom_mat.adjoint() * probe_mat);
    Eigen::MatrixXcd G = dx * (probe_mat.adjoint() * probe_mat);
    G = 0.5 * (G + Eigen::MatrixXcd(G.adjoint()));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ges(G);
    const Eigen::VectorXd gev = ges.eigenvalues();
    const Eigen::Index P = G.rows();
    const double gmax = gev(P - 1);
    if (!(gmax > 0.0)) throw std::runtime_error("frame_bounds: degenerate probe space");
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < P; ++i)
        if (gev(i) > opt.gram_floor * gmax) ++keep;
    Eigen::MatrixXcd Q(P, keep);
    for (Eigen::Index i = 0, c = 0; i < P; ++i) {
        if (gev(i) > opt.gram_floor * gmax) {
            Q.col(c) = ges.eigenvectors().col(i) / std::sqrt(gev(i));
            ++c;
        }
    }
    const Eigen::MatrixXcd CQ = C * Q;
    Eigen::MatrixXcd Sv = CQ.adjoint() * CQ;  // restricted frame operator
    Sv = 0.5 * (Sv + Eigen::MatrixXcd(Sv.adjoint()));

    FrameBounds fb;
    fb.probe_count = int(P);
    fb.probe_rank = int(keep);
    auto [tb, rb, ib] = detail::hermitian_extreme(Sv, true, opt.tol, opt.max_iterations, opt.seed);
    auto [ta, ra, ia] = detail::hermitian_extreme(Sv, false, opt.tol, opt.max_iterations, opt.seed ^ 0x9e37ULL);
    fb.B = tb;
    fb.A = std::max(ta, 0.0);
    fb.residual_B = rb;
    fb.residual_A = ra;
    fb.iterations_B = ib;
    fb.iterations_A = ia;
    if (rb > 100 * opt.tol * std::max(tb, 1e-300))
        throw std::runtime_error("frame_bounds: upper-bound iteration did not converge, residual " +
                                 std::to_string(rb));
    return fb;
}

struct CanonicalDualResult {
    SampledState window;
    int iterations = 0;
    double residual = 0.0;  // ||S gamma - g|| / ||g||
};

struct CanonicalDualOptions {
    double tol = 1e-10;
    int max_iterations = 5000;
};

/// gamma = S_{g,g}^{-1} g by conjugate gradients on the frame operator.
/// Fails loudly when CG stagnates (the system is then not a usable frame).
inline CanonicalDualResult canonical_dual(const GaborSystem& sys,
                                          const CanonicalDualOptions& opt = {}) {
    const SampledState& g = sys.window;
    const double gnorm = l2_norm(g);
    SampledState x(g.grid);
    SampledState r = g;
    SampledState p = r;
    double rs = norm_sq(r);
    const double target = opt.tol * gnorm;
    int it = 0;
    double best = std::sqrt(rs);
    int since_best = 0;
    while (std::sqrt(rs) > target) {
        if (it >= opt.max_iterations || since_best > 200)
            throw std::runtime_error("canonical_dual: CG stagnated (relative residual " +
                                     std::to_string(std::sqrt(rs) / gnorm) +
                                     "), system is likely not a frame");
        const SampledState Ap = frame_apply(sys, p);
        const double pAp = inner(Ap, p).real();
        if (!(pAp > 0.0)) throw std::runtime_error("canonical_dual: frame operator lost positivity");
        const double alpha = rs / pAp;
        axpy(x, alpha, p);
        axpy(r, -alpha, Ap);
        const double rs_new = norm_sq(r);
        const double beta = rs_new / rs;
        for (std::size_t j = 0; j < p.values.size(); ++j) p.values[j] = r.values[j] + beta * p.values[j];
        rs = rs_new;
        ++it;
        const double cur = std::sqrt(rs);
        if (cur < 0.5 * best) {
            best = cur;
            since_best = 0;
        } else {
            ++since_best;
        }
    }
    return {std::move(x), it, std::sqrt(rs) / gnorm};
}

/// Maps a system at hbar0 = 1/(2 pi) to the target hbar: the window becomes
/// D_{h^{-1/2}} g and the lattice is rescaled by h^{1/2}. Frame bounds are
/// invariant under this correspondence.
inline GaborSystem rescale_system(const GaborSystem& sys, const PlanckPair& target,
                                  DilationReport* report = nullptr) {
    if (std::abs(sys.hp.h() - 1.0) > 1e-12)
        throw std::invalid_argument("rescale_system: source system must be at hbar = 1/(2 pi)");
    const double rh = target.root_h();
    SampledState w = dilate(1.0 / rh, sys.window, report);
    const Lattice<1>& l = sys.lattice;
    const Lattice<1> scaled =
        Lattice<1>::make(l.alpha(), l.beta(), l.scale() * rh, l.truncation(), sys.window.grid);
    return make_gabor_system(std::move(w), scaled, target);
}

}  // namespace sctf
