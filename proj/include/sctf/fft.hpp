#pragma once

#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sctf/common.hpp"

namespace sctf {

namespace detail {

inline bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

// Twiddle tables are cached per size; map nodes are reference-stable.
inline const std::vector<cplx>& twiddles(std::size_t m) {
    static std::mutex mtx;
    static std::unordered_map<std::size_t, std::vector<cplx>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<cplx> w(m / 2);
    for (std::size_t k = 0; k < m / 2; ++k) {
        const double ang = -two_pi * double(k) / double(m);
        w[k] = {std::cos(ang), std::sin(ang)};
    }
    return cache.emplace(m, std::move(w)).first->second;
}

}  // namespace detail

/// In-place radix-2 transform. Forward kernel is e^{-2pi i jk/M}; the
/// inverse conjugates the kernel and divides by M, so ifft(fft(a)) == a.
inline void fft_inplace(std::vector<cplx>& a, bool inverse = false) {
    const std::size_t m = a.size();
    if (!detail::is_pow2(m)) throw std::invalid_argument("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < m; ++i) {
        std::size_t bit = m >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& w = detail::twiddles(m);
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t stride = m / len;
        for (std::size_t i = 0; i < m; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx tw = w[k * stride];
                if (inverse) tw = std::conj(tw);
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * tw;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / double(m);
        for (auto& x : a) x *= inv;
    }
}

inline std::vector<cplx> fft(std::vector<cplx> a, bool inverse = false) {
    fft_inplace(a, inverse);
    return a;
}

}  // namespace sctf
