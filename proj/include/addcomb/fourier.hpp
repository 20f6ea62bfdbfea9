#pragma once

#include <complex>
#include <vector>

#include "setops.hpp"

namespace addcomb {

using ComplexVec = std::vector<std::complex<double>>;

// Fourier transform on the group, fhat(xi) = sum_x f(x) e(-xi . x), stored
// over the dual group identified with the group itself (same index space).
struct Spectrum {
    GroupSpec group;
    ComplexVec values;
};

/// O(N^2) character-sum reference transform.
inline Spectrum dft_naive(const GroupSpec& g, const ComplexVec& f) {
    if (f.size() != g.size()) throw std::invalid_argument("dft: function length != group size");
    const std::size_t n = f.size();
    Spectrum s{g, ComplexVec(n)};
    for (elem_index xi = 0; xi < n; ++xi) {
        std::complex<double> acc = 0.0;
        for (elem_index x = 0; x < n; ++x) acc += f[x] * std::conj(g.character(xi, x));
        s.values[xi] = acc;
    }
    return s;
}

namespace detail {

// One axis of the mixed-radix transform; the array is viewed as
// [pre][n][post] and each length-n line is transformed independently.
inline void dft_axis(ComplexVec& a, std::size_t pre, std::size_t n, std::size_t post, bool inverse) {
    if (n == 1) return;
    if (n == 2) {
        for (std::size_t p = 0; p < pre; ++p)
            for (std::size_t q = 0; q < post; ++q) {
                const std::size_t i0 = (p * 2) * post + q, i1 = i0 + post;
                const auto u = a[i0], v = a[i1];
                a[i0] = u + v;
                a[i1] = u - v;
            }
        return;
    }
    const double sign = inverse ? 1.0 : -1.0;
    ComplexVec w(n), line(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double ang = sign * 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        w[j] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t p = 0; p < pre; ++p)
        for (std::size_t q = 0; q < post; ++q) {
            const std::size_t base = p * n * post + q;
            for (std::size_t k = 0; k < n; ++k) line[k] = a[base + k * post];
            for (std::size_t out = 0; out < n; ++out) {
                std::complex<double> acc = 0.0;
                for (std::size_t k = 0; k < n; ++k) acc += line[k] * w[(out * k) % n];
                a[base + out * post] = acc;
            }
        }
}

inline void dft_all_axes(const GroupSpec& g, ComplexVec& a, bool inverse) {
    std::size_t pre = 1;
    std::size_t post = g.size();
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const std::size_t n = static_cast<std::size_t>(g.orders()[i]);
        post /= n;
        dft_axis(a, pre, n, post, inverse);
        pre *= n;
    }
}

} // namespace detail

/// In-place Walsh-Hadamard transform; length must be a power of two.
/// Self-inverse up to the factor N.
inline void walsh_hadamard(ComplexVec& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("walsh_hadamard: length not a power of two");
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t i = 0; i < n; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const auto u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
}

/// Per-axis fast transform (general orders). Matches dft_naive to 1e-9.
inline Spectrum dft_mixed_radix(const GroupSpec& g, ComplexVec f) {
    if (f.size() != g.size()) throw std::invalid_argument("dft: function length != group size");
    detail::dft_all_axes(g, f, /*inverse=*/false);
    return Spectrum{g, std::move(f)};
}

/// Fast transform: Walsh-Hadamard butterflies when every order is 2,
/// otherwise sequential per-axis 1-D transforms.
inline Spectrum dft(const GroupSpec& g, ComplexVec f) {
    if (f.size() != g.size()) throw std::invalid_argument("dft: function length != group size");
    if (g.all_orders_two() && g.size() > 1) {
        walsh_hadamard(f);
        return Spectrum{g, std::move(f)};
    }
    return dft_mixed_radix(g, std::move(f));
}

inline ComplexVec idft(const Spectrum& s) {
    if (s.values.size() != s.group.size()) throw std::invalid_argument("idft: spectrum length != group size");
    ComplexVec f = s.values;
    detail::dft_all_axes(s.group, f, /*inverse=*/true);
    const double scale = 1.0 / static_cast<double>(s.group.size());
    for (auto& v : f) v *= scale;
    return f;
}

inline ComplexVec indicator_function(const GroupSet& A) {
    ComplexVec f(A.group().size(), 0.0);
    for (const auto a : A.elements()) f[a] = 1.0;
    return f;
}

inline Spectrum dft_set(const GroupSet& A) { return dft(A.group(), indicator_function(A)); }

/// Spectral energy E(A,B) = (1/N) sum_xi |Ahat|^2 |Bhat|^2. Floating-point
/// cross-check for the exact combinatorial count.
inline double energy_spectral(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    const Spectrum sa = dft_set(A), sb = dft_set(B);
    double acc = 0.0;
    for (std::size_t xi = 0; xi < sa.values.size(); ++xi)
        acc += std::norm(sa.values[xi]) * std::norm(sb.values[xi]);
    return acc / static_cast<double>(A.group().size());
}

} // namespace addcomb
