#pragma once

// Dense-grid zero oracle: local minima of |F| on a fine grid, each polished by a plain
// Newton iteration with naive evaluation, de-duplicated. Independent of the winding code.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

struct NaivePoly {
    std::vector<std::complex<double>> c;  // c[i] ↔ n = i + 1
    std::vector<double> logn;

    explicit NaivePoly(std::vector<std::complex<double>> coeff) : c(std::move(coeff)) {
        for (std::size_t i = 0; i < c.size(); ++i) logn.push_back(std::log(static_cast<double>(i + 1)));
    }
    std::complex<double> operator()(std::complex<double> s) const {
        std::complex<double> v = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * std::exp(-s * logn[i]);
        return v;
    }
    std::complex<double> deriv(std::complex<double> s) const {
        std::complex<double> v = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) v -= c[i] * logn[i] * std::exp(-s * logn[i]);
        return v;
    }
};

inline bool newton(const NaivePoly& f, std::complex<double>& z) {
    for (int it = 0; it < 60; ++it) {
        const auto d = f.deriv(z);
        if (d == 0.0) return false;
        const auto step = f(z) / d;
        z -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) return true;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return std::abs(f(z)) < 1e-10;
}

/// Zeros in [s0, s1] × [t0, t1] found from grid minima with spacing h.
inline std::vector<std::complex<double>> grid_zeros(const NaivePoly& f, double s0, double s1, double t0, double t1,
                                                    double h) {
    const int ns = static_cast<int>(std::ceil((s1 - s0) / h)) + 1;
    const int nt = static_cast<int>(std::ceil((t1 - t0) / h)) + 1;
    std::vector<double> a(static_cast<std::size_t>(ns) * nt);
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * nt + j]; };
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) at(i, j) = std::abs(f({s0 + i * h, t0 + j * h}));
    std::vector<std::complex<double>> out;
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < nt; ++j) {
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ii = i + di, jj = j + dj;
                    if ((di || dj) && ii >= 0 && ii < ns && jj >= 0 && jj < nt && at(ii, jj) < at(i, j)) {
                        is_min = false;
                        break;
                    }
                }
            if (!is_min) continue;
            std::complex<double> z{s0 + i * h, t0 + j * h};
            if (!newton(f, z)) continue;
            if (std::abs(z - std::complex<double>{s0 + i * h, t0 + j * h}) > 4.0 * h) continue;
            bool dup = false;
            for (const auto& w : out) dup = dup || std::abs(w - z) < 1e-8;
            if (!dup) out.push_back(z);
        }
    }
    return out;
}

}  // namespace oracle
