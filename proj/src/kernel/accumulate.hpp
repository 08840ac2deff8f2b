#pragma once

// Lane accumulator arithmetic shared by the scalar kernel and the AVX2 tail path.

#include <array>
#include <complex>

#include "dzl/kernel.hpp"

namespace dzl::kernel::detail {

/// Knuth TwoSum: s += x, rounding error folded into c.
inline void two_sum_acc(double& s, double& c, double x) {
    const double t = s + x;
    const double z = t - s;
    const double e = (s - (t - z)) + (x - z);
    s = t;
    c += e;
}

struct LaneSums {
    std::array<double, kLanes> sre{};
    std::array<double, kLanes> cre{};
    std::array<double, kLanes> sim{};
    std::array<double, kLanes> cim{};
};

inline double reduce_lanes(const std::array<double, kLanes>& s, const std::array<double, kLanes>& c) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t l = 0; l < kLanes; ++l) two_sum_acc(sum, comp, s[l]);
    for (std::size_t l = 0; l < kLanes; ++l) comp += c[l];
    return sum + comp;
}

inline std::complex<double> reduce(const LaneSums& a) {
    return {reduce_lanes(a.sre, a.cre), reduce_lanes(a.sim, a.cim)};
}

/// (re + i·im)·w·(cos θ − i sin θ), written out so every backend uses the same operation order.
inline void term(double re, double im, double w, double c, double s, double& tr, double& ti) {
    const double a = re * c + im * s;
    const double b = im * c - re * s;
    tr = w * a;
    ti = w * b;
}

}  // namespace dzl::kernel::detail
