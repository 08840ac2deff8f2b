#include <cmath>
#include <vector>

#include "accumulate.hpp"

namespace dzl::kernel::scalar {

using detail::LaneSums;

std::complex<double> eval_point(const Terms& terms, double sigma, double t) {
    LaneSums acc;
    const std::size_t n = terms.logn.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double ln = terms.logn[i];
        const double w = std::exp(-sigma * ln);
        const double th = t * ln;
        double tr, ti;
        detail::term(terms.re[i], terms.im[i], w, std::cos(th), std::sin(th), tr, ti);
        const std::size_t l = i % kLanes;
        detail::two_sum_acc(acc.sre[l], acc.cre[l], tr);
        detail::two_sum_acc(acc.sim[l], acc.cim[l], ti);
    }
    return detail::reduce(acc);
}

void eval_row(const Terms& terms, double sigma, std::span<const double> ts, std::span<std::complex<double>> out) {
    const std::size_t n = terms.logn.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(-sigma * terms.logn[i]);

    constexpr std::size_t kBlock = 1024;
    for (std::size_t c0 = 0; c0 < ts.size(); c0 += kRowChunk) {
        const std::size_t cn = std::min(kRowChunk, ts.size() - c0);
        std::vector<LaneSums> acc(cn);
        for (std::size_t b0 = 0; b0 < n; b0 += kBlock) {
            const std::size_t b1 = std::min(n, b0 + kBlock);
            for (std::size_t k = 0; k < cn; ++k) {
                const double t = ts[c0 + k];
                LaneSums& a = acc[k];
                for (std::size_t i = b0; i < b1; ++i) {
                    const double th = t * terms.logn[i];
                    double tr, ti;
                    detail::term(terms.re[i], terms.im[i], w[i], std::cos(th), std::sin(th), tr, ti);
                    const std::size_t l = i % kLanes;
                    detail::two_sum_acc(a.sre[l], a.cre[l], tr);
                    detail::two_sum_acc(a.sim[l], a.cim[l], ti);
                }
            }
        }
        for (std::size_t k = 0; k < cn; ++k) out[c0 + k] = detail::reduce(acc[k]);
    }
}

}  // namespace dzl::kernel::scalar
