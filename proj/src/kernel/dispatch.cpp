#include <atomic>
#include <cmath>

#include "dzl/kernel.hpp"

namespace dzl::kernel {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(DZL_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{cpu_has_avx2() ? Backend::avx2 : Backend::scalar};
    return b;
}

// The vector sincos reduces by π/2 with a 32-bit quadrant index and is only
// accurate well below that; larger phases go to libm.
constexpr double kMaxVectorPhase = 1e8;

bool phase_in_range(const Terms& terms, double t) {
    const double lmax = terms.logn.empty() ? 0.0 : terms.logn.back();
    return std::abs(t) * lmax < kMaxVectorPhase;
}

}  // namespace

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool backend_available(Backend b) noexcept { return b == Backend::scalar || cpu_has_avx2(); }

bool set_backend(Backend b) noexcept {
    if (!backend_available(b)) return false;
    current().store(b, std::memory_order_relaxed);
    return true;
}

std::string_view backend_name(Backend b) noexcept { return b == Backend::avx2 ? "avx2" : "scalar"; }

std::complex<double> eval_point(const Terms& terms, double sigma, double t) {
#if defined(DZL_HAVE_AVX2_TU)
    if (active_backend() == Backend::avx2 && phase_in_range(terms, t)) return avx2::eval_point(terms, sigma, t);
#endif
    return scalar::eval_point(terms, sigma, t);
}

void eval_row(const Terms& terms, double sigma, std::span<const double> ts, std::span<std::complex<double>> out) {
#if defined(DZL_HAVE_AVX2_TU)
    if (active_backend() == Backend::avx2) {
        bool ok = true;
        for (double t : ts) ok = ok && phase_in_range(terms, t);
        if (ok) return avx2::eval_row(terms, sigma, ts, out);
        for (std::size_t i = 0; i < ts.size(); ++i) out[i] = eval_point(terms, sigma, ts[i]);
        return;
    }
#endif
    scalar::eval_row(terms, sigma, ts, out);
}

double abs_sum(const Terms& terms, double sigma) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < terms.logn.size(); ++i) {
        const double a = std::hypot(terms.re[i], terms.im[i]) * std::exp(-sigma * terms.logn[i]);
        const double t = s + a;
        c += (s >= a) ? (s - t) + a : (a - t) + s;
        s = t;
    }
    return s + c;
}

#if !defined(DZL_HAVE_AVX2_TU)
namespace avx2 {
std::complex<double> eval_point(const Terms& terms, double sigma, double t) { return scalar::eval_point(terms, sigma, t); }
void eval_row(const Terms& terms, double sigma, std::span<const double> ts, std::span<std::complex<double>> out) {
    scalar::eval_row(terms, sigma, ts, out);
}
void exp4(const double* x, double* out) {
    for (int i = 0; i < 4; ++i) out[i] = std::exp(x[i]);
}
void sincos4(const double* x, double* s, double* c) {
    for (int i = 0; i < 4; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}
}  // namespace avx2
#endif

}  // namespace dzl::kernel
