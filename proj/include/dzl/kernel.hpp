#pragma once

// Inner loops of Dirichlet polynomial evaluation, Σ c_n e^{−σ log n} e^{−it log n}.
//
// Two backends share one contract: a scalar reference built on libm and an AVX2/FMA
// variant with its own exp/sincos. The backend is chosen once at startup from CPUID
// and can be overridden for testing. Within a backend the single-point and row
// entry points produce bitwise-identical sums: per-lane compensated accumulators
// over n in the same order, reduced lane 0..3 at the end.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace dzl::kernel {

enum class Backend { scalar, avx2 };

/// Structure-of-arrays view of coefficients and their logarithms.
struct Terms {
    std::span<const double> re;
    std::span<const double> im;
    std::span<const double> logn;
};

/// Accumulator lanes shared by all backends so that results are comparable.
inline constexpr std::size_t kLanes = 4;
/// t-values processed together by the row kernel.
inline constexpr std::size_t kRowChunk = 64;

Backend active_backend() noexcept;
bool backend_available(Backend b) noexcept;
/// Returns false (and changes nothing) when the CPU lacks the backend.
bool set_backend(Backend b) noexcept;
std::string_view backend_name(Backend b) noexcept;

/// Σ c_n n^{−s}.
std::complex<double> eval_point(const Terms& terms, double sigma, double t);

/// out[i] = Σ c_n n^{−σ−i t_i}; weights n^{−σ} are computed once.
void eval_row(const Terms& terms, double sigma, std::span<const double> ts, std::span<std::complex<double>> out);

/// Σ |c_n| n^{−σ} (scalar everywhere).
double abs_sum(const Terms& terms, double sigma);

/// Backend-specific entry points, exposed for equivalence tests.
namespace scalar {
std::complex<double> eval_point(const Terms& terms, double sigma, double t);
void eval_row(const Terms& terms, double sigma, std::span<const double> ts, std::span<std::complex<double>> out);
}  // namespace scalar

namespace avx2 {
std::complex<double> eval_point(const Terms& terms, double sigma, double t);
void eval_row(const Terms& terms, double sigma, std::span<const double> ts, std::span<std::complex<double>> out);
void exp4(const double* x, double* out);
void sincos4(const double* x, double* s, double* c);
}  // namespace avx2

}  // namespace dzl::kernel
