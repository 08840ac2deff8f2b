#pragma once

// Adaptive Gauss–Kronrod quadrature and the contour-integral checks built on it:
// truncated Perron, Hankel's formula for 1/Γ, the vertical-segment bound and the
// Shiu short-interval envelope.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dzl/arith.hpp"

namespace dzl {

struct QuadResult {
    std::complex<double> value;
    double abs_err_estimate = 0.0;
    std::size_t panels = 0;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_panels = 1'000'000;
    /// Initial uniform split of [a, b].
    std::size_t initial_panels = 1;
};

/// Evaluates the integrand at all nodes of one panel at once.
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<std::complex<double>> out)>;
using Integrand = std::function<std::complex<double>(double)>;

/// Globally adaptive 15-point Gauss–Kronrod on [a, b]. Error estimate per panel is |K15 − G7|.
QuadResult integrate(const BatchIntegrand& f, double a, double b, const QuadOptions& opts = {});
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts = {});

/// Sum of integrals over consecutive breakpoints, each panel set adaptive on its own.
QuadResult integrate_breakpoints(const Integrand& f, std::span<const double> points, const QuadOptions& opts = {});

struct ContourSegment {
    enum class Kind { vertical, horizontal, arc };
    Kind kind = Kind::vertical;
    std::complex<double> start;
    std::complex<double> end;
    // arc only
    std::complex<double> center;
    double radius = 0.0;
    double theta_start = 0.0;
    double theta_end = 0.0;

    static ContourSegment line(std::complex<double> a, std::complex<double> b);
    static ContourSegment arc(std::complex<double> center, double radius, double theta_start, double theta_end);
};

/// ∫ f(s) ds along a segment.
QuadResult integrate_segment(const std::function<std::complex<double>(std::complex<double>)>& f,
                             const ContourSegment& seg, const QuadOptions& opts = {});

struct PerronResult {
    std::complex<double> approx;
    std::complex<double> exact;
    double stated_error_term = 0.0;  // x^α Σ|f(n)|/(n^α(1+T|log(x/n)|))
    double quadrature_error = 0.0;
    double truncation_error = 0.0;  // surrogate terms n > M
    std::size_t surrogate_terms = 0;
    double x = 0.0;
    bool x_was_shifted = false;
    bool x_near_integer = false;

    double total_budget() const { return stated_error_term + quadrature_error + truncation_error; }
};

struct PerronOptions {
    /// Surrogate length; 0 picks max(20·x, 2000) capped by the table length.
    std::size_t terms = 0;
    /// Move an integral x to x + 1/2 instead of only flagging it.
    bool shift_integer_x = false;
    QuadOptions quad{};
};

/// Σ_{n≤x} f(n) against (1/2πi)∫_{α−iT}^{α+iT} F(s) x^s/s ds with the F-surrogate.
PerronResult perron_partial_sum(const MultiplicativeFunction& f, double x, double alpha, double T,
                                const PerronOptions& opts = {});

struct HankelResult {
    QuadResult quad;
    /// 47^{|z|} Γ(1+|z|) e^{−X/2}.
    double stated_envelope = 0.0;
    /// Bound on the discarded ray parts beyond ℜs = −X, each ray bounded separately.
    double truncation_bound = 0.0;

    double error_bound() const { return quad.abs_err_estimate + truncation_bound; }
};

/// (1/2πi)∫_{𝓗(X)} s^{−z} e^s ds over the truncated Hankel loop of radius r.
HankelResult hankel_gamma(std::complex<double> z, double X, double r = 1.0, const QuadOptions& opts = {});

struct SegmentBoundResult {
    std::complex<double> value;
    double stated_bound = 0.0;  // x^τ / (K |log x|)
    double ratio = 0.0;
    double quad_error = 0.0;
};

/// (1/2πi)∫_{τ+iK}^{τ+iT} x^w/w dw.
SegmentBoundResult vertical_segment_bound(double x, double tau, double K, double T, const QuadOptions& opts = {});

struct ShiuResult {
    double lhs = 0.0;
    double rhs_envelope = 0.0;
    double ratio = 0.0;
    double prime_sum = 0.0;
};

/// Σ_{x−z≤n≤x}|f(n)| against (z/log x)·exp(Σ_{p≤x}|f(p)|/p), with x^{0.1} ≤ z ≤ x.
ShiuResult shiu_ratio(const MultiplicativeFunction& f, double x, double z);

}  // namespace dzl
