#pragma once

// Zero localization for Dirichlet polynomials: argument-principle winding numbers on
// rectangles, quadrisection, Newton refinement, zero-free certification and the
// rightmost-zero scan. Also the closed-form zero-free thresholds and δ(c).

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dzl/dirpoly.hpp"

namespace dzl {

struct Rectangle {
    double sigma_lo = 0.0, sigma_hi = 0.0, t_lo = 0.0, t_hi = 0.0;

    void validate() const;
    double width() const { return sigma_hi - sigma_lo; }
    double height() const { return t_hi - t_lo; }
    double diameter() const;
    cplx center() const { return {0.5 * (sigma_lo + sigma_hi), 0.5 * (t_lo + t_hi)}; }
    bool contains(cplx z) const;
};

/// Raised when |f| on the boundary drops below the zero margin; perturb the box and retry.
class BoundaryZeroError : public std::runtime_error {
public:
    BoundaryZeroError(const std::string& what, cplx where, double modulus)
        : std::runtime_error(what), where(where), modulus(modulus) {}
    cplx where;
    double modulus;
};

/// A function to wind around. `vertical` is optional batch evaluation at fixed σ.
struct Evaluator {
    std::function<cplx(cplx)> point;
    std::function<void(double sigma, std::span<const double> ts, std::span<cplx> out)> vertical;

    static Evaluator of(const DirichletPolynomial& p);
};

struct WindingOptions {
    /// Boundary modulus below zero_margin·scale is treated as a zero on the boundary.
    double zero_margin = 1e-10;
    double scale = 1.0;
    /// Largest parameter step between boundary samples, in units of s.
    double max_step = 0.05;
    std::size_t min_samples_per_side = 8;
    int max_depth = 48;
};

struct WindingResult {
    int winding = 0;
    /// Argument change along bottom (→), right (↑), top (←), left (↓).
    std::array<double, 4> side_arg{};
    double min_boundary_modulus = 0.0;
    std::size_t segments = 0;
};

/// Winding of f around the positively oriented boundary. Every accepted sub-segment
/// has a phase change below π/2.
WindingResult winding_number(const Evaluator& f, const Rectangle& box, const WindingOptions& opts = {});

/// Options tuned to a polynomial: margin scaled by Σ|c_n| n^{−σ} at the box's left edge,
/// step bounded by 0.5 / log N.
WindingOptions poly_winding_options(const DirichletPolynomial& p, const Rectangle& box);

struct ZeroRecord {
    cplx location;
    double residual = 0.0;  // |F_N| at location
    double relative_residual = 0.0;
    int winding = 0;  // of `box`
    Rectangle box;
    int iterations = 0;
};

struct RefineOptions {
    double tol = 1e-12;
    int max_iterations = 100;
    /// Half-width of the certification box.
    double certify_radius = 1e-6;
};

/// Newton (secant fallback) to |F_N(z)| < tol·Σ|c_n| n^{−σ}, then a winding check on
/// the square of half-width certify_radius around the result.
ZeroRecord refine_zero(const DirichletPolynomial& p, cplx seed, const RefineOptions& opts = {});

struct QuadrisectionRecord {
    Rectangle parent;
    int parent_winding = 0;
    std::array<int, 4> child_winding{};
    bool conserved() const {
        return parent_winding == child_winding[0] + child_winding[1] + child_winding[2] + child_winding[3];
    }
};

struct FindOptions {
    double min_diameter = 1e-6;
    /// Boxes of winding 1 below this diameter first try Newton from the center.
    double newton_diameter = 1e-3;
    int max_jitter_attempts = 5;
    double jitter = 1e-9;
    RefineOptions refine{};
};

struct FindResult {
    std::vector<ZeroRecord> zeros;
    std::vector<QuadrisectionRecord> subdivisions;
    Rectangle box;  // after any boundary jitter
    int winding = 0;
    int jitter_attempts = 0;
};

FindResult find_zeros(const DirichletPolynomial& p, const Rectangle& box, const FindOptions& opts = {});

/// Smallest σ with Σ_{n≥2}|c_n| n^{−σ} < |c_1|; +∞ if c_1 = 0.
double domination_abscissa(const DirichletPolynomial& p);

struct CertifyOptions {
    double box_height = 1.0;
    FindOptions find{};
};

struct CertifyReport {
    bool zero_free = true;
    double sigma0 = 0.0;
    double sigma_dom = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    std::size_t boxes = 0;
    double min_modulus = 0.0;
    /// True when σ0 ≥ σ_dom and no boxes were needed.
    bool dominated = false;
    std::vector<Rectangle> offending;
    std::vector<int> offending_winding;
    std::vector<int> windings;  // per box, t ascending
};

CertifyReport certify_zero_free(const DirichletPolynomial& p, double sigma0, double t_lo, double t_hi,
                                const CertifyOptions& opts = {});

struct RightmostOptions {
    double strip_width = 0.05;
    double box_height = 2.0;
    FindOptions find{};
};

struct RightmostResult {
    std::optional<double> sigma_max;
    std::optional<ZeroRecord> witness;
    double sigma_dom = 0.0;
    std::size_t strips = 0;
};

RightmostResult rightmost_zero_scan(const DirichletPolynomial& p, double sigma_floor, double t_lo, double t_hi,
                                    const RightmostOptions& opts = {});

// ---------------------------------------------------------------------------
// Closed forms.

/// 1 + (4k/π − 1)·log log N / log N, for N > e.
double threshold(double N, double k);
/// Same with log N supplied directly (log N > 1).
double threshold_from_log(double logN, double k);

/// δ = (4m/π − 1 − c)/(50m); requires m > π/4 and 0 < c < 4m/π − 1.
double delta_for_c(double c, double m);

struct ChainReport {
    /// 8m/π−1−c, 4m/π, m·gap, 4m/π−2mπδ², 4m/π−50mδ, 1+c.
    std::array<double, 6> members{};
    /// Links: >, >, ≥, >, = (last compared at 1e-12).
    std::array<bool, 5> holds{};
    std::array<double, 4> slack{};  // first four links
    double identity_residual = 0.0;
    int violated_link = -1;  // −1 if none
    double tightest_slack = 0.0;
    bool pass() const { return violated_link < 0; }
};

ChainReport inequality_chain_check(double delta, double m, double c);

struct MontgomeryRectangle {
    Rectangle rect;
    /// σ₁ − 1 and σ₂ − 1 without cancellation.
    double offset_lo = 0.0, offset_hi = 0.0;
    double logN = 0.0;
};

/// σ₁ = 1 + c·LL/L, σ₂ = 1 + (8m/π − 2 − c)·LL/L, t ∈ [t1, t1 + 2π/L] with L = log N.
MontgomeryRectangle montgomery_rectangle(double N, double c, double m, double t1);
MontgomeryRectangle montgomery_rectangle_from_log(double logN, double c, double m, double t1);

}  // namespace dzl
