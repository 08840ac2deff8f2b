#pragma once

// The period-1 unit-modulus phase function b_δ used to build the twist, together
// with its real Fourier coefficients.

#include <complex>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace dzl {

class BDelta {
public:
    /// δ ∈ [0, 1/2].
    explicit BDelta(double delta);
    BDelta(const BDelta& other);
    BDelta& operator=(const BDelta& other);

    double delta() const noexcept { return delta_; }

    /// b_δ(θ). θ is reduced into (−δ, 1−δ]; θ = δ takes the first branch.
    /// For δ = 0 the value at integers is −1.
    std::complex<double> operator()(double theta) const;

    /// Closed-form b̂_δ(j), cached.
    double coeff(long j) const;

    /// b̂_δ(1) − b̂_δ(0) in closed form; throws DomainError at δ = 1/2.
    double gap() const;

private:
    double delta_;
    mutable std::mutex mu_;
    mutable std::map<long, double> cache_;
};

/// Uncached closed form, shared by BDelta::coeff.
double fourier_coeff_closed_form(double delta, long j);

/// ∫_{-δ}^{1-δ} b_δ(θ) e^{-2πijθ} dθ by adaptive Gauss–Kronrod split at the branch points.
std::complex<double> fourier_coeff_quadrature(double delta, long j, double abs_tol = 1e-11);

struct FourierPropertyFailure {
    int property = 0;  // 1..5 for (i)..(v)
    double delta = 0.0;
    long j = 0;
    double residual = 0.0;
};

struct FourierPropertyReport {
    bool pass[5] = {true, true, true, true, true};
    /// Largest (1+j²)|b̂_δ(j)| per δ on |j| ≤ J, from the quadrature coefficients.
    std::vector<double> decay_constant;
    /// Largest |formula − quadrature| on the whole grid.
    double max_formula_error = 0.0;
    double max_imag_part = 0.0;
    std::vector<FourierPropertyFailure> failures;

    bool all_pass() const { return pass[0] && pass[1] && pass[2] && pass[3] && pass[4]; }
};

/// Checks properties (i)–(v) of the Fourier coefficients on the given δ grid for |j| ≤ J.
FourierPropertyReport verify_fourier_properties(const std::vector<BDelta>& grid, long J);

struct FourierRow {
    double delta;
    long j;
    double formula;
    double quadrature;
    double abs_err;
};

std::vector<FourierRow> fourier_table(const std::vector<double>& deltas, long J);

}  // namespace dzl
