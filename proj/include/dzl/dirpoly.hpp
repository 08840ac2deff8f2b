#pragma once

// Dirichlet polynomials F_N(s) = Σ_{n≤N} c_n n^{−s}: batch evaluation, grids, and
// the truncated-series surrogates for F, log F and −F′/F.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dzl/arith.hpp"
#include "dzl/kernel.hpp"

namespace dzl {

class DirichletPolynomial {
public:
    /// coeff[0] ↔ n = 1, coeff[N-1] ↔ n = N.
    explicit DirichletPolynomial(std::span<const cplx> coeff);
    /// Coefficients n = 1..min(N, f.size()) of f.
    static DirichletPolynomial from_function(const MultiplicativeFunction& f, std::size_t N = 0);
    /// Arbitrary index set: c_i attached to frequency log n_i (n_i strictly increasing).
    DirichletPolynomial(std::span<const cplx> coeff, std::span<const double> logn);

    std::size_t size() const noexcept { return re_.size(); }
    cplx coeff(std::size_t i) const { return {re_[i], im_[i]}; }
    std::span<const double> logn() const noexcept { return logn_; }
    bool real_coefficients() const noexcept { return real_; }

    kernel::Terms terms() const noexcept { return {re_, im_, logn_}; }
    /// Terms of F′ up to sign: c_n log n.
    kernel::Terms derivative_terms() const noexcept { return {dre_, dim_, logn_}; }

    /// Σ |c_n| n^{−σ}.
    double abs_sum(double sigma) const;

private:
    void finish();

    std::vector<double> re_, im_, logn_, dre_, dim_;
    bool real_ = true;
};

cplx eval_poly(const DirichletPolynomial& p, cplx s);
/// F_N′(s) = −Σ c_n log n · n^{−s}.
cplx eval_poly_derivative(const DirichletPolynomial& p, cplx s);

/// Values at σ + i t_k for a fixed σ, reusing n^{−σ}.
void eval_vertical(const DirichletPolynomial& p, double sigma, std::span<const double> ts, std::span<cplx> out);

struct GridSpec {
    double sigma_lo = 0.0, sigma_hi = 0.0, sigma_step = 1.0;
    double t_lo = 0.0, t_hi = 0.0, t_step = 1.0;

    void validate() const;
    std::size_t rows() const;  // σ values
    std::size_t cols() const;  // t values
    double sigma(std::size_t i) const { return sigma_lo + static_cast<double>(i) * sigma_step; }
    double t(std::size_t j) const { return t_lo + static_cast<double>(j) * t_step; }
};

struct GridValues {
    GridSpec spec;
    std::size_t rows = 0, cols = 0;
    std::vector<cplx> values;  // row-major, row = σ

    const cplx& at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Throws DomainError naming the required bytes if the grid exceeds memory_budget.
GridValues eval_grid(const DirichletPolynomial& p, const GridSpec& g, std::size_t memory_budget = std::size_t{1} << 30);

void write_grid_csv(std::ostream& os, const GridValues& g);
/// Magic `DZLGRID1`, then u64 rows, u64 cols, f64 σ_lo, σ_step, t_lo, t_step, then row-major (re, im) pairs.
/// All little-endian.
void write_grid_binary(std::ostream& os, const GridValues& g);
GridValues read_grid_binary(std::istream& is);

// ---------------------------------------------------------------------------
// Series surrogates

enum class SurrogateMode { F, logF, FlogDeriv };

/// Truncation of one of the three series attached to f. FlogDeriv is Σ Λ_f(n) n^{−s} = −F′/F.
class SeriesSurrogate {
public:
    SeriesSurrogate(const MultiplicativeFunction& f, std::size_t M, SurrogateMode mode);
    /// Reuses a precomputed Λ_f.
    SeriesSurrogate(const MultiplicativeFunction& f, const VonMangoldtTable& lam, std::size_t M, SurrogateMode mode);

    std::size_t terms() const noexcept { return M_; }
    SurrogateMode mode() const noexcept { return mode_; }
    double k() const noexcept { return k_; }
    const DirichletPolynomial& polynomial() const noexcept { return poly_; }

private:
    std::size_t M_;
    SurrogateMode mode_;
    double k_;
    DirichletPolynomial poly_;
};

struct SurrogateValue {
    cplx value;
    double tail_bound = 0.0;
};

/// Requires ℜs > 1 (DomainError otherwise).
SurrogateValue eval_surrogate(const SeriesSurrogate& sur, cplx s);

/// Same sums evaluated on a vertical line σ (σ > 1), one value per t.
std::vector<SurrogateValue> eval_surrogate_vertical(const SeriesSurrogate& sur, double sigma, std::span<const double> ts);

/// Bound on Σ_{n>M} d_k(n) n^{−σ}, via ζ(σ′)^k M^{σ′−σ} at the optimal σ′ ∈ (1, σ).
double tail_bound_F(double k, std::size_t M, double sigma);
/// Bound on Σ_{n>M} kΛ(n)/(log n) n^{−σ} ≤ k M^{1−σ}/(σ−1).
double tail_bound_logF(double k, std::size_t M, double sigma);
/// Bound on Σ_{n>M} kΛ(n) n^{−σ} ≤ k M^{1−σ}(log M/(σ−1) + 1/(σ−1)²).
double tail_bound_logderiv(double k, std::size_t M, double sigma);
/// Upper bound k·log ζ(σ) ≥ Σ |Λ_f(n)|/(log n) n^{−σ}, using ζ(σ) ≤ σ/(σ−1).
double logzeta_upper(double k, double sigma);

// ---------------------------------------------------------------------------
// The product G* = Π F(s − ij)^{b̂_δ(j)} and its pieces.

class BDelta;

struct GStarSplit {
    cplx Gstar;     // G1·G2
    cplx G1;        // |j| ≤ K
    cplx G2;        // K < |j| ≤ J
    cplx Gtilde;    // exp Σ Λ_f(n)/(log n) n^{−s} (a(n) − b_δ(log n/2π))
    cplx G_direct;  // Σ_{n≤M} g(n) n^{−s}
    /// |log G_direct − log(G̃·G1·G2)| budget: surrogate tails of every exponent plus the Fourier tail |j| > J.
    double log_budget = 0.0;
    /// Σ_{n>M} d_k(n) n^{−σ}.
    double direct_tail = 0.0;
    /// Bound on |log G2| from |b̂_δ(j)| and k·log ζ(σ); includes |j| > J.
    double log_g2_majorant = 0.0;
    /// Bound on Σ_{|j|>J} |b̂_δ(j)|.
    double fourier_tail = 0.0;

    /// Relative budget for |G_direct − G̃G1G2| / |G_direct|.
    double relative_budget() const;
};

struct GStarOptions {
    double K = 10.0;
    /// 0 means 2K.
    double J = 0.0;
    std::size_t M = 100'000;
};

/// Requires ℜs > 1 and J ≥ K.
GStarSplit eval_gstar_split(const MultiplicativeFunction& f, const BDelta& b, cplx s, const GStarOptions& opts = {});

/// Σ_{|j|>J} |b̂_δ(j)| (rigorous upper bound, δ > 0).
double fourier_abs_tail(const BDelta& b, long J);

}  // namespace dzl
