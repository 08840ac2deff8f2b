#pragma once

// The explicit two-term model M = M₁ + M₂ for the twisted polynomial near s = 1,
// its winding over the rectangle 𝓡, and the Rouché comparison against G_N.
//
//   M₁(s) = A₁ N^{1−s+i} (log N)^{m b̂(1)−1} G₁,₁(1+i) G̃(1+i) / (Γ(m b̂(1)) (1−s+i))
//   M₂(s) = A G₁,₀(1) G̃(1) / (s−1)^{m b̂(0)}
//
// N enters only through log N, so the model can be evaluated far beyond any table.
// Complex powers use the principal branch of exp(w·log z).

#include <array>
#include <complex>
#include <string>

#include "dzl/arith.hpp"
#include "dzl/bdelta.hpp"
#include "dzl/zeros.hpp"

namespace dzl {

/// N-independent constants, computed once per (f, m, δ).
struct ModelConstants {
    double m = 1.0;
    double delta = 0.0;
    double c = 0.0;
    double b0 = 0.0;  // b̂_δ(0)
    double b1 = 0.0;  // b̂_δ(1)
    double gamma_b0 = 0.0;  // Γ(m b̂(0))
    double gamma_b1 = 0.0;  // Γ(m b̂(1))
    /// H(1) = lim_{σ→1⁺} (σ−1)^m F(σ).
    cplx H1{1.0, 0.0};
    double H1_extrapolation_error = 0.0;
    cplx A{1.0, 0.0};   // H(1)^{b̂(0)}
    cplx A1{1.0, 0.0};  // H(1)^{b̂(1)}
    cplx G11_1pi;  // G₁,₁(1+i)
    cplx G10_1;    // G₁,₀(1)
    cplx Gt_1pi;   // G̃(1+i)
    cplx Gt_1;     // G̃(1)
    long K = 0;      // |j| range of the products
    std::size_t M = 0;  // surrogate terms
    std::string branch_convention = "principal: z^w = exp(w Log z), Log on (-pi, pi]";
};

struct ModelMParams {
    ModelConstants constants;
    double logN = 0.0;

    void validate() const;
};

struct ModelConstantsOptions {
    std::size_t M = 100'000;
    /// Products over |j| ≤ K; 0 picks max(200, 20/δ).
    long K = 0;
};

/// Constants from truncated surrogates of the untwisted f (table length ≥ M).
ModelConstants compute_model_constants(const MultiplicativeFunction& f, double m, double c,
                                       const ModelConstantsOptions& opts = {});

struct ModelValue {
    cplx M1, M2, M;
};

/// Throws DomainError at s = 1 and s = 1 + i.
ModelValue model_M_eval(const ModelMParams& params, cplx s);

struct DominanceReport {
    double right_max_M1_over_M2 = 0.0;
    double left_max_M2_over_M1 = 0.0;
    bool pass = false;
};

/// Dominance ratios sampled along the two vertical sides; pass if both are below `limit`.
DominanceReport model_dominance(const ModelMParams& params, const MontgomeryRectangle& rect, double limit = 0.5,
                                std::size_t samples = 512);

struct ModelWindingReport {
    WindingResult winding;
    DominanceReport dominance;
    bool regime_ok = false;  // dominance passed
    std::string note;        // "N too small for model regime" with ratios when dominance fails
};

ModelWindingReport model_M_winding(const ModelMParams& params, const MontgomeryRectangle& rect);

struct RoucheReport {
    double max_ratio = 0.0;  // max |G_N − M| / |M| on ∂𝓡
    std::size_t samples = 0;
    int model_winding = 0;
    int poly_winding = 0;
    bool poly_winding_ok = false;
    bool model_winding_ok = false;
    std::string error;
    /// max_ratio < 1 implies equal windings.
    bool consistent() const { return !(max_ratio < 1.0) || (poly_winding_ok && model_winding_ok && poly_winding == model_winding); }
};

/// Compares |p − M| with |M| on ∂𝓡 (≥ min_samples points) and winds both functions.
RoucheReport rouche_gap_report(const Evaluator& p, const ModelMParams& params, const MontgomeryRectangle& rect,
                               std::size_t min_samples = 1024);

}  // namespace dzl
