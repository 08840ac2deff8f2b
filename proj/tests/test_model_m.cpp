#include <cmath>

#include "doctest.h"
#include "dzl/error.hpp"
#include "dzl/model_m.hpp"
#include "oracles.hpp"

using namespace dzl;

namespace {

const double pi = 3.14159265358979323846;

const ModelConstants& zeta_constants() {
    static const ModelConstants k = compute_model_constants(make_ones(100000), 1.0, 0.1);
    return k;
}

}  // namespace

TEST_SUITE("model_m") {

TEST_CASE("constants for zeta") {
    const auto& k = zeta_constants();
    CHECK(k.delta == doctest::Approx(delta_for_c(0.1, 1.0)));
    BDelta b(k.delta);
    CHECK(k.b0 == b.coeff(0));
    CHECK(k.b1 == b.coeff(1));
    CHECK(k.b0 < 0.0);
    CHECK(k.gamma_b0 == doctest::Approx(1.0 / oracle::rgamma(k.b0).real()).epsilon(1e-12));
    CHECK(k.gamma_b1 == doctest::Approx(1.0 / oracle::rgamma(k.b1).real()).epsilon(1e-12));
    // (σ−1)ζ(σ) → 1.
    CHECK(std::abs(k.H1 - 1.0) < 1e-3);
    CHECK(std::abs(k.H1 - 1.0) < 10.0 * k.H1_extrapolation_error + 1e-4);
    CHECK(std::abs(k.A - std::pow(k.H1, k.b0)) < 1e-12);
    CHECK(k.K == std::max<long>(200, static_cast<long>(std::ceil(20.0 / k.delta))));
    CHECK(k.M == 100000);
}

TEST_CASE("H(1) of the Gaussian field is L(1, chi_-4)") {
    const auto k = compute_model_constants(dedekind_quadratic(-4, 100000), 1.0, 0.1, {.M = 100000, .K = 50});
    CHECK(std::abs(k.H1 - pi / 4.0) < 5e-3);
}

TEST_CASE("H(1) of d_2 is one") {
    const auto k = compute_model_constants(make_divisor_k(2.0, 100000), 2.0, 0.5, {.M = 100000, .K = 50});
    CHECK(std::abs(k.H1 - 1.0) < 2e-3);
}

TEST_CASE("model evaluation") {
    const ModelMParams mp{zeta_constants(), std::log(1e30)};
    CHECK_NOTHROW(mp.validate());
    const auto& k = mp.constants;
    const cplx s{1.05, 0.02};
    const auto v = model_M_eval(mp, s);
    CHECK(v.M == v.M1 + v.M2);
    const cplx m2 = k.A * k.G10_1 * k.Gt_1 * std::exp(-k.m * k.b0 * std::log(s - 1.0));
    CHECK(std::abs(v.M2 - m2) < 1e-12 * std::abs(m2));
    const double L = mp.logN;
    const cplx w = 1.0 - s + cplx{0.0, 1.0};
    const cplx m1 = k.A1 * std::exp(w * L) * std::pow(L, k.m * k.b1 - 1.0) * k.G11_1pi * k.Gt_1pi / (k.gamma_b1 * w);
    CHECK(std::abs(v.M1 - m1) < 1e-10 * std::abs(m1));
    CHECK_THROWS_AS(model_M_eval(mp, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(model_M_eval(mp, {1.0, 1.0}), DomainError);
    ModelMParams bad = mp;
    bad.logN = 0.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("huge N enters only through log N") {
    const ModelMParams mp{zeta_constants(), 80.0 * std::log(10.0)};
    const auto rect = montgomery_rectangle_from_log(mp.logN, 0.1, 1.0, -pi / mp.logN);
    const auto v = model_M_eval(mp, rect.rect.center());
    CHECK(std::isfinite(std::abs(v.M)));
    const auto w = model_M_winding(mp, rect);
    CHECK(w.winding.winding >= 0);
    CHECK(w.regime_ok == w.dominance.pass);
    if (!w.regime_ok) CHECK(w.note.find("N too small for model regime") != std::string::npos);
}

TEST_CASE("dominance ratios bound sampled points") {
    const ModelMParams mp{zeta_constants(), std::log(1e40)};
    const auto rect = montgomery_rectangle_from_log(mp.logN, 0.1, 1.0, -pi / mp.logN);
    const auto d = model_dominance(mp, rect, 0.5, 256);
    for (int i = 0; i <= 10; ++i) {
        const double t = rect.rect.t_lo + 0.1 * i * rect.rect.height();
        const auto r = model_M_eval(mp, {rect.rect.sigma_hi, t});
        const auto l = model_M_eval(mp, {rect.rect.sigma_lo, t});
        CHECK(std::abs(r.M1 / r.M2) <= d.right_max_M1_over_M2 * (1.0 + 1e-12));
        CHECK(std::abs(l.M2 / l.M1) <= d.left_max_M2_over_M1 * (1.0 + 1e-12));
    }
    CHECK(d.pass == (d.right_max_M1_over_M2 < 0.5 && d.left_max_M2_over_M1 < 0.5));
}

TEST_CASE("synthetic Rouche comparisons") {
    const ModelMParams mp{zeta_constants(), std::log(1e40)};
    const auto rect = montgomery_rectangle_from_log(mp.logN, 0.1, 1.0, -pi / mp.logN);
    Evaluator exact;
    exact.point = [&](cplx s) { return model_M_eval(mp, s).M; };
    const auto r0 = rouche_gap_report(exact, mp, rect);
    CHECK(r0.max_ratio == 0.0);
    CHECK(r0.samples >= 1024);
    CHECK(r0.consistent());
    CHECK(r0.poly_winding == r0.model_winding);

    Evaluator near;
    near.point = [&](cplx s) { return model_M_eval(mp, s).M * 1.1; };
    const auto r1 = rouche_gap_report(near, mp, rect);
    CHECK(r1.max_ratio == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(r1.consistent());

    Evaluator flat;
    flat.point = [](cplx) { return cplx{1.0, 0.0}; };
    const auto r2 = rouche_gap_report(flat, mp, rect);
    CHECK(r2.poly_winding == 0);
    if (r2.max_ratio < 1.0) CHECK(r2.model_winding == 0);
}

}
