#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dzl/bdelta.hpp"
#include "dzl/dirpoly.hpp"
#include "dzl/error.hpp"
#include "oracles.hpp"

using namespace dzl;

namespace {

cplx naive_eval(const std::vector<cplx>& c, cplx s) {
    cplx v = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * std::exp(-s * std::log(static_cast<double>(i + 1)));
    return v;
}

std::vector<cplx> random_coeffs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> c(n);
    for (auto& v : c) v = {g(rng), g(rng)};
    return c;
}

}  // namespace

TEST_SUITE("dirpoly") {

TEST_CASE("evaluation and derivative") {
    const auto c = random_coeffs(40, 5);
    const DirichletPolynomial p(c);
    CHECK(p.size() == 40);
    CHECK_FALSE(p.real_coefficients());
    for (cplx s : {cplx{0.3, 1.0}, cplx{-0.5, 20.0}, cplx{2.0, -7.5}}) {
        CHECK(std::abs(eval_poly(p, s) - naive_eval(c, s)) < 1e-12 * p.abs_sum(s.real()));
        const auto d = oracle::derivative([&](cplx z) { return naive_eval(c, z); }, s);
        CHECK(std::abs(eval_poly_derivative(p, s) - d) < 1e-9 * (1.0 + std::abs(d)));
    }
}

TEST_CASE("from_function truncates and flags real coefficients") {
    const auto f = make_divisor_k(2.0, 100);
    const auto p = DirichletPolynomial::from_function(f, 30);
    CHECK(p.size() == 30);
    CHECK(p.real_coefficients());
    CHECK(p.coeff(4) == cplx{2.0, 0.0});
    CHECK(p.coeff(5) == cplx{4.0, 0.0});
    CHECK(DirichletPolynomial::from_function(f).size() == 100);
}

TEST_CASE("arbitrary frequency sets") {
    const std::vector<cplx> c = {1.0, 2.0, cplx{0.0, 1.0}};
    const std::vector<double> ln = {0.0, 0.7, 2.5};
    const DirichletPolynomial p(c, ln);
    const cplx s{0.4, 3.0};
    const cplx want = 1.0 + 2.0 * std::exp(-s * 0.7) + cplx{0.0, 1.0} * std::exp(-s * 2.5);
    CHECK(std::abs(eval_poly(p, s) - want) < 1e-14);
    const std::vector<double> bad = {0.0, 0.7, 0.7};
    CHECK_THROWS_AS(DirichletPolynomial(c, bad), ConstructionError);
    const std::vector<double> short_ln = {0.0};
    CHECK_THROWS_AS(DirichletPolynomial(c, short_ln), ConstructionError);
}

TEST_CASE("vertical batch equals pointwise evaluation") {
    const auto c = random_coeffs(200, 8);
    const DirichletPolynomial p(c);
    std::vector<double> ts;
    for (int i = 0; i < 300; ++i) ts.push_back(-50.0 + 0.37 * i);
    std::vector<cplx> out(ts.size());
    eval_vertical(p, 0.25, ts, out);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(out[i] == eval_poly(p, {0.25, ts[i]}));
}

TEST_CASE("grid evaluation and formats") {
    const DirichletPolynomial p(random_coeffs(10, 2));
    GridSpec g{0.0, 1.0, 0.5, -1.0, 1.0, 0.25};
    CHECK(g.rows() == 3);
    CHECK(g.cols() == 9);
    const auto v = eval_grid(p, g);
    CHECK(v.values.size() == 27);
    CHECK(v.at(2, 8) == eval_poly(p, {1.0, 1.0}));

    std::ostringstream csv;
    write_grid_csv(csv, v);
    const std::string text = csv.str();
    CHECK(text.rfind("sigma,t,re,im,abs\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 28);

    std::stringstream bin;
    write_grid_binary(bin, v);
    CHECK(bin.str().substr(0, 8) == "DZLGRID1");
    CHECK(bin.str().size() == 8 + 16 + 32 + 27 * 16);
    const auto back = read_grid_binary(bin);
    CHECK(back.rows == 3);
    CHECK(back.cols == 9);
    CHECK(back.values == v.values);
    CHECK(back.spec.t_step == 0.25);

    std::stringstream junk("NOTAGRID........");
    CHECK_THROWS_AS(read_grid_binary(junk), ConstructionError);
    std::stringstream truncated(bin.str().substr(0, 40));
    CHECK_THROWS_AS(read_grid_binary(truncated), ConstructionError);
}

TEST_CASE("grid limits") {
    const DirichletPolynomial p(random_coeffs(3, 1));
    GridSpec big{0.0, 1.0, 1e-4, 0.0, 100.0, 1e-3};
    try {
        eval_grid(p, big, 1 << 20);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("bytes") != std::string::npos);
    }
    GridSpec bad{0.0, 1.0, 0.0, 0.0, 1.0, 0.1};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    GridSpec empty{1.0, 0.0, 0.1, 0.0, 1.0, 0.1};
    CHECK_THROWS_AS(empty.validate(), DomainError);
}

TEST_CASE("surrogates of zeta within their tail bounds") {
    const std::size_t M = 20000;
    const auto one = make_ones(M);
    const SeriesSurrogate F(one, M, SurrogateMode::F), L(one, M, SurrogateMode::logF),
        D(one, M, SurrogateMode::FlogDeriv);
    CHECK(L.polynomial().size() < M / 5);  // prime powers only
    for (cplx s : {cplx{1.5, 0.0}, cplx{2.0, 3.0}, cplx{1.2, -14.0}, cplx{3.0, 100.0}}) {
        const cplx z = oracle::zeta(s);
        const cplx dz = oracle::derivative([](cplx w) { return oracle::zeta(w); }, s);
        const auto f = eval_surrogate(F, s);
        const auto l = eval_surrogate(L, s);
        const auto d = eval_surrogate(D, s);
        CHECK(std::abs(f.value - z) <= f.tail_bound);
        CHECK(std::abs(std::exp(l.value) - z) <= std::abs(z) * std::expm1(l.tail_bound));
        CHECK(std::abs(d.value + dz / z) <= d.tail_bound + 1e-9);
        CHECK(logzeta_upper(1.0, s.real()) >= std::log(std::abs(oracle::zeta(s.real()))));
    }
    CHECK_THROWS_AS(eval_surrogate(F, {1.0, 2.0}), DomainError);
    const std::vector<double> ts = {0.0, 5.0};
    const auto vv = eval_surrogate_vertical(L, 2.0, ts);
    CHECK(vv[1].value == eval_surrogate(L, {2.0, 5.0}).value);
    CHECK_THROWS_AS(SeriesSurrogate(one, M + 1, SurrogateMode::F), ConstructionError);
}

TEST_CASE("divisor tail bound exceeds a long partial tail") {
    const std::size_t N = 400000;
    const auto d2 = oracle::divisor_k(2, N);
    for (std::size_t M : {100u, 1000u, 10000u}) {
        for (double sigma : {1.3, 1.5, 2.0}) {
            double tail = 0.0;
            for (std::size_t n = M + 1; n <= N; ++n) tail += d2[n] * std::pow(static_cast<double>(n), -sigma);
            CHECK(tail <= tail_bound_F(2.0, M, sigma));
            double lt = 0.0, dt = 0.0;
            for (std::size_t n = M + 1; n <= N; ++n) {
                const double L = oracle::mangoldt(n);
                if (L == 0.0) continue;
                lt += 2.0 * L / std::log(static_cast<double>(n)) * std::pow(static_cast<double>(n), -sigma);
                dt += 2.0 * L * std::pow(static_cast<double>(n), -sigma);
            }
            CHECK(lt <= tail_bound_logF(2.0, M, sigma));
            CHECK(dt <= tail_bound_logderiv(2.0, M, sigma));
        }
    }
}

TEST_CASE("fourier tail bound") {
    BDelta b(0.05);
    double partial = 0.0;
    for (long j = 21; j <= 200000; ++j) partial += std::abs(b.coeff(j)) + std::abs(b.coeff(-j));
    const double bound = fourier_abs_tail(b, 20);
    CHECK(partial <= bound);
    CHECK(bound < 1.5 * partial + 1e-3);
    CHECK(std::isinf(fourier_abs_tail(BDelta(0.0), 20)));
}

TEST_CASE("G* split reproduces the twisted series within budget") {
    const auto f = make_ones(100000);
    for (double delta : {0.01, 0.1}) {
        BDelta b(delta);
        for (cplx s : {cplx{1.5, 0.0}, cplx{2.0, 3.0}, cplx{1.3, -10.0}}) {
            CAPTURE(delta);
            CAPTURE(s);
            const auto g = eval_gstar_split(f, b, s, {.K = 10.0, .J = 0.0, .M = 100000});
            CHECK(std::abs(g.Gstar - g.G1 * g.G2) <= 1e-12 * std::abs(g.Gstar));
            const cplx model = g.Gtilde * g.G1 * g.G2;
            CHECK(std::abs(model - g.G_direct) <= g.relative_budget() * std::abs(g.G_direct));
            CHECK(std::log(std::abs(g.G2)) <= g.log_g2_majorant);
        }
    }
    CHECK_THROWS_AS(eval_gstar_split(f, BDelta(0.1), {0.9, 0.0}), DomainError);
    CHECK_THROWS_AS(eval_gstar_split(f, BDelta(0.1), {2.0, 0.0}, {.K = 10.0, .J = 5.0, .M = 1000}), DomainError);
}

}
