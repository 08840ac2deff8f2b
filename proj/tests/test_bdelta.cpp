#include <cmath>
#include <complex>
#include <thread>
#include <vector>

#include "doctest.h"
#include "dzl/bdelta.hpp"
#include "dzl/error.hpp"

using namespace dzl;
using C = std::complex<double>;

namespace {

const double pi = 3.14159265358979323846;

// ∫_a^b e^{iωθ} dθ, exactly.
C exp_integral(double w, double a, double b) {
    if (w == 0.0) return b - a;
    return (std::polar(1.0, w * b) - std::polar(1.0, w * a)) / C(0.0, w);
}

// Fourier coefficient by integrating each exponential branch in closed form.
C branch_oracle(double delta, long j) {
    const double jd = static_cast<double>(j);
    C v = C(0.0, 1.0) * exp_integral(pi * (1.0 - 2.0 * jd), delta, 1.0 - delta);
    if (delta > 0.0) v -= exp_integral(pi * (1.0 - 1.0 / (2.0 * delta)) - 2.0 * pi * jd, -delta, delta);
    return v;
}

}  // namespace

TEST_SUITE("bdelta") {

TEST_CASE("unit modulus, period one, branch values") {
    for (double d : {0.0, 0.01, 0.1, 0.3, 0.5}) {
        BDelta b(d);
        for (int i = -300; i <= 300; ++i) {
            const double th = 0.0137 * i;
            CHECK(std::abs(std::abs(b(th)) - 1.0) < 1e-15);
            CHECK(std::abs(b(th + 1.0) - b(th)) < 1e-12);
        }
        if (d > 0.0) {
            CHECK(std::abs(b(d) - C(0.0, 1.0) * std::polar(1.0, pi * d)) < 1e-15);
            CHECK(std::abs(b(0.0) - C(-1.0, 0.0)) < 1e-15);
        }
    }
    CHECK(BDelta(0.0)(0.0) == C(-1.0, 0.0));
    CHECK(BDelta(0.0)(3.0) == C(-1.0, 0.0));
    CHECK(std::abs(BDelta(0.0)(0.5) - C(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("closed form against exact branch integrals") {
    for (double d : {0.0, 1e-6, 0.01, 0.05, 0.1, 0.2, 0.25, 0.4}) {
        BDelta b(d);
        for (long j = -60; j <= 60; ++j) {
            CAPTURE(d);
            CAPTURE(j);
            const C o = branch_oracle(d, j);
            CHECK(std::abs(o.imag()) < 1e-12);
            CHECK(std::abs(b.coeff(j) - o.real()) < 1e-12);
        }
    }
}

TEST_CASE("quadrature matches the closed form") {
    for (double d : {0.0, 0.01, 0.05, 0.1, 0.2}) {
        for (long j = -50; j <= 50; j += 5) {
            const C q = fourier_coeff_quadrature(d, j);
            CHECK(std::abs(q - fourier_coeff_closed_form(d, j)) < 1e-9);
        }
    }
}

TEST_CASE("delta zero limit") {
    for (long j = -20; j <= 20; ++j)
        CHECK(fourier_coeff_closed_form(0.0, j) == doctest::Approx(2.0 / (pi * (2.0 * j - 1.0))).epsilon(1e-15));
}

TEST_CASE("gap identity") {
    for (double d : {0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.45, 0.49}) {
        BDelta b(d);
        CHECK(std::abs(b.gap() - (b.coeff(1) - b.coeff(0))) < 1e-12);
    }
    CHECK(BDelta(0.0).gap() == doctest::Approx(4.0 / pi));
    CHECK_THROWS_AS(BDelta(0.5).gap(), DomainError);
}

TEST_CASE("domain") {
    CHECK_THROWS_AS(BDelta(-0.01), DomainError);
    CHECK_THROWS_AS(BDelta(0.51), DomainError);
    CHECK_THROWS_AS(BDelta(NAN), DomainError);
    CHECK_NOTHROW(BDelta(0.5));
}

TEST_CASE("fourier properties on the acceptance grid") {
    std::vector<BDelta> grid;
    for (double d : {0.0, 0.01, 0.05, 0.1, 0.2}) grid.emplace_back(d);
    const auto rep = verify_fourier_properties(grid, 50);
    for (const auto& f : rep.failures) {
        CAPTURE(f.property);
        CAPTURE(f.delta);
        CAPTURE(f.j);
        CAPTURE(f.residual);
        FAIL_CHECK("property failure");
    }
    CHECK(rep.all_pass());
    CHECK(rep.decay_constant.size() == 5);
    CHECK(rep.max_formula_error < 1e-9);
    CHECK(rep.max_imag_part < 1e-9);
}

TEST_CASE("fourier table") {
    const auto rows = fourier_table({0.0, 0.1}, 3);
    REQUIRE(rows.size() == 14);
    CHECK(rows.front().delta == 0.0);
    CHECK(rows.front().j == -3);
    for (const auto& r : rows) CHECK(r.abs_err < 1e-9);
}

TEST_CASE("coefficient cache is safe under concurrent use and copies") {
    BDelta b(0.07);
    std::vector<std::thread> th;
    std::vector<double> sums(4, 0.0);
    for (int w = 0; w < 4; ++w)
        th.emplace_back([&, w] {
            for (long j = -200; j <= 200; ++j) sums[w] += b.coeff(j);
        });
    for (auto& t : th) t.join();
    for (int w = 1; w < 4; ++w) CHECK(sums[w] == sums[0]);
    BDelta c = b;
    CHECK(c.coeff(17) == b.coeff(17));
    c = BDelta(0.2);
    CHECK(c.delta() == 0.2);
}

}
