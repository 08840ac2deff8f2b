#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dzl/arith.hpp"
#include "dzl/bdelta.hpp"
#include "dzl/error.hpp"
#include "oracles.hpp"

using namespace dzl;

TEST_SUITE("arith") {

TEST_CASE("prime table") {
    PrimeTable pt(100);
    CHECK(pt.primes().size() == 25);
    CHECK(pt.is_prime(97));
    CHECK_FALSE(pt.is_prime(91));
    CHECK(pt.spf(91) == 7);
    CHECK(pt.spf_power(72) == 8);
    CHECK(pt.spf_exponent(72) == 3);
    CHECK(pt.is_prime_power(64));
    CHECK_FALSE(pt.is_prime_power(12));
    CHECK_FALSE(pt.is_prime_power(1));
    for (std::size_t n = 1; n <= 100; ++n) CHECK(pt.mangoldt(n) == doctest::Approx(oracle::mangoldt(n)));
}

TEST_CASE("built-in families against brute force") {
    const std::size_t N = 3000;
    const auto one = make_ones(N);
    const auto mu = make_moebius(N);
    const auto d2 = make_divisor_k(2.0, N);
    const auto d3 = make_divisor_k(3.0, N);
    const auto o2 = oracle::divisor_k(2, N), o3 = oracle::divisor_k(3, N);
    for (std::size_t n = 1; n <= N; ++n) {
        CHECK(one[n] == cplx{1.0, 0.0});
        CHECK(mu[n].real() == oracle::moebius(n));
        CHECK(d2[n].real() == o2[n]);
        CHECK(d3[n].real() == o3[n]);
    }
    CHECK(d3[12].real() == 18.0);
    CHECK(one.profile().k == 1.0);
    CHECK(mu.profile().m == 0.0);
    CHECK(d3.profile().m == 3.0);
    CHECK(d2.is_real());
}

TEST_CASE("real-k divisor function") {
    // d_{1/2} convolved with itself is 1.
    const std::size_t N = 500;
    const auto h = divisor_k_table(0.5, N);
    for (std::size_t n = 1; n <= N; ++n) {
        double s = 0.0;
        for (std::size_t d = 1; d <= n; ++d)
            if (n % d == 0) s += h[d] * h[n / d];
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(divisor_k_prime_power(2.5, 0) == 1.0);
    CHECK(divisor_k_prime_power(2.5, 2) == doctest::Approx(2.5 * 3.5 / 2.0));
}

TEST_CASE("kronecker symbol") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 101L, 997L}) {
        for (long a = -60; a <= 60; ++a) {
            if (a % p == 0) {
                CHECK(kronecker(a, p) == 0);
                continue;
            }
            const long e = oracle::powmod(a, (p - 1) / 2, p);
            CHECK(kronecker(a, p) == (e == 1 ? 1 : -1));
        }
    }
    for (std::int64_t D = -50; D <= 50; ++D) {
        if (!is_fundamental_discriminant(D)) continue;
        const std::int64_t q = std::abs(D);
        for (std::int64_t n = 1; n <= 3 * q; ++n) CHECK(kronecker(D, n) == kronecker(D, n + q));
        // Multiplicative in n.
        for (std::int64_t a = 1; a < 20; ++a)
            for (std::int64_t b = 1; b < 20; ++b) CHECK(kronecker(D, a * b) == kronecker(D, a) * kronecker(D, b));
    }
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(1, 0) == 1);
    CHECK_THROWS_AS(kronecker(3, -1), DomainError);
}

TEST_CASE("fundamental discriminants") {
    std::vector<std::int64_t> got;
    for (std::int64_t D = -30; D <= 30; ++D)
        if (is_fundamental_discriminant(D)) got.push_back(D);
    const std::vector<std::int64_t> want = {-24, -23, -20, -19, -15, -11, -8, -7, -4, -3,
                                            5,   8,   12,  13,  17,  21,  24, 28, 29};
    CHECK(got == want);
}

TEST_CASE("gaussian ideal counts are r2/4") {
    const auto a = dedekind_quadratic(-4, 2000);
    for (long n = 1; n <= 2000; ++n) CHECK(a[n].real() * 4.0 == static_cast<double>(oracle::r2(n)));
    CHECK(a.profile().k == 2.0);
    CHECK_THROWS_AS(dedekind_quadratic(-5, 10), DomainError);
}

TEST_CASE("von Mangoldt transform satisfies the convolution identity") {
    const std::size_t N = 600;
    for (const auto& f : {make_ones(N), make_moebius(N), make_divisor_k(2.0, N), make_divisor_k(0.5, N),
                          dedekind_quadratic(-3, N)}) {
        CAPTURE(f.label());
        const auto lam = vonmangoldt_transform(f);
        for (std::size_t n = 1; n <= N; ++n) {
            cplx s = 0.0;
            for (std::size_t d = 1; d <= n; ++d)
                if (n % d == 0) s += lam[d] * f[n / d];
            CHECK(std::abs(s - f[n] * std::log(static_cast<double>(n))) < 1e-9);
            if (oracle::mangoldt(n) == 0.0) CHECK(lam[n] == cplx{});
        }
    }
}

TEST_CASE("von Mangoldt of known families") {
    const std::size_t N = 2000;
    const auto l1 = vonmangoldt_transform(make_ones(N));
    const auto lm = vonmangoldt_transform(make_moebius(N));
    const auto l2 = vonmangoldt_transform(make_divisor_k(2.0, N));
    for (std::size_t n = 2; n <= N; ++n) {
        const double L = oracle::mangoldt(n);
        CHECK(std::abs(l1[n] - L) < 1e-12);
        CHECK(std::abs(l2[n] - 2.0 * L) < 1e-12);
        const auto fac = oracle::factor(n);
        const double want_mu = (fac.size() == 1 && fac[0].second == 1) ? -L : (L != 0 ? -L : 0.0);
        CHECK(std::abs(lm[n] - want_mu) < 1e-12);
    }
}

TEST_CASE("round trip f -> Lambda_f -> f") {
    const std::size_t N = 10000;
    for (const auto& f : {make_ones(N), make_moebius(N), make_divisor_k(2.0, N), dedekind_quadratic(-4, N)}) {
        CAPTURE(f.label());
        const auto back = inverse_vonmangoldt(vonmangoldt_transform(f));
        double worst = 0.0;
        for (std::size_t n = 1; n <= N; ++n) worst = std::max(worst, std::abs(back[n] - f[n]));
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("inverse rejects support off prime powers") {
    VonMangoldtTable t;
    t.lam.assign(11, cplx{});
    t.lam[6] = 1.0;
    CHECK_THROWS_AS(inverse_vonmangoldt(t), ConstructionError);
}

TEST_CASE("k bound ratios") {
    const std::size_t N = 10000;
    CHECK(verify_k_bound(vonmangoldt_transform(make_ones(N)), 1.0).max_ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(verify_k_bound(vonmangoldt_transform(make_divisor_k(2.0, N)), 2.0).max_ratio ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(verify_k_bound(vonmangoldt_transform(make_divisor_k(3.0, N)), 3.0).max_ratio ==
          doctest::Approx(3.0).epsilon(1e-14));
    const auto r = verify_k_bound(vonmangoldt_transform(make_divisor_k(3.0, N)), 2.0);
    CHECK_FALSE(r.pass);
    CHECK(r.witness >= 2);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(MultiplicativeFunction({0.0, 2.0}, PrimePowerRule::ones(), AnalyticProfile{}), ConstructionError);
    PrimePowerRule bad{[](std::uint64_t p, unsigned) { return p == 7 ? cplx{NAN, 0.0} : cplx{1.0, 0.0}; }, "bad"};
    try {
        sieve_multiplicative(bad, 100, AnalyticProfile{});
        FAIL("expected ConstructionError");
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()).find("7") != std::string::npos);
    }
    AnalyticProfile p;
    p.k = -1.0;
    CHECK_THROWS_AS(p.validate(), ConstructionError);
    CHECK_THROWS_AS(make_divisor_k(0.0, 10), ConstructionError);
}

TEST_CASE("twist phases are unimodular and completely multiplicative") {
    const std::size_t N = 10000;
    for (double delta : {0.0, 0.005, 0.01, 0.05, 0.1, 0.25}) {
        BDelta b(delta);
        const auto a = twist_phases(b, N);
        double worst = 0.0;
        for (std::size_t n = 1; n <= N; ++n) worst = std::max(worst, std::abs(std::abs(a[n]) - 1.0));
        CHECK(worst <= 1e-12);
        for (std::size_t m = 2; m < 60; ++m)
            for (std::size_t n = 2; m * n <= N && n < 60; ++n) CHECK(std::abs(a[m * n] - a[m] * a[n]) < 1e-13);
        for (std::size_t p : {2u, 3u, 101u, 9973u})
            CHECK(std::abs(a[p] - b(std::log(static_cast<double>(p)) / (2.0 * 3.14159265358979323846))) < 1e-15);
        const auto g = twist(make_ones(N), delta, b);
        CHECK(g.label() == "ones+twist");
        for (std::size_t n = 1; n <= N; n += 97) CHECK(g[n] == a[n]);
        const auto lam_g = vonmangoldt_transform(g);
        const auto lam_t = twist_vonmangoldt(vonmangoldt_transform(make_ones(N)), a);
        for (std::size_t n = 1; n <= N; n += 7) CHECK(std::abs(lam_g[n] - lam_t[n]) < 1e-11);
    }
    CHECK_THROWS_AS(twist(make_ones(10), 0.2, BDelta(0.1)), ConstructionError);
}

TEST_CASE("coefficient csv") {
    std::ostringstream os;
    write_coefficients_csv(os, make_moebius(4));
    CHECK(os.str() == "n,re,im\n1,1,0\n2,-1,0\n3,-1,0\n4,0,0\n");
}

}
