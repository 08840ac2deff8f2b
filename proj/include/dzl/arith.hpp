#pragma once

// Multiplicative coefficient tables: sieve construction, generalized von Mangoldt
// transforms, k-bound verification, quadratic Dedekind coefficients and the
// unit-modulus twist g = f·a.

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace dzl {

using cplx = std::complex<double>;

class BDelta;

/// Analytic metadata of the Dirichlet series F. Only k and m enter computations;
/// c1, M, B, C are carried along for reports.
struct AnalyticProfile {
    double k = 1.0;   // |Λ_f| ≤ kΛ
    double m = 1.0;   // pole order at s = 1
    double c1 = 0.0;
    double M = 0.0;
    double B = 0.0;
    double C = 0.0;

    void validate() const;
};

/// Value of f on prime powers p^e (e ≥ 1); f(1) = 1 is implicit.
struct PrimePowerRule {
    std::function<cplx(std::uint64_t p, unsigned e)> eval;
    std::string label;

    static PrimePowerRule ones();
    static PrimePowerRule moebius();
    static PrimePowerRule divisor_k(double k);
    static PrimePowerRule dedekind_quadratic(std::int64_t D);
};

class MultiplicativeFunction {
public:
    MultiplicativeFunction(std::vector<cplx> values, PrimePowerRule rule, AnalyticProfile profile);

    std::size_t size() const noexcept { return values_.size() - 1; }
    /// f(n), 1 ≤ n ≤ size().
    const cplx& operator[](std::size_t n) const noexcept { return values_[n]; }
    const cplx& at(std::size_t n) const;
    /// Index 0 is unused and holds 0.
    const std::vector<cplx>& values() const noexcept { return values_; }
    const PrimePowerRule& rule() const noexcept { return rule_; }
    const AnalyticProfile& profile() const noexcept { return profile_; }
    const std::string& label() const noexcept { return rule_.label; }

    bool is_real(double tol = 0.0) const;

private:
    std::vector<cplx> values_;
    PrimePowerRule rule_;
    AnalyticProfile profile_;
};

/// Λ_f on [1, N]; zero off prime powers.
struct VonMangoldtTable {
    std::vector<cplx> lam;  // index 0 unused
    std::string source_label;

    std::size_t size() const noexcept { return lam.empty() ? 0 : lam.size() - 1; }
    const cplx& operator[](std::size_t n) const noexcept { return lam[n]; }
};

/// Smallest-prime-factor table with the prime-power part of every n.
class PrimeTable {
public:
    explicit PrimeTable(std::size_t N);

    std::size_t size() const noexcept { return N_; }
    bool is_prime(std::size_t n) const noexcept { return n >= 2 && spf_[n] == n; }
    std::uint32_t spf(std::size_t n) const noexcept { return spf_[n]; }
    /// Largest power of spf(n) dividing n.
    std::uint32_t spf_power(std::size_t n) const noexcept { return ppart_[n]; }
    /// Exponent of spf(n) in n.
    unsigned spf_exponent(std::size_t n) const noexcept { return exp_[n]; }
    /// True if n = p^e with e ≥ 1.
    bool is_prime_power(std::size_t n) const noexcept { return n >= 2 && ppart_[n] == n; }
    /// Classical Λ(n).
    double mangoldt(std::size_t n) const;
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

private:
    std::size_t N_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> ppart_;
    std::vector<std::uint8_t> exp_;
    std::vector<std::uint32_t> primes_;
};

MultiplicativeFunction sieve_multiplicative(const PrimePowerRule& rule, std::size_t N,
                                            const AnalyticProfile& profile);

/// Convenience generators for the built-in families.
MultiplicativeFunction make_ones(std::size_t N);
MultiplicativeFunction make_moebius(std::size_t N);
MultiplicativeFunction make_divisor_k(double k, std::size_t N);

VonMangoldtTable vonmangoldt_transform(const MultiplicativeFunction& f);

/// Runs the prime-power recursion forward; throws ConstructionError if lam has
/// support off prime powers.
MultiplicativeFunction inverse_vonmangoldt(const VonMangoldtTable& lam);

struct KBoundReport {
    double max_ratio = 0.0;
    std::size_t witness = 0;
    bool pass = true;
};

KBoundReport verify_k_bound(const VonMangoldtTable& lam, double k);

/// Generalized binomial binom(k+e-1, e) = d_k(p^e).
double divisor_k_prime_power(double k, unsigned e);

/// d_k(n) on [1, N] for real k > 0.
std::vector<double> divisor_k_table(double k, std::size_t N);

/// Kronecker symbol (a/n) for n ≥ 0.
int kronecker(std::int64_t a, std::int64_t n);

bool is_fundamental_discriminant(std::int64_t D);

/// a(n) = Σ_{d|n} χ_D(d), the ideal counts of Q(√D). Profile k = 2, m = 1.
MultiplicativeFunction dedekind_quadratic(std::int64_t D, std::size_t N);

/// Completely multiplicative a(n) with a(p) = b_δ(log p / 2π); index 0 unused.
std::vector<cplx> twist_phases(const BDelta& b, std::size_t N);

/// g(n) = f(n)·a(n). Throws ConstructionError if some |a(n)| deviates from 1 by more than 1e-12.
MultiplicativeFunction twist(const MultiplicativeFunction& f, double delta, const BDelta& b);

/// Λ_g = Λ_f·a on prime powers.
VonMangoldtTable twist_vonmangoldt(const VonMangoldtTable& lam_f, const std::vector<cplx>& a);

/// CSV with header `n,re,im`, rows n = 1..N.
void write_coefficients_csv(std::ostream& os, const MultiplicativeFunction& f);

}  // namespace dzl
