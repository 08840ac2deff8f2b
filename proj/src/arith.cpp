#include "dzl/arith.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "dzl/bdelta.hpp"
#include "dzl/error.hpp"
#include "dzl/util.hpp"

namespace dzl {

void AnalyticProfile::validate() const {
    if (!(k > 0.0)) throw ConstructionError("profile: k must be positive");
    if (!(m >= 0.0)) throw ConstructionError("profile: m must be nonnegative");
    if (m > k * (1.0 + 1e-12)) throw ConstructionError("profile: pole order m exceeds k");
    if (c1 < 0 || M < 0 || B < 0 || C < 0) throw ConstructionError("profile: region constants must be nonnegative");
}

PrimePowerRule PrimePowerRule::ones() {
    return {[](std::uint64_t, unsigned) { return cplx{1.0, 0.0}; }, "ones"};
}

PrimePowerRule PrimePowerRule::moebius() {
    return {[](std::uint64_t, unsigned e) { return cplx{e == 1 ? -1.0 : 0.0, 0.0}; }, "moebius"};
}

PrimePowerRule PrimePowerRule::divisor_k(double k) {
    return {[k](std::uint64_t, unsigned e) { return cplx{divisor_k_prime_power(k, e), 0.0}; }, "d_k"};
}

PrimePowerRule PrimePowerRule::dedekind_quadratic(std::int64_t D) {
    return {[D](std::uint64_t p, unsigned e) {
                const int chi = kronecker(D, static_cast<std::int64_t>(p));
                double sum = 1.0, pw = 1.0;
                for (unsigned i = 1; i <= e; ++i) {
                    pw *= chi;
                    sum += pw;
                }
                return cplx{sum, 0.0};
            },
            "dedekind"};
}

MultiplicativeFunction::MultiplicativeFunction(std::vector<cplx> values, PrimePowerRule rule, AnalyticProfile profile)
    : values_(std::move(values)), rule_(std::move(rule)), profile_(profile) {
    if (values_.size() < 2) throw ConstructionError("multiplicative function needs N >= 1");
    if (values_[1] != cplx{1.0, 0.0}) throw ConstructionError("multiplicative function must have f(1) = 1");
}

const cplx& MultiplicativeFunction::at(std::size_t n) const {
    if (n < 1 || n > size()) throw std::out_of_range("coefficient index out of range");
    return values_[n];
}

bool MultiplicativeFunction::is_real(double tol) const {
    for (std::size_t n = 1; n < values_.size(); ++n)
        if (std::abs(values_[n].imag()) > tol) return false;
    return true;
}

PrimeTable::PrimeTable(std::size_t N) : N_(N), spf_(N + 1, 0), ppart_(N + 1, 1), exp_(N + 1, 0) {
    // Linear sieve; spf, then the prime-power part from n / spf.
    for (std::size_t i = 2; i <= N; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes_.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes_) {
            const std::size_t ip = i * p;
            if (p > spf_[i] || ip > N) break;
            spf_[ip] = p;
        }
    }
    for (std::size_t i = 2; i <= N; ++i) {
        const std::uint32_t p = spf_[i];
        const std::size_t q = i / p;
        if (q >= 2 && spf_[q] == p) {
            ppart_[i] = ppart_[q] * p;
            exp_[i] = static_cast<std::uint8_t>(exp_[q] + 1);
        } else {
            ppart_[i] = p;
            exp_[i] = 1;
        }
    }
}

double PrimeTable::mangoldt(std::size_t n) const {
    return is_prime_power(n) ? std::log(static_cast<double>(spf_[n])) : 0.0;
}

MultiplicativeFunction sieve_multiplicative(const PrimePowerRule& rule, std::size_t N, const AnalyticProfile& profile) {
    if (N < 1) throw ConstructionError("sieve_multiplicative: N must be >= 1");
    if (!rule.eval) throw ConstructionError("sieve_multiplicative: rule has no evaluator");
    profile.validate();
    const PrimeTable pt(N);
    std::vector<cplx> v(N + 1, cplx{});
    v[1] = 1.0;
    for (std::size_t n = 2; n <= N; ++n) {
        const std::size_t pp = pt.spf_power(n);
        if (pp == n) {
            const std::uint64_t p = pt.spf(n);
            const unsigned e = pt.spf_exponent(n);
            const cplx val = rule.eval(p, e);
            if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
                std::ostringstream msg;
                msg << "sieve_multiplicative: rule '" << rule.label << "' returned a non-finite value at (p, e) = ("
                    << p << ", " << e << ")";
                throw ConstructionError(msg.str());
            }
            v[n] = val;
        } else {
            v[n] = v[pp] * v[n / pp];
        }
    }
    return MultiplicativeFunction(std::move(v), rule, profile);
}

MultiplicativeFunction make_ones(std::size_t N) {
    return sieve_multiplicative(PrimePowerRule::ones(), N, AnalyticProfile{.k = 1.0, .m = 1.0});
}

MultiplicativeFunction make_moebius(std::size_t N) {
    return sieve_multiplicative(PrimePowerRule::moebius(), N, AnalyticProfile{.k = 1.0, .m = 0.0});
}

MultiplicativeFunction make_divisor_k(double k, std::size_t N) {
    if (!(k > 0.0)) throw ConstructionError("d_k requires k > 0");
    auto rule = PrimePowerRule::divisor_k(k);
    return sieve_multiplicative(rule, N, AnalyticProfile{.k = k, .m = k});
}

VonMangoldtTable vonmangoldt_transform(const MultiplicativeFunction& f) {
    const std::size_t N = f.size();
    const PrimeTable pt(N);
    VonMangoldtTable out;
    out.lam.assign(N + 1, cplx{});
    out.source_label = f.label();
    for (std::uint64_t p : pt.primes()) {
        const double lp = std::log(static_cast<double>(p));
        // Walk p, p², … while within range; Λ(p^a)/log p from the recursion with f(1) = 1.
        std::vector<std::size_t> powers{1};
        std::vector<cplx> unit{cplx{}};
        for (std::uint64_t q = p; q <= N; q *= p) {
            powers.push_back(q);
            const std::size_t a = powers.size() - 1;
            cplx rhs = f[q] * static_cast<double>(a);
            for (std::size_t j = 1; j < a; ++j) rhs -= unit[j] * f[powers[a - j]];
            unit.push_back(rhs);
            out.lam[q] = rhs * lp;
            if (q > N / p) break;
        }
    }
    return out;
}

MultiplicativeFunction inverse_vonmangoldt(const VonMangoldtTable& lam) {
    const std::size_t N = lam.size();
    if (N < 1) throw ConstructionError("inverse_vonmangoldt: empty table");
    const PrimeTable pt(N);
    for (std::size_t n = 2; n <= N; ++n) {
        if (!pt.is_prime_power(n) && lam[n] != cplx{}) {
            std::ostringstream msg;
            msg << "inverse_vonmangoldt: support off prime powers at n = " << n;
            throw ConstructionError(msg.str());
        }
    }
    if (lam.lam.size() > 1 && lam[1] != cplx{}) throw ConstructionError("inverse_vonmangoldt: support off prime powers at n = 1");

    std::vector<cplx> v(N + 1, cplx{});
    v[1] = 1.0;
    double kmax = 0.0;
    for (std::uint64_t p : pt.primes()) {
        const double lp = std::log(static_cast<double>(p));
        std::vector<std::size_t> powers{1};
        for (std::uint64_t q = p; q <= N; q *= p) {
            powers.push_back(q);
            const std::size_t a = powers.size() - 1;
            cplx acc{};
            for (std::size_t j = 1; j <= a; ++j) acc += lam[powers[j]] * v[powers[a - j]];
            v[q] = acc / (static_cast<double>(a) * lp);
            kmax = std::max(kmax, std::abs(lam[q]) / lp);
            if (q > N / p) break;
        }
    }
    for (std::size_t n = 2; n <= N; ++n) {
        const std::size_t pp = pt.spf_power(n);
        if (pp != n) v[n] = v[pp] * v[n / pp];
    }
    auto table = std::make_shared<std::vector<cplx>>(v);
    PrimePowerRule rule{[table](std::uint64_t p, unsigned e) {
                            std::uint64_t q = 1;
                            for (unsigned i = 0; i < e; ++i) q *= p;
                            if (q >= table->size()) throw ConstructionError("inverse rule queried beyond table");
                            return (*table)[q];
                        },
                        "custom"};
    AnalyticProfile prof{.k = kmax > 0.0 ? kmax : 1.0, .m = 0.0};
    return MultiplicativeFunction(std::move(v), std::move(rule), prof);
}

KBoundReport verify_k_bound(const VonMangoldtTable& lam, double k) {
    const std::size_t N = lam.size();
    const PrimeTable pt(N);
    KBoundReport r;
    for (std::size_t n = 2; n <= N; ++n) {
        if (!pt.is_prime_power(n)) continue;
        const double ratio = std::abs(lam[n]) / pt.mangoldt(n);
        if (ratio > r.max_ratio) {
            r.max_ratio = ratio;
            r.witness = n;
        }
    }
    r.pass = r.max_ratio <= k * (1.0 + 1e-12);
    return r;
}

double divisor_k_prime_power(double k, unsigned e) {
    double v = 1.0;
    for (unsigned j = 0; j < e; ++j) v = v * (k + j) / static_cast<double>(j + 1);
    return v;
}

std::vector<double> divisor_k_table(double k, std::size_t N) {
    const PrimeTable pt(N);
    std::vector<double> d(N + 1, 0.0);
    if (N >= 1) d[1] = 1.0;
    for (std::size_t n = 2; n <= N; ++n) {
        const std::size_t pp = pt.spf_power(n);
        d[n] = (pp == n) ? divisor_k_prime_power(k, pt.spf_exponent(n)) : d[pp] * d[n / pp];
    }
    return d;
}

int kronecker(std::int64_t a, std::int64_t n) {
    if (n < 0) throw DomainError("kronecker: n must be nonnegative");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    int k = 1;
    if (v % 2 == 1) {
        const std::int64_t r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) k = -k;
    }
    // Jacobi symbol (a / n) for odd n > 0.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) k = -k;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) k = -k;
        a %= n;
    }
    return n == 1 ? k : 0;
}

namespace {
bool squarefree(std::int64_t m) {
    m = m < 0 ? -m : m;
    for (std::int64_t p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}
}  // namespace

bool is_fundamental_discriminant(std::int64_t D) {
    if (D == 0 || D == 1) return false;
    const std::int64_t r = ((D % 4) + 4) % 4;
    if (r == 1) return squarefree(D);
    if (r == 0) {
        const std::int64_t m = D / 4;
        const std::int64_t rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

MultiplicativeFunction dedekind_quadratic(std::int64_t D, std::size_t N) {
    if (!is_fundamental_discriminant(D)) {
        std::ostringstream msg;
        msg << "dedekind_quadratic: " << D << " is not a fundamental discriminant";
        throw DomainError(msg.str());
    }
    auto rule = PrimePowerRule::dedekind_quadratic(D);
    return sieve_multiplicative(rule, N, AnalyticProfile{.k = 2.0, .m = 1.0});
}

std::vector<cplx> twist_phases(const BDelta& b, std::size_t N) {
    const PrimeTable pt(N);
    std::vector<cplx> a(N + 1, cplx{});
    if (N >= 1) a[1] = 1.0;
    for (std::size_t n = 2; n <= N; ++n) {
        if (pt.is_prime(n)) {
            a[n] = b(std::log(static_cast<double>(n)) / kTwoPi);
        } else {
            const std::size_t p = pt.spf(n);
            a[n] = a[p] * a[n / p];
        }
    }
    return a;
}

MultiplicativeFunction twist(const MultiplicativeFunction& f, double delta, const BDelta& b) {
    if (std::abs(b.delta() - delta) > 0.0) throw ConstructionError("twist: δ does not match the supplied BDelta");
    const std::size_t N = f.size();
    const auto a = twist_phases(b, N);
    std::vector<cplx> g(N + 1, cplx{});
    for (std::size_t n = 1; n <= N; ++n) {
        if (std::abs(std::abs(a[n]) - 1.0) > 1e-12) {
            std::ostringstream msg;
            msg << "twist: |a(" << n << ")| = " << g17(std::abs(a[n])) << " is not unit modulus";
            throw ConstructionError(msg.str());
        }
        g[n] = f[n] * a[n];
    }
    g[1] = 1.0;
    const auto base = f.rule();
    const BDelta bb = b;
    PrimePowerRule rule{[base, bb](std::uint64_t p, unsigned e) {
                            const cplx ap = bb(std::log(static_cast<double>(p)) / kTwoPi);
                            cplx pw = 1.0;
                            for (unsigned i = 0; i < e; ++i) pw *= ap;
                            return base.eval(p, e) * pw;
                        },
                        f.label() + "+twist"};
    return MultiplicativeFunction(std::move(g), std::move(rule), f.profile());
}

VonMangoldtTable twist_vonmangoldt(const VonMangoldtTable& lam_f, const std::vector<cplx>& a) {
    VonMangoldtTable out = lam_f;
    for (std::size_t n = 1; n < out.lam.size() && n < a.size(); ++n) out.lam[n] *= a[n];
    out.source_label = lam_f.source_label + "+twist";
    return out;
}

void write_coefficients_csv(std::ostream& os, const MultiplicativeFunction& f) {
    os << "n,re,im\n";
    // + 0.0 folds -0 into 0
    for (std::size_t n = 1; n <= f.size(); ++n)
        os << n << ',' << g17(f[n].real() + 0.0) << ',' << g17(f[n].imag() + 0.0) << '\n';
}

}  // namespace dzl
