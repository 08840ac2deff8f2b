#include <cmath>
#include <limits>
#include <sstream>

#include "dzl/bdelta.hpp"
#include "dzl/dirpoly.hpp"
#include "dzl/error.hpp"
#include "dzl/util.hpp"

namespace dzl {

namespace {

DirichletPolynomial build_surrogate_poly(const MultiplicativeFunction& f, const VonMangoldtTable* lam, std::size_t M,
                                         SurrogateMode mode) {
    if (M < 1) throw ConstructionError("surrogate: M must be positive");
    if (M > f.size()) {
        std::ostringstream msg;
        msg << "surrogate: M = " << M << " exceeds the table length " << f.size();
        throw ConstructionError(msg.str());
    }
    if (mode == SurrogateMode::F) return DirichletPolynomial::from_function(f, M);
    VonMangoldtTable local;
    if (!lam) {
        local = vonmangoldt_transform(f);
        lam = &local;
    }
    if (lam->size() < M) throw ConstructionError("surrogate: von Mangoldt table shorter than M");
    std::vector<cplx> c;
    std::vector<double> ln;
    for (std::size_t n = 2; n <= M; ++n) {
        const cplx v = (*lam)[n];
        if (v == cplx{}) continue;
        const double l = std::log(static_cast<double>(n));
        c.push_back(mode == SurrogateMode::logF ? v / l : v);
        ln.push_back(l);
    }
    return DirichletPolynomial(c, ln);
}

void require_half_plane(double sigma) {
    if (!(sigma > 1.0)) throw DomainError("surrogate: requires Re(s) > 1");
}

double tail_for(const SeriesSurrogate& sur, double sigma) {
    switch (sur.mode()) {
        case SurrogateMode::F: return tail_bound_F(sur.k(), sur.terms(), sigma);
        case SurrogateMode::logF: return tail_bound_logF(sur.k(), sur.terms(), sigma);
        case SurrogateMode::FlogDeriv: return tail_bound_logderiv(sur.k(), sur.terms(), sigma);
    }
    return 0.0;
}

}  // namespace

SeriesSurrogate::SeriesSurrogate(const MultiplicativeFunction& f, std::size_t M, SurrogateMode mode)
    : M_(M), mode_(mode), k_(f.profile().k), poly_(build_surrogate_poly(f, nullptr, M, mode)) {}

SeriesSurrogate::SeriesSurrogate(const MultiplicativeFunction& f, const VonMangoldtTable& lam, std::size_t M,
                                 SurrogateMode mode)
    : M_(M), mode_(mode), k_(f.profile().k), poly_(build_surrogate_poly(f, &lam, M, mode)) {}

SurrogateValue eval_surrogate(const SeriesSurrogate& sur, cplx s) {
    require_half_plane(s.real());
    return {eval_poly(sur.polynomial(), s), tail_for(sur, s.real())};
}

std::vector<SurrogateValue> eval_surrogate_vertical(const SeriesSurrogate& sur, double sigma, std::span<const double> ts) {
    require_half_plane(sigma);
    std::vector<cplx> v(ts.size());
    eval_vertical(sur.polynomial(), sigma, ts, v);
    const double tb = tail_for(sur, sigma);
    std::vector<SurrogateValue> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = {v[i], tb};
    return out;
}

double tail_bound_F(double k, std::size_t M, double sigma) {
    require_half_plane(sigma);
    const double lm = std::log(static_cast<double>(std::max<std::size_t>(M, 1)));
    double sp = sigma;
    if (lm > 0.0) sp = std::min(sigma, 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * k / lm)));
    return std::exp(k * std::log(sp / (sp - 1.0)) + (sp - sigma) * lm);
}

double tail_bound_logF(double k, std::size_t M, double sigma) {
    require_half_plane(sigma);
    const double m = static_cast<double>(std::max<std::size_t>(M, 1));
    return k * std::pow(m, 1.0 - sigma) / (sigma - 1.0);
}

double tail_bound_logderiv(double k, std::size_t M, double sigma) {
    require_half_plane(sigma);
    // u^{−σ} log u decreases for u ≥ 3; terms below 3 are added explicitly.
    double extra = 0.0;
    std::size_t m0 = M;
    while (m0 < 3) {
        ++m0;
        extra += std::log(static_cast<double>(m0)) * std::pow(static_cast<double>(m0), -sigma);
    }
    const double m = static_cast<double>(m0);
    const double e = sigma - 1.0;
    return k * (extra + std::pow(m, -e) * (std::log(m) / e + 1.0 / (e * e)));
}

double logzeta_upper(double k, double sigma) {
    require_half_plane(sigma);
    return k * std::log(sigma / (sigma - 1.0));
}

double fourier_abs_tail(const BDelta& b, long J) {
    const double d = b.delta();
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    // Beyond L with (2L+1)δ ≥ 1: |b̂(j)| ≤ 2/(πδ(2j−1)²), summed over odd |2j−1| ≥ 2L+1 on both sides.
    const long L = std::max<long>({J, static_cast<long>(std::ceil(1.0 / d)), 4 * J, 1000});
    double s = 0.0;
    for (long j = J + 1; j <= L; ++j) s += std::abs(b.coeff(j)) + std::abs(b.coeff(-j));
    const double a = 2.0 * static_cast<double>(L) + 1.0;
    return s + (2.0 / (kPi * d)) * (1.0 / a + 2.0 / (a * a));
}

double GStarSplit::relative_budget() const {
    const double g = std::abs(G_direct);
    if (g == 0.0) return std::numeric_limits<double>::infinity();
    return (direct_tail + (g + direct_tail) * std::expm1(log_budget)) / g;
}

GStarSplit eval_gstar_split(const MultiplicativeFunction& f, const BDelta& b, cplx s, const GStarOptions& opts) {
    require_half_plane(s.real());
    const double Jr = opts.J > 0.0 ? opts.J : 2.0 * opts.K;
    if (!(opts.K >= 0.0)) throw DomainError("gstar: K must be nonnegative");
    if (Jr < opts.K) throw DomainError("gstar: J must be at least K");
    const long K = static_cast<long>(std::floor(opts.K));
    const long J = static_cast<long>(std::floor(Jr));
    const std::size_t M = std::min(opts.M, f.size());
    const double sigma = s.real();
    const double k = f.profile().k;

    std::vector<cplx> vals(f.values().begin(), f.values().begin() + static_cast<std::ptrdiff_t>(M + 1));
    const MultiplicativeFunction fm(std::move(vals), f.rule(), f.profile());
    const VonMangoldtTable lam = vonmangoldt_transform(fm);
    const SeriesSurrogate logF(fm, lam, M, SurrogateMode::logF);

    std::vector<double> ts;
    for (long j = -J; j <= J; ++j) ts.push_back(s.imag() - static_cast<double>(j));
    std::vector<cplx> lv(ts.size());
    eval_vertical(logF.polynomial(), sigma, ts, lv);

    cplx e1{}, e2{};
    double abs_coeff = 0.0, g2_abs = 0.0;
    for (long j = -J; j <= J; ++j) {
        const double c = b.coeff(j);
        const cplx term = c * lv[static_cast<std::size_t>(j + J)];
        abs_coeff += std::abs(c);
        if (std::labs(j) <= K) {
            e1 += term;
        } else {
            e2 += term;
            g2_abs += std::abs(c);
        }
    }

    const auto a = twist_phases(b, M);
    std::vector<cplx> gc;
    std::vector<double> gl;
    for (std::size_t n = 2; n <= M; ++n) {
        if (lam[n] == cplx{}) continue;
        const double l = std::log(static_cast<double>(n));
        gc.push_back(lam[n] / l * (a[n] - b(l / kTwoPi)));
        gl.push_back(l);
    }
    const cplx etilde = eval_poly(DirichletPolynomial(gc, gl), s);

    std::vector<cplx> g(M);
    for (std::size_t n = 1; n <= M; ++n) g[n - 1] = fm[n] * a[n];

    GStarSplit out;
    out.G1 = std::exp(e1);
    out.G2 = std::exp(e2);
    out.Gstar = out.G1 * out.G2;
    out.Gtilde = std::exp(etilde);
    out.G_direct = eval_poly(DirichletPolynomial(g), s);
    out.direct_tail = tail_bound_F(k, M, sigma);
    out.fourier_tail = fourier_abs_tail(b, J);
    const double lz = logzeta_upper(k, sigma);
    const double tl = tail_bound_logF(k, M, sigma);
    out.log_budget = abs_coeff * tl + 2.0 * tl + out.fourier_tail * lz;
    out.log_g2_majorant = (g2_abs + out.fourier_tail) * lz;
    return out;
}

}  // namespace dzl
