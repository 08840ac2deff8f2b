#include "dzl/model_m.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dzl/dirpoly.hpp"
#include "dzl/error.hpp"
#include "dzl/special.hpp"
#include "dzl/util.hpp"

namespace dzl {

namespace {

constexpr double kEuler = 0.57721566490153286061;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// log H(1) from the truncated log F series at σ = 1: the omitted tail behaves like
// m·E₁((σ−1) log M) and cancels the pole term, leaving S_M(1) − mγ − m log log M.
cplx log_h1(const DirichletPolynomial& logF, double m, double M) {
    return eval_poly(logF, cplx{1.0, 0.0}) - m * kEuler - m * std::log(std::log(M));
}

DirichletPolynomial truncated_logF(const VonMangoldtTable& lam, std::size_t M) {
    std::vector<cplx> c;
    std::vector<double> ln;
    for (std::size_t n = 2; n <= M; ++n) {
        if (lam[n] == cplx{}) continue;
        const double l = std::log(static_cast<double>(n));
        c.push_back(lam[n] / l);
        ln.push_back(l);
    }
    return DirichletPolynomial(c, ln);
}

}  // namespace

ModelConstants compute_model_constants(const MultiplicativeFunction& f, double m, double c,
                                       const ModelConstantsOptions& opts) {
    ModelConstants k;
    k.m = m;
    k.c = c;
    k.delta = delta_for_c(c, m);
    const BDelta b(k.delta);
    k.b0 = b.coeff(0);
    k.b1 = b.coeff(1);
    k.gamma_b0 = std::tgamma(m * k.b0);
    k.gamma_b1 = std::tgamma(m * k.b1);
    k.K = opts.K > 0 ? opts.K : std::max<long>(200, static_cast<long>(std::ceil(20.0 / k.delta)));
    k.M = std::min(opts.M, f.size());
    if (k.M < 16) throw ConstructionError("model constants: need at least 16 surrogate terms");

    const VonMangoldtTable lam = vonmangoldt_transform(f);
    const DirichletPolynomial logF = truncated_logF(lam, k.M);

    const cplx lh = log_h1(logF, m, static_cast<double>(k.M));
    const std::size_t Mq = k.M / 4;
    const cplx lh_q = log_h1(truncated_logF(lam, Mq), m, static_cast<double>(Mq));
    k.H1 = std::exp(lh);
    k.H1_extrapolation_error = std::abs(std::exp(lh) - std::exp(lh_q));
    k.A = std::exp(k.b0 * lh);
    k.A1 = std::exp(k.b1 * lh);

    // log F(1 + iτ) for integer τ ∈ [−K, K+1], τ ≠ 0.
    std::vector<double> ts;
    for (long tau = -k.K; tau <= k.K + 1; ++tau) ts.push_back(static_cast<double>(tau));
    std::vector<cplx> lv(ts.size());
    eval_vertical(logF, 1.0, ts, lv);
    auto logF_at = [&](long tau) { return lv[static_cast<std::size_t>(tau + k.K)]; };

    cplx e11{}, e10{};
    for (long j = -k.K; j <= k.K; ++j) {
        const double bj = b.coeff(j);
        if (j != 1) e11 += bj * logF_at(1 - j);
        if (j != 0) e10 += bj * logF_at(-j);
    }
    k.G11_1pi = std::exp(e11);
    k.G10_1 = std::exp(e10);

    const auto a = twist_phases(b, k.M);
    std::vector<cplx> gc;
    std::vector<double> gl;
    for (std::size_t n = 2; n <= k.M; ++n) {
        if (lam[n] == cplx{}) continue;
        const double l = std::log(static_cast<double>(n));
        const cplx v = lam[n] / l * (a[n] - b(l / kTwoPi));
        if (v == cplx{}) continue;
        gc.push_back(v);
        gl.push_back(l);
    }
    const DirichletPolynomial gt(gc, gl);
    k.Gt_1pi = std::exp(eval_poly(gt, cplx{1.0, 1.0}));
    k.Gt_1 = std::exp(eval_poly(gt, cplx{1.0, 0.0}));
    return k;
}

void ModelMParams::validate() const {
    const auto& k = constants;
    if (!(logN > 1.0)) throw DomainError("model M: requires log N > 1");
    if (!(k.b0 < 0.0)) throw DomainError("model M: requires b0 < 0");
    for (cplx z : {k.A, k.A1, k.G11_1pi, k.G10_1, k.Gt_1pi, k.Gt_1, k.H1})
        if (!finite(z)) throw DomainError("model M: non-finite constant");
    if (!std::isfinite(k.gamma_b1) || !std::isfinite(k.gamma_b0)) throw DomainError("model M: non-finite Gamma value");
}

ModelValue model_M_eval(const ModelMParams& params, cplx s) {
    const auto& k = params.constants;
    const cplx w = s - 1.0;
    if (w == cplx{}) throw DomainError("model M: pole at s = 1");
    const cplx v = cplx{0.0, 1.0} - w;  // 1 − s + i
    if (v == cplx{}) throw DomainError("model M: pole at s = 1 + i");
    const double L = params.logN;
    // N^{1−s+i} = e^{iL} e^{−wL}, with the large phase reduced once.
    const double phase = std::fmod(L, kTwoPi);
    const cplx npow = std::exp(cplx{0.0, phase} - w * L);
    ModelValue out;
    out.M1 = k.A1 * npow * std::exp((k.m * k.b1 - 1.0) * std::log(L)) * k.G11_1pi * k.Gt_1pi / (k.gamma_b1 * v);
    out.M2 = k.A * k.G10_1 * k.Gt_1 * std::exp(-k.m * k.b0 * std::log(w));
    out.M = out.M1 + out.M2;
    return out;
}

DominanceReport model_dominance(const ModelMParams& params, const MontgomeryRectangle& rect, double limit,
                                std::size_t samples) {
    params.validate();
    DominanceReport d;
    const Rectangle& r = rect.rect;
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = r.t_lo + r.height() * static_cast<double>(i) / static_cast<double>(samples);
        const ModelValue right = model_M_eval(params, {r.sigma_hi, t});
        const ModelValue left = model_M_eval(params, {r.sigma_lo, t});
        d.right_max_M1_over_M2 = std::max(d.right_max_M1_over_M2, std::abs(right.M1 / right.M2));
        d.left_max_M2_over_M1 = std::max(d.left_max_M2_over_M1, std::abs(left.M2 / left.M1));
    }
    d.pass = d.right_max_M1_over_M2 < limit && d.left_max_M2_over_M1 < limit;
    return d;
}

namespace {

WindingOptions model_options(const ModelMParams& params, const Rectangle& r) {
    WindingOptions o;
    o.scale = std::abs(model_M_eval(params, r.center()).M2);
    o.max_step = std::min(r.width(), r.height()) / 64.0;
    return o;
}

}  // namespace

ModelWindingReport model_M_winding(const ModelMParams& params, const MontgomeryRectangle& rect) {
    params.validate();
    ModelWindingReport rep;
    rep.dominance = model_dominance(params, rect);
    rep.regime_ok = rep.dominance.pass;
    if (!rep.regime_ok) {
        std::ostringstream msg;
        msg << "N too small for model regime: right max |M1/M2| = " << g17(rep.dominance.right_max_M1_over_M2)
            << ", left max |M2/M1| = " << g17(rep.dominance.left_max_M2_over_M1);
        rep.note = msg.str();
    }
    Evaluator ev;
    ev.point = [&params](cplx s) { return model_M_eval(params, s).M; };
    rep.winding = winding_number(ev, rect.rect, model_options(params, rect.rect));
    return rep;
}

RoucheReport rouche_gap_report(const Evaluator& p, const ModelMParams& params, const MontgomeryRectangle& rect,
                               std::size_t min_samples) {
    params.validate();
    RoucheReport rep;
    const Rectangle& r = rect.rect;
    const cplx corners[5] = {{r.sigma_lo, r.t_lo}, {r.sigma_hi, r.t_lo}, {r.sigma_hi, r.t_hi}, {r.sigma_lo, r.t_hi}, {r.sigma_lo, r.t_lo}};
    const double perim = 2.0 * (r.width() + r.height());
    double pmax = 0.0;
    auto ratio_at = [&](cplx s) {
        const cplx mv = model_M_eval(params, s).M;
        const cplx pv = p.point(s);
        pmax = std::max(pmax, std::abs(pv));
        ++rep.samples;
        return std::abs(pv - mv) / std::abs(mv);
    };
    // Uniform by arc length, then a local refinement around the largest ratio.
    std::vector<std::pair<double, cplx>> pts;
    for (int side = 0; side < 4; ++side) {
        const cplx a = corners[side], b = corners[side + 1];
        const auto n = std::max<std::size_t>(
            8, static_cast<std::size_t>(std::ceil(static_cast<double>(min_samples) * std::abs(b - a) / perim)));
        for (std::size_t i = 0; i < n; ++i) pts.push_back({0.0, a + (b - a) * (static_cast<double>(i) / static_cast<double>(n))});
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i].first = ratio_at(pts[i].second);
        if (pts[i].first > pts[best].first) best = i;
    }
    rep.max_ratio = pts[best].first;
    const cplx prev = pts[(best + pts.size() - 1) % pts.size()].second;
    const cplx next = pts[(best + 1) % pts.size()].second;
    for (int i = 1; i < 32; ++i) {
        const double u = static_cast<double>(i) / 32.0;
        for (cplx q : {pts[best].second + (prev - pts[best].second) * u, pts[best].second + (next - pts[best].second) * u})
            rep.max_ratio = std::max(rep.max_ratio, ratio_at(q));
    }

    try {
        Evaluator mev;
        mev.point = [&params](cplx s) { return model_M_eval(params, s).M; };
        rep.model_winding = winding_number(mev, r, model_options(params, r)).winding;
        rep.model_winding_ok = true;
    } catch (const std::exception& e) {
        rep.error = std::string("model winding: ") + e.what();
    }
    try {
        WindingOptions o;
        o.scale = pmax;
        o.max_step = std::min(r.width(), r.height()) / 64.0;
        rep.poly_winding = winding_number(p, r, o).winding;
        rep.poly_winding_ok = true;
    } catch (const std::exception& e) {
        if (!rep.error.empty()) rep.error += "; ";
        rep.error += std::string("polynomial winding: ") + e.what();
    }
    return rep;
}

}  // namespace dzl
