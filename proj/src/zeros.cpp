#include "dzl/zeros.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dzl/bdelta.hpp"
#include "dzl/error.hpp"
#include "dzl/parallel.hpp"
#include "dzl/util.hpp"

namespace dzl {

void Rectangle::validate() const {
    for (double v : {sigma_lo, sigma_hi, t_lo, t_hi})
        if (!std::isfinite(v)) throw DomainError("rectangle: non-finite coordinate");
    if (!(sigma_lo < sigma_hi) || !(t_lo < t_hi)) throw DomainError("rectangle: need sigma_lo < sigma_hi and t_lo < t_hi");
}

double Rectangle::diameter() const { return std::hypot(width(), height()); }

bool Rectangle::contains(cplx z) const {
    return z.real() >= sigma_lo && z.real() <= sigma_hi && z.imag() >= t_lo && z.imag() <= t_hi;
}

Evaluator Evaluator::of(const DirichletPolynomial& p) {
    Evaluator e;
    e.point = [&p](cplx s) { return eval_poly(p, s); };
    e.vertical = [&p](double sigma, std::span<const double> ts, std::span<cplx> out) {
        eval_vertical(p, sigma, ts, out);
    };
    return e;
}

// ---------------------------------------------------------------------------
// Winding

namespace {

struct Sample {
    double u;
    cplx v;
};

std::string where_string(cplx z) {
    std::ostringstream o;
    o << g17(z.real()) << (z.imag() < 0 ? "-" : "+") << g17(std::abs(z.imag())) << "i";
    return o.str();
}

}  // namespace

WindingResult winding_number(const Evaluator& f, const Rectangle& box, const WindingOptions& opts) {
    box.validate();
    WindingResult res;
    res.min_boundary_modulus = std::numeric_limits<double>::infinity();
    const double margin = opts.zero_margin * opts.scale;
    const cplx corners[4] = {{box.sigma_lo, box.t_lo}, {box.sigma_hi, box.t_lo}, {box.sigma_hi, box.t_hi}, {box.sigma_lo, box.t_hi}};
    double total = 0.0;

    auto check = [&](cplx z, cplx v) {
        const double m = std::abs(v);
        if (!std::isfinite(m)) throw DomainError("winding: evaluator not finite at " + where_string(z));
        res.min_boundary_modulus = std::min(res.min_boundary_modulus, m);
        if (m < margin)
            throw BoundaryZeroError("zero on boundary near " + where_string(z) + "; perturb the box", z, m);
    };

    for (int side = 0; side < 4; ++side) {
        const cplx a = corners[side], b = corners[(side + 1) % 4];
        const double len = std::abs(b - a);
        auto at = [&](double u) { return a + u * (b - a); };
        const std::size_t n = std::max<std::size_t>(opts.min_samples_per_side,
                                                     static_cast<std::size_t>(std::ceil(len / opts.max_step)));
        std::vector<Sample> init(n + 1);
        for (std::size_t i = 0; i <= n; ++i) init[i].u = static_cast<double>(i) / static_cast<double>(n);
        init[n].u = 1.0;
        const bool vertical_side = (side == 1 || side == 3);
        if (vertical_side && f.vertical) {
            std::vector<double> ts(n + 1);
            std::vector<cplx> vs(n + 1);
            for (std::size_t i = 0; i <= n; ++i) ts[i] = at(init[i].u).imag();
            f.vertical(a.real(), ts, vs);
            for (std::size_t i = 0; i <= n; ++i) init[i].v = vs[i];
        } else {
            for (auto& s : init) s.v = f.point(at(s.u));
        }
        for (const auto& s : init) check(at(s.u), s.v);

        double side_arg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // Depth-first bisection with an explicit stack; segments are accepted left to right.
            struct Seg {
                Sample l, r;
                int depth;
            };
            std::vector<Seg> stack{{init[i], init[i + 1], 0}};
            while (!stack.empty()) {
                Seg sg = stack.back();
                stack.pop_back();
                const double d = std::arg(sg.r.v / sg.l.v);
                if (std::abs(d) < kPi / 2) {
                    side_arg += d;
                    ++res.segments;
                    continue;
                }
                if (sg.depth >= opts.max_depth) {
                    const cplx z = at(0.5 * (sg.l.u + sg.r.u));
                    throw BoundaryZeroError("phase unresolved near " + where_string(z) + "; perturb the box", z,
                                            std::min(std::abs(sg.l.v), std::abs(sg.r.v)));
                }
                Sample mid{0.5 * (sg.l.u + sg.r.u), {}};
                mid.v = f.point(at(mid.u));
                check(at(mid.u), mid.v);
                stack.push_back({mid, sg.r, sg.depth + 1});
                stack.push_back({sg.l, mid, sg.depth + 1});
            }
        }
        res.side_arg[static_cast<std::size_t>(side)] = side_arg;
        total += side_arg;
    }
    res.winding = static_cast<int>(std::lround(total / kTwoPi));
    return res;
}

WindingOptions poly_winding_options(const DirichletPolynomial& p, const Rectangle& box) {
    WindingOptions o;
    o.scale = p.abs_sum(box.sigma_lo);
    const double lmax = p.size() ? p.logn().back() : 0.0;
    o.max_step = lmax > 0.0 ? std::min(0.05, 0.5 / lmax) : 0.05;
    return o;
}

// ---------------------------------------------------------------------------
// Refinement

ZeroRecord refine_zero(const DirichletPolynomial& p, cplx seed, const RefineOptions& opts) {
    cplx z = seed;
    cplx fz = eval_poly(p, z);
    auto rel = [&](cplx at, cplx v) { return std::abs(v) / p.abs_sum(at.real()); };
    cplx best = z;
    double best_rel = rel(z, fz);
    cplx zprev = z, fprev = fz;
    bool have_prev = false;
    int it = 0;
    for (; it < opts.max_iterations && best_rel >= opts.tol; ++it) {
        const cplx d = eval_poly_derivative(p, z);
        cplx step;
        if (std::abs(d) >= 1e-14 * p.abs_sum(z.real())) {
            step = fz / d;
        } else if (have_prev && fz != fprev) {
            step = fz * (z - zprev) / (fz - fprev);
        } else {
            step = cplx{1e-6, 1e-6};
        }
        cplx zn = z - step;
        cplx fn = eval_poly(p, zn);
        for (int h = 0; h < 30 && std::abs(fn) > std::abs(fz); ++h) {
            step *= 0.5;
            zn = z - step;
            fn = eval_poly(p, zn);
        }
        zprev = z;
        fprev = fz;
        have_prev = true;
        z = zn;
        fz = fn;
        const double r = rel(z, fz);
        if (r < best_rel) {
            best_rel = r;
            best = z;
        }
        if (step == cplx{}) break;
    }
    if (!(best_rel < opts.tol)) {
        std::ostringstream msg;
        msg << "refine_zero: no convergence from " << where_string(seed) << " after " << it << " iterations";
        throw ConvergenceError(msg.str(), best.real(), best.imag(), best_rel);
    }
    ZeroRecord rec;
    rec.location = best;
    rec.residual = std::abs(eval_poly(p, best));
    rec.relative_residual = rec.residual / p.abs_sum(best.real());
    rec.iterations = it;
    double r = opts.certify_radius;
    for (int attempt = 0; attempt < 4; ++attempt, r *= 1.5) {
        const Rectangle box{best.real() - r, best.real() + r, best.imag() - r, best.imag() + r};
        try {
            const auto w = winding_number(Evaluator::of(p), box, poly_winding_options(p, box));
            rec.box = box;
            rec.winding = w.winding;
            break;
        } catch (const BoundaryZeroError&) {
            rec.box = box;
            rec.winding = 0;
        }
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Quadrisection

namespace {

std::uint64_t box_seed(const Rectangle& b, int salt) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(salt);
    for (double v : {b.sigma_lo, b.sigma_hi, b.t_lo, b.t_hi}) {
        h ^= std::bit_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Rectangle jitter_box(const Rectangle& b, double jitter, int attempt) {
    std::mt19937_64 rng(box_seed(b, attempt));
    std::uniform_real_distribution<double> u(0.5, 1.5);
    auto off = [&](double x) { return jitter * u(rng) * std::max(1.0, std::abs(x)); };
    Rectangle r = b;
    r.sigma_lo -= off(b.sigma_lo);
    r.sigma_hi += off(b.sigma_hi);
    r.t_lo -= off(b.t_lo);
    r.t_hi += off(b.t_hi);
    return r;
}

struct Finder {
    const DirichletPolynomial& p;
    const FindOptions& opts;
    Evaluator ev;
    FindResult& out;

    int wind(const Rectangle& b) const { return winding_number(ev, b, poly_winding_options(p, b)).winding; }

    bool try_newton(const Rectangle& b) {
        try {
            ZeroRecord z = refine_zero(p, b.center(), opts.refine);
            if (!b.contains(z.location) || z.winding != 1) return false;
            out.zeros.push_back(z);
            return true;
        } catch (const ConvergenceError&) {
            return false;
        }
    }

    void leaf(const Rectangle& b, int w) {
        ZeroRecord z;
        try {
            z = refine_zero(p, b.center(), opts.refine);
        } catch (const ConvergenceError& e) {
            z.location = {e.best_re, e.best_im};
            z.residual = std::abs(eval_poly(p, z.location));
            z.relative_residual = e.best_residual;
        }
        if (!b.contains(z.location) || z.winding != w) {
            z.box = b;
            z.winding = w;
        }
        out.zeros.push_back(z);
    }

    void process(const Rectangle& b, int w) {
        if (w == 0) return;
        if (w == 1 && b.diameter() < opts.newton_diameter && try_newton(b)) return;
        if (b.diameter() < opts.min_diameter) {
            leaf(b, w);
            return;
        }
        // Split near the middle; the offset avoids zeros sitting on exact midlines.
        for (int attempt = 0;; ++attempt) {
            std::mt19937_64 rng(box_seed(b, 1000 + attempt));
            std::uniform_real_distribution<double> u(0.47, 0.53);
            const double sm = b.sigma_lo + u(rng) * b.width();
            const double tm = b.t_lo + u(rng) * b.height();
            const Rectangle kids[4] = {{b.sigma_lo, sm, b.t_lo, tm},
                                       {sm, b.sigma_hi, b.t_lo, tm},
                                       {sm, b.sigma_hi, tm, b.t_hi},
                                       {b.sigma_lo, sm, tm, b.t_hi}};
            QuadrisectionRecord rec{b, w, {}};
            try {
                for (int i = 0; i < 4; ++i) rec.child_winding[static_cast<std::size_t>(i)] = wind(kids[i]);
            } catch (const BoundaryZeroError&) {
                if (attempt + 1 >= 8) throw;
                continue;
            }
            out.subdivisions.push_back(rec);
            for (int i = 0; i < 4; ++i) process(kids[i], rec.child_winding[static_cast<std::size_t>(i)]);
            return;
        }
    }
};

}  // namespace

FindResult find_zeros(const DirichletPolynomial& p, const Rectangle& box, const FindOptions& opts) {
    box.validate();
    FindResult out;
    Finder fd{p, opts, Evaluator::of(p), out};
    Rectangle b = box;
    for (int attempt = 0;; ++attempt) {
        try {
            out.winding = fd.wind(b);
            break;
        } catch (const BoundaryZeroError&) {
            if (attempt >= opts.max_jitter_attempts) throw;
            b = jitter_box(box, opts.jitter * std::pow(10.0, attempt), attempt);
            out.jitter_attempts = attempt + 1;
        }
    }
    out.box = b;
    fd.process(b, out.winding);
    return out;
}

double domination_abscissa(const DirichletPolynomial& p) {
    if (p.size() == 0 || p.logn()[0] != 0.0) return std::numeric_limits<double>::infinity();
    const double c1 = std::abs(p.coeff(0));
    if (c1 == 0.0) return std::numeric_limits<double>::infinity();
    if (p.size() == 1) return -std::numeric_limits<double>::infinity();
    auto rest = [&](double s) { return p.abs_sum(s) - c1; };
    double lo = -1.0, hi = 1.0;
    while (rest(hi) >= c1) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) return std::numeric_limits<double>::infinity();
    }
    while (rest(lo) < c1) {
        hi = lo;
        lo = lo * 2.0 - 1.0;
        if (lo < -1e6) return -std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (rest(mid) < c1 ? hi : lo) = mid;
    }
    return hi;
}

CertifyReport certify_zero_free(const DirichletPolynomial& p, double sigma0, double t_lo, double t_hi,
                                const CertifyOptions& opts) {
    if (!(t_lo < t_hi)) throw DomainError("certify_zero_free: empty t range");
    if (!(opts.box_height > 0.0)) throw DomainError("certify_zero_free: box height must be positive");
    CertifyReport rep;
    rep.sigma0 = sigma0;
    rep.t_lo = t_lo;
    rep.t_hi = t_hi;
    rep.sigma_dom = domination_abscissa(p);
    if (sigma0 >= rep.sigma_dom) {
        rep.dominated = true;
        rep.min_modulus = std::abs(p.coeff(0)) - (p.abs_sum(sigma0) - std::abs(p.coeff(0)));
        return rep;
    }
    const auto nb = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / opts.box_height - 1e-12));
    std::vector<Rectangle> boxes(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        const double a = t_lo + static_cast<double>(i) * opts.box_height;
        const double b = (i + 1 == nb) ? t_hi : t_lo + static_cast<double>(i + 1) * opts.box_height;
        boxes[i] = {sigma0, rep.sigma_dom, a, b};
    }
    std::vector<int> wind(nb, 0);
    std::vector<double> mins(nb, 0.0);
    const Evaluator ev = Evaluator::of(p);
    parallel_for(nb, [&](std::size_t i) {
        try {
            const auto w = winding_number(ev, boxes[i], poly_winding_options(p, boxes[i]));
            wind[i] = w.winding;
            mins[i] = w.min_boundary_modulus;
        } catch (const BoundaryZeroError& e) {
            wind[i] = -1;
            mins[i] = e.modulus;
        }
    });
    rep.boxes = nb;
    rep.windings = wind;
    rep.min_modulus = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nb; ++i) {
        rep.min_modulus = std::min(rep.min_modulus, mins[i]);
        if (wind[i] != 0) {
            rep.zero_free = false;
            rep.offending.push_back(boxes[i]);
            rep.offending_winding.push_back(wind[i]);
        }
    }
    return rep;
}

RightmostResult rightmost_zero_scan(const DirichletPolynomial& p, double sigma_floor, double t_lo, double t_hi,
                                    const RightmostOptions& opts) {
    if (!(t_lo < t_hi)) throw DomainError("rightmost_zero_scan: empty t range");
    RightmostResult res;
    res.sigma_dom = domination_abscissa(p);
    if (!(sigma_floor < res.sigma_dom)) return res;
    const double top = std::isfinite(res.sigma_dom) ? res.sigma_dom : sigma_floor + 10.0;
    const auto nb = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / opts.box_height - 1e-12));
    for (double hi = top; hi > sigma_floor; hi -= opts.strip_width) {
        const double lo = std::max(sigma_floor, hi - opts.strip_width);
        ++res.strips;
        std::vector<std::vector<ZeroRecord>> found(nb);
        parallel_for(nb, [&](std::size_t i) {
            const double a = t_lo + static_cast<double>(i) * opts.box_height;
            const double b = (i + 1 == nb) ? t_hi : t_lo + static_cast<double>(i + 1) * opts.box_height;
            found[i] = find_zeros(p, Rectangle{lo, hi, a, b}, opts.find).zeros;
        });
        for (const auto& zs : found)
            for (const auto& z : zs)
                if (!res.sigma_max || z.location.real() > *res.sigma_max) {
                    res.sigma_max = z.location.real();
                    res.witness = z;
                }
        if (res.sigma_max) break;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Closed forms

double threshold_from_log(double logN, double k) {
    if (!(logN > 1.0)) throw DomainError("threshold: requires N > e");
    return 1.0 + (4.0 * k / kPi - 1.0) * std::log(logN) / logN;
}

double threshold(double N, double k) {
    if (!(N > std::exp(1.0))) throw DomainError("threshold: requires N > e");
    return threshold_from_log(std::log(N), k);
}

double delta_for_c(double c, double m) {
    if (!(m > kPi / 4.0)) throw DomainError("delta_for_c: requires m > pi/4");
    const double cmax = 4.0 * m / kPi - 1.0;
    if (!(c > 0.0 && c < cmax)) throw DomainError("delta_for_c: requires 0 < c < 4m/pi - 1");
    const double d = (cmax - c) / (50.0 * m);
    if (!(d < 4.0 / (50.0 * kPi))) throw DomainError("delta_for_c: delta exceeds 4/(50 pi)");
    return d;
}

ChainReport inequality_chain_check(double delta, double m, double c) {
    ChainReport r;
    const double q = 4.0 * m / kPi;
    r.members = {2.0 * q - 1.0 - c,
                 q,
                 m * BDelta(delta).gap(),
                 q - 2.0 * m * kPi * delta * delta,
                 q - 50.0 * m * delta,
                 1.0 + c};
    for (std::size_t i = 0; i < 4; ++i) r.slack[i] = r.members[i] - r.members[i + 1];
    r.holds = {r.slack[0] > 0.0, r.slack[1] > 0.0, r.slack[2] >= 0.0, r.slack[3] > 0.0, false};
    r.identity_residual = std::abs(r.members[4] - r.members[5]);
    r.holds[4] = r.identity_residual <= 1e-12;
    r.tightest_slack = *std::min_element(r.slack.begin(), r.slack.end());
    for (int i = 0; i < 5; ++i)
        if (!r.holds[static_cast<std::size_t>(i)]) {
            r.violated_link = i;
            break;
        }
    return r;
}

MontgomeryRectangle montgomery_rectangle_from_log(double logN, double c, double m, double t1) {
    if (!(logN > 1.0)) throw DomainError("montgomery_rectangle: requires log N > 1");
    const double cmax = 4.0 * m / kPi - 1.0;
    if (!(c > 0.0 && c < cmax)) throw DomainError("montgomery_rectangle: requires 0 < c < 4m/pi - 1");
    const double h = kTwoPi / logN;
    if (!(std::abs(t1) <= h)) throw DomainError("montgomery_rectangle: requires |t1| <= 2 pi / log N");
    const double ratio = std::log(logN) / logN;
    MontgomeryRectangle r;
    r.logN = logN;
    r.offset_lo = c * ratio;
    r.offset_hi = (8.0 * m / kPi - 2.0 - c) * ratio;
    r.rect = {1.0 + r.offset_lo, 1.0 + r.offset_hi, t1, t1 + h};
    return r;
}

MontgomeryRectangle montgomery_rectangle(double N, double c, double m, double t1) {
    if (!(N > std::exp(1.0))) throw DomainError("montgomery_rectangle: requires N > e");
    return montgomery_rectangle_from_log(std::log(N), c, m, t1);
}

}  // namespace dzl
