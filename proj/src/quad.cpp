#include "dzl/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "dzl/dirpoly.hpp"
#include "dzl/error.hpp"
#include "dzl/special.hpp"
#include "dzl/util.hpp"

namespace dzl {

namespace {

using cd = std::complex<double>;

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cd value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const BatchIntegrand& f, double a, double b, std::array<double, 15>& x, std::array<cd, 15>& y) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < 7; ++i) {
        x[2 * i] = c - h * kXgk[i];
        x[2 * i + 1] = c + h * kXgk[i];
    }
    x[14] = c;
    f(x, y);
    cd k = kWgk[7] * y[14];
    cd g = kWg[3] * y[14];
    for (int i = 0; i < 7; ++i) {
        const cd pair = y[2 * i] + y[2 * i + 1];
        k += kWgk[i] * pair;
        if (i % 2 == 1) g += kWg[i / 2] * pair;
    }
    return {a, b, k * h, std::abs((k - g) * h)};
}

cd neumaier_sum(const std::vector<Panel>& panels) {
    double sr = 0, cr = 0, si = 0, ci = 0;
    auto add = [](double& s, double& c, double v) {
        const double t = s + v;
        c += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
        s = t;
    };
    for (const auto& p : panels) {
        add(sr, cr, p.value.real());
        add(si, ci, p.value.imag());
    }
    return {sr + cr, si + ci};
}

}  // namespace

QuadResult integrate(const BatchIntegrand& f, double a, double b, const QuadOptions& opts) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate: endpoints must be finite");
    QuadResult r;
    if (a == b) return r;
    std::array<double, 15> x{};
    std::array<cd, 15> y{};
    std::priority_queue<Panel> heap;
    std::vector<Panel> frozen;
    const std::size_t init = std::max<std::size_t>(1, opts.initial_panels);
    cd total{};
    double err = 0.0;
    for (std::size_t i = 0; i < init; ++i) {
        const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(init);
        const double hi = (i + 1 == init) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(init);
        Panel p = gk15(f, lo, hi, x, y);
        total += p.value;
        err += p.err;
        heap.push(p);
    }
    std::size_t count = init;
    while (!heap.empty() && count < opts.max_panels) {
        const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
        if (err <= tol) break;
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);
            continue;
        }
        Panel l = gk15(f, worst.a, mid, x, y);
        Panel rr = gk15(f, mid, worst.b, x, y);
        total += l.value + rr.value - worst.value;
        err += l.err + rr.err - worst.err;
        heap.push(l);
        heap.push(rr);
        ++count;
    }
    std::vector<Panel> all = std::move(frozen);
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
    r.value = neumaier_sum(all);
    r.abs_err_estimate = 0.0;
    for (const auto& p : all) r.abs_err_estimate += p.err;
    r.panels = all.size();
    return r;
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts) {
    BatchIntegrand batch = [&f](std::span<const double> xs, std::span<cd> out) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    };
    return integrate(batch, a, b, opts);
}

QuadResult integrate_breakpoints(const Integrand& f, std::span<const double> points, const QuadOptions& opts) {
    QuadResult r;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const QuadResult q = integrate(f, points[i], points[i + 1], opts);
        r.value += q.value;
        r.abs_err_estimate += q.abs_err_estimate;
        r.panels += q.panels;
    }
    return r;
}

ContourSegment ContourSegment::line(cd a, cd b) {
    ContourSegment s;
    s.kind = (a.real() == b.real()) ? Kind::vertical : Kind::horizontal;
    s.start = a;
    s.end = b;
    return s;
}

ContourSegment ContourSegment::arc(cd center, double radius, double theta_start, double theta_end) {
    if (!(radius > 0.0)) throw DomainError("arc radius must be positive");
    ContourSegment s;
    s.kind = Kind::arc;
    s.center = center;
    s.radius = radius;
    s.theta_start = theta_start;
    s.theta_end = theta_end;
    s.start = center + std::polar(radius, theta_start);
    s.end = center + std::polar(radius, theta_end);
    return s;
}

QuadResult integrate_segment(const std::function<cd(cd)>& f, const ContourSegment& seg, const QuadOptions& opts) {
    if (seg.kind == ContourSegment::Kind::arc) {
        const cd c = seg.center;
        const double R = seg.radius;
        return integrate(
            [&](double th) {
                const cd e = std::polar(1.0, th);
                return f(c + R * e) * cd(0.0, R) * e;
            },
            seg.theta_start, seg.theta_end, opts);
    }
    const cd a = seg.start, d = seg.end - seg.start;
    return integrate([&](double u) { return f(a + u * d) * d; }, 0.0, 1.0, opts);
}

// ---------------------------------------------------------------------------

PerronResult perron_partial_sum(const MultiplicativeFunction& f, double x, double alpha, double T,
                                const PerronOptions& opts) {
    if (!(x >= 1.0)) throw DomainError("perron: x must be >= 1");
    if (!(T >= 1.0)) throw DomainError("perron: T must be >= 1");
    if (!(alpha > 1.0)) throw DomainError("perron: alpha must exceed the abscissa of absolute convergence 1");
    PerronResult r;
    r.x_near_integer = std::abs(x - std::round(x)) < 1e-9;
    if (r.x_near_integer && opts.shift_integer_x) {
        x = std::round(x) + 0.5;
        r.x_was_shifted = true;
    }
    r.x = x;
    const std::size_t nx = static_cast<std::size_t>(std::floor(x));
    if (nx > f.size()) throw DomainError("perron: x exceeds the coefficient table");
    std::size_t M = opts.terms ? opts.terms : std::max<std::size_t>(static_cast<std::size_t>(20.0 * x), 2000);
    M = std::min(M, f.size());
    if (M <= nx) throw DomainError("perron: surrogate must extend beyond x");
    r.surrogate_terms = M;

    for (std::size_t n = 1; n <= nx; ++n) r.exact += f[n];

    const auto poly = DirichletPolynomial::from_function(f, M);
    const double lx = std::log(x);
    BatchIntegrand g = [&](std::span<const double> ts, std::span<cd> out) {
        eval_vertical(poly, alpha, ts, out);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const cd s{alpha, ts[i]};
            out[i] *= std::exp(s * lx) / s;
        }
    };
    QuadOptions qo = opts.quad;
    qo.initial_panels = std::max<std::size_t>(qo.initial_panels, static_cast<std::size_t>(std::ceil(T)));
    const QuadResult q = integrate(g, -T, T, qo);
    r.approx = q.value / kTwoPi;
    r.quadrature_error = q.abs_err_estimate / kTwoPi;

    const double xa = std::pow(x, alpha);
    double pe = 0.0;
    for (std::size_t n = 1; n <= M; ++n) {
        const double nn = static_cast<double>(n);
        pe += std::abs(f[n]) / (std::pow(nn, alpha) * (1.0 + T * std::abs(std::log(x / nn))));
    }
    r.stated_error_term = xa * pe;
    // Terms n > M: each truncated Perron integral is at most (x/n)^α/(πT log(n/x)).
    r.truncation_error = xa * tail_bound_F(f.profile().k, M, alpha) /
                         (kPi * T * std::log(static_cast<double>(M + 1) / x));
    return r;
}

HankelResult hankel_gamma(cd z, double X, double r, const QuadOptions& opts) {
    if (!(X > 1.0)) throw DomainError("hankel: X must exceed 1");
    if (!(r > 0.0 && r < X)) throw DomainError("hankel: need 0 < r < X");
    HankelResult h;
    // Lower side of the cut, s = u e^{−iπ}, traversed from u = X to u = r.
    const cd lower_phase = std::exp(cd(0.0, kPi) * z);
    const cd upper_phase = std::exp(cd(0.0, -kPi) * z);
    auto ray = [&](double u) { return std::exp(-z * std::log(u) - u); };
    const QuadResult lo = integrate([&](double u) { return lower_phase * ray(u); }, r, X, opts);
    const QuadResult up = integrate([&](double u) { return -upper_phase * ray(u); }, r, X, opts);
    const double lr = std::log(r);
    const QuadResult arc = integrate(
        [&](double th) {
            const cd s = std::polar(r, th);
            const cd logs{lr, th};
            return std::exp(-z * logs + s) * cd(0.0, 1.0) * s;
        },
        -kPi, kPi, opts);
    const cd twopii{0.0, kTwoPi};
    h.quad.value = (lo.value + up.value + arc.value) / twopii;
    h.quad.abs_err_estimate = (lo.abs_err_estimate + up.abs_err_estimate + arc.abs_err_estimate) / kTwoPi;
    h.quad.panels = lo.panels + up.panels + arc.panels;
    const double az = std::abs(z);
    h.stated_envelope = std::pow(47.0, az) * std::tgamma(1.0 + az) * std::exp(-X / 2.0);
    const double per_ray = std::exp(kPi * std::abs(z.imag())) * upper_incomplete_gamma(1.0 - z.real(), X) / kTwoPi;
    h.truncation_bound = 2.0 * per_ray;
    return h;
}

SegmentBoundResult vertical_segment_bound(double x, double tau, double K, double T, const QuadOptions& opts) {
    if (!(x > 0.0)) throw DomainError("segment: x must be positive");
    if (x == 1.0) throw DomainError("segment: x = 1 makes log x vanish");
    if (!(K > 0.0 && K < T)) throw DomainError("segment: need 0 < K < T");
    const double lx = std::log(x);
    QuadOptions qo = opts;
    qo.initial_panels = std::max<std::size_t>(qo.initial_panels,
                                              static_cast<std::size_t>(std::ceil((T - K) * std::abs(lx) / kPi)) + 1);
    const QuadResult q = integrate(
        [&](double t) {
            const cd w{tau, t};
            return std::exp(w * lx) / w;
        },
        K, T, qo);
    SegmentBoundResult r;
    r.value = q.value / kTwoPi;
    r.quad_error = q.abs_err_estimate / kTwoPi;
    r.stated_bound = std::pow(x, tau) / (K * std::abs(lx));
    r.ratio = std::abs(r.value) / r.stated_bound;
    return r;
}

ShiuResult shiu_ratio(const MultiplicativeFunction& f, double x, double z) {
    if (!(x >= 2.0)) throw DomainError("shiu: x must be at least 2");
    if (x > static_cast<double>(f.size())) throw DomainError("shiu: x exceeds the coefficient table");
    if (z < std::pow(x, 0.1) || z > x) throw DomainError("shiu: z must satisfy x^0.1 <= z <= x");
    ShiuResult r;
    const auto hi = static_cast<std::size_t>(std::floor(x));
    const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil(x - z)));
    for (std::size_t n = lo; n <= hi; ++n) r.lhs += std::abs(f[n]);
    const PrimeTable pt(hi);
    for (std::uint32_t p : pt.primes()) r.prime_sum += std::abs(f[p]) / static_cast<double>(p);
    r.rhs_envelope = z / std::log(x) * std::exp(r.prime_sum);
    r.ratio = r.lhs / r.rhs_envelope;
    return r;
}

}  // namespace dzl
