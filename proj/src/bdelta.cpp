#include "dzl/bdelta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dzl/error.hpp"
#include "dzl/quad.hpp"
#include "dzl/util.hpp"

namespace dzl {

BDelta::BDelta(double delta) : delta_(delta) {
    if (!(delta >= 0.0 && delta <= 0.5)) throw DomainError("BDelta: delta must lie in [0, 1/2]");
}

BDelta::BDelta(const BDelta& other) : delta_(other.delta_) {
    std::lock_guard lock(other.mu_);
    cache_ = other.cache_;
}

BDelta& BDelta::operator=(const BDelta& other) {
    if (this == &other) return *this;
    std::map<long, double> copy;
    {
        std::lock_guard lock(other.mu_);
        copy = other.cache_;
    }
    std::lock_guard lock(mu_);
    delta_ = other.delta_;
    cache_ = std::move(copy);
    return *this;
}

std::complex<double> BDelta::operator()(double theta) const {
    const double d = delta_;
    double r = theta - std::floor(theta + d);
    if (r <= -d) r += 1.0;
    if (d == 0.0 && (r == 1.0 || r == 0.0)) return -1.0;
    if (r >= d) return std::complex<double>(0.0, 1.0) * std::polar(1.0, kPi * r);
    return -std::polar(1.0, (1.0 - 1.0 / (2.0 * d)) * kPi * r);
}

double fourier_coeff_closed_form(double delta, long j) {
    const double jd = static_cast<double>(j);
    const double x = jd * delta - delta / 2.0 + 0.25;
    const double y = kTwoPi * x;
    const double sinc = (std::abs(x) < 1e-8) ? 1.0 - y * y / 6.0 : std::sin(y) / y;
    return sinc / (2.0 * jd - 1.0);
}

double BDelta::coeff(long j) const {
    std::lock_guard lock(mu_);
    auto it = cache_.find(j);
    if (it != cache_.end()) return it->second;
    const double v = fourier_coeff_closed_form(delta_, j);
    cache_.emplace(j, v);
    return v;
}

double BDelta::gap() const {
    if (delta_ >= 0.5) throw DomainError("fourier gap: undefined at delta = 1/2");
    return (2.0 * std::cos(kPi * delta_) / kPi) * (2.0 / (1.0 - 4.0 * delta_ * delta_));
}

std::complex<double> fourier_coeff_quadrature(double delta, long j, double abs_tol) {
    const BDelta b(delta);
    const double w = kTwoPi * static_cast<double>(j);
    auto f = [&](double th) { return b(th) * std::polar(1.0, -w * th); };
    QuadOptions qo;
    qo.abs_tol = abs_tol;
    qo.initial_panels = static_cast<std::size_t>(std::abs(j)) + 1;
    if (delta == 0.0) return integrate(f, 0.0, 1.0, qo).value;
    const double pts[] = {-delta, delta, 1.0 - delta};
    return integrate_breakpoints(f, pts, qo).value;
}

namespace {

// max over |j| ≤ J of (1+j²)·min(1, 1/(2π|x_j|))/|2j−1|, an analytic majorant of (1+j²)|b̂_δ(j)|.
double decay_envelope(double delta, long J) {
    double e = 0.0;
    for (long j = -J; j <= J; ++j) {
        const double jd = static_cast<double>(j);
        const double x = jd * delta - delta / 2.0 + 0.25;
        const double s = std::min(1.0, 1.0 / (kTwoPi * std::abs(x)));
        e = std::max(e, (1.0 + jd * jd) * s / std::abs(2.0 * jd - 1.0));
    }
    return e;
}

}  // namespace

FourierPropertyReport verify_fourier_properties(const std::vector<BDelta>& grid, long J) {
    if (J < 2) throw DomainError("verify_fourier_properties: J must be at least 2");
    FourierPropertyReport rep;
    auto fail = [&](int prop, double delta, long j, double residual) {
        rep.pass[prop - 1] = false;
        rep.failures.push_back({prop, delta, j, residual});
    };

    for (const BDelta& b : grid) {
        const double d = b.delta();
        const double env = decay_envelope(d, J);
        double fitted = 0.0;
        for (long j = -J; j <= J; ++j) {
            const std::complex<double> q = fourier_coeff_quadrature(d, j);
            const double jd = static_cast<double>(j);
            rep.max_imag_part = std::max(rep.max_imag_part, std::abs(q.imag()));
            rep.max_formula_error = std::max(rep.max_formula_error, std::abs(q - b.coeff(j)));
            // (i)
            if (!(std::abs(q.imag()) < 1e-9)) fail(1, d, j, std::abs(q.imag()));
            const double scaled = (1.0 + jd * jd) * std::abs(q);
            fitted = std::max(fitted, scaled);
            // (ii): quadrature values stay under the analytic (1+j²)⁻¹ envelope
            if (scaled > env + 1e-9 * (1.0 + jd * jd)) fail(2, d, j, scaled - env);
        }
        rep.decay_constant.push_back(fitted);
    }

    // (iii): approach to 2/(π(2j−1)) along δ = 10^{-1}, …, 10^{-8}.
    for (long j = -J; j <= J; ++j) {
        const double limit = 2.0 / (kPi * (2.0 * static_cast<double>(j) - 1.0));
        double prev = std::numeric_limits<double>::infinity();
        double err = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const double d = std::pow(10.0, -k);
            err = std::abs(fourier_coeff_closed_form(d, j) - limit);
            if (k >= 5 && !(err < prev)) fail(3, d, j, err - prev);
            prev = err;
        }
        if (!(err < 1e-5)) fail(3, 1e-8, j, err);
    }

    // (iv): strictly decreasing gap on the given δ values merged with a uniform grid of [0, 0.49].
    std::vector<double> ds;
    for (const BDelta& b : grid)
        if (b.delta() < 0.5) ds.push_back(b.delta());
    for (int i = 0; i <= 49; ++i) ds.push_back(0.01 * i);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double d : ds) {
        const double g = fourier_coeff_closed_form(d, 1) - fourier_coeff_closed_form(d, 0);
        if (!(g < prev_gap)) fail(4, d, 1, g - prev_gap);
        prev_gap = g;
    }

    // (v)
    const double cap = 2.0 / kPi;
    for (long j = -J; j <= J; ++j) {
        const double v = fourier_coeff_closed_form(0.0, j);
        if (v > cap * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) fail(5, 0.0, j, v - cap);
    }
    return rep;
}

std::vector<FourierRow> fourier_table(const std::vector<double>& deltas, long J) {
    std::vector<FourierRow> rows;
    for (double d : deltas) {
        const BDelta b(d);
        for (long j = -J; j <= J; ++j) {
            const double f = b.coeff(j);
            const std::complex<double> q = fourier_coeff_quadrature(d, j);
            rows.push_back({d, j, f, q.real(), std::abs(q - f)});
        }
    }
    return rows;
}

}  // namespace dzl
