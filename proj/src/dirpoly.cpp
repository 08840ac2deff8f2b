#include "dzl/dirpoly.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "dzl/error.hpp"
#include "dzl/parallel.hpp"
#include "dzl/util.hpp"

namespace dzl {

static_assert(std::endian::native == std::endian::little, "binary grid format assumes a little-endian host");

DirichletPolynomial::DirichletPolynomial(std::span<const cplx> coeff) {
    re_.reserve(coeff.size());
    im_.reserve(coeff.size());
    logn_.reserve(coeff.size());
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        re_.push_back(coeff[i].real());
        im_.push_back(coeff[i].imag());
        logn_.push_back(std::log(static_cast<double>(i + 1)));
    }
    finish();
}

DirichletPolynomial::DirichletPolynomial(std::span<const cplx> coeff, std::span<const double> logn) {
    if (coeff.size() != logn.size()) throw ConstructionError("DirichletPolynomial: coefficient and frequency lengths differ");
    for (std::size_t i = 1; i < logn.size(); ++i)
        if (!(logn[i] > logn[i - 1])) throw ConstructionError("DirichletPolynomial: frequencies must be strictly increasing");
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        re_.push_back(coeff[i].real());
        im_.push_back(coeff[i].imag());
    }
    logn_.assign(logn.begin(), logn.end());
    finish();
}

DirichletPolynomial DirichletPolynomial::from_function(const MultiplicativeFunction& f, std::size_t N) {
    const std::size_t n = (N == 0) ? f.size() : std::min(N, f.size());
    return DirichletPolynomial(std::span<const cplx>(f.values()).subspan(1, n));
}

void DirichletPolynomial::finish() {
    dre_.resize(re_.size());
    dim_.resize(im_.size());
    real_ = true;
    for (std::size_t i = 0; i < re_.size(); ++i) {
        dre_[i] = re_[i] * logn_[i];
        dim_[i] = im_[i] * logn_[i];
        if (im_[i] != 0.0) real_ = false;
    }
}

double DirichletPolynomial::abs_sum(double sigma) const { return kernel::abs_sum(terms(), sigma); }

cplx eval_poly(const DirichletPolynomial& p, cplx s) { return kernel::eval_point(p.terms(), s.real(), s.imag()); }

cplx eval_poly_derivative(const DirichletPolynomial& p, cplx s) {
    return -kernel::eval_point(p.derivative_terms(), s.real(), s.imag());
}

void eval_vertical(const DirichletPolynomial& p, double sigma, std::span<const double> ts, std::span<cplx> out) {
    if (out.size() < ts.size()) throw DomainError("eval_vertical: output span too short");
    kernel::eval_row(p.terms(), sigma, ts, out.first(ts.size()));
}

void GridSpec::validate() const {
    for (double v : {sigma_lo, sigma_hi, sigma_step, t_lo, t_hi, t_step})
        if (!std::isfinite(v)) throw DomainError("grid: non-finite range or step");
    if (!(sigma_step > 0.0) || !(t_step > 0.0)) throw DomainError("grid: steps must be positive");
    if (sigma_hi < sigma_lo || t_hi < t_lo) throw DomainError("grid: empty range");
}

std::size_t GridSpec::rows() const {
    return static_cast<std::size_t>(std::floor((sigma_hi - sigma_lo) / sigma_step + 1e-9)) + 1;
}

std::size_t GridSpec::cols() const { return static_cast<std::size_t>(std::floor((t_hi - t_lo) / t_step + 1e-9)) + 1; }

GridValues eval_grid(const DirichletPolynomial& p, const GridSpec& g, std::size_t memory_budget) {
    g.validate();
    GridValues out;
    out.spec = g;
    out.rows = g.rows();
    out.cols = g.cols();
    const double need = static_cast<double>(out.rows) * static_cast<double>(out.cols) * sizeof(cplx);
    if (need > static_cast<double>(memory_budget)) {
        std::ostringstream msg;
        msg << "grid too large: requires " << static_cast<unsigned long long>(need) << " bytes, budget is "
            << memory_budget << " bytes";
        throw DomainError(msg.str());
    }
    out.values.resize(out.rows * out.cols);
    std::vector<double> ts(out.cols);
    for (std::size_t j = 0; j < out.cols; ++j) ts[j] = g.t(j);
    parallel_for(out.rows, [&](std::size_t i) {
        eval_vertical(p, g.sigma(i), ts, std::span<cplx>(out.values).subspan(i * out.cols, out.cols));
    });
    return out;
}

void write_grid_csv(std::ostream& os, const GridValues& g) {
    os << "sigma,t,re,im,abs\n";
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j) {
            const cplx v = g.at(i, j);
            os << g17(g.spec.sigma(i)) << ',' << g17(g.spec.t(j)) << ',' << g17(v.real()) << ',' << g17(v.imag())
               << ',' << g17(std::abs(v)) << '\n';
        }
}

namespace {
constexpr char kMagic[8] = {'D', 'Z', 'L', 'G', 'R', 'I', 'D', '1'};

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw ConstructionError("binary grid: truncated input");
    return v;
}
}  // namespace

void write_grid_binary(std::ostream& os, const GridValues& g) {
    os.write(kMagic, sizeof kMagic);
    put<std::uint64_t>(os, g.rows);
    put<std::uint64_t>(os, g.cols);
    put(os, g.spec.sigma_lo);
    put(os, g.spec.sigma_step);
    put(os, g.spec.t_lo);
    put(os, g.spec.t_step);
    for (const cplx& v : g.values) {
        put(os, v.real());
        put(os, v.imag());
    }
}

GridValues read_grid_binary(std::istream& is) {
    char magic[8];
    if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw ConstructionError("binary grid: bad magic");
    GridValues g;
    g.rows = get<std::uint64_t>(is);
    g.cols = get<std::uint64_t>(is);
    g.spec.sigma_lo = get<double>(is);
    g.spec.sigma_step = get<double>(is);
    g.spec.t_lo = get<double>(is);
    g.spec.t_step = get<double>(is);
    g.spec.sigma_hi = g.spec.sigma(g.rows - 1);
    g.spec.t_hi = g.spec.t(g.cols - 1);
    g.values.resize(g.rows * g.cols);
    for (auto& v : g.values) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        v = {re, im};
    }
    return g;
}

}  // namespace dzl
