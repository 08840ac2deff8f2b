#include "dzl/special.hpp"

#include <cmath>
#include <limits>

#include "dzl/error.hpp"
#include "dzl/util.hpp"

namespace dzl {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Γ(z) for ℜz ≥ 1/2.
std::complex<double> lgamma_right(std::complex<double> z) {
    z -= 1.0;
    std::complex<double> x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + kLanczosG + 0.5;
    return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

bool is_nonpositive_integer(std::complex<double> z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(πz) with exact zeros at integers.
std::complex<double> sinpi(std::complex<double> z) {
    const double n = std::round(z.real());
    const double r = z.real() - n;
    const std::complex<double> w{r, z.imag()};
    std::complex<double> v = std::sin(kPi * w);
    if (std::fmod(std::abs(n), 2.0) == 1.0) v = -v;
    return v;
}

}  // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
    if (is_nonpositive_integer(z)) throw DomainError("lgamma_complex: pole at a nonpositive integer");
    if (z.real() < 0.5) return std::log(kPi) - std::log(sinpi(z)) - lgamma_right(1.0 - z);
    return lgamma_right(z);
}

std::complex<double> rgamma(std::complex<double> z) {
    if (is_nonpositive_integer(z)) return 0.0;
    if (z.real() < 0.5) return sinpi(z) / kPi * std::exp(lgamma_right(1.0 - z));
    return std::exp(-lgamma_right(z));
}

double expint_e1(double x) {
    if (!(x > 0.0)) throw DomainError("expint_e1: x must be positive");
    constexpr double euler = 0.57721566490153286061;
    if (x <= 1.0) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return -euler - std::log(x) + sum;
    }
    // Continued fraction, modified Lentz.
    constexpr double tiny = 1e-300;
    double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

double upper_incomplete_gamma(double a, double X) {
    if (!(X > 0.0)) throw DomainError("upper_incomplete_gamma: X must be positive");
    if (X < 1.0) {
        if (a <= 0.0) {
            // Γ(a, X) = (Γ(a+1, X) − X^a e^{−X}) / a
            if (a == std::floor(a) && a == 0.0) return expint_e1(X);
            return (upper_incomplete_gamma(a + 1.0, X) - std::pow(X, a) * std::exp(-X)) / a;
        }
        // Γ(a) − γ(a, X), series for γ.
        double sum = 1.0 / a, term = 1.0 / a;
        for (int n = 1; n < 500; ++n) {
            term *= X / (a + n);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return std::tgamma(a) - sum * std::exp(-X + a * std::log(X));
    }
    constexpr double tiny = 1e-300;
    double b = X + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 2000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-X + a * std::log(X)) * h;
}

}  // namespace dzl
