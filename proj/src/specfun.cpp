#include "ffl/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ffl {

namespace {

using cplx = std::complex<double>;
constexpr double kEps = 1e-17;
constexpr double kAsymptoticFrom = 40.0;

cplx e1_series(cplx z) {
    // E_1(z) = -gamma - log z - sum_{k>=1} (-z)^k / (k k!)
    cplx term = 1.0, sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= -z / static_cast<double>(k);
        cplx t = term / static_cast<double>(k);
        sum += t;
        if (std::abs(t) < kEps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(z) - sum;
}

cplx e1_fraction(cplx z) {
    // modified Lentz on e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...)))
    const double tiny = 1e-300;
    cplx b = z + 1.0;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 5000; ++i) {
        double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-z);
}

// Ci(x) = f(x) sin x - g(x) cos x with the asymptotic auxiliary series, for large x
double ci_asymptotic(double x) {
    double inv2 = 1.0 / (x * x);
    double f = 1.0, g = 1.0, tf = 1.0, tg = 1.0;
    for (int k = 1; k < 40; ++k) {
        double nf = -tf * (2 * k - 1) * (2 * k) * inv2;
        double ng = -tg * (2 * k) * (2 * k + 1) * inv2;
        if (std::fabs(nf) > std::fabs(tf)) break;
        tf = nf;
        tg = ng;
        f += tf;
        g += tg;
        if (std::fabs(tf) < kEps && std::fabs(tg) < kEps) break;
    }
    f /= x;
    g *= inv2;
    return f * std::sin(x) - g * std::cos(x);
}

// e^{-z}/z sum_k (-1)^k k!/z^k, used for |z| >= 40 where the terms fall below 1e-16
cplx e1_asymptotic(cplx z) {
    cplx inv = 1.0 / z, term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        cplx next = -term * static_cast<double>(k) * inv;
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < kEps) break;
    }
    return std::exp(-z) * inv * sum;
}

double cin_series(double x) {
    double x2 = x * x, term = 1.0, sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= -x2 / ((2.0 * k - 1) * (2.0 * k));
        double t = -term / (2.0 * k);
        sum += t;
        if (std::fabs(t) < kEps * std::fabs(sum)) break;
    }
    return sum;
}

}  // namespace

std::complex<double> expint_e1(std::complex<double> z) {
    if (z == cplx(0.0, 0.0)) throw std::domain_error("expint_e1: logarithmic singularity at 0");
    double r = std::abs(z);
    bool near_negative_axis = z.real() < 0 && std::fabs(z.imag()) < -z.real() && r < 60;
    bool small = r <= 1.5 || (r <= 4.0 && z.real() < 2.0);
    if (small || near_negative_axis) return e1_series(z);
    if (r >= kAsymptoticFrom) return e1_asymptotic(z);
    return e1_fraction(z);
}

double cos_integral(double x) {
    if (!(x > 0)) throw std::domain_error("cos_integral: x must be positive");
    if (x <= 4.0) return kEulerGamma + std::log(x) - cin_series(x);
    if (x >= kAsymptoticFrom) return ci_asymptotic(x);
    return -e1_fraction(cplx(0.0, x)).real();
}

double cos_integral_entire(double x) {
    x = std::fabs(x);
    if (x <= 4.0) return cin_series(x);
    return kEulerGamma + std::log(x) - cos_integral(x);
}

}  // namespace ffl
