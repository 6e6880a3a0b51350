#pragma once

// Quadrature oracles for USp(2N) eigenangle averages, written without the sampler.

#include <cmath>
#include <functional>
#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace ffl::quad {

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    gsl_integration_workspace* w = gsl_integration_workspace_alloc(2000);
    gsl_function F;
    F.function = [](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); };
    F.params = const_cast<std::function<double(double)>*>(&f);
    double r = 0, err = 0;
    int st = gsl_integration_qag(&F, a, b, 1e-14, tol, 2000, GSL_INTEG_GAUSS61, w, &r, &err);
    gsl_integration_workspace_free(w);
    if (st) throw std::runtime_error("quadrature did not converge");
    return r;
}

// E[f(theta)] on USp(2): density (2/pi) sin^2
inline double usp2_mean(const std::function<double(double)>& f) {
    return integrate([&](double t) { return 2 / M_PI * std::sin(t) * std::sin(t) * f(t); }, 0, M_PI);
}

inline double usp2_cdf(double t) { return (t - std::sin(t) * std::cos(t)) / M_PI; }

// E[f(a, b)] on USp(4): density proportional to (cos a - cos b)^2 sin^2 a sin^2 b
inline double usp4_mean(const std::function<double(double, double)>& f) {
    auto w = [](double a, double b) {
        double d = std::cos(a) - std::cos(b);
        return d * d * std::sin(a) * std::sin(a) * std::sin(b) * std::sin(b);
    };
    auto outer = [&](const std::function<double(double, double)>& g) {
        return integrate([&](double a) { return integrate([&](double b) { return w(a, b) * g(a, b); }, 0, M_PI, 1e-11); },
                         0, M_PI, 1e-11);
    };
    return outer(f) / outer([](double, double) { return 1.0; });
}

}  // namespace ffl::quad
