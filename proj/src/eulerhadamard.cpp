#include "ffl/eulerhadamard.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ffl/specfun.hpp"

namespace ffl {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double bump(double t) {
    double d = 1.0 - t * t;
    return d > 0 ? std::exp(-1.0 / d) : 0.0;
}

constexpr int kMaxTrapLog2 = 17;

}  // namespace

BumpKernel::BumpKernel(int q, int X, KernelOptions opt) : q_(q), X_(X), opt_(opt) {
    if (q < 2) throw std::invalid_argument("BumpKernel: q must be >= 2");
    if (X < 1) throw std::invalid_argument("BumpKernel: X must be >= 1");
    if (opt.gl_nodes < 8) throw std::invalid_argument("BumpKernel: too few quadrature nodes");
    if (opt.trap_base < 16) throw std::invalid_argument("BumpKernel: trapezoid base too small");
    a_ = q;
    b_ = std::pow(static_cast<double>(q), 1.0 + 1.0 / X);
    half_ = 0.5 * (b_ - a_);
    mid_ = 0.5 * (a_ + b_);
    max_dlogx_ = half_ / a_;

    gsl_integration_glfixed_table* tab = gsl_integration_glfixed_table_alloc(opt.gl_nodes);
    gl_t_.resize(opt.gl_nodes);
    gl_w_.resize(opt.gl_nodes);
    for (int i = 0; i < opt.gl_nodes; ++i)
        gsl_integration_glfixed_point(-1.0, 1.0, i, &gl_t_[i], &gl_w_[i], tab);
    gsl_integration_glfixed_table_free(tab);
    for (long n = opt.trap_base; n <= (1L << kMaxTrapLog2); n *= 2) {
        Rule r;
        double h = 2.0 / n;
        for (long i = 1; i < n; ++i) {
            double t = -1.0 + i * h;
            double w = h * bump(t);
            if (w == 0) continue;
            r.logx.push_back(std::log(mid_ + half_ * t));
            r.w.push_back(w);
        }
        rules_.push_back(std::move(r));
    }
    double I = mass(0);
    norm_ = 1.0 / I;
    for (auto& r : rules_)
        for (double& w : r.w) w *= norm_;
}

double BumpKernel::u(double x) const {
    if (x <= a_ || x >= b_) return 0.0;
    return norm_ / half_ * bump((x - mid_) / half_);
}

double BumpKernel::v(double t) const {
    if (t <= a_) return 1.0;
    if (t >= b_) return 0.0;
    // integrate over the shorter side so both ends are reached exactly
    double t0 = (t - mid_) / half_;
    double lo = t0 > 0 ? t0 : -1.0, hi = t0 > 0 ? 1.0 : t0;
    double h = 0.5 * (hi - lo), s = 0;
    for (std::size_t i = 0; i < gl_t_.size(); ++i) s += gl_w_[i] * bump(lo + h * (gl_t_[i] + 1.0));
    double part = norm_ * h * s;
    return std::clamp(t0 > 0 ? part : 1.0 - part, 0.0, 1.0);
}

double BumpKernel::mass(std::size_t level) const {
    if (level >= rules_.size()) throw std::out_of_range("BumpKernel::mass: no such level");
    double s = 0;
    for (double w : rules_[level].w) s += w;
    return s;
}

const BumpKernel::Rule& BumpKernel::rule_for(double rate) const {
    // trapezoid on n panels aliases the phase onto pi n - rate * max d(log x)/dt
    long n = opt_.trap_base;
    for (std::size_t l = 0; l < rules_.size(); ++l, n *= 2)
        if (std::numbers::pi * n - std::fabs(rate) * max_dlogx_ >= opt_.alias_margin) return rules_[l];
    return rules_.back();
}

std::complex<double> BumpKernel::mellin(std::complex<double> z) const {
    const Rule& r = rule_for(z.imag());
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < r.w.size(); ++i) s += r.w[i] * std::exp((z - 1.0) * r.logx[i]);
    return s;
}

std::complex<double> BumpKernel::U(std::complex<double> z) const {
    if (z == std::complex<double>(0, 0)) throw std::domain_error("U: logarithmic singularity at 0");
    const Rule& r = rule_for(z.imag());
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < r.w.size(); ++i) s += r.w[i] * expint_e1(z * r.logx[i]);
    return s;
}

namespace {

// int u(x) Ci(c X log_q x) dx
double ci_image(const BumpKernel& K, double c) {
    const double scale = c * K.X() / std::log(static_cast<double>(K.q()));
    const auto& r = K.rule_for(scale);
    double s = 0;
    for (std::size_t i = 0; i < r.w.size(); ++i) s += r.w[i] * cos_integral(scale * r.logx[i]);
    return s;
}

double images_except_zero(const BumpKernel& K, double theta, int k_max) {
    double s = 0;
    for (int m = k_max; m >= 1; --m) {
        s += ci_image(K, std::fabs(theta + kTwoPi * m));
        s += ci_image(K, std::fabs(theta - kTwoPi * m));
    }
    return s;
}

}  // namespace

double periodized_ci(const BumpKernel& K, double theta, int k_max) {
    if (k_max < 0) throw std::invalid_argument("periodized_ci: k_max must be >= 0");
    if (theta == 0) throw std::domain_error("periodized_ci: Ci singularity at theta = 0");
    return images_except_zero(K, theta, k_max) + ci_image(K, std::fabs(theta));
}

double periodized_ci_reduced(const BumpKernel& K, double theta, int k_max) {
    if (k_max < 0) throw std::invalid_argument("periodized_ci_reduced: k_max must be >= 0");
    theta = std::fabs(theta);
    if (theta == 0) throw std::domain_error("periodized_ci_reduced: theta = 0");
    // Ci(theta y) - log|2 sin(theta/2)| = gamma + log y - Cin(theta y) - log(2 sin(theta/2)/theta)
    const double logq = std::log(static_cast<double>(K.q()));
    const double scale = theta * K.X() / logq;
    const auto& r = K.rule_for(scale);
    double s = 0;
    for (std::size_t i = 0; i < r.w.size(); ++i) {
        double y = K.X() * r.logx[i] / logq;
        s += r.w[i] * (kEulerGamma + std::log(y) - cos_integral_entire(theta * y));
    }
    double sinc = theta < 1e-4 ? 1.0 - theta * theta / 24.0 : 2.0 * std::sin(0.5 * theta) / theta;
    return images_except_zero(K, theta, k_max) + s - std::log(sinc);
}

double periodized_ci_limit(double theta, int X) {
    double s = std::log(std::fabs(2.0 * std::sin(0.5 * theta)));
    for (int n = 1; n <= X; ++n) s += std::cos(n * theta) / n;
    return s;
}

std::vector<std::int64_t> prime_sums_direct(const MonicTable& T, const std::vector<std::int8_t>& chi, int N) {
    if (N > T.max_degree()) throw std::invalid_argument("prime_sums_direct: N exceeds the table depth");
    if (chi.size() < T.offset(N + 1)) throw std::invalid_argument("prime_sums_direct: character table too short");
    std::vector<std::int64_t> b(N + 1, 0);
    for (int n = 1; n <= N; ++n)
        for (std::uint32_t i = T.offset(n); i < T.offset(n + 1); ++i)
            if (chi[i]) b[n] += T.von_mangoldt(i) * chi[i];
    return b;
}

std::vector<std::int64_t> prime_sums_from_coeffs(const LPoly& L, int N) {
    if (L.c.empty() || L.c[0] != 1) throw std::invalid_argument("prime_sums_from_coeffs: c_0 must be 1");
    auto c = [&](int j) -> __int128 { return j < static_cast<int>(L.c.size()) ? L.c[j] : 0; };
    std::vector<std::int64_t> b(N + 1, 0);
    for (int n = 1; n <= N; ++n) {
        __int128 v = static_cast<__int128>(n) * c(n);
        for (int r = 1; r < n; ++r) v -= static_cast<__int128>(b[r]) * c(n - r);
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("prime_sums_from_coeffs: b_n overflows");
        b[n] = static_cast<std::int64_t>(v);
    }
    return b;
}

std::complex<double> euler_part(const std::vector<std::int64_t>& b, int q, int X, std::complex<double> s) {
    if (X >= static_cast<int>(b.size())) throw std::invalid_argument("euler_part: not enough prime sums");
    const double logq = std::log(static_cast<double>(q));
    std::complex<double> e = 0;
    for (int n = 1; n <= X; ++n) e += static_cast<double>(b[n]) * std::exp(-s * (n * logq)) / static_cast<double>(n);
    return std::exp(e);
}

double euler_part(const std::vector<std::int64_t>& b, int q, int X, double s) {
    if (X >= static_cast<int>(b.size())) throw std::invalid_argument("euler_part: not enough prime sums");
    double e = 0;
    for (int n = 1; n <= X; ++n) e += static_cast<double>(b[n]) * std::pow(static_cast<double>(q), -s * n) / n;
    return std::exp(e);
}

double hadamard_part(const BumpKernel& K, const ZeroSet& zs, int k_max) {
    if (zs.central_zero) return 0.0;
    for (double t : zs.angles)
        if (t < kCentralAngle) return 0.0;
    double e = 0;
    for (double t : zs.angles) e += periodized_ci(K, t, k_max);
    return std::exp(2.0 * e);
}

std::complex<double> hadamard_part(const BumpKernel& K, const ZeroSet& zs, std::complex<double> s, int k_max) {
    if (s.real() < 0) throw std::invalid_argument("hadamard_part: needs Re s >= 0");
    const double logq = std::log(static_cast<double>(K.q()));
    std::complex<double> e = 0;
    for (const auto& root : zs.roots) {
        const double theta = -std::arg(root);
        for (int m = -k_max; m <= k_max; ++m) {
            std::complex<double> rho(0.5, (theta + kTwoPi * m) / logq);
            std::complex<double> z = (s - rho) * static_cast<double>(K.X());
            if (std::abs(z) < 1e-300) return 0.0;
            e += K.U(z);
        }
    }
    return std::exp(-e);
}

PrimeCensus prime_census(const Field& F, const Poly& D, const std::vector<std::int64_t>& b, int X) {
    if (X >= static_cast<int>(b.size())) throw std::invalid_argument("prime_census: not enough prime sums");
    const int q = F.q();
    PrimeCensus C;
    C.q = q;
    C.plus.assign(X + 1, 0);
    C.minus.assign(X + 1, 0);
    C.zero.assign(X + 1, 0);
    for (const auto& pp : factorize(F, D))
        if (deg(pp.prime) <= X) ++C.zero[deg(pp.prime)];
    std::vector<std::int64_t> pi(X + 1, 0), chisum(X + 1, 0);
    for (int d = 1; d <= X; ++d) pi[d] = prime_poly_count(q, d);
    // b_n = sum_{e | n} e * sum_{d(P)=e} chi(P)^{n/e}
    for (int n = 1; n <= X; ++n) {
        std::int64_t rest = b[n];
        for (int e = 1; e < n; ++e) {
            if (n % e) continue;
            rest -= e * (((n / e) % 2) ? chisum[e] : pi[e] - C.zero[e]);
        }
        if (rest % n) throw std::logic_error("prime_census: prime sums are inconsistent");
        chisum[n] = rest / n;
        std::int64_t unit = pi[n] - C.zero[n];
        if ((unit + chisum[n]) % 2 || std::llabs(chisum[n]) > unit)
            throw std::logic_error("prime_census: prime sums are inconsistent");
        C.plus[n] = (unit + chisum[n]) / 2;
        C.minus[n] = (unit - chisum[n]) / 2;
    }
    return C;
}

PrimeCensus prime_census(const MonicTable& T, const std::vector<std::int8_t>& chi, int X) {
    if (X > T.max_degree()) throw std::invalid_argument("prime_census: X exceeds the table depth");
    PrimeCensus C;
    C.q = T.field().q();
    C.plus.assign(X + 1, 0);
    C.minus.assign(X + 1, 0);
    C.zero.assign(X + 1, 0);
    for (std::uint32_t p : T.primes()) {
        int d = T.degree(p);
        if (d > X) continue;
        if (chi[p] > 0) ++C.plus[d];
        else if (chi[p] < 0) ++C.minus[d];
        else ++C.zero[d];
    }
    return C;
}

double alpha_local(double k, int d, int X, int j) {
    if (j == 0) return 1.0;
    if (2 * d <= X) {
        // coefficient of t^j in (1 - t)^{-k}
        double c = 1.0;
        for (int i = 0; i < j; ++i) c *= (k + i) / (i + 1);
        return c;
    }
    if (d <= X) {
        if (j == 1) return k;
        if (j == 2) return 0.5 * k * k;
    }
    return 0.0;
}

std::vector<double> alpha_k_coeffs(const MonicTable& T, double k, int X, int max_deg) {
    if (max_deg > T.max_degree()) throw std::invalid_argument("alpha_k_coeffs: max_deg exceeds the table depth");
    const std::uint32_t n = T.offset(max_deg + 1);
    std::vector<double> a(n, 0.0);
    a[0] = 1.0;
    for (std::uint32_t i = 1; i < n; ++i) {
        std::uint32_t p = T.prime_factor(i);
        a[i] = alpha_local(k, T.degree(p), X, T.exponent(i)) * a[T.rest(i)];
    }
    return a;
}

double partial_euler_star(const PrimeCensus& C, double k, int X, double s) {
    if (X >= static_cast<int>(C.plus.size())) throw std::invalid_argument("partial_euler_star: census too short");
    double e = 0;
    for (int d = 1; d <= X; ++d) {
        double t = std::pow(static_cast<double>(C.q), -s * d);
        double np = static_cast<double>(C.plus[d]), nm = static_cast<double>(C.minus[d]);
        if (2 * d <= X) {
            e += -k * (np * std::log1p(-t) + nm * std::log1p(t));
        } else {
            double h = 0.5 * k * k * t * t;
            e += np * std::log1p(k * t + h) + nm * std::log1p(-k * t + h);
        }
    }
    return std::exp(e);
}

DecompositionReport decompose_check(const LContext& ctx, const BumpKernel& K, const Poly& D, int k_max) {
    if (K.q() != ctx.field().q()) throw std::invalid_argument("decompose_check: kernel built for another q");
    DecompositionReport r;
    r.D = D;
    r.X = K.X();
    r.k_max = k_max;
    std::vector<std::int8_t> chi;
    ctx.characters(D, chi);
    LPoly L = ctx.lpoly(D, chi);
    ZeroSet zs = zeros(L);
    std::vector<std::int64_t> b = K.X() <= ctx.table().max_degree() ? prime_sums_direct(ctx.table(), chi, K.X())
                                                                     : prime_sums_from_coeffs(L, K.X());
    r.L_value = L.central_value();
    r.P_value = euler_part(b, L.q, K.X(), 0.5);
    r.central_zero = zs.central_zero;
    r.Z_value = hadamard_part(K, zs, k_max);
    r.residual = std::fabs(r.L_value - r.P_value * r.Z_value) / std::max(std::fabs(r.L_value), 1e-30);
    return r;
}

ExplicitFormulaCheck verify_explicit_formula(const LPoly& L, const ZeroSet& zs, const std::vector<std::int64_t>& b,
                                             const BumpKernel& K, std::complex<double> s, int k_max) {
    const double logq = std::log(static_cast<double>(L.q));
    const int X = K.X();
    for (const auto& root : zs.roots) {
        double theta = -std::arg(root);
        double m = std::round((s.imag() * logq - theta) / kTwoPi);
        std::complex<double> rho(0.5, (theta + kTwoPi * m) / logq);
        if (std::abs(s - rho) < 1e-3) throw std::domain_error("verify_explicit_formula: s is too close to a zero");
    }
    ExplicitFormulaCheck r;
    r.lhs = log_derivative(L, s, &zs);
    const int top = std::min<int>(X + 1, static_cast<int>(b.size()) - 1);
    if (top < X) throw std::invalid_argument("verify_explicit_formula: need prime sums up to degree X");
    for (int n = 1; n <= top; ++n) {
        double weight = K.v(std::pow(static_cast<double>(L.q), static_cast<double>(n) / X));
        r.prime_side += logq * static_cast<double>(b[n]) * weight * std::exp(-s * (n * logq));
    }
    for (const auto& root : zs.roots) {
        const double theta = -std::arg(root);
        for (int m = -k_max; m <= k_max; ++m) {
            std::complex<double> rho(0.5, (theta + kTwoPi * m) / logq);
            std::complex<double> d = s - rho;
            r.zero_side += K.mellin(1.0 - d * static_cast<double>(X)) / d;
        }
    }
    r.residual = std::abs(r.lhs - (r.prime_side - r.zero_side));
    return r;
}

}  // namespace ffl
