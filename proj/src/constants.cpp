#include "ffl/constants.hpp"

#include <boost/math/special_functions/expm1.hpp>
#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ffl {

namespace {

using hp = boost::multiprecision::cpp_bin_float_50;

hp lg1p(const hp& x) { return boost::math::log1p(x); }
hp em1(const hp& x) { return boost::math::expm1(x); }

hp hp_pow(const hp& b, int e) { return boost::multiprecision::pow(b, e); }

hp prime_count_hp(int q, int n) {
    hp s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) {
            int m = mobius_int(d);
            if (m) s += m * hp_pow(hp(q), n / d);
        }
    return s / n;
}

// tau_k(P^m) for real k: (k)(k+1)...(k+m-1)/m!
hp tau_power(const hp& k, int m) {
    hp t = 1;
    for (int i = 0; i < m; ++i) t *= (k + i) / (i + 1);
    return t;
}

// sum_{j >= j0} tau_k(P^{2j+off}) y^j
hp tau_series(const hp& k, int off, const hp& y, int j0) {
    hp sum = 0, yj = hp_pow(y, j0);
    static const hp tiny("1e-56");
    for (int j = j0; j < 4000; ++j) {
        hp t = tau_power(k, 2 * j + off) * yj;
        sum += t;
        if (j > j0 + 2 && abs(t) <= tiny * abs(sum)) break;
        yj *= y;
    }
    return sum;
}

struct HpProduct {
    hp log;
    double tail_log = 0, tail_constant = 0, tail_ratio = 0;
};

// sum_{n=1}^{d_max} pi_q(n) lf(n, q^{-n}), with the tail estimated from the decay of the terms
template <class LogFactor>
HpProduct product_over_primes(int q, int d_max, LogFactor lf) {
    if (d_max < 4) throw std::invalid_argument("d_max must be at least 4");
    HpProduct r;
    std::vector<double> mag(d_max + 1, 0.0);
    hp x = 1;
    for (int n = 1; n <= d_max; ++n) {
        x /= q;
        hp t = prime_count_hp(q, n) * lf(n, x);
        r.log += t;
        mag[n] = static_cast<double>(abs(t));
    }
    double rho = 0;
    for (int n = d_max - 2; n <= d_max; ++n)
        if (mag[n - 1] > 0) rho = std::max(rho, mag[n] / mag[n - 1]);
    // ratios creep up towards their limit, so leave room above the last measurement
    rho = std::min(1.0, rho * (1.0 + 2.0 / d_max));
    r.tail_ratio = rho;
    if (mag[d_max] == 0) {
        r.tail_log = 0;
    } else if (rho >= 1) {
        r.tail_log = INFINITY;
    } else {
        r.tail_log = mag[d_max] * rho / (1 - rho);
        r.tail_constant = mag[d_max] / std::pow(rho, d_max);
    }
    return r;
}

std::string to_digits(const hp& v) {
    std::ostringstream os;
    os.precision(40);
    os << v;
    return os.str();
}

EulerProductValue finish(const HpProduct& p, int d_max) {
    EulerProductValue v;
    hp val = exp(p.log);
    v.value = static_cast<double>(val);
    v.digits = to_digits(val);
    v.d_max = d_max;
    // plus the rounding of the double result
    v.tail_bound = std::abs(v.value) * (std::expm1(p.tail_log) + 4 * std::numeric_limits<double>::epsilon());
    v.tail_constant = p.tail_constant;
    v.tail_ratio = p.tail_ratio;
    return v;
}

int triangular(int k) { return k * (k + 1) / 2; }

// log A_{k,P}(u) with y = u^{2d}/|P|
hp log_A_local(const hp& k, const hp& x, const hp& y) {
    hp K = k * (k + 1) / 2;
    return K * lg1p(-y) + lg1p(tau_series(k, 0, y, 1) / (1 + x));
}

// B_{k,P}(u) or C_{k,P}(u)
hp BC_local(const hp& k, bool odd, const hp& x, const hp& y) {
    hp den = 1 + x + tau_series(k, 0, y, 1);
    return tau_series(k, odd ? 1 : 0, y, 0) / den;
}

void check_k(int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("k must be 1, 2 or 3");
}

hp eta_k_hp(int q, int k, const TwistShape& l, const hp& u, int d_max, HpProduct* out = nullptr) {
    hp kk = k;
    hp u2 = u * u;
    auto p = product_over_primes(q, d_max, [&](int n, const hp& x) { return log_A_local(kk, x, hp_pow(u2, n) * x); });
    hp r = p.log;
    for (auto [d, e] : l.primes) {
        hp x = 1 / hp_pow(hp(q), d);
        r += log(BC_local(kk, e % 2 == 1, x, hp_pow(u2, d) * x));
    }
    if (out) *out = p;
    return exp(r);
}

hp eta1_of_u_hp(int q, const TwistShape& l, const hp& u, int d_max, HpProduct* out = nullptr) {
    hp u2 = u * u;
    auto p = product_over_primes(q, d_max, [&](int n, const hp& x) { return lg1p(-hp_pow(u2, n) * x * x / (1 + x)); });
    hp r = p.log;
    for (auto [d, e] : l.primes) {
        (void)e;
        hp x = 1 / hp_pow(hp(q), d);
        r -= lg1p(x - hp_pow(u2, d) * x * x);
    }
    if (out) *out = p;
    return exp(r);
}

// 1 + 2x - (b^{-1} + b) x^2 + x^3, the common denominator of the w = 1 factors
hp e2(const hp& x, const hp& b) { return 1 + 2 * x - (1 / b + b) * x * x + x * x * x; }

// delta in D_{2,P}(u,w) = (1 - a x)^2 (1 - c x)^{-1} (1 + delta), a = w^d, b = u^d, c = (u w^2)^d
hp delta2(const hp& x, const hp& a, const hp& b, const hp& c) {
    hp x2 = x * x;
    return a * (2 - 2 * b + b * a) * x - (1 / b + 3 * c) * x2 + a * a * (2 + b * b * a * a) * x2 * x -
           b * a * a * a * a * x2 * x2;
}

hp delta3(const hp& x, const hp& a, const hp& b) {
    hp x2 = x * x, ba = b * a;
    return 3 * a * (1 - b + ba) * x - (1 / b + ba * a * (6 - a + ba)) * x2 + 3 * a * a * (1 + ba * ba) * x2 * x -
           ba * a * a * a * (3 + ba * ba) * x2 * x2 + (ba * a * a) * (ba * a * a) * x2 * x2 * x;
}

hp kappa2_hp(int q, const TwistShape& l, const hp& u, const hp& w, int d_max) {
    auto p = product_over_primes(q, d_max, [&](int n, const hp& x) {
        hp a = hp_pow(w, n), b = hp_pow(u, n), c = b * a * a;
        return 2 * lg1p(-a * x) - lg1p(-c * x) + lg1p(delta2(x, a, b, c));
    });
    hp r = p.log;
    for (auto [d, e] : l.primes) {
        hp x = 1 / hp_pow(hp(q), d);
        hp a = hp_pow(w, d), b = hp_pow(u, d), c = b * a * a;
        hp den = 1 + delta2(x, a, b, c);
        hp num = e % 2 == 1 ? 1 - b + 2 * b * a - b * a * (2 - a + b * a) * x
                            : 1 - (1 - 2 * a + 2 * b * a - c) * x - c * x * x;
        r += log(num / den);
    }
    return exp(r);
}

hp kappa2_w1_hp(int q, const TwistShape& l, const hp& u, int d_max) {
    auto p = product_over_primes(q, d_max, [&](int n, const hp& x) {
        hp b = hp_pow(u, n);
        return 2 * lg1p(-x) + lg1p(2 * x - (1 / b + b) * x * x + x * x * x);
    });
    hp r = p.log;
    for (auto [d, e] : l.primes) {
        hp x = 1 / hp_pow(hp(q), d);
        hp b = hp_pow(u, d);
        r += log((e % 2 == 1 ? 1 + b : 1 + x) / e2(x, b));
    }
    return exp(r);
}

hp kappa3_hp(int q, const TwistShape& l, const hp& u, const hp& w, int d_max) {
    auto p = product_over_primes(q, d_max, [&](int n, const hp& x) {
        hp a = hp_pow(w, n), b = hp_pow(u, n);
        return 3 * lg1p(-a * x) - 3 * lg1p(-b * a * x) + 3 * lg1p(-b * a * a * x) + lg1p(delta3(x, a, b));
    });
    hp r = p.log;
    for (auto [d, e] : l.primes) {
        hp x = 1 / hp_pow(hp(q), d);
        hp a = hp_pow(w, d), b = hp_pow(u, d), ba = b * a;
        hp den = 1 + delta3(x, a, b);
        hp num = e % 2 == 1 ? 1 - b + 3 * ba - ba * (3 - 3 * a + 3 * ba - ba * a) * x - ba * b * a * a * x * x
                            : 1 - (1 - 3 * a + 3 * ba - 3 * ba * a) * x - ba * a * (3 - a + ba) * x * x;
        r += log(num / den);
    }
    return exp(r);
}

hp A_k_hp(int q, int k) {
    hp kk = k;
    return exp(product_over_primes(q, kDefaultDepth, [&](int, const hp& x) { return log_A_local(kk, x, x); }).log);
}

double norm_of(int q, int d) { return std::pow(static_cast<double>(q), d); }

}  // namespace

int TwistShape::degree() const {
    int s = 0;
    for (auto [d, e] : primes) s += d * e;
    return s;
}

int TwistShape::degree_l1() const {
    int s = 0;
    for (auto [d, e] : primes)
        if (e % 2) s += d;
    return s;
}

TwistShape twist_shape(const Field& F, const Poly& ell) {
    if (!is_monic(ell)) throw std::invalid_argument("twist must be monic");
    TwistShape t;
    for (auto& pp : factorize(F, ell)) t.primes.emplace_back(deg(pp.prime), pp.mult);
    return t;
}

double zeta_q(int q, double s) { return 1.0 / (1.0 - std::pow(static_cast<double>(q), 1.0 - s)); }

double prime_count(int q, int n) { return static_cast<double>(prime_count_hp(q, n)); }

EulerProductValue A_k(int q, double k, AkForm form, int d_max) {
    hp kk = k;
    hp K = kk * (kk + 1) / 2;
    HpProduct p;
    switch (form) {
        case AkForm::Divisor:
            p = product_over_primes(q, d_max, [&](int, const hp& x) { return log_A_local(kk, x, x); });
            break;
        case AkForm::Binomial:
            p = product_over_primes(q, d_max, [&](int, const hp& x) {
                hp s = sqrt(x);
                hp bracket = (em1(-kk * lg1p(-s)) + em1(-kk * lg1p(s))) / 2 + x;
                return K * lg1p(-x) - lg1p(x) + lg1p(bracket);
            });
            break;
        case AkForm::Simplified:
            if (k != 1) throw std::invalid_argument("the simplified factor exists for k = 1 only");
            p = product_over_primes(q, d_max, [&](int, const hp& x) { return lg1p(-x * x / (1 + x)); });
            break;
    }
    return finish(p, d_max);
}

double eta_k(int q, int k, const TwistShape& l, double u, int d_max) {
    check_k(k);
    if (std::abs(u) >= std::pow(static_cast<double>(q), 0.25))
        throw std::domain_error("eta_k: |u| must stay below q^{1/4}");
    return static_cast<double>(eta_k_hp(q, k, l, hp(u), d_max));
}

double eta_k_at_1(int q, int k, const TwistShape& l) {
    check_k(k);
    hp r = A_k_hp(q, k);
    for (auto [d, e] : l.primes) {
        hp x = 1 / hp_pow(hp(q), d), P = hp_pow(hp(q), d);
        bool in_l1 = e % 2 == 1;
        switch (k) {
            case 1:
                r /= 1 + x - x * x;
                break;
            case 2:
                r *= (1 + x) / (1 + 2 * x - 2 * x * x + x * x * x);
                if (in_l1) r *= 2 * P / (1 + P);  // tau(l1)|l1|/sigma(l1)
                break;
            case 3:
                r *= (1 + 3 * x) / (1 + 4 * x - 3 * x * x + 3 * x * x * x - x * x * x * x);
                if (in_l1) r *= (1 + 3 * P) / (3 + P);
                break;
        }
    }
    return static_cast<double>(r);
}

double eta1_of_u(int q, const TwistShape& l, double u, int d_max) {
    if (std::abs(u) >= std::sqrt(static_cast<double>(q)))
        throw std::domain_error("eta1_of_u: |u| must stay below q^{1/2}");
    return static_cast<double>(eta1_of_u_hp(q, l, hp(u), d_max));
}

double eta1_log_derivative(int q, const TwistShape& l, int d_max) {
    auto central = [&](const hp& h) {
        return (eta1_of_u_hp(q, l, 1 + h, d_max) - eta1_of_u_hp(q, l, 1 - h, d_max)) / (2 * h);
    };
    hp h("1e-4");
    hp d1 = central(h), d2 = central(h / 2);
    hp deriv = (4 * d2 - d1) / 3;
    return static_cast<double>(deriv / eta1_of_u_hp(q, l, hp(1), d_max));
}

double eta1_log_derivative_series(int q, const TwistShape& l, int d_max) {
    // d/du log(1 - u^{2d} x^2/(1+x)) at u = 1 is -2d x^2/(1 + x - x^2)
    auto p = product_over_primes(q, d_max, [&](int n, const hp& x) { return -2 * n * x * x / (1 + x - x * x); });
    hp r = p.log;
    for (auto [d, e] : l.primes) {
        (void)e;
        hp x = 1 / hp_pow(hp(q), d);
        r += 2 * d * x * x / (1 + x - x * x);
    }
    return static_cast<double>(r);
}

double kappa2(int q, const TwistShape& l, double u, double w, int d_max) {
    double au = std::abs(u), aw = std::abs(w);
    if (au <= 1.0 / q || au * aw >= 1 || au * aw * aw >= 1 || aw >= std::sqrt(static_cast<double>(q)))
        throw std::domain_error("kappa2: (u, w) outside the region of absolute convergence");
    return static_cast<double>(kappa2_hp(q, l, hp(u), hp(w), d_max));
}

double kappa2_at_w1(int q, const TwistShape& l, double u, int d_max) {
    double au = std::abs(u);
    if (au <= 1.0 / q || au >= q) throw std::domain_error("kappa2_at_w1: need 1/q < |u| < q");
    return static_cast<double>(kappa2_w1_hp(q, l, hp(u), d_max));
}

double kappa3(int q, const TwistShape& l, double u, double w, int d_max) {
    double au = std::abs(u), aw = std::abs(w), s = std::sqrt(static_cast<double>(q));
    if (au <= 1.0 / q || aw >= s || au * aw >= s || au * aw * aw >= s)
        throw std::domain_error("kappa3: (u, w) outside the region of absolute convergence");
    return static_cast<double>(kappa3_hp(q, l, hp(u), hp(w), d_max));
}

double kappa3_identity_residual(int q, const TwistShape& l) {
    hp k3 = kappa3_hp(q, l, hp(1), hp(1), kDefaultDepth);
    hp z2 = hp(q) / (q - 1);
    hp e3 = A_k_hp(q, 3);
    for (auto [d, e] : l.primes) {
        hp x = 1 / hp_pow(hp(q), d), P = hp_pow(hp(q), d);
        e3 *= (1 + 3 * x) / (1 + 4 * x - 3 * x * x + 3 * x * x * x - x * x * x * x);
        if (e % 2) e3 *= (1 + 3 * P) / (3 + P);
    }
    return static_cast<double>(abs(k3 * z2 - e3) / e3);
}

double mertens_product(int q, int X) {
    double s = 0;
    for (int d = 1; d <= X; ++d) s -= prime_count(q, d) * std::log1p(-1.0 / norm_of(q, d));
    return std::exp(s);
}

double barnes_g(int n) {
    if (n < 1) throw std::invalid_argument("barnes_g: n >= 1");
    double g = 1;
    for (int m = 2; m < n; ++m) g *= std::tgamma(static_cast<double>(m));  // G(m+1) = Gamma(m) G(m)
    return g;
}

double rmt_coefficient(int k) {
    if (k < 0) throw std::invalid_argument("rmt_coefficient: k >= 0");
    return barnes_g(k + 1) * std::sqrt(std::tgamma(k + 1.0)) / std::sqrt(barnes_g(2 * k + 1) * std::tgamma(2 * k + 1.0));
}

LocalFactors local_factors_series(int k, double norm) {
    check_k(k);
    hp kk = k, x = hp(1) / hp(norm);
    hp A = 1 + x + tau_series(kk, 0, x, 1);
    return {static_cast<double>(A), static_cast<double>(tau_series(kk, 1, x, 0)),
            static_cast<double>(tau_series(kk, 0, x, 0))};
}

LocalFactors local_factors_closed(int k, double norm) {
    check_k(k);
    double x = 1 / norm, m = 1 / (1 - x);
    switch (k) {
        case 1:
            return {m * (1 + x - x * x), m, m};
        case 2:
            return {m * m * (1 + 2 * x - 2 * x * x + x * x * x), 2 * m * m, m * m * (1 + x)};
        default:
            return {m * m * m * (1 + 4 * x - 3 * x * x + 3 * x * x * x - x * x * x * x), m * m * m * (3 + x),
                    m * m * m * (1 + 3 * x)};
    }
}

double conjectured_Ik(int q, int g, int k) {
    if (k == 0) return 1;
    return std::pow(2.0, -k / 2.0) * A_k(q, k).value * rmt_coefficient(k) * std::pow(2.0 * g, triangular(k));
}

double leading_Ik(int q, const TwistShape& l, int g, int k) {
    check_k(k);
    double d1 = l.degree_l1();
    double root = std::pow(static_cast<double>(q), d1 / 2);
    double eta = eta_k_at_1(q, k, l);
    switch (k) {
        case 1:
            return eta / root * (g - d1 + 1 - eta1_log_derivative(q, l));
        case 2:
            return eta / (24 * root) * (8.0 * g * g * g - 12.0 * g * g * d1 + d1 * d1 * d1);
        default: {
            double s = g + d1;
            return eta / (32.0 * 720.0 * root) *
                   (std::pow(3 * g - d1, 6) - 73 * std::pow(s, 6) + 396.0 * g * std::pow(s, 5) -
                    540.0 * g * g * std::pow(s, 4));
        }
    }
}

double euler_moment_prediction(int q, double k, int X) {
    return std::pow(2.0, -k / 2) * A_k(q, k).value * std::pow(std::exp(0.57721566490153286061) * X, k * (k + 1) / 2);
}

double euler_moment_local_model(int q, double k, int X) {
    hp total = 0;
    for (int d = 1; d <= X; ++d) {
        hp P = hp_pow(hp(q), d);
        hp sp = 0, sm = 0;  // log P_X contributions for chi(P) = +1, -1
        for (int j = 1; j * d <= X; ++j) {
            hp t = 1 / (j * pow(P, hp(j) / 2));
            sp += t;
            sm += (j % 2 ? -t : t);
        }
        hp dev = P / 2 * (em1(k * sp) + em1(k * sm)) / (P + 1);
        total += prime_count_hp(q, d) * lg1p(dev);
    }
    return static_cast<double>(exp(total));
}

double hadamard_moment_prediction(int k, int g, int X) {
    return rmt_coefficient(k) * std::pow(2.0 * g / (std::exp(0.57721566490153286061) * X), triangular(k));
}

double lpinv_finite_prediction(int q, int k, int g, int X) {
    check_k(k);
    int K = triangular(k);
    double ck = k == 3 ? 512.0 / 729.0 : 1.0;
    double pre = 2 * ck / std::tgamma(K + 1.0) * std::pow(k * g / 2.0, K);
    // (1-x)^k times the closed local factors, as polynomials in x
    using P = std::vector<double>;
    auto mul = [](const P& a, const P& b) {
        P c(a.size() + b.size() - 1, 0.0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    auto add = [](P a, const P& b, double s) {
        if (a.size() < b.size()) a.resize(b.size(), 0.0);
        for (size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
        return a;
    };
    const P A[] = {{1, 1, -1}, {1, 2, -2, 1}, {1, 4, -3, 3, -1}};
    const P AB[] = {{1}, {2}, {3, 1}};
    const P AC[] = {{1}, {1, 1}, {1, 3}};
    P lower{1};
    for (int i = 0; i < K - k; ++i) lower = mul(lower, P{1, -1});
    double s = 0;
    for (int d = 1; d <= X; ++d) {
        bool small = 2 * d <= X;
        double a1 = -k;
        double a2 = small ? k * (k - 1) / 2.0 : k * k / 2.0;
        double a3 = small ? -k * (k - 1) * (k - 2) / 6.0 : 0.0;
        P inner = add(add(add(A[k - 1], mul(AB[k - 1], P{0, a1}), 1), mul(AC[k - 1], P{0, a2}), 1),
                      mul(AB[k - 1], P{0, 0, a3}), 1);
        // local factor - 1 = ((1-x)^{K-k} inner - (1 + x)) / (1 + x); low orders cancel exactly
        P num = add(mul(lower, inner), P{1, 1}, -1);
        double x = 1 / norm_of(q, d), val = 0;
        for (size_t i = num.size(); i-- > 0;) val = val * x + num[i];
        s += prime_count(q, d) * std::log1p(val / (1 + x));
    }
    return pre * std::exp(s);
}

}  // namespace ffl
