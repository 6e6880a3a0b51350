#include "ffl/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

#include <gsl/gsl_chebyshev.h>

#include "ffl/constants.hpp"
#include "ffl/moments.hpp"
#include "ffl/parallel.hpp"

namespace ffl {

namespace {

using cd = std::complex<double>;

// -J conj(v) with J = [[0, I], [-I, 0]], so that v^T J w = 1
Eigen::VectorXcd j_conj(const Eigen::VectorXcd& v, int N) {
    Eigen::VectorXcd w(2 * N);
    for (int i = 0; i < N; ++i) {
        w(i) = -std::conj(v(N + i));
        w(N + i) = std::conj(v(i));
    }
    return w;
}

std::vector<double> angles_of(const Eigen::MatrixXcd& U) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(U, false);
    const auto& ev = es.eigenvalues();
    std::vector<double> a(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) a[i] = std::abs(std::arg(ev(i)));
    std::sort(a.begin(), a.end());
    // eigenvalues come in conjugate pairs; average each pair of |arg|
    std::vector<double> out(a.size() / 2);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = 0.5 * (a[2 * n] + a[2 * n + 1]);
    return out;
}

double log_two_sin(double theta) { return std::log(std::abs(2 * std::sin(theta / 2))); }

}  // namespace

Eigen::MatrixXcd haar_usp_matrix(int N, SplitMix64& rng) {
    if (N < 1) throw std::invalid_argument("haar_usp_matrix: N >= 1");
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd U(2 * N, 2 * N);
    for (int j = 0; j < N; ++j) {
        Eigen::VectorXcd v(2 * N);
        for (int i = 0; i < 2 * N; ++i) {
            double re = gauss(rng), im = gauss(rng);
            v(i) = cd(re, im);
        }
        // two passes of modified Gram-Schmidt keep the columns orthonormal to rounding
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                v -= U.col(i) * U.col(i).dot(v);
                v -= U.col(N + i) * U.col(N + i).dot(v);
            }
        }
        v /= v.norm();
        U.col(j) = v;
        U.col(N + j) = j_conj(v, N);
    }
    return U;
}

EigenangleSample haar_usp_sample(int N, std::uint64_t seed, std::uint64_t index) {
    EigenangleSample s;
    s.N = N;
    s.stream = counter_draw(seed, index);
    SplitMix64 rng(s.stream);
    s.angles = angles_of(haar_usp_matrix(N, rng));
    return s;
}

double weyl_density(const std::vector<double>& a) {
    double f = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double s = std::sin(a[i]);
        f *= s * s;
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            double d = std::cos(a[i]) - std::cos(a[j]);
            f *= d * d;
        }
    }
    return f;
}

EigenangleSample weyl_sample(int N, std::uint64_t seed, std::uint64_t index) {
    if (N < 1 || N > 2) throw std::invalid_argument("weyl_sample: N in 1..2");
    const double bound = N == 1 ? 1.0 : 4.0;
    EigenangleSample s;
    s.N = N;
    s.stream = counter_draw(seed, index);
    SplitMix64 rng(s.stream);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> a(N);
    for (;;) {
        for (auto& x : a) x = M_PI * unif(rng);
        if (unif(rng) * bound < weyl_density(a)) break;
    }
    std::sort(a.begin(), a.end());
    s.angles = a;
    return s;
}

double phi_theta(const BumpKernel& K, double theta, double k, int j_max, PhiForm form) {
    if (!(theta >= 0 && theta <= M_PI)) throw std::invalid_argument("phi_theta: theta in [0, pi]");
    if (form == PhiForm::Auto) form = theta < kPhiSwitch ? PhiForm::Factored : PhiForm::Ci;
    if (form == PhiForm::Ci) {
        if (theta == 0) throw std::domain_error("phi_theta: the Ci form is singular at theta = 0");
        return std::exp(2 * k * periodized_ci(K, theta, j_max));
    }
    if (theta == 0) return k == 0 ? 1.0 : k > 0 ? 0.0 : std::numeric_limits<double>::infinity();
    double r = periodized_ci_reduced(K, theta, j_max);
    return std::pow(std::abs(2 * std::sin(theta / 2)), 2 * k) * std::exp(2 * k * r);
}

double phi_closed(double theta, double k, int X) {
    double s = 0;
    for (int n = 1; n <= X; ++n) s += std::cos(n * theta) / n;
    return std::pow(std::abs(2 * std::sin(theta / 2)), 2 * k) * std::exp(2 * k * s);
}

struct PhiTable::Series {
    gsl_cheb_series* cs = nullptr;
    ~Series() {
        if (cs) gsl_cheb_free(cs);
    }
};

PhiTable::PhiTable(const BumpKernel& K, int j_max, int order) : X_(K.X()), s_(std::make_unique<Series>()) {
    if (order <= 0) order = 8 * K.X() + 48;
    s_->cs = gsl_cheb_alloc(order);
    struct Ctx {
        const BumpKernel* K;
        int j_max;
    } ctx{&K, j_max};
    gsl_function f;
    f.function = [](double t, void* p) {
        auto* c = static_cast<Ctx*>(p);
        return periodized_ci_reduced(*c->K, t, c->j_max);
    };
    f.params = &ctx;
    gsl_cheb_init(s_->cs, &f, 0.0, M_PI);
}

PhiTable::~PhiTable() = default;

double PhiTable::reduced(double theta) const { return gsl_cheb_eval(s_->cs, theta); }

double PhiTable::log_phi(double theta, double k) const {
    if (k == 0) return 0;
    return 2 * k * (log_two_sin(theta) + reduced(theta));
}

double PhiTable::operator()(double theta, double k) const {
    if (k == 0) return 1;
    return std::pow(std::abs(2 * std::sin(theta / 2)), 2 * k) * std::exp(2 * k * reduced(theta));
}

std::vector<McResult> mc_average(int N, const std::vector<double>& ks, const PhiTable& phi, std::uint64_t n_samples,
                                 std::uint64_t seed, int workers, Sampler sampler) {
    if (N < 1) throw std::invalid_argument("mc_average: N >= 1");
    if (n_samples < 100) throw std::invalid_argument("mc_average: at least 100 samples");
    // per sample: sum_n log|2 sin| and sum_n reduced, so every k reuses the same draws
    std::vector<double> lsin(n_samples), red(n_samples);
    parallel_blocks(n_samples, workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            auto s = sampler == Sampler::Haar ? haar_usp_sample(N, seed, i) : weyl_sample(N, seed, i);
            double a = 0, r = 0;
            for (double t : s.angles) {
                a += log_two_sin(t);
                r += phi.reduced(t);
            }
            lsin[i] = a;
            red[i] = r;
        }
    });
    std::vector<McResult> out;
    std::vector<double> v(n_samples);
    for (double k : ks) {
        McResult m;
        m.N = N;
        m.k = k;
        m.X = phi.X();
        m.n = n_samples;
        for (std::size_t i = 0; i < n_samples; ++i) v[i] = k == 0 ? 1.0 : std::exp(2 * k * (lsin[i] + red[i]));
        m.estimate = pairwise_mean(v);
        std::vector<double> d(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) d[i] = (v[i] - m.estimate) * (v[i] - m.estimate);
        m.stderr_ = std::sqrt(pairwise_mean(d) * n_samples / (n_samples - 1) / n_samples);
        bool integral = k == std::floor(k) && k >= 0 && k <= 3;
        m.prediction = integral ? hadamard_moment_prediction(static_cast<int>(k), N, phi.X())
                                : std::numeric_limits<double>::quiet_NaN();
        m.ratio = m.estimate / m.prediction;
        out.push_back(m);
    }
    return out;
}

McResult mc_average(int N, double k, const PhiTable& phi, std::uint64_t n_samples, std::uint64_t seed, int workers,
                    Sampler sampler) {
    return mc_average(N, std::vector<double>{k}, phi, n_samples, seed, workers, sampler).front();
}

}  // namespace ffl
