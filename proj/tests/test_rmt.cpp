#include "test_main.hpp"

#include <algorithm>
#include <cmath>

#include "ffl/constants.hpp"
#include "ffl/rmt.hpp"
#include "ffl/quadrature.hpp"

using namespace ffl;

namespace {

const PhiTable& table(int X) {
    static const BumpKernel K2(5, 2), K4(5, 4);
    static const PhiTable T2(K2), T4(K4);
    return X == 2 ? T2 : T4;
}

double ks_distance(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double d = 0, n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double F = quad::usp2_cdf(v[i]);
        d = std::max({d, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
    }
    return d;
}

}  // namespace

TEST_CASE("sampled matrices are unitary and symplectic") {
    SplitMix64 rng(5);
    for (int N : {1, 2, 3, 5}) {
        auto U = haar_usp_matrix(N, rng);
        Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
        J.topRightCorner(N, N).setIdentity();
        J.bottomLeftCorner(N, N) = -Eigen::MatrixXcd::Identity(N, N);
        CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(2 * N, 2 * N)).norm() < 1e-12);
        CHECK((U.transpose() * J * U - J).norm() < 1e-12);
    }
    auto s = haar_usp_sample(4, 1, 2);
    CHECK(s.angles.size() == 4);
    CHECK(std::is_sorted(s.angles.begin(), s.angles.end()));
    CHECK(s.angles.front() >= 0);
    CHECK(s.angles.back() <= M_PI);
    CHECK(haar_usp_sample(4, 1, 2).angles == s.angles);
}

TEST_CASE("N = 1 eigenangles follow (2/pi) sin^2") {
    const int n = 100000;
    std::vector<double> h(n), w(n);
    double c = 0, c2 = 0;
    for (int i = 0; i < n; ++i) {
        h[i] = haar_usp_sample(1, 42, i).angles[0];
        w[i] = weyl_sample(1, 42, i).angles[0];
        c += std::cos(h[i]);
        c2 += std::cos(h[i]) * std::cos(h[i]);
    }
    CHECK(ks_distance(h) < 0.01);
    CHECK(ks_distance(w) < 0.01);
    double mean = c / n, se = std::sqrt((c2 / n - mean * mean) / n);
    CHECK(quad::usp2_mean([](double t) { return std::cos(t); }) == doctest::Approx(0).scale(1));
    CHECK(std::abs(mean) < 3 * se);
}

TEST_CASE("N = 2 angles match the Weyl density oracle") {
    const int n = 40000;
    double exact_c = quad::usp4_mean([](double a, double b) { return std::cos(a) + std::cos(b); });
    double exact_c2 = quad::usp4_mean([](double a, double b) { return std::cos(2 * a) + std::cos(2 * b); });
    CHECK(std::abs(exact_c) < 1e-9);
    CHECK(exact_c2 == doctest::Approx(-0.5).epsilon(1e-9));  // E[tr U^2] = -1
    for (auto sampler : {0, 1}) {
        double s = 0, ss = 0, t = 0, tt = 0;
        for (int i = 0; i < n; ++i) {
            auto a = sampler == 0 ? haar_usp_sample(2, 9, i).angles : weyl_sample(2, 9, i).angles;
            CHECK_MESSAGE(a[0] != a[1], "duplicate eigenangle");
            double x = std::cos(a[0]) + std::cos(a[1]), y = std::cos(2 * a[0]) + std::cos(2 * a[1]);
            s += x, ss += x * x, t += y, tt += y * y;
        }
        double m = s / n, se = std::sqrt((ss / n - m * m) / n);
        double m2 = t / n, se2 = std::sqrt((tt / n - m2 * m2) / n);
        CHECK(std::abs(m - exact_c) < 3 * se);
        CHECK(std::abs(m2 - exact_c2) < 3 * se2);
    }
}

TEST_CASE("phi: kernel forms, closed form and the table") {
    BumpKernel K(5, 2);
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
        double ci = phi_theta(K, t, 1, kDefaultImages, PhiForm::Ci);
        double fa = phi_theta(K, t, 1, kDefaultImages, PhiForm::Factored);
        CHECK(std::abs(ci - fa) < 1e-8 * fa);
        CHECK(std::abs(ci - phi_closed(t, 1, 2)) < 1e-8 * ci);
        CHECK(std::abs(phi_theta(K, t, 1, 2 * kDefaultImages) - ci) < 1e-8 * ci);
        CHECK(ci > 0);
    }
    // overlap at the switch
    for (double t : {0.5 * kPhiSwitch, kPhiSwitch, 2 * kPhiSwitch}) {
        double ci = phi_theta(K, t, 2, kDefaultImages, PhiForm::Ci);
        double fa = phi_theta(K, t, 2, kDefaultImages, PhiForm::Factored);
        CHECK(std::abs(ci - fa) < 1e-8 * fa);
    }
    CHECK(phi_theta(K, 0.0, 1) == 0.0);
    CHECK_THROWS_AS(phi_theta(K, 0.0, 1, kDefaultImages, PhiForm::Ci), std::domain_error);
    for (int X : {2, 4}) {
        BumpKernel KX(5, X);
        const auto& T = table(X);
        for (int i = 0; i <= 20; ++i) {
            double t = i == 0 ? 1e-9 : M_PI * i / 20;
            double direct = periodized_ci_reduced(KX, t, kDefaultImages);
            CHECK(std::abs(T.reduced(t) - direct) < 1e-11);
            CHECK(T(t, 1.5) == doctest::Approx(phi_closed(t, 1.5, X)).epsilon(1e-9));
        }
    }
}

TEST_CASE("Monte Carlo averages") {
    const auto& T2 = table(2);
    auto k0 = mc_average(3, 0.0, T2, 500, 1);
    CHECK(k0.estimate == 1.0);
    CHECK(k0.stderr_ == 0.0);
    auto a = mc_average(2, {1.0, 2.0}, T2, 2000, 8, 1);
    auto b = mc_average(2, {1.0, 2.0}, T2, 2000, 8, 3);
    CHECK(a[0].estimate == b[0].estimate);
    CHECK(a[1].stderr_ == b[1].stderr_);
    CHECK(a[0].prediction == doctest::Approx(hadamard_moment_prediction(1, 2, 2)));
    CHECK_THROWS_AS(mc_average(1, 1.0, T2, 10, 1), std::invalid_argument);
    // N = 1 against quadrature of the closed form
    for (int X : {2, 4}) {
        auto r = mc_average(1, {1.0, 2.0}, table(X), 100000, 2024);
        for (auto& m : r) {
            double exact = quad::usp2_mean([&](double t) { return phi_closed(t, m.k, X); });
            CHECK(std::abs(m.estimate - exact) < 3 * m.stderr_);
        }
    }
    // N = 2 against the two-dimensional oracle, for both samplers
    double exact2 = quad::usp4_mean([](double x, double y) { return phi_closed(x, 1, 2) * phi_closed(y, 1, 2); });
    for (auto s : {Sampler::Haar, Sampler::Weyl}) {
        auto m = mc_average(2, 1.0, T2, 40000, 77, 1, s);
        CHECK(std::abs(m.estimate - exact2) < 3 * m.stderr_);
    }
}
