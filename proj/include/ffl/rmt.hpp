#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "ffl/eulerhadamard.hpp"
#include "ffl/random.hpp"

namespace ffl {

struct EigenangleSample {
    int N = 0;
    std::vector<double> angles;  // sorted, in [0, pi]
    std::uint64_t stream = 0;    // per-sample generator seed
};

// Haar unitary symplectic matrix (2N x 2N, preserving J = [[0, I], [-I, 0]]): columns u_j
// are Gram-Schmidt images of complex Gaussian vectors against all earlier u_i and their partners,
// and the partner column of u_j is -J conj(u_j).
Eigen::MatrixXcd haar_usp_matrix(int N, SplitMix64& rng);
// Eigenangles of the matrix above; sample `index` of the stream `seed`.
EigenangleSample haar_usp_sample(int N, std::uint64_t seed, std::uint64_t index);
// Accept-reject from the Weyl density prod_{i<j} (cos a_i - cos a_j)^2 prod sin^2 a_i; N <= 2.
EigenangleSample weyl_sample(int N, std::uint64_t seed, std::uint64_t index);
// Unnormalized Weyl density.
double weyl_density(const std::vector<double>& angles);

enum class PhiForm {
    Ci,        // exp(2k sum_j int u Ci(|theta + 2 pi j| X log_q x))
    Factored,  // |2 sin(theta/2)|^{2k} times the exponential with the j = 0 logarithm removed
    Auto,      // Factored below kPhiSwitch, Ci above
};
constexpr double kPhiSwitch = 1e-3;

// phi(theta) with the kernel of the Euler-Hadamard module; theta in [0, pi] (theta = 0 only
// through the factored form).
double phi_theta(const BumpKernel& K, double theta, double k, int j_max = kDefaultImages,
                 PhiForm form = PhiForm::Auto);
// Closed form of the same function: |2 sin(theta/2)|^{2k} exp(2k sum_{n<=X} cos(n theta)/n).
double phi_closed(double theta, double k, int X);

// Chebyshev fit (GSL) of the reduced exponent, which is smooth on [0, pi]; phi is rebuilt as
// |2 sin(theta/2)|^{2k} exp(2k r(theta)). Used for Monte Carlo, where the direct form is too slow.
class PhiTable {
public:
    // order 0 picks 8X + 48 coefficients.
    explicit PhiTable(const BumpKernel& K, int j_max = kDefaultImages, int order = 0);
    PhiTable(const PhiTable&) = delete;
    PhiTable& operator=(const PhiTable&) = delete;
    ~PhiTable();

    int X() const { return X_; }
    double reduced(double theta) const;
    double operator()(double theta, double k) const;
    double log_phi(double theta, double k) const;  // -inf at theta = 0 for k > 0

private:
    struct Series;
    int X_;
    std::unique_ptr<Series> s_;
};

enum class Sampler { Haar, Weyl };

struct McResult {
    int N = 0;
    double k = 0;
    int X = 0;
    std::uint64_t n = 0;
    double estimate = 0;
    double stderr_ = 0;
    double prediction = 0;  // G-ratio (2N/(e^gamma X))^{k(k+1)/2}; NaN unless k in 0..3
    double ratio = 0;       // estimate / prediction
};

// Mean and standard error of prod_n phi(theta_n) over n_samples Haar draws. Sample i uses
// the stream counter_draw(seed, i), so the result does not depend on the worker count.
McResult mc_average(int N, double k, const PhiTable& phi, std::uint64_t n_samples, std::uint64_t seed,
                    int workers = 1, Sampler sampler = Sampler::Haar);
// Several k at once from the same draws.
std::vector<McResult> mc_average(int N, const std::vector<double>& ks, const PhiTable& phi,
                                 std::uint64_t n_samples, std::uint64_t seed, int workers = 1,
                                 Sampler sampler = Sampler::Haar);

}  // namespace ffl
