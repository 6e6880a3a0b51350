#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ffl/poly.hpp"

namespace ffl {

// Products over all primes are summed degree by degree in 50-digit floats:
// log prod = sum_n pi_q(n) log f(n), with every log taken as log1p of a small term.
constexpr int kDefaultDepth = 60;

struct EulerProductValue {
    double value = 0;
    std::string digits;       // value to 40 significant digits
    int d_max = 0;
    double tail_bound = 0;    // bound on |value - limit|, from the geometric decay of the degree terms
    double tail_constant = 0; // c with |log term at degree n| ~ c rho^n
    double tail_ratio = 0;    // rho, measured on the last degrees
};

// Degrees and exponents of the prime factors of a twist l = l1 l2^2.
struct TwistShape {
    std::vector<std::pair<int, int>> primes;  // (degree, exponent)
    int degree() const;
    int degree_l1() const;                    // degree of the square-free part
};
TwistShape twist_shape(const Field& F, const Poly& ell);

double zeta_q(int q, double s);  // 1/(1 - q^{1-s})
double prime_count(int q, int n);  // pi_q(n) as a real, valid beyond 64 bits

enum class AkForm {
    Divisor,     // (1-1/|P|)^{k(k+1)/2} (1 + (1+1/|P|)^{-1} sum_j tau_k(P^{2j})/|P|^j)
    Binomial,    // (1-1/|P|)^{k(k+1)/2} (1+1/|P|)^{-1} (((1-|P|^{-1/2})^{-k} + (1+|P|^{-1/2})^{-k})/2 + 1/|P|)
    Simplified,  // k = 1 only: 1 - 1/(|P|(|P|+1))
};
// Real k is allowed in both general forms (tau_k by the generalized binomial).
EulerProductValue A_k(int q, double k, AkForm form = AkForm::Divisor, int d_max = kDefaultDepth);

// eta_k(l;u) from the local series A_{k,P}, B_{k,P}, C_{k,P}; k in 1..3, |u| < q^{1/4}.
double eta_k(int q, int k, const TwistShape& l, double u, int d_max = kDefaultDepth);
// The closed forms of eta_k(l;+-1) in terms of A_k.
double eta_k_at_1(int q, int k, const TwistShape& l);
// prod_P (1 - u^{2d}/(|P|(1+|P|))) prod_{P|l} (1 + 1/|P| - u^{2d}/|P|^2)^{-1}; |u| < q^{1/2}
double eta1_of_u(int q, const TwistShape& l, double u, int d_max = kDefaultDepth);
// d/du log eta_1(l;u) at u = 1: Richardson-extrapolated central differences (h = 1e-4)
double eta1_log_derivative(int q, const TwistShape& l, int d_max = kDefaultDepth);
// The same by differentiating each local factor.
double eta1_log_derivative_series(int q, const TwistShape& l, int d_max = kDefaultDepth);

// kappa_2(l;u,w) from the general local factors D, H, J; needs |u| > 1/q, |uw| < 1, |uw^2| < 1.
double kappa2(int q, const TwistShape& l, double u, double w, int d_max = kDefaultDepth);
// kappa_2(l;u,1) from the simplified w = 1 factors; needs 1/q < |u| < q.
double kappa2_at_w1(int q, const TwistShape& l, double u, int d_max = kDefaultDepth);
// kappa_3(l;u,w) from its general local factors; needs |u| > 1/q, |w|, |uw|, |uw^2| < q^{1/2}.
double kappa3(int q, const TwistShape& l, double u, double w, int d_max = kDefaultDepth);
// |kappa_3(l;1,1) zeta_q(2) - eta_3(l;1)| / eta_3(l;1)
double kappa3_identity_residual(int q, const TwistShape& l);

// prod_{d(P) <= X} (1 - 1/|P|)^{-1}
double mertens_product(int q, int X);

double barnes_g(int n);  // G(n) for integer n >= 1
// G(k+1) sqrt(Gamma(k+1)) / sqrt(G(2k+1) Gamma(2k+1))
double rmt_coefficient(int k);

// Local factors at a prime of norm |P|, k in 1..3.
struct LocalFactors {
    double A = 0;   // 1 + 1/|P| + sum_{j>=1} tau_k(P^{2j})/|P|^j
    double AB = 0;  // A times B_k(P)
    double AC = 0;  // A times C_k(P)
};
LocalFactors local_factors_series(int k, double norm);
LocalFactors local_factors_closed(int k, double norm);

// 2^{-k/2} A_k G-ratio (2g)^{k(k+1)/2}
double conjectured_Ik(int q, int g, int k);
// Leading terms of the twisted moments I_k(l;g), k = 1, 2, 3.
double leading_Ik(int q, const TwistShape& l, int g, int k);
// 2^{-k/2} A_k (e^gamma X)^{k(k+1)/2}
double euler_moment_prediction(int q, double k, int X);
// <P_X^k> in the limit g -> inf at fixed X, where chi_D(P) for d(P) <= X become independent:
// 0 with probability 1/(|P|+1), +-1 each with probability |P|/(2(|P|+1)).
double euler_moment_local_model(int q, double k, int X);
// G-ratio (2g/(e^gamma X))^{k(k+1)/2}, the shared limit for <Z_X^k> and <L^k P_X^{-k}>
double hadamard_moment_prediction(int k, int g, int X);
// Main term of <L^k P*_{-k,X}> before Mertens is applied: a finite product over d(P) <= X.
double lpinv_finite_prediction(int q, int k, int g, int X);

}  // namespace ffl
