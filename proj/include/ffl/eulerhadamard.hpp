#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffl/lfunction.hpp"

namespace ffl {

struct KernelOptions {
    int trap_base = 256;        // panels of the coarsest trapezoid level; fixes the normalization
    int gl_nodes = 100;         // Gauss-Legendre nodes for v(t), whose lower limit is not flat
    double alias_margin = 600;  // spare frequency (per unit of the reference variable) above the phase rate
};

// u(x) = (C/w) exp(-1/(1-t^2)) on [q, q^{1+1/X}], t the affine image in [-1, 1],
// C fixed so that the coarsest trapezoid mass is 1. All derivatives of u vanish at
// both ends, so the trapezoid rule converges faster than any power of the step.
class BumpKernel {
public:
    BumpKernel(int q, int X, KernelOptions opt = {});

    int q() const { return q_; }
    int X() const { return X_; }
    double lower() const { return a_; }
    double upper() const { return b_; }
    const KernelOptions& options() const { return opt_; }

    double u(double x) const;
    double v(double t) const;                 // int_t^inf u
    double mass(std::size_t level = 0) const;  // trapezoid mass at a refinement level
    std::complex<double> mellin(std::complex<double> z) const;  // int u(x) x^{z-1} dx
    std::complex<double> U(std::complex<double> z) const;       // int u(x) E_1(z log x) dx

    // Trapezoid rule in the reference variable, fine enough that a phase growing
    // at `rate` radians per unit of log x is integrated without aliasing.
    struct Rule {
        std::vector<double> logx;  // log x_i
        std::vector<double> w;     // u(x_i) dx weights
    };
    const Rule& rule_for(double rate) const;
    std::size_t rule_levels() const { return rules_.size(); }

private:
    int q_, X_;
    double a_, b_, half_, mid_, norm_;
    KernelOptions opt_;
    std::vector<double> gl_t_, gl_w_;
    std::vector<Rule> rules_;
    double max_dlogx_;  // max d(log x)/dt over the support
};

// sum_{|m| <= k_max} int u(x) Ci(|theta + 2 pi m| X log_q x) dx
double periodized_ci(const BumpKernel& K, double theta, int k_max);
// The same sum with the j = 0 image written through Cin, minus log|2 sin(theta/2)|;
// stable as theta -> 0.
double periodized_ci_reduced(const BumpKernel& K, double theta, int k_max);
// Limit of periodized_ci as k_max -> inf: log|2 sin(theta/2)| + sum_{n<=X} cos(n theta)/n
double periodized_ci_limit(double theta, int X);

constexpr int kDefaultImages = 200;
constexpr double kCentralAngle = 1e-8;

// b_n = sum_{f in M_n} Lambda(f) chi(f) for n = 0..N (b_0 = 0)
std::vector<std::int64_t> prime_sums_direct(const MonicTable& T, const std::vector<std::int8_t>& chi, int N);
// Same sums recovered from the L-polynomial by Newton's identities.
std::vector<std::int64_t> prime_sums_from_coeffs(const LPoly& L, int N);

// exp(sum_{n<=X} b_n q^{-ns} / n)
std::complex<double> euler_part(const std::vector<std::int64_t>& b, int q, int X, std::complex<double> s);
double euler_part(const std::vector<std::int64_t>& b, int q, int X, double s = 0.5);

// exp(-sum_rho U((1/2 - rho) X)) at s = 1/2; 0 when a zero sits at the centre.
double hadamard_part(const BumpKernel& K, const ZeroSet& zs, int k_max = kDefaultImages);
// exp(-sum_rho U((s - rho) X)) for general s with Re s >= 0.
std::complex<double> hadamard_part(const BumpKernel& K, const ZeroSet& zs, std::complex<double> s,
                                   int k_max = kDefaultImages);

// Local data of the primes of each degree: how many have chi = +1, -1, 0.
struct PrimeCensus {
    int q = 0;
    std::vector<std::int64_t> plus, minus, zero;  // indexed by degree, entry 0 unused
};
PrimeCensus prime_census(const Field& F, const Poly& D, const std::vector<std::int64_t>& b, int X);
PrimeCensus prime_census(const MonicTable& T, const std::vector<std::int8_t>& chi, int X);

// Coefficient of t^j in the local factor of P*_{k,X} at a prime of degree d.
double alpha_local(double k, int d, int X, int j);
// alpha_k(l) for every l in the table up to degree max_deg (indexed like the table)
std::vector<double> alpha_k_coeffs(const MonicTable& T, double k, int X, int max_deg);
// prod_{d(P)<=X/2} (1 - chi(P)|P|^{-s})^{-k} prod_{X/2<d(P)<=X} (1 + k chi |P|^{-s} + k^2 chi^2 |P|^{-2s}/2)
double partial_euler_star(const PrimeCensus& C, double k, int X, double s = 0.5);

struct DecompositionReport {
    Poly D;
    int X = 0;
    double L_value = 0, P_value = 0, Z_value = 0;
    double residual = 0;  // |L - P Z| / max(|L|, 1e-30)
    int k_max = 0;
    bool central_zero = false;
};

// Uses the table of ctx for P_X when it is deep enough, else the L-coefficients.
DecompositionReport decompose_check(const LContext& ctx, const BumpKernel& K, const Poly& D,
                                    int k_max = kDefaultImages);

struct ExplicitFormulaCheck {
    std::complex<double> lhs;          // -L'/L(s)
    std::complex<double> prime_side;   // sum log q Lambda chi |f|^{-s} v(q^{d/X})
    std::complex<double> zero_side;    // sum_rho u~(1 - (s - rho) X)/(s - rho)
    double residual = 0;               // |lhs - (prime_side - zero_side)|
};

// -L'/L(s) against the smoothed explicit formula; throws when s is within 1e-3 of a zero.
ExplicitFormulaCheck verify_explicit_formula(const LPoly& L, const ZeroSet& zs, const std::vector<std::int64_t>& b,
                                             const BumpKernel& K, std::complex<double> s,
                                             int k_max = kDefaultImages);

}  // namespace ffl
