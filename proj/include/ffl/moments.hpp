#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffl/lfunction.hpp"
#include "ffl/random.hpp"

namespace ffl {

enum class EnsembleMode { Full, Sample };

struct EnsembleSpec {
    int q = 5;
    int g = 1;
    EnsembleMode mode = EnsembleMode::Full;
    std::uint64_t count = 0;  // sample size
    std::uint64_t seed = 0;
    int X = 0;                // 0 skips the partial Euler product
    Poly ell;                 // twist; empty means 1
    int workers = 1;
    std::string cache_dir;    // L-coefficient cache; empty disables it
};

// Per-discriminant values of one ensemble, in enumeration (or draw) order.
struct FamilyValues {
    EnsembleSpec spec;
    std::uint64_t family_size = 0;       // |H_{2g+1}|
    std::vector<std::uint64_t> ranks;    // monic ranks in M_{2g+1}
    std::vector<std::vector<std::int64_t>> coeffs;
    std::vector<double> L;               // L(1/2)
    std::vector<double> P;               // P_X, when X > 0
    std::vector<std::int8_t> twist;      // chi_D(ell)
    bool from_cache = false;
};
FamilyValues collect_family(const EnsembleSpec& spec);
// Recomputes P_X for another cutoff from the stored coefficients.
void set_euler_cutoff(FamilyValues& fam, int X);
// Recomputes chi_D(ell) for another twist.
void set_twist(FamilyValues& fam, const Poly& ell);

// Z_X is taken as L/P_X, and as 0 when |L| is below this.
constexpr double kZeroThreshold = 1e-9;

struct MomentReport {
    std::string kind;
    int q = 0, g = 0;
    double k = 0;
    int X = 0;
    std::string ell = "1";
    double empirical = 0;
    double predicted = 0;
    double stderr_ = 0;  // NaN in full mode
    std::uint64_t n = 0;
    double rel_deviation = 0;  // |empirical/predicted - 1|
    std::string note;
};

// Mean of v in sample order, summed by a fixed pairwise tree.
double pairwise_mean(const std::vector<double>& v);

MomentReport moment_L(const FamilyValues& fam, int k);
MomentReport twisted_moment(const FamilyValues& fam, int k);
MomentReport moment_P(const FamilyValues& fam, double k);
MomentReport moment_Z(const FamilyValues& fam, double k);
MomentReport moment_LPinv(const FamilyValues& fam, int k);
// <L^k> / (<P_X^k> <Z_X^k>); throws std::domain_error on a zero denominator
double splitting_ratio(const FamilyValues& fam, double k);

// Z_X values exactly as moment_Z uses them.
std::vector<double> hadamard_values(const FamilyValues& fam);

}  // namespace ffl
