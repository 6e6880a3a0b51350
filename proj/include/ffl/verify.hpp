#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ffl/moments.hpp"

namespace ffl {

constexpr int kCriteriaCount = 12;

struct VerifyOptions {
    int workers = 1;
    std::string cache_dir;                // L-coefficient cache for the full families
    std::uint64_t seed = 20240917;
    std::uint64_t rmt_samples = 100000;
    std::uint64_t afe_samples = 500;      // k = 3 draws per genus
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    std::vector<std::string> failures;                  // first few offending cases
    std::vector<std::pair<std::string, double>> metrics;  // measured quantities, in report order
};

// Runs the acceptance suite at desk scale (q = 5 unless stated, g <= 3). Full families
// are collected once and shared between criteria.
class Verifier {
public:
    explicit Verifier(VerifyOptions opt = {});

    CriterionResult run(int id);
    std::vector<CriterionResult> run_all();

    const FamilyValues& family(int g);

private:
    CriterionResult prime_polynomial_theorem();
    CriterionResult gauss_sums();
    CriterionResult character_sum_identities();
    CriterionResult functional_equation();
    CriterionResult riemann_hypothesis();
    CriterionResult approximate_functional_equation();
    CriterionResult decomposition();
    CriterionResult constants();
    CriterionResult mertens();
    CriterionResult first_moment_trend();
    CriterionResult hadamard_moment_trend();
    CriterionResult random_matrix();

    VerifyOptions opt_;
    std::map<int, FamilyValues> families_;
};

std::string criterion_title(int id);

}  // namespace ffl
