#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffl/characters.hpp"
#include "ffl/tables.hpp"

namespace ffl {

struct LPoly {
    Poly D;
    int q = 5;
    int g = 0;
    std::vector<std::int64_t> c;  // c_0 .. c_{2g}

    cplx eval(cplx u) const;
    double eval(double u) const;
    double central_value() const;  // u = q^{-1/2}
    // largest |c_{2g-n} - q^{g-n} c_n| over n (0 when the identity holds)
    std::int64_t functional_equation_defect() const;
    // |L(u) - (q u^2)^g L(1/(q u))| / |L(u)|
    double functional_equation_residual(cplx u) const;
};

struct ZeroSet {
    std::vector<cplx> roots;       // all 2g roots in u
    std::vector<double> angles;    // g angles in [0, pi], one per conjugate pair
    std::vector<int> multiplicity; // per distinct angle cluster, aligned with distinct_angles
    std::vector<double> distinct_angles;
    double max_radius_defect = 0;  // max | |u| sqrt(q) - 1 |
    double max_residual = 0;       // max |L(u_j)| / sum |c_n| q^{-n/2}
    bool used_fallback = false;
    bool central_zero = false;
};

// Reference: c_n by summing Jacobi symbols over each M_n.
LPoly compute_coeffs_reference(const Field& F, const Poly& D);
// c_n from prime sums via Newton's identities (oracle route).
std::vector<std::int64_t> coeffs_from_prime_sums(int q, int g, const std::vector<std::int64_t>& prime_power_sums);

ZeroSet zeros(const LPoly& L);
// -L'/L(s) in the s variable, u = q^{-s}
cplx log_derivative(const LPoly& L, cplx s, const ZeroSet* zs = nullptr);
// sum over f with d(f) <= max_deg of log q * Lambda(f) chi(f) |f|^{-s}
cplx log_derivative_series(const MonicTable& T, const std::vector<std::int8_t>& chi, cplx s, int max_deg);

constexpr double kCentralZeroTol = 1e-10;

struct AfeResult {
    double lhs = 0;             // L(1/2)^k
    double rhs = 0;             // degree <= reading
    double residual = 0;
    double rhs_exact_degree = 0;
    double residual_exact_degree = 0;
};

// Shared tables for one (q, g); thread-safe const interface.
class LContext {
public:
    // max_deg: depth of the multiplicative table (>= 2g; kg for the AFE at k)
    LContext(const Field& F, int g, int max_deg = -1);

    const Field& field() const { return F_; }
    int genus() const { return g_; }
    const MonicTable& table() const { return *table_; }
    const CharacterEngine& engine() const { return *engine_; }

    void characters(const Poly& D, std::vector<std::int8_t>& chi) const { engine_->evaluate(D, chi); }
    LPoly lpoly(const Poly& D) const;
    LPoly lpoly(const Poly& D, const std::vector<std::int8_t>& chi) const;
    AfeResult afe_check(const Poly& D, int k) const;
    // sum_{d(f) <= X} Lambda(f) chi(f) / (|f|^s d(f)) at real s
    double prime_power_sum(const std::vector<std::int8_t>& chi, int X, double s = 0.5) const;

private:
    Field F_;
    int g_;
    std::unique_ptr<MonicTable> table_;
    std::unique_ptr<CharacterEngine> engine_;
    std::vector<std::vector<std::uint32_t>> tau_;  // tau_2, tau_3 over the table
};

void validate_discriminant(const Field& F, const Poly& D);

// Coefficient cache per (q, g): text header, one row per D, trailing checksum.
struct LCache {
    int q = 0, g = 0;
    std::vector<std::vector<std::int64_t>> rows;
};
std::string lcache_path(const std::string& dir, int q, int g);
void write_lcache(const std::string& path, const LCache& cache);
// false (with a warning on stderr) when the file is missing, mismatched or corrupt
bool read_lcache(const std::string& path, int q, int g, std::size_t expected_rows, LCache& out);

}  // namespace ffl
