#pragma once

#include <cstdint>
#include <vector>

#include "ffl/poly.hpp"

namespace ffl {

// Multiplicative structure of M_0 ∪ ... ∪ M_N indexed by monic_index.
// Each composite f records a prime factor P (smallest index) and f/P.
class MonicTable {
public:
    MonicTable(const Field& F, int N);

    const Field& field() const { return F_; }
    int max_degree() const { return N_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(degree_.size()); }
    std::uint32_t offset(int n) const { return offset_[n]; }  // first index of M_n
    int degree(std::uint32_t i) const { return degree_[i]; }
    bool is_prime(std::uint32_t i) const { return i != 0 && spf_[i] == i; }
    std::uint32_t prime_factor(std::uint32_t i) const { return spf_[i]; }
    std::uint32_t cofactor(std::uint32_t i) const { return cof_[i]; }
    // multiplicity of prime_factor(i) in f and f with that prime power removed
    int exponent(std::uint32_t i) const { return expo_[i]; }
    std::uint32_t rest(std::uint32_t i) const { return rest_[i]; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    int von_mangoldt(std::uint32_t i) const;
    std::uint64_t tau_k(std::uint32_t i, int k) const;
    int mobius(std::uint32_t i) const;
    Poly poly(std::uint32_t i) const { return monic_from_index(F_, i); }

private:
    Field F_;
    int N_;
    std::vector<std::uint32_t> offset_;
    std::vector<std::uint8_t> degree_;
    std::vector<std::uint32_t> spf_, cof_, rest_;
    std::vector<std::uint8_t> expo_;
    std::vector<std::uint32_t> primes_;
};

// Evaluates chi_D on all of M_{<=N} for monic square-free D of fixed odd degree n.
// Small primes go through square tables, primes of degree >= n through reduction mod D,
// everything else through the Jacobi reduction; composites follow multiplicatively.
class CharacterEngine {
public:
    CharacterEngine(const MonicTable& table, int n, std::uint64_t square_table_limit = 20000);

    const MonicTable& table() const { return T_; }
    int modulus_degree() const { return n_; }
    // out[i] = chi_D(f_i) for i < table().size()
    void evaluate(const Poly& D, std::vector<std::int8_t>& out) const;
    // only the values on primes of degree < n; out indexed like primes_small()
    void prime_values(const Poly& D, std::vector<std::int8_t>& out) const;
    const std::vector<std::uint32_t>& primes_small() const { return small_; }

private:
    struct Group {
        int d;
        std::size_t first, count;  // into small_
        std::vector<std::int32_t> xmod;  // SoA residues of x^i
        std::vector<std::uint64_t> sq_offset;  // per prime, bit offset into squares_, or UINT64_MAX
    };
    const MonicTable& T_;
    int n_;
    std::vector<std::uint32_t> small_;
    std::vector<Group> groups_;
    std::vector<std::uint64_t> squares_;  // one bit per residue: nonzero square
    std::uint64_t sq_bits_used_ = 0;
    std::vector<std::uint32_t> links_;  // prime factor | cofactor << 16 for small tables
    // coefficients of primes with degree >= n, (deg + 1) ints each
    std::vector<std::int32_t> large_coef_;
};

// b_n = sum_{f in M_n} w(f) chi(f) for n <= N
std::vector<std::int64_t> degree_sums(const MonicTable& T, const std::vector<std::int8_t>& chi, int N);
std::vector<std::uint32_t> tau_table(const MonicTable& T, int k);
std::vector<std::int64_t> degree_sums_weighted(const MonicTable& T, const std::vector<std::int8_t>& chi,
                                               const std::vector<std::uint32_t>& w, int N);

}  // namespace ffl
