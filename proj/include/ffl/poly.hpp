#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffl/field.hpp"

namespace ffl {

// Dense polynomial over F_q, lowest degree first. The zero polynomial is empty;
// every operation returns trimmed polynomials.
using Poly = std::vector<int>;

struct PrimePower {
    Poly prime;
    int mult;
};
using Factorization = std::vector<PrimePower>;

std::uint64_t ipow(std::uint64_t b, unsigned e);

int deg(const Poly& f);
void trim(Poly& f);
bool is_monic(const Poly& f);
Poly poly_one();
Poly poly_x();
Poly poly_const(const Field& F, std::int64_t c);

Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
Poly poly_scale(const Field& F, const Poly& a, int c);
// a = quo*b + rem, deg(rem) < deg(b). Throws std::domain_error when b = 0.
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b);
Poly poly_mod(const Field& F, const Poly& a, const Poly& b);
Poly poly_div_exact(const Field& F, const Poly& a, const Poly& b);
Poly poly_gcd(const Field& F, const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0
Poly poly_derivative(const Field& F, const Poly& a);
Poly make_monic(const Field& F, const Poly& a);
Poly poly_powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m);
Poly poly_pow(const Field& F, const Poly& base, unsigned e);
bool divides(const Field& F, const Poly& d, const Poly& a);

// Lexicographic rank of a monic polynomial within M_n, a_0 most significant.
std::uint64_t monic_rank(const Field& F, const Poly& f);
Poly monic_unrank(const Field& F, int n, std::uint64_t rank);
// Global index across M_0, M_1, ...: (q^n - 1)/(q - 1) + rank.
std::uint64_t monic_index(const Field& F, const Poly& f);
Poly monic_from_index(const Field& F, std::uint64_t idx);
std::uint64_t monic_count_upto(int q, int n);  // |M_0| + ... + |M_n|

std::vector<Poly> enumerate_monic(const Field& F, int n);
bool is_squarefree(const Field& F, const Poly& f);
std::uint64_t squarefree_count(int q, int d);
std::vector<Poly> enumerate_squarefree(const Field& F, int d);
// Monic ranks of H_d in canonical order; element k of H_d is monic_unrank(F, d, ranks[k]).
std::vector<std::uint64_t> squarefree_ranks(const Field& F, int d);

bool is_irreducible(const Field& F, const Poly& f);

int mobius_int(std::int64_t n);
// (1/n) sum_{d|n} mu(d) q^{n/d}
std::int64_t prime_poly_count(int q, int n);
// Irreducibles grouped by degree (index 0 unused), found by marking products.
std::vector<std::vector<Poly>> sieve_irreducibles(const Field& F, int max_deg);
// Irreducible counts per degree: sieve lists while q^n <= enum_limit, above that
// q^n minus the number of products of lower-degree irreducibles.
std::vector<std::int64_t> sieve_counts(const Field& F, int max_deg, std::uint64_t enum_limit = 20000000);

Factorization factorize(const Field& F, const Poly& f);
Poly expand(const Field& F, const Factorization& fac);
int mobius(const Field& F, const Poly& f);
int von_mangoldt(const Field& F, const Poly& f);
std::uint64_t binom(unsigned n, unsigned k);
std::uint64_t tau_k(const Field& F, const Poly& f, int k);
std::uint64_t tau_k(const Factorization& fac, int k);
// l = l1 * l2^2 with l1 square-free
std::pair<Poly, Poly> split_squarefree_part(const Field& F, const Poly& l);

std::string to_string(const Poly& f);
// "1,0,1" (lowest first) or "x^2+1" style
Poly parse_poly(const Field& F, const std::string& s);

}  // namespace ffl
