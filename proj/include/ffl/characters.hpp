#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffl/poly.hpp"

namespace ffl {

using cplx = std::complex<double>;

int legendre_const(const Field& F, int c);
// f^((|P|-1)/2) mod P as {-1, 0, 1}. Throws if P is not irreducible.
int residue_symbol(const Field& F, const Poly& f, const Poly& P);
// Jacobi symbol (A/B) for monic B; A may be any polynomial (constants via legendre^d(B)).
int jacobi(const Field& F, const Poly& A, const Poly& B);
// Product of residue symbols over the factorization of B.
int jacobi_by_factorization(const Field& F, const Poly& A, const Poly& B);

class QuadChar {
public:
    QuadChar(const Field& F, Poly D);
    const Poly& modulus() const { return D_; }
    const Factorization& factors() const { return fac_; }
    // chi_D(f) = (D/f) for monic f
    int operator()(const Poly& f) const;

private:
    Field F_;
    Poly D_;
    Factorization fac_;
};

// e^(2 pi i a1 / p) for the prime field
cplx exp_e(const Field& F, int a1);

// Literal sum over all residues u mod f of (u/f) e(uV/f). V empty means V = 0.
cplx gauss_sum_direct(const Field& F, const Poly& V, const Poly& f, std::uint64_t budget = 15625);

// Gauss sums G(V, chi_f) for a fixed f. Tabulates (u/f) once; each query is a pass
// over the residues, or a lookup into the full transform when built.
class GaussSumTable {
public:
    GaussSumTable(const Field& F, const Poly& f, std::uint64_t budget = 15625);
    cplx direct(const Poly& V) const;
    // q-ary DFT of the symbol table; afterwards query() is O(d(f)).
    void build_transform();
    cplx query(const Poly& V) const;
    const Poly& modulus() const { return f_; }

private:
    std::vector<int> functional(const Poly& V) const;
    Field F_;
    Poly f_;
    int n_;
    std::uint64_t size_;
    std::vector<std::int8_t> chi_;
    std::vector<cplx> hat_;
};

// Closed form of G(V, chi_{P^j}); V empty means V = 0 (alpha infinite).
cplx gauss_sum_closed(const Field& F, const Poly& V, const Poly& P, int j);

struct IdentityCheck {
    std::int64_t direct;
    cplx identity;
    bool equal(double tol = 1e-8) const;
};

// Sum over h in M_m of chi_f(h), directly and via Gauss sums.
IdentityCheck char_sum_lemma32(const Field& F, const Poly& f, int m);
// Sum over D in H_{2g+1} of chi_D(f), directly and via the divisor-closure sum.
IdentityCheck fundamental_sum_lemma31(const Field& F, const Poly& f, int g);

// Monic C with d(C) <= max_deg whose prime factors all divide f.
std::vector<Poly> smooth_over(const Field& F, const Poly& f, int max_deg);

// mean over H_{2g+1} of chi_D(l)
double twist_average(const Field& F, int g, const Poly& l);
// prod_{P | l} (1 + 1/|P|)^{-1}
double square_twist_prediction(const Field& F, const Poly& l);

}  // namespace ffl
