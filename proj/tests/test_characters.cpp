#include "test_main.hpp"

#include <cmath>
#include <random>

#include "ffl/characters.hpp"

using namespace ffl;

namespace {
Poly random_monic(const Field& F, int n, std::mt19937_64& rng) { return monic_unrank(F, n, rng() % ipow(F.q(), n)); }
}  // namespace

TEST_CASE("constant and residue symbols") {
    Field F(5);
    CHECK(legendre_const(F, 1) == 1);
    CHECK(legendre_const(F, 2) == -1);
    CHECK(legendre_const(F, 4) == 1);
    CHECK(legendre_const(F, 0) == 0);
    CHECK(residue_symbol(F, Poly{0, 1}, Poly{1, 1}) == 1);
    CHECK(residue_symbol(F, Poly{0, 1}, Poly{2, 1}) == -1);
    CHECK(residue_symbol(F, Poly{2, 1}, Poly{2, 1}) == 0);
    CHECK_THROWS_AS(residue_symbol(F, Poly{0, 1}, Poly{1, 0, 1}), std::invalid_argument);
}

TEST_CASE("jacobi: reciprocity and factorization oracle, exhaustive d <= 4") {
    Field F(5);
    std::vector<Poly> all;
    for (int d = 0; d <= 4; ++d)
        for (auto& f : enumerate_monic(F, d)) all.push_back(f);
    // restrict the quadratic pass to a strided subset of B to keep it quick
    int n_recip = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = i % 7; j < all.size(); j += 7) {
            const Poly &A = all[i], &B = all[j];
            int ab = jacobi(F, A, B);
            if (deg(poly_gcd(F, A, B)) == 0) {
                CHECK(ab == jacobi(F, B, A));
                ++n_recip;
            } else {
                CHECK(ab == 0);
            }
        }
    }
    CHECK(n_recip > 10000);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 3000; ++t) {
        const Poly& A = all[rng() % all.size()];
        const Poly& B = all[rng() % all.size()];
        CHECK(jacobi(F, A, B) == jacobi_by_factorization(F, A, B));
        // non-monic numerator: constant rule
        int c = 1 + rng() % 4;
        CHECK(jacobi(F, poly_scale(F, A, c), B) == jacobi_by_factorization(F, poly_scale(F, A, c), B));
    }
    for (auto& B : all) CHECK(jacobi(F, poly_one(), B) == 1);
}

TEST_CASE("quadratic character properties") {
    Field F(5);
    std::mt19937_64 rng(6);
    auto H = enumerate_squarefree(F, 5);
    for (int t = 0; t < 1000; ++t) {
        QuadChar chi(F, H[rng() % H.size()]);
        Poly f = random_monic(F, rng() % 5, rng), g = random_monic(F, rng() % 5, rng);
        CHECK(chi(poly_one()) == 1);
        CHECK(chi(poly_mul(F, f, g)) == chi(f) * chi(g));
        CHECK((chi(f) == 0) == (deg(poly_gcd(F, f, chi.modulus())) > 0));
        Poly sq = poly_mul(F, f, f);
        if (deg(poly_gcd(F, f, chi.modulus())) == 0) CHECK(chi(sq) == 1);
    }
}

TEST_CASE("additive character") {
    Field F(5);
    CHECK(std::abs(exp_e(F, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(exp_e(F, 1) - std::polar(1.0, 2 * M_PI / 5)) < 1e-15);
    cplx s = 0;
    for (int a = 0; a < 5; ++a) s += exp_e(F, a);
    CHECK(std::abs(s) < 1e-14);
}

TEST_CASE("gauss sums: literal sum, table, transform and closed form") {
    Field F(5);
    auto primes = sieve_irreducibles(F, 2);
    for (int d = 1; d <= 2; ++d)
        for (auto& P : primes[d]) {
            CHECK(std::abs(gauss_sum_direct(F, Poly{}, P)) < 1e-10);
            CHECK(std::abs(std::abs(gauss_sum_direct(F, poly_one(), P)) - std::sqrt(std::pow(5.0, d))) < 1e-10);
        }
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        Poly f = random_monic(F, 1 + rng() % 4, rng);
        GaussSumTable T(F, f);
        GaussSumTable T2(F, f, 1);  // factored symbol path
        T2.build_transform();
        for (int k = 0; k < 5; ++k) {
            Poly V = random_monic(F, rng() % 5, rng);
            cplx lit = gauss_sum_direct(F, V, f);
            CHECK(std::abs(lit - T.direct(V)) < 1e-9);
            CHECK(std::abs(lit - T2.query(V)) < 1e-9);
        }
    }
    CHECK_THROWS_AS(gauss_sum_direct(F, poly_one(), monic_unrank(F, 7, 0)), std::length_error);

    for (auto& P : primes[1])
        for (int j = 1; j <= 3; ++j) {
            GaussSumTable T(F, poly_pow(F, P, j));
            CHECK(std::abs(T.direct(Poly{}) - gauss_sum_closed(F, Poly{}, P, j)) < 1e-9);
            for (int d = 0; d <= 3; ++d)
                for (auto& V : enumerate_monic(F, d)) CHECK(std::abs(T.direct(V) - gauss_sum_closed(F, V, P, j)) < 1e-9);
        }
    // closed-form case table
    Poly P{0, 1};
    CHECK(std::abs(gauss_sum_closed(F, poly_pow(F, P, 3), P, 5)) == 0.0);
    CHECK(gauss_sum_closed(F, poly_pow(F, P, 2), P, 2).real() == doctest::Approx(20.0));
    CHECK(gauss_sum_closed(F, P, P, 2).real() == doctest::Approx(-5.0));
}

TEST_CASE("gauss sums are multiplicative in the modulus") {
    Field F(5);
    std::mt19937_64 rng(8);
    int done = 0;
    while (done < 100) {
        Poly f = random_monic(F, 1 + rng() % 3, rng), h = random_monic(F, 1 + rng() % 3, rng);
        if (deg(poly_gcd(F, f, h)) != 0) continue;
        Poly V = random_monic(F, rng() % 5, rng);
        if (rng() % 5 == 0) V = Poly{};
        cplx lhs = gauss_sum_direct(F, V, poly_mul(F, f, h));
        cplx rhs = gauss_sum_direct(F, V, f) * gauss_sum_direct(F, V, h);
        CHECK(std::abs(lhs - rhs) < 1e-9);
        ++done;
    }
}

TEST_CASE("character sum identity via gauss sums") {
    Field F(5);
    CHECK(char_sum_lemma32(F, poly_one(), 3).direct == 125);
    for (int n = 1; n <= 3; ++n)
        for (auto& f : enumerate_monic(F, n))
            for (int m = 0; m <= n; ++m) {
                auto r = char_sum_lemma32(F, f, m);
                CHECK_MESSAGE(r.equal(), "f=", to_string(f), " m=", m, " direct=", r.direct, " identity=", r.identity.real());
            }
}

TEST_CASE("fundamental sum identity") {
    Field F(5);
    CHECK(fundamental_sum_lemma31(F, poly_one(), 1).direct == 100);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        Poly f = random_monic(F, rng() % 6, rng);
        int g = 1 + rng() % 2;
        auto r = fundamental_sum_lemma31(F, f, g);
        CHECK_MESSAGE(r.equal(), "f=", to_string(f), " g=", g, " direct=", r.direct, " identity=", r.identity.real());
    }
}

TEST_CASE("square twist average") {
    Field F(5);
    Poly l = Poly{0, 0, 1};
    double avg = twist_average(F, 2, l);
    CHECK(std::abs(avg - square_twist_prediction(F, l)) < 10 * std::pow(5.0, -4));
}
