#include "test_main.hpp"

#include <random>

#include "ffl/characters.hpp"
#include "ffl/simd.hpp"
#include "ffl/tables.hpp"

using namespace ffl;

TEST_CASE("monic table agrees with factorization") {
    Field F(5);
    MonicTable T(F, 5);
    CHECK(T.size() == monic_count_upto(5, 5));
    auto sieve = sieve_irreducibles(F, 5);
    std::size_t nprimes = 0;
    for (int d = 1; d <= 5; ++d) nprimes += sieve[d].size();
    CHECK(T.primes().size() == nprimes);
    for (std::uint32_t i = 0; i < T.size(); ++i) {
        Poly f = T.poly(i);
        CHECK(T.von_mangoldt(i) == von_mangoldt(F, f));
        CHECK(T.tau_k(i, 3) == tau_k(F, f, 3));
        CHECK(T.mobius(i) == mobius(F, f));
        if (i > 0 && !T.is_prime(i)) CHECK(poly_mul(F, T.poly(T.prime_factor(i)), T.poly(T.cofactor(i))) == f);
    }
}

TEST_CASE("character engine agrees with the Jacobi symbol") {
    Field F(5);
    std::mt19937_64 rng(11);
    for (int g = 1; g <= 3; ++g) {
        MonicTable T(F, 2 * g + 2);
        // a small square-table limit forces the Jacobi path for the larger primes
        for (std::uint64_t limit : {std::uint64_t{20000}, std::uint64_t{30}}) {
            CharacterEngine E(T, 2 * g + 1, limit);
            auto ranks = squarefree_ranks(F, 2 * g + 1);
            for (int t = 0; t < 5; ++t) {
                Poly D = monic_unrank(F, 2 * g + 1, ranks[rng() % ranks.size()]);
                std::vector<std::int8_t> chi;
                E.evaluate(D, chi);
                for (std::uint32_t i = 0; i < T.size(); i += 1 + rng() % 61) CHECK(chi[i] == jacobi(F, D, T.poly(i)));
            }
        }
    }
}

TEST_CASE("simd kernels match the scalar reference") {
    const auto& S = simd::scalar_kernels();
    const auto* A = simd::avx2_kernels();
    if (!A || !simd::cpu_has_avx2()) {
        MESSAGE("AVX2 variant unavailable; scalar only");
        return;
    }
    std::mt19937_64 rng(12);
    for (int q : {5, 13}) {
        for (int d = 1; d <= 6; ++d) {
            const int n = 7;
            std::size_t count = 37;
            std::vector<std::int32_t> xmod(static_cast<std::size_t>(n + 1) * d * count);
            for (auto& v : xmod) v = static_cast<std::int32_t>(rng() % q);
            std::vector<std::int32_t> dc(n + 1);
            for (auto& v : dc) v = static_cast<std::int32_t>(rng() % q);
            std::vector<std::uint32_t> o1(count), o2(count);
            S.residue_indices(xmod.data(), count, dc.data(), n, d, count, q, o1.data());
            A->residue_indices(xmod.data(), count, dc.data(), n, d, count, q, o2.data());
            CHECK(o1 == o2);
        }
    }
    std::vector<std::int8_t> v(1001);
    for (auto& x : v) x = static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1);
    CHECK(S.sum_i8(v.data(), v.size()) == A->sum_i8(v.data(), v.size()));
    std::vector<std::int8_t> extreme(100, -128);
    CHECK(S.sum_i8(extreme.data(), extreme.size()) == A->sum_i8(extreme.data(), extreme.size()));

    const int degree = 6;
    std::size_t count = 23;
    std::vector<double> c((degree + 1) * count), h1(count), h2(count);
    for (auto& x : c) x = static_cast<double>(static_cast<int>(rng() % 200) - 100);
    S.horner_batch(c.data(), count, degree, count, 0.4472135954999579, h1.data());
    A->horner_batch(c.data(), count, degree, count, 0.4472135954999579, h2.data());
    for (std::size_t i = 0; i < count; ++i) CHECK(h1[i] == doctest::Approx(h2[i]).epsilon(1e-13));

    std::vector<double> w(203), x(203);
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::ldexp(static_cast<double>(rng() % 1000), -10);
        x[i] = std::ldexp(static_cast<double>(rng() % 1000), -10) - 0.5;
    }
    CHECK(S.dot(w.data(), x.data(), w.size()) == doctest::Approx(A->dot(w.data(), x.data(), w.size())).epsilon(1e-13));
}
