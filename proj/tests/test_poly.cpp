#include "test_main.hpp"

#include <random>

#include "ffl/poly.hpp"

using namespace ffl;

namespace {

// Independent brute-force irreducibility: no monic divisor of degree 1..n/2.
bool brute_irreducible(const Field& F, const Poly& f) {
    for (int d = 1; 2 * d <= deg(f); ++d)
        for (auto& g : enumerate_monic(F, d))
            if (poly_mod(F, f, g).empty()) return false;
    return true;
}

Poly random_monic(const Field& F, int n, std::mt19937_64& rng) {
    return monic_unrank(F, n, rng() % ipow(F.q(), n));
}

}  // namespace

TEST_CASE("field rejects bad moduli") {
    CHECK_THROWS_AS(Field(7), std::invalid_argument);
    CHECK_THROWS_AS(Field(9), std::invalid_argument);
    CHECK_THROWS_AS(Field(3), std::invalid_argument);
    CHECK_NOTHROW(Field(5));
    CHECK_NOTHROW(Field(13));
    Field F(5);
    CHECK(F.inv(2) == 3);
    CHECK_THROWS_AS(F.inv(0), std::domain_error);
}

TEST_CASE("basic arithmetic") {
    Field F(5);
    Poly a{1, 1};
    CHECK(poly_mul(F, a, a) == Poly{1, 2, 1});
    CHECK(poly_gcd(F, Poly{4, 0, 1}, Poly{4, 1}) == Poly{4, 1});
    CHECK(poly_mod(F, a, a).empty());
    CHECK_THROWS_AS(poly_divmod(F, a, Poly{}), std::domain_error);

    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        Poly f = random_monic(F, 1 + rng() % 7, rng);
        Poly g = random_monic(F, 1 + rng() % 4, rng);
        auto [qq, r] = poly_divmod(F, f, g);
        CHECK(deg(r) < deg(g));
        CHECK(poly_add(F, poly_mul(F, qq, g), r) == f);
        Poly h = poly_gcd(F, f, g);
        CHECK(is_monic(h));
        CHECK(divides(F, h, f));
        CHECK(divides(F, h, g));
    }
}

TEST_CASE("ranking round trip") {
    Field F(5);
    for (std::uint64_t i = 0; i < monic_count_upto(5, 4); ++i) CHECK(monic_index(F, monic_from_index(F, i)) == i);
    CHECK(monic_unrank(F, 2, 0) == Poly{0, 0, 1});
    CHECK(monic_unrank(F, 2, 1) == Poly{0, 1, 1});
    CHECK(monic_unrank(F, 2, 5) == Poly{1, 0, 1});
}

TEST_CASE("irreducibility examples") {
    Field F(5);
    CHECK_FALSE(is_irreducible(F, Poly{1, 0, 1}));
    CHECK(is_irreducible(F, Poly{0, 1}));
    CHECK(is_irreducible(F, Poly{2, 0, 1}));
    // both code paths agree with brute force
    std::mt19937_64 rng(2);
    for (int t = 0; t < 300; ++t) {
        Poly f = random_monic(F, 7 + rng() % 2, rng);
        CHECK(is_irreducible(F, f) == brute_irreducible(F, f));
    }
}

TEST_CASE("enumeration counts") {
    Field F5(5), F13(13);
    CHECK(enumerate_monic(F5, 0).size() == 1);
    CHECK(enumerate_monic(F5, 2).size() == 25);
    CHECK(enumerate_monic(F13, 3).size() == 2197);
    CHECK(enumerate_squarefree(F5, 1).size() == 5);
    CHECK(enumerate_squarefree(F5, 3).size() == 100);
    CHECK(enumerate_squarefree(F5, 5).size() == 2500);
    for (int d = 1; d <= 7; ++d) CHECK(squarefree_ranks(F5, d).size() == squarefree_count(5, d));
}

TEST_CASE("sieve matches brute force and prime polynomial theorem") {
    Field F(5);
    auto sieve = sieve_irreducibles(F, 4);
    CHECK(sieve[1].size() == 5);
    CHECK(sieve[2].size() == 10);
    CHECK(sieve[3].size() == 40);
    for (int n = 1; n <= 4; ++n) {
        size_t brute = 0;
        for (auto& f : enumerate_monic(F, n)) brute += brute_irreducible(F, f);
        CHECK(sieve[n].size() == brute);
        for (auto& P : sieve[n]) CHECK(is_irreducible(F, P));
    }
    auto counts = sieve_counts(F, 10);
    for (int n = 1; n <= 10; ++n) CHECK(counts[n] == prime_poly_count(5, n));
    // counting route above the enumeration limit agrees with the listing route
    auto small = sieve_counts(F, 8, 1000);
    for (int n = 1; n <= 8; ++n) CHECK(small[n] == counts[n]);
}

TEST_CASE("von Mangoldt sums") {
    for (int q : {5, 13}) {
        Field F(q);
        int top = q == 5 ? 6 : 3;
        for (int n = 0; n <= top; ++n) {
            std::uint64_t s = 0;
            for (auto& f : enumerate_monic(F, n)) s += von_mangoldt(F, f);
            CHECK(s == (n == 0 ? 0 : ipow(q, n)));
        }
    }
    Field F(5);
    CHECK(von_mangoldt(F, poly_one()) == 0);
    CHECK(von_mangoldt(F, Poly{0, 0, 0, 1}) == 1);
}

TEST_CASE("factorization, tau_k, mobius") {
    Field F(5);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        Poly f = random_monic(F, rng() % 12, rng);
        auto fac = factorize(F, f);
        CHECK(expand(F, fac) == f);
        for (auto& pp : fac) CHECK(is_irreducible(F, pp.prime));
    }
    // p-th powers exercise the zero-derivative branch
    Poly f = poly_mul(F, poly_pow(F, Poly{1, 1}, 5), poly_pow(F, Poly{2, 0, 1}, 7));
    auto fac = factorize(F, f);
    REQUIRE(fac.size() == 2);
    CHECK(expand(F, fac) == f);

    Poly P{1, 1};
    CHECK(tau_k(F, poly_one(), 3) == 1);
    CHECK(tau_k(F, poly_mul(F, P, P), 2) == 3);
    CHECK(tau_k(F, P, 3) == 3);
    for (int t = 0; t < 1000; ++t) {
        Poly a = random_monic(F, rng() % 6, rng), b = random_monic(F, rng() % 6, rng);
        if (deg(poly_gcd(F, a, b)) != 0) continue;
        int k = 1 + rng() % 4;
        CHECK(tau_k(F, poly_mul(F, a, b), k) == tau_k(F, a, k) * tau_k(F, b, k));
    }
    // tau_k by counting ordered factorizations
    Poly g = poly_mul(F, poly_mul(F, P, P), Poly{0, 1});
    std::uint64_t cnt = 0;
    for (int d1 = 0; d1 <= 3; ++d1)
        for (auto& a : enumerate_monic(F, d1))
            if (divides(F, a, g)) {
                Poly rest = poly_div_exact(F, g, a);
                for (int d2 = 0; d2 <= deg(rest); ++d2)
                    for (auto& b : enumerate_monic(F, d2)) cnt += divides(F, b, rest);
            }
    CHECK(cnt == tau_k(F, g, 3));

    CHECK(mobius(F, poly_one()) == 1);
    CHECK(mobius(F, Poly{0, 1}) == -1);
    CHECK(mobius(F, Poly{0, 0, 1}) == 0);
}

TEST_CASE("square-free splitting") {
    Field F(5);
    auto [a1, a2] = split_squarefree_part(F, Poly{0, 0, 0, 1});
    CHECK(a1 == Poly{0, 1});
    CHECK(a2 == Poly{0, 1});
    auto [b1, b2] = split_squarefree_part(F, poly_one());
    CHECK(b1 == poly_one());
    CHECK(b2 == poly_one());
    auto [c1, c2] = split_squarefree_part(F, poly_mul(F, Poly{0, 0, 1}, Poly{1, 1}));
    CHECK(c1 == Poly{1, 1});
    CHECK(c2 == Poly{0, 1});
    std::mt19937_64 rng(4);
    for (int t = 0; t < 300; ++t) {
        Poly l = random_monic(F, rng() % 9, rng);
        auto [l1, l2] = split_squarefree_part(F, l);
        CHECK(is_squarefree(F, l1));
        CHECK(poly_mul(F, l1, poly_mul(F, l2, l2)) == l);
    }
}

TEST_CASE("parse and print") {
    Field F(5);
    CHECK(parse_poly(F, "x^2+2x+1") == Poly{1, 2, 1});
    CHECK(parse_poly(F, "1,0,1") == Poly{1, 0, 1});
    CHECK(parse_poly(F, "x^3 - 1") == Poly{4, 0, 0, 1});
    CHECK(to_string(Poly{1, 2, 1}) == "x^2+2x+1");
    CHECK(parse_poly(F, to_string(Poly{3, 0, 4, 1})) == Poly{3, 0, 4, 1});
}
