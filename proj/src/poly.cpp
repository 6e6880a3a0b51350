#include "ffl/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ffl {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

bool is_monic(const Poly& f) { return !f.empty() && f.back() == 1; }

Poly poly_one() { return Poly{1}; }
Poly poly_x() { return Poly{0, 1}; }

Poly poly_const(const Field& F, std::int64_t c) {
    Poly r{F.reduce(c)};
    trim(r);
    return r;
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int x = i < a.size() ? a[i] : 0;
        int y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    trim(r);
    return r;
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int x = i < a.size() ? a[i] : 0;
        int y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    trim(r);
    return r;
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::int64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<std::int64_t>(a[i]) * b[j];
    }
    Poly r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = F.reduce(acc[i]);
    trim(r);
    return r;
}

Poly poly_scale(const Field& F, const Poly& a, int c) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], F.reduce(c));
    trim(r);
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Poly rem = a;
    trim(rem);
    int db = deg(b);
    if (deg(rem) < db) return {Poly{}, rem};
    int lead_inv = F.inv(b.back());
    Poly quo(rem.size() - b.size() + 1, 0);
    for (int i = deg(rem); i >= db; --i) {
        int c = F.mul(rem[i], lead_inv);
        quo[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b[j]));
    }
    rem.resize(db);
    trim(rem);
    trim(quo);
    return {quo, rem};
}

Poly poly_mod(const Field& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

Poly poly_div_exact(const Field& F, const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(F, a, b);
    if (!r.empty()) throw std::domain_error("inexact polynomial division");
    return q;
}

Poly make_monic(const Field& F, const Poly& a) {
    if (a.empty()) return a;
    return poly_scale(F, a, F.inv(a.back()));
}

Poly poly_gcd(const Field& F, const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        Poly r = poly_mod(F, x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(F, x);
}

Poly poly_derivative(const Field& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.reduce(static_cast<std::int64_t>(i)));
    trim(r);
    return r;
}

Poly poly_powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m) {
    Poly r = poly_mod(F, poly_one(), m);
    Poly b = poly_mod(F, base, m);
    while (e) {
        if (e & 1) r = poly_mod(F, poly_mul(F, r, b), m);
        e >>= 1;
        if (e) b = poly_mod(F, poly_mul(F, b, b), m);
    }
    return r;
}

Poly poly_pow(const Field& F, const Poly& base, unsigned e) {
    Poly r = poly_one();
    for (unsigned i = 0; i < e; ++i) r = poly_mul(F, r, base);
    return r;
}

bool divides(const Field& F, const Poly& d, const Poly& a) { return poly_mod(F, a, d).empty(); }

std::uint64_t monic_rank(const Field& F, const Poly& f) {
    if (!is_monic(f)) throw std::invalid_argument("monic_rank: polynomial is not monic");
    std::uint64_t r = 0;
    for (int i = 0; i < deg(f); ++i) r = r * F.q() + static_cast<std::uint64_t>(f[i]);
    return r;
}

Poly monic_unrank(const Field& F, int n, std::uint64_t rank) {
    Poly f(n + 1, 0);
    f[n] = 1;
    for (int i = n - 1; i >= 0; --i) {
        f[i] = static_cast<int>(rank % F.q());
        rank /= F.q();
    }
    return f;
}

std::uint64_t monic_count_upto(int q, int n) {
    std::uint64_t s = 0, p = 1;
    for (int i = 0; i <= n; ++i, p *= q) s += p;
    return s;
}

std::uint64_t monic_index(const Field& F, const Poly& f) {
    int n = deg(f);
    return (n == 0 ? 0 : monic_count_upto(F.q(), n - 1)) + monic_rank(F, f);
}

Poly monic_from_index(const Field& F, std::uint64_t idx) {
    int n = 0;
    std::uint64_t p = 1;
    while (idx >= p) {
        idx -= p;
        p *= F.q();
        ++n;
    }
    return monic_unrank(F, n, idx);
}

std::vector<Poly> enumerate_monic(const Field& F, int n) {
    if (n < 0) throw std::invalid_argument("enumerate_monic: negative degree");
    std::uint64_t cnt = ipow(F.q(), n);
    std::vector<Poly> out;
    out.reserve(cnt);
    for (std::uint64_t r = 0; r < cnt; ++r) out.push_back(monic_unrank(F, n, r));
    return out;
}

bool is_squarefree(const Field& F, const Poly& f) {
    if (deg(f) <= 0) return !f.empty();
    Poly d = poly_derivative(F, f);
    if (d.empty()) return false;
    return deg(poly_gcd(F, f, d)) == 0;
}

std::uint64_t squarefree_count(int q, int d) {
    if (d == 0) return 1;
    if (d == 1) return q;
    return ipow(q, d - 1) * (q - 1);
}

std::vector<std::uint64_t> squarefree_ranks(const Field& F, int d) {
    if (d < 1) throw std::invalid_argument("squarefree_ranks: degree must be >= 1");
    std::uint64_t cnt = ipow(F.q(), d);
    std::vector<std::uint64_t> out;
    out.reserve(squarefree_count(F.q(), d));
    for (std::uint64_t r = 0; r < cnt; ++r)
        if (is_squarefree(F, monic_unrank(F, d, r))) out.push_back(r);
    return out;
}

std::vector<Poly> enumerate_squarefree(const Field& F, int d) {
    std::vector<Poly> out;
    for (auto r : squarefree_ranks(F, d)) out.push_back(monic_unrank(F, d, r));
    return out;
}

namespace {

// x^(q^i) - x has every monic irreducible of degree dividing i as a factor.
bool rabin_irreducible(const Field& F, const Poly& f) {
    int n = deg(f);
    Poly x = poly_x();
    std::vector<Poly> frob(n + 1);
    frob[0] = poly_mod(F, x, f);
    for (int i = 1; i <= n; ++i) frob[i] = poly_powmod(F, frob[i - 1], F.q(), f);
    if (!poly_sub(F, frob[n], frob[0]).empty()) return false;
    for (int p = 2; p <= n; ++p) {
        if (n % p != 0 || !is_prime(p)) continue;
        Poly g = poly_gcd(F, f, poly_sub(F, frob[n / p], x));
        if (deg(g) > 0) return false;
    }
    return true;
}

bool trial_irreducible(const Field& F, const Poly& f) {
    int n = deg(f);
    for (int d = 1; 2 * d <= n; ++d) {
        std::uint64_t cnt = ipow(F.q(), d);
        for (std::uint64_t r = 0; r < cnt; ++r)
            if (divides(F, monic_unrank(F, d, r), f)) return false;
    }
    return true;
}

}  // namespace

bool is_irreducible(const Field& F, const Poly& f) {
    if (deg(f) < 1) throw std::invalid_argument("is_irreducible: degree must be >= 1");
    Poly m = make_monic(F, f);
    if (deg(m) == 1) return true;
    if (deg(m) <= 6) return trial_irreducible(F, m);
    return rabin_irreducible(F, m);
}

int mobius_int(std::int64_t n) {
    int mu = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

std::int64_t prime_poly_count(int q, int n) {
    std::int64_t s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += mobius_int(d) * static_cast<std::int64_t>(ipow(q, n / d));
    return s / n;
}

namespace {

// Marks every product P*b with P in the sieved lists and returns the unmarked ranks of M_n.
std::vector<std::uint64_t> sieve_degree(const Field& F, int n, const std::vector<std::vector<std::uint64_t>>& primes) {
    const int q = F.q();
    std::uint64_t cnt = ipow(q, n);
    std::vector<bool> composite(cnt, false);
    std::vector<std::uint64_t> place(n);
    for (int i = 0; i < n; ++i) place[i] = ipow(q, n - 1 - i);
    std::vector<int> prod(n + 1);
    for (int i = 1; 2 * i <= n; ++i) {
        int j = n - i;
        std::uint64_t bcnt = ipow(q, j);
        for (auto pr : primes[i]) {
            Poly P = monic_unrank(F, i, pr);
            for (std::uint64_t br = 0; br < bcnt; ++br) {
                Poly b = monic_unrank(F, j, br);
                std::fill(prod.begin(), prod.end(), 0);
                for (int a = 0; a <= i; ++a) {
                    if (P[a] == 0) continue;
                    for (int c = 0; c <= j; ++c) prod[a + c] += P[a] * b[c];
                }
                std::uint64_t r = 0;
                for (int k = 0; k < n; ++k) r += static_cast<std::uint64_t>(prod[k] % q) * place[k];
                composite[r] = true;
            }
        }
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 0; r < cnt; ++r)
        if (!composite[r]) out.push_back(r);
    return out;
}

std::vector<std::vector<std::uint64_t>> sieve_ranks(const Field& F, int max_deg) {
    std::vector<std::vector<std::uint64_t>> ranks(max_deg + 1);
    for (int n = 1; n <= max_deg; ++n) ranks[n] = sieve_degree(F, n, ranks);
    return ranks;
}

}  // namespace

std::vector<std::vector<Poly>> sieve_irreducibles(const Field& F, int max_deg) {
    if (max_deg < 1) throw std::invalid_argument("sieve_irreducibles: max_deg must be >= 1");
    if (ipow(F.q(), max_deg) > 200000000ULL) throw std::invalid_argument("sieve_irreducibles: q^max_deg too large");
    auto ranks = sieve_ranks(F, max_deg);
    std::vector<std::vector<Poly>> out(max_deg + 1);
    for (int n = 1; n <= max_deg; ++n)
        for (auto r : ranks[n]) out[n].push_back(monic_unrank(F, n, r));
    return out;
}

std::vector<std::int64_t> sieve_counts(const Field& F, int max_deg, std::uint64_t enum_limit) {
    const int q = F.q();
    int listed = 0;
    while (listed < max_deg && ipow(q, listed + 1) <= enum_limit) ++listed;
    auto ranks = sieve_ranks(F, listed);
    std::vector<std::int64_t> pi(max_deg + 1, 0);
    for (int n = 1; n <= listed; ++n) pi[n] = static_cast<std::int64_t>(ranks[n].size());
    for (int n = listed + 1; n <= max_deg; ++n) {
        // coefficient of u^n in prod_{d<n} (1 - u^d)^(-pi(d))
        std::vector<unsigned __int128> series(n + 1, 0);
        series[0] = 1;
        for (int d = 1; d < n; ++d) {
            std::vector<unsigned __int128> next(n + 1, 0);
            for (int a = 0; a <= n; ++a) {
                if (series[a] == 0) continue;
                unsigned __int128 c = 1;  // C(pi + j - 1, j)
                for (int j = 0; a + j * d <= n; ++j) {
                    next[a + j * d] += series[a] * c;
                    c = c * static_cast<unsigned __int128>(pi[d] + j) / static_cast<unsigned __int128>(j + 1);
                }
            }
            series.swap(next);
        }
        pi[n] = static_cast<std::int64_t>(ipow(q, n)) - static_cast<std::int64_t>(series[n]);
    }
    return pi;
}

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// p-th root of a polynomial whose derivative vanishes (prime field, so a^(1/p) = a).
Poly pth_root(const Field& F, const Poly& f) {
    const int p = F.q();
    Poly r(deg(f) / p + 1, 0);
    for (int i = 0; i <= deg(f); i += p) r[i / p] = f[i];
    trim(r);
    return r;
}

void squarefree_decompose(const Field& F, const Poly& f, int scale, std::vector<std::pair<Poly, int>>& out) {
    if (deg(f) <= 0) return;
    Poly d = poly_derivative(F, f);
    if (d.empty()) {
        squarefree_decompose(F, pth_root(F, f), scale * F.q(), out);
        return;
    }
    Poly c = poly_gcd(F, f, d);
    Poly w = poly_div_exact(F, f, c);
    int i = 1;
    while (deg(w) > 0) {
        Poly y = poly_gcd(F, w, c);
        Poly z = poly_div_exact(F, w, y);
        if (deg(z) > 0) out.push_back({z, i * scale});
        ++i;
        w = y;
        c = poly_div_exact(F, c, y);
    }
    if (deg(c) > 0) squarefree_decompose(F, pth_root(F, c), scale * F.q(), out);
}

// a^(1 + q + ... + q^(d-1)) mod g, then raised to (q-1)/2: a^((q^d - 1)/2).
Poly half_norm_power(const Field& F, const Poly& a, int d, const Poly& g) {
    Poly s = poly_mod(F, a, g), p = s;
    for (int i = 1; i < d; ++i) {
        p = poly_powmod(F, p, F.q(), g);
        s = poly_mod(F, poly_mul(F, s, p), g);
    }
    return poly_powmod(F, s, (F.q() - 1) / 2, g);
}

void equal_degree_split(const Field& F, const Poly& g, int d, std::uint64_t& seed, std::vector<Poly>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    const int n = deg(g);
    for (;;) {
        Poly a(n);
        for (int i = 0; i < n; ++i) a[i] = static_cast<int>(splitmix(seed) % F.q());
        trim(a);
        if (deg(a) < 1) continue;
        Poly b = poly_sub(F, half_norm_power(F, a, d, g), poly_one());
        Poly h = poly_gcd(F, g, b);
        if (deg(h) > 0 && deg(h) < n) {
            equal_degree_split(F, h, d, seed, out);
            equal_degree_split(F, poly_div_exact(F, g, h), d, seed, out);
            return;
        }
    }
}

void factor_squarefree(const Field& F, const Poly& f, std::vector<Poly>& out) {
    Poly rest = f, x = poly_x();
    Poly h = poly_mod(F, x, rest);
    std::uint64_t seed = 0x5eed;
    for (int v : f) seed = seed * 131 + static_cast<std::uint64_t>(v);
    for (int i = 1; deg(rest) >= 2 * i; ++i) {
        h = poly_powmod(F, h, F.q(), rest);
        Poly g = poly_gcd(F, rest, poly_sub(F, h, x));
        if (deg(g) > 0) {
            equal_degree_split(F, g, i, seed, out);
            rest = poly_div_exact(F, rest, g);
            h = poly_mod(F, h, rest);
        }
    }
    if (deg(rest) > 0) out.push_back(rest);
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

}  // namespace

Factorization factorize(const Field& F, const Poly& f) {
    if (!is_monic(f)) throw std::invalid_argument("factorize: polynomial is not monic");
    std::vector<std::pair<Poly, int>> parts;
    squarefree_decompose(F, f, 1, parts);
    Factorization fac;
    for (auto& [g, m] : parts) {
        std::vector<Poly> primes;
        factor_squarefree(F, g, primes);
        for (auto& P : primes) {
            auto it = std::find_if(fac.begin(), fac.end(), [&](const PrimePower& pp) { return pp.prime == P; });
            if (it == fac.end())
                fac.push_back({P, m});
            else
                it->mult += m;
        }
    }
    std::sort(fac.begin(), fac.end(), [](const PrimePower& a, const PrimePower& b) { return poly_less(a.prime, b.prime); });
    return fac;
}

Poly expand(const Field& F, const Factorization& fac) {
    Poly r = poly_one();
    for (auto& pp : fac) r = poly_mul(F, r, poly_pow(F, pp.prime, pp.mult));
    return r;
}

int mobius(const Field& F, const Poly& f) {
    auto fac = factorize(F, f);
    for (auto& pp : fac)
        if (pp.mult > 1) return 0;
    return fac.size() % 2 ? -1 : 1;
}

int von_mangoldt(const Field& F, const Poly& f) {
    auto fac = factorize(F, f);
    return fac.size() == 1 ? deg(fac[0].prime) : 0;
}

std::uint64_t binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::uint64_t tau_k(const Factorization& fac, int k) {
    if (k < 1) throw std::invalid_argument("tau_k: k must be positive");
    std::uint64_t r = 1;
    for (auto& pp : fac) r *= binom(pp.mult + k - 1, k - 1);
    return r;
}

std::uint64_t tau_k(const Field& F, const Poly& f, int k) { return tau_k(factorize(F, f), k); }

std::pair<Poly, Poly> split_squarefree_part(const Field& F, const Poly& l) {
    Poly l1 = poly_one(), l2 = poly_one();
    for (auto& pp : factorize(F, l)) {
        if (pp.mult % 2) l1 = poly_mul(F, l1, pp.prime);
        l2 = poly_mul(F, l2, poly_pow(F, pp.prime, pp.mult / 2));
    }
    return {l1, l2};
}

std::string to_string(const Poly& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(f); i >= 0; --i) {
        if (f[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || f[i] != 1) os << f[i];
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

Poly parse_poly(const Field& F, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_poly: empty input");
    Poly r;
    if (s.find('x') == std::string::npos) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) r.push_back(F.reduce(std::stoll(tok)));
        trim(r);
        return r;
    }
    // sum of terms c*x^e, c x^e, x^e, x, c; '-' allowed
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        if (term.empty()) throw std::invalid_argument("parse_poly: malformed '" + text + "'");
        std::int64_t coef = 1;
        int e = 0;
        auto xp = term.find('x');
        if (xp == std::string::npos) {
            coef = std::stoll(term);
        } else {
            std::string c = term.substr(0, xp);
            if (!c.empty() && c.back() == '*') c.pop_back();
            if (!c.empty()) coef = std::stoll(c);
            std::string rest = term.substr(xp + 1);
            if (rest.empty())
                e = 1;
            else if (rest[0] == '^')
                e = std::stoi(rest.substr(1));
            else
                throw std::invalid_argument("parse_poly: malformed '" + text + "'");
        }
        if (static_cast<int>(r.size()) <= e) r.resize(e + 1, 0);
        r[e] = F.add(r[e], F.reduce(sign * coef));
    }
    trim(r);
    return r;
}

}  // namespace ffl
