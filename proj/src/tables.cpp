#include "ffl/tables.hpp"

#include <limits>
#include <stdexcept>

#include "ffl/characters.hpp"
#include "ffl/simd.hpp"

namespace ffl {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

Poly residue_poly(const Field& F, std::uint64_t idx, int d) {
    Poly u(d);
    for (int j = 0; j < d; ++j) {
        u[j] = static_cast<int>(idx % F.q());
        idx /= F.q();
    }
    trim(u);
    return u;
}

// Sets bit base + index(r) for every nonzero square r mod P by walking the even
// powers of a generator of (F_q[x]/P)^*.
void mark_squares(const Field& F, const Poly& P, std::uint64_t* bits, std::uint64_t base) {
    const int q = F.q(), d = deg(P);
    const std::uint64_t order = ipow(q, d) - 1;
    std::vector<std::uint64_t> ell;
    std::uint64_t t = order;
    for (std::uint64_t f = 2; f * f <= t; ++f)
        if (t % f == 0) {
            ell.push_back(f);
            while (t % f == 0) t /= f;
        }
    if (t > 1) ell.push_back(t);
    Poly alpha;
    std::uint64_t cand_limit = ipow(q, std::min(d, 3));
    for (std::uint64_t c = 2; c < cand_limit && alpha.empty(); ++c) {
        Poly a = residue_poly(F, c, d);
        bool primitive = true;
        for (auto l : ell)
            if (poly_powmod(F, a, order / l, P) == poly_one()) {
                primitive = false;
                break;
            }
        if (primitive) alpha = a;
    }
    if (alpha.empty()) throw std::logic_error("mark_squares: no small generator found");
    const int da = deg(alpha);
    std::vector<int> r(d, 0), tmp(d + da + 1);
    r[0] = 1;
    for (std::uint64_t k = 0; k < order; ++k) {
        if (k % 2 == 0) {
            std::uint64_t idx = 0;
            for (int j = d - 1; j >= 0; --j) idx = idx * q + r[j];
            bits[(base + idx) >> 6] |= std::uint64_t{1} << ((base + idx) & 63);
        }
        std::fill(tmp.begin(), tmp.end(), 0);
        for (int a = 0; a <= da; ++a) {
            if (alpha[a] == 0) continue;
            for (int j = 0; j < d; ++j) tmp[a + j] += alpha[a] * r[j];
        }
        for (int top = d + da - 1; top >= d; --top) {
            int c = tmp[top] % q;
            if (c)
                for (int j = 0; j < d; ++j) tmp[top - d + j] += (q - c) * P[j];
            tmp[top] = 0;
        }
        for (int j = 0; j < d; ++j) r[j] = tmp[j] % q;
    }
}

}  // namespace

MonicTable::MonicTable(const Field& F, int N) : F_(F), N_(N) {
    if (N < 0) throw std::invalid_argument("MonicTable: negative degree");
    const int q = F.q();
    std::uint64_t total = monic_count_upto(q, N);
    if (total > 0xFFFFFFF0ULL) throw std::invalid_argument("MonicTable: too many polynomials");
    offset_.resize(N + 2);
    for (int n = 0; n <= N + 1; ++n) offset_[n] = n == 0 ? 0 : static_cast<std::uint32_t>(monic_count_upto(q, n - 1));
    degree_.resize(total);
    for (int n = 0; n <= N; ++n)
        for (std::uint32_t i = offset_[n]; i < offset_[n + 1]; ++i) degree_[i] = static_cast<std::uint8_t>(n);
    spf_.assign(total, kUnset);
    cof_.assign(total, 0);
    rest_.assign(total, 0);
    expo_.assign(total, 0);
    spf_[0] = 0;

    std::vector<int> P(N + 1), b(N + 1), f(N + 1);
    std::vector<std::uint64_t> place(N + 1);
    for (int n = 1; n <= N; ++n) {
        for (int k = 0; k < n; ++k) place[k] = ipow(q, n - 1 - k);
        for (std::uint32_t pi : primes_) {
            int i = degree_[pi];
            int m = n - i;
            if (m < 1) break;
            Poly Pp = monic_from_index(F, pi);
            std::copy(Pp.begin(), Pp.end(), P.begin());
            // b starts at x^m (rank 0); f = P * x^m
            std::fill(f.begin(), f.end(), 0);
            std::fill(b.begin(), b.end(), 0);
            for (int k = 0; k <= i; ++k) f[k + m] = P[k];
            std::uint64_t bcount = ipow(q, m);
            for (std::uint64_t br = 0; br < bcount; ++br) {
                std::uint64_t rank = 0;
                for (int k = 0; k < n; ++k) rank += static_cast<std::uint64_t>(f[k]) * place[k];
                std::uint32_t fi = offset_[n] + static_cast<std::uint32_t>(rank);
                if (spf_[fi] == kUnset) {
                    spf_[fi] = pi;
                    cof_[fi] = offset_[m] + static_cast<std::uint32_t>(br);
                }
                // next b in rank order: least significant digit is b_{m-1}; every digit step adds P x^t
                for (int t = m - 1; t >= 0; --t) {
                    for (int k = 0; k <= i; ++k) {
                        int v = f[t + k] + P[k];
                        f[t + k] = v >= q ? v - q : v;
                    }
                    if (++b[t] < q) break;
                    b[t] = 0;
                }
            }
        }
        for (std::uint32_t fi = offset_[n]; fi < offset_[n + 1]; ++fi) {
            if (spf_[fi] == kUnset) {
                spf_[fi] = fi;
                cof_[fi] = 0;
                primes_.push_back(fi);
                expo_[fi] = 1;
                rest_[fi] = 0;
                continue;
            }
            std::uint32_t c = cof_[fi];
            if (c != 0 && spf_[c] == spf_[fi]) {
                expo_[fi] = static_cast<std::uint8_t>(expo_[c] + 1);
                rest_[fi] = rest_[c];
            } else {
                expo_[fi] = 1;
                rest_[fi] = c;
            }
        }
    }
}

int MonicTable::von_mangoldt(std::uint32_t i) const {
    if (i == 0) return 0;
    return rest_[i] == 0 ? degree_[spf_[i]] : 0;
}

std::uint64_t MonicTable::tau_k(std::uint32_t i, int k) const {
    std::uint64_t r = 1;
    while (i != 0) {
        r *= binom(expo_[i] + k - 1, k - 1);
        i = rest_[i];
    }
    return r;
}

int MonicTable::mobius(std::uint32_t i) const {
    int r = 1;
    while (i != 0) {
        if (expo_[i] > 1) return 0;
        r = -r;
        i = rest_[i];
    }
    return r;
}

CharacterEngine::CharacterEngine(const MonicTable& table, int n, std::uint64_t square_table_limit) : T_(table), n_(n) {
    const Field& F = T_.field();
    const int q = F.q();
    for (std::uint32_t p : T_.primes()) {
        if (T_.degree(p) < n_) {
            small_.push_back(p);
        } else {
            Poly P = T_.poly(p);
            large_coef_.insert(large_coef_.end(), P.begin(), P.end());
        }
    }
    if (T_.size() <= 0x10000) {
        links_.resize(T_.size());
        for (std::uint32_t i = 0; i < T_.size(); ++i) links_[i] = T_.prime_factor(i) | (T_.cofactor(i) << 16);
    }
    std::size_t start = 0;
    while (start < small_.size()) {
        int d = T_.degree(small_[start]);
        std::size_t end = start;
        while (end < small_.size() && T_.degree(small_[end]) == d) ++end;
        Group G;
        G.d = d;
        G.first = start;
        G.count = end - start;
        G.xmod.assign(static_cast<std::size_t>(n_ + 1) * d * G.count, 0);
        G.sq_offset.assign(G.count, std::numeric_limits<std::uint64_t>::max());
        std::uint64_t psize = ipow(q, d);
        for (std::size_t p = 0; p < G.count; ++p) {
            Poly P = T_.poly(small_[start + p]);
            Poly xi = poly_one();
            for (int i = 0; i <= n_; ++i) {
                Poly r = poly_mod(F, xi, P);
                for (int j = 0; j < d; ++j)
                    G.xmod[(static_cast<std::size_t>(i) * d + j) * G.count + p] = j < static_cast<int>(r.size()) ? r[j] : 0;
                xi = poly_mul(F, xi, poly_x());
            }
            if (psize <= square_table_limit) {
                G.sq_offset[p] = sq_bits_used_;
                sq_bits_used_ += psize;
                squares_.resize((sq_bits_used_ + 63) / 64, 0);
                mark_squares(F, P, squares_.data(), G.sq_offset[p]);
            }
        }
        groups_.push_back(std::move(G));
        start = end;
    }
}

void CharacterEngine::prime_values(const Poly& D, std::vector<std::int8_t>& out) const {
    if (deg(D) != n_ || !is_monic(D)) throw std::invalid_argument("CharacterEngine: modulus has the wrong degree");
    const Field& F = T_.field();
    const auto& K = simd::active();
    out.resize(small_.size());
    std::vector<std::int32_t> dcoef(D.begin(), D.end());
    std::vector<std::uint32_t> idx;
    for (const Group& G : groups_) {
        idx.resize(G.count);
        K.residue_indices(G.xmod.data(), G.count, dcoef.data(), n_, G.d, G.count, F.q(), idx.data());
        for (std::size_t p = 0; p < G.count; ++p) {
            if (G.sq_offset[p] != std::numeric_limits<std::uint64_t>::max()) {
                std::uint64_t bit = G.sq_offset[p] + idx[p];
                out[G.first + p] = idx[p] == 0 ? 0 : (((squares_[bit >> 6] >> (bit & 63)) & 1) ? 1 : -1);
            }
            else
                out[G.first + p] = static_cast<std::int8_t>(jacobi(F, D, T_.poly(small_[G.first + p])));
        }
    }
}

void CharacterEngine::evaluate(const Poly& D, std::vector<std::int8_t>& out) const {
    const Field& F = T_.field();
    const int q = F.q();
    std::vector<std::int8_t> pv;
    prime_values(D, pv);
    out.assign(T_.size(), 0);
    out[0] = 1;
    std::size_t next_small = 0;
    std::size_t large_pos = 0;
    std::vector<int> r(T_.max_degree() + 1);
    const bool packed = !links_.empty();
    for (std::uint32_t i = 1; i < T_.size(); ++i) {
        if (packed) {
            std::uint32_t l = links_[i];
            if ((l & 0xFFFF) != i) {
                out[i] = static_cast<std::int8_t>(out[l & 0xFFFF] * out[l >> 16]);
                continue;
            }
        } else if (!T_.is_prime(i)) {
            out[i] = static_cast<std::int8_t>(out[T_.prime_factor(i)] * out[T_.cofactor(i)]);
            continue;
        }
        int d = T_.degree(i);
        if (d < n_) {
            out[i] = pv[next_small++];
            continue;
        }
        // (D/P) = (P/D) = (c/D) (r'/D) with P mod D = c r', r' monic of degree < n
        for (int k = 0; k <= d; ++k) r[k] = large_coef_[large_pos + k];
        large_pos += d + 1;
        for (int k = d; k >= n_; --k) {
            int c = r[k];
            if (c == 0) continue;
            for (int j = 0; j < n_; ++j) r[k - n_ + j] = F.sub(r[k - n_ + j], F.mul(c, D[j]));
            r[k] = 0;
        }
        int top = n_ - 1;
        while (top >= 0 && r[top] == 0) --top;
        if (top < 0) {
            out[i] = 0;
            continue;
        }
        int c = r[top];
        int cinv = F.inv(c);
        std::uint32_t ri = 0;
        for (int k = 0; k < top; ++k) ri = ri * q + static_cast<std::uint32_t>(F.mul(r[k], cinv));
        ri += T_.offset(top);
        int sign = (n_ % 2 == 1) ? F.legendre(c) : 1;
        out[i] = static_cast<std::int8_t>(sign * out[ri]);
    }
}

std::vector<std::int64_t> degree_sums(const MonicTable& T, const std::vector<std::int8_t>& chi, int N) {
    const auto& K = simd::active();
    std::vector<std::int64_t> b(N + 1);
    for (int n = 0; n <= N; ++n) b[n] = K.sum_i8(chi.data() + T.offset(n), T.offset(n + 1) - T.offset(n));
    return b;
}

std::vector<std::uint32_t> tau_table(const MonicTable& T, int k) {
    std::vector<std::uint32_t> w(T.size());
    for (std::uint32_t i = 0; i < T.size(); ++i) w[i] = static_cast<std::uint32_t>(T.tau_k(i, k));
    return w;
}

std::vector<std::int64_t> degree_sums_weighted(const MonicTable& T, const std::vector<std::int8_t>& chi,
                                               const std::vector<std::uint32_t>& w, int N) {
    std::vector<std::int64_t> b(N + 1, 0);
    for (int n = 0; n <= N; ++n)
        for (std::uint32_t i = T.offset(n); i < T.offset(n + 1); ++i) b[n] += static_cast<std::int64_t>(w[i]) * chi[i];
    return b;
}

}  // namespace ffl
