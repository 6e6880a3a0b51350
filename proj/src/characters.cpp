#include "ffl/characters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ffl {

int legendre_const(const Field& F, int c) { return F.legendre(c); }

int residue_symbol(const Field& F, const Poly& f, const Poly& P) {
    if (!is_monic(P) || deg(P) < 1 || !is_irreducible(F, P))
        throw std::invalid_argument("residue_symbol: modulus is not a monic irreducible");
    Poly r = poly_mod(F, f, P);
    if (r.empty()) return 0;
    // exponent (|P|-1)/2 = ((q-1)/2)(1 + q + ... + q^(d-1)); build it without overflow
    Poly s = r, p = r;
    for (int i = 1; i < deg(P); ++i) {
        p = poly_powmod(F, p, F.q(), P);
        s = poly_mod(F, poly_mul(F, s, p), P);
    }
    Poly v = poly_powmod(F, s, (F.q() - 1) / 2, P);
    if (v == poly_one()) return 1;
    if (v == Poly{F.q() - 1}) return -1;
    throw std::logic_error("residue_symbol: power is not +-1");
}

int jacobi(const Field& F, const Poly& A0, const Poly& B0) {
    if (!is_monic(B0)) throw std::invalid_argument("jacobi: modulus must be monic");
    Poly A = A0, B = B0;
    trim(A);
    int result = 1;
    for (;;) {
        if (deg(B) == 0) return result;
        A = poly_mod(F, A, B);
        if (A.empty()) return 0;
        int c = A.back();
        if (c != 1) {
            if (deg(B) % 2 == 1) result *= F.legendre(c);
            A = poly_scale(F, A, F.inv(c));
        }
        std::swap(A, B);  // (A/B) = (B/A) for monic A, B when q = 1 mod 4
    }
}

int jacobi_by_factorization(const Field& F, const Poly& A, const Poly& B) {
    int r = 1;
    for (auto& pp : factorize(F, B)) {
        int s = residue_symbol(F, A, pp.prime);
        if (s == 0) return 0;
        if (pp.mult % 2) r *= s;
    }
    return r;
}

QuadChar::QuadChar(const Field& F, Poly D) : F_(F), D_(std::move(D)) {
    if (!is_monic(D_)) throw std::invalid_argument("QuadChar: modulus must be monic");
    fac_ = factorize(F_, D_);
}

int QuadChar::operator()(const Poly& f) const {
    if (!is_monic(f)) throw std::invalid_argument("QuadChar: argument must be monic");
    return jacobi(F_, D_, f);
}

cplx exp_e(const Field& F, int a1) {
    double t = 2.0 * std::numbers::pi * F.reduce(a1) / F.q();
    return {std::cos(t), std::sin(t)};
}

namespace {

Poly residue_from_index(const Field& F, std::uint64_t idx, int n) {
    Poly u(n);
    for (int i = 0; i < n; ++i) {
        u[i] = static_cast<int>(idx % F.q());
        idx /= F.q();
    }
    trim(u);
    return u;
}

std::vector<cplx> roots_of_unity(const Field& F) {
    std::vector<cplx> z(F.q());
    for (int c = 0; c < F.q(); ++c) z[c] = exp_e(F, c);
    return z;
}

}  // namespace

cplx gauss_sum_direct(const Field& F, const Poly& V, const Poly& f, std::uint64_t budget) {
    if (!is_monic(f) || deg(f) < 1) throw std::invalid_argument("gauss_sum_direct: modulus must be monic of degree >= 1");
    const int n = deg(f);
    std::uint64_t size = ipow(F.q(), n);
    if (size > budget) throw std::length_error("gauss_sum_direct: |f| exceeds the enumeration budget");
    cplx sum = 0;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        Poly u = residue_from_index(F, idx, n);
        int chi = jacobi(F, u, f);
        if (chi == 0) continue;
        Poly r = poly_mod(F, poly_mul(F, u, V), f);
        int a1 = deg(r) == n - 1 ? r[n - 1] : 0;
        sum += static_cast<double>(chi) * exp_e(F, a1);
    }
    return sum;
}

GaussSumTable::GaussSumTable(const Field& F, const Poly& f, std::uint64_t budget) : F_(F), f_(f), n_(deg(f)) {
    if (!is_monic(f) || n_ < 1) throw std::invalid_argument("GaussSumTable: modulus must be monic of degree >= 1");
    const int q = F.q();
    size_ = ipow(q, n_);
    chi_.assign(size_, 0);
    if (size_ <= budget) {
        for (std::uint64_t idx = 0; idx < size_; ++idx) chi_[idx] = static_cast<std::int8_t>(jacobi(F, residue_from_index(F, idx, n_), f));
        return;
    }
    // above the budget: (u/f) = prod (u/Q)^e with a symbol table per prime Q
    auto fac = factorize(F, f);
    for (std::uint64_t idx = 0; idx < size_; ++idx) chi_[idx] = 1;
    std::vector<int> digits(n_);
    for (auto& pp : fac) {
        const Poly& Q = pp.prime;
        const int dq = deg(Q);
        std::uint64_t qsize = ipow(q, dq);
        std::vector<std::int8_t> sym(qsize);
        for (std::uint64_t r = 0; r < qsize; ++r) sym[r] = static_cast<std::int8_t>(jacobi(F, residue_from_index(F, r, dq), Q));
        for (std::uint64_t idx = 0; idx < size_; ++idx) {
            std::uint64_t t = idx;
            for (int i = 0; i < n_; ++i) {
                digits[i] = static_cast<int>(t % q);
                t /= q;
            }
            for (int i = n_ - 1; i >= dq; --i) {
                int c = digits[i];
                if (c == 0) continue;
                for (int k = 0; k < dq; ++k) digits[i - dq + k] = F.sub(digits[i - dq + k], F.mul(c, Q[k]));
                digits[i] = 0;
            }
            std::uint64_t r = 0;
            for (int k = dq - 1; k >= 0; --k) r = r * q + digits[k];
            int s = sym[r];
            if (pp.mult % 2 == 0) s = s * s;
            chi_[idx] = static_cast<std::int8_t>(chi_[idx] * s);
        }
    }
}

std::vector<int> GaussSumTable::functional(const Poly& V) const {
    // w_i = coefficient of x^(n-1) in x^i V mod f, so a1(uV/f) = sum u_i w_i
    std::vector<int> w(n_);
    Poly h = poly_mod(F_, V, f_);
    for (int i = 0; i < n_; ++i) {
        w[i] = deg(h) == n_ - 1 ? h[n_ - 1] : 0;
        h = poly_mod(F_, poly_mul(F_, h, poly_x()), f_);
    }
    return w;
}

cplx GaussSumTable::direct(const Poly& V) const {
    const int q = F_.q();
    auto w = functional(V);
    std::vector<std::int64_t> bucket(q, 0);
    std::vector<int> digits(n_, 0);
    int L = 0;
    for (std::uint64_t idx = 0; idx < size_; ++idx) {
        bucket[L] += chi_[idx];
        for (int i = 0; i < n_; ++i) {
            L = F_.add(L, w[i]);
            if (++digits[i] < q) break;
            digits[i] = 0;
        }
    }
    auto z = roots_of_unity(F_);
    cplx s = 0;
    for (int c = 0; c < q; ++c) s += static_cast<double>(bucket[c]) * z[c];
    return s;
}

void GaussSumTable::build_transform() {
    const int q = F_.q();
    auto z = roots_of_unity(F_);
    hat_.assign(size_, 0);
    for (std::uint64_t i = 0; i < size_; ++i) hat_[i] = chi_[i];
    std::vector<cplx> tmp(q);
    std::uint64_t stride = 1;
    for (int axis = 0; axis < n_; ++axis, stride *= q) {
        for (std::uint64_t base = 0; base < size_; base += stride * q) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (int k = 0; k < q; ++k) {
                    cplx s = 0;
                    for (int c = 0; c < q; ++c) s += hat_[base + off + c * stride] * z[(c * k) % q];
                    tmp[k] = s;
                }
                for (int k = 0; k < q; ++k) hat_[base + off + k * stride] = tmp[k];
            }
        }
    }
}

cplx GaussSumTable::query(const Poly& V) const {
    if (hat_.empty()) return direct(V);
    auto w = functional(V);
    std::uint64_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * F_.q() + w[i];
    return hat_[idx];
}

cplx gauss_sum_closed(const Field& F, const Poly& V, const Poly& P, int j) {
    if (j < 1) throw std::invalid_argument("gauss_sum_closed: j must be positive");
    const double normP = std::pow(static_cast<double>(F.q()), deg(P));
    Poly V1 = V;
    trim(V1);
    long alpha = -1;  // -1 encodes alpha = infinity (V = 0)
    if (!V1.empty()) {
        alpha = 0;
        for (;;) {
            auto [quo, rem] = poly_divmod(F, V1, P);
            if (!rem.empty()) break;
            V1 = quo;
            ++alpha;
        }
    }
    bool inf = alpha < 0;
    if (inf || j <= alpha) {
        if (j % 2) return 0.0;
        return std::pow(normP, j) - std::pow(normP, j - 1);
    }
    if (j == alpha + 1) {
        if (j % 2 == 0) return -std::pow(normP, j - 1);
        return static_cast<double>(jacobi(F, V1, P)) * std::pow(normP, j - 0.5);
    }
    return 0.0;
}

bool IdentityCheck::equal(double tol) const {
    return std::abs(identity.real() - static_cast<double>(direct)) <= tol * std::max(1.0, std::abs(static_cast<double>(direct))) &&
           std::abs(identity.imag()) <= tol * std::max(1.0, std::abs(static_cast<double>(direct)));
}

IdentityCheck char_sum_lemma32(const Field& F, const Poly& f, int m) {
    if (!is_monic(f)) throw std::invalid_argument("char_sum_lemma32: f must be monic");
    const int q = F.q(), n = deg(f);
    IdentityCheck out{0, 0.0};
    for (auto& h : enumerate_monic(F, m)) out.direct += jacobi(F, f, h);
    if (n == 0) {
        out.identity = std::pow(static_cast<double>(q), m);
        return out;
    }
    GaussSumTable G(F, f);
    auto sum_upto = [&](int top) {
        cplx s = 0;
        for (int d = 0; d <= top; ++d)
            for (auto& V : enumerate_monic(F, d)) s += G.direct(V);
        return s;
    };
    const double normf = std::pow(static_cast<double>(q), n);
    if (n % 2 == 0) {
        cplx inner = G.direct(Poly{}) + static_cast<double>(q) * sum_upto(n - m - 2) - sum_upto(n - m - 1);
        out.identity = std::pow(static_cast<double>(q), m) / normf * inner;
    } else {
        cplx s = 0;
        if (n - m - 1 >= 0)
            for (auto& V : enumerate_monic(F, n - m - 1)) s += G.direct(V);
        out.identity = std::pow(static_cast<double>(q), m + 0.5) / normf * s;
    }
    return out;
}

std::vector<Poly> smooth_over(const Field& F, const Poly& f, int max_deg) {
    std::vector<Poly> primes;
    if (deg(f) > 0)
        for (auto& pp : factorize(F, f)) primes.push_back(pp.prime);
    std::vector<Poly> out{poly_one()};
    for (auto& P : primes) {
        std::vector<Poly> next;
        for (auto& C : out) {
            Poly c = C;
            while (deg(c) <= max_deg) {
                next.push_back(c);
                c = poly_mul(F, c, P);
            }
        }
        out.swap(next);
    }
    return out;
}

IdentityCheck fundamental_sum_lemma31(const Field& F, const Poly& f, int g) {
    if (!is_monic(f)) throw std::invalid_argument("fundamental_sum_lemma31: f must be monic");
    const int q = F.q();
    IdentityCheck out{0, 0.0};
    for (auto& D : enumerate_squarefree(F, 2 * g + 1)) out.direct += jacobi(F, D, f);
    std::int64_t rhs = 0;
    for (auto& C : smooth_over(F, f, g)) {
        int m1 = 2 * g + 1 - 2 * deg(C), m2 = 2 * g - 1 - 2 * deg(C);
        if (m1 >= 0)
            for (auto& h : enumerate_monic(F, m1)) rhs += jacobi(F, f, h);
        if (m2 >= 0)
            for (auto& h : enumerate_monic(F, m2)) rhs -= static_cast<std::int64_t>(q) * jacobi(F, f, h);
    }
    out.identity = static_cast<double>(rhs);
    return out;
}

double twist_average(const Field& F, int g, const Poly& l) {
    std::int64_t s = 0;
    auto H = enumerate_squarefree(F, 2 * g + 1);
    for (auto& D : H) s += jacobi(F, D, l);
    return static_cast<double>(s) / static_cast<double>(H.size());
}

double square_twist_prediction(const Field& F, const Poly& l) {
    double r = 1.0;
    if (deg(l) <= 0) return r;
    for (auto& pp : factorize(F, l)) r /= 1.0 + std::pow(static_cast<double>(F.q()), -deg(pp.prime));
    return r;
}

}  // namespace ffl
