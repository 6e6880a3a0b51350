#include "ffl/moments.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "ffl/constants.hpp"
#include "ffl/eulerhadamard.hpp"
#include "ffl/parallel.hpp"

namespace ffl {

namespace {

const char* kTrendNote = "asymptotic prediction; desk scale supports trend comparisons only";

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

std::string ell_string(const EnsembleSpec& s) { return s.ell.empty() ? "1" : to_string(s.ell); }

MomentReport make_report(const FamilyValues& fam, const std::string& kind, double k, const std::vector<double>& v,
                         double predicted) {
    MomentReport r;
    r.kind = kind;
    r.q = fam.spec.q;
    r.g = fam.spec.g;
    r.k = k;
    r.X = fam.spec.X;
    r.ell = ell_string(fam.spec);
    r.n = v.size();
    r.empirical = pairwise_mean(v);
    r.predicted = predicted;
    if (fam.spec.mode == EnsembleMode::Sample && v.size() > 1) {
        std::vector<double> dev(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - r.empirical) * (v[i] - r.empirical);
        double var = pairwise_sum(dev.data(), dev.size()) / static_cast<double>(v.size() - 1);
        r.stderr_ = std::sqrt(var / static_cast<double>(v.size()));
    } else {
        r.stderr_ = std::numeric_limits<double>::quiet_NaN();
    }
    r.rel_deviation = predicted != 0 ? std::abs(r.empirical / predicted - 1) : std::numeric_limits<double>::quiet_NaN();
    r.note = kTrendNote;
    return r;
}

double central_from(const EnsembleSpec& s, const std::vector<std::int64_t>& c) {
    LPoly L;
    L.q = s.q;
    L.g = s.g;
    L.c = c;
    return L.central_value();
}

void require_X(const FamilyValues& fam) {
    if (fam.spec.X <= 0 || fam.P.size() != fam.L.size()) throw std::invalid_argument("ensemble was collected without X");
}

}  // namespace

double pairwise_mean(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

FamilyValues collect_family(const EnsembleSpec& spec) {
    Field F(spec.q);
    if (spec.g < 1) throw std::invalid_argument("g must be at least 1");
    if (!spec.ell.empty() && !is_monic(spec.ell)) throw std::invalid_argument("twist must be monic");
    FamilyValues fam;
    fam.spec = spec;
    const int n = 2 * spec.g + 1;
    auto H = squarefree_ranks(F, n);
    fam.family_size = H.size();

    std::vector<std::size_t> index;
    if (spec.mode == EnsembleMode::Full) {
        index.resize(H.size());
        for (std::size_t i = 0; i < H.size(); ++i) index[i] = i;
    } else {
        if (spec.count == 0) throw std::invalid_argument("sample mode needs a positive count");
        index.resize(spec.count);
        for (std::uint64_t i = 0; i < spec.count; ++i)
            index[i] = static_cast<std::size_t>(
                (static_cast<unsigned __int128>(counter_draw(spec.seed, i)) * H.size()) >> 64);
    }
    const std::size_t m = index.size();
    fam.ranks.resize(m);
    for (std::size_t i = 0; i < m; ++i) fam.ranks[i] = H[index[i]];

    // coefficients: cache first, else the character engine
    LCache cache;
    std::string path = spec.cache_dir.empty() ? "" : lcache_path(spec.cache_dir, spec.q, spec.g);
    bool cached = !path.empty() && read_lcache(path, spec.q, spec.g, H.size(), cache);
    fam.coeffs.resize(m);
    if (cached) {
        for (std::size_t i = 0; i < m; ++i) fam.coeffs[i] = cache.rows[index[i]];
        fam.from_cache = true;
    } else {
        LContext ctx(F, spec.g);
        bool write_back = !path.empty() && spec.mode == EnsembleMode::Full;
        parallel_blocks(m, spec.workers, [&](std::size_t b, std::size_t e) {
            std::vector<std::int8_t> chi;
            for (std::size_t i = b; i < e; ++i) {
                Poly D = monic_unrank(F, n, fam.ranks[i]);
                ctx.characters(D, chi);
                fam.coeffs[i] = ctx.lpoly(D, chi).c;
            }
        });
        if (write_back) {
            LCache out;
            out.q = spec.q;
            out.g = spec.g;
            out.rows = fam.coeffs;
            try {
                write_lcache(path, out);
            } catch (const std::exception& ex) {
                std::cerr << "warning: could not write cache " << path << ": " << ex.what() << "\n";
            }
        }
    }

    fam.L.resize(m);
    for (std::size_t i = 0; i < m; ++i) fam.L[i] = central_from(spec, fam.coeffs[i]);
    set_twist(fam, spec.ell);
    set_euler_cutoff(fam, spec.X);
    return fam;
}

void set_euler_cutoff(FamilyValues& fam, int X) {
    fam.spec.X = X;
    fam.P.clear();
    if (X <= 0) return;
    fam.P.resize(fam.coeffs.size());
    parallel_blocks(fam.coeffs.size(), fam.spec.workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            LPoly L;
            L.q = fam.spec.q;
            L.g = fam.spec.g;
            L.c = fam.coeffs[i];
            fam.P[i] = euler_part(prime_sums_from_coeffs(L, X), L.q, X, 0.5);
        }
    });
}

void set_twist(FamilyValues& fam, const Poly& ell) {
    if (!ell.empty() && !is_monic(ell)) throw std::invalid_argument("twist must be monic");
    Field F(fam.spec.q);
    fam.spec.ell = ell;
    fam.twist.assign(fam.ranks.size(), 1);
    if (ell.empty() || deg(ell) == 0) return;
    const int n = 2 * fam.spec.g + 1;
    parallel_blocks(fam.ranks.size(), fam.spec.workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            fam.twist[i] = static_cast<std::int8_t>(jacobi(F, monic_unrank(F, n, fam.ranks[i]), ell));
    });
}

std::vector<double> hadamard_values(const FamilyValues& fam) {
    require_X(fam);
    std::vector<double> z(fam.L.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::abs(fam.L[i]) > kZeroThreshold ? fam.L[i] / fam.P[i] : 0.0;
    return z;
}

MomentReport moment_L(const FamilyValues& fam, int k) {
    if (k < 0 || k > 4) throw std::invalid_argument("moment_L: k in 0..4");
    std::vector<double> v(fam.L.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(fam.L[i], k);
    return make_report(fam, "L", k, v, conjectured_Ik(fam.spec.q, fam.spec.g, k));
}

MomentReport twisted_moment(const FamilyValues& fam, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("twisted_moment: k in 1..3");
    std::vector<double> v(fam.L.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(fam.L[i], k) * fam.twist[i];
    Field F(fam.spec.q);
    TwistShape shape = fam.spec.ell.empty() ? TwistShape{} : twist_shape(F, fam.spec.ell);
    return make_report(fam, "twisted", k, v, leading_Ik(fam.spec.q, shape, fam.spec.g, k));
}

MomentReport moment_P(const FamilyValues& fam, double k) {
    require_X(fam);
    std::vector<double> v(fam.P.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(fam.P[i], k);
    auto r = make_report(fam, "P", k, v, euler_moment_prediction(fam.spec.q, k, fam.spec.X));
    if (k < -1) r.note += "; heavy-tailed for k < -1, reported only";
    return r;
}

MomentReport moment_Z(const FamilyValues& fam, double k) {
    auto z = hadamard_values(fam);
    for (auto& x : z) x = std::pow(x, k);
    double pred = k == std::floor(k) && k >= 0 && k <= 3 ? hadamard_moment_prediction(static_cast<int>(k), fam.spec.g, fam.spec.X)
                                                         : std::numeric_limits<double>::quiet_NaN();
    return make_report(fam, "Z", k, z, pred);
}

MomentReport moment_LPinv(const FamilyValues& fam, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("moment_LPinv: k in 1..3");
    auto r = moment_Z(fam, k);
    r.kind = "LPinv";
    return r;
}

double splitting_ratio(const FamilyValues& fam, double k) {
    std::vector<double> l(fam.L.size());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::pow(fam.L[i], k);
    double lk = pairwise_mean(l);
    double pk = moment_P(fam, k).empirical;
    double zk = moment_Z(fam, k).empirical;
    if (pk == 0 || zk == 0) throw std::domain_error("splitting_ratio: zero denominator");
    return lk / (pk * zk);
}

}  // namespace ffl
