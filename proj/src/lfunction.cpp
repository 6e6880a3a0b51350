#include "ffl/lfunction.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ffl {

cplx LPoly::eval(cplx u) const {
    cplx acc = 0;
    for (int n = static_cast<int>(c.size()) - 1; n >= 0; --n) acc = acc * u + static_cast<double>(c[n]);
    return acc;
}

double LPoly::eval(double u) const {
    double acc = 0;
    for (int n = static_cast<int>(c.size()) - 1; n >= 0; --n) acc = acc * u + static_cast<double>(c[n]);
    return acc;
}

double LPoly::central_value() const { return eval(1.0 / std::sqrt(static_cast<double>(q))); }

std::int64_t LPoly::functional_equation_defect() const {
    std::int64_t worst = 0;
    for (int n = 0; n <= g; ++n) {
        std::int64_t scaled = c[n];
        for (int i = 0; i < g - n; ++i) scaled *= q;
        worst = std::max<std::int64_t>(worst, std::llabs(c[2 * g - n] - scaled));
    }
    return worst;
}

double LPoly::functional_equation_residual(cplx u) const {
    cplx lhs = eval(u);
    cplx rhs = std::pow(static_cast<double>(q) * u * u, g) * eval(1.0 / (static_cast<double>(q) * u));
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

void validate_discriminant(const Field& F, const Poly& D) {
    if (!is_monic(D)) throw std::invalid_argument("discriminant must be monic");
    if (deg(D) % 2 == 0 || deg(D) < 1) throw std::invalid_argument("discriminant must have odd degree 2g+1");
    if (!is_squarefree(F, D)) throw std::invalid_argument("discriminant must be square-free");
}

LPoly compute_coeffs_reference(const Field& F, const Poly& D) {
    validate_discriminant(F, D);
    LPoly L;
    L.D = D;
    L.q = F.q();
    L.g = (deg(D) - 1) / 2;
    L.c.assign(2 * L.g + 1, 0);
    for (int n = 0; n <= 2 * L.g; ++n)
        for (auto& f : enumerate_monic(F, n)) L.c[n] += jacobi(F, D, f);
    return L;
}

std::vector<std::int64_t> coeffs_from_prime_sums(int q, int g, const std::vector<std::int64_t>& s) {
    (void)q;
    std::vector<std::int64_t> c(2 * g + 1, 0);
    c[0] = 1;
    for (int n = 1; n <= 2 * g; ++n) {
        std::int64_t acc = 0;
        for (int r = 1; r <= n; ++r) acc += s[r] * c[n - r];
        if (acc % n != 0) throw std::logic_error("coeffs_from_prime_sums: non-integral coefficient");
        c[n] = acc / n;
    }
    return c;
}

namespace {

using lcplx = std::complex<long double>;

void eval_with_derivative(const std::vector<long double>& a, lcplx z, lcplx& p, lcplx& dp) {
    p = 0;
    dp = 0;
    for (int n = static_cast<int>(a.size()) - 1; n >= 0; --n) {
        dp = dp * z + p;
        p = p * z + a[n];
    }
}

bool aberth(const std::vector<long double>& a, long double radius, std::vector<lcplx>& z) {
    const int N = static_cast<int>(a.size()) - 1;
    z.resize(N);
    const long double two_pi = 6.283185307179586476925286766559L;
    for (int k = 0; k < N; ++k) z[k] = std::polar(radius, two_pi * k / N + 0.4L);
    for (int it = 0; it < 500; ++it) {
        long double worst = 0;
        for (int i = 0; i < N; ++i) {
            lcplx p, dp;
            eval_with_derivative(a, z[i], p, dp);
            if (p == lcplx(0)) continue;
            lcplx ratio = p / dp;
            lcplx s = 0;
            for (int j = 0; j < N; ++j)
                if (j != i) s += 1.0L / (z[i] - z[j]);
            lcplx w = ratio / (1.0L - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / std::max(std::abs(z[i]), 1e-30L));
        }
        if (worst < 1e-17L) return true;
        // multiple roots stall at the rounding floor of Horner's rule
        if (it >= 20 && worst < 1e-6L) {
            bool floor = true;
            for (int i = 0; i < N && floor; ++i) {
                lcplx p, dp;
                eval_with_derivative(a, z[i], p, dp);
                long double bound = 0, zn = 1;
                for (int n = 0; n <= N; ++n, zn *= std::abs(z[i])) bound += std::fabs(a[n]) * zn;
                floor = std::abs(p) <= 64.0L * N * std::numeric_limits<long double>::epsilon() * bound;
            }
            if (floor) return true;
        }
    }
    return false;
}

std::vector<lcplx> companion_roots(const std::vector<long double>& a) {
    const int N = static_cast<int>(a.size()) - 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    for (int i = 1; i < N; ++i) M(i, i - 1) = 1.0;
    for (int i = 0; i < N; ++i) M(i, N - 1) = -static_cast<double>(a[i] / a[N]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    std::vector<lcplx> out;
    for (int i = 0; i < N; ++i) out.emplace_back(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    return out;
}

}  // namespace

ZeroSet zeros(const LPoly& L) {
    if (L.g < 1) throw std::invalid_argument("zeros: genus must be >= 1");
    ZeroSet zs;
    std::vector<long double> a(L.c.begin(), L.c.end());
    const long double r = 1.0L / std::sqrt(static_cast<long double>(L.q));
    std::vector<lcplx> z;
    if (!aberth(a, r, z)) {
        zs.used_fallback = true;
        z = companion_roots(a);
        // polish each eigenvalue with Newton steps
        for (auto& zi : z)
            for (int it = 0; it < 8; ++it) {
                lcplx p, dp;
                eval_with_derivative(a, zi, p, dp);
                if (dp == lcplx(0)) break;
                zi -= p / dp;
            }
    }
    // average clusters so multiple roots keep full accuracy at their center
    const int N = static_cast<int>(z.size());
    std::vector<int> cluster(N, -1);
    for (int i = 0; i < N; ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = i;
        std::vector<int> members{i};
        for (int j = i + 1; j < N; ++j)
            if (cluster[j] < 0 && std::abs(z[j] - z[i]) < 1e-7L * r) {
                cluster[j] = i;
                members.push_back(j);
            }
        if (members.size() > 1) {
            lcplx m = 0;
            for (int j : members) m += z[j];
            m /= static_cast<long double>(members.size());
            for (int j : members) z[j] = m;
        }
    }
    long double scale = 0;
    for (size_t n = 0; n < a.size(); ++n) scale += std::fabs(a[n]) * std::pow(r, static_cast<long double>(n));
    for (auto& zi : z) {
        lcplx p, dp;
        eval_with_derivative(a, zi, p, dp);
        zs.max_residual = std::max(zs.max_residual, static_cast<double>(std::abs(p) / scale));
        zs.max_radius_defect =
            std::max(zs.max_radius_defect, static_cast<double>(std::fabs(std::abs(zi) * std::sqrt((long double)L.q) - 1.0L)));
        zs.roots.emplace_back(static_cast<double>(zi.real()), static_cast<double>(zi.imag()));
    }
    std::vector<double> absarg;
    for (auto& zi : z) absarg.push_back(std::fabs(static_cast<double>(std::arg(zi))));
    std::sort(absarg.begin(), absarg.end());
    for (int i = 0; i + 1 < N; i += 2) zs.angles.push_back(0.5 * (absarg[i] + absarg[i + 1]));
    for (double t : zs.angles) {
        if (!zs.distinct_angles.empty() && std::fabs(t - zs.distinct_angles.back()) < 1e-7) {
            ++zs.multiplicity.back();
        } else {
            zs.distinct_angles.push_back(t);
            zs.multiplicity.push_back(1);
        }
    }
    zs.central_zero = !zs.angles.empty() && zs.angles.front() < 1e-8;
    return zs;
}

cplx log_derivative(const LPoly& L, cplx s, const ZeroSet* zs) {
    if (L.g < 1) throw std::invalid_argument("log_derivative: genus must be >= 1");
    const double logq = std::log(static_cast<double>(L.q));
    cplx u = std::exp(-s * logq);
    ZeroSet local;
    if (!zs) {
        local = zeros(L);
        zs = &local;
    }
    for (auto& rho : zs->roots)
        if (std::abs(u - rho) < 1e-6) throw std::domain_error("log_derivative: too close to a zero");
    cplx p = 0, dp = 0;
    for (int n = static_cast<int>(L.c.size()) - 1; n >= 0; --n) {
        dp = dp * u + p;
        p = p * u + static_cast<double>(L.c[n]);
    }
    return logq * u * dp / p;
}

cplx log_derivative_series(const MonicTable& T, const std::vector<std::int8_t>& chi, cplx s, int max_deg) {
    const double logq = std::log(static_cast<double>(T.field().q()));
    cplx total = 0;
    for (int n = 1; n <= max_deg; ++n) {
        std::int64_t sn = 0;
        for (std::uint32_t i = T.offset(n); i < T.offset(n + 1); ++i)
            if (chi[i]) sn += T.von_mangoldt(i) * chi[i];
        total += static_cast<double>(sn) * std::exp(-s * (n * logq));
    }
    return logq * total;
}

LContext::LContext(const Field& F, int g, int max_deg) : F_(F), g_(g) {
    if (g < 1) throw std::invalid_argument("genus must be >= 1");
    int depth = std::max(max_deg, 2 * g);
    table_ = std::make_unique<MonicTable>(F, depth);
    engine_ = std::make_unique<CharacterEngine>(*table_, 2 * g + 1);
    tau_.resize(4);
    for (int k = 2; k <= 3; ++k) tau_[k] = tau_table(*table_, k);
}

LPoly LContext::lpoly(const Poly& D, const std::vector<std::int8_t>& chi) const {
    LPoly L;
    L.D = D;
    L.q = F_.q();
    L.g = g_;
    L.c = degree_sums(*table_, chi, 2 * g_);
    return L;
}

LPoly LContext::lpoly(const Poly& D) const {
    if (deg(D) != 2 * g_ + 1) throw std::invalid_argument("lpoly: discriminant degree does not match the genus");
    std::vector<std::int8_t> chi;
    engine_->evaluate(D, chi);
    return lpoly(D, chi);
}

AfeResult LContext::afe_check(const Poly& D, int k) const {
    if (k < 1 || k > 3) throw std::invalid_argument("afe_check: k must be 1..3");
    const int N = k * g_;
    if (N > table_->max_degree()) throw std::invalid_argument("afe_check: table too shallow for this k");
    std::vector<std::int8_t> chi;
    engine_->evaluate(D, chi);
    LPoly L = lpoly(D, chi);
    std::vector<std::int64_t> b;
    if (k == 1) {
        b = degree_sums(*table_, chi, N);
    } else {
        b = degree_sums_weighted(*table_, chi, tau_[k], N);
    }
    const double rq = 1.0 / std::sqrt(static_cast<double>(F_.q()));
    AfeResult r;
    r.lhs = std::pow(L.central_value(), k);
    double s1 = 0, s2 = 0;
    for (int n = 0; n <= N; ++n) s1 += static_cast<double>(b[n]) * std::pow(rq, n);
    for (int n = 0; n <= N - 1; ++n) s2 += static_cast<double>(b[n]) * std::pow(rq, n);
    r.rhs = s1 + s2;
    r.residual = std::fabs(r.lhs - r.rhs);
    r.rhs_exact_degree = static_cast<double>(b[N]) * std::pow(rq, N) + (N >= 1 ? static_cast<double>(b[N - 1]) * std::pow(rq, N - 1) : 0.0);
    r.residual_exact_degree = std::fabs(r.lhs - r.rhs_exact_degree);
    return r;
}

double LContext::prime_power_sum(const std::vector<std::int8_t>& chi, int X, double s) const {
    if (X > table_->max_degree()) throw std::invalid_argument("prime_power_sum: X exceeds the table depth");
    double total = 0;
    for (int n = 1; n <= X; ++n) {
        std::int64_t sn = 0;
        for (std::uint32_t i = table_->offset(n); i < table_->offset(n + 1); ++i)
            if (chi[i]) sn += table_->von_mangoldt(i) * chi[i];
        total += static_cast<double>(sn) * std::pow(static_cast<double>(F_.q()), -s * n) / n;
    }
    return total;
}

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

constexpr int kCacheVersion = 1;

}  // namespace

std::string lcache_path(const std::string& dir, int q, int g) {
    return (std::filesystem::path(dir) / ("lpoly_q" + std::to_string(q) + "_g" + std::to_string(g) + ".txt")).string();
}

void write_lcache(const std::string& path, const LCache& cache) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::string tmp = path + ".tmp";
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write cache file " + path);
    out << "# lpoly cache\nversion=" << kCacheVersion << "\nq=" << cache.q << "\ng=" << cache.g << "\nrows=" << cache.rows.size() << "\n";
    std::uint64_t h = 1469598103934665603ULL;
    for (auto& row : cache.rows) {
        std::ostringstream line;
        for (size_t i = 0; i < row.size(); ++i) line << (i ? " " : "") << row[i];
        line << "\n";
        h = fnv1a(line.str(), h);
        out << line.str();
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    out << "checksum=" << buf << "\n";
    out.close();
    std::filesystem::rename(tmp, path);
}

bool read_lcache(const std::string& path, int q, int g, std::size_t expected_rows, LCache& out) {
    std::ifstream in(path);
    if (!in) return false;
    auto fail = [&](const std::string& why) {
        std::cerr << "warning: cache " << path << " rejected (" << why << "), recomputing\n";
        return false;
    };
    std::string line;
    int version = -1, fq = -1, fg = -1;
    std::size_t rows = 0;
    if (!std::getline(in, line) || line != "# lpoly cache") return fail("bad header");
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(in, line)) return fail("truncated header");
        auto eq = line.find('=');
        if (eq == std::string::npos) return fail("bad header line");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        try {
            if (key == "version") version = std::stoi(val);
            else if (key == "q") fq = std::stoi(val);
            else if (key == "g") fg = std::stoi(val);
            else if (key == "rows") rows = std::stoull(val);
            else return fail("unknown key " + key);
        } catch (const std::exception&) {
            return fail("bad header value");
        }
    }
    if (version != kCacheVersion) return fail("version mismatch");
    if (fq != q || fg != g) return fail("q/g mismatch");
    if (rows != expected_rows) return fail("row count mismatch");
    out.q = q;
    out.g = g;
    out.rows.assign(rows, {});
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) return fail("truncated rows");
        h = fnv1a(line + "\n", h);
        std::istringstream ss(line);
        std::int64_t v;
        while (ss >> v) out.rows[r].push_back(v);
        if (out.rows[r].size() != static_cast<std::size_t>(2 * g + 1)) return fail("bad row width");
    }
    if (!std::getline(in, line)) return fail("missing checksum");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    if (line != std::string("checksum=") + buf) return fail("checksum mismatch");
    return true;
}

}  // namespace ffl
