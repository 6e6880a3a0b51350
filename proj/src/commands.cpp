#include "ffl/commands.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ffl/constants.hpp"
#include "ffl/eulerhadamard.hpp"
#include "ffl/moments.hpp"
#include "ffl/rmt.hpp"
#include "ffl/specfun.hpp"
#include "ffl/verify.hpp"

namespace ffl {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

Table make_table(const std::string& command, const RunConfig& cfg, std::vector<std::string> columns) {
    cfg.validate();
    Table t;
    t.command = command;
    t.columns = std::move(columns);
    // run-describing keys only; output location and worker count do not change results
    std::istringstream is(cfg.serialize());
    std::string line;
    while (std::getline(is, line)) {
        auto eq = line.find('=');
        std::string key = line.substr(0, eq);
        if (key == "out" || key == "workers" || key == "cache_dir" || key == "format") continue;
        t.metadata.emplace_back(key, line.substr(eq + 1));
    }
    return t;
}

EnsembleSpec spec_for(const RunConfig& cfg, int g) {
    EnsembleSpec s;
    s.q = cfg.q;
    s.g = g;
    s.mode = cfg.mode == "full" ? EnsembleMode::Full : EnsembleMode::Sample;
    s.count = cfg.n;
    s.seed = cfg.seed;
    s.X = cfg.X.front();
    s.workers = cfg.workers;
    s.cache_dir = cfg.cache_dir;
    return s;
}

// The ensemble a command works on: the single D of cfg.D, or H_{2g+1} per cfg.mode.
std::vector<FamilyValues> families(const RunConfig& cfg) {
    std::vector<FamilyValues> out;
    if (!cfg.D.empty()) {
        Field F(cfg.q);
        Poly D = parse_poly(F, cfg.D);
        validate_discriminant(F, D);
        int g = (deg(D) - 1) / 2;
        LContext ctx(F, g);
        FamilyValues fam;
        fam.spec = spec_for(cfg, g);
        fam.spec.mode = EnsembleMode::Sample;
        fam.family_size = squarefree_count(cfg.q, 2 * g + 1);
        fam.ranks = {monic_rank(F, D)};
        LPoly L = ctx.lpoly(D);
        fam.coeffs = {L.c};
        fam.L = {L.central_value()};
        set_twist(fam, {});
        set_euler_cutoff(fam, fam.spec.X);
        out.push_back(std::move(fam));
        return out;
    }
    for (int g : cfg.g) out.push_back(collect_family(spec_for(cfg, g)));
    return out;
}

Poly discriminant(const FamilyValues& fam, std::size_t i) {
    return monic_unrank(Field(fam.spec.q), 2 * fam.spec.g + 1, fam.ranks[i]);
}

LPoly lpoly_at(const FamilyValues& fam, std::size_t i) {
    LPoly L;
    L.q = fam.spec.q;
    L.g = fam.spec.g;
    L.c = fam.coeffs[i];
    return L;
}

std::vector<Cell> moment_row(const MomentReport& r, bool show_x) {
    return {r.kind, std::int64_t{r.q}, std::int64_t{r.g}, r.k, show_x ? Cell{std::int64_t{r.X}} : Cell{}, r.ell,
            r.empirical, r.predicted, r.stderr_, static_cast<std::int64_t>(r.n), r.rel_deviation, r.note};
}

const std::vector<std::string> kMomentColumns = {"kind", "q", "g", "k", "X", "ell", "empirical", "predicted",
                                                 "stderr", "n", "rel_deviation", "note"};

int integer_k(double k, int lo, int hi, const char* what) {
    if (k != std::floor(k) || k < lo || k > hi)
        throw std::invalid_argument(std::string(what) + ": k must be an integer in " + std::to_string(lo) + ".." + std::to_string(hi));
    return static_cast<int>(k);
}

}  // namespace

std::vector<std::string> budget_warnings(const RunConfig& cfg, const std::string& command) {
    std::vector<std::string> out;
    bool full = cfg.mode == "full" && cfg.D.empty();
    if (command == "verify" || command == "constants" || command == "rmt" || command == "decompose") return out;
    if (!full) return out;
    for (int g : cfg.g) {
        double ops = full_enumeration_ops(cfg.q, g);
        if (ops > cfg.budget) {
            std::ostringstream os;
            os.precision(3);
            os << "full enumeration at q=" << cfg.q << ", g=" << g << " needs about " << ops << " operations (budget "
               << cfg.budget << "); consider --mode sample";
            out.push_back(os.str());
        }
    }
    return out;
}

Table cmd_verify(const RunConfig& cfg, bool& all_passed) {
    Table t = make_table("verify", cfg, {"id", "criterion", "pass", "seconds", "metrics", "failures"});
    VerifyOptions opt;
    opt.workers = cfg.workers;
    opt.cache_dir = cfg.cache_dir;
    Verifier v(opt);
    std::vector<int> ids = cfg.criteria;
    if (ids.empty())
        for (int i = 1; i <= kCriteriaCount; ++i) ids.push_back(i);
    all_passed = true;
    for (int id : ids) {
        auto r = v.run(id);
        all_passed = all_passed && r.pass;
        std::ostringstream m, f;
        m.precision(6);
        for (std::size_t i = 0; i < r.metrics.size(); ++i) m << (i ? "; " : "") << r.metrics[i].first << "=" << r.metrics[i].second;
        for (std::size_t i = 0; i < r.failures.size(); ++i) f << (i ? "; " : "") << r.failures[i];
        t.add({std::int64_t{r.id}, r.title, r.pass, r.seconds, m.str(), f.str()});
    }
    return t;
}

Table cmd_lfun(const RunConfig& cfg) {
    Table t = make_table("lfun", cfg, {"q", "g", "D", "coefficients", "central_value", "fe_defect"});
    for (auto& fam : families(cfg))
        for (std::size_t i = 0; i < fam.coeffs.size(); ++i) {
            LPoly L = lpoly_at(fam, i);
            std::string c;
            for (std::size_t j = 0; j < L.c.size(); ++j) c += (j ? " " : "") + std::to_string(L.c[j]);
            t.add({std::int64_t{cfg.q}, std::int64_t{fam.spec.g}, to_string(discriminant(fam, i)), c, fam.L[i],
                   static_cast<std::int64_t>(L.functional_equation_defect())});
        }
    return t;
}

Table cmd_zeros(const RunConfig& cfg) {
    Table t = make_table("zeros", cfg, {"q", "g", "D", "index", "angle", "radius_defect", "residual", "central_zero"});
    for (auto& fam : families(cfg))
        for (std::size_t i = 0; i < fam.coeffs.size(); ++i) {
            auto zs = zeros(lpoly_at(fam, i));
            std::string D = to_string(discriminant(fam, i));
            for (std::size_t j = 0; j < zs.angles.size(); ++j)
                t.add({std::int64_t{cfg.q}, std::int64_t{fam.spec.g}, D, static_cast<std::int64_t>(j), zs.angles[j],
                       zs.max_radius_defect, zs.max_residual, zs.central_zero});
        }
    return t;
}

Table cmd_decompose(const RunConfig& cfg) {
    Table t = make_table("decompose", cfg, {"q", "g", "X", "D", "L", "P_X", "Z_X", "residual", "central_zero"});
    Field F(cfg.q);
    KernelOptions ko;
    ko.trap_base = cfg.trap_base;
    auto fams = families(cfg);
    for (auto& fam : fams) {
        const int g = fam.spec.g;
        LContext ctx(F, g);  // P_X beyond the table depth comes from the coefficients
        for (int X : cfg.X) {
            BumpKernel K(cfg.q, X, ko);
            for (std::size_t i = 0; i < fam.ranks.size(); ++i) {
                auto r = decompose_check(ctx, K, discriminant(fam, i), cfg.k_max);
                t.add({std::int64_t{cfg.q}, std::int64_t{g}, std::int64_t{X}, to_string(r.D), r.L_value, r.P_value, r.Z_value,
                       r.central_zero ? kNaN : r.residual, r.central_zero});
            }
        }
    }
    return t;
}

Table cmd_moments(const RunConfig& cfg) {
    Table t = make_table("moments", cfg, kMomentColumns);
    for (auto& base : families(cfg)) {
        for (auto& kind : cfg.kind)
            if (kind == "L")
                for (double k : cfg.k) t.add(moment_row(moment_L(base, integer_k(k, 0, 4, "moments L")), false));
        for (int X : cfg.X) {
            FamilyValues fam = base;
            set_euler_cutoff(fam, X);
            for (auto& kind : cfg.kind) {
                for (double k : cfg.k) {
                    if (kind == "P") t.add(moment_row(moment_P(fam, k), true));
                    else if (kind == "Z") t.add(moment_row(moment_Z(fam, k), true));
                    else if (kind == "LPinv") t.add(moment_row(moment_LPinv(fam, integer_k(k, 1, 3, "moments LPinv")), true));
                    else if (kind == "split") {
                        MomentReport r = moment_Z(fam, k);
                        r.kind = "split";
                        r.empirical = splitting_ratio(fam, k);
                        r.predicted = 1;
                        r.rel_deviation = std::abs(r.empirical - 1);
                        r.stderr_ = kNaN;
                        r.note = "<L^k> / (<P_X^k> <Z_X^k>)";
                        t.add(moment_row(r, true));
                    }
                }
            }
        }
    }
    return t;
}

Table cmd_twisted(const RunConfig& cfg) {
    Table t = make_table("twisted", cfg, kMomentColumns);
    Field F(cfg.q);
    auto fams = families(cfg);
    for (auto& ell_text : cfg.ell) {
        Poly ell = parse_poly(F, ell_text);
        for (auto& base : fams) {
            FamilyValues fam = base;
            set_twist(fam, ell);
            for (double k : cfg.k) t.add(moment_row(twisted_moment(fam, integer_k(k, 1, 3, "twisted")), false));
        }
    }
    return t;
}

Table cmd_constants(const RunConfig& cfg) {
    Table t = make_table("constants", cfg, {"name", "k", "ell", "value", "digits", "d_max", "tail_bound"});
    const int q = cfg.q;
    Field F(q);
    for (double k : cfg.k) {
        auto a = A_k(q, k, AkForm::Divisor, cfg.d_max);
        t.add({"A_k", k, "1", a.value, a.digits, std::int64_t{a.d_max}, a.tail_bound});
    }
    t.add({"zeta_q(2)", Cell{}, "1", zeta_q(q, 2), "", Cell{}, Cell{}});
    for (auto& ell_text : cfg.ell) {
        Poly ell = parse_poly(F, ell_text);
        TwistShape l = twist_shape(F, ell);
        std::string e = to_string(ell);
        for (int k = 1; k <= 3; ++k) t.add({"eta_k(l;1)", double(k), e, eta_k_at_1(q, k, l), "", Cell{}, Cell{}});
        t.add({"eta_1'/eta_1(l;1)", 1.0, e, eta1_log_derivative(q, l, cfg.d_max), "", std::int64_t{cfg.d_max}, Cell{}});
        t.add({"kappa_2(l;1,1)", 2.0, e, kappa2_at_w1(q, l, 1.0, cfg.d_max), "", std::int64_t{cfg.d_max}, Cell{}});
        t.add({"kappa_3(l;1,1) zeta_q(2)/eta_3 - 1", 3.0, e, kappa3_identity_residual(q, l), "", Cell{}, Cell{}});
    }
    for (int X : cfg.X) {
        t.add({"mertens_product", Cell{}, std::to_string(X), mertens_product(q, X), "", Cell{}, Cell{}});
        t.add({"e^gamma X", Cell{}, std::to_string(X), std::exp(kEulerGamma) * X, "", Cell{}, Cell{}});
    }
    for (int k = 1; k <= 3; ++k) t.add({"rmt_coefficient", double(k), "1", rmt_coefficient(k), "", Cell{}, Cell{}});
    return t;
}

Table cmd_rmt(const RunConfig& cfg) {
    Table t = make_table("rmt", cfg, {"N", "k", "X", "n", "estimate", "stderr", "prediction", "ratio"});
    KernelOptions ko;
    ko.trap_base = cfg.trap_base;
    for (int X : cfg.X) {
        BumpKernel K(cfg.q, X, ko);
        PhiTable phi(K, cfg.k_max);
        for (int N : cfg.N)
            for (auto& m : mc_average(N, cfg.k, phi, cfg.n, cfg.seed, cfg.workers))
                t.add({std::int64_t{m.N}, m.k, std::int64_t{m.X}, static_cast<std::int64_t>(m.n), m.estimate, m.stderr_,
                       m.prediction, m.ratio});
    }
    return t;
}

}  // namespace ffl
