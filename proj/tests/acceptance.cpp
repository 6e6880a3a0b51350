// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <thread>

#include "ffl/verify.hpp"

int main() {
    ffl::VerifyOptions opt;
    opt.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    ffl::Verifier v(opt);
    int failed = 0;
    for (int id = 1; id <= ffl::kCriteriaCount; ++id) {
        auto r = v.run(id);
        std::printf("%s  criterion %2d: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
        for (auto& [name, value] : r.metrics) std::printf("        %s = %.6g\n", name.c_str(), value);
        for (auto& f : r.failures) std::printf("        failure: %s\n", f.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%d of %d criteria passed\n", ffl::kCriteriaCount - failed, ffl::kCriteriaCount);
    return failed ? 1 : 0;
}
