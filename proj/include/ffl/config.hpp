#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ffl {

// Settings for one CLI run. Every key is set through set(), which is shared by the
// config file reader and the command-line flags.
struct RunConfig {
    int q = 5;
    std::vector<int> g = {1, 2, 3};
    std::vector<int> X = {2};
    std::vector<double> k = {1, 2, 3};
    std::string mode = "full";          // full | sample
    std::uint64_t n = 1000;             // sample size (moments, lfun, decompose, rmt)
    std::uint64_t seed = 1;
    std::vector<std::string> ell = {"1"};  // twists, separated by ';' in text form
    std::vector<int> N = {1, 2, 4, 8};  // matrix sizes for rmt
    std::vector<std::string> kind = {"L"};  // moments: L, P, Z, LPinv, split
    std::string D;                      // single discriminant for lfun / zeros
    std::string format = "csv";         // csv | json | both
    std::string out;                    // output path without extension; empty means stdout
    int workers = 1;
    std::string cache_dir;
    int k_max = 200;                    // periodic images in the Ci sums
    int trap_base = 256;                // coarsest trapezoid panels of the kernel
    int d_max = 60;                     // Euler-product depth for constants
    double budget = 5e9;                // op-count ceiling for full enumeration warnings
    std::vector<int> criteria;          // verify: subset of 1..12, empty means all

    // Throws std::invalid_argument naming the key on a bad key or value.
    void set(const std::string& key, const std::string& value);
    // Throws std::invalid_argument on inconsistent settings (q prime and 1 mod 4, ranges, ...).
    void validate() const;
    // key=value lines in a fixed key order; parse_config(serialize()) reproduces the config.
    std::string serialize() const;

    bool operator==(const RunConfig&) const = default;
};

// Reads key=value lines; '#' starts a comment, blank lines are skipped.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// "1..3", "1,2,5" or a mix such as "1..3,6"
std::vector<int> parse_int_list(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);

// Rough operation count of enumerating H_{2g+1} and building its L-polynomials.
double full_enumeration_ops(int q, int g);

}  // namespace ffl
