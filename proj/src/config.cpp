#include "ffl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ffl/field.hpp"

namespace ffl {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

long long to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty()) throw std::invalid_argument(key + ": not an integer: '" + v + "'");
    return x;
}

double to_real(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty()) throw std::invalid_argument(key + ": not a number: '" + v + "'");
    return x;
}

// shortest text that reads back to the same double
std::string real_text(double x) {
    for (int p = 1; p <= 17; ++p) {
        std::ostringstream os;
        os.precision(p);
        os << x;
        if (std::stod(os.str()) == x) return os.str();
    }
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

template <class T, class F>
std::string join(const std::vector<T>& v, const std::string& sep, F f) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + f(v[i]);
    return s;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (auto& part : split(s, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<int>(to_int("list", part)));
            continue;
        }
        int a = static_cast<int>(to_int("range", trim(part.substr(0, dots))));
        int b = static_cast<int>(to_int("range", trim(part.substr(dots + 2))));
        if (b < a) throw std::invalid_argument("range " + part + " is empty");
        for (int i = a; i <= b; ++i) out.push_back(i);
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
    return out;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    for (auto& part : split(s, ',')) {
        if (part.find("..") != std::string::npos) {
            for (int i : parse_int_list(part)) out.push_back(i);
        } else {
            out.push_back(to_real("list", part));
        }
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
    return out;
}

void RunConfig::set(const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in), v = trim(value_in);
    if (key == "q") q = static_cast<int>(to_int(key, v));
    else if (key == "g") g = parse_int_list(v);
    else if (key == "x" || key == "X") X = parse_int_list(v);
    else if (key == "k") k = parse_real_list(v);
    else if (key == "mode") mode = v;
    else if (key == "n") n = static_cast<std::uint64_t>(to_int(key, v));
    else if (key == "seed") seed = static_cast<std::uint64_t>(to_int(key, v));
    else if (key == "ell") ell = split(v, ';');
    else if (key == "N") N = parse_int_list(v);
    else if (key == "kind") kind = split(v, ',');
    else if (key == "D") D = v;
    else if (key == "format") format = v;
    else if (key == "out") out = v;
    else if (key == "workers") workers = static_cast<int>(to_int(key, v));
    else if (key == "cache_dir") cache_dir = v;
    else if (key == "k_max") k_max = static_cast<int>(to_int(key, v));
    else if (key == "trap_base") trap_base = static_cast<int>(to_int(key, v));
    else if (key == "d_max") d_max = static_cast<int>(to_int(key, v));
    else if (key == "budget") budget = to_real(key, v);
    else if (key == "criteria") criteria = v.empty() ? std::vector<int>{} : parse_int_list(v);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
    Field check(q);  // prime, 1 mod 4
    (void)check;
    auto positive = [](const std::vector<int>& v, const char* name, int lo) {
        for (int x : v)
            if (x < lo) throw std::invalid_argument(std::string(name) + " must be >= " + std::to_string(lo));
    };
    positive(g, "g", 1);
    positive(X, "x", 1);
    positive(N, "N", 1);
    if (mode != "full" && mode != "sample") throw std::invalid_argument("mode must be full or sample, got '" + mode + "'");
    if (mode == "sample" && n == 0) throw std::invalid_argument("sample mode needs n > 0");
    if (format != "csv" && format != "json" && format != "both") throw std::invalid_argument("format must be csv, json or both");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (k_max < 1 || trap_base < 2 || d_max < 4) throw std::invalid_argument("k_max, trap_base or d_max out of range");
    if (ell.empty()) throw std::invalid_argument("ell list is empty");
    for (auto& s : kind)
        if (s != "L" && s != "P" && s != "Z" && s != "LPinv" && s != "split")
            throw std::invalid_argument("unknown moment kind '" + s + "'");
    for (int c : criteria)
        if (c < 1 || c > 12) throw std::invalid_argument("criteria are numbered 1..12");
}

std::string RunConfig::serialize() const {
    auto ints = [](const std::vector<int>& v) { return join(v, ",", [](int x) { return std::to_string(x); }); };
    std::ostringstream os;
    os << "q=" << q << "\n"
       << "g=" << ints(g) << "\n"
       << "x=" << ints(X) << "\n"
       << "k=" << join(k, ",", real_text) << "\n"
       << "mode=" << mode << "\n"
       << "n=" << n << "\n"
       << "seed=" << seed << "\n"
       << "ell=" << join(ell, ";", [](const std::string& s) { return s; }) << "\n"
       << "N=" << ints(N) << "\n"
       << "kind=" << join(kind, ",", [](const std::string& s) { return s; }) << "\n"
       << "D=" << D << "\n"
       << "format=" << format << "\n"
       << "out=" << out << "\n"
       << "workers=" << workers << "\n"
       << "cache_dir=" << cache_dir << "\n"
       << "k_max=" << k_max << "\n"
       << "trap_base=" << trap_base << "\n"
       << "d_max=" << d_max << "\n"
       << "budget=" << real_text(budget) << "\n"
       << "criteria=" << ints(criteria) << "\n";
    return os.str();
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        try {
            base.set(line.substr(0, eq), line.substr(eq + 1));
        } catch (const std::invalid_argument& ex) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str(), std::move(base));
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(path + ": " + ex.what());
    }
}

double full_enumeration_ops(int q, int g) {
    // |H_{2g+1}| discriminants, each evaluating chi on the monic polynomials up to degree g
    // and a Jacobi symbol costing about (2g+1)^2 field operations
    double h = std::pow(q, 2 * g + 1) * (1 - 1.0 / q);
    double table = 0;
    for (int n = 0; n <= g; ++n) table += std::pow(q, n);
    return h * table * (2 * g + 1) * (2 * g + 1);
}

}  // namespace ffl
