#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffl {

// Prime field F_q with q = 1 (mod 4).
class Field {
public:
    explicit Field(int q = 5);

    int q() const { return q_; }

    int add(int a, int b) const { int s = a + b; return s >= q_ ? s - q_ : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + q_ : s; }
    int neg(int a) const { return a == 0 ? 0 : q_ - a; }
    int mul(int a, int b) const { return static_cast<int>((static_cast<std::int64_t>(a) * b) % q_); }
    int pow(int a, std::uint64_t e) const;
    int inv(int a) const;
    int reduce(std::int64_t a) const {
        std::int64_t r = a % q_;
        return static_cast<int>(r < 0 ? r + q_ : r);
    }

    // c^((q-1)/2) mapped to {-1, 0, 1}
    int legendre(int c) const;

    bool operator==(const Field& o) const { return q_ == o.q_; }

private:
    int q_;
};

bool is_prime(std::int64_t n);

}  // namespace ffl
