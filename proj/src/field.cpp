#include "ffl/field.hpp"

namespace ffl {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field::Field(int q) : q_(q) {
    if (!is_prime(q))
        throw std::invalid_argument("q must be prime, got " + std::to_string(q));
    if (q % 4 != 1)
        throw std::invalid_argument("q must be 1 mod 4, got " + std::to_string(q));
    if (q > 46337)
        throw std::invalid_argument("q too large");
}

int Field::pow(int a, std::uint64_t e) const {
    std::int64_t r = 1, b = a % q_;
    while (e) {
        if (e & 1) r = r * b % q_;
        b = b * b % q_;
        e >>= 1;
    }
    return static_cast<int>(r);
}

int Field::inv(int a) const {
    if (a % q_ == 0) throw std::domain_error("inverse of zero in F_q");
    return pow(a, q_ - 2);
}

int Field::legendre(int c) const {
    c = reduce(c);
    if (c == 0) return 0;
    return pow(c, (q_ - 1) / 2) == 1 ? 1 : -1;
}

}  // namespace ffl
