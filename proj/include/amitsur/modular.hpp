#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace amitsur {

using Coeff = std::uint32_t;
using Vec = std::vector<Coeff>;

// Arithmetic in Z/nZ. Values are kept reduced in [0, n).
class Zn {
public:
    explicit Zn(std::uint64_t n);

    std::uint64_t modulus() const { return n_; }

    Coeff add(Coeff a, Coeff b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return Coeff(s >= n_ ? s - n_ : s);
    }
    Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : Coeff(n_ - b + a); }
    Coeff neg(Coeff a) const { return a == 0 ? 0 : Coeff(n_ - a); }
    Coeff mul(Coeff a, Coeff b) const { return Coeff((std::uint64_t(a) * b) % n_); }
    Coeff reduce(std::int64_t x) const;

    // a*x + y, in place on y.
    void axpy(Coeff a, std::span<const Coeff> x, std::span<Coeff> y) const;

    std::optional<Coeff> inverse(Coeff a) const;
    bool is_unit(Coeff a) const;
    // gcd(a, n); gcd(0, n) = n.
    std::uint64_t gcd(Coeff a) const;
    // A unit w with w*a = gcd(a, n) (mod n).
    Coeff normalizing_unit(Coeff a) const;

private:
    std::uint64_t n_;
};

struct ExtGcd {
    std::int64_t g, s, t;  // s*a + t*b = g
};
ExtGcd ext_gcd(std::int64_t a, std::int64_t b);

}  // namespace amitsur
