#include "amitsur/modular.hpp"

#include <numeric>
#include <stdexcept>

namespace amitsur {

Zn::Zn(std::uint64_t n) : n_(n) {
    if (n < 2 || n > (std::uint64_t(1) << 31))
        throw std::invalid_argument("modulus must lie in [2, 2^31]");
}

Coeff Zn::reduce(std::int64_t x) const {
    std::int64_t r = x % std::int64_t(n_);
    if (r < 0) r += std::int64_t(n_);
    return Coeff(r);
}

void Zn::axpy(Coeff a, std::span<const Coeff> x, std::span<Coeff> y) const {
    if (a == 0) return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) y[i] = add(y[i], mul(a, x[i]));
}

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

std::optional<Coeff> Zn::inverse(Coeff a) const {
    auto e = ext_gcd(std::int64_t(a), std::int64_t(n_));
    if (e.g != 1) return std::nullopt;
    return reduce(e.s);
}

bool Zn::is_unit(Coeff a) const { return std::gcd(std::uint64_t(a), n_) == 1; }

std::uint64_t Zn::gcd(Coeff a) const { return std::gcd(std::uint64_t(a), n_); }

Coeff Zn::normalizing_unit(Coeff a) const {
    std::uint64_t g = gcd(a);
    if (g == n_) return 1;
    std::uint64_t m = n_ / g;
    // (a/g) is invertible mod m; lift its inverse to a unit mod n.
    auto e = ext_gcd(std::int64_t(a / g), std::int64_t(m));
    std::int64_t w0 = e.s % std::int64_t(m);
    if (w0 < 0) w0 += std::int64_t(m);
    for (std::uint64_t w = std::uint64_t(w0); w < n_; w += m)
        if (std::gcd(w, n_) == 1) return Coeff(w);
    throw std::logic_error("normalizing_unit: no unit lift found");
}

}  // namespace amitsur
