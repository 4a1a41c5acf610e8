#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "amitsur/linalg.hpp"

using namespace amitsur;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::uint64_t n) {
    Matrix m(rows, cols);
    std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = Coeff(dist(rng));
    return m;
}

// Brute-force oracle: every x in (Z/n)^cols.
std::vector<Vec> all_vectors(std::size_t len, std::uint64_t n) {
    std::vector<Vec> out;
    Vec v(len, 0);
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < len && ++v[i] == n) v[i++] = 0;
        if (i == len) break;
    }
    return out;
}

}  // namespace

TEST_CASE("Zn normalizing unit brings an element to its gcd with n") {
    for (std::uint64_t n : {2u, 4u, 6u, 12u, 30u, 49u}) {
        Zn zn(n);
        for (Coeff a = 0; a < n; ++a) {
            Coeff w = zn.normalizing_unit(a);
            CHECK(zn.is_unit(w));
            CHECK(zn.mul(w, a) == zn.gcd(a) % n);
        }
    }
}

TEST_CASE("Howell kernel and solve agree with brute force over Z/4, Z/6, Z/12") {
    std::mt19937_64 rng(20261015);
    for (std::uint64_t n : {4u, 6u, 12u}) {
        Zn zn(n);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
            Matrix m = random_matrix(rng, rows, cols, n);
            std::size_t brute_kernel = 0;
            std::vector<Vec> images;
            for (const Vec& x : all_vectors(cols, n)) {
                Vec y = apply(zn, m, x);
                if (std::all_of(y.begin(), y.end(), [](Coeff c) { return c == 0; })) ++brute_kernel;
                images.push_back(y);
            }
            CHECK(kernel_size(zn, m) == brute_kernel);
            Matrix k = kernel(zn, m);
            for (std::size_t r = 0; r < k.rows(); ++r) {
                Vec y = apply(zn, m, k.row(r));
                CHECK(std::all_of(y.begin(), y.end(), [](Coeff c) { return c == 0; }));
            }
            // Solvability matches membership in the image.
            for (const Vec& b : all_vectors(rows, n)) {
                bool reachable = std::find(images.begin(), images.end(), b) != images.end();
                auto x = solve(zn, m, b);
                CHECK(bool(x) == reachable);
                if (x) CHECK(apply(zn, m, *x) == b);
            }
            CHECK(is_injective(zn, m) == (brute_kernel == 1));
        }
    }
}

TEST_CASE("injectivity with non-unit pivots") {
    // The column (2, 1) over Z/4 is injective although no pivot is a unit in column 0.
    Zn zn(4);
    Matrix m(2, 1);
    m(0, 0) = 2;
    m(1, 0) = 1;
    CHECK(is_injective(zn, m));
    CHECK(kernel_size(zn, m) == 1);
}

TEST_CASE("span size of the Howell form") {
    Zn zn(12);
    Matrix m(1, 2);
    m(0, 0) = 4;
    m(0, 1) = 6;
    // span of (4,6) mod 12: multiples t*(4,6), t in 0..11; (4t mod 12, 6t mod 12) repeats with period 6.
    CHECK(howell_form(zn, m).span_size(zn) == 6);
}
