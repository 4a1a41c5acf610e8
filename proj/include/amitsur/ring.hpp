#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amitsur/linalg.hpp"
#include "amitsur/modular.hpp"

namespace amitsur {

// Resource caps shared by every enumeration and tensor construction.
struct Limits {
    std::uint64_t element_cap = std::uint64_t(1) << 20;  // ring elements per sweep
    std::size_t max_rank = 1024;                         // Z/nZ-rank of any constructed ring
    unsigned jobs = 1;                                   // enumeration workers
};

struct Term {
    std::uint32_t index;
    Coeff coeff;
};

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

// A commutative ring, free of finite rank over Z/nZ, given by structure
// constants e_i * e_j = sum_k c[i][j][k] e_k.
class FiniteRing {
public:
    // `products[i][j]` for i <= j (upper triangle, row-major packed).
    FiniteRing(std::uint64_t modulus, std::size_t rank, std::vector<std::vector<Term>> products, Vec one,
               std::string name);

    // Dense r x r x r constants; rejects non-commutative tables.
    static RingPtr from_structure_constants(std::uint64_t modulus, std::size_t rank,
                                            const std::vector<Coeff>& constants, Vec one, std::string name);

    const Zn& zn() const { return zn_; }
    std::uint64_t modulus() const { return zn_.modulus(); }
    std::size_t rank() const { return rank_; }
    const std::string& name() const { return name_; }
    const Vec& one() const { return one_; }

    const std::vector<Term>& product(std::size_t i, std::size_t j) const;

    void multiply(std::span<const Coeff> a, std::span<const Coeff> b, std::span<Coeff> out) const;
    Vec multiply(std::span<const Coeff> a, std::span<const Coeff> b) const;
    // Matrix of y -> x*y.
    Matrix multiplication_matrix(std::span<const Coeff> x) const;

    // n^rank when it fits in 64 bits.
    std::optional<std::uint64_t> element_count() const;

    // Checks commutativity, associativity and the unit law on all basis
    // triples; throws InvalidInput naming the first failure.
    void validate() const;

private:
    std::size_t slot(std::size_t i, std::size_t j) const;

    Zn zn_;
    std::size_t rank_;
    std::vector<std::vector<Term>> products_;
    Vec one_;
    std::string name_;
};

// Element of a FiniteRing; coefficients always reduced.
class RingElement {
public:
    RingElement(RingPtr ring, Vec coeffs);

    static RingElement zero(RingPtr ring);
    static RingElement one(RingPtr ring);
    static RingElement basis(RingPtr ring, std::size_t i);
    static RingElement from_ints(RingPtr ring, const std::vector<std::int64_t>& values);

    const RingPtr& ring() const { return ring_; }
    const Vec& coeffs() const { return coeffs_; }
    std::size_t rank() const { return coeffs_.size(); }

    bool is_zero() const;
    bool is_one() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement scaled(Coeff c) const;

    bool operator==(const RingElement& o) const;
    // Lexicographic on coefficients; elements of one ring only.
    std::strong_ordering operator<=>(const RingElement& o) const;

    std::string to_string() const;

private:
    void check_same_ring(const RingElement& o) const;

    RingPtr ring_;
    Vec coeffs_;
};

RingElement power(const RingElement& x, std::uint64_t e);
std::optional<RingElement> try_invert(const RingElement& x);
bool is_unit(const RingElement& x);

// Element number `index` in lexicographic coefficient order (coefficient 0 most significant).
Vec element_at(const FiniteRing& ring, std::uint64_t index);

// All units in lexicographic order. Throws RingTooLarge when n^rank > cap.
std::vector<RingElement> enumerate_units(const RingPtr& ring, const Limits& limits = {});
// Every element, lexicographic order.
std::vector<RingElement> enumerate_elements(const RingPtr& ring, const Limits& limits = {});
void require_enumerable(const FiniteRing& ring, const Limits& limits);

// Z/nZ-linear ring map given by the images of the source basis (columns).
class RingHom {
public:
    RingHom(RingPtr source, RingPtr target, Matrix images);

    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    const Matrix& matrix() const { return images_; }

    RingElement operator()(const RingElement& x) const;
    Vec apply(std::span<const Coeff> x) const;

    bool is_unital() const;
    bool is_multiplicative() const;  // on all basis pairs

    bool operator==(const RingHom& o) const;

private:
    RingPtr source_, target_;
    Matrix images_;
};

// g after f.
RingHom compose(const RingHom& g, const RingHom& f);
RingHom identity_hom(const RingPtr& ring);

RingPtr make_quotient_ring(std::uint64_t modulus, const std::vector<std::int64_t>& poly);
RingPtr make_product_ring(const RingPtr& a, const RingPtr& b);

}  // namespace amitsur
