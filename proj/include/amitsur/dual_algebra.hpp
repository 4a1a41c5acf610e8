#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amitsur/coring.hpp"

namespace amitsur {

// An associative R-algebra, free over R on m basis elements, given by
// structure constants with values in R. Elements are R-coordinate vectors
// (m blocks of rank(R) Z/nZ-coordinates), so not necessarily commutative.
class RAlgebra {
public:
    // `table[p * m + q]` holds the R-coordinates of a_p a_q.
    RAlgebra(RingPtr base, std::size_t rank, std::vector<Vec> table, Vec one, std::string name);

    const RingPtr& base() const { return base_; }
    std::size_t rank() const { return rank_; }
    std::size_t zn_rank() const { return rank_ * base_->rank(); }
    const std::string& name() const { return name_; }
    const Vec& one() const { return one_; }
    const Vec& product(std::size_t p, std::size_t q) const { return table_[p * rank_ + q]; }
    Vec multiply(std::span<const Coeff> x, std::span<const Coeff> y) const;
    // R-one in block p.
    Vec basis(std::size_t p) const;
    bool is_associative() const;  // on all basis triples
    bool is_unit_element(std::span<const Coeff> e) const;
    // a_p a_q read through the opposite product.
    RAlgebra opposite() const;

private:
    RingPtr base_;
    std::size_t rank_;
    std::vector<Vec> table_;
    Vec one_;
    std::string name_;
};

// S as an R-algebra on its declared basis.
RAlgebra algebra_of(const Extension& ext);
// End_R(S) with composition, on the basis E_ij : b_j -> b_i (index i*d + j).
RAlgebra endomorphism_algebra(const Extension& ext);

// The product on End_R(S) dual to Delta_u:
//   right: (phi * psi)(s) = u^3 phi(u^2 psi(u^1 s)),
//   left:  (phi * psi)(s) = u^1 psi(u^2 phi(u^3 s)).
// Both require an Azumaya coring (unit cocycle twist).
enum class Side { left, right };
RAlgebra twisted_algebra(const NormalBasisCoring& C, Side side);
inline RAlgebra right_dual_algebra(const NormalBasisCoring& C) { return twisted_algebra(C, Side::right); }
inline RAlgebra left_dual_algebra(const NormalBasisCoring& C) { return twisted_algebra(C, Side::left); }
// s -> |u|^-1 s, in End coordinates.
Vec twisted_unit(const NormalBasisCoring& C);

// A(u) inside S (x) End_R(S) = S (x) S* (x) S, coordinates (a, j, i) for
// b_a (x) b_j* (x) b_i = b_a (x) E_ij.
struct DescentAlgebra {
    ComplexPtr complex;
    RingElement u;
    Matrix condition;   // x -> x_2 u_4 - x_1 u_3 into S (x) S (x) S* (x) S
    Matrix generators;  // rows: Howell generators of the kernel
    bool rank_ok = false;    // |A(u)| = |R|^{d^2}
    bool closed = false;     // products of generators satisfy the condition
    RAlgebra algebra;        // on the basis gamma(E_ij)
    Matrix gamma;            // End coordinates -> ambient coordinates
};
DescentAlgebra descent_algebra(const NormalBasisCoring& C);

// Product of S (x) End_R(S): (s (x) phi)(t (x) psi) = st (x) phi o psi.
Vec ambient_multiply(const Extension& ext, std::span<const Coeff> x, std::span<const Coeff> y);
Vec ambient_one(const Extension& ext);

// gamma(phi) = u^1 (x) u^3 phi u^2 and its inverse
// gamma^-1(s (x) t* (x) t) = t* v^2 (x) v^1 v^3 s t with v = u^-1, as Z/nZ matrices.
Matrix gamma_matrix(const NormalBasisCoring& C);
Matrix gamma_inverse_matrix(const NormalBasisCoring& C);
// phi -> 1 (x) phi, which is gamma for the trivial twist.
Matrix unit_embedding_matrix(const Extension& ext);

struct GammaReport {
    bool image_in_descent = false;
    bool multiplicative = false;
    bool unital = false;
    bool bijective = false;
    bool left_inverse = false;   // gamma^-1 o gamma = id
    bool right_inverse = false;  // gamma o gamma^-1 = id on A(u)
    bool rank_ok = false;
    bool closed = false;
    std::size_t descent_rank = 0;  // rank over R
    bool ok() const {
        return image_in_descent && multiplicative && unital && bijective && left_inverse && right_inverse && rank_ok &&
               closed;
    }
};
GammaReport verify_gamma(const NormalBasisCoring& C);

// A (x)_R A^op -> End_R(A), a (x) b -> (x -> a x b), bijective.
bool is_azumaya_algebra(const RAlgebra& a);
// Z/nZ-size of the enveloping map's matrix (rows = columns).
std::size_t enveloping_size(const RAlgebra& a);

// Phi_w(phi)(s) = w^2 phi(s w^1), a map End_R(S)_u -> End_R(S)_1 when u = delta(w).
struct UntwistIso {
    Matrix map;  // End coordinates
    bool multiplicative = false;
    bool unital = false;
    bool bijective = false;
    bool ok() const { return multiplicative && unital && bijective; }
};
Matrix untwist_matrix(const AmitsurComplex& c, const RingElement& w);
// Throws InvalidInput unless delta(w) = u.
UntwistIso untwist_iso(const NormalBasisCoring& C, const RingElement& w);

// End_R(S)_u (x)_R S split over S: base change along R -> S, then untwist with
// the base-change witness.
struct SplitCertificate {
    bool witness_verified = false;
    UntwistIso untwist;
    bool ok() const { return witness_verified && untwist.ok(); }
};
SplitCertificate split_certificate(const NormalBasisCoring& C);

// Rows "p q : coordinates", p and q over the basis in order.
std::string multiplication_table(const RAlgebra& a);

}  // namespace amitsur
