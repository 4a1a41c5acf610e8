#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "amitsur/extension.hpp"

namespace amitsur {

// S^{(x)1..4} for one extension together with the maps the Amitsur complex
// needs in degree two: faces, collapses and the two partial collapses
// u^1u^2 (x) u^3 and u^1 (x) u^2u^3.
class AmitsurComplex {
public:
    explicit AmitsurComplex(ExtPtr ext, const Limits& limits = {});
    // Reuses a tower that already reaches S^{(x)4}.
    explicit AmitsurComplex(TowerPtr tower);

    const ExtPtr& ext() const { return tower_->ext(); }
    const TowerPtr& tower() const { return tower_; }
    const Limits& limits() const { return tower_->limits(); }
    const RingPtr& ring(int n) const { return tower_->ring(n); }
    const RingHom& face(int n, int i) const { return tower_->face(n, i); }
    const RingHom& collapse(int n) const { return tower_->collapse(n); }
    const RingHom& collapse_left() const { return collapse_left_; }    // u^1u^2 (x) u^3
    const RingHom& collapse_right() const { return collapse_right_; }  // u^1 (x) u^2u^3
    RingElement one(int n) const { return RingElement::one(ring(n)); }
    // Level n with ring(n) == r; throws when r is not in this complex.
    int level_of(const RingPtr& r) const;

private:
    TowerPtr tower_;
    RingHom collapse_left_, collapse_right_;
};

using ComplexPtr = std::shared_ptr<const AmitsurComplex>;
ComplexPtr make_complex(ExtPtr ext, const Limits& limits = {});

// An element u of S^{(x)3} with its classification flags and norm.
class TwistElement {
public:
    TwistElement(ComplexPtr complex, RingElement u);

    const ComplexPtr& complex() const { return complex_; }
    const RingElement& u() const { return u_; }
    const std::optional<RingElement>& inverse() const { return inverse_; }
    bool is_unit() const { return inverse_.has_value(); }
    bool is_cocycle() const { return cocycle_; }
    bool is_cosickle() const { return cosickle_; }
    bool is_almost_invertible() const { return almost_invertible_; }
    const RingElement& norm() const { return norm_; }
    // u_i = eta_i(u) in S^{(x)4}.
    RingElement face(int i) const { return complex_->face(3, i)(u_); }

private:
    ComplexPtr complex_;
    RingElement u_;
    std::optional<RingElement> inverse_;
    bool cocycle_ = false, cosickle_ = false, almost_invertible_ = false;
    RingElement norm_;
};

// Multiplicative coboundary of a unit v of S^{(x)n}: the alternating product
// of eta_1(v), eta_2(v)^-1, eta_3(v), ... in S^{(x)n+1}.
RingElement coboundary(const AmitsurComplex& c, const RingElement& v);

// u unit with u_1 u_2^-1 u_3 u_4^-1 = 1.
bool is_two_cocycle(const AmitsurComplex& c, const RingElement& u);

// |u| = u^1u^2u^3.
RingElement norm(const AmitsurComplex& c, const RingElement& u);

// u^1 (x) |u|^-1 u^2u^3 = 1 (x) 1 and |u|^-1 u^1u^2 (x) u^3 = 1 (x) 1.
// Throws InvalidInput when |u| is not a unit.
bool check_norm_identities(const TwistElement& u);

struct Normalized {
    TwistElement twist;   // u * delta(w)
    RingElement witness;  // w = |u|^-1 (x) 1
};
Normalized normalize(const TwistElement& u);

// (x^1 (x) y^1) (x) ... (x) (x^n (x) y^n) for x in S^{(x)n}, y in T^{(x)n},
// landing in level n of the complex of (S (x) T)/R built by product_complex.
RingElement interleave(const AmitsurComplex& s, const AmitsurComplex& t, const AmitsurComplex& st,
                       const RingElement& x, const RingElement& y);
ComplexPtr product_complex(const AmitsurComplex& s, const AmitsurComplex& t);
// Interleaving of two cocycles over the same extension.
TwistElement tensor_cocycles(const TwistElement& u, const TwistElement& v, const ComplexPtr& st);

// Base change of S/R along R -> S, with the reindexing S^{(x)n+1} of its
// tensor powers; the changed tower reaches level 4.
using SelfBaseChange = std::shared_ptr<const BaseChange>;
SelfBaseChange self_base_change(const AmitsurComplex& c);

struct BaseChangeWitness {
    RingElement witness;        // in level 2 of the base-changed tower
    bool coboundary_matches;    // delta(witness) corresponds to u (x) 1
    bool direct_identity;       // u_4 = u_1 u_2^-1 u_3 in S^{(x)4}
    bool verified() const { return coboundary_matches && direct_identity; }
};
// Computes and checks the witness without requiring a cocycle.
BaseChangeWitness check_base_change_witness(const BaseChange& bc, const TwistElement& u);
// As above; throws InvalidInput unless the witness verifies.
BaseChangeWitness base_change_witness(const BaseChange& bc, const TwistElement& u);

struct CohomologyGroup {
    ExtPtr ext;
    int level = 2;
    std::vector<RingElement> cocycles;         // Z^2, lexicographic
    std::vector<RingElement> coboundaries;     // B^2, lexicographic
    std::vector<RingElement> representatives;  // lex-least element of each coset of B^2
    std::uint64_t order = 0;
};
CohomologyGroup compute_h2(const AmitsurComplex& c);

// The set delta(units of S^{(x)2}), lexicographic.
std::vector<RingElement> coboundary_set(const AmitsurComplex& c);

// A unit w of S^{(x)2} with u = v * delta(w). Candidates s (x) 1 for units s of
// S come first, then all units of S^{(x)2} in lexicographic order.
std::optional<RingElement> cohomologous(const AmitsurComplex& c, const RingElement& u, const RingElement& v);

}  // namespace amitsur
