#pragma once

#include <memory>
#include <string>
#include <vector>

#include "amitsur/ring.hpp"

namespace amitsur {

class Extension;
using ExtPtr = std::shared_ptr<const Extension>;

// S over R, with S free over R on an explicit basis.
//
// Elements of S (and of its tensor powers over R) have two coordinate
// systems: native Z/nZ-coordinates in the FiniteRing, and "base coordinates"
// listing one R-coefficient per R-basis element, each R-coefficient being a
// block of rank(R) Z/nZ-coordinates. Tensor powers are built so that their
// native coordinates coincide with base coordinates.
class Extension {
public:
    Extension(RingPtr base, RingPtr top, RingHom eta, std::vector<RingElement> basis, std::string name = {});

    static ExtPtr make(RingPtr base, RingPtr top, RingHom eta, std::vector<RingElement> basis, std::string name = {});

    const RingPtr& base() const { return base_; }
    const RingPtr& top() const { return top_; }
    const RingHom& eta() const { return eta_; }
    const std::vector<RingElement>& basis() const { return basis_; }
    std::size_t degree() const { return basis_.size(); }
    std::size_t base_rank() const { return base_->rank(); }
    const std::string& name() const { return name_; }

    Vec to_base_coords(std::span<const Coeff> s) const;
    Vec from_base_coords(std::span<const Coeff> rc) const;
    // Base coordinates of b_i * b_j.
    const Vec& basis_product(std::size_t i, std::size_t j) const { return basis_products_[i * degree() + j]; }
    const Vec& one_coords() const { return one_coords_; }

private:
    RingPtr base_, top_;
    RingHom eta_;
    std::vector<RingElement> basis_;
    std::string name_;
    Matrix to_coords_, from_coords_;
    std::vector<Vec> basis_products_;
    Vec one_coords_;
};

// Z/nZ (one shared object per n), and the extension S/(Z/nZ) with
// basis the native basis of S.
RingPtr integers_mod(std::uint64_t n);
ExtPtr over_integers(const RingPtr& top);

// R-multiplication of base-ring coordinate blocks.
void base_mul_into(const FiniteRing& base, std::span<const Coeff> a, std::span<const Coeff> b, std::span<Coeff> out);

// Pure tensor scalar * (x_1 (x) ... (x) x_k) in base coordinates, where each
// x_s is given in base coordinates of a factor of degree dims[s].
Vec pure_tensor(const FiniteRing& base, std::span<const Coeff> scalar, const std::vector<Vec>& slots);

// S_1 (x)_R ... (x)_R S_k as an extension of R, with basis the pure tensors of
// basis elements (lexicographic, first slot most significant).
ExtPtr tensor_over_base(const std::vector<ExtPtr>& factors, const Limits& limits = {});

// Tensor powers S^{(x)1..max_level} of one extension with their face maps.
// Level 1 is S itself in native coordinates; level n >= 2 is the
// tensor_over_base ring of n copies.
class TensorTower {
public:
    TensorTower(ExtPtr ext, int max_level, const Limits& limits = {});

    const ExtPtr& ext() const { return ext_; }
    int max_level() const { return int(levels_.size()); }
    const RingPtr& ring(int level) const;
    const Limits& limits() const { return limits_; }

    // eta_i : S^{(x)n} -> S^{(x)n+1}, 1 <= i <= n+1, inserts 1 at slot i.
    const RingHom& face(int n, int i) const;
    // m : S^{(x)n} -> S, multiplies all slots.
    const RingHom& collapse(int n) const;
    // S^{(x)from} -> S^{(x)to}: source slot s goes to target slot target_slots[s]
    // (0-based); slots landing together are multiplied, empty target slots get 1.
    RingHom slot_map(int from, int to, const std::vector<int>& target_slots) const;

    Vec to_base_coords(int level, std::span<const Coeff> x) const;
    RingElement from_base_coords(int level, std::span<const Coeff> rc) const;

    // x_1 (x) ... (x) x_k for elements of S.
    RingElement pure(const std::vector<RingElement>& slots) const;

private:
    ExtPtr ext_;
    Limits limits_;
    std::vector<RingPtr> levels_;
    std::vector<std::vector<RingHom>> faces_;
    std::vector<RingHom> collapses_;
};

using TowerPtr = std::shared_ptr<const TensorTower>;
TowerPtr make_tower(ExtPtr ext, int max_level = 4, const Limits& limits = {});

// Base change of S/R along R -> T: the extension (S (x)_R T)/T with T-basis
// b_i (x) 1, plus the reindexing isomorphisms
//   (S (x) T)^{(x)_T n}  <->  S^{(x)n} (x)_R T,
//   (s_1 (x) t_1) (x) ... (x) (s_n (x) t_n)  |->  s_1 (x) ... (x) s_n (x) t_1...t_n.
// When T is S itself the right-hand side is S^{(x)n+1}, sharing rings with
// `source_tower`.
class BaseChange {
public:
    BaseChange(TowerPtr source_tower, ExtPtr t, int max_level = 4);

    const TowerPtr& source() const { return source_; }
    const ExtPtr& t_ext() const { return t_; }
    const TowerPtr& tower() const { return tower_; }  // of (S (x) T)/T
    // Ring holding S^{(x)n} (x)_R T.
    const RingPtr& split_ring(int n) const { return split_rings_.at(std::size_t(n - 1)); }
    const RingHom& to_split(int n) const { return to_split_.at(std::size_t(n - 1)); }
    const RingHom& from_split(int n) const { return from_split_.at(std::size_t(n - 1)); }

    // x (x) 1 in S^{(x)n} (x) T, for x in S^{(x)n}.
    RingElement extend_scalars(const RingElement& x, int n) const;

private:
    TowerPtr source_;
    ExtPtr t_;
    TowerPtr tower_;
    std::vector<RingPtr> split_rings_;
    std::vector<RingHom> to_split_, from_split_;
};

}  // namespace amitsur
