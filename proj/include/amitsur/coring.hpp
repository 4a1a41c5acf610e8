#pragma once

#include <optional>
#include <string>

#include "amitsur/cohomology.hpp"

namespace amitsur {

// The coring S (x) S over S with comultiplication
//   Delta_u(s (x) t) = u^1 s (x) u^2 (x) u^3 t,
// landing in (S (x) S) (x)_S (S (x) S) = S^{(x)3}. The counit
// eps(s (x) t) = |u|^-1 st is attached when u is an almost invertible cosickle.
class NormalBasisCoring {
public:
    NormalBasisCoring(ComplexPtr complex, RingElement u);

    const ComplexPtr& complex() const { return twist_.complex(); }
    const TwistElement& twist() const { return twist_; }
    // Z/nZ-matrix of Delta : S^{(x)2} -> S^{(x)3}.
    const Matrix& delta_matrix() const { return delta_; }
    RingElement delta(const RingElement& x) const;
    bool has_counit() const { return counit_scale_.has_value(); }
    // eps(1 (x) 1) when the counit is attached.
    const std::optional<RingElement>& counit_scale() const { return counit_scale_; }
    // Throws InvalidInput without a counit.
    RingElement counit(const RingElement& x) const;

private:
    TwistElement twist_;
    Matrix delta_;
    std::optional<RingElement> counit_scale_;
};

NormalBasisCoring canonical_coring(const ComplexPtr& c);
NormalBasisCoring twisted_coring(const ComplexPtr& c, const RingElement& u);

// (Delta (x)_S C) o Delta = (C (x)_S Delta) o Delta, evaluated from the
// Delta matrix alone on every basis element of S^{(x)2}.
bool coassociative_direct(const NormalBasisCoring& C);
// u_1u_3 = u_2u_4.
bool coassociative_identity(const NormalBasisCoring& C);
// Both of the above; throws InternalInconsistency if they differ.
bool check_coassociative(const NormalBasisCoring& C);

struct CounitCheck {
    bool ok = false;
    std::string reason;  // empty when ok
};
// The attached counit satisfies (eps (x) C) o Delta = id = (C (x) eps) o Delta.
CounitCheck check_counit(const NormalBasisCoring& C);
// Both counit laws for the bimodule map s (x) t -> s v t.
bool counit_laws_hold(const NormalBasisCoring& C, const RingElement& v);
// First v in S (lexicographic) whose map s (x) t -> s v t is a counit. Every
// bimodule map S (x) S -> S has this form, so absence means no counit exists.
std::optional<RingElement> find_counit(const NormalBasisCoring& C);

// The S^{(x)3}-linear map x -> x * Delta(1 (x) 1) on S^{(x)3}.
Matrix tilde_delta(const NormalBasisCoring& C);
// Coassociative with tilde_delta bijective.
bool is_azumaya(const NormalBasisCoring& C);

// C_u (x)_{S (x) S} C_v = C_{uv}.
NormalBasisCoring coring_tensor(const NormalBasisCoring& C, const NormalBasisCoring& D);
// C_{u^-1}; throws for a non-unit twist.
NormalBasisCoring dual_coring(const NormalBasisCoring& C);

struct BaseChangedCoring {
    std::shared_ptr<const BaseChange> change;
    ComplexPtr complex;  // of (S (x) T)/T
    NormalBasisCoring coring;
};
// The (S (x) T)/T-coring with twist u (x) 1 read through the reindexing
// (S (x) T)^{(x)_T 3} = S^{(x)3} (x) T.
BaseChangedCoring base_change(const NormalBasisCoring& C, const ExtPtr& t);

// Coring over (S (x) T)/R with the interleaved twist.
NormalBasisCoring external_product(const NormalBasisCoring& C, const NormalBasisCoring& D, const ComplexPtr& st);

// Multiplication by the unit w maps C_v to C_u as S-bimodules; checks that it
// intertwines the comultiplications (and the counits when both exist).
bool verify_coring_iso(const NormalBasisCoring& from, const NormalBasisCoring& to, const RingElement& w);
// A unit w with u = v * delta(w), so that x -> xw is a coring isomorphism
// C_v -> C_u, verified before it is returned.
std::optional<RingElement> iso_test(const NormalBasisCoring& Cu, const NormalBasisCoring& Cv);

}  // namespace amitsur
