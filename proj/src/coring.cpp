#include "amitsur/coring.hpp"

#include "amitsur/errors.hpp"

namespace amitsur {

namespace {

// r_k b_{I_1} (x) ... (x) b_{I_m}, for a base-coordinate index of S^{(x)m}.
RingElement basis_tensor(const AmitsurComplex& c, int level, std::size_t index) {
    Vec rc(c.ring(level)->rank(), 0);
    rc[index] = 1;
    return c.tower()->from_base_coords(level, rc);
}

// The two ways of cutting the basis element r_k b_i (x) b_j (x) b_l of
// S^{(x)3} = C (x)_S C: (r_k b_i (x) b_j, b_l) and (r_k b_i, b_j (x) b_l).
struct Cut {
    RingElement left, right;
};

Cut cut_after_two(const AmitsurComplex& c, std::size_t index) {
    const std::size_t rr = c.ext()->base_rank(), d = c.ext()->degree();
    const std::size_t k = index % rr, flat = index / rr, l = flat % d, ij = flat / d;
    return {basis_tensor(c, 2, ij * rr + k), c.ext()->basis()[l]};
}

Cut cut_after_one(const AmitsurComplex& c, std::size_t index) {
    const std::size_t rr = c.ext()->base_rank(), d = c.ext()->degree();
    const std::size_t k = index % rr, flat = index / rr, jl = flat % (d * d), i = flat / (d * d);
    const auto& b = c.ext()->basis();
    return {basis_tensor(c, 1, i * rr + k), c.tower()->pure({b[jl / d], b[jl % d]})};
}

}  // namespace

NormalBasisCoring::NormalBasisCoring(ComplexPtr complex, RingElement u)
    : twist_(std::move(complex), std::move(u)) {
    const AmitsurComplex& c = *twist_.complex();
    delta_ = multiply(c.ring(3)->zn(), c.ring(3)->multiplication_matrix(twist_.u().coeffs()), c.face(2, 2).matrix());
    if (twist_.is_almost_invertible()) counit_scale_ = try_invert(twist_.norm());
}

RingElement NormalBasisCoring::delta(const RingElement& x) const {
    if (x.ring() != complex()->ring(2)) throw InvalidInput("Delta is defined on S (x) S");
    return {complex()->ring(3), apply(complex()->ring(3)->zn(), delta_, x.coeffs())};
}

RingElement NormalBasisCoring::counit(const RingElement& x) const {
    if (!counit_scale_) throw InvalidInput("coring with twist " + twist_.u().to_string() + " has no counit");
    if (x.ring() != complex()->ring(2)) throw InvalidInput("the counit is defined on S (x) S");
    return *counit_scale_ * complex()->collapse(2)(x);
}

NormalBasisCoring canonical_coring(const ComplexPtr& c) { return {c, c->one(3)}; }

NormalBasisCoring twisted_coring(const ComplexPtr& c, const RingElement& u) { return {c, u}; }

bool coassociative_direct(const NormalBasisCoring& C) {
    const AmitsurComplex& c = *C.complex();
    const RingPtr& r3 = c.ring(3);
    const std::size_t n3 = r3->rank();
    // Columns: images of the Z/nZ basis of S^{(x)3} under Delta (x) C and C (x) Delta.
    Matrix left(c.ring(4)->rank(), n3), right(c.ring(4)->rank(), n3);
    for (std::size_t e = 0; e < n3; ++e) {
        Cut a = cut_after_two(c, e);
        // (r_k b_i (x) b_j) (x)_S (1 (x) b_l)  ->  Delta(r_k b_i (x) b_j) (x) b_l
        RingElement l = c.face(3, 4)(C.delta(a.left)) * c.tower()->pure({c.one(1), c.one(1), c.one(1), a.right});
        Cut b = cut_after_one(c, e);
        // (r_k b_i (x) 1) (x)_S (b_j (x) b_l)  ->  r_k b_i (x) Delta(b_j (x) b_l)
        RingElement r = c.face(3, 1)(C.delta(b.right)) * c.tower()->pure({b.left, c.one(1), c.one(1), c.one(1)});
        left.set_column(e, l.coeffs());
        right.set_column(e, r.coeffs());
    }
    const Zn& zn = r3->zn();
    return multiply(zn, left, C.delta_matrix()) == multiply(zn, right, C.delta_matrix());
}

bool coassociative_identity(const NormalBasisCoring& C) {
    const TwistElement& u = C.twist();
    return u.face(1) * u.face(3) == u.face(2) * u.face(4);
}

bool check_coassociative(const NormalBasisCoring& C) {
    const bool a = coassociative_direct(C), b = coassociative_identity(C);
    if (a != b)
        throw InternalInconsistency("coassociativity methods disagree on twist " + C.twist().u().to_string());
    return a;
}

bool counit_laws_hold(const NormalBasisCoring& C, const RingElement& v) {
    const AmitsurComplex& c = *C.complex();
    if (v.ring() != c.ring(1)) throw InvalidInput("counit scale must lie in S");
    auto eps = [&](const RingElement& x) { return v * c.collapse(2)(x); };
    const RingPtr& r2 = c.ring(2);
    const std::size_t n3 = c.ring(3)->rank();
    Matrix left(r2->rank(), n3), right(r2->rank(), n3);
    for (std::size_t e = 0; e < n3; ++e) {
        Cut a = cut_after_two(c, e);
        // eps(r_k b_i (x) b_j) . (1 (x) b_l)
        left.set_column(e, (c.face(1, 2)(eps(a.left)) * c.face(1, 1)(a.right)).coeffs());
        Cut b = cut_after_one(c, e);
        // (r_k b_i (x) 1) . eps(b_j (x) b_l)
        right.set_column(e, (c.face(1, 2)(b.left) * c.face(1, 1)(eps(b.right))).coeffs());
    }
    const Zn& zn = r2->zn();
    const Matrix id = Matrix::identity(r2->rank());
    return multiply(zn, left, C.delta_matrix()) == id && multiply(zn, right, C.delta_matrix()) == id;
}

CounitCheck check_counit(const NormalBasisCoring& C) {
    if (!C.has_counit()) {
        if (!C.twist().is_cosickle()) return {false, "twist is not a cosickle"};
        return {false, "twist is a cosickle but not almost invertible"};
    }
    if (!counit_laws_hold(C, *C.counit_scale())) return {false, "counit laws fail"};
    return {true, {}};
}

std::optional<RingElement> find_counit(const NormalBasisCoring& C) {
    const AmitsurComplex& c = *C.complex();
    for (const auto& v : enumerate_elements(c.ring(1), c.limits()))
        if (counit_laws_hold(C, v)) return v;
    return std::nullopt;
}

Matrix tilde_delta(const NormalBasisCoring& C) {
    const AmitsurComplex& c = *C.complex();
    return c.ring(3)->multiplication_matrix(C.delta(c.one(2)).coeffs());
}

bool is_azumaya(const NormalBasisCoring& C) {
    return check_coassociative(C) && is_bijective(C.complex()->ring(3)->zn(), tilde_delta(C));
}

NormalBasisCoring coring_tensor(const NormalBasisCoring& C, const NormalBasisCoring& D) {
    if (C.complex() != D.complex()) throw InvalidInput("tensoring corings over different extensions");
    const RingElement one = C.complex()->one(2);
    return {C.complex(), C.delta(one) * D.delta(one)};
}

NormalBasisCoring dual_coring(const NormalBasisCoring& C) {
    if (!C.twist().is_unit()) throw InvalidInput("dual coring needs a unit twist, got " + C.twist().u().to_string());
    return {C.complex(), *C.twist().inverse()};
}

BaseChangedCoring base_change(const NormalBasisCoring& C, const ExtPtr& t) {
    const AmitsurComplex& c = *C.complex();
    auto bc = std::make_shared<const BaseChange>(c.tower(), t, 4);
    auto changed = std::make_shared<const AmitsurComplex>(bc->tower());
    RingElement u = bc->from_split(3)(bc->extend_scalars(C.twist().u(), 3));
    return {bc, changed, NormalBasisCoring(changed, u)};
}

NormalBasisCoring external_product(const NormalBasisCoring& C, const NormalBasisCoring& D, const ComplexPtr& st) {
    return {st, interleave(*C.complex(), *D.complex(), *st, C.twist().u(), D.twist().u())};
}

bool verify_coring_iso(const NormalBasisCoring& from, const NormalBasisCoring& to, const RingElement& w) {
    const AmitsurComplex& c = *from.complex();
    if (to.complex() != from.complex()) throw InvalidInput("coring isomorphism across different extensions");
    if (w.ring() != c.ring(2) || !is_unit(w)) return false;
    auto f = [&](const RingElement& x) { return x * w; };
    const RingPtr& r2 = c.ring(2);
    for (std::size_t e = 0; e < r2->rank(); ++e) {
        RingElement x = RingElement::basis(r2, e);
        // (f (x)_S f)(Delta_from(x)) expanded over (r_k b_i (x) b_j) (x)_S (1 (x) b_l).
        const RingElement y = from.delta(x);
        RingElement image = RingElement::zero(c.ring(3));
        for (std::size_t k = 0; k < y.rank(); ++k) {
            if (!y.coeffs()[k]) continue;
            Cut a = cut_after_two(c, k);
            RingElement term = c.face(2, 3)(f(a.left)) * c.face(2, 1)(f(c.face(1, 1)(a.right)));
            image = image + term.scaled(y.coeffs()[k]);
        }
        if (image != to.delta(f(x))) return false;
        if (from.has_counit() && to.has_counit() && to.counit(f(x)) != from.counit(x)) return false;
    }
    return true;
}

std::optional<RingElement> iso_test(const NormalBasisCoring& Cu, const NormalBasisCoring& Cv) {
    if (Cu.complex() != Cv.complex()) throw InvalidInput("iso_test across different extensions");
    if (!Cv.twist().is_unit()) throw InvalidInput("iso_test needs a unit twist, got " + Cv.twist().u().to_string());
    auto w = cohomologous(*Cu.complex(), Cu.twist().u(), Cv.twist().u());
    if (!w) return std::nullopt;
    if (!verify_coring_iso(Cv, Cu, *w))
        throw InternalInconsistency("coboundary witness " + w->to_string() + " does not give a coring isomorphism");
    return w;
}

}  // namespace amitsur
