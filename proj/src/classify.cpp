#include "amitsur/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "amitsur/errors.hpp"
#include "amitsur/parallel.hpp"

namespace amitsur {

bool is_cosickle(const AmitsurComplex& c, const RingElement& u) {
    if (c.level_of(u.ring()) != 3) throw InvalidInput("cosickles live in S^(x)3");
    return c.face(3, 1)(u) * c.face(3, 3)(u) == c.face(3, 2)(u) * c.face(3, 4)(u);
}

bool is_almost_invertible(const AmitsurComplex& c, const RingElement& u) {
    return is_cosickle(c, u) && is_unit(c.collapse_left()(u)) && is_unit(c.collapse_right()(u));
}

namespace {

CensusEntry census_entry(const ComplexPtr& c, const RingElement& u) {
    NormalBasisCoring C(c, u);
    const TwistElement& t = C.twist();
    CensusEntry e{u};
    e.unit = t.is_unit();
    e.cocycle = t.is_cocycle();
    e.cosickle = t.is_cosickle();
    e.almost_invertible = t.is_almost_invertible();
    e.degenerate = e.cosickle && (t.face(1) * t.face(3)).is_zero();
    e.coassociative = coassociative_direct(C);
    e.counit_admitting = e.coassociative && find_counit(C).has_value();
    e.azumaya = e.coassociative && is_bijective(c->ring(3)->zn(), tilde_delta(C));
    return e;
}

}  // namespace

CosickleClassification classify_all(const ComplexPtr& c, bool units_only) {
    CosickleClassification out;
    out.ext = c->ext();
    out.units_only = units_only;
    const RingPtr& r3 = c->ring(3);
    require_enumerable(*r3, c->limits());
    out.entries = parallel_collect<CensusEntry>(*r3->element_count(), c->limits().jobs,
                                                [&](std::uint64_t i) -> std::optional<CensusEntry> {
                                                    RingElement u(r3, element_at(*r3, i));
                                                    if (units_only && !is_unit(u)) return std::nullopt;
                                                    return census_entry(c, u);
                                                });
    for (const auto& e : out.entries) {
        out.units += e.unit;
        out.cocycles += e.cocycle;
        out.cosickles += e.cosickle;
        out.almost_invertible += e.almost_invertible;
        out.degenerate += e.degenerate;
        if ((e.cocycle && !e.almost_invertible) || (e.almost_invertible && !e.cosickle) || (e.cosickle && !e.coassociative))
            ++out.chain_violations;
        out.coassociative_mismatches += e.coassociative != e.cosickle;
        out.counit_mismatches += e.counit_admitting != e.almost_invertible;
        out.azumaya_mismatches += e.azumaya != e.cocycle;
    }
    return out;
}

TwistElement recover_twist(const NormalBasisCoring& C) {
    return TwistElement(C.complex(), C.delta(C.complex()->one(2)));
}

MonoidQuotient monoid_quotient(const ComplexPtr& c, MonoidKind kind, bool units_only) {
    MonoidQuotient out{kind, coboundary_set(*c), {}};
    const RingPtr& r3 = c->ring(3);
    require_enumerable(*r3, c->limits());
    auto members = parallel_collect<RingElement>(*r3->element_count(), c->limits().jobs,
                                                 [&](std::uint64_t i) -> std::optional<RingElement> {
                                                     RingElement u(r3, element_at(*r3, i));
                                                     if (units_only && !is_unit(u)) return std::nullopt;
                                                     bool in = kind == MonoidKind::full ? is_cosickle(*c, u)
                                                                                        : is_almost_invertible(*c, u);
                                                     if (in) return u;
                                                     return std::nullopt;
                                                 });
    std::set<RingElement> covered;
    for (const auto& u : members) {
        if (covered.count(u)) continue;
        std::set<RingElement> orbit;
        for (const auto& b : out.coboundaries) orbit.insert(u * b);
        covered.insert(orbit.begin(), orbit.end());
        out.orbits.push_back({u, {orbit.begin(), orbit.end()}, is_unit(u)});
    }
    return out;
}

BrauerClasses::BrauerClasses(ComplexPtr c) : complex_(std::move(c)), coboundaries_(coboundary_set(*complex_)) {}

BrauerClass BrauerClasses::of_cocycle(const RingElement& u) const {
    std::optional<RingElement> best;
    for (const auto& b : coboundaries_) {
        RingElement x = u * b;
        if (norm(*complex_, x).is_one() && (!best || x < *best)) best = x;
    }
    if (!best) throw InternalInconsistency("coset of " + u.to_string() + " has no normalized member");
    return {*best};
}

BrauerClass BrauerClasses::of(const NormalBasisCoring& C) const {
    if (C.complex() != complex_) throw InvalidInput("coring over a different extension");
    if (!is_azumaya(C)) throw InvalidInput("Brauer class of a non-Azumaya coring " + C.twist().u().to_string());
    return of_cocycle(C.twist().u());
}

BrauerClass BrauerClasses::identity() const { return of(canonical_coring(complex_)); }

BrauerClass BrauerClasses::multiply(const BrauerClass& a, const BrauerClass& b) const {
    return of(coring_tensor(NormalBasisCoring(complex_, a.representative), NormalBasisCoring(complex_, b.representative)));
}

BrauerClass BrauerClasses::inverse(const BrauerClass& a) const {
    return of(dual_coring(NormalBasisCoring(complex_, a.representative)));
}

RefinementComparison compare_via_refinement(const NormalBasisCoring& C, const NormalBasisCoring& D) {
    if (!is_azumaya(C) || !is_azumaya(D)) throw InvalidInput("refinement comparison needs Azumaya corings");
    const ComplexPtr& s = C.complex();
    const ComplexPtr& t = D.complex();
    if (s->ext()->base() != t->ext()->base()) throw InvalidInput("corings over different base rings");
    RefinementComparison out;
    if (s == t) {
        out.refinement = s;
        out.witness = cohomologous(*s, C.twist().u(), D.twist().u());
    } else {
        out.refinement = product_complex(*s, *t);
        RingElement u = interleave(*s, *t, *out.refinement, C.twist().u(), t->one(3));
        RingElement v = interleave(*s, *t, *out.refinement, s->one(3), D.twist().u());
        out.witness = cohomologous(*out.refinement, u, v);
    }
    out.equivalent = out.witness.has_value();
    return out;
}

}  // namespace amitsur
