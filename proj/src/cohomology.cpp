#include "amitsur/cohomology.hpp"

#include <algorithm>
#include <set>

#include "amitsur/classify.hpp"
#include "amitsur/errors.hpp"
#include "amitsur/parallel.hpp"

namespace amitsur {

AmitsurComplex::AmitsurComplex(ExtPtr ext, const Limits& limits)
    : tower_(make_tower(std::move(ext), 4, limits)),
      collapse_left_(tower_->slot_map(3, 2, {0, 0, 1})),
      collapse_right_(tower_->slot_map(3, 2, {0, 1, 1})) {}

AmitsurComplex::AmitsurComplex(TowerPtr tower)
    : tower_(std::move(tower)),
      collapse_left_(tower_->max_level() >= 4 ? tower_->slot_map(3, 2, {0, 0, 1})
                                              : throw InvalidInput("Amitsur complex needs S^(x)4")),
      collapse_right_(tower_->slot_map(3, 2, {0, 1, 1})) {}

int AmitsurComplex::level_of(const RingPtr& r) const {
    for (int n = 1; n <= tower_->max_level(); ++n)
        if (tower_->ring(n) == r) return n;
    throw InvalidInput("element does not live in a tensor power of " + ext()->name());
}

ComplexPtr make_complex(ExtPtr ext, const Limits& limits) {
    return std::make_shared<const AmitsurComplex>(std::move(ext), limits);
}

TwistElement::TwistElement(ComplexPtr complex, RingElement u)
    : complex_(std::move(complex)), u_(std::move(u)), norm_(complex_->collapse(3)(u_)) {
    if (u_.ring() != complex_->ring(3)) throw InvalidInput("twist must be an element of S^(x)3");
    inverse_ = try_invert(u_);
    cocycle_ = inverse_ && is_two_cocycle(*complex_, u_);
    cosickle_ = amitsur::is_cosickle(*complex_, u_);
    almost_invertible_ = cosickle_ && amitsur::is_almost_invertible(*complex_, u_);
}

RingElement coboundary(const AmitsurComplex& c, const RingElement& v) {
    const int n = c.level_of(v.ring());
    if (n >= c.tower()->max_level()) throw InvalidInput("coboundary target beyond S^(x)4");
    auto inv = try_invert(v);
    if (!inv) throw InvalidInput("coboundary of a non-unit " + v.to_string());
    RingElement out = c.one(n + 1);
    for (int i = 1; i <= n + 1; ++i) out = out * c.face(n, i)(i % 2 ? v : *inv);
    return out;
}

bool is_two_cocycle(const AmitsurComplex& c, const RingElement& u) {
    if (c.level_of(u.ring()) != 3) throw InvalidInput("2-cocycles live in S^(x)3");
    // Necessary for units and free of inversions; rejects most candidates cheaply.
    if (c.face(3, 1)(u) * c.face(3, 3)(u) != c.face(3, 2)(u) * c.face(3, 4)(u)) return false;
    auto inv = try_invert(u);
    if (!inv) return false;
    return (c.face(3, 1)(u) * c.face(3, 2)(*inv) * c.face(3, 3)(u) * c.face(3, 4)(*inv)).is_one();
}

RingElement norm(const AmitsurComplex& c, const RingElement& u) { return c.collapse(c.level_of(u.ring()))(u); }

bool check_norm_identities(const TwistElement& u) {
    const AmitsurComplex& c = *u.complex();
    auto inv = try_invert(u.norm());
    if (!inv) throw InvalidInput("norm " + u.norm().to_string() + " is not invertible");
    // eta_1 puts |u|^-1 in the second slot, eta_2 in the first.
    bool right = (c.collapse_right()(u.u()) * c.face(1, 1)(*inv)).is_one();
    bool left = (c.collapse_left()(u.u()) * c.face(1, 2)(*inv)).is_one();
    return right && left;
}

Normalized normalize(const TwistElement& u) {
    if (!u.is_cocycle()) throw InvalidInput("normalize needs a 2-cocycle, got " + u.u().to_string());
    const AmitsurComplex& c = *u.complex();
    RingElement w = c.tower()->pure({*try_invert(u.norm()), c.one(1)});
    return {TwistElement(u.complex(), u.u() * coboundary(c, w)), w};
}

ComplexPtr product_complex(const AmitsurComplex& s, const AmitsurComplex& t) {
    return make_complex(tensor_over_base({s.ext(), t.ext()}, s.limits()), s.limits());
}

RingElement interleave(const AmitsurComplex& s, const AmitsurComplex& t, const AmitsurComplex& st,
                       const RingElement& x, const RingElement& y) {
    const int n = s.level_of(x.ring());
    if (t.level_of(y.ring()) != n) throw InvalidInput("interleaving elements of different tensor levels");
    if (s.ext()->base() != t.ext()->base() || st.ext()->base() != s.ext()->base())
        throw InvalidInput("interleaving over different base rings");
    const std::size_t ds = s.ext()->degree(), dt = t.ext()->degree();
    if (st.ext()->degree() != ds * dt) throw InvalidInput("product complex does not match the factors");
    const FiniteRing& base = *s.ext()->base();
    const std::size_t rr = base.rank();
    const Vec xs = s.tower()->to_base_coords(n, x.coeffs());
    const Vec ys = t.tower()->to_base_coords(n, y.coeffs());
    const std::size_t xe = xs.size() / rr, ye = ys.size() / rr;
    Vec out(xe * ye * rr, 0);
    std::vector<std::size_t> id(static_cast<std::size_t>(n)), jd(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < xe; ++i) {
        std::span<const Coeff> xi(xs.data() + i * rr, rr);
        if (std::all_of(xi.begin(), xi.end(), [](Coeff v) { return v == 0; })) continue;
        for (std::size_t r = i, k = std::size_t(n); k-- > 0; r /= ds) id[k] = r % ds;
        for (std::size_t j = 0; j < ye; ++j) {
            std::span<const Coeff> yj(ys.data() + j * rr, rr);
            if (std::all_of(yj.begin(), yj.end(), [](Coeff v) { return v == 0; })) continue;
            for (std::size_t r = j, k = std::size_t(n); k-- > 0; r /= dt) jd[k] = r % dt;
            std::size_t p = 0;
            for (std::size_t k = 0; k < std::size_t(n); ++k) p = p * ds * dt + id[k] * dt + jd[k];
            base_mul_into(base, xi, yj, std::span<Coeff>(out.data() + p * rr, rr));
        }
    }
    return st.tower()->from_base_coords(n, out);
}

TwistElement tensor_cocycles(const TwistElement& u, const TwistElement& v, const ComplexPtr& st) {
    if (u.complex()->ext() != v.complex()->ext()) throw InvalidInput("cocycles over different extensions");
    if (!u.is_cocycle() || !v.is_cocycle()) throw InvalidInput("tensor_cocycles needs two 2-cocycles");
    return TwistElement(st, interleave(*u.complex(), *v.complex(), *st, u.u(), v.u()));
}

SelfBaseChange self_base_change(const AmitsurComplex& c) {
    return std::make_shared<const BaseChange>(c.tower(), c.ext(), 4);
}

BaseChangeWitness check_base_change_witness(const BaseChange& bc, const TwistElement& u) {
    const AmitsurComplex& c = *u.complex();
    if (bc.source() != c.tower() || bc.t_ext() != c.ext())
        throw InvalidInput("base change does not belong to this extension");
    // Level 2 of (S (x) S)/S is S^{(x)3}; the witness is u itself under that identification.
    RingElement w = bc.from_split(2)(u.u());
    BaseChangeWitness out{w, false, false};
    const TowerPtr& changed = bc.tower();
    auto winv = try_invert(w);
    if (winv) {
        RingElement d = changed->face(2, 1)(w) * changed->face(2, 2)(*winv) * changed->face(2, 3)(w);
        out.coboundary_matches = bc.to_split(3)(d) == u.face(4);
    }
    if (u.inverse()) out.direct_identity = u.face(4) == u.face(1) * c.face(3, 2)(*u.inverse()) * u.face(3);
    return out;
}

BaseChangeWitness base_change_witness(const BaseChange& bc, const TwistElement& u) {
    if (!u.is_cocycle()) throw InvalidInput("base change witness needs a 2-cocycle, got " + u.u().to_string());
    BaseChangeWitness w = check_base_change_witness(bc, u);
    if (!w.verified()) throw InternalInconsistency("base change witness failed for the cocycle " + u.u().to_string());
    return w;
}

std::vector<RingElement> coboundary_set(const AmitsurComplex& c) {
    std::set<RingElement> seen;
    for (const auto& v : enumerate_units(c.ring(2), c.limits())) seen.insert(coboundary(c, v));
    return {seen.begin(), seen.end()};
}

CohomologyGroup compute_h2(const AmitsurComplex& c) {
    CohomologyGroup g;
    g.ext = c.ext();
    require_enumerable(*c.ring(3), c.limits());
    const RingPtr& r3 = c.ring(3);
    const std::uint64_t count = *r3->element_count();
    g.cocycles = parallel_collect<RingElement>(count, c.limits().jobs, [&](std::uint64_t i) -> std::optional<RingElement> {
        RingElement u(r3, element_at(*r3, i));
        if (is_two_cocycle(c, u)) return u;
        return std::nullopt;
    });
    g.coboundaries = coboundary_set(c);
    std::set<RingElement> z(g.cocycles.begin(), g.cocycles.end());
    for (const auto& b : g.coboundaries)
        if (!z.count(b)) throw InternalInconsistency("coboundary " + b.to_string() + " is not a cocycle");
    // Cosets in lexicographic order of their least element.
    std::set<RingElement> covered;
    for (const auto& u : g.cocycles) {
        if (covered.count(u)) continue;
        g.representatives.push_back(u);
        for (const auto& b : g.coboundaries) covered.insert(u * b);
    }
    if (g.cocycles.size() % g.coboundaries.size() != 0 ||
        g.representatives.size() != g.cocycles.size() / g.coboundaries.size())
        throw InternalInconsistency("coset count disagrees with |Z2|/|B2|");
    g.order = g.representatives.size();
    return g;
}

std::optional<RingElement> cohomologous(const AmitsurComplex& c, const RingElement& u, const RingElement& v) {
    if (c.level_of(u.ring()) != 3 || c.level_of(v.ring()) != 3) throw InvalidInput("cohomologous compares elements of S^(x)3");
    auto vinv = try_invert(v);
    if (!vinv) throw InvalidInput("cohomologous needs a unit twist, got " + v.to_string());
    const RingElement target = u * *vinv;
    // delta(w) = target  <=>  w_1 w_3 = target * w_2, avoiding an inversion per candidate.
    auto matches = [&](const RingElement& w) {
        return c.face(2, 1)(w) * c.face(2, 3)(w) == target * c.face(2, 2)(w);
    };
    for (const auto& s : enumerate_units(c.ring(1), c.limits())) {
        RingElement w = c.tower()->pure({s, c.one(1)});
        if (matches(w)) return w;
    }
    const RingPtr& r2 = c.ring(2);
    require_enumerable(*r2, c.limits());
    auto found = parallel_collect<RingElement>(*r2->element_count(), c.limits().jobs,
                                               [&](std::uint64_t i) -> std::optional<RingElement> {
                                                   RingElement w(r2, element_at(*r2, i));
                                                   if (matches(w) && is_unit(w)) return w;
                                                   return std::nullopt;
                                               });
    if (found.empty()) return std::nullopt;
    return found.front();
}

}  // namespace amitsur
