#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "amitsur/classify.hpp"
#include "amitsur/cohomology.hpp"
#include "amitsur/errors.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace amitsur;

namespace {

struct F4 {
    ComplexPtr c = make_complex(fixtures::f4_over_f2());
    RingElement one = RingElement::one(c->ring(1));
    RingElement a = RingElement::basis(c->ring(1), 1);
    RingElement p(std::vector<RingElement> slots) const { return c->tower()->pure(slots); }
};

const F4& f4() {
    static F4 f;
    return f;
}

const ComplexPtr& gr42() {
    static ComplexPtr c = make_complex(fixtures::gr42_over_z4());
    return c;
}

std::vector<RingElement> cocycles_of(const AmitsurComplex& c) { return compute_h2(c).cocycles; }

}  // namespace

TEST_CASE("tower arithmetic matches the naive tensor oracle") {
    std::mt19937_64 rng(7);
    for (const ComplexPtr& c : {f4().c, gr42()}) {
        oracle::Naive nv(*c->ring(1));
        const Vec& one = c->ring(1)->one();
        for (int k = 1; k <= 3; ++k) {
            const RingPtr& r = c->ring(k);
            CHECK(r->one() == nv.unit(k, one));
            for (int trial = 0; trial < 25; ++trial) {
                Vec x(r->rank()), y(r->rank());
                for (auto& v : x) v = Coeff(rng() % r->modulus());
                for (auto& v : y) v = Coeff(rng() % r->modulus());
                CHECK(r->multiply(x, y) == nv.mul(x, y, k));
                for (int i = 1; i <= k + 1; ++i) CHECK(c->face(k, i).apply(x) == nv.face(x, k, i, one));
            }
        }
    }
}

TEST_CASE("cocycles of F4/F2 by brute force over the oracle") {
    const auto& c = *f4().c;
    oracle::Naive nv(*c.ring(1));
    const Vec& one = c.ring(1)->one();
    std::vector<Vec> all;
    for (std::uint64_t i = 0; i < 256; ++i) all.push_back(element_at(*c.ring(3), i));
    std::vector<Vec> cocycles;
    int units = 0;
    for (const Vec& u : all) {
        const Vec* inv = nullptr;
        for (const Vec& y : all)
            if (nv.is_one(nv.mul(u, y, 3), 3, one)) {
                inv = &y;
                break;
            }
        if (!inv) continue;
        ++units;
        Vec lhs = nv.mul(nv.mul(nv.face(u, 3, 1, one), nv.face(*inv, 3, 2, one), 4),
                         nv.mul(nv.face(u, 3, 3, one), nv.face(*inv, 3, 4, one), 4), 4);
        if (nv.is_one(lhs, 4, one)) cocycles.push_back(u);
    }
    CHECK(units == 81);
    REQUIRE(cocycles.size() == 3);
    std::vector<Vec> lib;
    for (const auto& u : cocycles_of(c)) lib.push_back(u.coeffs());
    CHECK(lib == cocycles);
}

TEST_CASE("coboundary examples") {
    const auto& f = f4();
    const auto& c = *f.c;
    CHECK(coboundary(c, c.one(2)) == c.one(3));
    CHECK(coboundary(c, f.p({f.a, f.one})) == f.p({f.one, f.a, f.one}));
    CHECK_THROWS_AS(coboundary(c, RingElement::zero(c.ring(2))), InvalidInput);
    CHECK_THROWS_AS(coboundary(c, c.one(4)), InvalidInput);
}

TEST_CASE("delta after delta is trivial") {
    for (const ComplexPtr& cp : {f4().c, gr42()}) {
        const auto& c = *cp;
        auto units2 = enumerate_units(c.ring(2));
        for (const auto& v : units2) CHECK(coboundary(c, coboundary(c, v)).is_one());
        for (const auto& s : enumerate_units(c.ring(1))) CHECK(coboundary(c, coboundary(c, s)).is_one());
        if (cp == f4().c) CHECK(units2.size() == 9);
    }
}

TEST_CASE("is_two_cocycle examples") {
    const auto& f = f4();
    CHECK(is_two_cocycle(*f.c, f.c->one(3)));
    CHECK(is_two_cocycle(*f.c, f.p({f.one, f.a, f.one})));
    CHECK_FALSE(is_two_cocycle(*f.c, RingElement::zero(f.c->ring(3))));
    CHECK_FALSE(is_two_cocycle(*f.c, f.p({f.a, f.one, f.one})));
}

TEST_CASE("cocycles form a subgroup containing the coboundaries") {
    for (const ComplexPtr& cp : {f4().c, gr42()}) {
        const auto& c = *cp;
        auto h = compute_h2(c);
        std::set<RingElement> z(h.cocycles.begin(), h.cocycles.end());
        for (const auto& u : h.cocycles) {
            auto inv = *try_invert(u);
            CHECK(z.count(inv));
            CHECK(norm(c, inv) == *try_invert(norm(c, u)));
        }
        for (std::size_t i = 0; i < h.cocycles.size(); i += 7)
            for (std::size_t j = 0; j < h.cocycles.size(); j += 5) CHECK(z.count(h.cocycles[i] * h.cocycles[j]));
        std::set<RingElement> b(h.coboundaries.begin(), h.coboundaries.end());
        for (const auto& x : h.coboundaries)
            for (const auto& y : h.coboundaries) CHECK(b.count(x * y));
    }
}

TEST_CASE("norm") {
    const auto& f = f4();
    CHECK(norm(*f.c, f.c->one(3)).is_one());
    CHECK(norm(*f.c, f.p({f.one, f.a, f.one})) == f.a);
    std::mt19937_64 rng(3);
    const RingPtr& r3 = f.c->ring(3);
    for (int t = 0; t < 50; ++t) {
        RingElement u(r3, element_at(*r3, rng() % 256)), v(r3, element_at(*r3, rng() % 256));
        CHECK(norm(*f.c, u * v) == norm(*f.c, u) * norm(*f.c, v));
    }
}

TEST_CASE("norm identities hold for every cocycle") {
    for (const ComplexPtr& cp : {f4().c, gr42()}) {
        for (const auto& u : cocycles_of(*cp)) CHECK(check_norm_identities(TwistElement(cp, u)));
    }
    const auto& f = f4();
    CHECK_THROWS_AS(check_norm_identities(TwistElement(f.c, RingElement::zero(f.c->ring(3)))), InvalidInput);
}

TEST_CASE("normalize") {
    const auto& f = f4();
    auto one = normalize(TwistElement(f.c, f.c->one(3)));
    CHECK(one.twist.u().is_one());
    CHECK(one.witness.is_one());
    auto n = normalize(TwistElement(f.c, f.p({f.one, f.a, f.one})));
    CHECK(n.twist.u().is_one());
    CHECK(n.witness == f.p({f.a * f.a, f.one}));
    CHECK_THROWS_AS(normalize(TwistElement(f.c, f.p({f.a, f.one, f.one}))), InvalidInput);

    for (const ComplexPtr& cp : {f4().c, gr42()}) {
        const auto& c = *cp;
        for (const auto& u : cocycles_of(c)) {
            TwistElement t(cp, u);
            auto nz = normalize(t);
            CHECK(nz.twist.is_cocycle());
            CHECK(nz.twist.norm().is_one());
            CHECK(nz.twist.u() == u * coboundary(c, nz.witness));
            auto again = normalize(nz.twist);
            CHECK(again.twist.u() == nz.twist.u());
            CHECK(again.witness.is_one());
        }
    }
}

TEST_CASE("compute_h2") {
    auto h = compute_h2(*f4().c);
    CHECK(h.cocycles.size() == 3);
    CHECK(h.coboundaries.size() == 3);
    CHECK(h.order == 1);
    CHECK(h.representatives.size() == 1);
    CHECK(h.representatives[0] == h.cocycles[0]);

    auto pair = make_complex(fixtures::f2xf2_over_f2());
    auto hp = compute_h2(*pair);
    CHECK(hp.cocycles.size() == 1);
    CHECK(hp.coboundaries.size() == 1);

    // F2[x]/(x^2) over F2 retracts onto F2 (x -> 0), so H2 vanishes.
    auto dual_numbers = make_complex(over_integers(make_quotient_ring(2, {0, 0, 1})));
    CHECK(compute_h2(*dual_numbers).order == 1);
    CHECK(hp.order == 1);

    // GR(4,2)/Z4 is Galois with cyclic group; its relative Brauer group is trivial.
    CHECK(compute_h2(*gr42()).order == 1);

    Limits small;
    small.element_cap = 100;
    CHECK_THROWS_AS(compute_h2(*make_complex(fixtures::f4_over_f2(), small)), RingTooLarge);
}

TEST_CASE("compute_h2 is independent of the worker count") {
    Limits four;
    four.jobs = 4;
    auto a = compute_h2(*gr42());
    auto b = compute_h2(*make_complex(fixtures::gr42_over_z4(), four));
    REQUIRE(a.cocycles.size() == b.cocycles.size());
    for (std::size_t i = 0; i < a.cocycles.size(); ++i) CHECK(a.cocycles[i].coeffs() == b.cocycles[i].coeffs());
    CHECK(a.representatives.size() == b.representatives.size());
}

TEST_CASE("cohomologous") {
    const auto& f = f4();
    const auto& c = *f.c;
    auto u = f.p({f.one, f.a, f.one});
    CHECK(cohomologous(c, u, u)->is_one());
    CHECK(*cohomologous(c, u, c.one(3)) == f.p({f.a, f.one}));
    auto h = compute_h2(c);
    for (const auto& x : h.cocycles)
        for (const auto& y : h.cocycles) {
            auto w = cohomologous(c, x, y);
            REQUIRE(w);
            CHECK(x == y * coboundary(c, *w));
        }
    // A non-cocycle unit is never cohomologous to a cocycle.
    CHECK_FALSE(cohomologous(c, f.p({f.a, f.one, f.one}), c.one(3)).has_value());
    CHECK_THROWS_AS(cohomologous(c, u, RingElement::zero(c.ring(3))), InvalidInput);
}

TEST_CASE("tensoring cocycles") {
    const auto& f = f4();
    auto st = product_complex(*f.c, *f.c);
    auto h = compute_h2(*f.c);
    TwistElement one(f.c, f.c->one(3));
    CHECK(tensor_cocycles(one, one, st).u().is_one());
    for (const auto& x : h.cocycles)
        for (const auto& y : h.cocycles) {
            auto t = tensor_cocycles(TwistElement(f.c, x), TwistElement(f.c, y), st);
            CHECK(t.is_cocycle());
            CHECK(coboundary(*st, t.u()).is_one());
        }
    // Coboundaries go to coboundaries, with the interleaved witness.
    auto units2 = enumerate_units(f.c->ring(2));
    for (std::size_t i = 0; i < units2.size(); i += 2)
        for (std::size_t j = 0; j < units2.size(); j += 3) {
            auto lhs = interleave(*f.c, *f.c, *st, coboundary(*f.c, units2[i]), coboundary(*f.c, units2[j]));
            CHECK(lhs == coboundary(*st, interleave(*f.c, *f.c, *st, units2[i], units2[j])));
        }
    // [u (x) u^-1] = 1.
    for (const auto& x : h.cocycles) {
        auto t = tensor_cocycles(TwistElement(f.c, x), TwistElement(f.c, *try_invert(x)), st);
        auto w = cohomologous(*st, t.u(), st->one(3));
        REQUIRE(w);
        CHECK(t.u() == coboundary(*st, *w));
    }
    auto other = make_complex(fixtures::f2xf2_over_f2());
    CHECK_THROWS_AS(tensor_cocycles(one, TwistElement(other, other->one(3)), st), InvalidInput);
}

TEST_CASE("base change witness") {
    const auto& f = f4();
    auto bc = self_base_change(*f.c);
    auto w1 = base_change_witness(*bc, TwistElement(f.c, f.c->one(3)));
    CHECK(w1.witness.is_one());
    for (const auto& u : cocycles_of(*f.c)) {
        auto w = base_change_witness(*bc, TwistElement(f.c, u));
        CHECK(w.verified());
        CHECK(bc->to_split(2)(w.witness) == u);
    }
    // Every non-cocycle unit fails both checks.
    int failures = 0;
    for (const auto& u : enumerate_units(f.c->ring(3))) {
        TwistElement t(f.c, u);
        if (t.is_cocycle()) continue;
        auto w = check_base_change_witness(*bc, t);
        CHECK_FALSE(w.direct_identity);
        CHECK_FALSE(w.coboundary_matches);
        CHECK_THROWS_AS(base_change_witness(*bc, t), InvalidInput);
        ++failures;
    }
    CHECK(failures == 78);
}

TEST_CASE("twist flags") {
    const auto& f = f4();
    TwistElement zero(f.c, RingElement::zero(f.c->ring(3)));
    CHECK_FALSE(zero.is_unit());
    CHECK(zero.is_cosickle());
    CHECK_FALSE(zero.is_almost_invertible());
    TwistElement u(f.c, f.p({f.one, f.a, f.one}));
    CHECK(u.is_unit());
    CHECK((u.u() * *u.inverse()).is_one());
    CHECK(u.is_cocycle());
    CHECK(u.is_cosickle());
    CHECK(u.is_almost_invertible());
    CHECK(u.norm() == f.a);
    CHECK_THROWS_AS(TwistElement(f.c, f.c->one(2)), InvalidInput);
}
