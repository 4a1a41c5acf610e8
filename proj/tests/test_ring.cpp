#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "amitsur/errors.hpp"
#include "fixtures.hpp"

using namespace amitsur;

TEST_CASE("quotient rings from monic polynomials") {
    auto f4 = make_quotient_ring(2, {1, 1, 1});
    f4->validate();
    auto a = RingElement::basis(f4, 1);
    CHECK(a * a == a + RingElement::one(f4));  // a^2 = a + 1

    auto gr = make_quotient_ring(4, {1, 1, 1});
    gr->validate();
    CHECK(gr->rank() == 2);
    CHECK(gr->modulus() == 4);
    auto b = RingElement::basis(gr, 1);
    CHECK(b * b == -b - RingElement::one(gr));

    auto split = make_quotient_ring(2, {0, 1, 1});  // x^2 + x
    auto x = RingElement::basis(split, 1);
    CHECK(x * x == x);

    // Leading coefficient 3 is a unit mod 4 and gets normalized away.
    auto normalized = make_quotient_ring(4, {3, 3, 3});
    CHECK(normalized->product(1, 1).size() == 2);
    CHECK_THROWS_AS(make_quotient_ring(4, {1, 1, 2}), InvalidInput);
    CHECK_THROWS_AS(make_quotient_ring(4, {1}), InvalidInput);
}

TEST_CASE("product rings") {
    auto f2 = integers_mod(2);
    auto f4 = make_quotient_ring(2, {1, 1, 1});
    auto p = make_product_ring(f2, f2);
    p->validate();
    CHECK(p->rank() == 2);
    auto e0 = RingElement::basis(p, 0), e1 = RingElement::basis(p, 1);
    CHECK(e0 * e0 == e0);
    CHECK((e0 * e1).is_zero());
    CHECK(make_product_ring(f4, f2)->rank() == 3);
    CHECK(enumerate_units(make_product_ring(f4, f4)).size() == 9);
    CHECK_THROWS_AS(make_product_ring(f2, integers_mod(3)), InvalidInput);
}

TEST_CASE("non-commutative structure constants are rejected") {
    // rank 2 with e0 e1 != e1 e0
    std::vector<Coeff> c(8, 0);
    c[(0 * 2 + 0) * 2 + 0] = 1;
    c[(0 * 2 + 1) * 2 + 1] = 1;
    c[(1 * 2 + 0) * 2 + 0] = 1;
    CHECK_THROWS_AS(FiniteRing::from_structure_constants(2, 2, c, {1, 0}, "bad"), InvalidInput);
}

TEST_CASE("validate detects a broken unit and non-associativity") {
    // e0 = 1 claimed, but e0*e1 = 0.
    std::vector<Coeff> c(8, 0);
    c[0] = 1;
    CHECK_THROWS_AS(FiniteRing::from_structure_constants(2, 2, c, {1, 0}, "broken")->validate(), InvalidInput);
    // a^2 = 1 + a where the unit is e0 but e1*e1 = e0 + e1 is fine; break associativity with e1*e1 = e1 + e1.
    std::vector<Coeff> d(27, 0);
    auto set = [&](int i, int j, int k, Coeff v) { d[(i * 3 + j) * 3 + k] = d[(j * 3 + i) * 3 + k] = v; };
    for (int i = 0; i < 3; ++i) set(0, i, i, 1);
    set(1, 1, 2, 1);  // e1^2 = e2
    set(1, 2, 0, 1);  // e1 e2 = e0
    set(2, 2, 2, 1);  // e2^2 = e2 ; (e1 e1) e2 = e2 but e1 (e1 e2) = e1
    CHECK_THROWS_AS(FiniteRing::from_structure_constants(3, 3, d, {1, 0, 0}, "nonassoc")->validate(), InvalidInput);
}

TEST_CASE("try_invert") {
    auto f4 = make_quotient_ring(2, {1, 1, 1});
    auto one = RingElement::one(f4), a = RingElement::basis(f4, 1);
    CHECK(*try_invert(one) == one);
    CHECK(*try_invert(a) == a * a);
    auto split = make_quotient_ring(2, {0, 1, 1});
    CHECK_FALSE(try_invert(RingElement::basis(split, 1)).has_value());
    CHECK_FALSE(try_invert(RingElement::zero(f4)).has_value());
}

TEST_CASE("enumerate_units agrees with try_invert everywhere") {
    for (auto ring : {make_quotient_ring(2, {1, 1, 1}), make_quotient_ring(4, {1, 1, 1}), make_quotient_ring(6, {5, 0, 1}),
                      make_quotient_ring(9, {1, 0, 1})}) {
        auto units = enumerate_units(ring);
        std::set<Vec> unit_set;
        for (auto& u : units) unit_set.insert(u.coeffs());
        for (auto& x : enumerate_elements(ring)) {
            auto inv = try_invert(x);
            CHECK(bool(inv) == unit_set.count(x.coeffs()) > 0);
            if (inv) CHECK((x * *inv).is_one());
        }
        CHECK(std::is_sorted(units.begin(), units.end()));
    }
}

TEST_CASE("unit counts") {
    auto f4 = make_quotient_ring(2, {1, 1, 1});
    CHECK(enumerate_units(f4).size() == 3);
    auto f2 = integers_mod(2);
    CHECK(enumerate_units(make_product_ring(f2, f2)).size() == 1);
    // GR(4,2) has 16 - 4 = 12 units.
    CHECK(enumerate_units(make_quotient_ring(4, {1, 1, 1})).size() == 12);
    Limits tiny;
    tiny.element_cap = 8;
    CHECK_THROWS_AS(enumerate_units(make_quotient_ring(2, {1, 1, 1, 1, 1}), tiny), RingTooLarge);
}

TEST_CASE("parallel enumeration matches the single-worker order") {
    auto ext = fixtures::f4_over_f2();
    auto tower = make_tower(ext, 3);
    Limits one, four;
    four.jobs = 4;
    CHECK(enumerate_units(tower->ring(3), one) == enumerate_units(tower->ring(3), four));
}

TEST_CASE("extensions reject non-bases") {
    auto f4 = make_quotient_ring(2, {1, 1, 1});
    auto z2 = integers_mod(2);
    Matrix eta(2, 1);
    eta.set_column(0, f4->one());
    RingHom h(z2, f4, eta);
    auto one = RingElement::one(f4);
    CHECK_THROWS_AS(Extension(z2, f4, h, {one, one}), InvalidInput);
    CHECK_THROWS_AS(Extension(z2, f4, h, {one}), InvalidInput);
    CHECK_NOTHROW(Extension(z2, f4, h, {one, RingElement::basis(f4, 1) + one}));
}

TEST_CASE("tensor powers") {
    auto ext = fixtures::f4_over_f2();
    auto tower = make_tower(ext, 4);
    CHECK(tower->ring(1) == ext->top());
    for (int n = 2; n <= 4; ++n) {
        CHECK(tower->ring(n)->rank() == std::size_t(1) << n);
        tower->ring(n)->validate();
    }
    // F4 (x) F4 ~ F4 x F4 has 4 idempotents.
    int idempotents = 0;
    for (auto& x : enumerate_elements(tower->ring(2))) idempotents += (x * x == x);
    CHECK(idempotents == 4);
    CHECK(enumerate_units(tower->ring(2)).size() == 9);
    CHECK(enumerate_units(tower->ring(3)).size() == 81);

    auto gr = make_tower(fixtures::gr42_over_z4(), 3);
    CHECK(gr->ring(3)->rank() == 8);

    // Non-trivial base: F4 (x) F4 as an extension of F2, then over itself.
    auto f4f4 = fixtures::f4f4_over_f2();
    CHECK(f4f4->degree() == 4);
    CHECK(make_tower(f4f4, 2)->ring(2)->rank() == 16);

    Limits small;
    small.max_rank = 8;
    CHECK_THROWS_AS(make_tower(ext, 4, small), RingTooLarge);
}

TEST_CASE("face maps") {
    auto ext = fixtures::f4_over_f2();
    auto tower = make_tower(ext, 4);
    auto S = ext->top();
    auto one = RingElement::one(S), a = RingElement::basis(S, 1);
    auto b = a * a;
    // eta_2(s (x) t) = s (x) 1 (x) t ; eta_1(s (x) t) = 1 (x) s (x) t
    CHECK(tower->face(2, 2)(tower->pure({a, b})) == tower->pure({a, one, b}));
    CHECK(tower->face(2, 1)(tower->pure({a, b})) == tower->pure({one, a, b}));
    CHECK(tower->face(2, 3)(tower->pure({a, b})) == tower->pure({a, b, one}));
    CHECK(tower->face(1, 1)(a) == tower->pure({one, a}));
    CHECK_THROWS_AS(tower->face(2, 4), InvalidInput);
    CHECK_THROWS_AS(tower->face(2, 0), InvalidInput);

    for (int n = 1; n <= 3; ++n)
        for (int i = 1; i <= n + 1; ++i) {
            CHECK(tower->face(n, i).is_unital());
            CHECK(tower->face(n, i).is_multiplicative());
        }
    // eta_j eta_i = eta_i eta_{j-1} for i < j.
    for (int n = 1; n <= 2; ++n)
        for (int j = 2; j <= n + 2; ++j)
            for (int i = 1; i < j; ++i)
                CHECK(compose(tower->face(n + 1, j), tower->face(n, i)) == compose(tower->face(n + 1, i), tower->face(n, j - 1)));
}

TEST_CASE("simplicial identities over a base of rank > 1") {
    auto f4f4 = fixtures::f4f4_over_f2();
    auto f4 = fixtures::f4_over_f2();
    // F4 (x) F4 over F4 via the second factor.
    auto bc = BaseChange(make_tower(f4, 2), f4, 3);
    const auto& tower = *bc.tower();
    CHECK(tower.ext()->base_rank() == 2);
    for (int j = 2; j <= 3; ++j)
        for (int i = 1; i < j; ++i)
            CHECK(compose(tower.face(2, j), tower.face(1, i)) == compose(tower.face(2, i), tower.face(1, j - 1)));
    for (int i = 1; i <= 3; ++i) CHECK(tower.face(2, i).is_multiplicative());
}

TEST_CASE("collapse maps") {
    auto ext = fixtures::f4_over_f2();
    auto tower = make_tower(ext, 4);
    auto S = ext->top();
    auto one = RingElement::one(S), a = RingElement::basis(S, 1);
    CHECK(tower->collapse(3)(tower->pure({one, one, one})) == one);
    CHECK(tower->collapse(3)(tower->pure({a, a, a})) == one);  // a^3 = 1
    for (int n = 1; n <= 3; ++n)
        for (int i = 1; i <= n + 1; ++i)
            CHECK(compose(tower->collapse(n + 1), tower->face(n, i)) == tower->collapse(n));
    CHECK(tower->collapse(2).is_multiplicative());
}

TEST_CASE("base change reindexing is a ring isomorphism") {
    auto ext = fixtures::f4_over_f2();
    auto tower = make_tower(ext, 4);
    BaseChange bc(tower, ext, 3);
    for (int n = 1; n <= 3; ++n) {
        const auto& to = bc.to_split(n);
        const auto& from = bc.from_split(n);
        CHECK(to.is_unital());
        CHECK(to.is_multiplicative());
        CHECK(compose(from, to) == identity_hom(bc.tower()->ring(n)));
        CHECK(compose(to, from) == identity_hom(bc.split_ring(n)));
    }
    // With T = S the split ring at level n is S^{(x)n+1}.
    CHECK(bc.split_ring(2) == tower->ring(3));
}
