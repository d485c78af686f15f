#include "doctest.h"

#include "fixtures.hpp"
#include "laxcat/laxcomma.hpp"

using namespace laxcat;

namespace {

lax_object over_const(const char *nm, cat_ptr w, cat_ptr x, int v) {
    return make_lax_object(constant_functor(nm, std::move(w), std::move(x), v));
}

} // namespace

TEST_CASE("lax hom enumeration counts") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    auto one = fixtures::one_cat();
    lax_object c0 = over_const("c0", one, x2, 0);
    lax_object c1 = over_const("c1", one, x2, 1);
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));

    CHECK(enumerate_lax_hom(c0, c1).size() == 1);
    CHECK(enumerate_lax_hom(c1, c0).empty());
    CHECK(enumerate_lax_hom(c0, c0).size() == 1);
    CHECK(enumerate_lax_hom(f1, f1).size() == 2);
    CHECK(enumerate_lax_hom(c0, f1).size() == 2);
    CHECK(enumerate_lax_hom(f1, c0).empty());
    CHECK(enumerate_lax_hom(f1, c1).size() == 1);

    // adjoint hom counts: maps out of the zero structure and into the one
    // structure biject with plain functors
    lax_object z = over_const("z", two, x2, 0);
    lax_object o = over_const("o", two, x2, 1);
    CHECK(enumerate_lax_hom(z, f1).size() == enumerate_functors(two, two).size());
    CHECK(enumerate_lax_hom(f1, o).size() == enumerate_functors(two, two).size());
}

TEST_CASE("lax hom enumeration is canonical under shuffle") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));
    auto base = enumerate_lax_hom(f1, f1);
    set_shuffle_seed(20240816);
    auto shuffled = enumerate_lax_hom(f1, f1);
    set_shuffle_seed(0);
    REQUIRE(shuffled.size() == base.size());
    for (size_t i = 0; i < base.size(); ++i) CHECK(shuffled[i] == base[i]);
}

TEST_CASE("composition pastes cells") {
    auto x3 = fixtures::x3();
    auto one = fixtures::one_cat();
    lax_object a = over_const("a", one, x3, 0);
    lax_object b = over_const("b", one, x3, 1);
    lax_object c = over_const("c", one, x3, 2);
    int bot_mid = *x3->morphism_index("0<=m");
    int mid_top = *x3->morphism_index("m<=1");
    int bot_top = *x3->morphism_index("0<=1");

    functor idf = identity_functor(one);
    lax_morphism f = make_lax_morphism(
        idf, make_nat_trans("f", a.structure, compose_functor(b.structure, idf), {bot_mid}),
        b.structure);
    lax_morphism g = make_lax_morphism(
        idf, make_nat_trans("g", b.structure, compose_functor(c.structure, idf), {mid_top}),
        c.structure);

    lax_morphism gf = compose_lax(g, f);
    CHECK(gf.cell.at(0) == bot_top);
    CHECK(gf.source() == a);
    CHECK(gf.target() == c);
    CHECK_FALSE(is_strict(gf));
    CHECK(is_strict(identity_lax(a)));

    CHECK(compose_lax(f, identity_lax(a)) == f);
    CHECK(compose_lax(identity_lax(b), f) == f);
    CHECK_THROWS_WITH_AS(compose_lax(f, g), doctest::Contains("end to end"), error);
}

TEST_CASE("identity and unit laws across a hom set") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));
    lax_object c0 = over_const("c0", fixtures::one_cat(), x2, 0);
    for (const auto &m : enumerate_lax_hom(c0, f1)) {
        CHECK(compose_lax(m, identity_lax(c0)) == m);
        CHECK(compose_lax(identity_lax(f1), m) == m);
    }
}

TEST_CASE("lax morphism validation") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    auto one = fixtures::one_cat();
    lax_object c0 = over_const("c0", one, x2, 0);
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));

    // cell targeting the wrong composite
    functor pick_s = constant_functor("ps", one, two, 0);
    functor pick_t = constant_functor("pt", one, two, 1);
    nat_trans cell_s = make_nat_trans("u", c0.structure, compose_functor(f1.structure, pick_s),
                                      {x2->identity(0)});
    CHECK_THROWS_WITH_AS(make_lax_morphism(pick_t, cell_s, f1.structure),
                         doctest::Contains("composite"), error);
    // structures over different categories
    lax_object wrong = over_const("w", one, fixtures::x3(), 0);
    CHECK_THROWS_AS(make_lax_morphism(pick_s, cell_s, wrong.structure), error);
}

TEST_CASE("two cells between parallel lax morphisms") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));

    auto homs = enumerate_lax_hom(f1, f1);
    REQUIRE(homs.size() == 2);
    // canonical order: identity base map sorts before the constant at t
    lax_morphism idm = identity_lax(f1);
    REQUIRE(homs[0] == idm);
    lax_morphism ct = homs[1];
    CHECK(ct.f.ob(0) == 1);
    CHECK(ct.f.ob(1) == 1);

    auto up = enumerate_two_cells(idm, ct);
    REQUIRE(up.size() == 1);
    CHECK(up[0].at(0) == *two->morphism_index("a"));
    CHECK(up[0].at(1) == two->identity(1));
    CHECK(is_two_cell(idm, ct, up[0]));

    CHECK(enumerate_two_cells(ct, idm).empty());
    CHECK(enumerate_two_cells(idm, idm).size() == 1);

    lax_object c0 = over_const("c0", fixtures::one_cat(), x2, 0);
    lax_morphism other = enumerate_lax_hom(c0, f1)[0];
    CHECK_THROWS_WITH_AS(is_two_cell(idm, other, up[0]), doctest::Contains("parallel"), error);
}

TEST_CASE("cartesian lifts and factorizations") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    auto one = fixtures::one_cat();
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));

    functor pick_t = constant_functor("pt", one, two, 1);
    lax_morphism lift = cartesian_lift(f1, pick_t);
    CHECK(is_strict(lift));
    CHECK(lift.source().structure.ob(0) == 1);
    CHECK(lift.target() == f1);

    // a map from the zero structure through the lift
    lax_object c0 = over_const("c0", one, x2, 0);
    nat_trans cell = make_nat_trans("u", c0.structure, compose_functor(f1.structure, pick_t),
                                    {*x2->morphism_index("0<=1")});
    lax_morphism through = make_lax_morphism(pick_t, cell, f1.structure);
    lax_morphism fac = cartesian_factor(lift, through, identity_functor(one));
    CHECK(compose_lax(lift, fac) == through);

    // the factorizing cell is unique
    int count = 0;
    for (const auto &m : enumerate_lax_hom(c0, lift.source()))
        if (m.f == identity_functor(one) && compose_lax(lift, m) == through) ++count;
    CHECK(count == 1);

    functor pick_s = constant_functor("ps", one, two, 0);
    CHECK_THROWS_AS(cartesian_factor(cartesian_lift(f1, pick_s), through, identity_functor(one)),
                    error);
}

TEST_CASE("constant structure embeddings") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    x_structure xs(x2);

    lax_object lw = lax_left(two, xs);
    CHECK(lw.structure.ob(0) == 0);
    CHECK(lw.structure.ob(1) == 0);
    CHECK(underlying_category(lw) == two);

    lax_object rw = lax_right(two, xs);
    CHECK(rw.structure.ob(0) == 1);

    // functoriality on a composable pair in Cat
    auto one = fixtures::one_cat();
    functor pick_s = constant_functor("ps", one, two, 0);
    functor bang = constant_functor("b", two, one, 0);
    CHECK(compose_lax(lax_left_mor(pick_s, xs), lax_left_mor(bang, xs)) ==
          lax_left_mor(compose_functor(pick_s, bang), xs));
    CHECK(compose_lax(lax_right_mor(pick_s, xs), lax_right_mor(bang, xs)) ==
          lax_right_mor(compose_functor(pick_s, bang), xs));
    CHECK(is_strict(lax_left_mor(pick_s, xs)));

    x_structure no_init(fixtures::v_cat());
    CHECK_THROWS_AS(lax_left(two, no_init), error);
    CHECK_THROWS_AS(lax_right(two, no_init), error);
    x_structure no_top(fixtures::meetless_p3());
    CHECK_THROWS_AS(lax_left(two, no_top), error);
    CHECK(lax_right(two, no_top).structure.ob(0) == 2);
}

TEST_CASE("counit and unit components") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    x_structure xs(x2);
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));

    lax_morphism eps = left_counit(f1, xs);
    CHECK(eps.f == identity_functor(two));
    CHECK(eps.cell.at(0) == x2->identity(0));
    CHECK(eps.cell.at(1) == *x2->morphism_index("0<=1"));
    CHECK_FALSE(is_strict(eps));

    lax_morphism eta = right_unit(f1, xs);
    CHECK(eta.cell.at(0) == *x2->morphism_index("0<=1"));
    CHECK(eta.cell.at(1) == x2->identity(1));

    // naturality of both over every endomap of (two, F1)
    for (const auto &m : enumerate_lax_hom(f1, f1)) {
        CHECK(compose_lax(m, left_counit(f1, xs)) ==
              compose_lax(left_counit(f1, xs), lax_left_mor(m.f, xs)));
        CHECK(compose_lax(right_unit(f1, xs), m) ==
              compose_lax(lax_right_mor(m.f, xs), right_unit(f1, xs)));
    }
}

TEST_CASE("adjunction bijections and mutations") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    x_structure xs(x2);
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));

    auto ok_l = check_constant_structure_bijection(two, 0, f1, true, xs);
    CHECK(ok_l.ok);
    CHECK(ok_l.detail.find("3 checked") != std::string::npos);
    auto ok_r = check_constant_structure_bijection(two, 1, f1, false, xs);
    CHECK(ok_r.ok);

    // corrupted candidates: the wrong constant breaks unique lifting
    auto bad_l = check_constant_structure_bijection(two, 1, f1, true, xs);
    CHECK_FALSE(bad_l.ok);
    CHECK(bad_l.detail.find("BijectiveFailure") != std::string::npos);
    auto bad_r = check_constant_structure_bijection(two, 0, f1, false, xs);
    CHECK_FALSE(bad_r.ok);

    std::vector<cat_ptr> bases = {fixtures::one_cat(), two};
    std::vector<lax_object> objs = {f1, over_const("c1", fixtures::one_cat(), x2, 1)};
    CHECK(check_triangle_identities(bases, objs, true, xs).ok);
    CHECK(check_triangle_identities(bases, objs, false, xs).ok);
}

TEST_CASE("truncation materializes a finite full subcategory") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    auto one = fixtures::one_cat();
    lax_object c0 = over_const("c0", one, x2, 0);
    lax_object c1 = over_const("c1", one, x2, 1);
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));

    truncation tr = truncate({c0, c1, f1});
    // validate_category inside truncate has already checked totality,
    // identities and associativity of the pasted composition
    CHECK(tr.cat->object_count() == 3);
    CHECK(tr.cat->morphism_count() == 9);
    CHECK(tr.cat->hom(0, 2).size() == 2);
    CHECK(tr.cat->hom(2, 0).empty());
    CHECK(tr.cat->hom(1, 2).size() == 1);

    CHECK(*tr.find_object(c1) == 1);
    CHECK_FALSE(tr.find_object(over_const("cx", one, fixtures::x3(), 0)).has_value());

    // table composition agrees with pasting
    for (int g = 0; g < tr.cat->morphism_count(); ++g)
        for (int f = 0; f < tr.cat->morphism_count(); ++f) {
            if (tr.cat->cod(f) != tr.cat->dom(g)) continue;
            int gf = tr.cat->compose(g, f);
            CHECK(tr.morphisms[gf] == compose_lax(tr.morphisms[g], tr.morphisms[f]));
        }
    for (int i = 0; i < 3; ++i)
        CHECK(tr.morphisms[tr.cat->identity(i)] == identity_lax(tr.objects[i]));

    std::vector<lax_object> too_many(65, c0);
    CHECK_THROWS_AS(truncate(too_many), error);
}

TEST_CASE("canonical probes") {
    auto x2 = fixtures::x2();
    auto probes = canonical_probes(x2, 5);
    REQUIRE(probes.size() == 5);
    CHECK(probes[0].base()->object_count() == 1);
    CHECK(probes[0].structure.ob(0) == 0);
    CHECK(probes[1].structure.ob(0) == 1);
    for (int i = 2; i < 5; ++i) CHECK(probes[i].base() == probe_two());

    // full supply over this base: 2 constants, 3 arrows, 3 parallel pairs
    CHECK(canonical_probes(x2, 8).size() == 8);
    CHECK_THROWS_AS(canonical_probes(x2, 9), error);
    CHECK(canonical_probes(x2, 0).empty());

    // deterministic across calls
    auto again = canonical_probes(x2, 5);
    for (int i = 0; i < 5; ++i) CHECK(again[i] == probes[i]);
}
