#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

#include <numeric>
#include <random>

using namespace zzc;

namespace {

// Set diagram over J with the value table of each non-identity morphism
// given in morphism order.
SetDiagram set_diagram(FinCat J, std::vector<int> sizes, std::vector<std::vector<int>> maps)
{
    SetDiagram s{J, sizes, {}};
    std::size_t next = 0;
    for (MorId u = 0; u < J.num_morphisms(); ++u)
    {
        if (J.is_identity(u))
        {
            std::vector<int> id(sizes[J.src(u)]);
            std::iota(id.begin(), id.end(), 0);
            s.maps.push_back(id);
        }
        else
            s.maps.push_back(maps.at(next++));
    }
    return s;
}

FinCat parallel_pair()
{
    FinCat::Builder b;
    auto p = b.add_object("p"), q = b.add_object("q");
    b.add_morphism(p, q, "s");
    b.add_morphism(p, q, "t");
    return b.build();
}

FinCat span()
{
    FinCat::Builder b;
    auto k = b.add_object("k"), i = b.add_object("i"), j = b.add_object("j");
    b.add_morphism(k, i, "l");
    b.add_morphism(k, j, "r");
    return b.build();
}

Element element(const Diagram &d, const std::string &name)
{
    auto dot = name.find('.');
    auto i = find_object(d.index, name.substr(0, dot));
    return {i, find_object(d.node(i), name.substr(dot + 1))};
}

} // namespace

TEST_CASE("set colimits", "[colim][objects]")
{
    SECTION("coequalizer of the identity and the swap")
    {
        auto c = colim_set(set_diagram(parallel_pair(), {2, 2}, {{0, 1}, {1, 0}}));
        CHECK(c.size() == 1);
    }
    SECTION("discrete index gives the disjoint union")
    {
        auto c = colim_set(set_diagram(fixtures::discrete(2), {2, 3}, {}));
        CHECK(c.size() == 5);
    }
    SECTION("pushout {a,b} <- {x} -> {c}")
    {
        auto c = colim_set(set_diagram(span(), {1, 2, 1}, {{0}, {0}}));
        REQUIRE(c.size() == 2);
        CHECK(c.class_of(1, 0) == c.class_of(2, 0));
        CHECK(c.class_of(1, 1) != c.class_of(1, 0));
        CHECK(c.classes()[c.class_of(1, 1)].members.size() == 1);
    }
    SECTION("objects of diagrams of categories")
    {
        CHECK(colim_objects(fixtures::load("roof.json")).size() == 3);
        CHECK(colim_objects(fixtures::load("loop.json")).size() == 1);
        CHECK(colim_objects(fixtures::load("terminal.json")).size() == 3);
    }
}

TEST_CASE("terminal index: homs are the input hom-sets", "[colim]")
{
    auto d = fixtures::load("terminal.json");
    ColimitModel m(d, HomBounds{});
    const auto &c = d.node(0);
    for (ObjId a = 0; a < c.num_objects(); ++a)
        for (ObjId b = 0; b < c.num_objects(); ++b)
        {
            const auto &t = m.hom(m.objects().class_of(0, a), m.objects().class_of(0, b)).table();
            CHECK(t.saturated);
            REQUIRE(t.size() == c.hom(a, b).size());
            for (const auto &cls : t.classes)
            {
                CHECK(cls.representative.length() == 0);
                CHECK(c.src(cls.representative.chain[0]) == a);
            }
        }
    CHECK(compare_with_oracle(m, 3).bijection());
}

TEST_CASE("roof: f and g compose to a new morphism", "[colim]")
{
    auto d = fixtures::load("roof.json");
    ColimitModel m(d, HomBounds{});
    const auto &J = d.index;
    auto a = m.objects().class_of(element(d, "i.a")), b = m.objects().class_of(element(d, "j.b"));
    const auto &t = m.hom(a, b).table();
    REQUIRE(t.size() == 1);
    CHECK(t.saturated);
    CHECK(detail::describe(d, t.classes[0].representative) == "(i) f <l [c] r> g");

    // (f, id, g) over the roof followed by a constant roof collapses onto (f, g).
    auto i = find_object(J, "i"), j = find_object(J, "j");
    DecoratedZigZag longer{concat(ZigZag::roof(J, find_morphism(J, "l"), find_morphism(J, "r")),
                                  ZigZag::constant(J, j, 1)),
                           {0, find_object(d.node(j), "y")},
                           {find_morphism(d.node(i), "f"), d.node(j).identity(find_object(d.node(j), "y")),
                            find_morphism(d.node(j), "g")}};
    REQUIRE(validate_decorated(d, longer).empty());
    auto cls = m.classify(longer);
    REQUIRE(cls);
    CHECK(cls->index == 0);

    auto f = m.classify(DecoratedZigZag::trivial(i, find_morphism(d.node(i), "f")));
    auto g = m.classify(DecoratedZigZag::trivial(j, find_morphism(d.node(j), "g")));
    REQUIRE(f);
    REQUIRE(g);
    auto gf = m.compose_classes(*f, *g);
    REQUIRE(gf);
    CHECK(*gf == *cls);

    auto r = compare_with_oracle(m, 3);
    CHECK(r.bijection());
    CHECK(r.certified());
}

TEST_CASE("loop: four classes in the window, matching the oracle", "[colim]")
{
    auto d = fixtures::load("loop.json");
    ColimitModel m(d, HomBounds{});
    const auto &t = m.hom(0, 0).table();
    CHECK(t.size() == 4);
    CHECK_FALSE(t.saturated);
    auto oracle = oracle_hom(present_colimit(d).presentation, 0, 0, 3);
    CHECK(oracle.size() == 4);
    auto r = compare_with_oracle(m, 3);
    CHECK(r.bijection());
    CHECK_FALSE(r.certified());
    CHECK(r.flagged() == 1);
}

TEST_CASE("identities and composition are well defined", "[colim]")
{
    for (const char *name : {"roof.json", "loop.json", "terminal.json", "twisted_cyclic.json"})
    {
        CAPTURE(name);
        auto d = fixtures::load(name);
        ColimitModel m(d, HomBounds{});
        for (std::size_t s = 0; s < m.objects().size(); ++s)
        {
            auto id = m.identity_class(static_cast<int>(s));
            REQUIRE(id);
            for (std::size_t t = 0; t < m.objects().size(); ++t)
                for (std::size_t c = 0; c < m.hom(s, t).table().size(); ++c)
                {
                    ClassRef ref{static_cast<int>(s), static_cast<int>(t), static_cast<int>(c)};
                    CHECK(m.compose_classes(*id, ref) == ref);
                    CHECK(m.compose_classes(ref, *m.identity_class(static_cast<int>(t))) == ref);
                }
        }
        for (const auto &p : check_well_definedness(m))
        {
            CAPTURE(p.name);
            CHECK(p.ok());
        }
        CHECK(check_cocone(m).ok());
    }
}

TEST_CASE("cells alone do not give a congruence", "[colim]")
{
    // ℤ/2 acting on ℤ/3 by inversion: g ~ g² by a cell, but only closing
    // under composition forces g ~ 1.
    auto d = fixtures::load("twisted_cyclic.json");
    HomBounds plain;
    plain.congruence = false;
    for (int L = 0; L <= 2; ++L)
    {
        plain.max_zz_len = L;
        ColimitModel m(d, plain);
        CHECK(m.hom(0, 0).table().size() == 2);
        CHECK(m.hom(0, 0).table().saturated);
        auto r = compare_with_oracle(m, 3);
        CHECK_FALSE(r.consistent());
        std::size_t failing = 0;
        for (const auto &p : check_well_definedness(m))
            failing += !p.ok();
        CHECK(failing == 2);
    }
    ColimitModel closed(d, HomBounds{});
    CHECK(closed.hom(0, 0).table().size() == 1);
    CHECK(compare_with_oracle(closed, 3).bijection());
}

TEST_CASE("an unsaturated side may separate more than the other", "[colim]")
{
    // An involution s and an idempotent e identified with each other: s = e = 1,
    // which the length-0 window cannot see yet.
    auto inv = fixtures::load("collapsing_involution.json");
    HomBounds b;
    b.max_zz_len = 0;
    auto r0 = compare_with_oracle(ColimitModel(inv, b), 3);
    CHECK(r0.consistent());
    CHECK_FALSE(r0.certified());
    CHECK_FALSE(r0.bijection());
    CHECK(r0.homs[0].engine_classes == 2);
    CHECK(r0.homs[0].oracle_classes == 1);
    b.max_zz_len = 1;
    auto r1 = compare_with_oracle(ColimitModel(inv, b), 3);
    CHECK(r1.certified());
    CHECK(r1.bijection());

    // u = 1 and v = u⁻¹: v = 1, but vᴷ needs a word of length K + 1 to
    // collapse, so no word window ever saturates.
    auto iso = fixtures::load("collapsing_iso.json");
    auto pres = present_colimit(iso);
    for (std::size_t K = 1; K <= 5; ++K)
    {
        auto t = oracle_hom(pres.presentation, 0, 0, K);
        CHECK(t.size() == 2);
        CHECK_FALSE(t.saturated);
    }
    b.max_zz_len = 1;
    ColimitModel m(iso, b);
    CHECK(m.hom(0, 0).table().size() == 1);
    CHECK(m.hom(0, 0).table().saturated);
    auto r = compare_with_oracle(m, 3);
    CHECK(r.consistent());
    CHECK(r.flagged() == 1);
    auto res = check_instance(iso, OracleBounds{}, false);
    CHECK(res.consistent);
    CHECK(res.flagged);
    CHECK(res.window == 2);
}

TEST_CASE("exhaustive sweep with one- and two-object pieces", "[colim][sweep]")
{
    auto cats = small_categories(2, 3);
    OracleBounds bounds;
    bounds.oracle_len = 3;
    auto summary = sweep([&](auto &&fn) { for_each_diagram_class(cats, cats, fn); }, bounds, true, 1);
    CHECK(summary.diagrams > 100);
    CHECK(summary.mismatches == 0);
    CHECK(summary.neither == 0);
    CHECK(summary.properties_ok());
}

TEST_CASE("hom tables do not depend on the number of workers", "[colim]")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto d = random_diagram(rng, 3, 5);
        HomBounds one, many;
        many.jobs = 4;
        ColimitModel a(d, one), b(d, many);
        for (std::size_t s = 0; s < a.objects().size(); ++s)
            for (std::size_t t = 0; t < a.objects().size(); ++t)
            {
                const auto &x = a.hom(s, t).table(), &y = b.hom(s, t).table();
                REQUIRE(x.size() == y.size());
                CHECK(x.saturated == y.saturated);
                for (std::size_t c = 0; c < x.size(); ++c)
                    CHECK(x.classes[c].representative == y.classes[c].representative);
            }
    }
}

TEST_CASE("node budget", "[colim]")
{
    HomBounds b;
    b.budget = 10;
    CHECK_THROWS_AS(ColimitModel(fixtures::load("loop.json"), b).hom(0, 0), BudgetExceeded);
}
