#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace zzc;

namespace {

// Flags 0 → n at level p by brute force: nested chains of vertex subsets
// of {0..n}, each containing both endpoints.
std::size_t brute_flags(int n, int p)
{
    const unsigned ends = 1u | (1u << n);
    std::vector<unsigned> sets;
    for (unsigned s = 0; s < (1u << (n + 1)); ++s)
        if ((s & ends) == ends)
            sets.push_back(s);
    std::size_t count = 0;
    std::vector<std::size_t> pick(p + 1, 0);
    for (;;)
    {
        bool nested = true;
        for (int l = 1; l <= p; ++l)
            nested = nested && (sets[pick[l - 1]] & ~sets[pick[l]]) == 0;
        count += nested;
        int l = 0;
        while (l <= p && ++pick[l] == sets.size())
            pick[l++] = 0;
        if (l > p)
            return count;
    }
}

std::size_t power(std::size_t b, int e)
{
    std::size_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

Flag flag(int i, int j, std::vector<VertexSet> levels) { return Flag{i, j, std::move(levels)}; }

} // namespace

TEST_CASE("flag categories", "[rigid][flags]")
{
    for (int n = 0; n <= 4; ++n)
        for (int p = 0; p <= 3; ++p)
        {
            CAPTURE(n, p);
            auto fc = flag_category(n, p);
            CHECK(validate_fincat(fc->cat).empty());
            auto count = fc->cat.hom(0, n).size();
            CHECK(count == brute_flags(n, p));
            if (n >= 1)
                CHECK(count == power(p + 2, n - 1));
            for (int v = 0; v <= n; ++v)
                CHECK(fc->flags[fc->cat.identity(v)] == flag(v, v, std::vector<VertexSet>(p + 1, 1u << v)));
        }
    // the single flag {0,1} at every level
    for (int p = 0; p <= 4; ++p)
        CHECK(flag_category(1, p)->cat.hom(0, 1).size() == 1);
    CHECK(flag_category(0, 2)->cat.num_morphisms() == 1);
}

TEST_CASE("flag composition is union", "[rigid][flags]")
{
    auto u = flag(0, 1, {0b011}), v = flag(1, 2, {0b110});
    CHECK(compose_flags(v, u) == flag(0, 2, {0b111}));
    CHECK_THROWS_AS(compose_flags(u, v), std::invalid_argument);
}

TEST_CASE("theta star", "[rigid][flags]")
{
    auto U = flag(0, 2, {0b101, 0b111});
    CHECK(theta_star({0, 1}, U) == U);
    CHECK(theta_star({0}, U) == flag(0, 2, {0b101}));
    CHECK(theta_star({1}, U) == flag(0, 2, {0b111}));

    std::size_t checked = 0;
    for (int n = 1; n <= 3; ++n)
        for (int p = 0; p <= 3; ++p)
        {
            auto fc = flag_category(n, p);
            for (int q = 0; q <= 3; ++q)
                for (int r = 0; r <= 3; ++r)
                    for (const auto &psi : monotone_maps(q, p))
                        for (const auto &theta : monotone_maps(r, q))
                            for (const auto &f : fc->flags)
                            {
                                CHECK(theta_star(compose_maps(psi, theta), f) == theta_star(theta, theta_star(psi, f)));
                                ++checked;
                            }
            for (int q = 0; q <= 3; ++q)
                for (const auto &theta : monotone_maps(q, p))
                    for (MorId g = 0; g < fc->cat.num_morphisms(); ++g)
                        for (MorId h : fc->cat.morphisms_in(fc->cat.src(g)))
                        {
                            const auto &V = fc->flags[g], &W = fc->flags[h];
                            CHECK(theta_star(theta, compose_flags(V, W)) ==
                                  compose_flags(theta_star(theta, V), theta_star(theta, W)));
                        }
        }
    CHECK(checked > 1000);
}

TEST_CASE("chi diagrams", "[rigid][flags]")
{
    auto point = chi_diagram(standard_simplex(0), 2);
    CHECK(validate_diagram(point.diagram).empty());
    for (ObjId x = 0; x < point.diagram.index.num_objects(); ++x)
    {
        CHECK(point.diagram.node(x).num_objects() == 1);
        CHECK(point.diagram.node(x).num_morphisms() == 1);
    }
    auto edge = chi_diagram(standard_simplex(1), 0);
    CHECK(validate_diagram(edge.diagram).empty());
    std::set<std::pair<int, int>> shapes;
    for (ObjId x = 0; x < edge.diagram.index.num_objects(); ++x)
        shapes.insert({edge.diagram.node(x).num_objects(), edge.diagram.node(x).num_morphisms()});
    CHECK(shapes.size() == 2);
}

TEST_CASE("splitting and merging flags", "[rigid][necklace]")
{
    Necklace one{{2}};
    auto U = flag(0, 2, {0b101, 0b111});
    CHECK(split_flag(one, U) == std::vector<Flag>{U});

    Necklace two{{1, 1}};
    auto parts = split_flag(two, flag(0, 2, {0b111}));
    CHECK(parts == std::vector<Flag>{flag(0, 1, {0b11}), flag(0, 1, {0b11})});
    CHECK(merge_flags(two, parts) == flag(0, 2, {0b111}));
    CHECK_THROWS_AS(split_flag(two, flag(0, 2, {0b101})), std::invalid_argument);

    auto r = check_flag_roundtrips(3, 2, 3);
    CHECK(r.checked > 1000);
    CHECK(r.ok());
}

TEST_CASE("cells and bead maps", "[rigid][necklace]")
{
    auto dc = delta_category(2);
    SECTION("identity map gives the identity cell")
    {
        Necklace N{{1, 2}};
        BeadMap id{N, N, {0, 1}, {{0, 1}, {0, 1, 2}}};
        CHECK(cell_from_map(dc, id) == identity_cell(dc.cat, necklace_in_delta(dc, N)));
    }
    SECTION("degenerating the second bead collapses a roof")
    {
        BeadMap f{Necklace{{1, 1}}, Necklace{{1}}, {0, 0}, {{0, 1}, {1, 1}}};
        REQUIRE(validate_bead_map(f).empty());
        auto c = cell_from_map(dc, f);
        CHECK(c.theta == Surjection{0, 0});
        CHECK(validate_cell(dc.cat, c).empty());
        CHECK(map_from_cell(dc, c) == f);
    }
    SECTION("a non-surjective bead assignment is rejected")
    {
        BeadMap f{Necklace{{1}}, Necklace{{1, 1}}, {0}, {{0, 1}}};
        CHECK_THROWS_AS(cell_from_map(dc, f), std::invalid_argument);
    }
    auto r = check_cell_roundtrips(3, 2);
    CHECK(r.checked > 10000);
    CHECK(r.ok());
}

TEST_CASE("rigid homs", "[rigid]")
{
    RigidBounds b;
    auto delta2 = rigid_hom(standard_simplex(2), 0, 2, 0, b);
    REQUIRE(delta2.size() == 2);
    CHECK(delta2.saturated);
    std::set<Flag> flags;
    for (const auto &c : delta2.classes)
        flags.insert(c.representative.flag);
    CHECK(flags.size() == 2);

    for (int p = 0; p <= 3; ++p)
    {
        auto spine2 = rigid_hom(spine(2), 0, 2, p, b);
        CHECK(spine2.size() == 1);
        CHECK(spine2.saturated);
    }

    auto loop = rigid_hom(circle(), 0, 0, 0, b);
    CHECK(loop.size() == 4);
    CHECK_FALSE(loop.saturated);
}

TEST_CASE("necklace replacement", "[rigid]")
{
    for (const char *name : {"delta:2", "boundary:2", "horn:2:1", "spine:3", "circle"})
        for (int p = 0; p <= 1; ++p)
        {
            CAPTURE(name, p);
            auto X = corpus(name);
            auto chi = chi_diagram(X, p);
            auto objects = colim_objects(chi.diagram);
            HomBounds hb;
            hb.max_zz_len = 2;
            ZigZagWindow w(chi.diagram, objects, chi_bounds(chi, hb), 2);
            std::size_t checked = 0;
            for (std::size_t i = 0; i < w.items().size() && checked < 400; ++i, ++checked)
            {
                auto x = decode(chi.diagram.index, w.items()[i]);
                auto rep = necklace_replace(X, chi, x);
                CHECK(validate_decorated_cell(chi.diagram, rep.epsilon).empty());
                CHECK(validate_pair(X, rep.pair).empty());
                CHECK(rep.epsilon.target == x);
                // idempotent on its own output
                auto again = necklace_replace(X, chi, to_decorated(X, chi, rep.pair));
                CHECK(again.pair == rep.pair);
                CHECK(again.epsilon.rho == identity_cell(chi.diagram.index, again.epsilon.source.base));
            }
        }
}

TEST_CASE("rigid homs agree with the colimit of chi", "[rigid]")
{
    struct Case
    {
        const char *name;
        int a, b, p, beads;
        std::size_t classes;
    };
    for (auto c : {Case{"delta:2", 0, 2, 0, 3, 2}, Case{"delta:2", 0, 2, 2, 3, 4}, Case{"delta:3", 0, 3, 1, 3, 9},
                   Case{"boundary:2", 0, 2, 1, 3, 2}, Case{"horn:2:1", 0, 2, 2, 3, 1}, Case{"spine:3", 0, 3, 1, 3, 1},
                   Case{"circle", 0, 0, 0, 3, 4}, Case{"delta:0", 0, 0, 0, 3, 1}})
    {
        CAPTURE(c.name, c.a, c.b, c.p);
        HomBounds engine;
        engine.max_zz_len = c.beads - 1;
        RigidBounds rigid;
        rigid.max_beads = c.beads;
        auto r = compare_rigid(corpus(c.name), c.a, c.b, c.p, engine, rigid);
        CHECK(r.rigid_classes == c.classes);
        CHECK(r.engine_classes == c.classes);
        CHECK(r.bad_cells == 0);
        CHECK(r.inconsistent == 0);
        CHECK(r.bijection);
    }
}
