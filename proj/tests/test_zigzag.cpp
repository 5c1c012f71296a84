#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

#include <random>

using namespace zzc;

namespace {

// k → i, k → j, i → t, j → t; `commuting` decides whether both paths k → t agree.
FinCat square(bool commuting)
{
    FinCat::Builder b;
    auto k = b.add_object("k"), i = b.add_object("i"), j = b.add_object("j"), t = b.add_object("t");
    auto l = b.add_morphism(k, i, "l");
    auto r = b.add_morphism(k, j, "r");
    auto a = b.add_morphism(i, t, "a");
    auto c = b.add_morphism(j, t, "b");
    auto d1 = b.add_morphism(k, t, "d");
    auto d2 = commuting ? d1 : b.add_morphism(k, t, "d'");
    b.set_compose(a, l, d1);
    b.set_compose(c, r, d2);
    return b.build();
}

ZigZag random_zigzag(std::mt19937_64 &rng, const FinCat &J, ObjId start, int n)
{
    ZigZag z = ZigZag::trivial(start);
    for (int k = 0; k < n; ++k)
    {
        auto in = J.morphisms_in(z.last());
        MorId l = in[std::uniform_int_distribution<std::size_t>(0, in.size() - 1)(rng)];
        auto out = J.morphisms_out(J.src(l));
        MorId r = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
        z = concat(z, ZigZag::roof(J, l, r));
    }
    return z;
}

// Independent count: monotone maps [n] → [m] hitting every value.
std::size_t brute_surjections(int n, int m)
{
    std::size_t count = 0;
    std::vector<int> t(n + 1, 0);
    for (;;)
    {
        bool monotone = true;
        std::vector<bool> hit(m + 1, false);
        for (int k = 0; k <= n; ++k)
        {
            hit[t[k]] = true;
            if (k && t[k] < t[k - 1])
                monotone = false;
        }
        if (monotone && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
            ++count;
        int k = 0;
        while (k <= n && ++t[k] > m)
            t[k++] = 0;
        if (k > n)
            return count;
    }
}

} // namespace

TEST_CASE("concatenation", "[zigzag]")
{
    auto J = square(true);
    auto roof = ZigZag::roof(J, find_morphism(J, "l"), find_morphism(J, "r"));
    CHECK(concat(ZigZag::trivial(roof.first()), roof) == roof);
    CHECK(concat(roof, ZigZag::trivial(roof.last())) == roof);

    auto back = ZigZag::roof(J, find_morphism(J, "r"), find_morphism(J, "l"));
    auto two = concat(roof, back);
    CHECK(two.length() == 2);
    CHECK(validate_zigzag(J, two).empty());
    CHECK(two.first() == two.last());
    CHECK_THROWS_AS(concat(roof, roof), std::invalid_argument);
}

TEST_CASE("concatenation is associative on random zig-zags", "[zigzag]")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto J = random_category(rng, 3, 5);
        std::uniform_int_distribution<int> len(0, 3), obj(0, J.num_objects() - 1);
        auto a = random_zigzag(rng, J, obj(rng), len(rng));
        auto b = random_zigzag(rng, J, a.last(), len(rng));
        auto c = random_zigzag(rng, J, b.last(), len(rng));
        REQUIRE(validate_zigzag(J, a).empty());
        CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
    }
}

TEST_CASE("endpoint surjections", "[zigzag]")
{
    CHECK(enumerate_surjections(1, 0) == std::vector<Surjection>{{0, 0}});
    for (int n = 0; n <= 4; ++n)
        CHECK(enumerate_surjections(n, n) == std::vector<Surjection>{[n] {
                  Surjection id;
                  for (int k = 0; k <= n; ++k)
                      id.push_back(k);
                  return id;
              }()});
    CHECK(enumerate_surjections(3, 2).size() == 3);
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= n; ++m)
        {
            auto all = enumerate_surjections(n, m);
            CHECK(all.size() == brute_surjections(n, m));
            CHECK(std::is_sorted(all.begin(), all.end()));
            for (const auto &t : all)
                CHECK(is_endpoint_surjection(t, n, m));
        }
    CHECK(enumerate_surjections(1, 2).empty());
}

TEST_CASE("generating cells", "[zigzag]")
{
    SECTION("type (i): a commuting square collapses a roof")
    {
        auto J = square(true);
        auto z = ZigZag::roof(J, find_morphism(J, "l"), find_morphism(J, "r"));
        ZigZagCell c{z, ZigZag::trivial(find_object(J, "t")), {0, 0},
                     {find_morphism(J, "a"), find_morphism(J, "b")}, {find_morphism(J, "d")}};
        CHECK(validate_cell(J, c).empty());
        CHECK(factor_cell(c).size() == 1);
    }
    SECTION("a non-commuting component is rejected")
    {
        auto J = square(false);
        auto z = ZigZag::roof(J, find_morphism(J, "l"), find_morphism(J, "r"));
        ZigZagCell c{z, ZigZag::trivial(find_object(J, "t")), {0, 0},
                     {find_morphism(J, "a"), find_morphism(J, "b")}, {find_morphism(J, "d")}};
        CHECK_FALSE(validate_cell(J, c).empty());
    }
    SECTION("type (ii): stacked roofs with commuting squares")
    {
        auto J = square(true);
        auto top = ZigZag::roof(J, find_morphism(J, "l"), find_morphism(J, "r"));
        auto bottom = ZigZag::roof(J, J.identity(find_object(J, "t")), J.identity(find_object(J, "t")));
        ZigZagCell c{top, bottom, {0, 1}, {find_morphism(J, "a"), find_morphism(J, "b")}, {find_morphism(J, "d")}};
        CHECK(validate_cell(J, c).empty());
        auto u = unital_cell(J, find_object(J, "t"), 1);
        auto down = vcompose_cells(J, c, u.cells[0]);
        CHECK(validate_cell(J, down).empty());
        CHECK(down.theta == Surjection{0, 0});
    }
}

TEST_CASE("vertical and horizontal composition", "[zigzag]")
{
    auto dc = delta_category(1);
    const auto &J = dc.cat;
    std::vector<ZigZagCell> cells;
    auto necklaces = small_necklaces(2, 1);
    for (const auto &N : necklaces)
        for (const auto &M : necklaces)
            if (M.size() <= N.size())
                for (auto &c : necklace_cells(dc, N, M))
                    cells.push_back(c);
    REQUIRE(cells.size() > 10);

    for (const auto &c : cells)
    {
        CHECK(vcompose_cells(J, identity_cell(J, c.source), c) == c);
        CHECK(vcompose_cells(J, c, identity_cell(J, c.target)) == c);
        CHECK(hcompose_all(factor_cell(c)) == c);
    }

    std::vector<std::pair<const ZigZagCell *, const ZigZagCell *>> stacks;
    for (const auto &a : cells)
        for (const auto &b : cells)
            if (a.target == b.source)
                stacks.push_back({&a, &b});
    std::size_t checked = 0;
    for (auto [c1, c2] : stacks)
        for (auto [c3, c4] : stacks)
        {
            auto v1 = vcompose_cells(J, *c1, *c2), v2 = vcompose_cells(J, *c3, *c4);
            if (v1.foot.back() != v2.foot.front() || c1->foot.back() != c3->foot.front() ||
                c2->foot.back() != c4->foot.front() || v1.target.last() != v2.target.first() ||
                v1.source.last() != v2.source.first() || c1->target.last() != c3->target.first())
                continue;
            auto lhs = hcompose_cells(v1, v2);
            auto rhs = vcompose_cells(J, hcompose_cells(*c1, *c3), hcompose_cells(*c2, *c4));
            CHECK(validate_cell(J, lhs).empty());
            CHECK(lhs == rhs);
            ++checked;
        }
    CHECK(checked > 100);
}

TEST_CASE("unital cells", "[zigzag]")
{
    auto J = square(true);
    auto i = find_object(J, "i");
    auto u0 = unital_cell(J, i, 0);
    REQUIRE(u0.cells.size() == 1);
    CHECK(u0.cells[0] == identity_cell(J, ZigZag::trivial(i)));
    for (int n = 1; n <= 3; ++n)
    {
        CHECK(validate_vertical(J, unital_cell(J, i, n)).empty());
        CHECK(validate_vertical(J, unital_cell(J, i, n, false)).empty());
    }
}

TEST_CASE("transposition cells", "[zigzag]")
{
    auto J = square(true);
    auto roof = ZigZag::roof(J, find_morphism(J, "l"), find_morphism(J, "r"));
    for (auto side : {TransposeSide::Left, TransposeSide::Right})
    {
        auto v = transpose_cell(J, roof, side);
        CHECK(validate_vertical(J, v).empty());
        CHECK(v.cells.size() == 2);
        CHECK(v.rows.size() == 3);

        auto trivial = transpose_cell(J, ZigZag::trivial(find_object(J, "i")), side);
        CHECK(trivial.cells.empty());
        CHECK(trivial.rows.size() == 1);

        auto back = ZigZag::roof(J, find_morphism(J, "r"), find_morphism(J, "l"));
        auto two = transpose_cell(J, concat(roof, back), side);
        CHECK(validate_vertical(J, two).empty());
        CHECK(two.cells.size() == 4);
    }
}
