#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace zzc;

namespace {

std::size_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Monotone maps [m] → [n], counted by brute force over all functions.
std::size_t brute_monotone(int m, int n)
{
    std::size_t count = 0;
    std::vector<int> t(m + 1, 0);
    for (;;)
    {
        count += std::is_sorted(t.begin(), t.end());
        int k = 0;
        while (k <= m && ++t[k] > n)
            t[k++] = 0;
        if (k > m)
            return count;
    }
}

// Every simplex of X up to dimension `top`, degenerate ones included.
std::vector<SimplexRef> simplices_up_to(const FinSSet &X, int top)
{
    std::vector<SimplexRef> out;
    for (int k = 0; k <= X.dimension(); ++k)
        for (int id = 0; id < X.count(k); ++id)
            for (int m = k; m <= top; ++m)
                for (auto &s : monotone_maps(m, k))
                    if (s.front() == 0 && s.back() == k &&
                        std::adjacent_find(s.begin(), s.end(), [](int a, int b) { return b > a + 1; }) == s.end())
                        out.push_back(X.apply(s, X.nondegenerate(k, id)));
    return out;
}

std::vector<std::pair<std::string, FinSSet>> corpus_sets()
{
    return {{"delta:0", standard_simplex(0)}, {"delta:3", standard_simplex(3)}, {"boundary:2", boundary(2)},
            {"boundary:3", boundary(3)},      {"horn:2:1", horn(2, 1)},         {"horn:3:0", horn(3, 0)},
            {"spine:3", spine(3)},            {"circle", circle()}};
}

} // namespace

TEST_CASE("nondegenerate counts", "[sset]")
{
    for (int n = 0; n <= 4; ++n)
    {
        auto X = standard_simplex(n);
        for (int k = 0; k <= n; ++k)
            CHECK(static_cast<std::size_t>(X.count(k)) == binomial(n + 1, k + 1));
        CHECK(validate_sset(X).empty());
    }
    CHECK(boundary(2).counts() == std::vector<int>{3, 3});
    CHECK(boundary(3).counts() == std::vector<int>{4, 6, 4});
    CHECK(horn(2, 1).counts() == std::vector<int>{3, 2});
    CHECK(horn(3, 1).counts() == std::vector<int>{4, 6, 3});
    CHECK(spine(3).counts() == std::vector<int>{4, 3});
    CHECK(circle().counts() == std::vector<int>{1, 1});
    CHECK_THROWS_AS(boundary(0), std::invalid_argument);
    CHECK_THROWS_AS(standard_simplex(1).face_of(standard_simplex(1).nondegenerate(0, 0), 0), std::invalid_argument);
    CHECK_THROWS_AS(horn(2, 3), std::invalid_argument);
}

TEST_CASE("simplicial identities and normal forms", "[sset]")
{
    for (auto &[name, X] : corpus_sets())
    {
        CAPTURE(name);
        CHECK(validate_sset(X).empty());
        for (const auto &x : simplices_up_to(X, X.dimension() + 2))
        {
            const int n = x.dim();
            CHECK(X.apply(identity_map(n), x) == x);
            auto word = x.degeneracy_word();
            CHECK(std::adjacent_find(word.begin(), word.end(), std::less_equal<int>()) == word.end());
            for (int j = 0; j <= n && n >= 2; ++j)
                for (int i = 0; i < j; ++i)
                    CHECK(X.face_of(X.face_of(x, j), i) == X.face_of(X.face_of(x, i), j - 1));
            for (int j = 0; j <= n; ++j)
            {
                auto s = X.degeneracy_of(x, j);
                CHECK(X.face_of(s, j) == x);
                CHECK(X.face_of(s, j + 1) == x);
                for (int i = 0; i <= j; ++i)
                    CHECK(X.degeneracy_of(X.degeneracy_of(x, j), i) == X.degeneracy_of(X.degeneracy_of(x, i), j + 1));
            }
        }
    }
}

TEST_CASE("between subsimplex", "[sset]")
{
    auto X = standard_simplex(3);
    auto top = X.nondegenerate(3, 0);
    auto x = between_subsimplex(X, top, 1, 3);
    CHECK(X.vertices(x) == std::vector<int>{1, 2, 3});
    CHECK_FALSE(x.degenerate());
    auto v = between_subsimplex(X, top, 2, 2);
    CHECK(v.dim() == 0);
    CHECK(X.vertices(v) == std::vector<int>{2});
    CHECK_THROWS_AS(between_subsimplex(X, top, 2, 1), std::invalid_argument);

    // s₀⟨01⟩ has vertices 0,0,1; its face between positions 0 and 1 is s₀⟨0⟩.
    auto edge = between_subsimplex(X, top, 0, 1);
    auto degenerate = X.degeneracy_of(edge, 0);
    auto face = between_subsimplex(X, degenerate, 0, 1);
    CHECK(face.nd_dim == 0);
    CHECK(face.dim() == 1);
    CHECK(X.vertices(face) == std::vector<int>{0, 0});
}

TEST_CASE("categories of simplices", "[sset]")
{
    for (int n = 0; n <= 2; ++n)
        for (int cap = n; cap <= n + 1; ++cap)
        {
            auto S = simplex_category(standard_simplex(n), cap);
            std::size_t objects = 0, arrows = 0;
            for (int k = 0; k <= cap; ++k)
                objects += brute_monotone(k, n);
            // an arrow is a simplex y together with θ : [m] → [dim y], m ≤ cap
            for (int k = 0; k <= cap; ++k)
                for (int m = 0; m <= cap; ++m)
                    arrows += brute_monotone(k, n) * brute_monotone(m, k);
            CHECK(static_cast<std::size_t>(S.cat.num_objects()) == objects);
            CHECK(static_cast<std::size_t>(S.cat.num_morphisms()) == arrows);
            CHECK(validate_fincat(S.cat).empty());
        }
    CHECK(simplex_category(standard_simplex(0), 1).cat.num_objects() == 2);
    CHECK(simplex_category(standard_simplex(1), 1).cat.num_objects() == 5);

    auto N = nondegenerate_simplex_category(boundary(2));
    CHECK(N.cat.num_objects() == 6);
    CHECK(N.cat.num_morphisms() == 6 + 6);
}

TEST_CASE("realizations of zig-zags in Delta", "[sset]")
{
    CHECK(realize_zigzag(DeltaZigZag{{2}, {}, {}, {}}).counts() == standard_simplex(2).counts());

    auto wedge = realize_zigzag(necklace_zigzag({2, 1, 1}));
    CHECK(wedge.counts() == std::vector<int>{5, 5, 1});

    // two triangles glued along an edge
    DeltaZigZag roof{{2, 2}, {1}, {{0, 1}}, {{0, 1}}};
    auto glued = realize_zigzag(roof);
    CHECK(glued.counts() == std::vector<int>{4, 5, 2});
    CHECK(validate_sset(glued).empty());

    DeltaZigZag bad{{1, 1}, {1}, {{0, 0}}, {{0, 1}}};
    CHECK_THROWS_AS(realize_zigzag(bad), std::invalid_argument);
}

TEST_CASE("sset json round trip", "[sset][io]")
{
    for (auto &[name, X] : corpus_sets())
    {
        CAPTURE(name);
        auto again = sset_from_json(to_json(X));
        CHECK(again.counts() == X.counts());
        CHECK(validate_sset(again).empty());
    }
    CHECK(corpus("circle").counts() == circle().counts());
    CHECK(corpus("horn:3:2").counts() == horn(3, 2).counts());
    CHECK_THROWS_AS(corpus("torus"), SchemaError);
    CHECK_THROWS_AS(corpus("delta:x"), SchemaError);
}
