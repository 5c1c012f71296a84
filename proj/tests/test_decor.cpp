#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

#include <optional>
#include <random>

using namespace zzc;

namespace {

template <class T>
const T &pick(std::mt19937_64 &rng, const std::vector<T> &v)
{
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::optional<DecoratedZigZag> random_decorated(std::mt19937_64 &rng, const Diagram &d, Element start, int n)
{
    const auto &J = d.index;
    DecoratedZigZag x{ZigZag::trivial(start.index), {}, {}};
    Element at = start;
    for (int k = 0; k < n; ++k)
    {
        auto in = J.morphisms_in(at.index);
        MorId l = pick(rng, std::vector<MorId>(in.begin(), in.end()));
        auto out = J.morphisms_out(J.src(l));
        MorId r = pick(rng, std::vector<MorId>(out.begin(), out.end()));
        const auto &C = d.node(at.index);
        std::vector<std::pair<ObjId, MorId>> options;
        for (ObjId a = 0; a < d.node(J.src(l)).num_objects(); ++a)
            for (MorId f : C.hom(at.object, push_object(d, l, a)))
                options.push_back({a, f});
        if (options.empty())
            return std::nullopt;
        auto [a, f] = pick(rng, options);
        x.base = concat(x.base, ZigZag::roof(J, l, r));
        x.apex_objects.push_back(a);
        x.chain.push_back(f);
        at = {J.tgt(r), push_object(d, r, a)};
    }
    auto last = d.node(at.index).morphisms_out(at.object);
    x.chain.push_back(pick(rng, std::vector<MorId>(last.begin(), last.end())));
    return x;
}

std::mt19937_64 &rng()
{
    static std::mt19937_64 r(11);
    return r;
}

Element random_element(const Diagram &d)
{
    std::uniform_int_distribution<int> i(0, d.index.num_objects() - 1);
    ObjId idx = i(rng());
    std::uniform_int_distribution<int> a(0, d.node(idx).num_objects() - 1);
    return {idx, a(rng())};
}

} // namespace

TEST_CASE("unit law", "[decor]")
{
    auto d = fixtures::load("roof.json");
    for (int trial = 0; trial < 50; ++trial)
    {
        auto x = random_decorated(rng(), d, random_element(d), trial % 3);
        if (!x)
            continue;
        REQUIRE(validate_decorated(d, *x).empty());
        auto b = x->target(d);
        auto a = x->source(d);
        CHECK(compose_decorated(d, *x, DecoratedZigZag::trivial(b.index, d.node(b.index).identity(b.object))) == *x);
        CHECK(compose_decorated(d, DecoratedZigZag::trivial(a.index, d.node(a.index).identity(a.object)), *x) == *x);
    }
}

TEST_CASE("the roof creates the composite (f, g)", "[decor]")
{
    auto d = fixtures::load("roof.json");
    const auto &J = d.index;
    auto i = find_object(J, "i"), j = find_object(J, "j"), k = find_object(J, "k");
    const auto &A = d.node(i), &B = d.node(j);
    auto f = DecoratedZigZag::trivial(i, find_morphism(A, "f"));
    DecoratedZigZag bridge{ZigZag::roof(J, find_morphism(J, "l"), find_morphism(J, "r")),
                           {find_object(d.node(k), "c")},
                           {A.identity(find_object(A, "x")), find_morphism(B, "g")}};
    REQUIRE(validate_decorated(d, bridge).empty());
    auto fg = compose_decorated(d, f, bridge);
    CHECK(validate_decorated(d, fg).empty());
    CHECK(fg.chain == std::vector<MorId>{find_morphism(A, "f"), find_morphism(B, "g")});
    CHECK(fg.source(d) == Element{i, find_object(A, "a")});
    CHECK(fg.target(d) == Element{j, find_object(B, "b")});
}

TEST_CASE("composition is associative on random triples", "[decor]")
{
    std::size_t checked = 0;
    for (int trial = 0; trial < 300; ++trial)
    {
        auto d = random_diagram(rng(), 2, 4);
        std::uniform_int_distribution<int> len(0, 2);
        auto x = random_decorated(rng(), d, random_element(d), len(rng()));
        if (!x)
            continue;
        auto y = random_decorated(rng(), d, x->target(d), len(rng()));
        if (!y)
            continue;
        auto z = random_decorated(rng(), d, y->target(d), len(rng()));
        if (!z)
            continue;
        auto lhs = compose_decorated(d, compose_decorated(d, *x, *y), *z);
        CHECK(lhs == compose_decorated(d, *x, compose_decorated(d, *y, *z)));
        CHECK(validate_decorated(d, lhs).empty());
        ++checked;
    }
    CHECK(checked > 100);
}

namespace {

// Over the commuting square k → i, j → t with every node the walking arrow
// and every edge the identity functor.
Diagram square_diagram()
{
    FinCat::Builder b;
    auto k = b.add_object("k"), i = b.add_object("i"), j = b.add_object("j"), t = b.add_object("t");
    auto l = b.add_morphism(k, i, "l");
    auto r = b.add_morphism(k, j, "r");
    auto a = b.add_morphism(i, t, "a");
    auto c = b.add_morphism(j, t, "b");
    auto diag = b.add_morphism(k, t, "d");
    b.set_compose(a, l, diag);
    b.set_compose(c, r, diag);
    Diagram d;
    d.index = b.build();
    auto arrow = std::make_shared<const FinCat>(fixtures::walking_arrow());
    d.nodes.assign(4, arrow);
    for (MorId u = 0; u < d.index.num_morphisms(); ++u)
        d.edges.push_back(identity_functor(*arrow));
    return d;
}

} // namespace

TEST_CASE("action of cells", "[decor]")
{
    auto d = square_diagram();
    REQUIRE(validate_diagram(d).empty());
    const auto &J = d.index;
    const auto &C = d.node(0);
    auto f = find_morphism(C, "f");
    auto roof = ZigZag::roof(J, find_morphism(J, "l"), find_morphism(J, "r"));
    DecoratedZigZag x{roof, {0}, {C.identity(0), f}};
    REQUIRE(validate_decorated(d, x).empty());

    SECTION("identity cell leaves the decoration alone")
    {
        CHECK(apply_cell(d, identity_cell(J, roof), x) == x);
    }
    SECTION("a collapsing square composes the pushed entries")
    {
        ZigZagCell rho{roof, ZigZag::trivial(find_object(J, "t")), {0, 0},
                       {find_morphism(J, "a"), find_morphism(J, "b")}, {find_morphism(J, "d")}};
        auto y = apply_cell(d, rho, x);
        CHECK(y == DecoratedZigZag::trivial(find_object(J, "t"), f));
        CHECK(validate_decorated_cell(d, {rho, x, y}).empty());
        auto wrong = y;
        wrong.chain[0] = C.identity(1);
        CHECK_FALSE(validate_decorated_cell(d, {rho, x, wrong}).empty());
    }
}

TEST_CASE("action respects vertical composition", "[decor]")
{
    std::size_t checked = 0;
    for (int trial = 0; trial < 400; ++trial)
    {
        auto d = random_diagram(rng(), 2, 4);
        const auto &J = d.index;
        auto x = random_decorated(rng(), d, random_element(d), trial % 3);
        if (!x)
            continue;
        std::uniform_int_distribution<int> foot(0, x->length());
        int k1 = foot(rng()), k2 = foot(rng());
        auto out1 = J.morphisms_out(x->base.feet[k1]);
        auto c1 = foot_push_cell(J, x->base, k1, pick(rng(), std::vector<MorId>(out1.begin(), out1.end())));
        auto out2 = J.morphisms_out(c1.target.feet[k2]);
        auto c2 = foot_push_cell(J, c1.target, k2, pick(rng(), std::vector<MorId>(out2.begin(), out2.end())));
        REQUIRE(validate_cell(J, c1).empty());
        auto stacked = vcompose_cells(J, c1, c2);
        CHECK(validate_cell(J, stacked).empty());
        auto once = apply_cell(d, stacked, *x);
        CHECK(once == apply_cell(d, c2, apply_cell(d, c1, *x)));
        CHECK(validate_decorated_cell(d, {stacked, *x, once}).empty());

        auto u = unital_cell(J, x->base.first(), 2).cells[0];
        auto constant = DecoratedZigZag{u.source, {x->source(d).object, x->source(d).object},
                                        std::vector<MorId>(3, d.node(x->base.first()).identity(x->source(d).object))};
        CHECK(apply_cell(d, u, constant) ==
              DecoratedZigZag::trivial(x->base.first(), d.node(x->base.first()).identity(x->source(d).object)));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("identity decorations of element paths", "[decor]")
{
    auto d = fixtures::load("roof.json");
    const auto &J = d.index;
    auto i = find_object(J, "i"), j = find_object(J, "j"), k = find_object(J, "k");
    Element a{i, find_object(d.node(i), "a")}, x{i, find_object(d.node(i), "x")}, c{k, 0},
        y{j, find_object(d.node(j), "y")};

    CHECK(identity_decoration(d, a, {}) == DecoratedZigZag::trivial(i, d.node(i).identity(a.object)));

    ElementStep up{find_morphism(J, "l"), c, x, true};
    auto one = identity_decoration(d, c, {up});
    CHECK(validate_decorated(d, one).empty());
    CHECK(one.length() == 1);
    CHECK(one.target(d) == x);

    auto path = element_path(d, x, y);
    REQUIRE(path);
    REQUIRE(path->size() == 2);
    auto two = identity_decoration(d, x, *path);
    CHECK(validate_decorated(d, two).empty());
    CHECK(two.chain.size() == 3);
    CHECK(two.target(d) == y);
    CHECK_THROWS_AS(identity_decoration(d, a, *path), std::invalid_argument);
}
