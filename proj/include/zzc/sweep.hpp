#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fincat.hpp"

namespace zzc {

namespace detail {

// A category as plain tables: non-identity morphisms with endpoints and the
// composite of every composable pair of non-identity morphisms (index into
// morphisms, or -1 - o for the identity of o).
struct CatTable
{
    int objects = 0;
    std::vector<std::pair<int, int>> ends;
    std::map<std::pair<int, int>, int> comp; // (g, f) ↦ g∘f

    friend bool operator==(const CatTable &, const CatTable &) = default;
    friend auto operator<=>(const CatTable &, const CatTable &) = default;
};

inline bool associative(const CatTable &t)
{
    auto c = [&](int g, int f) -> int {
        if (f < 0)
            return g;
        if (g < 0)
            return f;
        return t.comp.at({g, f});
    };
    const int n = static_cast<int>(t.ends.size());
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g)
        {
            if (t.ends[f].second != t.ends[g].first)
                continue;
            for (int h = 0; h < n; ++h)
                if (t.ends[g].second == t.ends[h].first && c(h, c(g, f)) != c(c(h, g), f))
                    return false;
        }
    return true;
}

// Relabel by an object permutation and a morphism permutation.
inline CatTable relabel(const CatTable &t, const std::vector<int> &obj, const std::vector<int> &mor)
{
    CatTable r;
    r.objects = t.objects;
    r.ends.resize(t.ends.size());
    for (std::size_t m = 0; m < t.ends.size(); ++m)
        r.ends[mor[m]] = {obj[t.ends[m].first], obj[t.ends[m].second]};
    for (auto [key, h] : t.comp)
        r.comp[{mor[key.first], mor[key.second]}] = h < 0 ? -1 - obj[-1 - h] : mor[h];
    return r;
}

// Least relabelling that keeps morphisms sorted by endpoints.
inline CatTable canonical(const CatTable &t)
{
    std::vector<int> obj(t.objects);
    std::iota(obj.begin(), obj.end(), 0);
    std::optional<CatTable> best;
    do
    {
        std::vector<int> order(t.ends.size());
        std::iota(order.begin(), order.end(), 0);
        auto key = [&](int m) { return std::make_pair(obj[t.ends[m].first], obj[t.ends[m].second]); };
        std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
        // Permute within equal endpoint blocks.
        std::vector<std::pair<int, int>> blocks;
        for (std::size_t i = 0; i < order.size();)
        {
            std::size_t j = i;
            while (j < order.size() && key(order[j]) == key(order[i]))
                ++j;
            blocks.push_back({static_cast<int>(i), static_cast<int>(j)});
            i = j;
        }
        auto go = [&](auto &self, std::size_t b) -> void {
            if (b == blocks.size())
            {
                std::vector<int> mor(order.size());
                for (std::size_t pos = 0; pos < order.size(); ++pos)
                    mor[order[pos]] = static_cast<int>(pos);
                auto r = relabel(t, obj, mor);
                if (!best || r < *best)
                    best = r;
                return;
            }
            auto [lo, hi] = blocks[b];
            std::sort(order.begin() + lo, order.begin() + hi);
            do
                self(self, b + 1);
            while (std::next_permutation(order.begin() + lo, order.begin() + hi));
        };
        go(go, 0);
    } while (std::next_permutation(obj.begin(), obj.end()));
    return *best;
}

inline FinCat build_table(const CatTable &t)
{
    FinCat::Builder b;
    for (int o = 0; o < t.objects; ++o)
        b.add_object(std::string(1, static_cast<char>('a' + o)));
    std::vector<MorId> id(t.ends.size());
    for (std::size_t m = 0; m < t.ends.size(); ++m)
        id[m] = b.add_morphism(t.ends[m].first, t.ends[m].second, "f" + std::to_string(m));
    for (auto [key, h] : t.comp)
        b.set_compose(id[key.first], id[key.second], h < 0 ? b.identity(-1 - h) : id[h]);
    return b.build();
}

} // namespace detail

/// Every category with at most max_objects objects and max_morphisms
/// morphisms (identities included), one per isomorphism class, in a fixed
/// order.
inline std::vector<FinCat> small_categories(int max_objects, int max_morphisms)
{
    std::vector<detail::CatTable> found;
    for (int n = 1; n <= max_objects; ++n)
    {
        const int extra = max_morphisms - n;
        for (int k = 0; k <= extra; ++k)
        {
            // Endpoints for k morphisms, non-decreasing to skip reorderings.
            std::vector<std::pair<int, int>> pairs;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    pairs.push_back({a, b});
            std::vector<int> pick(k, 0);
            for (;;)
            {
                detail::CatTable t;
                t.objects = n;
                for (int p : pick)
                    t.ends.push_back(pairs[p]);
                // Composable pairs and their candidate composites.
                std::vector<std::pair<int, int>> slots;
                std::vector<std::vector<int>> options;
                for (int g = 0; g < k; ++g)
                    for (int f = 0; f < k; ++f)
                        if (t.ends[f].second == t.ends[g].first)
                        {
                            slots.push_back({g, f});
                            std::vector<int> opt;
                            auto want = std::make_pair(t.ends[f].first, t.ends[g].second);
                            if (want.first == want.second)
                                opt.push_back(-1 - want.first);
                            for (int h = 0; h < k; ++h)
                                if (t.ends[h] == want)
                                    opt.push_back(h);
                            options.push_back(opt);
                        }
                bool possible = std::all_of(options.begin(), options.end(), [](auto &o) { return !o.empty(); });
                std::vector<std::size_t> choice(slots.size(), 0);
                while (possible)
                {
                    t.comp.clear();
                    for (std::size_t s = 0; s < slots.size(); ++s)
                        t.comp[slots[s]] = options[s][choice[s]];
                    if (detail::associative(t))
                        found.push_back(detail::canonical(t));
                    std::size_t s = 0;
                    while (s < slots.size() && ++choice[s] == options[s].size())
                        choice[s++] = 0;
                    if (s == slots.size())
                        break;
                }
                int i = k - 1;
                while (i >= 0 && pick[i] == static_cast<int>(pairs.size()) - 1)
                    --i;
                if (i < 0)
                    break;
                ++pick[i];
                for (int j = i + 1; j < k; ++j)
                    pick[j] = pick[i];
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const detail::CatTable &x, const detail::CatTable &y) {
        auto size = [](const detail::CatTable &t) { return std::make_pair(t.objects + t.ends.size(), t.objects); };
        if (size(x) != size(y))
            return size(x) < size(y);
        return x < y;
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::vector<FinCat> out;
    for (auto &t : found)
        out.push_back(detail::build_table(t));
    return out;
}

/// Every functor A → B, in lexicographic order of (object map, morphism map).
inline std::vector<Functor> functors(const FinCat &A, const FinCat &B)
{
    std::vector<Functor> out;
    Functor f;
    f.obj_map.assign(A.num_objects(), 0);
    f.mor_map.assign(A.num_morphisms(), kNone);
    auto consistent = [&](MorId m) {
        // Composites g∘h = m with both already assigned must agree.
        for (MorId g = 0; g <= m; ++g)
            for (MorId h : A.morphisms_in(A.src(g)))
            {
                if (h > m || f.mor_map[g] == kNone || f.mor_map[h] == kNone)
                    continue;
                MorId c = A.compose(g, h);
                if (c <= m && f.mor_map[c] != kNone && B.compose(f.mor_map[g], f.mor_map[h]) != f.mor_map[c])
                    return false;
            }
        return true;
    };
    auto morphs = [&](auto &self, MorId m) -> void {
        if (m == A.num_morphisms())
        {
            out.push_back(f);
            return;
        }
        ObjId s = f.obj_map[A.src(m)], t = f.obj_map[A.tgt(m)];
        for (MorId c : A.is_identity(m) ? std::vector<MorId>{B.identity(s)} : B.hom(s, t))
        {
            f.mor_map[m] = c;
            if (consistent(m))
                self(self, m + 1);
        }
        f.mor_map[m] = kNone;
    };
    auto objs = [&](auto &self, ObjId o) -> void {
        if (o == A.num_objects())
        {
            morphs(morphs, 0);
            return;
        }
        for (ObjId b = 0; b < B.num_objects(); ++b)
        {
            f.obj_map[o] = b;
            self(self, o + 1);
        }
    };
    objs(objs, 0);
    return out;
}

namespace detail {

inline bool composes_to(const Functor &g, const Functor &f, const Functor &h)
{
    for (std::size_t x = 0; x < f.obj_map.size(); ++x)
        if (g.obj_map[f.obj_map[x]] != h.obj_map[x])
            return false;
    for (std::size_t x = 0; x < f.mor_map.size(); ++x)
        if (g.mor_map[f.mor_map[x]] != h.mor_map[x])
            return false;
    return true;
}

// Diagrams J → Cat with the given node choice: assign functors to the
// non-identity morphisms of J, keeping F(v∘u) = F(v)∘F(u).
inline void diagrams_over(const FinCat &J, const std::vector<std::shared_ptr<const FinCat>> &nodes,
                          std::vector<Diagram> &out, std::size_t cap)
{
    Diagram d{J, nodes, std::vector<Functor>(J.num_morphisms())};
    std::vector<bool> set(J.num_morphisms(), false);
    for (ObjId i = 0; i < J.num_objects(); ++i)
    {
        d.edges[J.identity(i)] = identity_functor(*nodes[i]);
        set[J.identity(i)] = true;
    }
    auto ok = [&](MorId fresh) {
        for (MorId v = 0; v < J.num_morphisms(); ++v)
            for (MorId u : J.morphisms_in(J.src(v)))
            {
                MorId w = J.compose(v, u);
                if ((u == fresh || v == fresh || w == fresh) && set[u] && set[v] && set[w] &&
                    !composes_to(d.edges[v], d.edges[u], d.edges[w]))
                    return false;
            }
        return true;
    };
    std::map<std::pair<ObjId, ObjId>, std::vector<Functor>> cache;
    auto go = [&](auto &self, MorId u) -> void {
        if (out.size() >= cap)
            return;
        if (u == J.num_morphisms())
        {
            out.push_back(d);
            return;
        }
        if (J.is_identity(u))
        {
            self(self, u + 1);
            return;
        }
        auto key = std::make_pair(J.src(u), J.tgt(u));
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, functors(*nodes[key.first], *nodes[key.second])).first;
        for (auto &f : it->second)
        {
            d.edges[u] = f;
            set[u] = true;
            if (ok(u))
                self(self, u + 1);
            set[u] = false;
        }
    };
    go(go, 0);
}

} // namespace detail

/// Every diagram J → Cat with J among index_cats and every node among
/// node_cats, up to cap diagrams.
inline std::vector<Diagram> small_diagrams(const std::vector<FinCat> &index_cats, const std::vector<FinCat> &node_cats,
                                           std::size_t cap = SIZE_MAX)
{
    std::vector<std::shared_ptr<const FinCat>> pool;
    for (auto &c : node_cats)
        pool.push_back(std::make_shared<const FinCat>(c));
    std::vector<Diagram> out;
    for (auto &J : index_cats)
    {
        std::vector<std::size_t> pick(J.num_objects(), 0);
        for (;;)
        {
            std::vector<std::shared_ptr<const FinCat>> nodes;
            for (auto p : pick)
                nodes.push_back(pool[p]);
            detail::diagrams_over(J, nodes, out, cap);
            if (out.size() >= cap)
                return out;
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == pool.size())
                pick[i++] = 0;
            if (i == pick.size())
                break;
        }
    }
    return out;
}

/// Automorphisms of a category, as functors.
inline std::vector<Functor> automorphisms(const FinCat &c)
{
    std::vector<Functor> out;
    for (auto &f : functors(c, c))
    {
        std::vector<bool> o(c.num_objects(), false), m(c.num_morphisms(), false);
        for (auto x : f.obj_map)
            o[x] = true;
        for (auto x : f.mor_map)
            m[x] = true;
        if (std::all_of(o.begin(), o.end(), [](bool b) { return b; }) &&
            std::all_of(m.begin(), m.end(), [](bool b) { return b; }))
            out.push_back(f);
    }
    return out;
}

namespace detail {

inline Functor inverse_functor(const Functor &f)
{
    Functor g;
    g.obj_map.resize(f.obj_map.size());
    g.mor_map.resize(f.mor_map.size());
    for (std::size_t x = 0; x < f.obj_map.size(); ++x)
        g.obj_map[f.obj_map[x]] = static_cast<ObjId>(x);
    for (std::size_t x = 0; x < f.mor_map.size(); ++x)
        g.mor_map[f.mor_map[x]] = static_cast<MorId>(x);
    return g;
}

inline std::vector<int> edge_code(const std::vector<Functor> &edges)
{
    std::vector<int> out;
    for (auto &f : edges)
    {
        out.insert(out.end(), f.obj_map.begin(), f.obj_map.end());
        out.insert(out.end(), f.mor_map.begin(), f.mor_map.end());
    }
    return out;
}

} // namespace detail

/// Calls fn once per isomorphism class of diagrams J → Cat with J among
/// index_cats and every node among node_cats. Both lists must hold one
/// category per isomorphism class. The representative of a class is its
/// member with the least functor tables; the order is deterministic.
template <class Fn>
void for_each_diagram_class(const std::vector<FinCat> &index_cats, const std::vector<FinCat> &node_cats, Fn &&fn)
{
    std::vector<std::shared_ptr<const FinCat>> pool;
    std::vector<std::vector<Functor>> node_auts;
    for (auto &c : node_cats)
    {
        pool.push_back(std::make_shared<const FinCat>(c));
        node_auts.push_back(automorphisms(c));
    }
    for (auto &J : index_cats)
    {
        const auto autJ = automorphisms(J);
        const int n = J.num_objects();
        std::vector<std::size_t> pick(n, 0);
        for (;;)
        {
            // Skip node choices that an automorphism of J makes smaller.
            std::vector<const Functor *> stab;
            bool least = true;
            for (auto &a : autJ)
            {
                std::vector<std::size_t> moved(n);
                for (int i = 0; i < n; ++i)
                    moved[a.obj_map[i]] = pick[i];
                if (moved < pick)
                    least = false;
                if (moved == pick)
                    stab.push_back(&a);
            }
            if (least)
            {
                std::vector<std::shared_ptr<const FinCat>> nodes;
                for (auto p : pick)
                    nodes.push_back(pool[p]);
                std::vector<Diagram> all;
                detail::diagrams_over(J, nodes, all, SIZE_MAX);
                // Node automorphism tuples σ with their inverses.
                std::vector<std::vector<const Functor *>> sigmas{{}};
                for (int i = 0; i < n; ++i)
                {
                    std::vector<std::vector<const Functor *>> next;
                    for (auto &s : sigmas)
                        for (auto &g : node_auts[pick[i]])
                        {
                            next.push_back(s);
                            next.back().push_back(&g);
                        }
                    sigmas = std::move(next);
                }
                std::vector<std::vector<Functor>> inverses;
                for (auto &s : sigmas)
                {
                    inverses.emplace_back();
                    for (auto *g : s)
                        inverses.back().push_back(detail::inverse_functor(*g));
                }
                std::vector<std::size_t> offset(J.num_morphisms() + 1, 0);
                for (MorId u = 0; u < J.num_morphisms(); ++u)
                    offset[u + 1] = offset[u] + nodes[J.src(u)]->num_objects() + nodes[J.src(u)]->num_morphisms();
                std::vector<int> moved(offset.back());
                for (auto &d : all)
                {
                    auto own = detail::edge_code(d.edges);
                    bool canonical = true;
                    for (auto *a : stab)
                    {
                        for (std::size_t k = 0; canonical && k < sigmas.size(); ++k)
                        {
                            for (MorId u = 0; u < J.num_morphisms(); ++u)
                            {
                                const auto &f = d.edges[u];
                                const auto &in = inverses[k][J.src(u)];
                                const auto &out = *sigmas[k][J.tgt(u)];
                                std::size_t at = offset[a->mor_map[u]];
                                for (std::size_t x = 0; x < f.obj_map.size(); ++x)
                                    moved[at++] = out.obj_map[f.obj_map[in.obj_map[x]]];
                                for (std::size_t x = 0; x < f.mor_map.size(); ++x)
                                    moved[at++] = out.mor_map[f.mor_map[in.mor_map[x]]];
                            }
                            if (moved < own)
                                canonical = false;
                        }
                        if (!canonical)
                            break;
                    }
                    if (canonical)
                        fn(d);
                }
            }
            int i = 0;
            while (i < n && ++pick[i] == pool.size())
                pick[i++] = 0;
            if (i == n)
                break;
        }
    }
}

namespace detail {

// Associativity of the triples whose composites are all known.
inline bool associative_so_far(const CatTable &t)
{
    auto c = [&](int g, int f) -> std::optional<int> {
        if (f < 0)
            return g;
        if (g < 0)
            return f;
        auto it = t.comp.find({g, f});
        if (it == t.comp.end())
            return std::nullopt;
        return it->second;
    };
    const int n = static_cast<int>(t.ends.size());
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g)
        {
            if (t.ends[f].second != t.ends[g].first)
                continue;
            for (int h = 0; h < n; ++h)
            {
                if (t.ends[g].second != t.ends[h].first)
                    continue;
                auto gf = c(g, f), hg = c(h, g);
                if (!gf || !hg)
                    continue;
                auto a = c(h, *gf), b = c(*hg, f);
                if (a && b && *a != *b)
                    return false;
            }
        }
    return true;
}

} // namespace detail

/// A random category with at most max_objects objects and max_morphisms
/// morphisms (identities included): random endpoints, then a composition
/// table found by backtracking in random order.
inline FinCat random_category(std::mt19937_64 &rng, int max_objects, int max_morphisms)
{
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (;;)
    {
        detail::CatTable t;
        t.objects = uniform(1, max_objects);
        const int k = uniform(0, max_morphisms - t.objects);
        for (int m = 0; m < k; ++m)
            t.ends.push_back({uniform(0, t.objects - 1), uniform(0, t.objects - 1)});
        std::vector<std::pair<int, int>> slots;
        std::vector<std::vector<int>> options;
        for (int g = 0; g < k; ++g)
            for (int f = 0; f < k; ++f)
                if (t.ends[f].second == t.ends[g].first)
                {
                    slots.push_back({g, f});
                    std::vector<int> opt;
                    auto want = std::make_pair(t.ends[f].first, t.ends[g].second);
                    if (want.first == want.second)
                        opt.push_back(-1 - want.first);
                    for (int h = 0; h < k; ++h)
                        if (t.ends[h] == want)
                            opt.push_back(h);
                    std::shuffle(opt.begin(), opt.end(), rng);
                    options.push_back(opt);
                }
        std::size_t steps = 0;
        auto go = [&](auto &self, std::size_t s) -> bool {
            if (++steps > 100000)
                return false;
            if (s == slots.size())
                return true;
            for (int h : options[s])
            {
                t.comp[slots[s]] = h;
                if (detail::associative_so_far(t) && self(self, s + 1))
                    return true;
            }
            t.comp.erase(slots[s]);
            return false;
        };
        if (go(go, 0))
            return detail::build_table(t);
    }
}

/// A random diagram whose index and node categories come from
/// random_category, with functors drawn among all consistent assignments.
inline Diagram random_diagram(std::mt19937_64 &rng, int max_objects, int max_morphisms)
{
    for (;;)
    {
        FinCat J = random_category(rng, max_objects, max_morphisms);
        std::vector<std::shared_ptr<const FinCat>> nodes;
        for (ObjId i = 0; i < J.num_objects(); ++i)
            nodes.push_back(std::make_shared<const FinCat>(random_category(rng, max_objects, max_morphisms)));
        std::vector<Diagram> all;
        detail::diagrams_over(J, nodes, all, 4096);
        if (!all.empty())
            return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    }
}

/// A random diagram: index and node categories drawn from the given lists,
/// functors drawn uniformly among those consistent so far. Retries until
/// every morphism gets a functor.
inline Diagram random_diagram(std::mt19937_64 &rng, const std::vector<FinCat> &index_cats,
                              const std::vector<FinCat> &node_cats)
{
    for (;;)
    {
        const FinCat &J = index_cats[std::uniform_int_distribution<std::size_t>(0, index_cats.size() - 1)(rng)];
        std::vector<std::shared_ptr<const FinCat>> nodes;
        for (ObjId i = 0; i < J.num_objects(); ++i)
            nodes.push_back(std::make_shared<const FinCat>(
                node_cats[std::uniform_int_distribution<std::size_t>(0, node_cats.size() - 1)(rng)]));
        std::vector<Diagram> all;
        detail::diagrams_over(J, nodes, all, 4096);
        if (!all.empty())
            return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    }
}

} // namespace zzc
