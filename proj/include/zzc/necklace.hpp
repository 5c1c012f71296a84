#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decor.hpp"
#include "flags.hpp"
#include "hom_table.hpp"
#include "parallel.hpp"
#include "sset.hpp"
#include "union_find.hpp"
#include "zigzag.hpp"

namespace zzc {

/// Δ^{n₀} ∨ … ∨ Δ^{n_k}, vertices numbered globally from 0.
struct Necklace
{
    std::vector<int> beads{0};

    int size() const { return static_cast<int>(beads.size()); }

    int start(int k) const
    {
        int s = 0;
        for (int i = 0; i < k; ++i)
            s += beads[i];
        return s;
    }
    int end(int k) const { return start(k) + beads[k]; }
    int vertex_count() const { return start(size()) + 1; }
    int last() const { return vertex_count() - 1; }

    /// J_N: initial and final vertices of every bead.
    VertexSet joins() const
    {
        VertexSet j = 0;
        for (int k = 0; k < size(); ++k)
            j |= (1u << start(k)) | (1u << end(k));
        return j;
    }

    VertexSet all() const { return vertex_count() >= 32 ? ~0u : (1u << vertex_count()) - 1; }

    friend bool operator==(const Necklace &, const Necklace &) = default;
    friend auto operator<=>(const Necklace &, const Necklace &) = default;
};

inline std::string to_string(const Necklace &n)
{
    std::string s;
    for (int k = 0; k < n.size(); ++k)
        s += (k ? "v" : "") + std::string("D") + std::to_string(n.beads[k]);
    return s;
}

/// A map N → X, one simplex per bead.
struct NecklaceMap
{
    Necklace shape;
    std::vector<SimplexRef> images{SimplexRef{}};

    friend bool operator==(const NecklaceMap &, const NecklaceMap &) = default;
    friend auto operator<=>(const NecklaceMap &, const NecklaceMap &) = default;
};

inline std::vector<std::string> validate_necklace_map(const FinSSet &X, const NecklaceMap &m)
{
    std::vector<std::string> report;
    const auto &N = m.shape;
    if (N.beads.empty() || static_cast<int>(m.images.size()) != N.size())
        return {"bead and image counts differ"};
    if (N.vertex_count() > 32)
        return {"necklace has more than 32 vertices"};
    for (int k = 0; k < N.size(); ++k)
    {
        if (N.beads[k] < 0 || m.images[k].dim() != N.beads[k])
            report.push_back("bead " + std::to_string(k) + " has the wrong dimension");
        else if (k > 0 && m.images[k - 1].dim() == N.beads[k - 1] &&
                 X.vertex(m.images[k - 1], N.beads[k - 1]) != X.vertex(m.images[k], 0))
            report.push_back("beads " + std::to_string(k - 1) + " and " + std::to_string(k) + " do not meet");
    }
    return report;
}

/// Vertex of X under every global vertex of the necklace.
inline std::vector<int> vertex_labels(const FinSSet &X, const NecklaceMap &m)
{
    std::vector<int> out;
    for (int k = 0; k < m.shape.size(); ++k)
        for (int v = k == 0 ? 0 : 1; v <= m.shape.beads[k]; ++v)
            out.push_back(X.vertex(m.images[k], v));
    return out;
}

/// A pair (N → X, U) with U a flag of ℭΔ^{|V_N|-1} from the first to the
/// last vertex and J_N ⊆ U⁰.
struct NecklaceFlagPair
{
    NecklaceMap map;
    Flag flag;

    friend bool operator==(const NecklaceFlagPair &, const NecklaceFlagPair &) = default;
    friend auto operator<=>(const NecklaceFlagPair &, const NecklaceFlagPair &) = default;
};

inline std::string to_string(const FinSSet &X, const NecklaceFlagPair &pr)
{
    std::string s;
    for (std::size_t k = 0; k < pr.map.images.size(); ++k)
        s += (k ? " v " : "") + X.name(pr.map.images[k]);
    return s + " | " + to_string(pr.flag);
}

inline std::vector<std::string> validate_pair(const FinSSet &X, const NecklaceFlagPair &pr)
{
    auto report = validate_necklace_map(X, pr.map);
    if (!report.empty())
        return report;
    const auto &N = pr.map.shape;
    if (pr.flag.i != 0 || pr.flag.j != N.last() || !is_valid_flag(pr.flag, N.last()))
        report.push_back("flag is not an arrow from the first to the last vertex");
    else if (N.joins() & ~pr.flag.levels[0])
        report.push_back("some join is missing from the bottom level of the flag");
    return report;
}

/// Restrictions of a flag on V_N to the beads, in local coordinates.
inline std::vector<Flag> split_flag(const Necklace &N, const Flag &U)
{
    if (N.joins() & ~U.levels.at(0))
        throw std::invalid_argument("split_flag: joins must lie in the bottom level");
    std::vector<Flag> out;
    for (int k = 0; k < N.size(); ++k)
    {
        const int s = N.start(k), n = N.beads[k];
        const VertexSet mask = ((n + 1 >= 32) ? ~0u : ((1u << (n + 1)) - 1));
        Flag f{0, n, {}};
        for (auto l : U.levels)
            f.levels.push_back((l >> s) & mask);
        out.push_back(f);
    }
    return out;
}

inline Flag merge_flags(const Necklace &N, const std::vector<Flag> &parts)
{
    if (static_cast<int>(parts.size()) != N.size())
        throw std::invalid_argument("merge_flags: one flag per bead expected");
    Flag U{0, N.last(), std::vector<VertexSet>(parts.at(0).levels.size(), 0)};
    for (int k = 0; k < N.size(); ++k)
    {
        if (parts[k].i != 0 || parts[k].j != N.beads[k] || parts[k].levels.size() != U.levels.size())
            throw std::invalid_argument("merge_flags: flag does not span its bead");
        for (std::size_t l = 0; l < U.levels.size(); ++l)
            U.levels[l] |= parts[k].levels[l] << N.start(k);
    }
    return U;
}

// ---------------------------------------------------------------------------
// Necklace maps and cells over Δ

/// Δ truncated at dimension D with every monotone map.
struct DeltaCategory
{
    int max_dim = 0;
    FinCat cat;
    std::vector<Monotone> maps;
    std::map<std::pair<int, Monotone>, MorId> index; // (target, map)

    MorId find(int target, const Monotone &m) const { return index.at({target, m}); }
};

inline DeltaCategory delta_category(int D)
{
    DeltaCategory dc;
    dc.max_dim = D;
    FinCat::Builder b;
    for (int n = 0; n <= D; ++n)
    {
        b.add_object("[" + std::to_string(n) + "]");
        dc.maps.push_back(identity_map(n));
        dc.index[{n, identity_map(n)}] = b.identity(n);
    }
    for (int m = 0; m <= D; ++m)
        for (int n = 0; n <= D; ++n)
            for (auto &t : monotone_maps(m, n))
            {
                if (m == n && t == identity_map(n))
                    continue;
                std::string name;
                for (int v : t)
                    name += std::to_string(v);
                MorId u = b.add_morphism(m, n, name);
                dc.maps.push_back(t);
                dc.index[{n, t}] = u;
            }
    std::vector<int> tgt(dc.maps.size());
    std::vector<bool> is_id(dc.maps.size(), false);
    for (auto &[key, id] : dc.index)
    {
        tgt[id] = key.first;
        is_id[id] = key.second == identity_map(key.first);
    }
    for (MorId f = 0; f < static_cast<MorId>(dc.maps.size()); ++f)
        for (MorId g = 0; g < static_cast<MorId>(dc.maps.size()); ++g)
        {
            if (static_cast<int>(dc.maps[g].size()) - 1 != tgt[f])
                continue;
            if (is_id[f] || is_id[g])
                continue;
            b.set_compose(g, f, dc.find(tgt[g], compose_maps(dc.maps[g], dc.maps[f])));
        }
    dc.cat = b.build();
    return dc;
}

/// The zig-zag of a necklace in Δ: apexes [0], left legs the terminal
/// vertex, right legs the initial vertex.
inline ZigZag necklace_in_delta(const DeltaCategory &dc, const Necklace &N)
{
    ZigZag z = ZigZag::trivial(N.beads.at(0));
    for (int k = 1; k < N.size(); ++k)
    {
        z.apexes.push_back(0);
        z.lefts.push_back(dc.find(N.beads[k - 1], {N.beads[k - 1]}));
        z.rights.push_back(dc.find(N.beads[k], {0}));
        z.feet.push_back(N.beads[k]);
    }
    return z;
}

/// A map of necklaces N → M recorded bead by bead: bead k lands in bead
/// target[k] of M through component[k].
struct BeadMap
{
    Necklace source;
    Necklace target;
    std::vector<int> bead;
    std::vector<Monotone> component;

    friend bool operator==(const BeadMap &, const BeadMap &) = default;
    friend auto operator<=>(const BeadMap &, const BeadMap &) = default;
};

/// Underlying map of global vertices.
inline Monotone vertex_map(const BeadMap &f)
{
    Monotone vm(f.source.vertex_count(), -1);
    for (int k = 0; k < f.source.size(); ++k)
        for (int v = 0; v <= f.source.beads[k]; ++v)
            vm[f.source.start(k) + v] = f.target.start(f.bead[k]) + f.component[k][v];
    return vm;
}

inline std::vector<std::string> validate_bead_map(const BeadMap &f)
{
    const auto &N = f.source, &M = f.target;
    if (static_cast<int>(f.bead.size()) != N.size() || static_cast<int>(f.component.size()) != N.size())
        return {"one target bead and component per source bead expected"};
    std::vector<std::string> report;
    for (int k = 0; k < N.size(); ++k)
    {
        if (f.bead[k] < 0 || f.bead[k] >= M.size() || (k > 0 && f.bead[k] < f.bead[k - 1]))
        {
            report.push_back("bead " + std::to_string(k) + " has a bad target bead");
            continue;
        }
        const auto &c = f.component[k];
        const int m = M.beads[f.bead[k]];
        if (static_cast<int>(c.size()) != N.beads[k] + 1 || !std::is_sorted(c.begin(), c.end()) || c.front() < 0 ||
            c.back() > m)
            report.push_back("component " + std::to_string(k) + " is not a monotone map into its bead");
    }
    if (!report.empty())
        return report;
    for (int k = 1; k < N.size(); ++k)
        if (f.target.start(f.bead[k]) + f.component[k][0] !=
            f.target.start(f.bead[k - 1]) + f.component[k - 1][N.beads[k - 1]])
            report.push_back("components disagree at join " + std::to_string(k));
    return report;
}

/// The 2-cell of ℤΔ induced by a bead map: θ is the bead assignment, the
/// foot components are the bead components, and a roof whose neighbours
/// share a target bead collapses onto the image of its join.
inline ZigZagCell cell_from_map(const DeltaCategory &dc, const BeadMap &f)
{
    auto report = validate_bead_map(f);
    if (!report.empty())
        throw std::invalid_argument("cell_from_map: " + report.front());
    if (!is_endpoint_surjection(f.bead, f.source.size() - 1, f.target.size() - 1))
        throw std::invalid_argument("cell_from_map: bead assignment is not surjective");
    ZigZagCell c;
    c.source = necklace_in_delta(dc, f.source);
    c.target = necklace_in_delta(dc, f.target);
    c.theta = f.bead;
    for (int k = 0; k < f.source.size(); ++k)
        c.foot.push_back(dc.find(f.target.beads[f.bead[k]], f.component[k]));
    for (int k = 1; k < f.source.size(); ++k)
        c.apex.push_back(f.bead[k - 1] == f.bead[k] ? dc.find(f.target.beads[f.bead[k]], {f.component[k][0]})
                                                    : dc.cat.identity(0));
    report = validate_cell(dc.cat, c);
    if (!report.empty())
        throw std::invalid_argument("cell_from_map: " + report.front());
    return c;
}

inline Necklace necklace_of(const ZigZag &z) { return Necklace{z.feet}; }

inline BeadMap map_from_cell(const DeltaCategory &dc, const ZigZagCell &c)
{
    auto report = validate_cell(dc.cat, c);
    if (!report.empty())
        throw std::invalid_argument("map_from_cell: " + report.front());
    BeadMap f{necklace_of(c.source), necklace_of(c.target), c.theta, {}};
    if (c.source != necklace_in_delta(dc, f.source) || c.target != necklace_in_delta(dc, f.target))
        throw std::invalid_argument("map_from_cell: boundary rows are not necklaces");
    for (MorId u : c.foot)
        f.component.push_back(dc.maps[u]);
    return f;
}

inline bool is_bipointed(const BeadMap &f)
{
    auto vm = vertex_map(f);
    return vm.front() == 0 && vm.back() == f.target.last();
}

/// Every bead map N → M; with bipointed set, only those fixing the end
/// vertices.
inline std::vector<BeadMap> enumerate_bead_maps(const Necklace &N, const Necklace &M, bool bipointed = true)
{
    std::vector<BeadMap> out;
    BeadMap f{N, M, {}, {}};
    auto go = [&](auto &self, int k, int g) -> void {
        if (k == N.size())
        {
            if (g == M.last() || !bipointed)
                out.push_back(f);
            return;
        }
        for (int j = f.bead.empty() ? 0 : f.bead.back(); j < M.size(); ++j)
        {
            if (k > 0 && (g < M.start(j) || g > M.end(j)))
                continue;
            for (auto &psi : monotone_maps(N.beads[k], M.beads[j]))
            {
                if (k == 0 ? (bipointed && psi.front() != 0) || j > 0 : psi.front() != g - M.start(j))
                    continue;
                f.bead.push_back(j);
                f.component.push_back(psi);
                self(self, k + 1, M.start(j) + psi.back());
                f.bead.pop_back();
                f.component.pop_back();
            }
        }
    };
    go(go, 0, 0);
    return out;
}

/// Bipointed bead maps N → M commuting with the maps to X.
inline std::vector<BeadMap> bead_maps_over(const FinSSet &X, const NecklaceMap &N, const NecklaceMap &M)
{
    std::vector<BeadMap> out;
    BeadMap f{N.shape, M.shape, {}, {}};
    std::map<std::pair<int, int>, std::vector<Monotone>> maps;
    auto go = [&](auto &self, int k, int g) -> void {
        if (k == N.shape.size())
        {
            if (g == M.shape.last())
                out.push_back(f);
            return;
        }
        for (int j = f.bead.empty() ? 0 : f.bead.back(); j < M.shape.size(); ++j)
        {
            if (g < M.shape.start(j) || g > M.shape.end(j))
                continue;
            auto key = std::make_pair(N.shape.beads[k], M.shape.beads[j]);
            auto it = maps.find(key);
            if (it == maps.end())
                it = maps.emplace(key, monotone_maps(key.first, key.second)).first;
            for (auto &psi : it->second)
            {
                if (psi.front() != g - M.shape.start(j) || X.apply(psi, M.images[j]) != N.images[k])
                    continue;
                f.bead.push_back(j);
                f.component.push_back(psi);
                self(self, k + 1, M.shape.start(j) + psi.back());
                f.bead.pop_back();
                f.component.pop_back();
            }
        }
    };
    go(go, 0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Necklace replacement against χ_p

/// The arrow x → y of a category of simplices with the given θ.
inline MorId find_arrow(const SimplexCategory &S, ObjId x, ObjId y, const Monotone &theta)
{
    for (MorId u : S.cat.hom(x, y))
        if (S.theta[u] == theta)
            return u;
    throw std::invalid_argument("find_arrow: no such arrow in the category of simplices");
}

/// The decorated zig-zag of χ_p carried by a necklace-flag pair: beads as
/// feet, vertices as apexes, the bead restrictions of the flag as the chain.
inline DecoratedZigZag to_decorated(const FinSSet &X, const ChiDiagram &chi, const NecklaceFlagPair &pr)
{
    const auto &S = chi.simplices;
    const auto &N = pr.map.shape;
    auto parts = split_flag(N, pr.flag);
    std::vector<ObjId> feet;
    for (auto &img : pr.map.images)
        feet.push_back(S.object_of(img));
    DecoratedZigZag x =
        DecoratedZigZag::trivial(feet[0], chi.flags_of(feet[0]).find(parts[0]));
    for (int k = 1; k < N.size(); ++k)
    {
        ObjId apex = chi.vertex_object(X.vertex(pr.map.images[k], 0));
        x.base.apexes.push_back(apex);
        x.base.lefts.push_back(find_arrow(S, apex, feet[k - 1], {N.beads[k - 1]}));
        x.base.rights.push_back(find_arrow(S, apex, feet[k], {0}));
        x.base.feet.push_back(feet[k]);
        x.apex_objects.push_back(0);
        x.chain.push_back(chi.flags_of(feet[k]).find(parts[k]));
    }
    return x;
}

struct NecklaceReplacement
{
    NecklaceFlagPair pair;
    DecoratedCell epsilon; // from to_decorated(pair) down to the input
};

/// Replaces a decorated zig-zag of χ_p by the necklace of subsimplices its
/// chain passes through, together with the comparison cell ε.
inline NecklaceReplacement necklace_replace(const FinSSet &X, const ChiDiagram &chi, const DecoratedZigZag &d)
{
    auto bad = validate_decorated(chi.diagram, d);
    if (!bad.empty())
        throw std::invalid_argument("necklace_replace: " + bad.front());
    const auto &S = chi.simplices;
    const int n = d.length();
    NecklaceReplacement out;
    auto &pr = out.pair;
    pr.map.shape.beads.clear();
    pr.map.images.clear();
    std::vector<Flag> parts;
    std::vector<std::pair<int, int>> range;
    for (int k = 0; k <= n; ++k)
    {
        ObjId xk = d.base.feet[k];
        const Flag &U = chi.flags_of(xk).flags[d.chain[k]];
        range.push_back({U.i, U.j});
        pr.map.shape.beads.push_back(U.j - U.i);
        pr.map.images.push_back(between_subsimplex(X, S.simplices[xk], U.i, U.j));
        Flag local{0, U.j - U.i, {}};
        for (auto l : U.levels)
            local.levels.push_back(l >> U.i);
        parts.push_back(local);
    }
    pr.flag = merge_flags(pr.map.shape, parts);
    auto top = to_decorated(X, chi, pr);
    ZigZagCell rho;
    rho.source = top.base;
    rho.target = d.base;
    rho.theta = identity_map(n);
    for (int k = 0; k <= n; ++k)
    {
        Monotone inc;
        for (int v = range[k].first; v <= range[k].second; ++v)
            inc.push_back(v);
        rho.foot.push_back(find_arrow(S, top.base.feet[k], d.base.feet[k], inc));
    }
    for (int k = 0; k < n; ++k)
        rho.apex.push_back(find_arrow(S, top.base.apexes[k], d.base.apexes[k], {d.apex_objects[k]}));
    out.epsilon = {rho, top, d};
    return out;
}

// ---------------------------------------------------------------------------
// Reduction of necklace-flag pairs

namespace detail {

/// Rebuilds a pair along a global vertex map onto a new necklace.
inline NecklaceFlagPair repush(const NecklaceFlagPair &pr, NecklaceMap target, const Monotone &vm)
{
    return {std::move(target), push_flag(vm, pr.flag)};
}

} // namespace detail

/// Canonical representative under the moves that never change the class:
/// vertices outside the top level are deleted, degenerate beads are
/// replaced by their nondegenerate cores, and point beads are dropped.
inline NecklaceFlagPair reduce_pair(const FinSSet &X, const NecklaceFlagPair &pr)
{
    auto bad = validate_pair(X, pr);
    if (!bad.empty())
        throw std::invalid_argument("reduce_pair: " + bad.front());
    NecklaceFlagPair cur = pr;

    // Unused vertices: each bead becomes its face on the vertices of Uᵖ.
    {
        const auto &N = cur.map.shape;
        const VertexSet keep = cur.flag.levels.back();
        NecklaceMap next{{{}}, {}};
        next.shape.beads.clear();
        Monotone vm(N.vertex_count(), -1);
        int at = 0;
        for (int k = 0; k < N.size(); ++k)
        {
            Monotone kept;
            for (int v = 0; v <= N.beads[k]; ++v)
                if (contains(keep, N.start(k) + v))
                {
                    if (!(k > 0 && v == 0))
                        vm[N.start(k) + v] = at++;
                    kept.push_back(v);
                }
            next.shape.beads.push_back(static_cast<int>(kept.size()) - 1);
            next.images.push_back(X.apply(kept, cur.map.images[k]));
        }
        for (auto &v : vm)
            if (v < 0)
                v = 0; // outside every level, never read
        cur = detail::repush(cur, next, vm);
    }

    // Degenerate beads collapse onto their nondegenerate cores.
    {
        const auto &N = cur.map.shape;
        NecklaceMap next{{{}}, {}};
        next.shape.beads.clear();
        Monotone vm(N.vertex_count(), 0);
        int base = 0;
        for (int k = 0; k < N.size(); ++k)
        {
            const auto &img = cur.map.images[k];
            for (int v = 0; v <= N.beads[k]; ++v)
                vm[N.start(k) + v] = base + img.sigma[v];
            next.shape.beads.push_back(img.nd_dim);
            next.images.push_back(X.nondegenerate(img.nd_dim, img.nd_id));
            base += img.nd_dim;
        }
        cur = detail::repush(cur, next, vm);
    }

    // Point beads vanish unless nothing else is left.
    {
        NecklaceMap next{{{}}, {}};
        next.shape.beads.clear();
        for (int k = 0; k < cur.map.shape.size(); ++k)
            if (cur.map.shape.beads[k] > 0)
            {
                next.shape.beads.push_back(cur.map.shape.beads[k]);
                next.images.push_back(cur.map.images[k]);
            }
        if (next.images.empty())
        {
            next.shape.beads = {0};
            next.images = {cur.map.images.front()};
        }
        cur.map = next;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Homs of the rigidification

struct RigidBounds
{
    int max_beads = 3;
    /// Largest bead dimension; negative means the dimension of X.
    int max_bead_dim = -1;
    /// Enumerate every necklace and flag instead of the reduced window.
    bool full = false;
    /// Re-run with one more bead and compare.
    bool certify = true;
    std::size_t budget = default_budget();
};

namespace detail {

// Necklace maps from vertex a to vertex b with at most max_beads beads drawn
// from the given simplices.
inline std::vector<NecklaceMap> necklaces_between(const FinSSet &X, const std::vector<SimplexRef> &pool, int a, int b,
                                                  int max_beads, std::size_t budget)
{
    std::vector<NecklaceMap> out;
    std::map<int, std::vector<const SimplexRef *>> starting;
    for (auto &s : pool)
        starting[X.vertex(s, 0)].push_back(&s);
    NecklaceMap cur{{{}}, {}};
    cur.shape.beads.clear();
    auto go = [&](auto &self, int at) -> void {
        if (!cur.images.empty() && at == b)
        {
            out.push_back(cur);
            if (out.size() > budget)
                throw BudgetExceeded("necklace enumeration exceeded the node budget");
        }
        if (static_cast<int>(cur.images.size()) == max_beads || cur.shape.vertex_count() >= 32)
            return;
        for (auto *s : starting[at])
        {
            cur.shape.beads.push_back(s->dim());
            cur.images.push_back(*s);
            if (cur.shape.vertex_count() <= 32)
                self(self, X.vertex(*s, s->dim()));
            cur.shape.beads.pop_back();
            cur.images.pop_back();
        }
    };
    go(go, a);
    return out;
}

// All flags from the first to the last vertex with the joins in U⁰; when
// full_top is set the top level is every vertex.
inline std::vector<Flag> necklace_flags(const Necklace &N, int p, bool full_top)
{
    std::vector<Flag> out;
    const VertexSet J = N.joins();
    std::vector<int> free;
    for (int v = 0; v < N.vertex_count(); ++v)
        if (!contains(J, v))
            free.push_back(v);
    const int choices = full_top ? p + 1 : p + 2;
    std::vector<int> first(free.size(), 0);
    for (;;)
    {
        Flag f{0, N.last(), std::vector<VertexSet>(p + 1, J)};
        for (std::size_t k = 0; k < free.size(); ++k)
            for (int l = first[k]; l <= p; ++l)
                f.levels[l] |= 1u << free[k];
        out.push_back(f);
        int k = static_cast<int>(free.size()) - 1;
        while (k >= 0 && first[k] == choices - 1)
            first[k--] = 0;
        if (k < 0)
            break;
        ++first[k];
    }
    return out;
}

inline bool shortlex_pair_less(const NecklaceFlagPair &x, const NecklaceFlagPair &y)
{
    auto key = [](const NecklaceFlagPair &z) { return std::make_pair(z.map.shape.size(), z.map.shape.last()); };
    if (key(x) != key(y))
        return key(x) < key(y);
    return x < y;
}

} // namespace detail

/// ℭ_p X(a, b) modulo triangles, computed on a window of necklace-flag
/// pairs. Classes are merged along every bipointed map over X between
/// window necklaces.
class RigidHom
{
  public:
    RigidHom(const FinSSet &X, int a, int b, int p, const RigidBounds &bounds)
        : RigidHom(X, a, b, p, bounds, bounds.max_beads, bounds.certify)
    {
    }

    const HomClassTable<NecklaceFlagPair> &table() const { return table_; }
    const std::vector<NecklaceFlagPair> &items() const { return items_; }

    /// Class of a pair, or nullopt outside the window.
    std::optional<int> class_of(const NecklaceFlagPair &pr) const
    {
        auto key = bounds_.full ? pr : reduce_pair(X_, pr);
        auto it = std::lower_bound(items_.begin(), items_.end(), key, detail::shortlex_pair_less);
        if (it == items_.end() || *it != key)
            return std::nullopt;
        return static_cast<int>(labels_[it - items_.begin()]);
    }

  private:
    RigidHom(const FinSSet &X, int a, int b, int p, const RigidBounds &bounds, int beads, bool certify)
        : X_(X), bounds_(bounds)
    {
        const int top = bounds.max_bead_dim < 0 ? X.dimension() : bounds.max_bead_dim;
        std::vector<SimplexRef> pool;
        if (bounds.full)
        {
            for (auto &s : simplex_category(X, top).simplices)
                pool.push_back(s);
        }
        else
        {
            for (int k = 1; k <= std::min(top, X.dimension()); ++k)
                for (int id = 0; id < X.count(k); ++id)
                    pool.push_back(X.nondegenerate(k, id));
        }
        auto necklaces = detail::necklaces_between(X, pool, a, b, beads, bounds.budget);
        if (a == b)
            necklaces.push_back({Necklace{{0}}, {SimplexRef{0, a, {0}}}});
        std::sort(necklaces.begin(), necklaces.end());
        necklaces.erase(std::unique(necklaces.begin(), necklaces.end()), necklaces.end());
        std::vector<std::size_t> first_item;
        for (auto &N : necklaces)
            for (auto &f : detail::necklace_flags(N.shape, p, !bounds.full))
            {
                items_.push_back({N, f});
                if (items_.size() > bounds.budget)
                    throw BudgetExceeded("rigid window exceeded the node budget");
            }
        std::sort(items_.begin(), items_.end(), detail::shortlex_pair_less);

        UnionFind uf(items_.size());
        for (auto &N : necklaces)
            for (auto &M : necklaces)
                for (auto &rho : bead_maps_over(X, N, M))
                {
                    auto vm = vertex_map(rho);
                    for (auto &f : detail::necklace_flags(N.shape, p, !bounds.full))
                    {
                        NecklaceFlagPair src{N, f};
                        NecklaceFlagPair dst{M, push_flag(vm, f)};
                        if (!bounds.full)
                            dst = reduce_pair(X, dst);
                        auto i = locate(src), j = locate(dst);
                        if (i && j)
                            uf.unite(*i, *j);
                    }
                }
        labels_ = uf.labels();

        std::size_t classes = 0;
        for (auto l : labels_)
            classes = std::max(classes, l + 1);
        table_.window = static_cast<std::size_t>(beads);
        table_.enumerated = items_.size();
        table_.classes.resize(classes);
        std::vector<bool> seen(classes, false);
        for (std::size_t x = 0; x < items_.size(); ++x)
        {
            if (!seen[labels_[x]])
            {
                seen[labels_[x]] = true;
                table_.classes[labels_[x]].representative = items_[x];
            }
            ++table_.classes[labels_[x]].members;
        }
        if (certify)
        {
            RigidHom big(X, a, b, p, bounds, beads + 1, false);
            table_.saturated = certified_by(big);
        }
    }

    std::optional<std::size_t> locate(const NecklaceFlagPair &pr) const
    {
        auto it = std::lower_bound(items_.begin(), items_.end(), pr, detail::shortlex_pair_less);
        if (it == items_.end() || *it != pr)
            return std::nullopt;
        return static_cast<std::size_t>(it - items_.begin());
    }

    bool certified_by(const RigidHom &big) const
    {
        const std::size_t nb = big.table_.classes.size();
        std::vector<std::size_t> image(table_.classes.size(), UnionFind::npos);
        std::vector<bool> hit(nb, false);
        for (std::size_t x = 0; x < items_.size(); ++x)
        {
            auto y = big.locate(items_[x]);
            if (!y)
                return false;
            auto cl = big.labels_[*y];
            hit[cl] = true;
            auto &img = image[labels_[x]];
            if (img == UnionFind::npos)
                img = cl;
            else if (img != cl)
                return false;
        }
        std::vector<int> used(nb, 0);
        for (auto img : image)
            if (used[img]++)
                return false;
        return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
    }

    const FinSSet &X_;
    RigidBounds bounds_;
    std::vector<NecklaceFlagPair> items_;
    std::vector<std::size_t> labels_;
    HomClassTable<NecklaceFlagPair> table_;
};

inline HomClassTable<NecklaceFlagPair> rigid_hom(const FinSSet &X, int a, int b, int p, const RigidBounds &bounds)
{
    return RigidHom(X, a, b, p, bounds).table();
}

} // namespace zzc
