#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "sset.hpp"

namespace zzc {

using VertexSet = std::uint32_t;

inline bool contains(VertexSet s, int v) { return (s >> v) & 1u; }

inline std::string set_string(VertexSet s)
{
    std::string out = "{";
    bool first = true;
    for (int v = 0; v < 32; ++v)
        if (contains(s, v))
        {
            out += (first ? "" : ",") + std::to_string(v);
            first = false;
        }
    return out + "}";
}

/// A p-arrow i → j of ℭΔⁿ: a chain U⁰ ⊆ … ⊆ Uᵖ of vertex sets with
/// i, j ∈ U⁰, stored as bitmasks.
struct Flag
{
    int i = 0;
    int j = 0;
    std::vector<VertexSet> levels{1};

    int p() const { return static_cast<int>(levels.size()) - 1; }

    friend bool operator==(const Flag &, const Flag &) = default;
    friend auto operator<=>(const Flag &, const Flag &) = default;
};

inline std::string to_string(const Flag &f)
{
    std::string s;
    for (std::size_t k = 0; k < f.levels.size(); ++k)
        s += (k ? "<=" : "") + set_string(f.levels[k]);
    return s;
}

inline bool is_valid_flag(const Flag &f, int n)
{
    if (f.i < 0 || f.j > n || f.i > f.j || f.levels.empty())
        return false;
    VertexSet range = 0;
    for (int v = f.i; v <= f.j; ++v)
        range |= 1u << v;
    if (!contains(f.levels[0], f.i) || !contains(f.levels[0], f.j))
        return false;
    for (std::size_t k = 0; k < f.levels.size(); ++k)
    {
        if (f.levels[k] & ~range)
            return false;
        if (k > 0 && (f.levels[k - 1] & ~f.levels[k]))
            return false;
    }
    return true;
}

/// V ∘ U: levelwise union.
inline Flag compose_flags(const Flag &v, const Flag &u)
{
    if (u.j != v.i || u.levels.size() != v.levels.size())
        throw std::invalid_argument("compose_flags: flags not composable");
    Flag w{u.i, v.j, u.levels};
    for (std::size_t k = 0; k < w.levels.size(); ++k)
        w.levels[k] |= v.levels[k];
    return w;
}

/// θ*U = (U^{θ(0)} ⊆ … ⊆ U^{θ(q)}) for θ : [q] → [p].
inline Flag theta_star(const Monotone &theta, const Flag &f)
{
    Flag g{f.i, f.j, {}};
    for (int v : theta)
        g.levels.push_back(f.levels.at(v));
    return g;
}

/// Image of a flag under a monotone vertex map.
inline Flag push_flag(const Monotone &vertex_map, const Flag &f)
{
    Flag g{vertex_map[f.i], vertex_map[f.j], {}};
    for (auto s : f.levels)
    {
        VertexSet t = 0;
        for (int v = 0; v < static_cast<int>(vertex_map.size()); ++v)
            if (contains(s, v))
                t |= 1u << vertex_map[v];
        g.levels.push_back(t);
    }
    return g;
}

/// All flags i → j in ℭΔⁿ at level p: every vertex strictly between i and j
/// appears first at some level 0…p or never. Ordered by those choices,
/// lexicographically from the lowest vertex.
inline std::vector<Flag> enumerate_flags(int i, int j, int p)
{
    std::vector<Flag> out;
    if (i > j)
        return out;
    std::vector<int> first(std::max(0, j - i - 1), 0);
    for (;;)
    {
        Flag f{i, j, std::vector<VertexSet>(p + 1, (1u << i) | (1u << j))};
        for (std::size_t k = 0; k < first.size(); ++k)
            for (int l = first[k]; l <= p; ++l)
                f.levels[l] |= 1u << (i + 1 + static_cast<int>(k));
        out.push_back(f);
        int k = static_cast<int>(first.size()) - 1;
        while (k >= 0 && first[k] == p + 1)
            first[k--] = 0;
        if (k < 0)
            break;
        ++first[k];
    }
    return out;
}

/// ℭΔⁿ_p with its flags: morphism m is flags[m].
struct FlagCategory
{
    int n = 0;
    int p = 0;
    FinCat cat;
    std::vector<Flag> flags;
    std::map<Flag, MorId> index;

    MorId find(const Flag &f) const { return index.at(f); }
};

inline std::shared_ptr<const FlagCategory> flag_category(int n, int p)
{
    if (n < 0 || p < 0 || n > 30)
        throw std::invalid_argument("flag_category: need 0 <= n <= 30 and p >= 0");
    auto fc = std::make_shared<FlagCategory>();
    fc->n = n;
    fc->p = p;
    FinCat::Builder b;
    for (int v = 0; v <= n; ++v)
    {
        b.add_object(std::to_string(v));
        Flag id{v, v, std::vector<VertexSet>(p + 1, 1u << v)};
        fc->flags.push_back(id);
        fc->index[id] = b.identity(v);
    }
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (auto &f : enumerate_flags(i, j, p))
            {
                MorId m = b.add_morphism(i, j, to_string(f));
                fc->flags.push_back(f);
                fc->index[f] = m;
            }
    for (MorId u = 0; u < static_cast<MorId>(fc->flags.size()); ++u)
        for (MorId v = 0; v < static_cast<MorId>(fc->flags.size()); ++v)
        {
            const auto &fu = fc->flags[u], &fv = fc->flags[v];
            if (fu.j != fv.i || fu.i == fu.j || fv.i == fv.j)
                continue;
            b.set_compose(v, u, fc->index.at(compose_flags(fv, fu)));
        }
    fc->cat = b.build();
    return fc;
}

/// The functor ℭΔᵐ_p → ℭΔⁿ_p induced by a monotone θ : [m] → [n].
inline Functor flag_functor(const FlagCategory &from, const FlagCategory &to, const Monotone &theta)
{
    Functor f;
    for (int v = 0; v <= from.n; ++v)
        f.obj_map.push_back(theta[v]);
    for (const auto &flag : from.flags)
        f.mor_map.push_back(to.find(push_flag(theta, flag)));
    return f;
}

enum class ChiIndex
{
    Truncated,     // all simplices up to a dimension cap
    Nondegenerate, // nondegenerate simplices and their faces
};

/// χ_p : 𝒮(X) → Cat, x ∈ X_n ↦ ℭΔⁿ_p, with the simplex bookkeeping kept
/// alongside the diagram.
struct ChiDiagram
{
    Diagram diagram;
    SimplexCategory simplices;
    std::vector<std::shared_ptr<const FlagCategory>> flag_cats; // per dimension
    int p = 0;

    const FlagCategory &flags_of(ObjId x) const { return *flag_cats[simplices.simplices[x].dim()]; }

    /// Index object of a vertex simplex of X.
    ObjId vertex_object(int v) const { return simplices.object_of({0, v, {0}}); }

    bool is_vertex(ObjId x) const { return simplices.simplices[x].dim() == 0; }
};

inline ChiDiagram chi_diagram(const FinSSet &X, int p, ChiIndex mode = ChiIndex::Nondegenerate, int cap = -1)
{
    ChiDiagram chi;
    chi.p = p;
    chi.simplices = mode == ChiIndex::Truncated ? simplex_category(X, cap < 0 ? X.dimension() : cap)
                                                : nondegenerate_simplex_category(X);
    int top = 0;
    for (auto &s : chi.simplices.simplices)
        top = std::max(top, s.dim());
    for (int n = 0; n <= top; ++n)
        chi.flag_cats.push_back(flag_category(n, p));
    const auto &S = chi.simplices.cat;
    chi.diagram.index = S;
    for (ObjId x = 0; x < S.num_objects(); ++x)
    {
        const auto &fc = chi.flag_cats[chi.simplices.simplices[x].dim()];
        chi.diagram.nodes.push_back(std::shared_ptr<const FinCat>(fc, &fc->cat));
    }
    for (MorId u = 0; u < S.num_morphisms(); ++u)
        chi.diagram.edges.push_back(
            flag_functor(chi.flags_of(S.src(u)), chi.flags_of(S.tgt(u)), chi.simplices.theta[u]));
    return chi;
}

} // namespace zzc
