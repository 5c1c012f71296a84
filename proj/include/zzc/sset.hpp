#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fincat.hpp"
#include "union_find.hpp"

namespace zzc {

/// A monotone map [m] → [n] as its value list.
using Monotone = std::vector<int>;

inline Monotone identity_map(int n)
{
    Monotone t(n + 1);
    for (int k = 0; k <= n; ++k)
        t[k] = k;
    return t;
}

/// ψ ∘ θ.
inline Monotone compose_maps(const Monotone &psi, const Monotone &theta)
{
    Monotone out;
    out.reserve(theta.size());
    for (int v : theta)
        out.push_back(psi[v]);
    return out;
}

inline bool is_injective(const Monotone &t)
{
    return std::adjacent_find(t.begin(), t.end()) == t.end();
}

/// All monotone maps [m] → [n] in lexicographic order.
inline std::vector<Monotone> monotone_maps(int m, int n)
{
    std::vector<Monotone> out;
    Monotone t(m + 1, 0);
    auto rec = [&](auto &&self, int k, int lo) -> void {
        if (k > m)
        {
            out.push_back(t);
            return;
        }
        for (int v = lo; v <= n; ++v)
        {
            t[k] = v;
            self(self, k + 1, v);
        }
    };
    if (n >= 0)
        rec(rec, 0, 0);
    return out;
}

inline std::vector<Monotone> injective_maps(int m, int n)
{
    std::vector<Monotone> out;
    for (auto &t : monotone_maps(m, n))
        if (is_injective(t))
            out.push_back(t);
    return out;
}

/// A simplex in Eilenberg–Zilber normal form: σ*(y) with y nondegenerate of
/// dimension nd_dim and σ an epimorphism [dim] → [nd_dim].
struct SimplexRef
{
    int nd_dim = 0;
    int nd_id = 0;
    Monotone sigma{0};

    int dim() const { return static_cast<int>(sigma.size()) - 1; }
    bool degenerate() const { return dim() != nd_dim; }

    /// Degeneracy indices of σ, strictly decreasing, so that
    /// σ* = s_{i_1} ⋯ s_{i_r} applied right to left.
    std::vector<int> degeneracy_word() const
    {
        std::vector<int> w;
        for (int k = dim() - 1; k >= 0; --k)
            if (sigma[k] == sigma[k + 1])
                w.push_back(k);
        return w;
    }

    friend bool operator==(const SimplexRef &, const SimplexRef &) = default;
    friend auto operator<=>(const SimplexRef &, const SimplexRef &) = default;
};

/// A finite simplicial set stored by its nondegenerate simplices and their
/// faces. Degenerate simplices are produced on demand in normal form.
class FinSSet
{
  public:
    class Builder;

    int dimension() const { return static_cast<int>(faces_.size()) - 1; }
    int count(int k) const { return k <= dimension() ? static_cast<int>(faces_[k].size()) : 0; }

    std::vector<int> counts() const
    {
        std::vector<int> c;
        for (int k = 0; k <= dimension(); ++k)
            c.push_back(count(k));
        return c;
    }

    SimplexRef nondegenerate(int k, int id) const { return {k, id, identity_map(k)}; }

    /// d_i of the nondegenerate simplex (k, id).
    const SimplexRef &face(int k, int id, int i) const { return faces_[k][id][i]; }

    const std::string &name(int k, int id) const { return names_[k][id]; }

    std::string name(const SimplexRef &x) const
    {
        std::string s;
        for (int i : x.degeneracy_word())
            s += "s" + std::to_string(i) + " ";
        return s + name(x.nd_dim, x.nd_id);
    }

    /// θ*x for θ : [m] → [dim x].
    SimplexRef apply(const Monotone &theta, const SimplexRef &x) const
    {
        Monotone comp = compose_maps(x.sigma, theta);
        Monotone image = comp;
        image.erase(std::unique(image.begin(), image.end()), image.end());
        Monotone eps;
        eps.reserve(comp.size());
        for (int v : comp)
            eps.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), v) - image.begin()));
        SimplexRef z = nondegenerate_face(x.nd_dim, x.nd_id, image);
        return {z.nd_dim, z.nd_id, compose_maps(z.sigma, eps)};
    }

    SimplexRef face_of(const SimplexRef &x, int i) const
    {
        if (x.dim() == 0 || i < 0 || i > x.dim())
            throw std::invalid_argument("face_of: no face " + std::to_string(i) + " of a " +
                                        std::to_string(x.dim()) + "-simplex");
        Monotone d;
        for (int v = 0; v <= x.dim(); ++v)
            if (v != i)
                d.push_back(v);
        return apply(d, x);
    }

    SimplexRef degeneracy_of(const SimplexRef &x, int i) const
    {
        Monotone s;
        for (int v = 0; v <= x.dim() + 1; ++v)
            s.push_back(v <= i ? v : v - 1);
        return apply(s, x);
    }

    /// Id of vertex k of x among the 0-simplices.
    int vertex(const SimplexRef &x, int k) const { return apply({k}, x).nd_id; }

    std::vector<int> vertices(const SimplexRef &x) const
    {
        std::vector<int> v;
        for (int k = 0; k <= x.dim(); ++k)
            v.push_back(vertex(x, k));
        return v;
    }

  private:
    // δ*y for y nondegenerate and δ injective, by deleting one missing
    // vertex at a time.
    SimplexRef nondegenerate_face(int k, int id, const Monotone &delta) const
    {
        const int r = static_cast<int>(delta.size()) - 1;
        if (r == k)
            return nondegenerate(k, id);
        auto key = std::make_tuple(k, id, delta);
        {
            std::shared_lock lock(cache_->mutex);
            auto it = cache_->faces.find(key);
            if (it != cache_->faces.end())
                return it->second;
        }
        int missing = 0;
        while (missing < static_cast<int>(delta.size()) && delta[missing] == missing)
            ++missing;
        Monotone rest;
        for (int v : delta)
            rest.push_back(v > missing ? v - 1 : v);
        SimplexRef out = apply(rest, faces_[k][id][missing]);
        std::unique_lock lock(cache_->mutex);
        cache_->faces.emplace(key, out);
        return out;
    }

    struct Cache
    {
        std::shared_mutex mutex;
        std::map<std::tuple<int, int, Monotone>, SimplexRef> faces;
    };

    std::vector<std::vector<std::vector<SimplexRef>>> faces_; // [k][id][i]
    std::vector<std::vector<std::string>> names_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

class FinSSet::Builder
{
  public:
    /// Adds a nondegenerate k-simplex with its k+1 faces (empty for k = 0).
    int add(int k, std::vector<SimplexRef> faces, std::string name = {})
    {
        if (static_cast<int>(faces_.size()) <= k)
        {
            faces_.resize(k + 1);
            names_.resize(k + 1);
        }
        if (k > 0 && static_cast<int>(faces.size()) != k + 1)
            throw std::invalid_argument("FinSSet::Builder: wrong number of faces");
        for (auto &f : faces)
            if (f.dim() != k - 1 || f.nd_dim >= k || f.nd_id >= static_cast<int>(faces_[f.nd_dim].size()))
                throw std::invalid_argument("FinSSet::Builder: face has wrong dimension or unknown simplex");
        int id = static_cast<int>(faces_[k].size());
        if (name.empty())
            name = "x" + std::to_string(k) + "_" + std::to_string(id);
        faces_[k].push_back(std::move(faces));
        names_[k].push_back(std::move(name));
        return id;
    }

    FinSSet build() const
    {
        FinSSet x;
        x.faces_ = faces_;
        x.names_ = names_;
        while (!x.faces_.empty() && x.faces_.back().empty())
        {
            x.faces_.pop_back();
            x.names_.pop_back();
        }
        return x;
    }

  private:
    std::vector<std::vector<std::vector<SimplexRef>>> faces_;
    std::vector<std::vector<std::string>> names_;
};

/// Violated simplicial identities d_i d_j = d_{j-1} d_i (i < j) on the
/// nondegenerate simplices; empty iff consistent.
inline std::vector<std::string> validate_sset(const FinSSet &X)
{
    std::vector<std::string> report;
    for (int k = 2; k <= X.dimension(); ++k)
        for (int id = 0; id < X.count(k); ++id)
        {
            auto x = X.nondegenerate(k, id);
            for (int j = 1; j <= k; ++j)
                for (int i = 0; i < j; ++i)
                    if (X.face_of(X.face_of(x, j), i) != X.face_of(X.face_of(x, i), j - 1))
                        report.push_back("d" + std::to_string(i) + " d" + std::to_string(j) + " identity fails on " +
                                         X.name(k, id));
        }
    return report;
}

/// Simplicial complex on vertices 0..n_vertices-1 generated by the given
/// vertex lists (each sorted). Simplices are numbered per dimension in
/// lexicographic order of their vertex lists and named "<v0v1…>".
inline FinSSet from_complex(int n_vertices, const std::vector<std::vector<int>> &facets)
{
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<std::vector<std::vector<int>>> by_dim;
    std::map<std::vector<int>, bool> all;
    for (int v = 0; v < n_vertices; ++v)
        all[{v}] = true;
    for (const auto &f : facets)
    {
        const int m = static_cast<int>(f.size());
        for (int mask = 1; mask < (1 << m); ++mask)
        {
            std::vector<int> s;
            for (int b = 0; b < m; ++b)
                if (mask >> b & 1)
                    s.push_back(f[b]);
            all[s] = true;
        }
    }
    for (auto &[s, _] : all)
    {
        int k = static_cast<int>(s.size()) - 1;
        if (static_cast<int>(by_dim.size()) <= k)
            by_dim.resize(k + 1);
        by_dim[k].push_back(s);
    }
    FinSSet::Builder b;
    for (int k = 0; k < static_cast<int>(by_dim.size()); ++k)
        for (auto &s : by_dim[k])
        {
            std::vector<SimplexRef> faces;
            if (k > 0)
                for (int i = 0; i <= k; ++i)
                {
                    auto t = s;
                    t.erase(t.begin() + i);
                    faces.push_back({k - 1, ids.at({k - 1, t}), identity_map(k - 1)});
                }
            std::string name = "<";
            for (std::size_t v = 0; v < s.size(); ++v)
                name += (v ? "," : "") + std::to_string(s[v]);
            ids[{k, s}] = b.add(k, std::move(faces), name + ">");
        }
    return b.build();
}

inline FinSSet standard_simplex(int n)
{
    if (n < 0)
        throw std::invalid_argument("standard_simplex: negative dimension");
    std::vector<int> all(n + 1);
    for (int v = 0; v <= n; ++v)
        all[v] = v;
    return from_complex(n + 1, {all});
}

inline FinSSet boundary(int n)
{
    if (n < 1)
        throw std::invalid_argument("boundary: dimension must be at least 1");
    std::vector<std::vector<int>> facets;
    for (int i = 0; i <= n; ++i)
    {
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != i)
                f.push_back(v);
        facets.push_back(f);
    }
    return from_complex(n + 1, facets);
}

inline FinSSet horn(int n, int k)
{
    if (n < 1 || k < 0 || k > n)
        throw std::invalid_argument("horn: need 0 <= k <= n and n >= 1");
    std::vector<std::vector<int>> facets;
    for (int i = 0; i <= n; ++i)
    {
        if (i == k)
            continue;
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != i)
                f.push_back(v);
        facets.push_back(f);
    }
    return from_complex(n + 1, facets);
}

inline FinSSet spine(int n)
{
    if (n < 0)
        throw std::invalid_argument("spine: negative length");
    std::vector<std::vector<int>> facets;
    for (int v = 0; v < n; ++v)
        facets.push_back({v, v + 1});
    return from_complex(n + 1, facets);
}

inline FinSSet disjoint_union(const FinSSet &X, const FinSSet &Y)
{
    FinSSet::Builder b;
    const int D = std::max(X.dimension(), Y.dimension());
    for (int k = 0; k <= D; ++k)
    {
        for (int id = 0; id < X.count(k); ++id)
        {
            std::vector<SimplexRef> f;
            for (int i = 0; k > 0 && i <= k; ++i)
                f.push_back(X.face(k, id, i));
            b.add(k, f, X.name(k, id));
        }
        for (int id = 0; id < Y.count(k); ++id)
        {
            std::vector<SimplexRef> f;
            for (int i = 0; k > 0 && i <= k; ++i)
            {
                auto g = Y.face(k, id, i);
                g.nd_id += X.count(g.nd_dim);
                f.push_back(g);
            }
            b.add(k, f, Y.name(k, id));
        }
    }
    return b.build();
}

/// Identification of two nondegenerate simplices of equal dimension.
struct Identification
{
    int dim = 0;
    int a = 0;
    int b = 0;
};

/// Quotient of X identifying the given nondegenerate simplices, closed under
/// faces. Faces being identified must have the same degeneracy shape.
inline FinSSet glue(const FinSSet &X, const std::vector<Identification> &pairs)
{
    const int D = X.dimension();
    std::vector<UnionFind> uf;
    for (int k = 0; k <= D; ++k)
        uf.emplace_back(X.count(k));
    for (auto &p : pairs)
    {
        if (p.dim < 0 || p.dim > D || p.a >= X.count(p.dim) || p.b >= X.count(p.dim))
            throw std::invalid_argument("glue: unknown simplex");
        uf[p.dim].unite(p.a, p.b);
    }
    for (int k = D; k >= 1; --k)
    {
        std::map<std::size_t, int> first;
        for (int id = 0; id < X.count(k); ++id)
        {
            auto root = uf[k].find(id);
            auto [it, fresh] = first.emplace(root, id);
            if (fresh)
                continue;
            for (int i = 0; i <= k; ++i)
            {
                const auto &f = X.face(k, it->second, i), &g = X.face(k, id, i);
                if (f.sigma != g.sigma || f.nd_dim != g.nd_dim)
                    throw std::invalid_argument("glue: identified faces have different degeneracy shape");
                uf[f.nd_dim].unite(f.nd_id, g.nd_id);
            }
        }
    }
    std::vector<std::vector<std::size_t>> label(D + 1);
    for (int k = 0; k <= D; ++k)
        label[k] = uf[k].labels();
    FinSSet::Builder b;
    for (int k = 0; k <= D; ++k)
    {
        std::size_t next = 0;
        for (int id = 0; id < X.count(k); ++id)
        {
            if (label[k][id] != next)
                continue;
            ++next;
            std::vector<SimplexRef> f;
            for (int i = 0; k > 0 && i <= k; ++i)
            {
                auto g = X.face(k, id, i);
                g.nd_id = static_cast<int>(label[g.nd_dim][g.nd_id]);
                f.push_back(g);
            }
            b.add(k, f, X.name(k, id));
        }
    }
    return b.build();
}

inline FinSSet circle() { return glue(standard_simplex(1), {{0, 0, 1}}); }

/// Nondegenerate simplex of X with the given vertex list, if X has exactly
/// one; used for complexes.
inline int simplex_with_vertices(const FinSSet &X, const std::vector<int> &verts)
{
    const int k = static_cast<int>(verts.size()) - 1;
    for (int id = 0; id < X.count(k); ++id)
        if (X.vertices(X.nondegenerate(k, id)) == verts)
            return id;
    throw std::invalid_argument("simplex_with_vertices: no such simplex");
}

/// The face x_{a…b} spanned by the vertices at positions a ≤ b of x.
inline SimplexRef between_subsimplex(const FinSSet &X, const SimplexRef &x, int a, int b)
{
    if (a < 0 || b < a || b > x.dim())
        throw std::invalid_argument("between_subsimplex: need 0 <= a <= b <= dim");
    Monotone t;
    for (int v = a; v <= b; ++v)
        t.push_back(v);
    return X.apply(t, x);
}

/// A zig-zag in Δ: feet [n_k], apexes [m_k] and monotone legs.
struct DeltaZigZag
{
    std::vector<int> feet{0};
    std::vector<int> apexes;
    std::vector<Monotone> lefts;
    std::vector<Monotone> rights;

    int length() const { return static_cast<int>(apexes.size()); }
};

/// A necklace Δ^{n₀} ∨ … ∨ Δ^{n_k} as a zig-zag with apexes [0], left legs
/// the terminal vertex and right legs the initial vertex.
inline DeltaZigZag necklace_zigzag(const std::vector<int> &beads)
{
    DeltaZigZag z{{beads.at(0)}, {}, {}, {}};
    for (std::size_t k = 1; k < beads.size(); ++k)
    {
        z.apexes.push_back(0);
        z.lefts.push_back({beads[k - 1]});
        z.rights.push_back({0});
        z.feet.push_back(beads[k]);
    }
    return z;
}

/// |T| = Δ^{n₀} +_{Δ^{m₁}} … as an iterated pushout. Legs must be
/// injective.
inline FinSSet realize_zigzag(const DeltaZigZag &T)
{
    FinSSet X = standard_simplex(T.feet[0]);
    std::vector<std::vector<int>> vertex_of{identity_map(T.feet[0])};
    int nverts = T.feet[0] + 1;
    for (int k = 0; k < T.length(); ++k)
    {
        if (!is_injective(T.lefts[k]) || !is_injective(T.rights[k]))
            throw std::invalid_argument("realize_zigzag: legs must be injective");
        int n = T.feet[k + 1];
        std::vector<int> verts(n + 1);
        for (int v = 0; v <= n; ++v)
            verts[v] = nverts + v;
        vertex_of.push_back(verts);
        nverts += n + 1;
    }
    // Build the disjoint union as one complex on global vertices, then glue
    // along the apexes.
    std::vector<std::vector<int>> facets;
    for (auto &v : vertex_of)
        facets.push_back(v);
    FinSSet U = from_complex(nverts, facets);
    std::vector<Identification> pairs;
    for (int k = 0; k < T.length(); ++k)
    {
        const int m = T.apexes[k];
        for (int mask = 1; mask < (1 << (m + 1)); ++mask)
        {
            std::vector<int> l, r;
            for (int v = 0; v <= m; ++v)
                if (mask >> v & 1)
                {
                    l.push_back(vertex_of[k][T.lefts[k][v]]);
                    r.push_back(vertex_of[k + 1][T.rights[k][v]]);
                }
            int dim = static_cast<int>(l.size()) - 1;
            pairs.push_back({dim, simplex_with_vertices(U, l), simplex_with_vertices(U, r)});
        }
    }
    return glue(U, pairs);
}

/// A category of simplices: objects are simplices, an arrow x → y is a θ
/// with x = θ*y.
struct SimplexCategory
{
    FinCat cat;
    std::vector<SimplexRef> simplices; // per object
    std::vector<Monotone> theta;       // per morphism
    std::map<SimplexRef, ObjId> index;

    ObjId object_of(const SimplexRef &x) const { return index.at(x); }
};

namespace detail {

inline SimplexCategory build_simplex_category(const FinSSet &X, std::vector<SimplexRef> simplices, bool injective_only)
{
    SimplexCategory S;
    S.simplices = std::move(simplices);
    FinCat::Builder b;
    for (const auto &x : S.simplices)
        S.index[x] = b.add_object(X.name(x));
    std::map<std::tuple<ObjId, ObjId, Monotone>, MorId> mor;
    for (ObjId y = 0; y < static_cast<ObjId>(S.simplices.size()); ++y)
    {
        const int n = S.simplices[y].dim();
        S.theta.resize(b.identity(y) + 1);
        S.theta[b.identity(y)] = identity_map(n);
        mor[{y, y, identity_map(n)}] = b.identity(y);
    }
    int top = 0;
    for (auto &s : S.simplices)
        top = std::max(top, s.dim());
    for (ObjId y = 0; y < static_cast<ObjId>(S.simplices.size()); ++y)
    {
        const auto &sy = S.simplices[y];
        for (int m = 0; m <= top; ++m)
        {
            if (injective_only && m > sy.dim())
                break;
            for (auto &t : injective_only ? injective_maps(m, sy.dim()) : monotone_maps(m, sy.dim()))
            {
                auto xs = X.apply(t, sy);
                auto it = S.index.find(xs);
                if (it == S.index.end())
                    continue;
                ObjId x = it->second;
                if (x == y && t == identity_map(sy.dim()))
                    continue;
                std::string name;
                for (int v : t)
                    name += std::to_string(v);
                MorId f = b.add_morphism(x, y, name);
                if (static_cast<int>(S.theta.size()) <= f)
                    S.theta.resize(f + 1);
                S.theta[f] = t;
                mor[{x, y, t}] = f;
            }
        }
    }
    // Composition: x →θ y →ψ z is ψθ.
    FinCat partial = b.build();
    for (MorId f = 0; f < partial.num_morphisms(); ++f)
        for (MorId g : partial.morphisms_out(partial.tgt(f)))
        {
            if (partial.is_identity(f) || partial.is_identity(g))
                continue;
            auto t = compose_maps(S.theta[g], S.theta[f]);
            b.set_compose(g, f, mor.at({partial.src(f), partial.tgt(g), t}));
        }
    S.cat = b.build();
    return S;
}

} // namespace detail

/// The category of simplices of X truncated at max_dim, degenerate simplices
/// included.
inline SimplexCategory simplex_category(const FinSSet &X, int max_dim)
{
    std::vector<SimplexRef> simplices;
    for (int m = 0; m <= max_dim; ++m)
        for (int k = 0; k <= std::min(m, X.dimension()); ++k)
            for (int id = 0; id < X.count(k); ++id)
                for (auto &s : monotone_maps(m, k))
                    if (s.front() == 0 && s.back() == k &&
                        std::adjacent_find(s.begin(), s.end(), [](int a, int b) { return b > a + 1; }) == s.end())
                        simplices.push_back({k, id, s});
    return detail::build_simplex_category(X, std::move(simplices), false);
}

/// The full subcategory on nondegenerate simplices; its arrows are faces.
inline SimplexCategory nondegenerate_simplex_category(const FinSSet &X)
{
    std::vector<SimplexRef> simplices;
    for (int k = 0; k <= X.dimension(); ++k)
        for (int id = 0; id < X.count(k); ++id)
            simplices.push_back(X.nondegenerate(k, id));
    return detail::build_simplex_category(X, std::move(simplices), true);
}

} // namespace zzc
