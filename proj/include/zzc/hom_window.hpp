#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "decor.hpp"
#include "hash.hpp"
#include "hom_table.hpp"
#include "objects.hpp"
#include "parallel.hpp"
#include "union_find.hpp"

namespace zzc {

struct HomBounds
{
    int max_zz_len = 2;
    /// 0 skips the certificate; otherwise the window is re-run one step
    /// larger to certify saturation.
    int max_rounds = 1;
    std::size_t budget = default_budget();
    unsigned jobs = 1;
    /// Restricts the apex objects of enumerated zig-zags; empty admits all.
    std::function<bool(ObjId)> apex_filter;
    /// Close the relation under concatenation as well as under cells.
    bool congruence = true;
};

/// Flat code of a decorated zig-zag: n, i₀, f₀, then l_k, r_k, a_k, f_k per
/// roof. Codes compare by (length, lexicographic).
using ZigZagCode = std::vector<int>;

inline ZigZagCode encode(const DecoratedZigZag &x)
{
    ZigZagCode c{x.length(), x.base.first(), x.chain[0]};
    for (int k = 0; k < x.length(); ++k)
    {
        c.push_back(x.base.lefts[k]);
        c.push_back(x.base.rights[k]);
        c.push_back(x.apex_objects[k]);
        c.push_back(x.chain[k + 1]);
    }
    return c;
}

inline DecoratedZigZag decode(const FinCat &J, const ZigZagCode &c)
{
    DecoratedZigZag x = DecoratedZigZag::trivial(c[1], c[2]);
    for (int k = 0; k < c[0]; ++k)
    {
        const int *p = &c[3 + 4 * k];
        x.base = concat(x.base, ZigZag::roof(J, p[0], p[1]));
        x.apex_objects.push_back(p[2]);
        x.chain.push_back(p[3]);
    }
    return x;
}

/// Decorated zig-zags of base length ≤ L, quotiented by the equivalence
/// that the 2-cells of ℤF generate inside the window. Every cell factors into
/// foot pushes, apex pushes and collapses of roofs with equal legs, whose
/// intermediates stay in the window; those three moves are what the closure
/// applies. With `congruence` set the equivalence is also closed under
/// concatenation: x ~ x' and y ~ y' with x·y and x'·y' defined give
/// x·y ~ x'·y'. Cells alone do not force this (a loop that a foot push
/// identifies with an identity need not vanish in the middle of a longer
/// zig-zag), and composition of classes is well defined only after it.
///
/// s < 0 admits every source class and t < 0 every target class.
class ZigZagWindow
{
  public:
    ZigZagWindow(const Diagram &d, const SetColimit &objects, const HomBounds &bounds, int L, int s = -1,
                 int t = -1)
        : d_(d), objects_(objects), bounds_(bounds), L_(L), s_(s), t_(t)
    {
        enumerate();
        close();
    }
    ZigZagWindow(const ZigZagWindow &) = delete;
    ZigZagWindow &operator=(const ZigZagWindow &) = delete;

    const Diagram &diagram() const { return d_; }
    const SetColimit &objects() const { return objects_; }
    int length() const { return L_; }
    const std::vector<ZigZagCode> &items() const { return items_; }
    /// Dense class label, numbered by least member.
    std::size_t label(std::size_t item) const { return labels_[item]; }
    std::size_t congruence_rounds() const { return rounds_; }

    std::optional<std::size_t> index_of(const ZigZagCode &c) const
    {
        auto it = index_.find(c);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    int source_class(std::size_t item) const
    {
        const auto &c = items_[item];
        return objects_.class_of(c[1], d_.node(c[1]).src(c[2]));
    }

    int target_class(std::size_t item) const
    {
        const auto &c = items_[item];
        ObjId i = foot(c, c[0]);
        return objects_.class_of(i, d_.node(i).tgt(c[fpos(c[0])]));
    }

  private:
    bool admits_apex(ObjId j) const { return !bounds_.apex_filter || bounds_.apex_filter(j); }

    std::size_t element_id(ObjId i, ObjId a) const { return offset_[i] + a; }

    ObjId foot(const ZigZagCode &c, int k) const { return k == 0 ? c[1] : d_.index.tgt(c[3 + 4 * (k - 1) + 1]); }
    static int fpos(int k) { return k == 0 ? 2 : 3 + 4 * (k - 1) + 3; }

    struct RoofOption
    {
        MorId l, r;
        ObjId a;
        ObjId next_foot, next_object;
    };

    void enumerate()
    {
        const auto &J = d_.index;
        offset_.assign(J.num_objects() + 1, 0);
        for (ObjId i = 0; i < J.num_objects(); ++i)
            offset_[i + 1] = offset_[i] + d_.node(i).num_objects();
        const std::size_t E = offset_.back();

        // Roofs that can follow a chain entry ending at (i, z).
        options_.assign(E, {});
        for (ObjId j = 0; j < J.num_objects(); ++j)
        {
            if (!admits_apex(j))
                continue;
            for (ObjId a = 0; a < d_.node(j).num_objects(); ++a)
                for (MorId l : J.morphisms_out(j))
                {
                    ObjId z = push_object(d_, l, a);
                    for (MorId r : J.morphisms_out(j))
                        options_[element_id(J.tgt(l), z)].push_back({l, r, a, J.tgt(r), push_object(d_, r, a)});
                }
        }
        for (auto &o : options_)
            std::sort(o.begin(), o.end(), [](const RoofOption &x, const RoofOption &y) {
                return std::tie(x.l, x.r, x.a) < std::tie(y.l, y.r, y.a);
            });

        // reach[r][(i, y)]: a chain entry may start at y in 𝒞_i and finish in
        // an admitted target class after exactly r more roofs.
        reach_.assign(L_ + 1, std::vector<char>(E, 0));
        for (ObjId i = 0; i < J.num_objects(); ++i)
            for (ObjId y = 0; y < d_.node(i).num_objects(); ++y)
                for (MorId f : d_.node(i).morphisms_out(y))
                    if (admits_target(i, d_.node(i).tgt(f)))
                        reach_[0][element_id(i, y)] = 1;
        for (int r = 1; r <= L_; ++r)
            for (ObjId i = 0; i < J.num_objects(); ++i)
                for (ObjId y = 0; y < d_.node(i).num_objects(); ++y)
                {
                    bool ok = false;
                    for (MorId f : d_.node(i).morphisms_out(y))
                    {
                        for (auto &o : options_[element_id(i, d_.node(i).tgt(f))])
                            if (reach_[r - 1][element_id(o.next_foot, o.next_object)])
                            {
                                ok = true;
                                break;
                            }
                        if (ok)
                            break;
                    }
                    reach_[r][element_id(i, y)] = ok;
                }

        for (int n = 0; n <= L_; ++n)
            for (ObjId i = 0; i < J.num_objects(); ++i)
                for (ObjId y = 0; y < d_.node(i).num_objects(); ++y)
                    if ((s_ < 0 || objects_.class_of(i, y) == s_) && reach_[n][element_id(i, y)])
                    {
                        ZigZagCode code{n, i};
                        extend(code, i, y, n);
                    }
        std::sort(items_.begin(), items_.end());
        index_.reserve(items_.size());
        for (std::size_t x = 0; x < items_.size(); ++x)
            index_.emplace(items_[x], x);
    }

    bool admits_target(ObjId i, ObjId z) const { return t_ < 0 || objects_.class_of(i, z) == t_; }

    void extend(ZigZagCode &code, ObjId i, ObjId y, int left)
    {
        const auto &c = d_.node(i);
        for (MorId f : c.morphisms_out(y))
        {
            code.push_back(f);
            ObjId z = c.tgt(f);
            if (left == 0)
            {
                if (admits_target(i, z))
                {
                    items_.push_back(code);
                    if (items_.size() > bounds_.budget)
                        throw BudgetExceeded("hom window enumeration exceeded the node budget");
                }
            }
            else
            {
                for (auto &o : options_[element_id(i, z)])
                {
                    if (!reach_[left - 1][element_id(o.next_foot, o.next_object)])
                        continue;
                    code.insert(code.end(), {o.l, o.r, o.a});
                    extend(code, o.next_foot, o.next_object, left - 1);
                    code.resize(code.size() - 3);
                }
            }
            code.pop_back();
        }
    }

    using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

    void moves_of(std::size_t x, Pairs &out) const
    {
        const auto &J = d_.index;
        const ZigZagCode &c = items_[x];
        const int n = c[0];
        auto link = [&](const ZigZagCode &y) {
            auto it = index_.find(y);
            if (it != index_.end() && it->second != x)
                out.push_back({x, it->second});
        };
        // Foot pushes.
        for (int k = 0; k <= n; ++k)
        {
            ObjId i = foot(c, k);
            for (MorId u : J.morphisms_out(i))
            {
                if (J.is_identity(u))
                    continue;
                ZigZagCode y = c;
                if (k == 0)
                    y[1] = J.tgt(u);
                else
                    y[3 + 4 * (k - 1) + 1] = J.compose(u, c[3 + 4 * (k - 1) + 1]);
                if (k < n)
                    y[3 + 4 * k] = J.compose(u, c[3 + 4 * k]);
                y[fpos(k)] = push_morphism(d_, u, c[fpos(k)]);
                link(y);
            }
        }
        for (int k = 1; k <= n; ++k)
        {
            const int base = 3 + 4 * (k - 1);
            MorId l = c[base], r = c[base + 1];
            ObjId j = J.src(l);
            // Apex pushes.
            for (MorId g : J.morphisms_out(j))
            {
                if (J.is_identity(g) || !admits_apex(J.tgt(g)))
                    continue;
                for (MorId l2 : J.morphisms_out(J.tgt(g)))
                {
                    if (J.compose(l2, g) != l)
                        continue;
                    for (MorId r2 : J.morphisms_out(J.tgt(g)))
                    {
                        if (J.compose(r2, g) != r)
                            continue;
                        ZigZagCode y = c;
                        y[base] = l2;
                        y[base + 1] = r2;
                        y[base + 2] = push_object(d_, g, c[base + 2]);
                        link(y);
                    }
                }
            }
            // Collapse of a roof with equal legs.
            if (l == r)
            {
                ZigZagCode y(c.begin(), c.begin() + base);
                y[0] = n - 1;
                y.back() = d_.node(J.tgt(l)).compose(c[base + 3], c[fpos(k - 1)]);
                y.insert(y.end(), c.begin() + base + 4, c.end());
                link(y);
            }
        }
    }

    /// Keys of the ways x splits as (piece)·(generator) or
    /// (generator)·(piece), where a generator is a non-identity morphism of
    /// a node or a roof with identity chain entries. Items sharing a key are
    /// congruent.
    using Key = std::array<std::int64_t, 5>;
    struct KeyHash
    {
        std::size_t operator()(const Key &k) const noexcept
        {
            std::uint64_t h = 1469598103934665603ull;
            for (auto v : k)
            {
                h ^= static_cast<std::uint64_t>(v);
                h *= 1099511628211ull;
                h ^= h >> 29;
            }
            return static_cast<std::size_t>(h);
        }
    };

    void keys_of(std::size_t x, const UnionFind &uf, std::vector<std::pair<Key, std::size_t>> &out) const
    {
        const ZigZagCode &c = items_[x];
        const int n = c[0];
        auto piece = [&](const ZigZagCode &y) -> std::int64_t {
            auto it = index_.find(y);
            return it == index_.end() ? -1 : static_cast<std::int64_t>(uf.find(it->second));
        };
        auto emit = [&](std::int64_t cls, std::int64_t tag, std::int64_t a, std::int64_t b, std::int64_t e) {
            if (cls >= 0)
                out.push_back({Key{cls, tag, a, b, e}, x});
        };
        // Right factors: the last chain entry is h ∘ g.
        {
            ObjId i = foot(c, n);
            const auto &C = d_.node(i);
            MorId f = c[fpos(n)];
            ZigZagCode y = c;
            for (MorId g : C.morphisms_out(C.src(f)))
                for (MorId h : C.morphisms_out(C.tgt(g)))
                    if (!C.is_identity(h) && C.compose(h, g) == f)
                    {
                        y[fpos(n)] = g;
                        emit(piece(y), 0, i, h, 0);
                    }
            if (n >= 1 && C.is_identity(f))
            {
                const int base = 3 + 4 * (n - 1);
                ZigZagCode z(c.begin(), c.begin() + base);
                z[0] = n - 1;
                emit(piece(z), 1, c[base], c[base + 1], c[base + 2]);
            }
        }
        // Left factors: the first chain entry is h ∘ g.
        {
            ObjId i = c[1];
            const auto &C = d_.node(i);
            MorId f = c[2];
            ZigZagCode y = c;
            for (MorId g : C.morphisms_out(C.src(f)))
            {
                if (C.is_identity(g))
                    continue;
                for (MorId h : C.morphisms_out(C.tgt(g)))
                    if (C.compose(h, g) == f)
                    {
                        y[2] = h;
                        emit(piece(y), 2, i, g, 0);
                    }
            }
            if (n >= 1 && C.is_identity(f))
            {
                ZigZagCode z{n - 1, foot(c, 1)};
                z.insert(z.end(), c.begin() + 6, c.end());
                emit(piece(z), 3, c[3], c[4], c[5]);
            }
        }
    }

    void close()
    {
        std::vector<Pairs> found(kWorkChunks);
        parallel_chunks(items_.size(), bounds_.jobs, kWorkChunks, [&](std::size_t lo, std::size_t hi, std::size_t ch) {
            for (std::size_t x = lo; x < hi; ++x)
                moves_of(x, found[ch]);
        });
        UnionFind uf(items_.size());
        for (auto &chunk : found)
            for (auto [x, y] : chunk)
                uf.unite(x, y);
        found.clear();

        while (bounds_.congruence)
        {
            ++rounds_;
            std::vector<std::vector<std::pair<Key, std::size_t>>> keys(kWorkChunks);
            const UnionFind &frozen = uf;
            parallel_chunks(items_.size(), bounds_.jobs, kWorkChunks,
                            [&](std::size_t lo, std::size_t hi, std::size_t ch) {
                                for (std::size_t x = lo; x < hi; ++x)
                                    keys_of(x, frozen, keys[ch]);
                            });
            std::unordered_map<Key, std::size_t, KeyHash> first;
            bool merged = false;
            for (auto &chunk : keys)
                for (auto &[k, x] : chunk)
                {
                    auto [it, fresh] = first.emplace(k, x);
                    if (!fresh && uf.unite(it->second, x))
                        merged = true;
                }
            if (!merged)
                break;
        }
        labels_ = uf.labels();
    }

    const Diagram &d_;
    const SetColimit &objects_;
    HomBounds bounds_;
    int L_, s_, t_;
    std::size_t rounds_ = 0;
    std::vector<std::size_t> offset_;
    std::vector<std::vector<RoofOption>> options_;
    std::vector<std::vector<char>> reach_;
    std::vector<ZigZagCode> items_;
    std::unordered_map<ZigZagCode, std::size_t, SeqHash> index_;
    std::vector<std::size_t> labels_;
};

/// The hom window (i,a) ⇝ (j,b) with [a] = s, [b] = t: the items of a
/// ZigZagWindow between those classes and their classes, certified saturated
/// when the window one step larger merges none of them and has no class
/// without a member here.
class HomWindow
{
  public:
    /// A standalone window. Without congruence it enumerates only hom(s, t);
    /// with it every hom, since pieces of a zig-zag lie in other homs.
    HomWindow(const Diagram &d, const SetColimit &objects, int s, int t, const HomBounds &bounds)
    {
        const int fs = bounds.congruence ? -1 : s, ft = bounds.congruence ? -1 : t;
        ZigZagWindow small(d, objects, bounds, bounds.max_zz_len, fs, ft);
        if (bounds.max_rounds > 0)
        {
            ZigZagWindow big(d, objects, bounds, bounds.max_zz_len + 1, fs, ft);
            *this = HomWindow(small, s, t, &big);
        }
        else
            *this = HomWindow(small, s, t, nullptr);
    }

    /// The view of hom(s, t) inside `w`, certified against `big` if given.
    HomWindow(const ZigZagWindow &w, int s, int t, const ZigZagWindow *big) : s_(s), t_(t)
    {
        collect(w);
        build_table(w);
        if (big)
            table_.saturated = certified_by(*big);
    }

    const HomClassTable<DecoratedZigZag> &table() const { return table_; }
    int source_class() const { return s_; }
    int target_class() const { return t_; }

    const std::vector<ZigZagCode> &items() const { return items_; }
    std::size_t label(std::size_t item) const { return labels_[item]; }

    std::optional<std::size_t> index_of(const ZigZagCode &c) const
    {
        auto it = index_.find(c);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// Class of a decorated zig-zag in this window, or nullopt when it lies
    /// outside the window.
    std::optional<int> class_of(const DecoratedZigZag &x) const
    {
        auto i = index_of(encode(x));
        if (!i)
            return std::nullopt;
        return static_cast<int>(labels_[*i]);
    }

  private:
    HomWindow() = default;

    void collect(const ZigZagWindow &w)
    {
        std::unordered_map<std::size_t, std::size_t> dense;
        for (std::size_t x = 0; x < w.items().size(); ++x)
        {
            if (w.source_class(x) != s_ || w.target_class(x) != t_)
                continue;
            auto [it, fresh] = dense.emplace(w.label(x), dense.size());
            index_.emplace(w.items()[x], items_.size());
            items_.push_back(w.items()[x]);
            labels_.push_back(it->second);
        }
    }

    void build_table(const ZigZagWindow &w)
    {
        std::size_t classes = 0;
        for (auto l : labels_)
            classes = std::max(classes, l + 1);
        table_.window = static_cast<std::size_t>(w.length());
        table_.enumerated = items_.size();
        table_.classes.resize(classes);
        std::vector<bool> seen(classes, false);
        for (std::size_t x = 0; x < items_.size(); ++x)
        {
            auto l = labels_[x];
            if (!seen[l])
            {
                seen[l] = true;
                table_.classes[l].representative = decode(w.diagram().index, items_[x]);
            }
            ++table_.classes[l].members;
        }
    }

    bool certified_by(const ZigZagWindow &big) const
    {
        std::unordered_map<std::size_t, std::size_t> image_of;
        std::vector<std::size_t> image(table_.classes.size(), UnionFind::npos);
        for (std::size_t x = 0; x < items_.size(); ++x)
        {
            auto y = big.index_of(items_[x]);
            if (!y)
                return false;
            auto cl = big.label(*y);
            auto &img = image[labels_[x]];
            if (img == UnionFind::npos)
                img = cl;
            else if (img != cl)
                return false;
        }
        std::unordered_map<std::size_t, int> used;
        for (auto img : image)
            if (used[img]++)
                return false;
        for (std::size_t y = 0; y < big.items().size(); ++y)
            if (big.source_class(y) == s_ && big.target_class(y) == t_ && !used.count(big.label(y)))
                return false;
        return true;
    }

    int s_ = 0, t_ = 0;
    std::vector<ZigZagCode> items_;
    std::unordered_map<ZigZagCode, std::size_t, SeqHash> index_;
    std::vector<std::size_t> labels_;
    HomClassTable<DecoratedZigZag> table_;
};

inline HomClassTable<DecoratedZigZag> hom_classes(const Diagram &d, int s, int t, const HomBounds &bounds)
{
    SetColimit objects = colim_objects(d);
    return HomWindow(d, objects, s, t, bounds).table();
}

} // namespace zzc
