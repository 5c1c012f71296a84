#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zzc {

using ObjId = int;
using MorId = int;

inline constexpr int kNone = -1;

/// A finite category stored as dense tables. Every object carries an
/// identity morphism; composition is a partial table over composable pairs,
/// indexed by (g, position of f among the morphisms into src(g)).
class FinCat
{
  public:
    class Builder;

    int num_objects() const { return static_cast<int>(identity_.size()); }
    int num_morphisms() const { return static_cast<int>(src_.size()); }

    ObjId src(MorId m) const { return src_[m]; }
    ObjId tgt(MorId m) const { return tgt_[m]; }
    MorId identity(ObjId o) const { return identity_[o]; }
    bool is_identity(MorId m) const { return identity_[src_[m]] == m; }

    /// g ∘ f, or kNone when the pair is not composable or the table has a hole.
    MorId compose(MorId g, MorId f) const
    {
        if (tgt_[f] != src_[g])
            return kNone;
        return table_[row_offset_[g] + in_index_[f]];
    }

    std::span<const MorId> morphisms_out(ObjId o) const { return out_[o]; }
    std::span<const MorId> morphisms_in(ObjId o) const { return in_[o]; }

    /// Morphisms a → b in id order.
    std::vector<MorId> hom(ObjId a, ObjId b) const
    {
        std::vector<MorId> out;
        for (auto m : out_[a])
            if (tgt_[m] == b)
                out.push_back(m);
        return out;
    }

    const std::string &object_name(ObjId o) const { return object_names_[o]; }
    const std::string &morphism_name(MorId m) const { return morphism_names_[m]; }

  private:
    std::vector<ObjId> src_, tgt_;
    std::vector<MorId> identity_;
    std::vector<std::vector<MorId>> out_, in_;
    std::vector<int> in_index_;
    std::vector<std::size_t> row_offset_;
    std::vector<MorId> table_;
    std::vector<std::string> object_names_, morphism_names_;
};

class FinCat::Builder
{
  public:
    ObjId add_object(std::string name = {})
    {
        ObjId o = static_cast<ObjId>(obj_names_.size());
        if (name.empty())
            name = std::to_string(o);
        obj_names_.push_back(std::move(name));
        MorId id = static_cast<MorId>(src_.size());
        src_.push_back(o);
        tgt_.push_back(o);
        mor_names_.push_back("id_" + obj_names_.back());
        identity_.push_back(id);
        return o;
    }

    MorId add_morphism(ObjId s, ObjId t, std::string name = {})
    {
        if (s < 0 || t < 0 || s >= static_cast<int>(obj_names_.size()) ||
            t >= static_cast<int>(obj_names_.size()))
            throw std::invalid_argument("add_morphism: unknown object");
        MorId m = static_cast<MorId>(src_.size());
        src_.push_back(s);
        tgt_.push_back(t);
        if (name.empty())
            name = "m" + std::to_string(m);
        mor_names_.push_back(std::move(name));
        return m;
    }

    MorId identity(ObjId o) const { return identity_[o]; }

    void rename_morphism(MorId m, std::string name) { mor_names_.at(m) = std::move(name); }

    /// Records g ∘ f = h.
    void set_compose(MorId g, MorId f, MorId h) { facts_.push_back({g, f, h}); }

    FinCat build() const
    {
        FinCat c;
        c.src_ = src_;
        c.tgt_ = tgt_;
        c.identity_ = identity_;
        c.object_names_ = obj_names_;
        c.morphism_names_ = mor_names_;
        auto nobj = obj_names_.size();
        c.out_.assign(nobj, {});
        c.in_.assign(nobj, {});
        c.in_index_.assign(src_.size(), 0);
        for (MorId m = 0; m < static_cast<MorId>(src_.size()); ++m)
        {
            c.out_[src_[m]].push_back(m);
            c.in_index_[m] = static_cast<int>(c.in_[tgt_[m]].size());
            c.in_[tgt_[m]].push_back(m);
        }
        c.row_offset_.assign(src_.size(), 0);
        std::size_t off = 0;
        for (MorId g = 0; g < static_cast<MorId>(src_.size()); ++g)
        {
            c.row_offset_[g] = off;
            off += c.in_[src_[g]].size();
        }
        c.table_.assign(off, kNone);
        for (MorId m = 0; m < static_cast<MorId>(src_.size()); ++m)
        {
            c.table_[c.row_offset_[m] + c.in_index_[identity_[src_[m]]]] = m;
            c.table_[c.row_offset_[identity_[tgt_[m]]] + c.in_index_[m]] = m;
        }
        for (auto [g, f, h] : facts_)
        {
            if (tgt_[f] != src_[g])
                throw std::invalid_argument("set_compose: morphisms not composable");
            c.table_[c.row_offset_[g] + c.in_index_[f]] = h;
        }
        return c;
    }

  private:
    struct Fact
    {
        MorId g, f, h;
    };
    std::vector<ObjId> src_, tgt_;
    std::vector<MorId> identity_;
    std::vector<std::string> obj_names_, mor_names_;
    std::vector<Fact> facts_;
};

/// Violated category laws; empty iff the table is a category.
inline std::vector<std::string> validate_fincat(const FinCat &c)
{
    std::vector<std::string> report;
    const int n = c.num_morphisms();
    for (MorId f = 0; f < n; ++f)
    {
        if (c.compose(c.identity(c.tgt(f)), f) != f)
            report.push_back("left identity fails for " + c.morphism_name(f));
        if (c.compose(f, c.identity(c.src(f))) != f)
            report.push_back("right identity fails for " + c.morphism_name(f));
    }
    for (MorId f = 0; f < n; ++f)
    {
        for (MorId g : c.morphisms_out(c.tgt(f)))
        {
            MorId gf = c.compose(g, f);
            if (gf == kNone)
            {
                report.push_back("composite undefined: " + c.morphism_name(g) + " o " +
                                 c.morphism_name(f));
                continue;
            }
            if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
                report.push_back("composite has wrong endpoints: " + c.morphism_name(g) + " o " +
                                 c.morphism_name(f));
        }
    }
    if (!report.empty())
        return report;
    for (MorId f = 0; f < n; ++f)
        for (MorId g : c.morphisms_out(c.tgt(f)))
            for (MorId h : c.morphisms_out(c.tgt(g)))
                if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
                    report.push_back("associativity fails: " + c.morphism_name(h) + ", " +
                                     c.morphism_name(g) + ", " + c.morphism_name(f));
    return report;
}

struct Functor
{
    std::vector<ObjId> obj_map;
    std::vector<MorId> mor_map;

    ObjId on_object(ObjId o) const { return obj_map[o]; }
    MorId on_morphism(MorId m) const { return mor_map[m]; }
};

inline Functor identity_functor(const FinCat &c)
{
    Functor f;
    for (ObjId o = 0; o < c.num_objects(); ++o)
        f.obj_map.push_back(o);
    for (MorId m = 0; m < c.num_morphisms(); ++m)
        f.mor_map.push_back(m);
    return f;
}

/// G ∘ F.
inline Functor compose_functors(const Functor &g, const Functor &f)
{
    Functor h;
    for (auto o : f.obj_map)
        h.obj_map.push_back(g.obj_map[o]);
    for (auto m : f.mor_map)
        h.mor_map.push_back(g.mor_map[m]);
    return h;
}

inline std::vector<std::string> validate_functor(const Functor &f, const FinCat &a, const FinCat &b)
{
    std::vector<std::string> report;
    if (static_cast<int>(f.obj_map.size()) != a.num_objects() ||
        static_cast<int>(f.mor_map.size()) != a.num_morphisms())
    {
        report.push_back("functor tables have wrong size");
        return report;
    }
    for (ObjId o = 0; o < a.num_objects(); ++o)
    {
        if (f.obj_map[o] < 0 || f.obj_map[o] >= b.num_objects())
            report.push_back("object image out of range");
        else if (f.mor_map[a.identity(o)] != b.identity(f.obj_map[o]))
            report.push_back("identity not preserved at " + a.object_name(o));
    }
    if (!report.empty())
        return report;
    for (MorId m = 0; m < a.num_morphisms(); ++m)
    {
        MorId fm = f.mor_map[m];
        if (fm < 0 || fm >= b.num_morphisms())
        {
            report.push_back("morphism image out of range");
            return report;
        }
        if (b.src(fm) != f.obj_map[a.src(m)] || b.tgt(fm) != f.obj_map[a.tgt(m)])
            report.push_back("endpoints not preserved by " + a.morphism_name(m));
    }
    if (!report.empty())
        return report;
    for (MorId m = 0; m < a.num_morphisms(); ++m)
        for (MorId g : a.morphisms_out(a.tgt(m)))
            if (f.mor_map[a.compose(g, m)] != b.compose(f.mor_map[g], f.mor_map[m]))
                report.push_back("composition not preserved: " + a.morphism_name(g) + " o " +
                                 a.morphism_name(m));
    return report;
}

/// A functor F : J → Cat with finite values. Node categories are shared so
/// that large diagrams (e.g. flag categories over a simplex category) stay
/// cheap to copy.
struct Diagram
{
    FinCat index;
    std::vector<std::shared_ptr<const FinCat>> nodes; // per object of index
    std::vector<Functor> edges;                       // per morphism of index

    const FinCat &node(ObjId i) const { return *nodes[i]; }
    const Functor &edge(MorId u) const { return edges[u]; }
};

inline std::vector<std::string> validate_diagram(const Diagram &d)
{
    auto report = validate_fincat(d.index);
    if (!report.empty())
        return report;
    if (static_cast<int>(d.nodes.size()) != d.index.num_objects() ||
        static_cast<int>(d.edges.size()) != d.index.num_morphisms())
        return {"diagram tables have wrong size"};
    for (ObjId i = 0; i < d.index.num_objects(); ++i)
        for (auto &r : validate_fincat(d.node(i)))
            report.push_back("node " + d.index.object_name(i) + ": " + r);
    for (MorId u = 0; u < d.index.num_morphisms(); ++u)
        for (auto &r : validate_functor(d.edge(u), d.node(d.index.src(u)), d.node(d.index.tgt(u))))
            report.push_back("edge " + d.index.morphism_name(u) + ": " + r);
    if (!report.empty())
        return report;
    for (ObjId i = 0; i < d.index.num_objects(); ++i)
    {
        const auto &id = d.edge(d.index.identity(i));
        if (id.obj_map != identity_functor(d.node(i)).obj_map ||
            id.mor_map != identity_functor(d.node(i)).mor_map)
            report.push_back("identity of " + d.index.object_name(i) + " not sent to identity functor");
    }
    for (MorId u = 0; u < d.index.num_morphisms(); ++u)
        for (MorId v : d.index.morphisms_out(d.index.tgt(u)))
        {
            auto vu = compose_functors(d.edge(v), d.edge(u));
            const auto &direct = d.edge(d.index.compose(v, u));
            if (vu.obj_map != direct.obj_map || vu.mor_map != direct.mor_map)
                report.push_back("functoriality fails at " + d.index.morphism_name(v) + " o " +
                                 d.index.morphism_name(u));
        }
    return report;
}

/// An object of the category of elements of Ob∘F: a pair (i, a) with a an
/// object of the node category at i.
struct Element
{
    ObjId index = 0;
    ObjId object = 0;

    friend auto operator<=>(const Element &, const Element &) = default;
};

} // namespace zzc
