#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fincat.hpp"
#include "union_find.hpp"

namespace zzc {

/// A diagram of finite sets J → Set: set sizes per object and a value table
/// per morphism.
struct SetDiagram
{
    FinCat index;
    std::vector<int> sizes;              // per object of index
    std::vector<std::vector<int>> maps;  // per morphism of index
};

inline SetDiagram objects_of(const Diagram &d)
{
    SetDiagram s{d.index, {}, {}};
    for (ObjId i = 0; i < d.index.num_objects(); ++i)
        s.sizes.push_back(d.node(i).num_objects());
    for (MorId u = 0; u < d.index.num_morphisms(); ++u)
        s.maps.push_back(d.edge(u).obj_map);
    return s;
}

/// One class of the set colimit: its elements in (index, element) order;
/// the first element is the canonical representative.
struct ObjectClass
{
    int id = 0;
    std::vector<Element> members;

    const Element &representative() const { return members.front(); }
};

/// π₀ of the category of elements, computed with union-find over the
/// element relation (i, a) ~ (j, ũ(a)).
class SetColimit
{
  public:
    SetColimit() = default;

    explicit SetColimit(const SetDiagram &d)
    {
        offset_.assign(d.sizes.size() + 1, 0);
        for (std::size_t i = 0; i < d.sizes.size(); ++i)
            offset_[i + 1] = offset_[i] + d.sizes[i];
        UnionFind uf(offset_.back());
        for (MorId u = 0; u < d.index.num_morphisms(); ++u)
        {
            ObjId s = d.index.src(u), t = d.index.tgt(u);
            for (int a = 0; a < d.sizes[s]; ++a)
                uf.unite(offset_[s] + a, offset_[t] + d.maps[u][a]);
        }
        auto labels = uf.labels();
        class_of_.assign(labels.begin(), labels.end());
        std::size_t nclasses = 0;
        for (auto l : labels)
            nclasses = std::max(nclasses, l + 1);
        classes_.resize(nclasses);
        for (std::size_t c = 0; c < nclasses; ++c)
            classes_[c].id = static_cast<int>(c);
        for (ObjId i = 0; i < static_cast<ObjId>(d.sizes.size()); ++i)
            for (int a = 0; a < d.sizes[i]; ++a)
                classes_[labels[offset_[i] + a]].members.push_back({i, a});
    }

    const std::vector<ObjectClass> &classes() const { return classes_; }
    std::size_t size() const { return classes_.size(); }

    int class_of(Element e) const { return class_of_[offset_[e.index] + e.object]; }
    int class_of(ObjId i, ObjId a) const { return class_of({i, a}); }

  private:
    std::vector<int> offset_;
    std::vector<int> class_of_;
    std::vector<ObjectClass> classes_;
};

inline SetColimit colim_set(const SetDiagram &d) { return SetColimit(d); }

inline SetColimit colim_objects(const Diagram &d) { return SetColimit(objects_of(d)); }

/// A step in a zig-zag of the category of elements: an index morphism u with
/// its element endpoints, traversed forward ((src u, a) → (tgt u, ũa)) or
/// backward.
struct ElementStep
{
    MorId u = kNone;
    Element from;
    Element to;
    bool forward = true;
};

/// Shortest element path from `from` to `to`, found by breadth-first search
/// with neighbours visited in (morphism id, direction, element) order, so
/// the choice is deterministic. Returns nullopt when the elements are not connected.
inline std::optional<std::vector<ElementStep>> element_path(const Diagram &d, Element from, Element to)
{
    if (from == to)
        return std::vector<ElementStep>{};
    std::map<Element, ElementStep> parent;
    std::deque<Element> queue{from};
    parent[from] = ElementStep{};
    while (!queue.empty())
    {
        Element e = queue.front();
        queue.pop_front();
        std::vector<ElementStep> steps;
        for (MorId u : d.index.morphisms_out(e.index))
            if (!d.index.is_identity(u))
                steps.push_back({u, e, {d.index.tgt(u), d.edge(u).on_object(e.object)}, true});
        for (MorId u : d.index.morphisms_in(e.index))
        {
            if (d.index.is_identity(u))
                continue;
            const auto &node = d.node(d.index.src(u));
            for (ObjId a = 0; a < node.num_objects(); ++a)
                if (d.edge(u).on_object(a) == e.object)
                    steps.push_back({u, e, {d.index.src(u), a}, false});
        }
        std::sort(steps.begin(), steps.end(), [](const ElementStep &x, const ElementStep &y) {
            return std::tie(x.u, x.forward, x.to) < std::tie(y.u, y.forward, y.to);
        });
        for (auto &s : steps)
        {
            if (parent.count(s.to))
                continue;
            parent[s.to] = s;
            if (s.to == to)
            {
                std::vector<ElementStep> path;
                Element cur = to;
                while (cur != from)
                {
                    path.push_back(parent[cur]);
                    cur = parent[cur].from;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(s.to);
        }
    }
    return std::nullopt;
}

} // namespace zzc
