#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "objects.hpp"
#include "zigzag.hpp"

namespace zzc {

/// An F-decoration of a zig-zag: apex objects a_k ∈ 𝒞_{j_k} and a chain
/// f₀ … f_n with f_k : r̃_k(a_k) → l̃_{k+1}(a_{k+1}) in 𝒞_{i_k} (f₀ starts at
/// the source object, f_n ends at the target object).
struct DecoratedZigZag
{
    ZigZag base;
    std::vector<ObjId> apex_objects;
    std::vector<MorId> chain{0};

    int length() const { return base.length(); }

    Element source(const Diagram &d) const { return {base.first(), d.node(base.first()).src(chain.front())}; }
    Element target(const Diagram &d) const { return {base.last(), d.node(base.last()).tgt(chain.back())}; }

    /// A morphism of a single node category, over the trivial zig-zag.
    static DecoratedZigZag trivial(ObjId i, MorId f) { return {ZigZag::trivial(i), {}, {f}}; }

    friend bool operator==(const DecoratedZigZag &, const DecoratedZigZag &) = default;
    friend auto operator<=>(const DecoratedZigZag &, const DecoratedZigZag &) = default;
};

using ElementArrow = ElementStep;

inline ObjId push_object(const Diagram &d, MorId u, ObjId a) { return d.edge(u).on_object(a); }
inline MorId push_morphism(const Diagram &d, MorId u, MorId f) { return d.edge(u).on_morphism(f); }

inline std::vector<std::string> validate_decorated(const Diagram &d, const DecoratedZigZag &x)
{
    auto report = validate_zigzag(d.index, x.base);
    if (!report.empty())
        return report;
    const int n = x.length();
    if (static_cast<int>(x.apex_objects.size()) != n || static_cast<int>(x.chain.size()) != n + 1)
        return {"decoration tables have wrong length"};
    for (int k = 0; k <= n; ++k)
    {
        const auto &c = d.node(x.base.feet[k]);
        MorId f = x.chain[k];
        if (f < 0 || f >= c.num_morphisms())
        {
            report.push_back("chain entry " + std::to_string(k) + " out of range");
            continue;
        }
        if (k > 0)
        {
            ObjId a = x.apex_objects[k - 1];
            if (a < 0 || a >= d.node(x.base.apexes[k - 1]).num_objects())
                report.push_back("apex object " + std::to_string(k) + " out of range");
            else if (c.src(f) != push_object(d, x.base.rights[k - 1], a))
                report.push_back("chain entry " + std::to_string(k) + " does not start at r(a)");
        }
        if (k < n)
        {
            ObjId a = x.apex_objects[k];
            if (a >= 0 && a < d.node(x.base.apexes[k]).num_objects() &&
                c.tgt(f) != push_object(d, x.base.lefts[k], a))
                report.push_back("chain entry " + std::to_string(k) + " does not end at l(a)");
        }
    }
    return report;
}

inline DecoratedZigZag compose_decorated(const Diagram &d, const DecoratedZigZag &x, const DecoratedZigZag &y)
{
    if (x.target(d) != y.source(d))
        throw std::invalid_argument("compose_decorated: endpoint mismatch");
    DecoratedZigZag z{concat(x.base, y.base), x.apex_objects, x.chain};
    z.apex_objects.insert(z.apex_objects.end(), y.apex_objects.begin(), y.apex_objects.end());
    z.chain.back() = d.node(x.base.last()).compose(y.chain.front(), x.chain.back());
    z.chain.insert(z.chain.end(), y.chain.begin() + 1, y.chain.end());
    return z;
}

/// ρ* of a decoration: push every chain entry down its foot component, then
/// compose the pushed entries over each block θ⁻¹(t).
inline DecoratedZigZag apply_cell(const Diagram &d, const ZigZagCell &rho, const DecoratedZigZag &x)
{
    if (rho.source != x.base)
        throw std::invalid_argument("apply_cell: base does not match the cell source");
    const int n = x.length(), m = rho.target.length();
    DecoratedZigZag y{rho.target, std::vector<ObjId>(m, kNone), std::vector<MorId>(m + 1, kNone)};
    for (int k = 0; k <= n; ++k)
    {
        int t = rho.theta[k];
        MorId pushed = push_morphism(d, rho.foot[k], x.chain[k]);
        y.chain[t] = y.chain[t] == kNone ? pushed : d.node(rho.target.feet[t]).compose(pushed, y.chain[t]);
        if (k > 0 && !rho.collapses(k))
            y.apex_objects[t - 1] = push_object(d, rho.apex[k - 1], x.apex_objects[k - 1]);
    }
    return y;
}

/// The cell that pushes foot k of z along u : i_k → i' and is the identity
/// elsewhere.
inline ZigZagCell foot_push_cell(const FinCat &J, const ZigZag &z, int k, MorId u)
{
    ZigZagCell c = identity_cell(J, z);
    c.target.feet[k] = J.tgt(u);
    if (k > 0)
        c.target.rights[k - 1] = J.compose(u, z.rights[k - 1]);
    if (k < z.length())
        c.target.lefts[k] = J.compose(u, z.lefts[k]);
    c.foot[k] = u;
    return c;
}

inline DecoratedZigZag push_foot(const Diagram &d, const DecoratedZigZag &x, int k, MorId u)
{
    return apply_cell(d, foot_push_cell(d.index, x.base, k, u), x);
}

struct DecoratedCell
{
    ZigZagCell rho;
    DecoratedZigZag source;
    DecoratedZigZag target;
};

inline std::vector<std::string> validate_decorated_cell(const Diagram &d, const DecoratedCell &c)
{
    auto report = validate_cell(d.index, c.rho);
    for (auto &r : validate_decorated(d, c.source))
        report.push_back("source: " + r);
    for (auto &r : validate_decorated(d, c.target))
        report.push_back("target: " + r);
    if (!report.empty())
        return report;
    if (c.rho.source != c.source.base || c.rho.target != c.target.base)
        return {"cell boundary does not match the decorated zig-zags"};
    auto pushed = apply_cell(d, c.rho, c.source);
    if (pushed.apex_objects != c.target.apex_objects)
        report.push_back("apex objects differ from the pushed-down decoration");
    for (std::size_t k = 0; k < pushed.chain.size(); ++k)
        if (pushed.chain[k] != c.target.chain[k])
            report.push_back("chain entry " + std::to_string(k) + " differs from the pushed-down decoration");
    return report;
}

/// Identity-decorated zig-zag of an element path: one roof per arrow, with
/// legs (id, u) for a forward step and (u, id) for a backward one.
inline DecoratedZigZag identity_decoration(const Diagram &d, Element start, const std::vector<ElementArrow> &path)
{
    const auto &J = d.index;
    DecoratedZigZag x = DecoratedZigZag::trivial(start.index, d.node(start.index).identity(start.object));
    Element at = start;
    for (const auto &s : path)
    {
        if (s.from != at)
            throw std::invalid_argument("identity_decoration: path is not connected");
        MorId u = s.u;
        if (s.forward)
        {
            x.base = concat(x.base, ZigZag::roof(J, J.identity(J.src(u)), u));
            x.apex_objects.push_back(s.from.object);
        }
        else
        {
            x.base = concat(x.base, ZigZag::roof(J, u, J.identity(J.src(u))));
            x.apex_objects.push_back(s.to.object);
        }
        x.chain.push_back(d.node(s.to.index).identity(s.to.object));
        at = s.to;
    }
    return x;
}

} // namespace zzc
