#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "fincat.hpp"

namespace zzc {

/// A functor 𝒵ⁿ → 𝒥: feet i₀…i_n, apexes j₁…j_n and legs
/// l_k : j_k → i_{k-1}, r_k : j_k → i_k. Roof k is stored at index k-1.
struct ZigZag
{
    std::vector<ObjId> feet{0};
    std::vector<ObjId> apexes;
    std::vector<MorId> lefts;
    std::vector<MorId> rights;

    int length() const { return static_cast<int>(apexes.size()); }
    ObjId first() const { return feet.front(); }
    ObjId last() const { return feet.back(); }

    static ZigZag trivial(ObjId i) { return ZigZag{{i}, {}, {}, {}}; }

    static ZigZag roof(const FinCat &J, MorId l, MorId r)
    {
        if (J.src(l) != J.src(r))
            throw std::invalid_argument("roof: legs must share their apex");
        return ZigZag{{J.tgt(l), J.tgt(r)}, {J.src(l)}, {l}, {r}};
    }

    /// The constant zig-zag u_n at i.
    static ZigZag constant(const FinCat &J, ObjId i, int n)
    {
        ZigZag z = trivial(i);
        for (int k = 0; k < n; ++k)
        {
            z.feet.push_back(i);
            z.apexes.push_back(i);
            z.lefts.push_back(J.identity(i));
            z.rights.push_back(J.identity(i));
        }
        return z;
    }

    /// Roofs [from, to) as a zig-zag of length to - from.
    ZigZag slice(int from, int to) const
    {
        ZigZag z{{feet[from]}, {}, {}, {}};
        for (int k = from; k < to; ++k)
        {
            z.feet.push_back(feet[k + 1]);
            z.apexes.push_back(apexes[k]);
            z.lefts.push_back(lefts[k]);
            z.rights.push_back(rights[k]);
        }
        return z;
    }

    friend bool operator==(const ZigZag &, const ZigZag &) = default;
    friend auto operator<=>(const ZigZag &, const ZigZag &) = default;
};

inline std::vector<std::string> validate_zigzag(const FinCat &J, const ZigZag &z)
{
    std::vector<std::string> report;
    const auto n = z.apexes.size();
    if (z.feet.size() != n + 1 || z.lefts.size() != n || z.rights.size() != n)
        return {"zig-zag tables have inconsistent lengths"};
    for (std::size_t k = 0; k < n; ++k)
    {
        auto roof = "roof " + std::to_string(k + 1);
        if (J.src(z.lefts[k]) != z.apexes[k] || J.tgt(z.lefts[k]) != z.feet[k])
            report.push_back(roof + ": left leg has wrong endpoints");
        if (J.src(z.rights[k]) != z.apexes[k] || J.tgt(z.rights[k]) != z.feet[k + 1])
            report.push_back(roof + ": right leg has wrong endpoints");
    }
    return report;
}

inline ZigZag concat(const ZigZag &a, const ZigZag &b)
{
    if (a.last() != b.first())
        throw std::invalid_argument("concat: endpoint mismatch");
    ZigZag z = a;
    z.feet.insert(z.feet.end(), b.feet.begin() + 1, b.feet.end());
    z.apexes.insert(z.apexes.end(), b.apexes.begin(), b.apexes.end());
    z.lefts.insert(z.lefts.end(), b.lefts.begin(), b.lefts.end());
    z.rights.insert(z.rights.end(), b.rights.begin(), b.rights.end());
    return z;
}

/// An order-preserving surjection [n] → [m] fixing both endpoints, as its
/// value list.
using Surjection = std::vector<int>;

inline bool is_endpoint_surjection(const Surjection &t, int n, int m)
{
    if (static_cast<int>(t.size()) != n + 1 || t.front() != 0 || t.back() != m)
        return false;
    for (int k = 1; k <= n; ++k)
        if (t[k] != t[k - 1] && t[k] != t[k - 1] + 1)
            return false;
    return true;
}

/// All endpoint surjections [n] → [m] in lexicographic order of value lists.
inline std::vector<Surjection> enumerate_surjections(int n, int m)
{
    std::vector<Surjection> out;
    if (m > n || m < 0)
        return out;
    Surjection t(n + 1, 0);
    // Choose which of the n steps go up; steps in lexicographic order of
    // values means later jumps first.
    auto rec = [&](auto &&self, int k, int level) -> void {
        if (k == n)
        {
            if (level == m)
                out.push_back(t);
            return;
        }
        int remaining = n - k;
        for (int step : {0, 1})
        {
            int next = level + step;
            if (next > m || m - next > remaining - 1)
                continue;
            t[k + 1] = next;
            self(self, k + 1, next);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// t2 ∘ t1.
inline Surjection compose_surjections(const Surjection &t2, const Surjection &t1)
{
    Surjection out;
    for (int v : t1)
        out.push_back(t2[v]);
    return out;
}

/// t1 ∨ t2 : [n1 + n2] → [m1 + m2].
inline Surjection wedge_surjections(const Surjection &t1, const Surjection &t2)
{
    Surjection out = t1;
    for (std::size_t k = 1; k < t2.size(); ++k)
        out.push_back(t1.back() + t2[k]);
    return out;
}

/// A 2-cell of ℤ𝒥: a natural transformation ρ : z ⇒ z'θ. foot[k] is
/// ρ_{i_k} : i_k → i'_{θ(k)}. apex[k-1] is ρ_{j_k}, landing in the foot
/// i'_{θ(k)} when θ collapses roof k and in the apex j'_{θ(k)} otherwise.
struct ZigZagCell
{
    ZigZag source;
    ZigZag target;
    Surjection theta{0};
    std::vector<MorId> foot;
    std::vector<MorId> apex;

    bool collapses(int k) const { return theta[k - 1] == theta[k]; }

    friend bool operator==(const ZigZagCell &, const ZigZagCell &) = default;
};

inline std::vector<std::string> validate_cell(const FinCat &J, const ZigZagCell &c)
{
    std::vector<std::string> report;
    for (auto &r : validate_zigzag(J, c.source))
        report.push_back("source: " + r);
    for (auto &r : validate_zigzag(J, c.target))
        report.push_back("target: " + r);
    if (!report.empty())
        return report;
    const int n = c.source.length(), m = c.target.length();
    if (!is_endpoint_surjection(c.theta, n, m))
        return {"theta is not an endpoint-preserving surjection"};
    if (static_cast<int>(c.foot.size()) != n + 1 || static_cast<int>(c.apex.size()) != n)
        return {"component lists have wrong length"};
    for (int k = 0; k <= n; ++k)
        if (J.src(c.foot[k]) != c.source.feet[k] || J.tgt(c.foot[k]) != c.target.feet[c.theta[k]])
            report.push_back("foot component " + std::to_string(k) + " has wrong endpoints");
    for (int k = 1; k <= n; ++k)
    {
        MorId rho = c.apex[k - 1];
        ObjId want = c.collapses(k) ? c.target.feet[c.theta[k]] : c.target.apexes[c.theta[k] - 1];
        if (J.src(rho) != c.source.apexes[k - 1] || J.tgt(rho) != want)
            report.push_back("apex component " + std::to_string(k) + " has wrong endpoints");
    }
    if (!report.empty())
        return report;
    for (int k = 1; k <= n; ++k)
    {
        MorId rho = c.apex[k - 1];
        MorId l = c.source.lefts[k - 1], r = c.source.rights[k - 1];
        MorId lt = rho, rt = rho;
        if (!c.collapses(k))
        {
            int roof = c.theta[k] - 1;
            lt = J.compose(c.target.lefts[roof], rho);
            rt = J.compose(c.target.rights[roof], rho);
        }
        if (J.compose(c.foot[k - 1], l) != lt)
            report.push_back("left naturality square fails at roof " + std::to_string(k));
        if (J.compose(c.foot[k], r) != rt)
            report.push_back("right naturality square fails at roof " + std::to_string(k));
    }
    return report;
}

inline ZigZagCell identity_cell(const FinCat &J, const ZigZag &z)
{
    ZigZagCell c{z, z, {}, {}, {}};
    for (int k = 0; k <= z.length(); ++k)
    {
        c.theta.push_back(k);
        c.foot.push_back(J.identity(z.feet[k]));
    }
    for (auto j : z.apexes)
        c.apex.push_back(J.identity(j));
    return c;
}

/// A vertical cell {i} ⇒ {i'} given by u : i → i'.
inline ZigZagCell vertical_cell(const FinCat &J, MorId u)
{
    return ZigZagCell{ZigZag::trivial(J.src(u)), ZigZag::trivial(J.tgt(u)), {0}, {u}, {}};
}

/// c2 after c1.
inline ZigZagCell vcompose_cells(const FinCat &J, const ZigZagCell &c1, const ZigZagCell &c2)
{
    if (c1.target != c2.source)
        throw std::invalid_argument("vcompose_cells: boundary mismatch");
    ZigZagCell c{c1.source, c2.target, compose_surjections(c2.theta, c1.theta), {}, {}};
    const int n = c1.source.length();
    for (int k = 0; k <= n; ++k)
        c.foot.push_back(J.compose(c2.foot[c1.theta[k]], c1.foot[k]));
    for (int k = 1; k <= n; ++k)
    {
        MorId next = c1.collapses(k) ? c2.foot[c1.theta[k]] : c2.apex[c1.theta[k] - 1];
        c.apex.push_back(J.compose(next, c1.apex[k - 1]));
    }
    return c;
}

/// c1 beside c2, sharing the vertical between them.
inline ZigZagCell hcompose_cells(const ZigZagCell &c1, const ZigZagCell &c2)
{
    if (c1.foot.back() != c2.foot.front() || c1.source.last() != c2.source.first() ||
        c1.target.last() != c2.target.first())
        throw std::invalid_argument("hcompose_cells: boundary mismatch");
    ZigZagCell c{concat(c1.source, c2.source), concat(c1.target, c2.target),
                 wedge_surjections(c1.theta, c2.theta), c1.foot, c1.apex};
    c.foot.insert(c.foot.end(), c2.foot.begin() + 1, c2.foot.end());
    c.apex.insert(c.apex.end(), c2.apex.begin(), c2.apex.end());
    return c;
}

/// Splits a cell into one generating cell per source roof: type (i) when θ
/// collapses the roof, type (ii) otherwise. A cell on a trivial zig-zag is
/// returned as its single vertical factor.
inline std::vector<ZigZagCell> factor_cell(const ZigZagCell &c)
{
    const int n = c.source.length();
    if (n == 0)
        return {c};
    std::vector<ZigZagCell> out;
    for (int k = 1; k <= n; ++k)
    {
        ZigZagCell g;
        g.source = c.source.slice(k - 1, k);
        int t = c.theta[k];
        if (c.collapses(k))
        {
            g.target = ZigZag::trivial(c.target.feet[t]);
            g.theta = {0, 0};
        }
        else
        {
            g.target = c.target.slice(t - 1, t);
            g.theta = {0, 1};
        }
        g.foot = {c.foot[k - 1], c.foot[k]};
        g.apex = {c.apex[k - 1]};
        out.push_back(std::move(g));
    }
    return out;
}

inline ZigZagCell hcompose_all(const std::vector<ZigZagCell> &cells)
{
    ZigZagCell c = cells.at(0);
    for (std::size_t k = 1; k < cells.size(); ++k)
        c = hcompose_cells(c, cells[k]);
    return c;
}

/// A vertical zig-zag of cells: cells[k] joins rows[k] and rows[k+1],
/// pointing down (rows[k] ⇒ rows[k+1]) when forward[k] and up otherwise.
struct VerticalCellZigZag
{
    std::vector<ZigZag> rows;
    std::vector<ZigZagCell> cells;
    std::vector<bool> forward;
};

inline std::vector<std::string> validate_vertical(const FinCat &J, const VerticalCellZigZag &v)
{
    std::vector<std::string> report;
    if (v.rows.size() != v.cells.size() + 1 || v.forward.size() != v.cells.size())
        return {"vertical zig-zag tables have inconsistent lengths"};
    for (std::size_t k = 0; k < v.cells.size(); ++k)
    {
        const auto &c = v.cells[k];
        const auto &from = v.forward[k] ? v.rows[k] : v.rows[k + 1];
        const auto &to = v.forward[k] ? v.rows[k + 1] : v.rows[k];
        if (c.source != from || c.target != to)
            report.push_back("cell " + std::to_string(k) + " does not join its rows");
        for (auto &r : validate_cell(J, c))
            report.push_back("cell " + std::to_string(k) + ": " + r);
    }
    return report;
}

/// The unital cell u_n ⇒ u_0 at i with identity components, pointing down
/// (u_n above u_0) when forward and up otherwise.
inline VerticalCellZigZag unital_cell(const FinCat &J, ObjId i, int n, bool forward = true)
{
    ZigZagCell c{ZigZag::constant(J, i, n), ZigZag::trivial(i), Surjection(n + 1, 0), {}, {}};
    c.foot.assign(n + 1, J.identity(i));
    c.apex.assign(n, J.identity(i));
    if (forward)
        return {{c.source, c.target}, {c}, {true}};
    return {{c.target, c.source}, {c}, {false}};
}

enum class TransposeSide
{
    Left,  // z on top, u_n at the last foot below
    Right, // u_n at the first foot on top, z below
};

namespace detail {

// Cell between two zig-zags of equal length with θ = id and the given
// components.
inline ZigZagCell straight_cell(ZigZag from, ZigZag to, std::vector<MorId> foot, std::vector<MorId> apex)
{
    ZigZagCell c{std::move(from), std::move(to), {}, std::move(foot), std::move(apex)};
    for (int k = 0; k <= c.source.length(); ++k)
        c.theta.push_back(k);
    return c;
}

inline ZigZag concat3(const ZigZag &a, const ZigZag &b, const ZigZag &c) { return concat(concat(a, b), c); }

} // namespace detail

/// The transposition cells that move z between horizontal and vertical
/// position, one backward and one forward cell per roof. For a single roof
/// this is the 3×3 diagram l, id / id, r.
inline VerticalCellZigZag transpose_cell(const FinCat &J, const ZigZag &z, TransposeSide side)
{
    const int n = z.length();
    VerticalCellZigZag v;
    auto id = [&](ObjId o) { return J.identity(o); };
    auto ids_of = [&](const ZigZag &w, std::vector<MorId> &foot, std::vector<MorId> &apex, bool skip_first) {
        for (int k = skip_first ? 1 : 0; k <= w.length(); ++k)
            foot.push_back(id(w.feet[k]));
        for (auto j : w.apexes)
            apex.push_back(id(j));
    };
    auto fill = [&](int count, MorId m, std::vector<MorId> &out) { out.insert(out.end(), count, m); };
    if (side == TransposeSide::Left)
    {
        v.rows.push_back(z);
        for (int t = 1; t <= n; ++t)
        {
            ObjId j = z.apexes[t - 1];
            MorId l = z.lefts[t - 1], r = z.rights[t - 1];
            ZigZag rest = z.slice(t, n);
            ZigZag above = v.rows.back();
            ZigZag mid = detail::concat3(ZigZag::constant(J, j, t - 1), ZigZag::roof(J, id(j), r), rest);
            ZigZag below = concat(ZigZag::constant(J, z.feet[t], t), rest);

            std::vector<MorId> foot, apex;
            fill(t, l, foot);
            fill(t - 1, l, apex);
            foot.push_back(id(z.feet[t]));
            apex.push_back(id(j));
            ids_of(rest, foot, apex, true);
            v.cells.push_back(detail::straight_cell(mid, above, foot, apex));
            v.forward.push_back(false);
            v.rows.push_back(mid);

            foot.clear();
            apex.clear();
            fill(t, r, foot);
            fill(t - 1, r, apex);
            foot.push_back(id(z.feet[t]));
            apex.push_back(r);
            ids_of(rest, foot, apex, true);
            v.cells.push_back(detail::straight_cell(mid, below, foot, apex));
            v.forward.push_back(true);
            v.rows.push_back(below);
        }
        return v;
    }
    v.rows.push_back(ZigZag::constant(J, z.first(), n));
    for (int t = 1; t <= n; ++t)
    {
        ObjId j = z.apexes[t - 1];
        MorId l = z.lefts[t - 1], r = z.rights[t - 1];
        ZigZag head = z.slice(0, t - 1);
        ZigZag above = v.rows.back();
        ZigZag mid = detail::concat3(head, ZigZag::roof(J, l, id(j)), ZigZag::constant(J, j, n - t));
        ZigZag below = concat(z.slice(0, t), ZigZag::constant(J, z.feet[t], n - t));

        std::vector<MorId> foot, apex;
        ids_of(head, foot, apex, false);
        foot.push_back(l);
        apex.push_back(l);
        fill(n - t, l, foot);
        fill(n - t, l, apex);
        v.cells.push_back(detail::straight_cell(mid, above, foot, apex));
        v.forward.push_back(false);
        v.rows.push_back(mid);

        foot.clear();
        apex.clear();
        ids_of(head, foot, apex, false);
        foot.push_back(r);
        apex.push_back(id(j));
        fill(n - t, r, foot);
        fill(n - t, r, apex);
        v.cells.push_back(detail::straight_cell(mid, below, foot, apex));
        v.forward.push_back(true);
        v.rows.push_back(below);
    }
    return v;
}

} // namespace zzc
