#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "io.hpp"

namespace zzc {

/// A built-in simplicial set: delta:n, boundary:n, horn:n:k, circle, spine:n.
inline FinSSet corpus(const std::string &name)
{
    std::vector<std::string> parts;
    std::stringstream ss(name);
    for (std::string p; std::getline(ss, p, ':');)
        parts.push_back(p);
    auto arg = [&](std::size_t k) {
        if (parts.size() <= k)
            throw SchemaError("corpus " + name + ": missing argument");
        try
        {
            std::size_t used = 0;
            int v = std::stoi(parts[k], &used);
            if (used != parts[k].size() || v < 0)
                throw std::invalid_argument(parts[k]);
            return v;
        }
        catch (const std::exception &)
        {
            throw SchemaError("corpus " + name + ": bad argument " + parts[k]);
        }
    };
    auto arity = [&](std::size_t n) {
        if (parts.size() != n + 1)
            throw SchemaError("corpus " + name + ": expected " + std::to_string(n) + " arguments");
    };
    if (parts.empty())
        throw SchemaError("empty corpus name");
    const auto &kind = parts[0];
    if (kind == "circle")
    {
        arity(0);
        return circle();
    }
    if (kind == "delta" || kind == "boundary" || kind == "spine")
    {
        arity(1);
        int n = arg(1);
        return kind == "delta" ? standard_simplex(n) : kind == "boundary" ? boundary(n) : spine(n);
    }
    if (kind == "horn")
    {
        arity(2);
        int n = arg(1), k = arg(2);
        if (k > n)
            throw SchemaError("corpus " + name + ": horn index exceeds dimension");
        return horn(n, k);
    }
    throw SchemaError("unknown corpus " + name);
}

// ---------------------------------------------------------------------------
// colim

struct ColimOptions
{
    HomBounds engine;
    std::size_t oracle_len = 3;
    bool oracle = true;
    std::optional<std::string> from, to;
};

namespace detail {

inline std::string element_name(const Diagram &d, Element e)
{
    return d.index.object_name(e.index) + "." + d.node(e.index).object_name(e.object);
}

// Class of the object named "i.a" (any member of the class).
inline int class_named(const Diagram &d, const SetColimit &objs, const std::string &name)
{
    for (const auto &c : objs.classes())
        for (auto e : c.members)
            if (element_name(d, e) == name)
                return c.id;
    throw SchemaError("no object named " + name + " (use index.object)");
}

} // namespace detail

inline json colim_report(const Diagram &d, const ColimOptions &o)
{
    auto problems = validate_diagram(d);
    if (!problems.empty())
        throw SchemaError("diagram: " + problems.front());
    ColimitModel model(d, o.engine);
    const auto &objs = model.objects();
    json objects = json::array();
    for (const auto &c : objs.classes())
    {
        json members = json::array();
        for (auto e : c.members)
            members.push_back(detail::element_name(d, e));
        objects.push_back({{"name", detail::element_name(d, c.representative())}, {"members", members}});
    }
    std::optional<OracleReport> oracle;
    if (o.oracle)
        oracle = compare_with_oracle(model, o.oracle_len);
    const int n = static_cast<int>(objs.size());
    int s0 = 0, s1 = n, t0 = 0, t1 = n;
    if (o.from)
        s0 = detail::class_named(d, objs, *o.from), s1 = s0 + 1;
    if (o.to)
        t0 = detail::class_named(d, objs, *o.to), t1 = t0 + 1;
    json homs = json::array();
    for (int s = s0; s < s1; ++s)
        for (int t = t0; t < t1; ++t)
        {
            const auto &H = model.hom(s, t);
            json reps = json::array();
            for (const auto &c : H.table().classes)
                reps.push_back(detail::describe(d, c.representative));
            json h = {{"source", objects[s]["name"]},
                      {"target", objects[t]["name"]},
                      {"classes", H.table().size()},
                      {"saturated", H.table().saturated},
                      {"enumerated", H.table().enumerated},
                      {"representatives", reps}};
            if (oracle)
            {
                const auto &c = oracle->homs[static_cast<std::size_t>(s * n + t)];
                h["oracle_classes"] = c.oracle_classes;
                h["oracle_saturated"] = c.oracle_saturated;
                h["bijective"] = c.bijective;
            }
            homs.push_back(h);
        }
    json report = {{"command", "colim"},
                   {"max_zz_len", o.engine.max_zz_len},
                   {"congruence", o.engine.congruence},
                   {"objects", objects},
                   {"homs", homs}};
    if (oracle)
    {
        report["max_len"] = o.oracle_len;
        report["mismatches"] = oracle->mismatches;
        report["counterexample"] = oracle->counterexample;
    }
    report["ok"] = !oracle || oracle->consistent();
    return report;
}

// ---------------------------------------------------------------------------
// rigidify

struct RigidifyOptions
{
    RigidBounds rigid;
    HomBounds engine;
    int p = 0;
    bool oracle = true;
    std::optional<int> from, to;
};

inline json rigidify_report(const FinSSet &X, const std::string &name, const RigidifyOptions &o)
{
    const int nv = X.count(0);
    auto vertex = [&](std::optional<int> v, const char *what) {
        if (v && (*v < 0 || *v >= nv))
            throw SchemaError(std::string(what) + " vertex out of range");
    };
    vertex(o.from, "--from");
    vertex(o.to, "--to");
    json pairs = json::array();
    bool ok = true;
    for (int a = o.from.value_or(0); a <= o.from.value_or(nv - 1); ++a)
        for (int b = o.to.value_or(0); b <= o.to.value_or(nv - 1); ++b)
        {
            auto table = rigid_hom(X, a, b, o.p, o.rigid);
            json reps = json::array();
            for (const auto &c : table.classes)
                reps.push_back(to_string(X, c.representative));
            json row = {{"from", a},
                        {"to", b},
                        {"p", o.p},
                        {"classes", table.size()},
                        {"saturated", table.saturated},
                        {"representatives", reps}};
            if (o.oracle)
            {
                auto c = compare_rigid(X, a, b, o.p, o.engine, o.rigid);
                row["engine_classes"] = c.engine_classes;
                row["engine_saturated"] = c.engine_saturated;
                row["bijection"] = c.bijection;
                bool contradiction = c.bad_cells > 0 || c.inconsistent > 0 ||
                                     (!c.bijection && c.engine_saturated && c.rigid_saturated);
                if (contradiction)
                {
                    ok = false;
                    row["counterexample"] = c.counterexample;
                }
            }
            pairs.push_back(row);
        }
    return {{"command", "rigidify"},
            {"input", name},
            {"max_beads", o.rigid.max_beads},
            {"max_bead_dim", o.rigid.max_bead_dim},
            {"max_zz_len", o.engine.max_zz_len},
            {"homs", pairs},
            {"ok", ok}};
}

// ---------------------------------------------------------------------------
// flagcat

inline json flagcat_report(int n, int p, std::optional<int> from, std::optional<int> to)
{
    auto fc = flag_category(n, p);
    const int a = from.value_or(0), b = to.value_or(n);
    if (a < 0 || a > n || b < 0 || b > n)
        throw SchemaError("flagcat: vertex out of range");
    json homs = json::array();
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            homs.push_back({{"from", i}, {"to", j}, {"count", fc->cat.hom(i, j).size()}});
    json flags = json::array();
    for (MorId m : fc->cat.hom(a, b))
        flags.push_back(to_string(fc->flags[m]));
    return {{"command", "flagcat"},
            {"n", n},
            {"p", p},
            {"objects", fc->cat.num_objects()},
            {"morphisms", fc->cat.num_morphisms()},
            {"homs", homs},
            {"from", a},
            {"to", b},
            {"flags", flags},
            {"ok", true}};
}

inline std::string flagcat_dot(int n, int p)
{
    auto fc = flag_category(n, p);
    std::ostringstream os;
    os << "digraph flags {\n  node [shape=circle];\n";
    for (int v = 0; v <= n; ++v)
        os << "  v" << v << " [label=" << detail::quote(std::to_string(v)) << "];\n";
    for (MorId m = 0; m < fc->cat.num_morphisms(); ++m)
        if (!fc->cat.is_identity(m))
            os << "  v" << fc->flags[m].i << " -> v" << fc->flags[m].j
               << " [label=" << detail::quote(to_string(fc->flags[m])) << "];\n";
    os << "}\n";
    return os.str();
}

inline std::string rigidify_dot(const json &report)
{
    std::ostringstream os;
    os << "digraph rigid {\n  node [shape=circle];\n";
    std::vector<int> seen;
    for (const auto &h : report["homs"])
        for (int v : {h["from"].get<int>(), h["to"].get<int>()})
            if (std::find(seen.begin(), seen.end(), v) == seen.end())
            {
                seen.push_back(v);
                os << "  v" << v << " [label=" << detail::quote(std::to_string(v)) << "];\n";
            }
    for (const auto &h : report["homs"])
        for (const auto &r : h["representatives"])
            os << "  v" << h["from"].get<int>() << " -> v" << h["to"].get<int>()
               << " [label=" << detail::quote(r.get<std::string>()) << "];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// check

struct CheckOptions
{
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::size_t random_diagrams = 24;
    OracleBounds bounds;
    /// Exhaustive sweep sizes (objects, morphisms) for index and node
    /// categories; none skips the sweep.
    std::optional<std::pair<int, int>> exhaustive;
};

namespace detail {

inline json property_row(const std::string &name, std::size_t checked, std::size_t failures,
                         const std::string &first)
{
    return {{"name", name}, {"checked", checked}, {"failures", failures}, {"first_failure", first}};
}

inline void add_summary(json &rows, const std::string &scope, const SweepSummary &s)
{
    rows.push_back(property_row(scope + ": zig-zag classes match the oracle", s.diagrams, s.mismatches + s.neither,
                                s.mismatches ? s.first_mismatch
                                             : (s.neither ? "an instance is neither certified nor flagged" : "")));
    const auto &names = instance_property_names();
    for (std::size_t k = 0; k < names.size(); ++k)
        rows.push_back(property_row(scope + ": " + names[k], s.checked[k], s.failures[k], s.first_failure[k]));
}

} // namespace detail

/// The property suite on the given diagrams (or, with none, on seeded random
/// ones), plus the necklace bijections and, if requested, an exhaustive
/// sweep of small diagrams.
inline json check_report(const std::vector<std::pair<std::string, Diagram>> &inputs, const CheckOptions &o)
{
    json rows = json::array();
    for (const auto &[name, d] : inputs)
    {
        auto problems = validate_diagram(d);
        rows.push_back(detail::property_row(name + ": diagram is a functor", 1, problems.size(),
                                            problems.empty() ? "" : problems.front()));
        if (!problems.empty())
            continue;
        SweepSummary s;
        s.add(check_instance(d, o.bounds, true), name);
        detail::add_summary(rows, name, s);
    }
    if (inputs.empty())
    {
        std::mt19937_64 rng(o.seed);
        std::vector<Diagram> ds;
        for (std::size_t k = 0; k < o.random_diagrams; ++k)
            ds.push_back(random_diagram(rng, 2, 4));
        auto s = sweep([&](auto &&fn) { for (auto &d : ds) fn(d); }, o.bounds, true, o.jobs);
        detail::add_summary(rows, "random", s);

        auto f = check_flag_roundtrips(3, 2, 3);
        rows.push_back(detail::property_row(f.name, f.checked, f.failures.size(),
                                            f.ok() ? "" : f.failures.front()));
        auto c = check_cell_roundtrips(3, 2);
        rows.push_back(detail::property_row(c.name, c.checked, c.failures.size(),
                                            c.ok() ? "" : c.failures.front()));
        std::size_t checked = 0, failed = 0;
        std::string first;
        for (const char *name : {"delta:2", "boundary:2", "horn:2:1", "spine:3", "circle"})
        {
            auto X = corpus(name);
            for (int p = 0; p <= 1; ++p)
                for (int a = 0; a < X.count(0); ++a)
                    for (int b = 0; b < X.count(0); ++b)
                    {
                        HomBounds hb = o.bounds.engine;
                        hb.max_zz_len = 2;
                        RigidBounds rb;
                        rb.max_beads = 3;
                        auto r = compare_rigid(X, a, b, p, hb, rb);
                        ++checked;
                        if (!r.bijection)
                        {
                            if (!failed++)
                                first = std::string(name) + " " + std::to_string(a) + "->" + std::to_string(b) +
                                        ": " + r.counterexample;
                        }
                    }
        }
        rows.push_back(detail::property_row("necklace classes match the colimit of flags", checked, failed, first));
    }
    if (o.exhaustive)
    {
        auto [objects, morphisms] = *o.exhaustive;
        auto cats = small_categories(objects, morphisms);
        auto s = sweep([&](auto &&fn) { for_each_diagram_class(cats, cats, fn); }, o.bounds, true, o.jobs);
        detail::add_summary(rows, "sweep " + std::to_string(objects) + ":" + std::to_string(morphisms), s);
    }
    bool ok = std::all_of(rows.begin(), rows.end(), [](const json &r) { return r["failures"].get<std::size_t>() == 0; });
    return {{"command", "check"}, {"seed", o.seed}, {"checks", rows}, {"ok", ok}};
}

// ---------------------------------------------------------------------------
// Text rendering: the JSON report as aligned tables, nothing added.

namespace detail {

inline std::string cell_text(const json &v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array())
    {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k)
            s += (k ? "; " : "") + cell_text(v[k]);
        return s;
    }
    return v.dump();
}

inline void table_text(std::ostream &os, const json &rows)
{
    std::vector<std::string> cols;
    for (const auto &r : rows)
        for (auto it = r.begin(); it != r.end(); ++it)
            if (std::find(cols.begin(), cols.end(), it.key()) == cols.end())
                cols.push_back(it.key());
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const auto &c : cols)
        width.push_back(c.size());
    for (const auto &r : rows)
    {
        cells.emplace_back();
        for (std::size_t k = 0; k < cols.size(); ++k)
        {
            cells.back().push_back(r.contains(cols[k]) ? cell_text(r[cols[k]]) : "");
            width[k] = std::max(width[k], cells.back().back().size());
        }
    }
    auto line = [&](const std::vector<std::string> &v) {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k)
        {
            s += v[k];
            if (k + 1 < v.size())
                s += std::string(width[k] - v[k].size() + 2, ' ');
        }
        os << "  " << s << "\n";
    };
    line(cols);
    for (const auto &r : cells)
        line(r);
}

} // namespace detail

inline std::string render_text(const json &report)
{
    std::ostringstream os;
    for (auto it = report.begin(); it != report.end(); ++it)
    {
        const auto &v = it.value();
        if (v.is_array() && !v.empty() && v[0].is_object())
        {
            os << it.key() << ":\n";
            detail::table_text(os, v);
        }
        else
            os << it.key() << ": " << detail::cell_text(v) << "\n";
    }
    return os.str();
}

} // namespace zzc
