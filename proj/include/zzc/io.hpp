#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "decor.hpp"
#include "fincat.hpp"
#include "sset.hpp"
#include "zigzag.hpp"

namespace zzc {

using json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void expect_schema(const json &doc, const std::string &schema)
{
    if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != schema)
        throw SchemaError("expected a \"" + schema + "\" document");
}

inline const json &field(const json &doc, const std::string &key)
{
    if (!doc.contains(key))
        throw SchemaError("missing field \"" + key + "\"");
    return doc[key];
}

inline std::string text(const json &v, const std::string &what)
{
    if (!v.is_string())
        throw SchemaError(what + " must be a string");
    return v.get<std::string>();
}

// "a→b" and "g∘f" keys.
inline std::pair<std::string, std::string> split_key(const std::string &key, const std::string &sep)
{
    auto at = key.find(sep);
    if (at == std::string::npos)
        throw SchemaError("key \"" + key + "\" lacks the separator \"" + sep + "\"");
    return {key.substr(0, at), key.substr(at + sep.size())};
}

} // namespace detail

inline ObjId find_object(const FinCat &c, const std::string &name)
{
    for (ObjId o = 0; o < c.num_objects(); ++o)
        if (c.object_name(o) == name)
            return o;
    throw SchemaError("unknown object \"" + name + "\"");
}

inline MorId find_morphism(const FinCat &c, const std::string &name)
{
    for (MorId m = 0; m < c.num_morphisms(); ++m)
        if (c.morphism_name(m) == name)
            return m;
    throw SchemaError("unknown morphism \"" + name + "\"");
}

inline json load_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open " + path);
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw SchemaError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// fincat/v1

/// {schema, objects:[...], homs:{"a→b":[...]}, compose:{"g∘f":"h"},
/// identity:{"a":"1a"}}. Identities may be left out of homs and compose.
inline FinCat fincat_from_json(const json &doc)
{
    detail::expect_schema(doc, "fincat/v1");
    FinCat::Builder b;
    std::map<std::string, ObjId> obj;
    std::map<std::string, MorId> mor;
    for (auto &o : detail::field(doc, "objects"))
    {
        auto name = detail::text(o, "object id");
        if (obj.count(name))
            throw SchemaError("duplicate object \"" + name + "\"");
        obj[name] = b.add_object(name);
    }
    auto object = [&](const std::string &name) {
        auto it = obj.find(name);
        if (it == obj.end())
            throw SchemaError("unknown object \"" + name + "\"");
        return it->second;
    };
    const json ids = doc.contains("identity") ? doc["identity"] : json::object();
    for (auto &[o, name] : ids.items())
        (void)object(o);
    for (auto &[name, o] : obj)
    {
        std::string idname = ids.contains(name) ? detail::text(ids[name], "identity id") : "id_" + name;
        if (mor.count(idname))
            throw SchemaError("duplicate morphism \"" + idname + "\"");
        b.rename_morphism(b.identity(o), idname);
        mor[idname] = b.identity(o);
    }
    for (auto &[key, list] : detail::field(doc, "homs").items())
    {
        auto [a, c] = detail::split_key(key, "→");
        for (auto &m : list)
        {
            auto name = detail::text(m, "morphism id");
            auto it = mor.find(name);
            if (it != mor.end())
            {
                if (it->second != b.identity(object(a)) || a != c)
                    throw SchemaError("duplicate morphism \"" + name + "\"");
                continue;
            }
            mor[name] = b.add_morphism(object(a), object(c), name);
        }
    }
    auto morphism = [&](const std::string &name) {
        auto it = mor.find(name);
        if (it == mor.end())
            throw SchemaError("unknown morphism \"" + name + "\"");
        return it->second;
    };
    if (doc.contains("compose"))
        for (auto &[key, h] : doc["compose"].items())
        {
            auto [g, f] = detail::split_key(key, "∘");
            b.set_compose(morphism(g), morphism(f), morphism(detail::text(h, "composite id")));
        }
    FinCat c;
    try
    {
        c = b.build();
    }
    catch (const std::invalid_argument &e)
    {
        throw SchemaError(e.what());
    }
    auto bad = validate_fincat(c);
    if (!bad.empty())
        throw SchemaError("not a category: " + bad.front());
    return c;
}

inline json to_json(const FinCat &c)
{
    json doc{{"schema", "fincat/v1"}};
    json objects = json::array(), homs = json::object(), compose = json::object(), identity = json::object();
    for (ObjId o = 0; o < c.num_objects(); ++o)
    {
        objects.push_back(c.object_name(o));
        identity[c.object_name(o)] = c.morphism_name(c.identity(o));
    }
    for (ObjId a = 0; a < c.num_objects(); ++a)
        for (ObjId b = 0; b < c.num_objects(); ++b)
        {
            json list = json::array();
            for (MorId m : c.hom(a, b))
                if (!c.is_identity(m))
                    list.push_back(c.morphism_name(m));
            if (!list.empty())
                homs[c.object_name(a) + "→" + c.object_name(b)] = list;
        }
    for (MorId g = 0; g < c.num_morphisms(); ++g)
        for (MorId f : c.morphisms_in(c.src(g)))
            if (!c.is_identity(g) && !c.is_identity(f))
                compose[c.morphism_name(g) + "∘" + c.morphism_name(f)] = c.morphism_name(c.compose(g, f));
    doc["objects"] = objects;
    doc["homs"] = homs;
    doc["compose"] = compose;
    doc["identity"] = identity;
    return doc;
}

// ---------------------------------------------------------------------------
// diagram/v1

/// {schema, categories:{name: fincat/v1}, index: name, nodes:{obj: name},
/// edges:{mor: {objects:{...}, morphisms:{...}}}}. Edge entries for
/// identities are implied; identity morphisms map to identities. With
/// `validate` false a document whose edges break functoriality still loads.
inline Diagram diagram_from_json(const json &doc, bool validate = true)
{
    detail::expect_schema(doc, "diagram/v1");
    std::map<std::string, std::shared_ptr<const FinCat>> cats;
    for (auto &[name, c] : detail::field(doc, "categories").items())
        cats[name] = std::make_shared<const FinCat>(fincat_from_json(c));
    auto category = [&](const json &ref) {
        auto name = detail::text(ref, "category reference");
        auto it = cats.find(name);
        if (it == cats.end())
            throw SchemaError("unknown category \"" + name + "\"");
        return it->second;
    };
    Diagram d;
    d.index = *category(detail::field(doc, "index"));
    const auto &J = d.index;
    const auto &nodes = detail::field(doc, "nodes");
    for (ObjId i = 0; i < J.num_objects(); ++i)
    {
        if (!nodes.contains(J.object_name(i)))
            throw SchemaError("no category for index object \"" + J.object_name(i) + "\"");
        d.nodes.push_back(category(nodes[J.object_name(i)]));
    }
    const json edges = doc.contains("edges") ? doc["edges"] : json::object();
    for (MorId u = 0; u < J.num_morphisms(); ++u)
    {
        const auto &A = d.node(J.src(u)), &B = d.node(J.tgt(u));
        Functor f;
        if (J.is_identity(u))
        {
            f = identity_functor(A);
            d.edges.push_back(f);
            continue;
        }
        if (!edges.contains(J.morphism_name(u)))
            throw SchemaError("no functor for index morphism \"" + J.morphism_name(u) + "\"");
        const auto &e = edges[J.morphism_name(u)];
        const auto &om = detail::field(e, "objects");
        for (ObjId o = 0; o < A.num_objects(); ++o)
        {
            if (!om.contains(A.object_name(o)))
                throw SchemaError("functor " + J.morphism_name(u) + " misses object " + A.object_name(o));
            f.obj_map.push_back(find_object(B, detail::text(om[A.object_name(o)], "object id")));
        }
        const json mm = e.contains("morphisms") ? e["morphisms"] : json::object();
        for (MorId m = 0; m < A.num_morphisms(); ++m)
        {
            if (A.is_identity(m))
                f.mor_map.push_back(B.identity(f.obj_map[A.src(m)]));
            else if (!mm.contains(A.morphism_name(m)))
                throw SchemaError("functor " + J.morphism_name(u) + " misses morphism " + A.morphism_name(m));
            else
                f.mor_map.push_back(find_morphism(B, detail::text(mm[A.morphism_name(m)], "morphism id")));
        }
        d.edges.push_back(f);
    }
    if (!validate)
        return d;
    auto bad = validate_diagram(d);
    if (!bad.empty())
        throw SchemaError("not a diagram: " + bad.front());
    return d;
}

inline json to_json(const Diagram &d)
{
    json doc{{"schema", "diagram/v1"}};
    json cats = json::object(), nodes = json::object(), edges = json::object();
    std::map<const FinCat *, std::string> names;
    cats["J"] = to_json(d.index);
    for (ObjId i = 0; i < d.index.num_objects(); ++i)
    {
        auto *c = d.nodes[i].get();
        if (!names.count(c))
        {
            names[c] = "C" + std::to_string(names.size());
            cats[names[c]] = to_json(*c);
        }
        nodes[d.index.object_name(i)] = names[c];
    }
    for (MorId u = 0; u < d.index.num_morphisms(); ++u)
    {
        if (d.index.is_identity(u))
            continue;
        const auto &A = d.node(d.index.src(u)), &B = d.node(d.index.tgt(u));
        json om = json::object(), mm = json::object();
        for (ObjId o = 0; o < A.num_objects(); ++o)
            om[A.object_name(o)] = B.object_name(d.edge(u).on_object(o));
        for (MorId m = 0; m < A.num_morphisms(); ++m)
            if (!A.is_identity(m))
                mm[A.morphism_name(m)] = B.morphism_name(d.edge(u).on_morphism(m));
        edges[d.index.morphism_name(u)] = {{"objects", om}, {"morphisms", mm}};
    }
    doc["categories"] = cats;
    doc["index"] = "J";
    doc["nodes"] = nodes;
    doc["edges"] = edges;
    return doc;
}

// ---------------------------------------------------------------------------
// sset/v1

/// {schema, simplices:[{name, dim, faces:[face, ...]}]} listed by increasing
/// dimension. A face is a simplex name or {simplex: name, sigma:[...]} for a
/// degenerate face σ*x.
inline FinSSet sset_from_json(const json &doc)
{
    detail::expect_schema(doc, "sset/v1");
    FinSSet::Builder b;
    std::map<std::string, std::pair<int, int>> ids;
    for (auto &s : detail::field(doc, "simplices"))
    {
        auto name = detail::text(detail::field(s, "name"), "simplex name");
        int k = detail::field(s, "dim").get<int>();
        if (ids.count(name))
            throw SchemaError("duplicate simplex \"" + name + "\"");
        std::vector<SimplexRef> faces;
        if (k > 0)
            for (auto &f : detail::field(s, "faces"))
            {
                std::string ref = f.is_string() ? f.get<std::string>() : detail::text(detail::field(f, "simplex"), "face");
                auto it = ids.find(ref);
                if (it == ids.end())
                    throw SchemaError("face \"" + ref + "\" of \"" + name + "\" is not defined earlier");
                auto [fk, fid] = it->second;
                Monotone sigma = f.is_string() ? identity_map(fk) : detail::field(f, "sigma").get<Monotone>();
                if (sigma.empty() || sigma.front() != 0 || sigma.back() != fk ||
                    !std::is_sorted(sigma.begin(), sigma.end()) ||
                    std::adjacent_find(sigma.begin(), sigma.end(), [](int a, int c) { return c > a + 1; }) !=
                        sigma.end())
                    throw SchemaError("face of \"" + name + "\" has a sigma that is not a degeneracy");
                faces.push_back({fk, fid, sigma});
            }
        try
        {
            ids[name] = {k, b.add(k, faces, name)};
        }
        catch (const std::invalid_argument &e)
        {
            throw SchemaError(name + ": " + e.what());
        }
    }
    FinSSet X = b.build();
    auto bad = validate_sset(X);
    if (!bad.empty())
        throw SchemaError("not a simplicial set: " + bad.front());
    return X;
}

inline json to_json(const FinSSet &X)
{
    json list = json::array();
    for (int k = 0; k <= X.dimension(); ++k)
        for (int id = 0; id < X.count(k); ++id)
        {
            json s{{"name", X.name(k, id)}, {"dim", k}};
            if (k > 0)
            {
                json faces = json::array();
                for (int i = 0; i <= k; ++i)
                {
                    const auto &f = X.face(k, id, i);
                    if (f.degenerate())
                        faces.push_back({{"simplex", X.name(f.nd_dim, f.nd_id)}, {"sigma", f.sigma}});
                    else
                        faces.push_back(X.name(f.nd_dim, f.nd_id));
                }
                s["faces"] = faces;
            }
            list.push_back(s);
        }
    return {{"schema", "sset/v1"}, {"simplices", list}};
}

// ---------------------------------------------------------------------------
// zigzag/v1 and decorated/v1

/// {schema, feet:[obj], apexes:[obj], lefts:[mor], rights:[mor]} over the
/// index category.
inline ZigZag zigzag_from_json(const FinCat &J, const json &doc)
{
    detail::expect_schema(doc, "zigzag/v1");
    ZigZag z{{}, {}, {}, {}};
    for (auto &o : detail::field(doc, "feet"))
        z.feet.push_back(find_object(J, detail::text(o, "foot")));
    for (auto &o : detail::field(doc, "apexes"))
        z.apexes.push_back(find_object(J, detail::text(o, "apex")));
    for (auto &m : detail::field(doc, "lefts"))
        z.lefts.push_back(find_morphism(J, detail::text(m, "left leg")));
    for (auto &m : detail::field(doc, "rights"))
        z.rights.push_back(find_morphism(J, detail::text(m, "right leg")));
    auto bad = validate_zigzag(J, z);
    if (!bad.empty())
        throw SchemaError("not a zig-zag: " + bad.front());
    return z;
}

inline json to_json(const FinCat &J, const ZigZag &z)
{
    json doc{{"schema", "zigzag/v1"}};
    json feet = json::array(), apexes = json::array(), lefts = json::array(), rights = json::array();
    for (auto o : z.feet)
        feet.push_back(J.object_name(o));
    for (int k = 0; k < z.length(); ++k)
    {
        apexes.push_back(J.object_name(z.apexes[k]));
        lefts.push_back(J.morphism_name(z.lefts[k]));
        rights.push_back(J.morphism_name(z.rights[k]));
    }
    doc["feet"] = feet;
    doc["apexes"] = apexes;
    doc["lefts"] = lefts;
    doc["rights"] = rights;
    return doc;
}

/// {schema, diagram: name, zigzag: zigzag/v1, apex_objects:[obj],
/// chain:[mor]}; object and morphism ids are those of the node categories.
inline DecoratedZigZag decorated_from_json(const Diagram &d, const json &doc)
{
    detail::expect_schema(doc, "decorated/v1");
    DecoratedZigZag x{zigzag_from_json(d.index, detail::field(doc, "zigzag")), {}, {}};
    const auto &apex = detail::field(doc, "apex_objects");
    const auto &chain = detail::field(doc, "chain");
    if (static_cast<int>(apex.size()) != x.length() || static_cast<int>(chain.size()) != x.length() + 1)
        throw SchemaError("decoration tables have the wrong length");
    for (int k = 0; k < x.length(); ++k)
        x.apex_objects.push_back(find_object(d.node(x.base.apexes[k]), detail::text(apex[k], "apex object")));
    for (int k = 0; k <= x.length(); ++k)
        x.chain.push_back(find_morphism(d.node(x.base.feet[k]), detail::text(chain[k], "chain morphism")));
    auto bad = validate_decorated(d, x);
    if (!bad.empty())
        throw SchemaError("not a decorated zig-zag: " + bad.front());
    return x;
}

inline json to_json(const Diagram &d, const DecoratedZigZag &x, const std::string &diagram_name = "diagram")
{
    json apex = json::array(), chain = json::array();
    for (int k = 0; k < x.length(); ++k)
        apex.push_back(d.node(x.base.apexes[k]).object_name(x.apex_objects[k]));
    for (int k = 0; k <= x.length(); ++k)
        chain.push_back(d.node(x.base.feet[k]).morphism_name(x.chain[k]));
    return {{"schema", "decorated/v1"},
            {"diagram", diagram_name},
            {"zigzag", to_json(d.index, x.base)},
            {"apex_objects", apex},
            {"chain", chain}};
}

// ---------------------------------------------------------------------------
// DOT

namespace detail {

inline std::string quote(const std::string &s)
{
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

// One zig-zag row: feet on rank `row`, apexes one rank above.
inline void dot_row(std::ostream &os, const FinCat &J, const ZigZag &z, const std::string &tag,
                    const std::vector<std::string> &foot_labels = {})
{
    os << "  subgraph " << tag << "_apexes { rank=same;";
    for (int k = 0; k < z.length(); ++k)
        os << " " << tag << "a" << k << ";";
    os << " }\n  subgraph " << tag << "_feet { rank=same;";
    for (int k = 0; k <= z.length(); ++k)
        os << " " << tag << "f" << k << ";";
    os << " }\n";
    for (int k = 0; k <= z.length(); ++k)
    {
        std::string label = J.object_name(z.feet[k]);
        if (k < static_cast<int>(foot_labels.size()))
            label += "\\n" + foot_labels[k];
        os << "  " << tag << "f" << k << " [label=" << quote(label) << "];\n";
    }
    for (int k = 0; k < z.length(); ++k)
    {
        os << "  " << tag << "a" << k << " [label=" << quote(J.object_name(z.apexes[k])) << "];\n";
        os << "  " << tag << "a" << k << " -> " << tag << "f" << k << " [label=" << quote(J.morphism_name(z.lefts[k]))
           << "];\n";
        os << "  " << tag << "a" << k << " -> " << tag << "f" << k + 1
           << " [label=" << quote(J.morphism_name(z.rights[k])) << "];\n";
    }
}

} // namespace detail

inline std::string dot_zigzag(const FinCat &J, const ZigZag &z)
{
    std::ostringstream os;
    os << "digraph zigzag {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    detail::dot_row(os, J, z, "z");
    os << "}\n";
    return os.str();
}

/// Source row above the target row, components drawn downward.
inline std::string dot_cell(const FinCat &J, const ZigZagCell &c)
{
    std::ostringstream os;
    os << "digraph cell {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    detail::dot_row(os, J, c.target, "t");
    detail::dot_row(os, J, c.source, "s");
    for (int k = 0; k <= c.source.length(); ++k)
        os << "  sf" << k << " -> tf" << c.theta[k] << " [style=dashed, constraint=false, label="
           << detail::quote(J.morphism_name(c.foot[k])) << "];\n";
    for (int k = 1; k <= c.source.length(); ++k)
    {
        std::string to = c.collapses(k) ? "tf" + std::to_string(c.theta[k]) : "ta" + std::to_string(c.theta[k] - 1);
        os << "  sa" << k - 1 << " -> " << to << " [style=dashed, constraint=false, label="
           << detail::quote(J.morphism_name(c.apex[k - 1])) << "];\n";
    }
    os << "  sf0 -> tf0 [style=invis];\n}\n";
    return os.str();
}

inline std::string dot_decorated(const Diagram &d, const DecoratedZigZag &x)
{
    std::ostringstream os;
    std::vector<std::string> labels;
    for (int k = 0; k <= x.length(); ++k)
        labels.push_back(d.node(x.base.feet[k]).morphism_name(x.chain[k]));
    os << "digraph decorated {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    detail::dot_row(os, d.index, x.base, "z", labels);
    for (int k = 0; k < x.length(); ++k)
        os << "  za" << k << " [xlabel=" << detail::quote(d.node(x.base.apexes[k]).object_name(x.apex_objects[k]))
           << "];\n";
    os << "}\n";
    return os.str();
}

/// ℰ(F) on objects: a node per (i, a), an edge per non-identity u : i → j.
inline std::string dot_element_category(const Diagram &d)
{
    std::ostringstream os;
    os << "digraph elements {\n  node [shape=box];\n";
    const auto &J = d.index;
    auto id = [&](ObjId i, ObjId a) { return detail::quote(J.object_name(i) + "." + d.node(i).object_name(a)); };
    for (ObjId i = 0; i < J.num_objects(); ++i)
        for (ObjId a = 0; a < d.node(i).num_objects(); ++a)
            os << "  " << id(i, a) << ";\n";
    for (MorId u = 0; u < J.num_morphisms(); ++u)
    {
        if (J.is_identity(u))
            continue;
        for (ObjId a = 0; a < d.node(J.src(u)).num_objects(); ++a)
            os << "  " << id(J.src(u), a) << " -> " << id(J.tgt(u), d.edge(u).on_object(a))
               << " [label=" << detail::quote(J.morphism_name(u)) << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace zzc
