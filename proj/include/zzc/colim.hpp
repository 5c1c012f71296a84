#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decor.hpp"
#include "hom_window.hpp"
#include "objects.hpp"
#include "presentation.hpp"

namespace zzc {

/// A hom class of the colimit: class `index` of hom(source, target).
struct ClassRef
{
    int source = 0;
    int target = 0;
    int index = 0;

    friend auto operator<=>(const ClassRef &, const ClassRef &) = default;
};

/// x ⋄ p ⋄ y for an element path p from the target of x to the source of y.
/// Leading forward steps are pushed into the last foot of x and trailing
/// backward steps into the first foot of y; the rest becomes identity roofs,
/// a backward step followed by a forward one sharing a single roof.
inline DecoratedZigZag join(const Diagram &d, DecoratedZigZag x, const std::vector<ElementStep> &path,
                            DecoratedZigZag y)
{
    const auto &J = d.index;
    std::size_t lo = 0, hi = path.size();
    while (lo < hi && path[lo].forward)
        x = push_foot(d, x, x.length(), path[lo++].u);
    while (hi > lo && !path[hi - 1].forward)
        y = push_foot(d, y, 0, path[--hi].u);
    Element at = x.target(d);
    DecoratedZigZag mid = DecoratedZigZag::trivial(at.index, d.node(at.index).identity(at.object));
    for (std::size_t k = lo; k < hi; ++k)
    {
        const auto &s = path[k];
        if (!s.forward && k + 1 < hi && path[k + 1].forward)
        {
            const auto &t = path[k + 1];
            mid.base = concat(mid.base, ZigZag::roof(J, s.u, t.u));
            mid.apex_objects.push_back(s.to.object);
            mid.chain.push_back(d.node(t.to.index).identity(t.to.object));
            ++k;
            continue;
        }
        auto step = identity_decoration(d, s.from, {s});
        mid = compose_decorated(d, mid, step);
    }
    return compose_decorated(d, compose_decorated(d, x, mid), y);
}

/// The explicit colimit category, with hom windows computed on demand.
/// Reads are safe from several threads.
class ColimitModel
{
  public:
    ColimitModel(Diagram d, HomBounds bounds) : d_(std::move(d)), objects_(colim_objects(d_)), bounds_(std::move(bounds))
    {
    }
    ColimitModel(const ColimitModel &) = delete;
    ColimitModel &operator=(const ColimitModel &) = delete;

    const Diagram &diagram() const { return d_; }
    const SetColimit &objects() const { return objects_; }
    const HomBounds &bounds() const { return bounds_; }

    const HomWindow &hom(int s, int t) const
    {
        std::lock_guard lock(mutex_);
        auto &slot = windows_[{s, t}];
        if (!slot)
        {
            if (!small_)
            {
                small_ = std::make_unique<ZigZagWindow>(d_, objects_, bounds_, bounds_.max_zz_len);
                if (bounds_.max_rounds > 0)
                    big_ = std::make_unique<ZigZagWindow>(d_, objects_, bounds_, bounds_.max_zz_len + 1);
            }
            slot = std::make_unique<HomWindow>(*small_, s, t, big_.get());
        }
        return *slot;
    }

    /// The window all homs are read from.
    const ZigZagWindow &window() const
    {
        hom(0, 0);
        return *small_;
    }

    const DecoratedZigZag &representative(ClassRef c) const
    {
        return hom(c.source, c.target).table().classes.at(c.index).representative;
    }

    std::optional<ClassRef> classify(const DecoratedZigZag &x) const
    {
        int s = objects_.class_of(x.source(d_)), t = objects_.class_of(x.target(d_));
        auto c = hom(s, t).class_of(x);
        if (!c)
            return std::nullopt;
        return ClassRef{s, t, *c};
    }

    DecoratedZigZag identity_at(Element e) const
    {
        return DecoratedZigZag::trivial(e.index, d_.node(e.index).identity(e.object));
    }

    std::optional<ClassRef> identity_class(int s) const
    {
        return classify(identity_at(objects_.classes().at(s).representative()));
    }

    /// x then y through the least element path between their endpoints.
    DecoratedZigZag composite(const DecoratedZigZag &x, const DecoratedZigZag &y) const
    {
        auto path = element_path(d_, x.target(d_), y.source(d_));
        if (!path)
            throw std::invalid_argument("composite: endpoints lie in different object classes");
        return join(d_, x, *path, y);
    }

    /// Class of c2 ∘ c1, or nullopt when the composite leaves the window.
    std::optional<ClassRef> compose_classes(ClassRef c1, ClassRef c2) const
    {
        if (c1.target != c2.source)
            throw std::invalid_argument("compose_classes: classes are not composable");
        return classify(composite(representative(c1), representative(c2)));
    }

  private:
    Diagram d_;
    SetColimit objects_;
    HomBounds bounds_;
    mutable std::mutex mutex_;
    mutable std::unique_ptr<ZigZagWindow> small_, big_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<HomWindow>> windows_;
};

struct OracleBounds
{
    HomBounds engine;
    std::size_t oracle_len = 3;
};

struct HomComparison
{
    int source = 0;
    int target = 0;
    std::size_t engine_classes = 0;
    std::size_t oracle_classes = 0;
    bool engine_saturated = false;
    bool oracle_saturated = false;
    bool bijective = false;

    bool certified() const { return engine_saturated && oracle_saturated; }
};

struct OracleReport
{
    std::vector<HomComparison> homs;
    std::vector<std::string> mismatches;
    std::string counterexample;

    bool consistent() const { return mismatches.empty(); }
    bool bijection() const
    {
        return consistent() && std::all_of(homs.begin(), homs.end(), [](auto &h) { return h.bijective; });
    }
    bool certified() const
    {
        return std::all_of(homs.begin(), homs.end(), [](auto &h) { return h.certified(); });
    }
    /// Homs reported without a saturation certificate on one side or both.
    std::size_t flagged() const
    {
        return static_cast<std::size_t>(
            std::count_if(homs.begin(), homs.end(), [](auto &h) { return !h.certified(); }));
    }
};

/// The word of a decorated zig-zag: its chain entries as generators.
inline Word word_of(const Diagram &d, const PresentedColimit &p, const DecoratedZigZag &x)
{
    Word w{p.objects.class_of(x.source(d)), p.objects.class_of(x.target(d)), {}};
    for (int k = 0; k <= x.length(); ++k)
    {
        int g = p.generator_of[x.base.feet[k]][x.chain[k]];
        if (g != kNone)
            w.gens.push_back(g);
    }
    return w;
}

/// A decorated zig-zag for a word: its letters joined by element paths.
inline DecoratedZigZag decorated_of(const ColimitModel &m, const PresentedColimit &p, const Word &w)
{
    if (w.gens.empty())
        return m.identity_at(m.objects().classes().at(w.src).representative());
    auto letter = [&](int g) {
        auto [i, f] = p.origin[g];
        return DecoratedZigZag::trivial(i, f);
    };
    DecoratedZigZag x = letter(w.gens[0]);
    for (std::size_t k = 1; k < w.gens.size(); ++k)
        x = m.composite(x, letter(w.gens[k]));
    return x;
}

namespace detail {

inline std::string describe(const Diagram &d, const DecoratedZigZag &x)
{
    std::string s = "(" + d.index.object_name(x.base.first()) + ") " +
                    d.node(x.base.first()).morphism_name(x.chain[0]);
    for (int k = 0; k < x.length(); ++k)
    {
        s += " <" + d.index.morphism_name(x.base.lefts[k]) + " [" +
             d.node(x.base.apexes[k]).object_name(x.apex_objects[k]) + "] " +
             d.index.morphism_name(x.base.rights[k]) + "> ";
        s += d.node(x.base.feet[k + 1]).morphism_name(x.chain[k + 1]);
    }
    return s;
}

} // namespace detail

/// Compares the zig-zag model with the presentation oracle on every hom of
/// the bounded window. Mismatches are contradictions (the two maps are not
/// well defined or not mutually inverse where defined); a hom whose windows
/// are not both saturated may be non-bijective without being a mismatch.
inline OracleReport compare_with_oracle(const ColimitModel &model, std::size_t oracle_len)
{
    OracleReport report;
    const auto &d = model.diagram();
    const auto &engine = model.bounds();
    auto pres = present_colimit(d);
    const int nobj = static_cast<int>(model.objects().size());
    // Each window computes part of the true relation, so one side separating
    // what the other identifies is a contradiction only when the separating
    // side is saturated. Each kind of contradiction is reported once per hom.
    std::vector<std::string> reported;
    auto fail = [&](std::string what, const std::string &example) {
        if (std::find(reported.begin(), reported.end(), what) != reported.end())
            return;
        reported.push_back(what);
        if (report.mismatches.empty())
            report.counterexample = example;
        report.mismatches.push_back(std::move(what));
    };
    for (int s = 0; s < nobj; ++s)
        for (int t = 0; t < nobj; ++t)
        {
            const auto &E = model.hom(s, t);
            OracleHom O(pres.presentation, s, t, oracle_len, {engine.budget, engine.jobs});
            HomComparison h{s, t, E.table().size(), O.table().size(), E.table().saturated, O.table().saturated,
                            false};
            auto tag = "hom(" + pres.presentation.objects[s] + ", " + pres.presentation.objects[t] + ")";

            std::vector<std::optional<std::size_t>> e_to_o(h.engine_classes), o_to_e(h.oracle_classes);
            std::vector<bool> e_seen(h.engine_classes, false), o_seen(h.oracle_classes, false);
            bool total = true;
            for (std::size_t x = 0; x < E.items().size(); ++x)
            {
                auto item = decode(d.index, E.items()[x]);
                auto cls = E.label(x);
                auto o = O.class_of(word_of(d, pres, item).gens);
                if (!e_seen[cls])
                {
                    e_seen[cls] = true;
                    e_to_o[cls] = o ? std::optional<std::size_t>(*o) : std::nullopt;
                }
                else if (o && e_to_o[cls] && *e_to_o[cls] != static_cast<std::size_t>(*o))
                {
                    total = false;
                    if (h.oracle_saturated)
                        fail(tag + ": engine identifies zig-zags whose words the oracle separates",
                             detail::describe(d, item) + "  vs  " +
                                 detail::describe(d, E.table().classes[cls].representative));
                }
                else if (o && !e_to_o[cls])
                    e_to_o[cls] = static_cast<std::size_t>(*o);
            }
            for (std::size_t w = 0; w < O.num_words(); ++w)
            {
                auto letters = O.word(w);
                Word word{s, t, {letters.begin(), letters.end()}};
                auto cls = O.label(w);
                auto x = model.hom(s, t).class_of(decorated_of(model, pres, word));
                if (!o_seen[cls])
                {
                    o_seen[cls] = true;
                    o_to_e[cls] = x ? std::optional<std::size_t>(*x) : std::nullopt;
                }
                else if (x && o_to_e[cls] && *o_to_e[cls] != static_cast<std::size_t>(*x))
                {
                    total = false;
                    if (h.engine_saturated)
                        fail(tag + ": oracle identifies words whose zig-zags the engine separates",
                             to_string(word, pres.presentation) + "  vs  " +
                                 to_string(O.table().classes[cls].representative, pres.presentation));
                }
                else if (x && !o_to_e[cls])
                    o_to_e[cls] = static_cast<std::size_t>(*x);
            }
            for (std::size_t c = 0; c < h.engine_classes; ++c)
            {
                if (!e_to_o[c])
                {
                    total = false;
                    continue;
                }
                auto back = o_to_e[*e_to_o[c]];
                if (!back || *back != c)
                    total = false;
                if (back && *back != c && h.engine_saturated)
                    fail(tag + ": engine class does not return to itself through the oracle",
                         detail::describe(d, E.table().classes[c].representative));
            }
            for (std::size_t c = 0; c < h.oracle_classes; ++c)
            {
                if (!o_to_e[c])
                {
                    total = false;
                    continue;
                }
                auto back = e_to_o[*o_to_e[c]];
                if (!back || *back != c)
                    total = false;
                if (back && *back != c && h.oracle_saturated)
                    fail(tag + ": oracle class does not return to itself through the engine",
                         to_string(O.table().classes[c].representative, pres.presentation));
            }
            h.bijective = total && h.engine_classes == h.oracle_classes;
            if (h.certified() && !h.bijective)
                fail(tag + ": both windows saturated but the class sets differ (" +
                         std::to_string(h.engine_classes) + " vs " + std::to_string(h.oracle_classes) + ")",
                     tag);
            report.homs.push_back(h);
        }
    return report;
}

inline OracleReport compare_with_oracle(const Diagram &d, const OracleBounds &bounds)
{
    ColimitModel model(d, bounds.engine);
    return compare_with_oracle(model, bounds.oracle_len);
}

/// compare_with_oracle with engine windows of length 0, 1, … up to
/// bounds.engine.max_zz_len, stopping at the first window that is certified
/// and bijective. `used` receives the length of the window reported.
inline OracleReport compare_escalating(const Diagram &d, const OracleBounds &bounds, int *used = nullptr)
{
    OracleBounds b = bounds;
    OracleReport r;
    for (int L = 0; L <= bounds.engine.max_zz_len; ++L)
    {
        b.engine.max_zz_len = L;
        r = compare_with_oracle(d, b);
        if (used)
            *used = L;
        if (!r.consistent() || (r.certified() && r.bijection()))
            break;
    }
    return r;
}

/// Outcome of one property check: how many instances were checked and the
/// failures found.
struct PropertyResult
{
    std::string name;
    std::size_t checked = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

/// The well-definedness properties of identities and composition, checked on
/// every instance that stays inside the window.
inline std::vector<PropertyResult> check_well_definedness(const ColimitModel &m, std::size_t member_cap = 4)
{
    const auto &d = m.diagram();
    const auto &objs = m.objects();
    const int nobj = static_cast<int>(objs.size());
    std::vector<PropertyResult> out(7);
    out[0].name = "identity independent of representative";
    out[1].name = "identity-decorated zig-zags represent identities";
    out[2].name = "composing with an identity-decorated zig-zag preserves the class";
    out[3].name = "identifications paste";
    out[4].name = "composition independent of connecting zig-zag";
    out[5].name = "unital cells act trivially on classes";
    out[6].name = "transposition cells act trivially on classes";

    auto same = [&](PropertyResult &r, std::optional<ClassRef> a, std::optional<ClassRef> b, const std::string &why) {
        if (!a || !b)
            return;
        ++r.checked;
        if (*a != *b)
            r.failures.push_back(why);
    };

    for (int s = 0; s < nobj; ++s)
    {
        auto id = m.identity_class(s);
        const auto &members = objs.classes()[s].members;
        for (auto e : members)
        {
            same(out[0], id, m.classify(m.identity_at(e)), "identity at a member differs");
            for (auto e2 : members)
            {
                auto path = element_path(d, e, e2);
                same(out[1], id, m.classify(identity_decoration(d, e, *path)), "element path is not an identity");
            }
        }
        const auto &H = m.hom(s, s);
        for (std::size_t x = 0; x < H.items().size(); ++x)
        {
            auto item = decode(d.index, H.items()[x]);
            bool identities = true;
            for (int k = 0; k <= item.length(); ++k)
                identities = identities && d.node(item.base.feet[k]).is_identity(item.chain[k]);
            if (identities)
                same(out[1], id, ClassRef{s, s, static_cast<int>(H.label(x))}, "identity chain not an identity");
        }
    }

    for (int s = 0; s < nobj; ++s)
        for (int t = 0; t < nobj; ++t)
        {
            const auto &H = m.hom(s, t);
            for (std::size_t c = 0; c < H.table().size(); ++c)
            {
                ClassRef ref{s, t, static_cast<int>(c)};
                const auto &x = H.table().classes[c].representative;
                for (auto e : objs.classes()[t].members)
                {
                    auto path = element_path(d, x.target(d), e);
                    auto tail = identity_decoration(d, x.target(d), *path);
                    same(out[2], ref, m.classify(compose_decorated(d, x, tail)), "right whiskering changed the class");
                }
                for (auto e : objs.classes()[s].members)
                {
                    auto path = element_path(d, e, x.source(d));
                    auto head = identity_decoration(d, e, *path);
                    same(out[2], ref, m.classify(compose_decorated(d, head, x)), "left whiskering changed the class");
                }
            }
        }

    // Pasting and independence of the connecting zig-zag: members of the
    // same classes compose to the same class, through the least path and
    // through the least path with a detour.
    for (int s = 0; s < nobj; ++s)
        for (int t = 0; t < nobj; ++t)
            for (int u = 0; u < nobj; ++u)
            {
                const auto &A = m.hom(s, t), &B = m.hom(t, u);
                auto sample = [&](const HomWindow &H) {
                    std::map<std::size_t, std::vector<DecoratedZigZag>> by_class;
                    for (std::size_t x = 0; x < H.items().size(); ++x)
                    {
                        auto &v = by_class[H.label(x)];
                        if (v.size() < member_cap)
                            v.push_back(decode(d.index, H.items()[x]));
                    }
                    return by_class;
                };
                auto sa = sample(A), sb = sample(B);
                for (auto &[ca, xs] : sa)
                    for (auto &[cb, ys] : sb)
                    {
                        auto first = m.classify(m.composite(xs.front(), ys.front()));
                        for (auto &x : xs)
                            for (auto &y : ys)
                            {
                                same(out[3], first, m.classify(m.composite(x, y)), "composite depends on representatives");
                                auto path = *element_path(d, x.target(d), y.source(d));
                                Element at = x.target(d);
                                for (MorId v : d.index.morphisms_out(at.index))
                                {
                                    if (d.index.is_identity(v))
                                        continue;
                                    Element there{d.index.tgt(v), push_object(d, v, at.object)};
                                    std::vector<ElementStep> detour{{v, at, there, true}, {v, there, at, false}};
                                    detour.insert(detour.end(), path.begin(), path.end());
                                    same(out[4], first, m.classify(join(d, x, detour, y)),
                                         "composite depends on the connecting zig-zag");
                                    break;
                                }
                            }
                    }
            }

    // Unital cells: an identity-decorated constant zig-zag is the identity.
    for (int s = 0; s < nobj; ++s)
        for (auto e : objs.classes()[s].members)
            for (int n = 0; n <= m.bounds().max_zz_len; ++n)
            {
                auto v = unital_cell(d.index, e.index, n);
                DecoratedZigZag x{v.rows[0], std::vector<ObjId>(n, e.object), {}};
                x.chain.assign(n + 1, d.node(e.index).identity(e.object));
                auto y = apply_cell(d, v.cells[0], x);
                same(out[5], m.classify(x), m.classify(y), "unital cell changed the class");
                same(out[5], m.identity_class(s), m.classify(y), "unital image is not the identity");
            }

    // Transpositions: for every base in the window and each middle row of
    // its transposition cells, both images of a decoration of that row lie
    // in one class.
    std::map<ZigZag, std::vector<DecoratedZigZag>> by_base;
    for (const auto &code : m.window().items())
    {
        auto x = decode(d.index, code);
        by_base[x.base].push_back(std::move(x));
    }
    for (const auto &[base, items] : by_base)
    {
        if (base.length() == 0)
            continue;
        for (auto side : {TransposeSide::Left, TransposeSide::Right})
        {
            auto v = transpose_cell(d.index, base, side);
            for (std::size_t k = 0; k + 1 < v.cells.size(); k += 2)
            {
                auto it = by_base.find(v.rows[k + 1]);
                if (it == by_base.end())
                    continue;
                for (const auto &x : it->second)
                    same(out[6], m.classify(apply_cell(d, v.cells[k], x)),
                         m.classify(apply_cell(d, v.cells[k + 1], x)), "transposition images differ");
            }
        }
    }
    return out;
}

/// The insertions φ_i : 𝒞_i → colim F form a cocone and are functors.
inline PropertyResult check_cocone(const ColimitModel &m)
{
    PropertyResult r{"insertions form a cocone of functors", 0, {}};
    const auto &d = m.diagram();
    const auto &J = d.index;
    auto phi = [&](ObjId i, MorId f) { return m.classify(DecoratedZigZag::trivial(i, f)); };
    for (MorId u = 0; u < J.num_morphisms(); ++u)
    {
        ObjId i = J.src(u), j = J.tgt(u);
        const auto &c = d.node(i);
        for (ObjId a = 0; a < c.num_objects(); ++a)
        {
            ++r.checked;
            if (m.objects().class_of(i, a) != m.objects().class_of(j, push_object(d, u, a)))
                r.failures.push_back("object triangle fails at " + J.morphism_name(u));
        }
        for (MorId f = 0; f < c.num_morphisms(); ++f)
        {
            auto x = phi(i, f), y = phi(j, push_morphism(d, u, f));
            if (!x || !y)
                continue;
            ++r.checked;
            if (*x != *y)
                r.failures.push_back("morphism triangle fails at " + J.morphism_name(u) + " on " +
                                     c.morphism_name(f));
        }
    }
    for (ObjId i = 0; i < J.num_objects(); ++i)
    {
        const auto &c = d.node(i);
        for (ObjId a = 0; a < c.num_objects(); ++a)
        {
            auto x = phi(i, c.identity(a));
            auto id = m.identity_class(m.objects().class_of(i, a));
            if (x && id)
            {
                ++r.checked;
                if (*x != *id)
                    r.failures.push_back("identity not preserved in " + J.object_name(i));
            }
        }
        for (MorId f = 0; f < c.num_morphisms(); ++f)
            for (MorId g : c.morphisms_out(c.tgt(f)))
            {
                auto xf = phi(i, f), xg = phi(i, g), xgf = phi(i, c.compose(g, f));
                if (!xf || !xg || !xgf)
                    continue;
                auto comp = m.compose_classes(*xf, *xg);
                if (!comp)
                    continue;
                ++r.checked;
                if (*comp != *xgf)
                    r.failures.push_back("composition not preserved in " + J.object_name(i));
            }
    }
    return r;
}

} // namespace zzc
