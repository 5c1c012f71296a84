#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flags.hpp"
#include "hom_window.hpp"
#include "necklace.hpp"
#include "colim.hpp"
#include "objects.hpp"

namespace zzc {

/// Engine homs of colim χ_p between two vertices of X, with apexes limited
/// to vertices.
inline HomBounds chi_bounds(const ChiDiagram &chi, HomBounds b)
{
    b.apex_filter = [&chi](ObjId j) { return chi.is_vertex(j); };
    return b;
}

struct RigidComparison
{
    std::size_t engine_classes = 0;
    std::size_t rigid_classes = 0;
    bool engine_saturated = false;
    bool rigid_saturated = false;
    /// Replacement cells that failed validation.
    std::size_t bad_cells = 0;
    /// Engine zig-zags whose replacement lands in a different rigid class
    /// than the representative of their engine class.
    std::size_t inconsistent = 0;
    bool bijection = false;
    std::string counterexample;
};

/// Compares colim χ_p(a, b) computed by the engine with ℭ_p X(a, b):
/// engine classes go to rigid classes by necklace replacement, rigid
/// classes come back through their necklace zig-zags.
inline RigidComparison compare_rigid(const FinSSet &X, int a, int b, int p, const HomBounds &engine,
                                     const RigidBounds &rigid)
{
    RigidComparison out;
    ChiDiagram chi = chi_diagram(X, p);
    SetColimit objects = colim_objects(chi.diagram);
    const int s = objects.class_of(chi.vertex_object(a), 0);
    const int t = objects.class_of(chi.vertex_object(b), 0);
    HomWindow w(chi.diagram, objects, s, t, chi_bounds(chi, engine));
    RigidHom r(X, a, b, p, rigid);
    out.engine_classes = w.table().size();
    out.rigid_classes = r.table().size();
    out.engine_saturated = w.table().saturated;
    out.rigid_saturated = r.table().saturated;

    auto note = [&](const std::string &what) {
        if (out.counterexample.empty())
            out.counterexample = what;
    };
    std::vector<std::optional<int>> forward(out.engine_classes);
    for (std::size_t i = 0; i < w.items().size(); ++i)
    {
        auto x = decode(chi.diagram.index, w.items()[i]);
        auto rep = necklace_replace(X, chi, x);
        if (!validate_decorated_cell(chi.diagram, rep.epsilon).empty())
        {
            ++out.bad_cells;
            note("replacement cell invalid for " + detail::describe(chi.diagram, x));
        }
        auto cls = r.class_of(rep.pair);
        auto &slot = forward[w.label(i)];
        if (!cls)
        {
            ++out.inconsistent;
            note("replacement outside the rigid window: " + to_string(X, rep.pair));
        }
        else if (!slot)
            slot = *cls;
        else if (*slot != *cls)
        {
            ++out.inconsistent;
            note("engine class splits in the rigid hom: " + detail::describe(chi.diagram, x));
        }
    }
    std::vector<std::optional<int>> backward(out.rigid_classes);
    for (std::size_t c = 0; c < out.rigid_classes; ++c)
    {
        auto x = to_decorated(X, chi, r.table().classes[c].representative);
        backward[c] = w.class_of(x);
        if (!backward[c])
            note("rigid class outside the engine window: " + to_string(X, r.table().classes[c].representative));
    }
    out.bijection = out.engine_classes == out.rigid_classes && out.inconsistent == 0;
    for (std::size_t c = 0; out.bijection && c < out.engine_classes; ++c)
        if (!forward[c] || !backward[*forward[c]] || *backward[*forward[c]] != static_cast<int>(c))
        {
            out.bijection = false;
            note("round trip fails at engine class " + std::to_string(c));
        }
    return out;
}

} // namespace zzc
