#pragma once

#include <zzc.hpp>

#include <string>

namespace fixtures {

inline std::string example(const std::string &name) { return std::string(ZZC_EXAMPLES_DIR) + "/" + name; }

inline zzc::Diagram load(const std::string &name)
{
    return zzc::diagram_from_json(zzc::load_json(example(name)));
}

/// a --f--> b
inline zzc::FinCat walking_arrow()
{
    zzc::FinCat::Builder b;
    auto a = b.add_object("a"), c = b.add_object("b");
    b.add_morphism(a, c, "f");
    return b.build();
}

inline zzc::FinCat point(const std::string &name = "o")
{
    zzc::FinCat::Builder b;
    b.add_object(name);
    return b.build();
}

inline zzc::FinCat discrete(int n)
{
    zzc::FinCat::Builder b;
    for (int k = 0; k < n; ++k)
        b.add_object();
    return b.build();
}

inline zzc::Functor functor(std::vector<zzc::ObjId> objects, std::vector<zzc::MorId> morphisms)
{
    zzc::Functor f;
    f.obj_map = std::move(objects);
    f.mor_map = std::move(morphisms);
    return f;
}

/// Pushout of two walking arrows a→b, c→d along b = c.
inline zzc::Diagram composable_pushout()
{
    zzc::FinCat::Builder jb;
    auto k = jb.add_object("k"), i = jb.add_object("i"), j = jb.add_object("j");
    jb.add_morphism(k, i, "l");
    jb.add_morphism(k, j, "r");
    zzc::Diagram d;
    d.index = jb.build();
    auto arrow = std::make_shared<const zzc::FinCat>(walking_arrow());
    auto pt = std::make_shared<const zzc::FinCat>(point());
    d.nodes = {pt, arrow, arrow};
    for (zzc::MorId u = 0; u < d.index.num_morphisms(); ++u)
    {
        if (d.index.is_identity(u))
            d.edges.push_back(zzc::identity_functor(d.node(d.index.src(u))));
        else if (d.index.morphism_name(u) == "l")
            d.edges.push_back(functor({1}, {arrow->identity(1)}));
        else
            d.edges.push_back(functor({0}, {arrow->identity(0)}));
    }
    return d;
}

} // namespace fixtures
