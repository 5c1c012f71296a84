#pragma once

#include <cstddef>
#include <vector>

namespace zzc {

template <class Rep>
struct HomClass
{
    Rep representative;
    std::size_t members = 0;
};

/// Equivalence classes of one hom window, each with its canonical (least)
/// representative. `saturated` certifies that enlarging the window by one
/// step merged nothing among the reported items and produced no class
/// without a member inside the window.
template <class Rep>
struct HomClassTable
{
    std::vector<HomClass<Rep>> classes;
    bool saturated = false;
    std::size_t window = 0;
    std::size_t enumerated = 0;

    std::size_t size() const { return classes.size(); }
};

} // namespace zzc
