#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace zzc {

/// FNV-style hash for integer sequences, used to key encoded
/// zig-zags in hash maps.
struct SeqHash
{
    std::size_t operator()(const std::vector<int> &v) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (int x : v)
        {
            h ^= static_cast<std::uint32_t>(x);
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h ^ v.size());
    }
};

/// Length first, then lexicographic.
inline bool shortlex_less(const std::vector<int> &a, const std::vector<int> &b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

} // namespace zzc
