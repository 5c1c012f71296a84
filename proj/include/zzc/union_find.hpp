#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace zzc {

/// Disjoint-set forest with union by size and path halving.
class UnionFind
{
  public:
    UnionFind() = default;
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t add()
    {
        parent_.push_back(parent_.size());
        size_.push_back(1);
        return parent_.size() - 1;
    }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x)
        {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    std::size_t find(std::size_t x) const
    {
        while (parent_[x] != x)
            x = parent_[x];
        return x;
    }

    /// Returns true when the two elements were in different sets.
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

    std::size_t size() const { return parent_.size(); }

    /// Dense class labels: label[x] is the rank of x's class among classes
    /// ordered by their smallest member.
    std::vector<std::size_t> labels()
    {
        std::vector<std::size_t> root_label(parent_.size(), npos);
        std::vector<std::size_t> out(parent_.size());
        std::size_t next = 0;
        for (std::size_t x = 0; x < parent_.size(); ++x)
        {
            auto r = find(x);
            if (root_label[r] == npos)
                root_label[r] = next++;
            out[x] = root_label[r];
        }
        return out;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace zzc
