#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "colim.hpp"
#include "flags.hpp"
#include "necklace.hpp"
#include "parallel.hpp"
#include "rigid.hpp"
#include "sweep.hpp"

namespace zzc {

/// Every necklace with 1 … max_beads beads of dimension 0 … max_dim, in
/// lexicographic order of bead lists.
inline std::vector<Necklace> small_necklaces(int max_beads, int max_dim)
{
    std::vector<Necklace> out;
    for (int k = 1; k <= max_beads; ++k)
    {
        std::vector<int> beads(k, 0);
        for (;;)
        {
            out.push_back(Necklace{beads});
            int i = k - 1;
            while (i >= 0 && beads[i] == max_dim)
                beads[i--] = 0;
            if (i < 0)
                break;
            ++beads[i];
        }
    }
    return out;
}

/// merge_flags ∘ split_flag = id on flags of V_N containing J_N at the
/// bottom, and split_flag ∘ merge_flags = id on tuples of bead flags.
inline PropertyResult check_flag_roundtrips(int max_beads, int max_dim, int max_p)
{
    PropertyResult r{"split_flag and merge_flags are inverse", 0, {}};
    for (const auto &N : small_necklaces(max_beads, max_dim))
        for (int p = 0; p <= max_p; ++p)
        {
            for (const auto &U : enumerate_flags(0, N.last(), p))
            {
                if (N.joins() & ~U.levels[0])
                    continue;
                ++r.checked;
                if (merge_flags(N, split_flag(N, U)) != U)
                    r.failures.push_back("merge after split changes " + to_string(U) + " on " + to_string(N));
            }
            std::vector<std::vector<Flag>> per_bead;
            for (int b : N.beads)
                per_bead.push_back(enumerate_flags(0, b, p));
            std::vector<std::size_t> pick(N.size(), 0);
            for (;;)
            {
                std::vector<Flag> parts;
                for (int k = 0; k < N.size(); ++k)
                    parts.push_back(per_bead[k][pick[k]]);
                ++r.checked;
                if (split_flag(N, merge_flags(N, parts)) != parts)
                    r.failures.push_back("split after merge changes the bead flags on " + to_string(N));
                int k = 0;
                while (k < N.size() && ++pick[k] == per_bead[k].size())
                    pick[k++] = 0;
                if (k == N.size())
                    break;
            }
        }
    return r;
}

/// Every 2-cell of ℤΔ between the zig-zags of two necklaces.
inline std::vector<ZigZagCell> necklace_cells(const DeltaCategory &dc, const Necklace &N, const Necklace &M)
{
    std::vector<ZigZagCell> out;
    const auto &D = dc.cat;
    ZigZagCell c;
    c.source = necklace_in_delta(dc, N);
    c.target = necklace_in_delta(dc, M);
    for (auto &theta : enumerate_surjections(N.size() - 1, M.size() - 1))
    {
        c.theta = theta;
        c.foot.assign(N.size(), kNone);
        c.apex.assign(N.size() - 1, kNone);
        auto go = [&](auto &self, int k) -> void {
            if (k == N.size())
            {
                if (validate_cell(D, c).empty())
                    out.push_back(c);
                return;
            }
            for (MorId u : D.hom(N.beads[k], M.beads[theta[k]]))
            {
                c.foot[k] = u;
                if (k == 0)
                {
                    self(self, 1);
                    continue;
                }
                ObjId to = c.collapses(k) ? M.beads[theta[k]] : 0;
                for (MorId v : D.hom(0, to))
                {
                    c.apex[k - 1] = v;
                    self(self, k + 1);
                }
            }
        };
        go(go, 0);
    }
    return out;
}

/// cell_from_map and map_from_cell are inverse between bead maps with a
/// surjective bead assignment and cells of ℤΔ between necklaces.
inline PropertyResult check_cell_roundtrips(int max_beads, int max_dim)
{
    PropertyResult r{"cell_from_map and map_from_cell are inverse", 0, {}};
    auto dc = delta_category(max_dim);
    auto necklaces = small_necklaces(max_beads, max_dim);
    for (const auto &N : necklaces)
        for (const auto &M : necklaces)
        {
            if (M.size() > N.size())
                continue;
            for (const auto &f : enumerate_bead_maps(N, M, false))
            {
                if (!is_endpoint_surjection(f.bead, N.size() - 1, M.size() - 1))
                    continue;
                ++r.checked;
                auto c = cell_from_map(dc, f);
                if (map_from_cell(dc, c) != f)
                    r.failures.push_back("map_from_cell ∘ cell_from_map moves a map " + to_string(N) + " -> " +
                                         to_string(M));
            }
            for (const auto &c : necklace_cells(dc, N, M))
            {
                ++r.checked;
                if (!(cell_from_map(dc, map_from_cell(dc, c)) == c))
                    r.failures.push_back("cell_from_map ∘ map_from_cell moves a cell " + to_string(N) + " -> " +
                                         to_string(M));
            }
        }
    return r;
}

// ---------------------------------------------------------------------------
// Diagram sweeps

/// Names of the per-diagram properties, in report order.
inline const std::vector<std::string> &instance_property_names()
{
    static const std::vector<std::string> names = {
        "identity independent of representative",
        "identity-decorated zig-zags represent identities",
        "composing with an identity-decorated zig-zag preserves the class",
        "identifications paste",
        "composition independent of connecting zig-zag",
        "unital cells act trivially on classes",
        "transposition cells act trivially on classes",
        "insertions form a cocone of functors",
    };
    return names;
}

struct InstanceResult
{
    bool certified = false;
    bool bijective = false;
    bool flagged = false;
    bool consistent = true;
    int window = 0;
    std::size_t homs = 0;
    std::string mismatch;
    std::vector<PropertyResult> properties;
};

/// compare_with_oracle on windows of length 0, 1, … up to
/// bounds.engine.max_zz_len, stopping at the first certified bijection, then
/// the well-definedness and cocone properties on the window reached (at
/// least length 1).
inline InstanceResult check_instance(const Diagram &d, const OracleBounds &bounds, bool properties)
{
    InstanceResult out;
    HomBounds b = bounds.engine;
    for (int L = 0; L <= bounds.engine.max_zz_len; ++L)
    {
        b.max_zz_len = L;
        auto model = std::make_unique<ColimitModel>(d, b);
        auto r = compare_with_oracle(*model, bounds.oracle_len);
        out.window = L;
        out.homs = r.homs.size();
        out.certified = r.certified();
        out.bijective = r.bijection();
        out.flagged = r.flagged() > 0;
        out.consistent = r.consistent();
        out.mismatch = r.consistent() ? "" : r.mismatches.front() + ": " + r.counterexample;
        bool last = L == bounds.engine.max_zz_len || !r.consistent() || (r.certified() && r.bijection());
        if (last)
        {
            if (properties)
            {
                // Roofs are needed for the transposition cells to have
                // anything to act on.
                if (L == 0 && bounds.engine.max_zz_len > 0)
                {
                    b.max_zz_len = 1;
                    b.max_rounds = 0;
                    model = std::make_unique<ColimitModel>(d, b);
                }
                out.properties = check_well_definedness(*model);
                out.properties.push_back(check_cocone(*model));
            }
            break;
        }
    }
    return out;
}

struct SweepSummary
{
    std::size_t diagrams = 0;
    std::size_t homs = 0;
    std::size_t bijective = 0;
    std::size_t certified = 0;
    std::size_t flagged = 0;
    std::size_t neither = 0; // neither certified-bijective nor flagged
    std::size_t mismatches = 0;
    std::vector<std::size_t> by_window;
    std::string first_mismatch;
    std::vector<std::size_t> checked;
    std::vector<std::size_t> failures;
    std::vector<std::string> first_failure;

    SweepSummary()
        : checked(instance_property_names().size(), 0), failures(instance_property_names().size(), 0),
          first_failure(instance_property_names().size())
    {
    }

    void add(const InstanceResult &r, const std::string &tag)
    {
        ++diagrams;
        homs += r.homs;
        bijective += r.bijective;
        certified += r.certified;
        flagged += r.flagged;
        if (!(r.bijective && r.certified) && !r.flagged)
            ++neither;
        if (!r.consistent)
        {
            if (!mismatches)
                first_mismatch = tag + ": " + r.mismatch;
            ++mismatches;
        }
        if (by_window.size() <= static_cast<std::size_t>(r.window))
            by_window.resize(r.window + 1, 0);
        ++by_window[r.window];
        for (std::size_t k = 0; k < r.properties.size() && k < checked.size(); ++k)
        {
            checked[k] += r.properties[k].checked;
            if (!r.properties[k].ok() && !failures[k])
                first_failure[k] = tag + ": " + r.properties[k].failures.front();
            failures[k] += r.properties[k].failures.size();
        }
    }

    bool properties_ok() const
    {
        return std::all_of(failures.begin(), failures.end(), [](std::size_t f) { return f == 0; });
    }
};

/// Runs check_instance over diagrams produced by `source(fn)` in batches,
/// in parallel within a batch; the summary does not depend on `jobs`. Each
/// instance runs single-threaded.
template <class Source>
SweepSummary sweep(Source &&source, OracleBounds bounds, bool properties, unsigned jobs, std::size_t batch = 4096)
{
    bounds.engine.jobs = 1;
    SweepSummary summary;
    std::vector<Diagram> pending;
    std::size_t index = 0;
    auto flush = [&] {
        std::vector<InstanceResult> results(pending.size());
        parallel_chunks(pending.size(), jobs, kWorkChunks, [&](std::size_t lo, std::size_t hi, std::size_t) {
            for (std::size_t i = lo; i < hi; ++i)
                results[i] = check_instance(pending[i], bounds, properties);
        });
        for (std::size_t i = 0; i < results.size(); ++i)
            summary.add(results[i], "diagram " + std::to_string(index + i));
        index += pending.size();
        pending.clear();
    };
    source([&](const Diagram &d) {
        pending.push_back(d);
        if (pending.size() == batch)
            flush();
    });
    flush();
    return summary;
}

} // namespace zzc
