#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fincat.hpp"
#include "hom_table.hpp"
#include "objects.hpp"
#include "parallel.hpp"
#include "union_find.hpp"

namespace zzc {

struct Generator
{
    ObjId src = 0;
    ObjId tgt = 0;
    std::string name;
};

/// A path of generators in diagrammatic order: gens[0] is applied first.
/// An empty path is the identity at src (= tgt).
struct Word
{
    ObjId src = 0;
    ObjId tgt = 0;
    std::vector<int> gens;

    std::size_t length() const { return gens.size(); }
    friend bool operator==(const Word &, const Word &) = default;
};

struct Relation
{
    Word lhs;
    Word rhs;
};

/// A finitely presented category: generating graph plus path relations.
struct FinPresCat
{
    std::vector<std::string> objects;
    std::vector<Generator> generators;
    std::vector<Relation> relations;

    int num_objects() const { return static_cast<int>(objects.size()); }
    int num_generators() const { return static_cast<int>(generators.size()); }
};

inline std::vector<std::string> validate_presentation(const FinPresCat &p)
{
    std::vector<std::string> report;
    auto check_word = [&](const Word &w, const std::string &what) {
        ObjId at = w.src;
        for (int g : w.gens)
        {
            if (g < 0 || g >= p.num_generators())
            {
                report.push_back(what + ": unknown generator");
                return;
            }
            if (p.generators[g].src != at)
                report.push_back(what + ": endpoints do not match");
            at = p.generators[g].tgt;
        }
        if (at != w.tgt)
            report.push_back(what + ": wrong target");
    };
    for (std::size_t r = 0; r < p.relations.size(); ++r)
    {
        const auto &rel = p.relations[r];
        auto tag = "relation " + std::to_string(r);
        check_word(rel.lhs, tag);
        check_word(rel.rhs, tag);
        if (rel.lhs.src != rel.rhs.src || rel.lhs.tgt != rel.rhs.tgt)
            report.push_back(tag + ": sides not parallel");
    }
    return report;
}

/// The presentation of colim F together with the bookkeeping that ties it
/// back to the diagram: object classes and the generator of each
/// non-identity morphism (i, f).
struct PresentedColimit
{
    FinPresCat presentation;
    SetColimit objects;
    std::vector<std::vector<int>> generator_of; // [i][f], kNone for identities
    std::vector<std::pair<ObjId, MorId>> origin; // per generator

    /// The one-letter (or empty) word of a morphism f of the node at i.
    Word word_of(ObjId i, MorId f, const Diagram &d) const
    {
        const auto &c = d.node(i);
        Word w{objects.class_of(i, c.src(f)), objects.class_of(i, c.tgt(f)), {}};
        if (generator_of[i][f] != kNone)
            w.gens.push_back(generator_of[i][f]);
        return w;
    }
};

inline PresentedColimit present_colimit(const Diagram &d)
{
    PresentedColimit out;
    out.objects = colim_objects(d);
    auto &p = out.presentation;
    for (const auto &cls : out.objects.classes())
    {
        auto e = cls.representative();
        p.objects.push_back(d.index.object_name(e.index) + "." + d.node(e.index).object_name(e.object));
    }
    const auto &J = d.index;
    out.generator_of.resize(J.num_objects());
    for (ObjId i = 0; i < J.num_objects(); ++i)
    {
        const auto &c = d.node(i);
        out.generator_of[i].assign(c.num_morphisms(), kNone);
        for (MorId f = 0; f < c.num_morphisms(); ++f)
        {
            if (c.is_identity(f))
                continue;
            out.generator_of[i][f] = p.num_generators();
            p.generators.push_back({out.objects.class_of(i, c.src(f)), out.objects.class_of(i, c.tgt(f)),
                                    J.object_name(i) + ":" + c.morphism_name(f)});
            out.origin.push_back({i, f});
        }
    }
    for (ObjId i = 0; i < J.num_objects(); ++i)
    {
        const auto &c = d.node(i);
        for (MorId f = 0; f < c.num_morphisms(); ++f)
        {
            if (c.is_identity(f))
                continue;
            for (MorId g : c.morphisms_out(c.tgt(f)))
            {
                if (c.is_identity(g))
                    continue;
                Word lhs{out.objects.class_of(i, c.src(f)), out.objects.class_of(i, c.tgt(g)),
                         {out.generator_of[i][f], out.generator_of[i][g]}};
                p.relations.push_back({lhs, out.word_of(i, c.compose(g, f), d)});
            }
        }
    }
    for (MorId u = 0; u < J.num_morphisms(); ++u)
    {
        if (J.is_identity(u))
            continue;
        ObjId i = J.src(u), j = J.tgt(u);
        const auto &c = d.node(i);
        for (MorId f = 0; f < c.num_morphisms(); ++f)
        {
            if (c.is_identity(f))
                continue;
            p.relations.push_back({out.word_of(i, f, d), out.word_of(j, d.edge(u).on_morphism(f), d)});
        }
    }
    return out;
}

/// The tautological presentation of a finite category: every non-identity
/// morphism is a generator and every composite is a relation.
inline PresentedColimit present_category(const FinCat &c)
{
    FinCat::Builder b;
    b.add_object("*");
    Diagram d{b.build(), {std::make_shared<const FinCat>(c)}, {identity_functor(c)}};
    return present_colimit(d);
}

namespace detail {

/// All words a → b of length ≤ L in shortlex order, plus their congruence
/// classes under relation rewriting inside the window. Words of length
/// ≤ inner form a prefix of the list; their classes under rewriting that
/// stays within length inner are kept as well.
class WordWindow
{
  public:
    WordWindow(const FinPresCat &p, ObjId a, ObjId b, std::size_t L, std::size_t budget, unsigned jobs)
        : WordWindow(p, a, b, L, L, budget, jobs)
    {
    }

    WordWindow(const FinPresCat &p, ObjId a, ObjId b, std::size_t L, std::size_t inner, std::size_t budget,
               unsigned jobs)
        : p_(p), a_(a), b_(b), wide_(p.num_generators() >= 255)
    {
        enumerate(L, budget);
        inner_size_ = size();
        for (std::size_t x = 0; x < size(); ++x)
            if (word(x).size() > inner)
            {
                inner_size_ = x;
                break;
            }
        close(jobs);
    }

    std::size_t size() const { return start_.size() - 1; }
    std::span<const int> word(std::size_t x) const
    {
        return {letters_.data() + start_[x], start_[x + 1] - start_[x]};
    }
    const std::vector<std::size_t> &labels() const { return labels_; }
    std::size_t num_classes() const { return num_classes_; }

    std::size_t inner_size() const { return inner_size_; }
    const std::vector<std::size_t> &inner_labels() const { return inner_labels_; }
    std::size_t inner_classes() const { return inner_classes_; }

    std::optional<std::size_t> index_of(const std::vector<int> &w) const
    {
        std::string k;
        for (int g : w)
            push(k, g);
        auto it = index_.find(k);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

  private:
    // Words are keyed by short byte strings, one byte per letter (two when
    // there are many generators).
    void push(std::string &k, int g) const
    {
        if (wide_)
            k.push_back(static_cast<char>(g >> 8));
        k.push_back(static_cast<char>(g & 0xff));
    }

    void enumerate(std::size_t L, std::size_t budget)
    {
        const int n = p_.num_objects();
        std::vector<std::size_t> dist(n, static_cast<std::size_t>(-1));
        std::deque<ObjId> queue{b_};
        dist[b_] = 0;
        while (!queue.empty())
        {
            ObjId o = queue.front();
            queue.pop_front();
            for (const auto &g : p_.generators)
                if (g.tgt == o && dist[g.src] == static_cast<std::size_t>(-1))
                {
                    dist[g.src] = dist[o] + 1;
                    queue.push_back(g.src);
                }
        }
        std::vector<std::vector<int>> out_of(n);
        for (int g = 0; g < p_.num_generators(); ++g)
            out_of[p_.generators[g].src].push_back(g);

        // Level-by-level extension in generator order keeps shortlex order.
        // A level holds its words of length len back to back.
        std::vector<int> level;
        std::vector<ObjId> ends{a_};
        for (std::size_t len = 0; len <= L; ++len)
        {
            std::vector<int> next;
            std::vector<ObjId> next_ends;
            for (std::size_t x = 0; x < ends.size(); ++x)
            {
                std::span<const int> w(level.data() + x * len, len);
                ObjId at = ends[x];
                if (at == b_)
                    add(w);
                if (len == L)
                    continue;
                for (int g : out_of[at])
                {
                    ObjId t = p_.generators[g].tgt;
                    if (dist[t] == static_cast<std::size_t>(-1) || len + 1 + dist[t] > L)
                        continue;
                    next.insert(next.end(), w.begin(), w.end());
                    next.push_back(g);
                    next_ends.push_back(t);
                    if (next_ends.size() + size() > budget)
                        throw BudgetExceeded("oracle word enumeration exceeded the node budget");
                }
            }
            level = std::move(next);
            ends = std::move(next_ends);
        }
    }

    void add(std::span<const int> w)
    {
        std::string k;
        for (int g : w)
            push(k, g);
        index_.emplace(std::move(k), size());
        letters_.insert(letters_.end(), w.begin(), w.end());
        start_.push_back(letters_.size());
    }

    void close(unsigned jobs)
    {
        // Index relation sides by first letter; empty sides by object.
        std::vector<std::vector<std::pair<const Word *, const Word *>>> by_first(p_.num_generators());
        std::vector<std::vector<std::pair<const Word *, const Word *>>> empty_at(p_.num_objects());
        for (const auto &r : p_.relations)
        {
            for (auto [x, y] : {std::pair{&r.lhs, &r.rhs}, std::pair{&r.rhs, &r.lhs}})
            {
                if (x->gens.empty())
                    empty_at[x->src].push_back({x, y});
                else
                    by_first[x->gens.front()].push_back({x, y});
            }
        }
        const std::size_t N = size();
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> found(kWorkChunks);
        parallel_chunks(N, jobs, kWorkChunks, [&](std::size_t lo, std::size_t hi, std::size_t chunk) {
            auto &out = found[chunk];
            std::string key;
            for (std::size_t x = lo; x < hi; ++x)
            {
                auto w = word(x);
                ObjId at = a_;
                for (std::size_t k = 0; k <= w.size(); ++k)
                {
                    for (auto [from, to] : empty_at[at])
                        try_rewrite(w, k, 0, *to, x, key, out);
                    if (k < w.size())
                    {
                        for (auto [from, to] : by_first[w[k]])
                            if (k + from->gens.size() <= w.size() &&
                                std::equal(from->gens.begin(), from->gens.end(), w.begin() + k))
                                try_rewrite(w, k, from->gens.size(), *to, x, key, out);
                        at = p_.generators[w[k]].tgt;
                    }
                }
            }
        });
        UnionFind uf(N), inner(inner_size_);
        for (auto &chunk : found)
            for (auto [x, y] : chunk)
            {
                uf.unite(x, y);
                if (x < inner_size_ && y < inner_size_)
                    inner.unite(x, y);
            }
        labels_ = uf.labels();
        inner_labels_ = inner.labels();
        auto count = [](const std::vector<std::size_t> &labels) {
            std::size_t n = 0;
            for (auto l : labels)
                n = std::max(n, l + 1);
            return n;
        };
        num_classes_ = count(labels_);
        inner_classes_ = count(inner_labels_);
    }

    void try_rewrite(std::span<const int> w, std::size_t k, std::size_t len, const Word &to, std::size_t x,
                     std::string &key, std::vector<std::pair<std::size_t, std::size_t>> &out) const
    {
        key.clear();
        for (std::size_t i = 0; i < k; ++i)
            push(key, w[i]);
        for (int g : to.gens)
            push(key, g);
        for (std::size_t i = k + len; i < w.size(); ++i)
            push(key, w[i]);
        auto it = index_.find(key);
        if (it != index_.end() && it->second != x)
            out.push_back({x, it->second});
    }

    const FinPresCat &p_;
    ObjId a_, b_;
    bool wide_;
    std::vector<int> letters_;
    std::vector<std::size_t> start_{0};
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::size_t> labels_;
    std::size_t num_classes_ = 0;
    std::size_t inner_size_ = 0;
    std::vector<std::size_t> inner_labels_;
    std::size_t inner_classes_ = 0;
};

} // namespace detail

struct OracleOptions
{
    std::size_t budget = default_budget();
    unsigned jobs = 1;
};

/// Bounded word-problem solver for one hom of a presentation. Classes are
/// ordered by their shortlex-least word, which is the representative.
class OracleHom
{
  public:
    OracleHom(const FinPresCat &p, ObjId a, ObjId b, std::size_t max_len, OracleOptions opt = {})
        : a_(a), b_(b), window_(p, a, b, max_len + 1, max_len, opt.budget, opt.jobs)
    {
        const auto &labels = window_.inner_labels();
        table_.window = max_len;
        table_.enumerated = window_.inner_size();
        table_.classes.resize(window_.inner_classes());
        std::vector<bool> seen(window_.inner_classes(), false);
        for (std::size_t x = 0; x < window_.inner_size(); ++x)
        {
            auto l = labels[x];
            if (!seen[l])
            {
                seen[l] = true;
                auto w = window_.word(x);
                table_.classes[l].representative = Word{a, b, {w.begin(), w.end()}};
            }
            ++table_.classes[l].members;
        }
        table_.saturated = certify();
    }

    const HomClassTable<Word> &table() const { return table_; }
    std::size_t num_words() const { return window_.inner_size(); }
    std::span<const int> word(std::size_t x) const { return window_.word(x); }
    std::size_t label(std::size_t x) const { return window_.inner_labels()[x]; }

    /// Class index of a word in the window, or nullopt when it is longer
    /// than the bound.
    std::optional<int> class_of(const std::vector<int> &gens) const
    {
        auto x = window_.index_of(gens);
        if (!x || *x >= window_.inner_size())
            return std::nullopt;
        return static_cast<int>(window_.inner_labels()[*x]);
    }

  private:
    // Saturated iff the window one step larger merges no two classes of this
    // window and has no class without a word of length ≤ max_len.
    bool certify() const
    {
        const auto &big = window_.labels();
        std::vector<std::size_t> image(window_.inner_classes(), UnionFind::npos);
        std::vector<bool> hit(window_.num_classes(), false);
        for (std::size_t x = 0; x < window_.inner_size(); ++x)
        {
            auto cl = big[x];
            hit[cl] = true;
            auto &img = image[window_.inner_labels()[x]];
            if (img == UnionFind::npos)
                img = cl;
            else if (img != cl)
                return false;
        }
        std::vector<std::size_t> seen(window_.num_classes(), 0);
        for (auto img : image)
            if (seen[img]++)
                return false;
        return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
    }

    ObjId a_, b_;
    detail::WordWindow window_;
    HomClassTable<Word> table_;
};

inline HomClassTable<Word> oracle_hom(const FinPresCat &p, ObjId a, ObjId b, std::size_t max_len,
                                      OracleOptions opt = {})
{
    return OracleHom(p, a, b, max_len, opt).table();
}

inline std::string to_string(const Word &w, const FinPresCat &p)
{
    if (w.gens.empty())
        return "id_" + p.objects[w.src];
    std::string s;
    for (std::size_t k = 0; k < w.gens.size(); ++k)
    {
        if (k)
            s += " ; ";
        s += p.generators[w.gens[k]].name;
    }
    return s;
}

} // namespace zzc
