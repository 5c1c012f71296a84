// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Criteria 1-5 are run at one worker and again at eight; criterion 6
// compares the two sets of reports byte for byte.

#include <zzc.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>

using namespace zzc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome
{
    bool pass = true;
    std::string detail;
    json report;
};

std::size_t power(std::size_t base, int exp)
{
    std::size_t r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

Outcome flag_counts(unsigned jobs)
{
    Outcome out;
    out.report = json::array();
    std::size_t cases = 0, bad = 0;
    for (int n = 1; n <= 5; ++n)
    {
        auto X = standard_simplex(n);
        for (int p = 0; p <= 4; ++p)
        {
            const std::size_t expected = power(p + 2, n - 1);
            auto fc = flag_category(n, p);
            std::size_t direct = fc->cat.hom(0, n).size();

            RigidBounds rb;
            auto rigid = rigid_hom(X, 0, n, p, rb);

            auto chi = chi_diagram(X, p);
            auto objects = colim_objects(chi.diagram);
            HomBounds hb;
            hb.max_zz_len = 0;
            hb.jobs = jobs;
            int s = objects.class_of(chi.vertex_object(0), 0);
            int t = objects.class_of(chi.vertex_object(n), 0);
            auto colim = hom_classes(chi.diagram, s, t, chi_bounds(chi, hb));

            bool ok = direct == expected && rigid.size() == expected && colim.size() == expected &&
                      rigid.saturated && colim.saturated;
            ++cases;
            if (!ok)
            {
                if (!bad++)
                    out.detail = "first failure n=" + std::to_string(n) + " p=" + std::to_string(p);
            }
            out.report.push_back({{"n", n},
                                  {"p", p},
                                  {"expected", expected},
                                  {"flag_category", direct},
                                  {"rigid_hom", rigid.size()},
                                  {"rigid_saturated", rigid.saturated},
                                  {"hom_classes", colim.size()},
                                  {"hom_saturated", colim.saturated}});
        }
    }
    out.pass = bad == 0;
    out.detail = std::to_string(cases - bad) + "/" + std::to_string(cases) + " (n,p) agree with (p+2)^(n-1)" +
                 (bad ? "; " + out.detail : "");
    return out;
}

json summary_json(const SweepSummary &s)
{
    json props = json::array();
    for (std::size_t k = 0; k < s.checked.size(); ++k)
        props.push_back({{"name", instance_property_names()[k]},
                         {"checked", s.checked[k]},
                         {"failures", s.failures[k]},
                         {"first_failure", s.first_failure[k]}});
    return {{"diagrams", s.diagrams},   {"homs", s.homs},           {"bijective", s.bijective},
            {"certified", s.certified}, {"flagged", s.flagged},     {"neither", s.neither},
            {"mismatches", s.mismatches}, {"first_mismatch", s.first_mismatch}, {"by_window", s.by_window},
            {"properties", props}};
}

struct Sweeps
{
    SweepSummary exhaustive;
    SweepSummary random;
    double seconds = 0;
};

Sweeps run_sweeps(unsigned jobs)
{
    auto t0 = Clock::now();
    Sweeps out;
    OracleBounds b;
    b.engine.max_zz_len = 2;
    b.oracle_len = 3;
    auto cats = small_categories(2, 4);
    out.exhaustive = sweep([&](auto &&fn) { for_each_diagram_class(cats, cats, fn); }, b, true, jobs);

    std::mt19937_64 rng(20241);
    std::vector<Diagram> ds;
    for (int k = 0; k < 64; ++k)
        ds.push_back(random_diagram(rng, 3, 5));
    out.random = sweep([&](auto &&fn) {
        for (const auto &d : ds)
            fn(d);
    }, b, true, jobs);
    out.seconds = seconds_since(t0);
    return out;
}

Outcome colimit_theorem(const Sweeps &s)
{
    Outcome out;
    out.report = {{"exhaustive", summary_json(s.exhaustive)}, {"random", summary_json(s.random)}};
    std::size_t mismatches = s.exhaustive.mismatches + s.random.mismatches;
    std::size_t neither = s.exhaustive.neither + s.random.neither;
    out.pass = mismatches == 0 && neither == 0 && s.exhaustive.diagrams > 0 && s.random.diagrams >= 50;
    out.detail = std::to_string(s.exhaustive.diagrams) + " exhaustive + " + std::to_string(s.random.diagrams) +
                 " random diagrams; certified " + std::to_string(s.exhaustive.certified + s.random.certified) +
                 ", bijective " + std::to_string(s.exhaustive.bijective + s.random.bijective) + ", flagged " + std::to_string(s.exhaustive.flagged + s.random.flagged) + ", mismatches " +
                 std::to_string(mismatches) + ", unaccounted " + std::to_string(neither);
    if (mismatches)
        out.detail += "; " + (s.exhaustive.mismatches ? s.exhaustive.first_mismatch : s.random.first_mismatch);
    return out;
}

Outcome well_definedness(const Sweeps &s)
{
    Outcome out;
    out.report = {{"exhaustive", summary_json(s.exhaustive)}, {"random", summary_json(s.random)}};
    std::size_t checked = 0, failures = 0;
    std::string first;
    for (const auto *summary : {&s.exhaustive, &s.random})
        for (std::size_t k = 0; k < summary->checked.size(); ++k)
        {
            checked += summary->checked[k];
            failures += summary->failures[k];
            if (summary->failures[k] && first.empty())
                first = instance_property_names()[k] + ": " + summary->first_failure[k];
            if (!summary->checked[k])
            {
                out.pass = false;
                if (first.empty())
                    first = instance_property_names()[k] + " never checked";
            }
        }
    out.pass = out.pass && failures == 0;
    out.detail = std::to_string(instance_property_names().size()) + " properties, " + std::to_string(checked) +
                 " instances, " + std::to_string(failures) + " failures" + (first.empty() ? "" : "; " + first);
    return out;
}

Outcome necklace_theorem(unsigned jobs)
{
    Outcome out;
    out.report = json::array();
    std::size_t cases = 0, bad = 0;
    for (const char *name : {"delta:0", "delta:1", "delta:2", "delta:3", "boundary:2", "horn:2:1", "spine:3", "circle"})
    {
        auto X = corpus(name);
        for (int p = 0; p <= 3; ++p)
            for (int a = 0; a < X.count(0); ++a)
                for (int b = 0; b < X.count(0); ++b)
                {
                    // Zig-zags of length up to 3 match necklaces of up to 4
                    // beads; stop at the first certified bijection.
                    RigidBounds rb;
                    rb.max_beads = 4;
                    rb.max_bead_dim = 3;
                    RigidComparison r;
                    int L = 0;
                    for (; L <= 3; ++L)
                    {
                        HomBounds hb;
                        hb.max_zz_len = L;
                        hb.jobs = jobs;
                        r = compare_rigid(X, a, b, p, hb, rb);
                        if (r.bijection && r.engine_saturated && r.rigid_saturated)
                            break;
                    }
                    ++cases;
                    bool ok = r.bijection && r.bad_cells == 0 && r.inconsistent == 0;
                    if (!ok && !bad++)
                        out.detail = std::string(name) + " " + std::to_string(a) + "->" + std::to_string(b) +
                                     " p=" + std::to_string(p) + ": " + r.counterexample;
                    out.report.push_back({{"X", name},
                                          {"a", a},
                                          {"b", b},
                                          {"p", p},
                                          {"window", std::min(L, 3)},
                                          {"engine_classes", r.engine_classes},
                                          {"rigid_classes", r.rigid_classes},
                                          {"engine_saturated", r.engine_saturated},
                                          {"rigid_saturated", r.rigid_saturated},
                                          {"bad_cells", r.bad_cells},
                                          {"bijection", r.bijection}});
                }
    }
    out.pass = bad == 0;
    out.detail = std::to_string(cases - bad) + "/" + std::to_string(cases) + " homs in bijection" +
                 (bad ? "; first failure " + out.detail : "");
    return out;
}

Outcome round_trips()
{
    Outcome out;
    auto f = check_flag_roundtrips(3, 2, 3);
    auto c = check_cell_roundtrips(3, 2);
    out.report = {{{"name", f.name}, {"checked", f.checked}, {"failures", f.failures.size()}},
                  {{"name", c.name}, {"checked", c.checked}, {"failures", c.failures.size()}}};
    out.pass = f.ok() && c.ok() && f.checked > 0 && c.checked > 0;
    out.detail = "flags " + std::to_string(f.checked) + " checked, " + std::to_string(f.failures.size()) +
                 " failures; cells " + std::to_string(c.checked) + " checked, " + std::to_string(c.failures.size()) +
                 " failures";
    return out;
}

void line(int k, const Outcome &o, double sec)
{
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", sec);
    std::cout << "C" << k << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  [" << t << "]"
              << std::endl;
}

} // namespace

int main()
{
    bool all = true;
    std::vector<std::string> first_run;

    auto t0 = Clock::now();
    auto c1 = flag_counts(1);
    double s1 = seconds_since(t0);
    if (s1 > 120)
    {
        c1.pass = false;
        c1.detail += "; over the 2 minute limit";
    }
    line(1, c1, s1);

    auto sweeps = run_sweeps(1);
    auto c2 = colimit_theorem(sweeps);
    line(2, c2, sweeps.seconds);

    t0 = Clock::now();
    auto c3 = necklace_theorem(1);
    double s3 = seconds_since(t0);
    if (s3 > 300)
    {
        c3.pass = false;
        c3.detail += "; over the 5 minute limit";
    }
    line(3, c3, s3);

    auto c4 = well_definedness(sweeps);
    line(4, c4, 0);

    t0 = Clock::now();
    auto c5 = round_trips();
    line(5, c5, seconds_since(t0));

    for (const auto *o : {&c1, &c2, &c3, &c4, &c5})
    {
        all = all && o->pass;
        first_run.push_back(o->report.dump());
    }

    t0 = Clock::now();
    auto sweeps8 = run_sweeps(8);
    std::vector<std::string> second_run = {flag_counts(8).report.dump(), colimit_theorem(sweeps8).report.dump(),
                                           necklace_theorem(8).report.dump(), well_definedness(sweeps8).report.dump(),
                                           round_trips().report.dump()};
    Outcome c6;
    std::string differ;
    for (std::size_t k = 0; k < first_run.size(); ++k)
        if (first_run[k] != second_run[k])
            differ += (differ.empty() ? "" : ", ") + std::string("C") + std::to_string(k + 1);
    c6.pass = differ.empty();
    c6.detail = c6.pass ? "reports of criteria 1-5 identical at --jobs 1 and --jobs 8"
                        : "reports differ at --jobs 8 for " + differ;
    line(6, c6, seconds_since(t0));
    all = all && c6.pass;
    return all ? 0 : 1;
}
