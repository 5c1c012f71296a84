// zzc: colimits of finite diagrams of categories and the rigidification of
// finite simplicial sets, from the command line.
//
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 bad usage or
// input document, 3 node budget exceeded.

#include <CLI11.hpp>

#include <zzc/report.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit
{
    kOk = 0,
    kFailed = 1,
    kUsage = 2,
    kBudget = 3,
};

struct Config
{
    std::vector<std::string> inputs;
    std::string corpus;
    int p = 0;
    std::optional<std::string> from, to;
    std::optional<int> max_zz_len;
    int max_beads = 3;
    int max_bead_dim = -1;
    std::size_t max_len = 3;
    std::string format = "json";
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool oracle = true;
    bool plain_cells = false;
    std::optional<std::string> exhaustive;
};

std::optional<int> vertex_arg(const std::optional<std::string> &s, const char *flag)
{
    if (!s)
        return std::nullopt;
    try
    {
        std::size_t used = 0;
        int v = std::stoi(*s, &used);
        if (used == s->size())
            return v;
    }
    catch (const std::exception &)
    {
    }
    throw zzc::SchemaError(std::string(flag) + " expects a vertex number");
}

zzc::HomBounds engine_bounds(const Config &c, int default_len)
{
    zzc::HomBounds b;
    b.max_zz_len = c.max_zz_len.value_or(default_len);
    b.jobs = c.jobs;
    b.congruence = !c.plain_cells;
    return b;
}

int emit(const zzc::json &report, const std::string &format, const std::string &dot)
{
    if (format == "json")
        std::cout << report.dump(2) << "\n";
    else if (format == "text")
        std::cout << zzc::render_text(report);
    else
    {
        if (dot.empty())
            throw zzc::SchemaError("this command has no DOT output");
        std::cout << dot;
    }
    return report["ok"].get<bool>() ? kOk : kFailed;
}

zzc::Diagram load_diagram(const std::string &path, bool validate = true)
{
    return zzc::diagram_from_json(zzc::load_json(path), validate);
}

int run_colim(const Config &c)
{
    if (c.inputs.size() != 1)
        throw zzc::SchemaError("colim needs exactly one --input diagram");
    auto d = load_diagram(c.inputs[0]);
    zzc::ColimOptions o;
    o.engine = engine_bounds(c, 2);
    o.oracle_len = c.max_len;
    o.oracle = c.oracle;
    o.from = c.from;
    o.to = c.to;
    auto report = zzc::colim_report(d, o);
    return emit(report, c.format, c.format == "dot" ? zzc::dot_element_category(d) : "");
}

int run_rigidify(const Config &c)
{
    std::string name;
    zzc::FinSSet X;
    if (!c.corpus.empty() == !c.inputs.empty() || c.inputs.size() > 1)
        throw zzc::SchemaError("rigidify needs one --input simplicial set or one --corpus name");
    if (!c.corpus.empty())
    {
        name = c.corpus;
        X = zzc::corpus(c.corpus);
    }
    else
    {
        name = c.inputs[0];
        X = zzc::sset_from_json(zzc::load_json(c.inputs[0]));
    }
    zzc::RigidifyOptions o;
    o.rigid.max_beads = c.max_beads;
    o.rigid.max_bead_dim = c.max_bead_dim;
    o.engine = engine_bounds(c, std::max(0, c.max_beads - 1));
    o.p = c.p;
    o.oracle = c.oracle;
    o.from = vertex_arg(c.from, "--from");
    o.to = vertex_arg(c.to, "--to");
    auto report = zzc::rigidify_report(X, name, o);
    return emit(report, c.format, c.format == "dot" ? zzc::rigidify_dot(report) : "");
}

int run_flagcat(const Config &c)
{
    const std::string prefix = "delta:";
    if (c.corpus.rfind(prefix, 0) != 0)
        throw zzc::SchemaError("flagcat needs --corpus delta:n");
    int n = zzc::corpus(c.corpus).dimension();
    auto report = zzc::flagcat_report(n, c.p, vertex_arg(c.from, "--from"), vertex_arg(c.to, "--to"));
    return emit(report, c.format, c.format == "dot" ? zzc::flagcat_dot(n, c.p) : "");
}

int run_check(const Config &c)
{
    zzc::CheckOptions o;
    o.seed = c.seed;
    o.jobs = c.jobs;
    o.bounds.engine = engine_bounds(c, 2);
    o.bounds.oracle_len = c.max_len;
    if (c.exhaustive)
    {
        int objects = 0, morphisms = 0;
        char colon = 0;
        std::istringstream in(*c.exhaustive);
        if (!(in >> objects >> colon >> morphisms) || colon != ':' || objects < 1 || morphisms < objects)
            throw zzc::SchemaError("--exhaustive expects objects:morphisms");
        o.exhaustive = {objects, morphisms};
    }
    std::vector<std::pair<std::string, zzc::Diagram>> inputs;
    for (const auto &path : c.inputs)
        inputs.emplace_back(path, load_diagram(path, false));
    auto report = zzc::check_report(inputs, o);
    return emit(report, c.format, "");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Colimits of categories via decorated zig-zags, and rigidification via necklaces"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--max-zz-len", c.max_zz_len, "Largest zig-zag length in engine windows")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--max-len", c.max_len, "Largest word length in oracle windows")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
        sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--oracle,!--no-oracle", c.oracle, "Cross-check against the independent computation");
        sub->add_flag("--plain-cells", c.plain_cells,
                      "Quotient by 2-cells only, without closing under concatenation");
    };

    auto *colim = app.add_subcommand("colim", "Objects and hom classes of the colimit of a diagram");
    colim->add_option("--input", c.inputs, "Diagram document (diagram/v1)")->required();
    colim->add_option("--from", c.from, "Source object, as index.object");
    colim->add_option("--to", c.to, "Target object, as index.object");
    common(colim);

    auto *rigidify = app.add_subcommand("rigidify", "Mapping spaces of the rigidification at level p");
    rigidify->add_option("--input", c.inputs, "Simplicial set document (sset/v1)");
    rigidify->add_option("--corpus", c.corpus, "delta:n, boundary:n, horn:n:k, circle or spine:n");
    rigidify->add_option("--p", c.p, "Simplicial level")->check(CLI::NonNegativeNumber);
    rigidify->add_option("--from", c.from, "Source vertex");
    rigidify->add_option("--to", c.to, "Target vertex");
    rigidify->add_option("--max-beads", c.max_beads, "Largest number of beads")->check(CLI::PositiveNumber);
    rigidify->add_option("--max-bead-dim", c.max_bead_dim, "Largest bead dimension (default: dim X)")
        ->check(CLI::NonNegativeNumber);
    common(rigidify);

    auto *flagcat = app.add_subcommand("flagcat", "The category of flags at level p");
    flagcat->add_option("--corpus", c.corpus, "delta:n")->required();
    flagcat->add_option("--p", c.p, "Simplicial level")->check(CLI::NonNegativeNumber);
    flagcat->add_option("--from", c.from, "Source vertex of the listed flags (default 0)");
    flagcat->add_option("--to", c.to, "Target vertex of the listed flags (default n)");
    flagcat->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));

    auto *check = app.add_subcommand("check", "Property suite on given or seeded random diagrams");
    check->add_option("--input", c.inputs, "Diagram documents to check instead of random ones");
    check->add_option("--seed", c.seed, "Seed for the random diagrams");
    check->add_option("--exhaustive", c.exhaustive,
                      "Also sweep every diagram up to isomorphism with index and node categories of at most "
                      "objects:morphisms");
    common(check);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try
    {
        if (*colim)
            return run_colim(c);
        if (*rigidify)
            return run_rigidify(c);
        if (*flagcat)
            return run_flagcat(c);
        return run_check(c);
    }
    catch (const zzc::BudgetExceeded &e)
    {
        std::cerr << "zzc: budget exceeded: " << e.what() << " (raise ZZC_BUDGET)\n";
        return kBudget;
    }
    catch (const zzc::SchemaError &e)
    {
        std::cerr << "zzc: " << e.what() << "\n";
        return kUsage;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "zzc: " << e.what() << "\n";
        return kUsage;
    }
}
