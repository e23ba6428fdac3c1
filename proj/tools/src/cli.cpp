#include "ssot/cli.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssot/bounds.hpp"
#include "ssot/dof.hpp"
#include "ssot/error.hpp"
#include "ssot/model.hpp"
#include "ssot/scanner.hpp"
#include "ssot/simulate.hpp"
#include "ssot/spec_io.hpp"

namespace ssot::cli {

namespace {

using nlohmann::json;

struct GlobalOptions {
    bool machine = false;
    long long seed = 0;  // reserved for randomized harnesses; commands are deterministic
    bool lenient = false;
};

/// Every command renders a human section plus one machine record per line;
/// --machine keeps only the records.
struct Report {
    std::vector<std::string> human;
    std::vector<json> records;

    void line(std::string s) { human.push_back(std::move(s)); }
};

void emit(const Report& report, const GlobalOptions& opt, std::ostream& out) {
    if (!opt.machine) {
        for (const std::string& line : report.human) out << line << "\n";
        if (!report.human.empty() && !report.records.empty()) out << "\n";
    }
    for (const json& record : report.records) out << record.dump() << "\n";
}

std::string fixed6(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(6) << v;
    return s.str();
}

std::string counted(std::size_t n, const std::string& noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string join_ids(const std::vector<std::string>& ids, const std::string& sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += sep;
        out += ids[i];
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SystemSpec load_spec(const std::string& path) {
    try {
        return parse_spec(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.code(), path + ":" + std::to_string(e.line()) + ": " + e.what(),
                         e.line(), e.column());
    }
}

EditScript load_edit_script(const std::string& path) {
    try {
        return parse_edit_script(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.code(), path + ":" + std::to_string(e.line()) + ": " + e.what(),
                         e.line(), e.column());
    }
}

std::vector<Edge> sorted_as_derive_lines(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.derived, a.source) < std::tie(b.derived, b.source);
    });
    return edges;
}

json edge_record(const Edge& e) { return json{{"source", e.source}, {"derived", e.derived}}; }

// ---------------------------------------------------------------- analyze --

Report analyze_report(const SystemSpec& spec) {
    DerivationGraph g = spec.graph();
    Report report;
    report.line("system " + spec.name + ": " + counted(g.facts().size(), "fact") + ", " +
                counted(g.location_count(), "location") + ", " + counted(g.edge_count(), "edge"));

    for (const Fact& f : g.facts()) {
        DofReport dof = compute_dof(g.restricted_to_fact(f.id));
        RegimeReport regime = regime_report(g, f.id);

        report.line("fact " + f.id + ":");
        report.line("  dof: " + std::to_string(dof.dof));
        report.line("  sources: " + (dof.sources.empty() ? "(none)" : join_ids(dof.sources)));
        report.line("  redundancy: " +
                    (dof.redundancy ? std::to_string(*dof.redundancy) : std::string("n/a")));
        switch (dof.regime) {
        case Regime::not_encoded: report.line("  regime: not encoded"); break;
        case Regime::optimal: report.line("  regime: optimal (capacity-achieving)"); break;
        case Regime::above_capacity: report.line("  regime: above capacity"); break;
        }
        report.line(std::string("  pareto: ") + (regime.pareto_optimal ? "yes" : "no"));
        report.line("  side info: " +
                    (dof.dof ? fixed6(side_info_requirement(dof.dof)) + " bits"
                             : std::string("n/a")));

        json record{{"fact", f.id},
                    {"dof", dof.dof},
                    {"sources", dof.sources},
                    {"regime", to_string(dof.regime)},
                    {"cost_class", to_string(regime.cost_class)},
                    {"pareto_optimal", regime.pareto_optimal}};
        record["redundancy"] = dof.redundancy ? json(*dof.redundancy) : json(nullptr);
        record["side_info_bits"] = dof.dof ? json(side_info_requirement(dof.dof)) : json(nullptr);
        report.records.push_back(std::move(record));
    }
    return report;
}

int cmd_analyze(const std::string& file, const GlobalOptions& opt, std::ostream& out) {
    Report report = analyze_report(load_spec(file));
    emit(report, opt, out);
    return 0;
}

// ---------------------------------------------------------------- witness --

int cmd_witness(const std::string& file, const std::string& fact_id, const GlobalOptions& opt,
                std::ostream& out) {
    DerivationGraph g = load_spec(file).graph();
    Report report;
    try {
        Witness w = construct_incoherence_witness(g, fact_id);
        report.line("fact " + fact_id + ": witness found");
        for (const EditEvent& e : w.edits)
            report.line("edit " + e.target + " " + std::to_string(e.value));
        report.line("disagreement: " + w.disagreeing_pair.first + " != " +
                    w.disagreeing_pair.second);

        json edits = json::array();
        for (const EditEvent& e : w.edits)
            edits.push_back({{"location", e.target}, {"value", e.value}});
        report.records.push_back(
            {{"fact", fact_id},
             {"witness", true},
             {"edits", std::move(edits)},
             {"disagreeing_pair", {w.disagreeing_pair.first, w.disagreeing_pair.second}}});
    } catch (const Error& e) {
        if (e.code() != errc::capacity_achieving) throw;
        report.line("fact " + fact_id + ": capacity-achieving: no witness exists");
        report.records.push_back(
            {{"fact", fact_id}, {"witness", false}, {"reason", "capacity_achieving"}});
    }
    emit(report, opt, out);
    return 0;
}

// --------------------------------------------------------------- simulate --

int cmd_simulate(const std::string& spec_file, const std::string& script_file,
                 const GlobalOptions& opt, std::ostream& out) {
    SystemState state = load_spec(spec_file).state();
    EditScript script = load_edit_script(script_file);
    Trajectory trajectory = run_edit_sequence(state, script);

    Report report;
    for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
        const TrajectoryStep& step = trajectory.steps[i];
        std::string flags;
        for (const auto& [fact, ok] : step.coherent) {
            if (!flags.empty()) flags += ", ";
            flags += fact + "=" + (ok ? "yes" : "no");
        }
        report.line("step " + std::to_string(i + 1) + ": edit " + step.edit.target + " " +
                    std::to_string(step.edit.value) + " | coherent: " +
                    (flags.empty() ? "n/a" : flags));
        report.records.push_back({{"step", i + 1},
                                  {"edit", {{"location", step.edit.target},
                                            {"value", step.edit.value}}},
                                  {"coherent", step.coherent},
                                  {"manual_edits", step.manual_edits}});
    }
    report.line("manual edits: " + std::to_string(trajectory.manual_edits()));

    json final_state = json::object();
    for (const auto& [loc, value] : trajectory.final_state.values()) final_state[loc] = value;
    report.records.push_back({{"steps", trajectory.steps.size()},
                              {"manual_edits", trajectory.manual_edits()},
                              {"final_state", std::move(final_state)}});
    emit(report, opt, out);
    return 0;
}

// ----------------------------------------------------------------- extend --

int cmd_extend(const std::string& file, const GlobalOptions& opt, std::ostream& out) {
    SystemSpec spec = load_spec(file);
    spec.state();  // the emitted system should be as valid as the input

    DerivationGraph g = spec.graph();
    SystemSpec extended = spec;
    std::vector<Edge> added;
    json fact_records = json::array();

    Report report;
    for (const Fact& f : g.facts()) {
        DerivationGraph restricted = g.restricted_to_fact(f.id);
        if (restricted.location_count() == 0) continue;
        DofReport before = compute_dof(restricted);
        if (before.dof <= 1) continue;

        std::vector<Edge> extension = minimal_dof1_extension(restricted);
        const std::string& root = extension.front().source;
        ValueToken root_value = 0;
        for (const SystemSpec::LocationDecl& l : extended.locations)
            if (l.id == root) root_value = l.value;
        for (SystemSpec::LocationDecl& l : extended.locations)
            if (l.fact == f.id) l.value = root_value;

        report.line("fact " + f.id + ": dof " + std::to_string(before.dof) + " -> 1");
        for (const Edge& e : sorted_as_derive_lines(extension))
            report.line("derive " + e.derived + " from " + e.source);

        fact_records.push_back({{"fact", f.id}, {"dof_before", before.dof}, {"dof_after", 1}});
        added.insert(added.end(), extension.begin(), extension.end());
        extended.edges.insert(extended.edges.end(), extension.begin(), extension.end());
    }

    if (added.empty()) report.line("no extension needed");
    extended.state();  // propagation discipline holds by construction
    std::string canonical = serialize_spec(extended);

    report.line("");
    std::istringstream lines(canonical);
    for (std::string l; std::getline(lines, l);) report.line(l);

    json added_records = json::array();
    for (const Edge& e : sorted_as_derive_lines(added)) added_records.push_back(edge_record(e));
    report.records.push_back({{"added", std::move(added_records)},
                              {"facts", std::move(fact_records)},
                              {"spec", canonical}});
    emit(report, opt, out);
    return 0;
}

// ----------------------------------------------------------------- bounds --

struct BoundsArgs {
    int k = 2;
    double info = 0.0;
    std::uint64_t dof = 1;
    double p = 0.0;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::size_t vertices = 0;
    std::vector<std::string> edges;
};

std::pair<std::size_t, std::size_t> parse_edge(const std::string& text) {
    std::size_t comma = text.find(',');
    std::size_t u = 0, v = 0;
    try {
        if (comma == std::string::npos) throw std::invalid_argument(text);
        u = std::stoul(text.substr(0, comma));
        v = std::stoul(text.substr(comma + 1));
    } catch (const std::exception&) {
        throw ParseError(errc::syntax_error, "expected --edge u,v with numeric vertices: " + text,
                         0);
    }
    return {u, v};
}

int cmd_bounds(const std::string& query, const BoundsArgs& args, const GlobalOptions& opt,
               std::ostream& out) {
    Report report;
    if (query == "fano") {
        double pe = fano_min_error(args.k, args.info);
        report.line("fano bound: k=" + std::to_string(args.k) + " info=" + fixed6(args.info) +
                    " -> min error " + fixed6(pe));
        report.line("note: information floor, not an achievability guarantee");
        report.records.push_back(
            {{"query", "fano"}, {"k", args.k}, {"mutual_info_bits", args.info}, {"min_error", pe}});
    } else if (query == "sideinfo") {
        double bits = side_info_requirement(args.dof);
        report.line("side info: dof=" + std::to_string(args.dof) + " -> " + fixed6(bits) +
                    " bits");
        report.records.push_back({{"query", "sideinfo"}, {"dof", args.dof}, {"bits", bits}});
    } else if (query == "compound") {
        double prob = error_compounding(args.p, args.n);
        report.line("compounded error: p=" + fixed6(args.p) + " n=" + std::to_string(args.n) +
                    " -> " + fixed6(prob));
        report.records.push_back(
            {{"query", "compound"}, {"p", args.p}, {"n", args.n}, {"probability", prob}});
    } else if (query == "amortize") {
        std::uint64_t edits = amortized_cost(args.m, args.n, args.dof);
        report.line("amortized cost: m=" + std::to_string(args.m) + " n=" +
                    std::to_string(args.n) + " dof=" + std::to_string(args.dof) + " -> " +
                    std::to_string(edits) + " edits");
        report.records.push_back({{"query", "amortize"},
                                  {"m", args.m},
                                  {"n", args.n},
                                  {"dof", args.dof},
                                  {"edits", edits}});
    } else {  // clique
        ValueGraph graph(args.vertices);
        for (const std::string& text : args.edges) {
            auto [u, v] = parse_edge(text);
            graph.add_edge(u, v);
        }
        std::size_t clique = max_clique_size(graph);
        double bits = confusability_required_bits(graph);
        report.line("confusability: " + counted(args.vertices, "value") + ", " +
                    counted(args.edges.size(), "edge") + ", max clique " +
                    std::to_string(clique) + " -> " + fixed6(bits) + " bits");
        report.records.push_back({{"query", "clique"},
                                  {"vertices", args.vertices},
                                  {"edges", args.edges.size()},
                                  {"max_clique", clique},
                                  {"bits", bits}});
    }
    emit(report, opt, out);
    return 0;
}

// ------------------------------------------------------------------- scan --

int cmd_scan(const std::string& root, const std::vector<std::string>& extensions,
             const GlobalOptions& opt, std::ostream& out) {
    ScanOptions options;
    options.lenient = opt.lenient;
    if (!extensions.empty()) {
        options.extensions.clear();
        for (const std::string& e : extensions)
            options.extensions.push_back(e.starts_with(".") ? e : "." + e);
    }

    ScanReport scan = scan_directory(root, options);

    Report report;
    report.line("scanned " + counted(scan.files_scanned, "config file") + " under " + root);
    if (!scan.unparsed_files.empty())
        report.line("skipped " + counted(scan.unparsed_files.size(), "unparseable file") + ": " +
                    join_ids(scan.unparsed_files));

    std::size_t incoherent = 0;
    for (const ScanRecord& record : scan.records) {
        if (!record.coherent) ++incoherent;

        std::string verdict;
        bool derivation_used = record.dof < record.locations.size();
        if (record.coherent)
            verdict = derivation_used ? "coherent (by derivation)" : "coherent";
        else
            verdict = record.dof < record.distinct_values ? "incoherent (derivation violated)"
                                                          : "incoherent";
        report.line("key " + record.key + ": " + counted(record.distinct_values, "value") +
                    " across " + counted(record.locations.size(), "file") + ", dof " +
                    std::to_string(record.dof) + ", " + verdict + ", side info " +
                    fixed6(record.side_info_bits) + " bits");
        for (const ScanEntry& entry : record.locations)
            report.line("  " + entry.path + " = " + entry.value +
                        (entry.derived ? " (derived)" : ""));

        json locations = json::array();
        for (const ScanEntry& entry : record.locations)
            locations.push_back(
                {{"path", entry.path}, {"value", entry.value}, {"derived", entry.derived}});
        report.records.push_back({{"key", record.key},
                                  {"k", record.distinct_values},
                                  {"dof", record.dof},
                                  {"coherent", record.coherent},
                                  {"side_info_bits", record.side_info_bits},
                                  {"locations", std::move(locations)}});
    }
    report.line("incoherent keys: " + std::to_string(incoherent) + " of " +
                std::to_string(scan.records.size()));

    emit(report, opt, out);
    return incoherent == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- lattice --

int cmd_lattice(const std::string& op, const std::string& file_a, const std::string& file_b,
                const GlobalOptions& opt, std::ostream& out) {
    DerivationGraph a = load_spec(file_a).graph();
    DerivationGraph b = load_spec(file_b).graph();

    std::optional<DerivationGraph> result;
    if (op == "meet")
        result = lattice_meet(a, b);
    else
        result = lattice_join(a, b);

    Report report;
    if (!result) {
        report.line("join: undefined (combined derivations are cyclic)");
        report.records.push_back({{"op", op}, {"defined", false}});
        emit(report, opt, out);
        return 0;
    }

    DofReport dof = compute_dof(*result);
    report.line(op + ": " + counted(result->edge_count(), "edge") + ", dof " +
                std::to_string(dof.dof));
    json edges = json::array();
    for (const Edge& e : sorted_as_derive_lines(result->edges())) {
        report.line("derive " + e.derived + " from " + e.source);
        edges.push_back(edge_record(e));
    }
    report.records.push_back(
        {{"op", op}, {"defined", true}, {"dof", dof.dof}, {"edges", std::move(edges)}});
    emit(report, opt, out);
    return 0;
}

// ------------------------------------------------------------- dispatcher --

int exit_code_for(errc code) {
    switch (code) {
    case errc::unknown_fact: return 4;
    case errc::unary_domain: return 5;
    case errc::out_of_range:
    case errc::invalid_query:
    case errc::not_encoded:
    case errc::too_large:
    case errc::invalid_regime: return 7;
    case errc::syntax_error:
    case errc::io_error: return 2;
    default: return 3;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"coherence analysis for facts encoded at multiple locations"};
    app.name("ssot");

    GlobalOptions opt;
    app.add_flag("--machine", opt.machine, "print only machine-readable records");
    app.add_option("--seed", opt.seed,
                   "seed for randomized harnesses (shipped commands are deterministic)");
    app.add_flag("--lenient", opt.lenient, "scan: skip unparseable files instead of failing");
    app.require_subcommand(1);

    std::string spec_file, other_file, fact_id, directory;
    std::vector<std::string> extensions;
    BoundsArgs bounds_args;

    CLI::App* analyze = app.add_subcommand("analyze", "per-fact dof, regime and side-info report");
    analyze->add_option("spec-file", spec_file, "system description")->required();

    CLI::App* witness = app.add_subcommand("witness", "two-edit incoherence witness for a fact");
    witness->add_option("spec-file", spec_file, "system description")->required();
    witness->add_option("fact-id", fact_id, "fact to attack")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "replay an edit script with coherence tracking");
    simulate->add_option("spec-file", spec_file, "system description")->required();
    simulate->add_option("script-file", other_file, "edit script")->required();

    CLI::App* extend = app.add_subcommand("extend", "minimal derive edges bringing every fact to dof 1");
    extend->add_option("spec-file", spec_file, "system description")->required();

    CLI::App* bounds = app.add_subcommand("bounds", "information-theoretic calculators");
    bounds->require_subcommand(1);
    CLI::App* fano = bounds->add_subcommand("fano", "least error compatible with partial information");
    fano->add_option("--k", bounds_args.k, "number of possible values")->required();
    fano->add_option("--info", bounds_args.info, "mutual information in bits")->required();
    CLI::App* sideinfo = bounds->add_subcommand("sideinfo", "bits needed to resolve dof-way choice");
    sideinfo->add_option("--dof", bounds_args.dof, "independent encodings")->required();
    CLI::App* compound = bounds->add_subcommand("compound", "error probability over n manual steps");
    compound->add_option("--p", bounds_args.p, "per-step error probability")->required();
    compound->add_option("--n", bounds_args.n, "step count")->required();
    CLI::App* amortize = bounds->add_subcommand("amortize", "total edits for m changes at a given dof");
    amortize->add_option("--m", bounds_args.m, "number of fact changes")->required();
    amortize->add_option("--n", bounds_args.n, "independent locations")->required();
    amortize->add_option("--dof", bounds_args.dof, "degrees of freedom (1 or n)")->required();
    CLI::App* clique = bounds->add_subcommand("clique", "confusability bound via exact max clique");
    clique->add_option("--vertices", bounds_args.vertices, "value count")->required();
    clique->add_option("--edge", bounds_args.edges, "confusable pair u,v (repeatable)");

    CLI::App* scan = app.add_subcommand("scan", "drift report over a config directory");
    scan->add_option("directory", directory, "root to walk")->required();
    scan->add_option("--ext", extensions, "config extensions (default: common config formats)");

    CLI::App* lattice = app.add_subcommand("lattice", "meet/join of two derivation structures");
    lattice->require_subcommand(1);
    CLI::App* meet = lattice->add_subcommand("meet", "intersection of derive edges");
    meet->add_option("spec-a", spec_file, "first system")->required();
    meet->add_option("spec-b", other_file, "second system")->required();
    CLI::App* joinop = lattice->add_subcommand("join", "transitive closure of the union, if acyclic");
    joinop->add_option("spec-a", spec_file, "first system")->required();
    joinop->add_option("spec-b", other_file, "second system")->required();

    std::vector<const char*> argv;
    argv.push_back("ssot");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(spec_file, opt, out);
        if (witness->parsed()) return cmd_witness(spec_file, fact_id, opt, out);
        if (simulate->parsed()) return cmd_simulate(spec_file, other_file, opt, out);
        if (extend->parsed()) return cmd_extend(spec_file, opt, out);
        if (bounds->parsed()) {
            for (CLI::App* sub : {fano, sideinfo, compound, amortize, clique})
                if (sub->parsed()) return cmd_bounds(sub->get_name(), bounds_args, opt, out);
        }
        if (scan->parsed()) return cmd_scan(directory, extensions, opt, out);
        if (lattice->parsed())
            return cmd_lattice(meet->parsed() ? "meet" : "join", spec_file, other_file, opt, out);
        err << "error: no command\n";
        return 2;
    } catch (const SimulationError& e) {
        err << "error at step " << e.step() + 1 << " (" << errc_name(e.code()) << "): " << e.what()
            << "\n";
        return 6;
    } catch (const ParseError& e) {
        err << "parse error (" << errc_name(e.code()) << "): " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    }
}

} // namespace ssot::cli
