// votenet: roll-call votes -> signed networks -> minimum-imbalance partitions.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "votenet/agreement.hpp"
#include "votenet/analysis.hpp"
#include "votenet/baselines.hpp"
#include "votenet/cc_core.hpp"
#include "votenet/error.hpp"
#include "votenet/ils_solver.hpp"
#include "votenet/signed_graph.hpp"
#include "votenet/vote_data.hpp"

namespace fs = std::filesystem;
using namespace votenet;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitAllSkipped = 3;

struct DatasetArgs {
    std::string members, documents, votes;
    std::string table = "half";
    std::string denominator = "all";

    void add_to(CLI::App* app) {
        app->add_option("--members", members, "members CSV (mep_id,name,...)")->required()->check(CLI::ExistingFile);
        app->add_option("--documents", documents, "documents CSV (doc_id,policy,date)")
            ->required()
            ->check(CLI::ExistingFile);
        app->add_option("--votes", votes, "votes CSV (doc_id,mep_id,vote)")->required()->check(CLI::ExistingFile);
        app->add_option("--table", table, "half | neutral | half-disagreement | custom:<file>")
            ->capture_default_str();
        app->add_option("--denominator", denominator, "agreement average over all documents or only co-cast ones")
            ->check(CLI::IsMember({"all", "cast"}))
            ->capture_default_str();
    }
    AgreementDenominator agreement_denominator() const {
        return denominator == "cast" ? AgreementDenominator::BothCast : AgreementDenominator::AllDocuments;
    }
};

struct SolverArgs {
    IlsConfig cfg;
    std::optional<double> time_limit_s;

    void add_to(CLI::App* app) {
        app->add_option("--seed", cfg.rng_seed, "random seed")->capture_default_str();
        app->add_option("--workers", cfg.worker_count, "parallel search chains")->capture_default_str();
        app->add_option("--neighbor-prob", cfg.neighbor_visit_probability,
                        "probability of evaluating each candidate move")
            ->capture_default_str();
        app->add_option("--perturbation", cfg.perturbation_level, "nodes reassigned per perturbation")
            ->capture_default_str();
        app->add_option("--patience", cfg.max_iterations_without_improvement,
                        "iterations without improvement before a chain stops")
            ->capture_default_str();
        app->add_option("--starts", cfg.construction_starts, "greedy constructions per chain")
            ->capture_default_str();
        app->add_option("--time-limit", time_limit_s, "wall-clock limit in seconds");
    }
    IlsConfig config() const {
        IlsConfig c = cfg;
        if (time_limit_s) c.time_limit = std::chrono::duration<double>(*time_limit_s);
        c.validate();
        return c;
    }
};

std::optional<Date> date_arg(const std::optional<std::string>& text, const char* flag) {
    if (!text) return std::nullopt;
    auto d = parse_date(*text);
    if (!d) throw InputError(std::string(flag) + ": expected YYYY-MM-DD, got '" + *text + "'");
    return d;
}

BaselineAlgorithm algorithm_arg(const std::string& s) {
    return s == "fastgreedy" ? BaselineAlgorithm::FastGreedy : BaselineAlgorithm::EdgeBetweenness;
}

GraphView view_arg(const std::string& s) {
    return s == "positive" ? GraphView::PositiveSubgraph : GraphView::ComplementaryNegative;
}

void print_summary(const RunReport& r) {
    std::printf("%s%s%s: imbalance %.6g (%.3f%% of weight, %zu links), k=%zu, %.1f ms\n", r.algorithm.c_str(),
                r.view.empty() ? "" : "/", r.view.c_str(), r.imbalance.total, r.imbalance.percent_of_total_weight,
                r.imbalance.violated_links, r.cluster_count, r.wall_time.count());
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << text << '\n';
}

int cmd_extract(const DatasetArgs& data, const std::optional<std::string>& policy,
                const std::optional<std::string>& from, const std::optional<std::string>& to,
                const std::string& out_graph, const std::optional<std::string>& out_matrix) {
    const auto table = WeightTable::from_name(data.table);
    const auto ds = load_dataset(data.documents, data.members, data.votes);
    std::optional<DatePeriod> period;
    if (from || to) period = DatePeriod{date_arg(from, "--from"), date_arg(to, "--to")};
    VoteDataset slice;
    try {
        slice = policy || period ? filter_dataset(ds, policy, period) : ds;
    } catch (const InsufficientDocuments& e) {
        std::cerr << "skipped: " << e.what() << '\n';
        return kExitAllSkipped;
    }
    const auto m = agreement_matrix(slice, table, data.agreement_denominator());
    const auto g = graph_from_agreement(m);
    write_signed_graph(g, out_graph);
    if (out_matrix) write_agreement_csv(m, *out_matrix);
    std::printf("%zu members, %zu documents, %zu links (%s table)\n", g.node_count(), slice.documents().size(),
                g.link_count(), table.name().c_str());
    return 0;
}

int cmd_solve(const std::string& graph, const SolverArgs& solver, const std::string& out_partition,
              const std::optional<std::string>& out_trace) {
    const auto cfg = solver.config();
    const auto g = read_signed_graph(graph);
    SolveTrace trace;
    const auto r = solve_report(g, cfg, &trace);
    write_partition(r.partition, g.nodes(), out_partition);
    if (out_trace) write_trace(trace, *out_trace);
    print_summary(r);
    return 0;
}

int cmd_baseline(const std::string& graph, const std::string& algo, const std::string& view, double filler,
                 const std::string& out_partition, const std::optional<std::string>& out_dendrogram) {
    const auto g = read_signed_graph(graph);
    Dendrogram d;
    const auto r = run_baseline(g, algorithm_arg(algo), view_arg(view), filler, &d);
    write_partition(r.partition, g.nodes(), out_partition);
    if (out_dendrogram) write_dendrogram(d, *out_dendrogram);
    print_summary(r);
    return 0;
}

int cmd_compare(const std::string& graph, const std::vector<std::string>& partitions, const std::string& out_report,
                const std::optional<std::string>& out_nmi) {
    const auto g = read_signed_graph(graph);
    std::vector<std::string> labels;
    std::vector<Partition> parts;
    for (const auto& p : partitions) {
        labels.push_back(fs::path(p).stem().string());
        parts.push_back(read_partition(p, g.nodes()));
    }
    std::vector<std::vector<double>> values(parts.size(), std::vector<double>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) values[i][j] = nmi(parts[i], parts[j]);

    nlohmann::ordered_json report;
    report["graph"] = graph;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto b = imbalance(g, parts[i]);
        nlohmann::ordered_json e;
        e["label"] = labels[i];
        e["path"] = partitions[i];
        e["imbalance_total"] = b.total;
        e["imbalance_percent"] = b.percent_of_total_weight;
        e["imbalance_percent_of_links"] = b.percent_of_link_count;
        e["violated_links"] = b.violated_links;
        e["k"] = parts[i].cluster_count();
        entries.push_back(e);
        std::printf("%s: imbalance %.6g (%.3f%%), k=%zu\n", labels[i].c_str(), b.total, b.percent_of_total_weight,
                    parts[i].cluster_count());
    }
    report["partitions"] = entries;
    report["nmi"] = values;
    write_text(out_report, report.dump(2));
    if (out_nmi) write_nmi_csv(labels, values, *out_nmi);
    return 0;
}

int cmd_synth(const SyntheticSpec& spec, const std::string& out_dir) {
    spec.validate();
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const auto ds = generate_synthetic_votes(spec);
    save_dataset(ds, dir / "documents.csv", dir / "members.csv", dir / "votes.csv");
    std::vector<std::string> ids;
    for (const auto& m : ds.members()) ids.push_back(m.mep_id);
    write_partition(planted_blocs(spec), NodeIndex(ids), dir / "planted.csv");
    std::printf("%zu members, %zu documents, %zu blocs -> %s\n", spec.n_members, spec.n_docs, spec.n_blocs,
                out_dir.c_str());
    return 0;
}

int cmd_histogram(const std::string& matrix, double bin_width, const std::string& out) {
    const auto m = read_agreement_csv(matrix);
    write_histogram_csv(agreement_histogram(m, bin_width), out);
    return 0;
}

int cmd_experiment(const DatasetArgs& data, const std::vector<std::string>& policies,
                   const std::vector<std::string>& periods, const SolverArgs& solver,
                   const std::vector<std::string>& runs, double filler, const std::string& out_dir) {
    const auto table = WeightTable::from_name(data.table);
    const auto cfg = solver.config();
    const auto ds = load_dataset(data.documents, data.members, data.votes);
    std::vector<Slice> slices;
    for (const auto& p : policies) slices.push_back(Slice{p, std::nullopt});
    for (const auto& p : periods) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) throw InputError("--period: expected FROM:TO, got '" + p + "'");
        const auto from = p.substr(0, colon), to = p.substr(colon + 1);
        slices.push_back(Slice{std::nullopt, DatePeriod{from.empty() ? std::nullopt : date_arg(from, "--period"),
                                                        to.empty() ? std::nullopt : date_arg(to, "--period")}});
    }
    std::vector<BaselineRun> baselines;
    for (const auto& r : runs) {
        const auto slash = r.find('/');
        const auto algo = r.substr(0, slash), view = slash == std::string::npos ? "" : r.substr(slash + 1);
        if ((algo != "fastgreedy" && algo != "edgebetweenness") || (view != "positive" && view != "compneg"))
            throw InputError("--baseline: expected {fastgreedy|edgebetweenness}/{positive|compneg}, got '" + r + "'");
        baselines.push_back({algorithm_arg(algo), view_arg(view)});
    }
    const auto results =
        run_experiment(ds, table, slices, cfg, baselines, ExperimentOptions{data.agreement_denominator(), filler});
    write_experiment(results, out_dir);
    bool any = false;
    for (const auto& s : results) {
        if (s.skipped) {
            std::printf("[%s] skipped: %s\n", s.slice.label().c_str(), s.skip_reason.c_str());
            continue;
        }
        any = true;
        std::printf("[%s] %zu documents\n", s.slice.label().c_str(), s.document_count);
        for (const auto& r : s.reports) {
            std::printf("  ");
            print_summary(r);
        }
    }
    return any ? 0 : kExitAllSkipped;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signed vote networks and minimum-imbalance partitions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "votenet 0.1.0");

    DatasetArgs extract_data;
    std::optional<std::string> policy, from, to, out_matrix;
    std::string out_graph;
    auto* extract = app.add_subcommand("extract", "build a signed graph from vote records");
    extract_data.add_to(extract);
    extract->add_option("--policy", policy, "keep documents of this policy area");
    extract->add_option("--from", from, "first date kept (YYYY-MM-DD)");
    extract->add_option("--to", to, "last date kept (YYYY-MM-DD)");
    extract->add_option("--out-graph", out_graph, "signed edge list CSV")->required();
    extract->add_option("--out-matrix", out_matrix, "agreement matrix CSV");

    std::string graph, out_partition;
    std::optional<std::string> out_trace, out_dendrogram, out_nmi;
    SolverArgs solver;
    auto* solve_cmd = app.add_subcommand("solve", "minimum-imbalance partition by iterated local search");
    solve_cmd->add_option("--graph", graph, "signed edge list CSV")->required()->check(CLI::ExistingFile);
    solver.add_to(solve_cmd);
    solve_cmd->add_option("--out-partition", out_partition, "partition CSV")->required();
    solve_cmd->add_option("--out-trace", out_trace, "best imbalance per iteration CSV");

    std::string algo = "fastgreedy", view = "positive";
    double filler = 1.0;
    auto* baseline = app.add_subcommand("baseline", "community detection on a positive-only view");
    baseline->add_option("--graph", graph, "signed edge list CSV")->required()->check(CLI::ExistingFile);
    baseline->add_option("--algo", algo)->check(CLI::IsMember({"fastgreedy", "edgebetweenness"}))->capture_default_str();
    baseline->add_option("--view", view)->check(CLI::IsMember({"positive", "compneg"}))->capture_default_str();
    baseline->add_option("--filler-weight", filler, "weight of complementary links")->capture_default_str();
    baseline->add_option("--out-partition", out_partition, "partition CSV")->required();
    baseline->add_option("--out-dendrogram", out_dendrogram, "merge/removal history CSV");

    std::vector<std::string> partitions;
    std::string out_report;
    auto* compare = app.add_subcommand("compare", "imbalance and pairwise NMI of partitions");
    compare->add_option("--graph", graph, "signed edge list CSV")->required()->check(CLI::ExistingFile);
    compare->add_option("--partition", partitions, "partition CSV (repeatable)")
        ->required()
        ->check(CLI::ExistingFile);
    compare->add_option("--out-report", out_report, "JSON report")->required();
    compare->add_option("--out-nmi", out_nmi, "NMI matrix CSV");

    SyntheticSpec spec;
    std::string out_dir;
    auto* synth = app.add_subcommand("synth", "generate planted-bloc vote records");
    synth->add_option("--members", spec.n_members)->capture_default_str();
    synth->add_option("--docs", spec.n_docs)->capture_default_str();
    synth->add_option("--blocs", spec.n_blocs)->capture_default_str();
    synth->add_option("--cohesion", spec.cohesion)->capture_default_str();
    synth->add_option("--abstain", spec.abstain_rate)->capture_default_str();
    synth->add_option("--absence", spec.absence_rate)->capture_default_str();
    synth->add_option("--seed", spec.rng_seed)->capture_default_str();
    synth->add_option("--out-dir", out_dir)->required();

    std::string matrix, out;
    double bin_width = 0.1;
    auto* histogram = app.add_subcommand("histogram", "distribution of pairwise agreement");
    histogram->add_option("--matrix", matrix, "agreement matrix CSV")->required()->check(CLI::ExistingFile);
    histogram->add_option("--bin-width", bin_width)->capture_default_str();
    histogram->add_option("--out", out, "histogram CSV")->required();

    DatasetArgs exp_data;
    std::vector<std::string> exp_policies, exp_periods;
    std::vector<std::string> runs = {"fastgreedy/positive", "fastgreedy/compneg", "edgebetweenness/positive",
                                     "edgebetweenness/compneg"};
    SolverArgs exp_solver;
    auto* experiment = app.add_subcommand("experiment", "ILS and baselines over policy/period slices");
    exp_data.add_to(experiment);
    experiment->add_option("--policy", exp_policies, "policy slice (repeatable)");
    experiment->add_option("--period", exp_periods, "date slice FROM:TO, either end optional (repeatable)");
    exp_solver.add_to(experiment);
    experiment->add_option("--baseline", runs, "algorithm/view pairs to run")->capture_default_str();
    experiment->add_option("--filler-weight", filler)->capture_default_str();
    experiment->add_option("--out-dir", out_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*extract) return cmd_extract(extract_data, policy, from, to, out_graph, out_matrix);
        if (*solve_cmd) return cmd_solve(graph, solver, out_partition, out_trace);
        if (*baseline) return cmd_baseline(graph, algo, view, filler, out_partition, out_dendrogram);
        if (*compare) return cmd_compare(graph, partitions, out_report, out_nmi);
        if (*synth) return cmd_synth(spec, out_dir);
        if (*histogram) return cmd_histogram(matrix, bin_width, out);
        if (*experiment) return cmd_experiment(exp_data, exp_policies, exp_periods, exp_solver, runs, filler, out_dir);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
