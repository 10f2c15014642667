#include "votenet/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include <json.hpp>

#include "csv.hpp"
#include "votenet/error.hpp"

namespace votenet {

namespace {

double entropy(const std::map<int, std::size_t>& counts, double n) {
    double h = 0.0;
    for (const auto& [label, c] : counts) {
        const double pr = static_cast<double>(c) / n;
        h -= pr * std::log(pr);
    }
    return h;
}

nlohmann::ordered_json report_object(const RunReport& r) {
    nlohmann::ordered_json j;
    j["imbalance_total"] = r.imbalance.total;
    j["imbalance_percent"] = r.imbalance.percent_of_total_weight;
    j["imbalance_percent_of_links"] = r.imbalance.percent_of_link_count;
    j["uncut_negative_weight"] = r.imbalance.uncut_negative_weight;
    j["cut_positive_weight"] = r.imbalance.cut_positive_weight;
    j["k"] = r.cluster_count;
    if (r.modularity) j["modularity"] = *r.modularity;
    j["wall_ms"] = r.wall_time.count();
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    return j;
}

}  // namespace

RunReport solve_report(const SignedGraph& g, const IlsConfig& cfg, SolveTrace* trace) {
    auto result = solve(g, cfg);
    RunReport r;
    r.algorithm = "ils";
    r.view = "signed";
    r.cluster_count = result.partition.cluster_count();
    r.imbalance = result.breakdown;
    r.partition = std::move(result.partition);
    r.wall_time = result.trace.wall_time;
    r.config = {{"neighbor_visit_probability", csv::format_exact(cfg.neighbor_visit_probability)},
                {"perturbation_level", std::to_string(cfg.perturbation_level)},
                {"max_iterations_without_improvement", std::to_string(cfg.max_iterations_without_improvement)},
                {"rng_seed", std::to_string(cfg.rng_seed)},
                {"worker_count", std::to_string(cfg.worker_count)},
                {"construction_starts", std::to_string(cfg.construction_starts)}};
    if (cfg.time_limit) r.config.emplace_back("time_limit_s", csv::format_exact(cfg.time_limit->count()));
    if (trace) *trace = std::move(result.trace);
    return r;
}

namespace {

std::string sanitize(std::string s) {
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return s;
}

}  // namespace

double nmi(const Partition& p, const Partition& q) {
    if (p.size() != q.size())
        throw InputError("partitions cover different node sets (" + std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()) + " nodes)");
    const double n = static_cast<double>(p.size());
    if (p.size() == 0) return 1.0;
    std::map<int, std::size_t> cp, cq;
    std::map<std::pair<int, int>, std::size_t> joint;
    for (std::size_t i = 0; i < p.size(); ++i) {
        ++cp[p[i]];
        ++cq[q[i]];
        ++joint[{p[i], q[i]}];
    }
    const double hp = entropy(cp, n), hq = entropy(cq, n);
    if (cp.size() == 1 && cq.size() == 1) return 1.0;
    if (cp.size() == 1 || cq.size() == 1) return 0.0;
    double mi = 0.0;
    for (const auto& [key, c] : joint) {
        const double pij = static_cast<double>(c) / n;
        const double pi = static_cast<double>(cp[key.first]) / n;
        const double pj = static_cast<double>(cq[key.second]) / n;
        mi += pij * std::log(pij / (pi * pj));
    }
    return std::clamp(2.0 * mi / (hp + hq), 0.0, 1.0);
}

void SyntheticSpec::validate() const {
    auto prob = [](double x, const char* name) {
        if (!(x >= 0.0 && x <= 1.0)) throw InputError(std::string(name) + " must lie in [0, 1]");
    };
    prob(cohesion, "cohesion");
    prob(abstain_rate, "abstain rate");
    prob(absence_rate, "absence rate");
    if (n_members < 1 || n_docs < 1) throw InputError("synthetic data needs members and documents");
    if (n_blocs < 1 || n_blocs > n_members) throw InputError("bloc count must lie in [1, members]");
}

VoteDataset generate_synthetic_votes(const SyntheticSpec& spec) {
    spec.validate();
    static constexpr const char* kPolicies[] = {"Agriculture", "Foreign & Security Affairs"};
    static constexpr const char* kCountries[] = {"FR", "DE", "IT", "ES", "PL", "NL"};
    const std::chrono::sys_days start = Date{std::chrono::year{2009}, std::chrono::July, std::chrono::day{14}};

    std::vector<DocumentRecord> docs;
    for (std::size_t d = 0; d < spec.n_docs; ++d) {
        char id[32];
        std::snprintf(id, sizeof id, "D%05zu", d + 1);
        docs.push_back({id, kPolicies[d % 2], Date{start + std::chrono::days{static_cast<long>(d)}}});
    }
    std::vector<MemberRecord> members;
    for (std::size_t m = 0; m < spec.n_members; ++m) {
        char id[32];
        std::snprintf(id, sizeof id, "M%04zu", m + 1);
        members.push_back({id, "Member " + std::to_string(m + 1), kCountries[m % std::size(kCountries)],
                           "Bloc" + std::to_string(m % spec.n_blocs)});
    }
    VoteDataset ds(std::move(docs), std::move(members));

    Rng rng(spec.rng_seed);
    std::bernoulli_distribution coin(0.5), follow(spec.cohesion), absent(spec.absence_rate),
        abstain(spec.abstain_rate);
    std::vector<VoteValue> line(spec.n_blocs);
    for (std::size_t d = 0; d < spec.n_docs; ++d) {
        for (auto& l : line) l = coin(rng) ? VoteValue::For : VoteValue::Against;
        for (std::size_t m = 0; m < spec.n_members; ++m) {
            const VoteValue bloc_line = line[m % spec.n_blocs];
            const VoteValue opposite = bloc_line == VoteValue::For ? VoteValue::Against : VoteValue::For;
            VoteValue v = follow(rng) ? bloc_line : opposite;
            const bool is_absent = absent(rng);
            const bool is_abstain = abstain(rng);
            if (is_absent) v = VoteValue::Absent;
            else if (is_abstain) v = VoteValue::Abstain;
            ds.set_vote(m, d, v);
        }
    }
    return ds;
}

Partition planted_blocs(const SyntheticSpec& spec) {
    spec.validate();
    std::vector<int> labels(spec.n_members);
    for (std::size_t m = 0; m < spec.n_members; ++m) labels[m] = static_cast<int>(m % spec.n_blocs);
    return Partition(std::move(labels));
}

std::string Slice::label() const {
    std::string out;
    if (policy) out += sanitize(*policy);
    if (period) {
        if (!out.empty()) out += "_";
        out += (period->from ? format_date(*period->from) : std::string("start")) + "_to_" +
               (period->to ? format_date(*period->to) : std::string("end"));
    }
    return out.empty() ? "all" : out;
}

std::string run_key(const RunReport& r) {
    return r.algorithm == "ils" ? r.algorithm : r.algorithm + "/" + r.view;
}

std::vector<SliceResult> run_experiment(const VoteDataset& ds, const WeightTable& table,
                                        const std::vector<Slice>& slices, const IlsConfig& solver,
                                        const std::vector<BaselineRun>& baselines,
                                        const ExperimentOptions& options) {
    solver.validate();
    const std::vector<Slice> todo = slices.empty() ? std::vector<Slice>{Slice{}} : slices;
    std::vector<SliceResult> results;
    for (const auto& slice : todo) {
        SliceResult res;
        res.slice = slice;
        VoteDataset sub;
        try {
            sub = (slice.policy || slice.period) ? filter_dataset(ds, slice.policy, slice.period)
                                                 : filter_dataset(ds, std::nullopt, std::nullopt);
        } catch (const InsufficientDocuments& e) {
            res.skipped = true;
            res.skip_reason = e.what();
            results.push_back(std::move(res));
            continue;
        }
        res.document_count = sub.document_count();
        res.graph = graph_from_agreement(agreement_matrix(sub, table, options.denominator));
        res.reports.push_back(solve_report(res.graph, solver));
        for (const auto& b : baselines)
            res.reports.push_back(run_baseline(res.graph, b.algorithm, b.view, options.filler_weight));
        const std::size_t r = res.reports.size();
        res.nmi.assign(r, std::vector<double>(r, 1.0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                res.nmi[i][j] = res.nmi[j][i] = nmi(res.reports[i].partition, res.reports[j].partition);
        results.push_back(std::move(res));
    }
    return results;
}

std::string report_json(const RunReport& r) { return report_object(r).dump(); }

void write_nmi_csv(const std::vector<std::string>& labels, const std::vector<std::vector<double>>& values,
                   const std::filesystem::path& path) {
    auto out = csv::open_out(path);
    out << "run";
    for (const auto& l : labels) out << ',' << csv::quote(l);
    out << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << csv::quote(labels[i]);
        for (double v : values[i]) out << ',' << csv::format_exact(v);
        out << '\n';
    }
}

void write_experiment(const std::vector<SliceResult>& results, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json summary;
    summary["slices"] = nlohmann::ordered_json::array();
    auto bars = csv::open_out(dir / "summary.csv");
    bars << "slice,run,imbalance_total,imbalance_percent,k\n";

    for (const auto& res : results) {
        const std::string label = res.slice.label();
        nlohmann::ordered_json s;
        s["label"] = label;
        if (res.slice.policy) s["policy"] = *res.slice.policy;
        if (res.slice.period && res.slice.period->from) s["from"] = format_date(*res.slice.period->from);
        if (res.slice.period && res.slice.period->to) s["to"] = format_date(*res.slice.period->to);
        s["skipped"] = res.skipped;
        if (res.skipped) {
            s["reason"] = res.skip_reason;
            summary["slices"].push_back(s);
            continue;
        }
        s["documents"] = res.document_count;
        s["nodes"] = res.graph.node_count();
        s["links"] = res.graph.link_count();

        const auto slice_dir = dir / label;
        std::filesystem::create_directories(slice_dir);
        write_signed_graph(res.graph, slice_dir / "graph.csv");
        nlohmann::ordered_json runs = nlohmann::ordered_json::object();
        std::vector<std::string> keys;
        for (const auto& r : res.reports) {
            const std::string key = run_key(r);
            keys.push_back(key);
            runs[key] = report_object(r);
            write_partition(r.partition, res.graph.nodes(), slice_dir / ("partition_" + sanitize(key) + ".csv"));
            bars << csv::quote(label) << ',' << csv::quote(key) << ',' << csv::format_exact(r.imbalance.total)
                 << ',' << csv::format_exact(r.imbalance.percent_of_total_weight) << ',' << r.cluster_count
                 << '\n';
        }
        s["runs"] = runs;
        write_nmi_csv(keys, res.nmi, slice_dir / "nmi.csv");
        summary["slices"].push_back(s);
    }
    auto out = csv::open_out(dir / "summary.json");
    out << summary.dump(2) << '\n';
}

}  // namespace votenet
