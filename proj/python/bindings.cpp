#include <pybind11/chrono.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "votenet/agreement.hpp"
#include "votenet/analysis.hpp"
#include "votenet/baselines.hpp"
#include "votenet/cc_core.hpp"
#include "votenet/error.hpp"
#include "votenet/ils_solver.hpp"
#include "votenet/signed_graph.hpp"
#include "votenet/vote_data.hpp"

namespace py = pybind11;
using namespace votenet;

namespace {

std::optional<Date> to_date(const std::optional<std::string>& text) {
    if (!text) return std::nullopt;
    auto d = parse_date(*text);
    if (!d) throw InputError("expected YYYY-MM-DD, got '" + *text + "'");
    return d;
}

py::dict breakdown_dict(const ImbalanceBreakdown& b) {
    py::dict d;
    d["total"] = b.total;
    d["uncut_negative_weight"] = b.uncut_negative_weight;
    d["cut_positive_weight"] = b.cut_positive_weight;
    d["percent_of_total_weight"] = b.percent_of_total_weight;
    d["violated_links"] = b.violated_links;
    d["percent_of_link_count"] = b.percent_of_link_count;
    return d;
}

py::dict report_dict(const RunReport& r) {
    py::dict d;
    d["algorithm"] = r.algorithm;
    d["view"] = r.view;
    d["labels"] = r.partition.labels();
    d["imbalance"] = breakdown_dict(r.imbalance);
    d["k"] = r.cluster_count;
    d["modularity"] = r.modularity ? py::cast(*r.modularity) : py::none();
    d["wall_ms"] = r.wall_time.count();
    return d;
}

Partition to_partition(const std::vector<int>& labels) { return Partition(labels); }

SignedGraph make_signed(std::vector<std::string> nodes, const std::vector<py::tuple>& links) {
    std::vector<SignedLink> out;
    out.reserve(links.size());
    for (const auto& t : links) {
        if (t.size() != 4) throw InputError("signed links are (u, v, weight, sign) tuples");
        const int s = t[3].cast<int>();
        if (s != 1 && s != -1) throw InputError("link sign must be +1 or -1");
        out.push_back({t[0].cast<std::size_t>(), t[1].cast<std::size_t>(), t[2].cast<double>(),
                       s > 0 ? Sign::Positive : Sign::Negative});
    }
    return SignedGraph(std::move(nodes), std::move(out));
}

IlsConfig make_config(double neighbor_prob, int perturbation, int patience, std::optional<double> time_limit,
                      std::uint64_t seed, int workers, int starts) {
    IlsConfig cfg;
    cfg.neighbor_visit_probability = neighbor_prob;
    cfg.perturbation_level = perturbation;
    cfg.max_iterations_without_improvement = patience;
    if (time_limit) cfg.time_limit = std::chrono::duration<double>(*time_limit);
    cfg.rng_seed = seed;
    cfg.worker_count = workers;
    cfg.construction_starts = starts;
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Signed vote networks, minimum-imbalance partitions and community-detection baselines";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::enum_<VoteValue>(m, "VoteValue")
        .value("FOR", VoteValue::For)
        .value("AGAINST", VoteValue::Against)
        .value("ABSTAIN", VoteValue::Abstain)
        .value("ABSENT", VoteValue::Absent)
        .value("DID_NOT_VOTE", VoteValue::DidNotVote)
        .value("DOCUMENTED_ABSENCE", VoteValue::DocumentedAbsence);
    m.def("parse_vote_token", [](const std::string& token) {
        auto v = parse_vote_token(token);
        if (!v) throw InputError("unknown vote token '" + token + "'");
        return *v;
    });

    py::class_<WeightTable>(m, "WeightTable")
        .def_static("half_agreement", &WeightTable::half_agreement)
        .def_static("neutral_abstain", &WeightTable::neutral_abstain)
        .def_static("half_disagreement", &WeightTable::half_disagreement)
        .def_static("from_name", &WeightTable::from_name, py::arg("spec"))
        .def_static("custom", &WeightTable::custom, py::arg("entries"), py::arg("name") = "custom")
        .def_property_readonly("name", &WeightTable::name)
        .def("entry", &WeightTable::entry);
    m.def("score_pair", &score_pair, py::arg("u"), py::arg("v"), py::arg("table"));

    py::class_<VoteDataset>(m, "VoteDataset")
        .def_property_readonly("member_ids",
                               [](const VoteDataset& ds) {
                                   std::vector<std::string> ids;
                                   for (const auto& r : ds.members()) ids.push_back(r.mep_id);
                                   return ids;
                               })
        .def_property_readonly("document_ids",
                               [](const VoteDataset& ds) {
                                   std::vector<std::string> ids;
                                   for (const auto& r : ds.documents()) ids.push_back(r.doc_id);
                                   return ids;
                               })
        .def_property_readonly("policies", &VoteDataset::policies)
        .def("vote", &VoteDataset::vote, py::arg("member"), py::arg("document"))
        .def(py::self == py::self);
    m.def("load_dataset", &load_dataset, py::arg("documents"), py::arg("members"), py::arg("votes"));
    m.def("save_dataset", &save_dataset, py::arg("dataset"), py::arg("documents"), py::arg("members"),
          py::arg("votes"));
    m.def(
        "filter_dataset",
        [](const VoteDataset& ds, std::optional<std::string> policy, std::optional<std::string> date_from,
           std::optional<std::string> date_to) {
            std::optional<DatePeriod> period;
            if (date_from || date_to) period = DatePeriod{to_date(date_from), to_date(date_to)};
            return filter_dataset(ds, policy, period);
        },
        py::arg("dataset"), py::arg("policy") = py::none(), py::arg("date_from") = py::none(),
        py::arg("date_to") = py::none());

    m.def(
        "agreement_matrix",
        [](const VoteDataset& ds, const WeightTable& table, const std::string& denominator) {
            if (denominator != "all" && denominator != "cast")
                throw InputError("denominator must be 'all' or 'cast'");
            const auto a = agreement_matrix(ds, table,
                                            denominator == "cast" ? AgreementDenominator::BothCast
                                                                  : AgreementDenominator::AllDocuments);
            const auto n = static_cast<py::ssize_t>(a.size());
            py::array_t<double> out({n, n});
            auto view = out.mutable_unchecked<2>();
            for (py::ssize_t i = 0; i < n; ++i)
                for (py::ssize_t j = 0; j < n; ++j)
                    view(i, j) = i == j ? 0.0 : a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            return out;
        },
        py::arg("dataset"), py::arg("table"), py::arg("denominator") = "all");

    py::class_<SignedGraph>(m, "SignedGraph")
        .def(py::init(&make_signed), py::arg("node_ids"), py::arg("links"))
        .def_property_readonly("node_ids", [](const SignedGraph& g) { return g.nodes().ids(); })
        .def_property_readonly("node_count", &SignedGraph::node_count)
        .def_property_readonly("link_count", &SignedGraph::link_count)
        .def_property_readonly("total_weight", &SignedGraph::total_weight)
        .def_property_readonly("links",
                               [](const SignedGraph& g) {
                                   py::list out;
                                   for (const auto& l : g.links())
                                       out.append(py::make_tuple(l.u, l.v, l.weight, static_cast<int>(l.sign)));
                                   return out;
                               })
        .def(py::self == py::self);
    m.def(
        "graph_from_dataset",
        [](const VoteDataset& ds, const WeightTable& table) {
            return graph_from_agreement(agreement_matrix(ds, table));
        },
        py::arg("dataset"), py::arg("table"));
    m.def("read_signed_graph", &read_signed_graph, py::arg("path"));
    m.def("write_signed_graph", &write_signed_graph, py::arg("graph"), py::arg("path"));

    m.def(
        "imbalance", [](const SignedGraph& g, const std::vector<int>& labels) {
            return breakdown_dict(imbalance(g, to_partition(labels)));
        },
        py::arg("graph"), py::arg("labels"));
    m.attr("NEW_CLUSTER") = kNewCluster;
    m.def(
        "move_delta",
        [](const SignedGraph& g, const std::vector<int>& labels, std::size_t node, int target) {
            return move_delta(g, to_partition(labels), node, target);
        },
        py::arg("graph"), py::arg("labels"), py::arg("node"), py::arg("target"));
    m.def(
        "brute_force_optimum",
        [](const SignedGraph& g, std::size_t max_nodes) {
            auto [p, b] = brute_force_optimum(g, max_nodes);
            return py::make_tuple(p.labels(), b.total);
        },
        py::arg("graph"), py::arg("max_nodes") = kDefaultBruteForceCap);
    m.def("normalize", [](const std::vector<int>& labels) { return normalize(Partition(labels)).labels(); });
    m.def(
        "read_partition",
        [](const std::filesystem::path& path, const SignedGraph& g) { return read_partition(path, g.nodes()).labels(); },
        py::arg("path"), py::arg("graph"));
    m.def(
        "write_partition",
        [](const std::vector<int>& labels, const SignedGraph& g, const std::filesystem::path& path) {
            write_partition(Partition(labels), g.nodes(), path);
        },
        py::arg("labels"), py::arg("graph"), py::arg("path"));

    m.def(
        "solve",
        [](const SignedGraph& g, std::uint64_t seed, int workers, double neighbor_prob, int perturbation, int patience,
           std::optional<double> time_limit, int starts) {
            const auto cfg = make_config(neighbor_prob, perturbation, patience, time_limit, seed, workers, starts);
            SolveResult r;
            {
                py::gil_scoped_release release;
                r = solve(g, cfg);
            }
            py::dict d;
            d["labels"] = r.partition.labels();
            d["k"] = r.partition.cluster_count();
            d["imbalance"] = breakdown_dict(r.breakdown);
            d["trace"] = r.trace.best_imbalance_per_iteration;
            d["iterations"] = r.trace.iterations_run;
            d["wall_seconds"] = r.trace.wall_time.count();
            return d;
        },
        py::arg("graph"), py::arg("seed") = 0, py::arg("workers") = 1, py::arg("neighbor_prob") = 0.7,
        py::arg("perturbation") = 15, py::arg("patience") = 50, py::arg("time_limit") = py::none(),
        py::arg("starts") = 10);

    m.def(
        "run_baseline",
        [](const SignedGraph& g, const std::string& algorithm, const std::string& view, double filler) {
            if (algorithm != "fastgreedy" && algorithm != "edgebetweenness")
                throw InputError("algorithm must be 'fastgreedy' or 'edgebetweenness'");
            if (view != "positive" && view != "compneg") throw InputError("view must be 'positive' or 'compneg'");
            RunReport r;
            {
                py::gil_scoped_release release;
                r = run_baseline(g,
                                 algorithm == "fastgreedy" ? BaselineAlgorithm::FastGreedy
                                                           : BaselineAlgorithm::EdgeBetweenness,
                                 view == "positive" ? GraphView::PositiveSubgraph : GraphView::ComplementaryNegative,
                                 filler);
            }
            return report_dict(r);
        },
        py::arg("graph"), py::arg("algorithm") = "fastgreedy", py::arg("view") = "positive",
        py::arg("filler_weight") = 1.0);
    m.def(
        "positive_modularity",
        [](const SignedGraph& g, const std::vector<int>& labels) {
            return modularity(positive_subgraph(g), to_partition(labels));
        },
        py::arg("graph"), py::arg("labels"));

    m.def(
        "nmi", [](const std::vector<int>& p, const std::vector<int>& q) { return nmi(Partition(p), Partition(q)); },
        py::arg("p"), py::arg("q"));

    m.def(
        "generate_synthetic_votes",
        [](std::size_t members, std::size_t docs, std::size_t blocs, double cohesion, double abstain, double absence,
           std::uint64_t seed) {
            return generate_synthetic_votes(SyntheticSpec{members, docs, blocs, cohesion, abstain, absence, seed});
        },
        py::arg("members") = 60, py::arg("docs") = 100, py::arg("blocs") = 2, py::arg("cohesion") = 0.95,
        py::arg("abstain") = 0.05, py::arg("absence") = 0.1, py::arg("seed") = 0);
    m.def(
        "planted_blocs",
        [](std::size_t members, std::size_t blocs) {
            SyntheticSpec spec;
            spec.n_members = members;
            spec.n_blocs = blocs;
            return planted_blocs(spec).labels();
        },
        py::arg("members"), py::arg("blocs") = 2);
}
