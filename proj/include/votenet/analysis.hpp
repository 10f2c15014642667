#pragma once

// Partition comparison, synthetic roll-call data and the end-to-end experiment.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "votenet/agreement.hpp"
#include "votenet/baselines.hpp"
#include "votenet/ils_solver.hpp"
#include "votenet/report.hpp"
#include "votenet/vote_data.hpp"

namespace votenet {

// Normalized mutual information 2 I(p;q) / (H(p) + H(q)) with natural logs.
// Two single-cluster partitions score 1; if exactly one has zero entropy the
// score is 0. Throws InputError when sizes differ.
double nmi(const Partition& p, const Partition& q);

struct SyntheticSpec {
    std::size_t n_members = 60;
    std::size_t n_docs = 100;
    std::size_t n_blocs = 2;
    double cohesion = 0.95;      // chance a member follows its bloc line
    double abstain_rate = 0.05;
    double absence_rate = 0.1;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

// Members join blocs round-robin. For each document every bloc draws a For or
// Against line; members follow it with probability `cohesion`, then may be
// replaced by Absent (absence_rate) or Abstain (abstain_rate).
VoteDataset generate_synthetic_votes(const SyntheticSpec& spec);

// Bloc of each member, in member order.
Partition planted_blocs(const SyntheticSpec& spec);

struct Slice {
    std::optional<std::string> policy;
    std::optional<DatePeriod> period;

    // Filesystem-safe name, "all" for the unfiltered slice.
    std::string label() const;
};

struct BaselineRun {
    BaselineAlgorithm algorithm;
    GraphView view;
};

struct ExperimentOptions {
    AgreementDenominator denominator = AgreementDenominator::AllDocuments;
    double filler_weight = 1.0;
};

struct SliceResult {
    Slice slice;
    std::size_t document_count = 0;
    bool skipped = false;
    std::string skip_reason;
    SignedGraph graph;
    std::vector<RunReport> reports;          // ILS first, then baselines in request order
    std::vector<std::vector<double>> nmi;    // pairwise over reports
};

// Solves `g` and wraps the result as the "ils" report; the trace is moved into
// `trace` when given.
RunReport solve_report(const SignedGraph& g, const IlsConfig& cfg, SolveTrace* trace = nullptr);

// Run key used in summaries: "ils" or "<algorithm>/<view>".
std::string run_key(const RunReport& r);

// An empty slice list means one slice over the whole dataset. Slices with fewer
// than two documents are marked skipped.
std::vector<SliceResult> run_experiment(const VoteDataset& ds, const WeightTable& table,
                                        const std::vector<Slice>& slices, const IlsConfig& solver,
                                        const std::vector<BaselineRun>& baselines,
                                        const ExperimentOptions& options = {});

// Per slice: graph, partitions and NMI CSV under <dir>/<label>/; plus
// summary.json and summary.csv (imbalance percent and k per run) in <dir>.
void write_experiment(const std::vector<SliceResult>& results, const std::filesystem::path& dir);

// JSON object {imbalance_total, imbalance_percent, k, modularity?, wall_ms, ...}.
std::string report_json(const RunReport& r);

// Square CSV of NMI values with labelled rows and columns.
void write_nmi_csv(const std::vector<std::string>& labels, const std::vector<std::vector<double>>& values,
                   const std::filesystem::path& path);

}  // namespace votenet
