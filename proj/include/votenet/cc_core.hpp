#pragma once

// Partitions, the correlation-clustering imbalance objective and an exhaustive
// optimum for small graphs.

#include <cstddef>
#include <filesystem>
#include <utility>
#include <vector>

#include "votenet/signed_graph.hpp"

namespace votenet {

// Cluster label per node, indexed like the graph's nodes.
class Partition {
public:
    Partition() = default;
    // Labels must be non-negative; they need not be contiguous.
    explicit Partition(std::vector<int> labels);

    static Partition single_cluster(std::size_t n) { return Partition(std::vector<int>(n, 0)); }
    static Partition singletons(std::size_t n);

    std::size_t size() const { return labels_.size(); }
    int operator[](std::size_t node) const { return labels_[node]; }
    const std::vector<int>& labels() const { return labels_; }
    // Number of distinct labels.
    std::size_t cluster_count() const { return k_; }
    // One past the largest label in use.
    int label_bound() const { return bound_; }

    bool operator==(const Partition& o) const { return labels_ == o.labels_; }

private:
    std::vector<int> labels_;
    std::size_t k_ = 0;
    int bound_ = 0;
};

// Relabels clusters 0..k-1 in order of first occurrence. Idempotent.
Partition normalize(const Partition& p);

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

struct ImbalanceBreakdown {
    double uncut_negative_weight = 0.0;
    double cut_positive_weight = 0.0;
    double total = 0.0;
    // 100 * total / total link weight, 0 for a linkless graph.
    double percent_of_total_weight = 0.0;
    std::size_t violated_links = 0;
    // 100 * violated_links / link count, 0 for a linkless graph.
    double percent_of_link_count = 0.0;
};

// Throws InputError when p does not cover exactly the nodes of g.
ImbalanceBreakdown imbalance(const SignedGraph& g, const Partition& p);

inline constexpr int kNewCluster = -1;

// I(P') - I(P) for moving `node` to `target` (a label, or kNewCluster), using
// only the node's incident links. Throws InputError if target is the node's
// current cluster.
double move_delta(const SignedGraph& g, const Partition& p, std::size_t node, int target);

inline constexpr std::size_t kDefaultBruteForceCap = 12;

// Global minimizer over all set partitions. Ties go to fewer clusters, then to
// the lexicographically smallest normalized assignment. Throws InputError when
// the graph has more than max_nodes nodes.
std::pair<Partition, ImbalanceBreakdown> brute_force_optimum(
    const SignedGraph& g, std::size_t max_nodes = kDefaultBruteForceCap);

// `node_id,cluster` with normalized labels.
void write_partition(const Partition& p, const NodeIndex& nodes, const std::filesystem::path& path);
// Every node must appear exactly once; unknown ids are rejected.
Partition read_partition(const std::filesystem::path& path, const NodeIndex& nodes);

}  // namespace votenet
