#pragma once

// Community detection on unsigned views of a signed graph: greedy modularity
// agglomeration and divisive edge betweenness.

#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

#include "votenet/cc_core.hpp"
#include "votenet/report.hpp"
#include "votenet/signed_graph.hpp"

namespace votenet {

// Weighted Newman modularity; 0 for a graph without links. Throws InputError
// when p does not cover the graph.
double modularity(const UnsignedGraph& g, const Partition& p);

// Clusters are named by their smallest node index. For a merge, cluster_b is
// absorbed into cluster_a; for a split, cluster_b is the part broken off cluster_a.
struct DendrogramEvent {
    int cluster_a;
    int cluster_b;
};

struct Dendrogram {
    std::vector<DendrogramEvent> events;
    // levels[0] is the starting partition, levels[i + 1] follows events[i].
    std::vector<Partition> levels;
    std::vector<double> modularity;  // aligned with levels
    std::size_t best_level = 0;      // first level of maximum modularity
    // Edge betweenness only: link indices in removal order.
    std::vector<std::size_t> removed_links;
};

// Starts from singletons and merges the linked pair with the largest modularity
// gain (ties to the smallest pair) until no linked pair remains. Returns the
// maximum-modularity level.
std::pair<Partition, Dendrogram> fast_greedy(const UnsignedGraph& g);

// Repeatedly removes the link of highest shortest-path betweenness (length =
// 1/weight, ties to the smallest endpoint pair), recording every component
// split. Returns the level of maximum modularity on the original graph.
std::pair<Partition, Dendrogram> edge_betweenness_communities(const UnsignedGraph& g);

// Betweenness of every link, in the order of g.links(). Unordered pairs are counted once.
std::vector<double> edge_betweenness(const UnsignedGraph& g);

enum class BaselineAlgorithm { FastGreedy, EdgeBetweenness };
enum class GraphView { PositiveSubgraph, ComplementaryNegative };

std::string_view to_string(BaselineAlgorithm a);
std::string_view to_string(GraphView v);

// Derives the view, runs the algorithm on it, and scores the result on `g_signed`.
// The dendrogram is stored in `dendrogram` when given.
RunReport run_baseline(const SignedGraph& g_signed, BaselineAlgorithm algorithm, GraphView view,
                       double filler_weight = 1.0, Dendrogram* dendrogram = nullptr);

// `step,cluster_a,cluster_b,modularity`; step 0 is the starting level.
void write_dendrogram(const Dendrogram& d, const std::filesystem::path& path);

}  // namespace votenet
