#pragma once

// Weighted signed graphs and the unsigned views fed to community detection.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "votenet/agreement.hpp"

namespace votenet {

enum class Sign : signed char { Negative = -1, Positive = 1 };

struct SignedLink {
    std::size_t u;  // u < v
    std::size_t v;
    double weight;  // (0, 1]
    Sign sign;

    bool operator==(const SignedLink&) const = default;
};

struct UnsignedLink {
    std::size_t u;  // u < v
    std::size_t v;
    double weight;  // (0, 1]

    bool operator==(const UnsignedLink&) const = default;
};

struct Neighbor {
    std::size_t node;
    double weight;
    Sign sign;
};

class NodeIndex {
public:
    NodeIndex() = default;
    explicit NodeIndex(std::vector<std::string> ids);

    const std::vector<std::string>& ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }
    std::optional<std::size_t> find(std::string_view id) const;

    bool operator==(const NodeIndex& o) const { return ids_ == o.ids_; }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::size_t> lookup_;
};

// Immutable simple undirected graph with a weight and a sign per link.
// Links are kept sorted by (u, v) with u < v.
class SignedGraph {
public:
    SignedGraph() = default;
    // Throws InputError on self-links, duplicate pairs, out-of-range nodes or
    // weights outside (0, 1]. Endpoints may be given in either order.
    SignedGraph(std::vector<std::string> node_ids, std::vector<SignedLink> links);

    const NodeIndex& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t link_count() const { return links_.size(); }
    const std::vector<SignedLink>& links() const { return links_; }
    const std::vector<Neighbor>& neighbors(std::size_t node) const { return adjacency_[node]; }
    double total_weight() const { return total_weight_; }

    bool operator==(const SignedGraph& o) const { return nodes_ == o.nodes_ && links_ == o.links_; }

private:
    NodeIndex nodes_;
    std::vector<SignedLink> links_;
    std::vector<std::vector<Neighbor>> adjacency_;
    double total_weight_ = 0.0;
};

struct WeightedNeighbor {
    std::size_t node;
    double weight;
};

class UnsignedGraph {
public:
    UnsignedGraph() = default;
    UnsignedGraph(std::vector<std::string> node_ids, std::vector<UnsignedLink> links);

    const NodeIndex& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t link_count() const { return links_.size(); }
    const std::vector<UnsignedLink>& links() const { return links_; }
    const std::vector<WeightedNeighbor>& neighbors(std::size_t node) const { return adjacency_[node]; }
    double total_weight() const { return total_weight_; }

    bool operator==(const UnsignedGraph& o) const { return nodes_ == o.nodes_ && links_ == o.links_; }

private:
    NodeIndex nodes_;
    std::vector<UnsignedLink> links_;
    std::vector<std::vector<WeightedNeighbor>> adjacency_;
    double total_weight_ = 0.0;
};

// Positive agreement becomes a positive link, negative a negative link of
// weight |m_uv|; zero agreement produces no link.
SignedGraph graph_from_agreement(const AgreementMatrix& m);

UnsignedGraph positive_subgraph(const SignedGraph& g);
UnsignedGraph negative_subgraph(const SignedGraph& g);

// Every unordered pair except the negative links. Positive links keep their
// weight, pairs without an original link get `filler_weight`.
UnsignedGraph complementary_negative_graph(const SignedGraph& g, double filler_weight = 1.0);

// Companion node list written next to an edge list: foo.csv -> foo.nodes.csv.
std::filesystem::path node_list_path(const std::filesystem::path& edge_list);

// `source,target,weight,sign` plus the node list companion.
void write_signed_graph(const SignedGraph& g, const std::filesystem::path& path);
// Uses the companion node list when present, otherwise nodes in order of first appearance.
SignedGraph read_signed_graph(const std::filesystem::path& path);

void write_unsigned_graph(const UnsignedGraph& g, const std::filesystem::path& path);
UnsignedGraph read_unsigned_graph(const std::filesystem::path& path);

}  // namespace votenet
