#include "votenet/cc_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "csv.hpp"
#include "votenet/error.hpp"

namespace votenet {

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
    std::vector<char> seen;
    for (int l : labels_) {
        if (l < 0) throw InputError("negative cluster label");
        if (static_cast<std::size_t>(l) >= seen.size()) seen.resize(static_cast<std::size_t>(l) + 1, 0);
        if (!seen[static_cast<std::size_t>(l)]) {
            seen[static_cast<std::size_t>(l)] = 1;
            ++k_;
        }
    }
    bound_ = static_cast<int>(seen.size());
}

Partition Partition::singletons(std::size_t n) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i);
    return Partition(std::move(labels));
}

Partition normalize(const Partition& p) {
    std::unordered_map<int, int> relabel;
    std::vector<int> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto [it, fresh] = relabel.emplace(p[i], static_cast<int>(relabel.size()));
        out[i] = it->second;
    }
    return Partition(std::move(out));
}

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        compensation_ += (sum_ - t) + x;
    else
        compensation_ += (x - t) + sum_;
    sum_ = t;
}

static void require_cover(const SignedGraph& g, const Partition& p) {
    if (p.size() != g.node_count())
        throw InputError("partition assigns " + std::to_string(p.size()) + " nodes but the graph has " +
                         std::to_string(g.node_count()) + " (unassigned node)");
}

ImbalanceBreakdown imbalance(const SignedGraph& g, const Partition& p) {
    require_cover(g, p);
    CompensatedSum negative, positive, all;
    ImbalanceBreakdown b;
    for (const auto& l : g.links()) {
        all.add(l.weight);
        const bool same = p[l.u] == p[l.v];
        if (l.sign == Sign::Negative && same) {
            negative.add(l.weight);
            ++b.violated_links;
        } else if (l.sign == Sign::Positive && !same) {
            positive.add(l.weight);
            ++b.violated_links;
        }
    }
    b.uncut_negative_weight = negative.value();
    b.cut_positive_weight = positive.value();
    b.total = b.uncut_negative_weight + b.cut_positive_weight;
    const double w = all.value();
    b.percent_of_total_weight = w > 0.0 ? 100.0 * b.total / w : 0.0;
    b.percent_of_link_count =
        g.link_count() > 0 ? 100.0 * static_cast<double>(b.violated_links) / static_cast<double>(g.link_count())
                           : 0.0;
    return b;
}

double move_delta(const SignedGraph& g, const Partition& p, std::size_t node, int target) {
    require_cover(g, p);
    if (node >= g.node_count()) throw InputError("node index out of range");
    const int current = p[node];
    if (target == current) throw InputError("move target equals the node's current cluster");
    // Links to the old cluster: negatives stop being uncut, positives become cut.
    // Links to the target cluster: negatives become uncut, positives stop being cut.
    double delta = 0.0;
    for (const auto& nb : g.neighbors(node)) {
        const int c = p[nb.node];
        const double s = nb.sign == Sign::Negative ? nb.weight : -nb.weight;
        if (c == current) delta -= s;
        else if (c == target) delta += s;
    }
    return delta;
}

namespace {

// Restricted-growth-string enumeration with incremental cost.
class SetPartitionSearch {
public:
    explicit SetPartitionSearch(const SignedGraph& g) : g_(g), labels_(g.node_count(), 0) {}

    std::vector<int> run() {
        if (g_.node_count() == 0) return {};
        descend(0, 0, 0.0);
        return best_labels_;
    }

private:
    // Cost contributed by node i's links to earlier nodes when labelled c.
    double cost_of(std::size_t i, int c) const {
        double cost = 0.0;
        for (const auto& nb : g_.neighbors(i)) {
            if (nb.node >= i) continue;
            const bool same = labels_[nb.node] == c;
            if ((nb.sign == Sign::Negative) == same) cost += nb.weight;
        }
        return cost;
    }

    void descend(std::size_t i, int used, double cost) {
        if (i == labels_.size()) {
            const auto k = static_cast<std::size_t>(used);
            const double tol = 1e-12 * (1.0 + std::abs(best_cost_));
            if (cost < best_cost_ - tol || (std::abs(cost - best_cost_) <= tol && k < best_k_)) {
                best_cost_ = cost;
                best_k_ = k;
                best_labels_ = labels_;
            }
            return;
        }
        for (int c = 0; c <= used; ++c) {
            labels_[i] = c;
            descend(i + 1, std::max(used, c + 1), cost + cost_of(i, c));
        }
    }

    const SignedGraph& g_;
    std::vector<int> labels_;
    std::vector<int> best_labels_;
    double best_cost_ = std::numeric_limits<double>::infinity();
    std::size_t best_k_ = std::numeric_limits<std::size_t>::max();
};

}  // namespace

std::pair<Partition, ImbalanceBreakdown> brute_force_optimum(const SignedGraph& g, std::size_t max_nodes) {
    if (g.node_count() > max_nodes)
        throw InputError("brute force is capped at " + std::to_string(max_nodes) + " nodes, graph has " +
                         std::to_string(g.node_count()));
    Partition best(SetPartitionSearch(g).run());
    auto breakdown = imbalance(g, best);
    return {std::move(best), breakdown};
}

void write_partition(const Partition& p, const NodeIndex& nodes, const std::filesystem::path& path) {
    if (p.size() != nodes.size()) throw InputError("partition size does not match node list");
    const Partition norm = normalize(p);
    auto out = csv::open_out(path);
    out << "node_id,cluster\n";
    for (std::size_t i = 0; i < norm.size(); ++i) out << csv::quote(nodes.ids()[i]) << ',' << norm[i] << '\n';
}

Partition read_partition(const std::filesystem::path& path, const NodeIndex& nodes) {
    const auto t = csv::read_file(path);
    csv::require_header(t, {"node_id", "cluster"});
    std::vector<int> labels(nodes.size(), -1);
    for (const auto& row : t.rows) {
        csv::require_arity(t, row, 2);
        const auto idx = nodes.find(row.fields[0]);
        if (!idx) csv::fail_at(t, row.line, 1, "unknown node '" + row.fields[0] + "'");
        const long long c = csv::parse_int(t, row, 1);
        if (c < 0 || c > std::numeric_limits<int>::max()) csv::fail_at(t, row.line, 2, "invalid cluster label");
        if (labels[*idx] != -1) csv::fail_at(t, row.line, 1, "node '" + row.fields[0] + "' assigned twice");
        labels[*idx] = static_cast<int>(c);
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == -1) throw InputError(t.path + ": unassigned node '" + nodes.ids()[i] + "'");
    return Partition(std::move(labels));
}

}  // namespace votenet
