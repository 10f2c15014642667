#include "votenet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "csv.hpp"
#include "votenet/error.hpp"

namespace votenet {

namespace {

constexpr double kTieEps = 1e-12;

std::size_t first_max(const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best] + kTieEps) best = i;
    return best;
}

// Component labels (smallest member index) over the links still marked alive.
std::vector<int> components(const UnsignedGraph& g, const std::vector<char>& alive,
                            const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj) {
    const std::size_t n = g.node_count();
    std::vector<int> label(n, -1);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        label[s] = static_cast<int>(s);
        stack.push_back(s);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto [w, e] : adj[v])
                if (alive[e] && label[w] < 0) {
                    label[w] = static_cast<int>(s);
                    stack.push_back(w);
                }
        }
    }
    return label;
}

using Adjacency = std::vector<std::vector<std::pair<std::size_t, std::size_t>>>;

Adjacency link_adjacency(const UnsignedGraph& g) {
    Adjacency adj(g.node_count());
    for (std::size_t e = 0; e < g.link_count(); ++e) {
        const auto& l = g.links()[e];
        adj[l.u].push_back({l.v, e});
        adj[l.v].push_back({l.u, e});
    }
    return adj;
}

// Brandes accumulation from each source in `sources`, adding pair dependencies
// onto `score` (each unordered pair contributes from both ends, halved later).
void accumulate_betweenness(const UnsignedGraph& g, const Adjacency& adj, const std::vector<char>& alive,
                            const std::vector<std::size_t>& sources, std::vector<double>& score) {
    const std::size_t n = g.node_count();
    std::vector<double> dist(n), sigma(n), delta(n);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preds(n);  // (node, link)
    std::vector<std::size_t> order;
    using Item = std::pair<double, std::size_t>;

    for (std::size_t s : sources) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();

        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[s] = 0.0;
        sigma[s] = 1.0;
        heap.push({0.0, s});
        std::vector<char> done(n, 0);
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (done[v]) continue;
            done[v] = 1;
            order.push_back(v);
            for (auto [w, e] : adj[v]) {
                if (!alive[e] || done[w]) continue;
                const double nd = d + 1.0 / g.links()[e].weight;
                const double tol = kTieEps * std::max(1.0, nd);
                if (nd < dist[w] - tol) {
                    dist[w] = nd;
                    sigma[w] = sigma[v];
                    preds[w].assign(1, {v, e});
                    heap.push({nd, w});
                } else if (std::abs(nd - dist[w]) <= tol) {
                    sigma[w] += sigma[v];
                    preds[w].push_back({v, e});
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const auto w = *it;
            for (auto [v, e] : preds[w]) {
                const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                score[e] += c;
                delta[v] += c;
            }
        }
    }
}

}  // namespace

double modularity(const UnsignedGraph& g, const Partition& p) {
    if (p.size() != g.node_count()) throw InputError("partition does not cover the graph (unassigned node)");
    const double total = g.total_weight();
    if (g.link_count() == 0 || total <= 0.0) return 0.0;
    const auto bound = static_cast<std::size_t>(p.label_bound());
    std::vector<double> inside(bound, 0.0), degree(bound, 0.0);
    for (const auto& l : g.links()) {
        const auto a = static_cast<std::size_t>(p[l.u]), b = static_cast<std::size_t>(p[l.v]);
        if (a == b) inside[a] += l.weight;
        degree[a] += l.weight;
        degree[b] += l.weight;
    }
    CompensatedSum q;
    for (std::size_t c = 0; c < bound; ++c) {
        const double share = degree[c] / (2.0 * total);
        q.add(inside[c] / total - share * share);
    }
    return q.value();
}

std::pair<Partition, Dendrogram> fast_greedy(const UnsignedGraph& g) {
    const std::size_t n = g.node_count();
    const double total = g.total_weight();
    Dendrogram d;
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i);
    d.levels.push_back(Partition(labels));
    if (g.link_count() == 0) {
        d.modularity.push_back(0.0);
        return {d.levels.front(), std::move(d)};
    }

    // e[i][j]: fraction of link ends joining clusters i and j; a[i]: degree share.
    std::vector<double> e(n * n, 0.0), a(n, 0.0);
    for (const auto& l : g.links()) {
        const double x = l.weight / (2.0 * total);
        e[l.u * n + l.v] += x;
        e[l.v * n + l.u] += x;
        a[l.u] += x;
        a[l.v] += x;
    }
    std::vector<char> active(n, 1);
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q -= a[i] * a[i];
    d.modularity.push_back(q);

    while (true) {
        std::size_t bi = n, bj = n;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j] || e[i * n + j] <= 0.0) continue;
                const double gain = 2.0 * (e[i * n + j] - a[i] * a[j]);
                if (gain > best_gain + kTieEps) {
                    best_gain = gain;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == n) break;
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            e[bi * n + k] += e[bj * n + k];
            e[k * n + bi] = e[bi * n + k];
        }
        a[bi] += a[bj];
        active[bj] = 0;
        for (auto& l : labels)
            if (l == static_cast<int>(bj)) l = static_cast<int>(bi);
        q += best_gain;
        d.events.push_back({static_cast<int>(bi), static_cast<int>(bj)});
        d.levels.push_back(Partition(labels));
        d.modularity.push_back(q);
    }
    d.best_level = first_max(d.modularity);
    Partition best = normalize(d.levels[d.best_level]);
    return {std::move(best), std::move(d)};
}

std::vector<double> edge_betweenness(const UnsignedGraph& g) {
    const auto adj = link_adjacency(g);
    std::vector<char> alive(g.link_count(), 1);
    std::vector<std::size_t> sources(g.node_count());
    for (std::size_t i = 0; i < sources.size(); ++i) sources[i] = i;
    std::vector<double> score(g.link_count(), 0.0);
    accumulate_betweenness(g, adj, alive, sources, score);
    for (auto& s : score) s /= 2.0;
    return score;
}

std::pair<Partition, Dendrogram> edge_betweenness_communities(const UnsignedGraph& g) {
    const std::size_t n = g.node_count();
    const std::size_t m = g.link_count();
    const auto adj = link_adjacency(g);
    std::vector<char> alive(m, 1);
    std::vector<int> comp = components(g, alive, adj);

    Dendrogram d;
    d.levels.push_back(Partition(comp));
    d.modularity.push_back(modularity(g, d.levels.back()));

    std::vector<double> score = edge_betweenness(g);
    for (std::size_t removed = 0; removed < m; ++removed) {
        std::size_t pick = m;
        for (std::size_t e = 0; e < m; ++e) {
            if (!alive[e]) continue;
            if (pick == m || score[e] > score[pick] * (1.0 + 1e-9) + kTieEps) pick = e;
        }
        alive[pick] = 0;
        d.removed_links.push_back(pick);
        const auto& link = g.links()[pick];

        std::vector<int> next = components(g, alive, adj);
        if (next[link.u] != next[link.v]) {
            const int lo = std::min(next[link.u], next[link.v]);
            const int hi = std::max(next[link.u], next[link.v]);
            d.events.push_back({lo, hi});
            d.levels.push_back(Partition(next));
            d.modularity.push_back(modularity(g, d.levels.back()));
        }
        comp = std::move(next);

        // Only paths inside the component(s) that held the removed link changed.
        std::vector<std::size_t> sources;
        for (std::size_t v = 0; v < n; ++v)
            if (comp[v] == comp[link.u] || comp[v] == comp[link.v]) sources.push_back(v);
        for (std::size_t e = 0; e < m; ++e) {
            const auto& l = g.links()[e];
            if (alive[e] && (comp[l.u] == comp[link.u] || comp[l.u] == comp[link.v])) score[e] = 0.0;
        }
        std::vector<double> fresh(m, 0.0);
        accumulate_betweenness(g, adj, alive, sources, fresh);
        for (std::size_t e = 0; e < m; ++e) {
            const auto& l = g.links()[e];
            if (alive[e] && (comp[l.u] == comp[link.u] || comp[l.u] == comp[link.v])) score[e] = fresh[e] / 2.0;
        }
    }
    d.best_level = first_max(d.modularity);
    Partition best = normalize(d.levels[d.best_level]);
    return {std::move(best), std::move(d)};
}

std::string_view to_string(BaselineAlgorithm a) {
    return a == BaselineAlgorithm::FastGreedy ? "fastgreedy" : "edgebetweenness";
}

std::string_view to_string(GraphView v) {
    return v == GraphView::PositiveSubgraph ? "positive" : "compneg";
}

RunReport run_baseline(const SignedGraph& g_signed, BaselineAlgorithm algorithm, GraphView view,
                       double filler_weight, Dendrogram* dendrogram) {
    const auto started = std::chrono::steady_clock::now();
    const UnsignedGraph projected = view == GraphView::PositiveSubgraph
                                        ? positive_subgraph(g_signed)
                                        : complementary_negative_graph(g_signed, filler_weight);
    auto [partition, dendrogram_out] = algorithm == BaselineAlgorithm::FastGreedy
                                       ? fast_greedy(projected)
                                       : edge_betweenness_communities(projected);
    RunReport r;
    r.algorithm = std::string(to_string(algorithm));
    r.view = std::string(to_string(view));
    r.imbalance = imbalance(g_signed, partition);
    r.cluster_count = partition.cluster_count();
    r.modularity = modularity(projected, partition);
    r.partition = std::move(partition);
    r.wall_time = std::chrono::steady_clock::now() - started;
    r.config = {{"algorithm", r.algorithm}, {"view", r.view}};
    if (view == GraphView::ComplementaryNegative)
        r.config.emplace_back("filler_weight", csv::format_exact(filler_weight));
    if (dendrogram) *dendrogram = std::move(dendrogram_out);
    return r;
}

void write_dendrogram(const Dendrogram& d, const std::filesystem::path& path) {
    auto out = csv::open_out(path);
    out << "step,cluster_a,cluster_b,modularity\n";
    for (std::size_t i = 0; i < d.modularity.size(); ++i) {
        out << i << ',';
        if (i > 0) out << d.events[i - 1].cluster_a << ',' << d.events[i - 1].cluster_b;
        else out << ',';
        out << ',' << csv::format_exact(d.modularity[i]) << '\n';
    }
}

}  // namespace votenet
