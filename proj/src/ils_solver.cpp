#include "votenet/ils_solver.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "csv.hpp"
#include "votenet/error.hpp"

namespace votenet {

namespace {

constexpr double kImprovementEps = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<std::size_t> shuffled_nodes(std::size_t n, Rng& rng) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

// Per-cluster positive/negative weight from one node, reset between nodes.
class ClusterTally {
public:
    void reset_for(std::size_t bound) {
        for (int c : touched_) pos_[static_cast<std::size_t>(c)] = neg_[static_cast<std::size_t>(c)] = 0.0;
        touched_.clear();
        if (pos_.size() < bound) {
            pos_.resize(bound, 0.0);
            neg_.resize(bound, 0.0);
            seen_.resize(bound, 0);
        }
    }
    void add(int c, double w, Sign s) {
        const auto i = static_cast<std::size_t>(c);
        if (!seen_[i]) {
            seen_[i] = 1;
            touched_.push_back(c);
        }
        (s == Sign::Positive ? pos_ : neg_)[i] += w;
    }
    void finish() {
        for (int c : touched_) seen_[static_cast<std::size_t>(c)] = 0;
        std::sort(touched_.begin(), touched_.end());
    }
    // negative minus positive weight from the node into cluster c
    double balance(int c) const {
        const auto i = static_cast<std::size_t>(c);
        return i < pos_.size() ? neg_[i] - pos_[i] : 0.0;
    }
    double positive(int c) const {
        const auto i = static_cast<std::size_t>(c);
        return i < pos_.size() ? pos_[i] : 0.0;
    }
    const std::vector<int>& touched() const { return touched_; }

private:
    std::vector<double> pos_, neg_;
    std::vector<char> seen_;
    std::vector<int> touched_;
};

}  // namespace

void IlsConfig::validate() const {
    if (!(neighbor_visit_probability > 0.0 && neighbor_visit_probability <= 1.0))
        throw InputError("neighbor visit probability must lie in (0, 1]");
    if (perturbation_level < 1) throw InputError("perturbation level must be positive");
    if (max_iterations_without_improvement < 1)
        throw InputError("max iterations without improvement must be positive");
    if (worker_count < 1) throw InputError("worker count must be positive");
    if (time_limit && !(time_limit->count() > 0.0)) throw InputError("time limit must be positive");
    if (construction_starts < 1) throw InputError("construction starts must be positive");
}

Partition greedy_construct(const SignedGraph& g, std::uint64_t rng_seed) {
    const std::size_t n = g.node_count();
    Rng rng(rng_seed);
    std::vector<int> labels(n, -1);
    int clusters = 0;
    ClusterTally tally;
    for (std::size_t v : shuffled_nodes(n, rng)) {
        tally.reset_for(static_cast<std::size_t>(clusters) + 1);
        for (const auto& nb : g.neighbors(v))
            if (labels[nb.node] >= 0) tally.add(labels[nb.node], nb.weight, nb.sign);
        tally.finish();
        // Joining c costs neg(c) + (placed positive - pos(c)); a new cluster costs
        // all placed positive weight, so c wins iff neg(c) - pos(c) < 0.
        int best = -1;
        double best_gain = -kImprovementEps;
        for (int c : tally.touched()) {
            const double b = tally.balance(c);
            if (b < best_gain) {
                best_gain = b;
                best = c;
            }
        }
        labels[v] = best >= 0 ? best : clusters++;
    }
    return normalize(Partition(std::move(labels)));
}

Partition local_search(const SignedGraph& g, const Partition& p, const IlsConfig& cfg, Rng& rng) {
    const std::size_t n = g.node_count();
    if (p.size() != n) throw InputError("partition does not cover the graph");
    const Partition start = normalize(p);
    std::vector<int> labels = start.labels();
    std::vector<std::size_t> sizes(start.cluster_count(), 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
    std::vector<int> free_labels;

    const double prob = cfg.neighbor_visit_probability;
    std::bernoulli_distribution visit(prob);
    auto sampled = [&] { return prob >= 1.0 || visit(rng); };

    ClusterTally tally;
    std::vector<double> between;  // signed inter-cluster weight, negative links positive
    while (true) {
        bool moved = false;
        for (std::size_t v : shuffled_nodes(n, rng)) {
            tally.reset_for(sizes.size());
            for (const auto& nb : g.neighbors(v)) tally.add(labels[nb.node], nb.weight, nb.sign);
            tally.finish();
            const int cur = labels[v];
            const double leave = -tally.balance(cur);

            int best = cur;
            double best_delta = -kImprovementEps;
            for (std::size_t c = 0; c < sizes.size(); ++c) {
                const int t = static_cast<int>(c);
                if (t == cur || sizes[c] == 0 || !sampled()) continue;
                const double delta = leave + tally.balance(t);
                if (delta < best_delta) {
                    best_delta = delta;
                    best = t;
                }
            }
            // A new cluster ranks after every existing one.
            if (sizes[static_cast<std::size_t>(cur)] > 1 && sampled() && leave < best_delta) {
                best_delta = leave;
                best = kNewCluster;
            }
            if (best == cur) continue;
            if (best == kNewCluster) {
                if (!free_labels.empty()) {
                    best = free_labels.back();
                    free_labels.pop_back();
                } else {
                    best = static_cast<int>(sizes.size());
                    sizes.push_back(0);
                }
            }
            if (--sizes[static_cast<std::size_t>(cur)] == 0) free_labels.push_back(cur);
            ++sizes[static_cast<std::size_t>(best)];
            labels[v] = best;
            moved = true;
        }
        if (moved) continue;

        // Merging a and b uncuts every link between them.
        const std::size_t bound = sizes.size();
        between.assign(bound * bound, 0.0);
        for (const auto& l : g.links()) {
            const auto a = static_cast<std::size_t>(labels[l.u]), b = static_cast<std::size_t>(labels[l.v]);
            if (a == b) continue;
            const double w = l.sign == Sign::Negative ? l.weight : -l.weight;
            between[std::min(a, b) * bound + std::max(a, b)] += w;
        }
        std::size_t keep = bound, absorb = bound;
        double best_delta = -kImprovementEps;
        for (std::size_t a = 0; a < bound; ++a) {
            if (sizes[a] == 0) continue;
            for (std::size_t b = a + 1; b < bound; ++b) {
                if (sizes[b] == 0 || between[a * bound + b] >= best_delta || !sampled()) continue;
                best_delta = between[a * bound + b];
                keep = a;
                absorb = b;
            }
        }
        if (keep == bound) break;
        for (auto& l : labels)
            if (l == static_cast<int>(absorb)) l = static_cast<int>(keep);
        sizes[keep] += sizes[absorb];
        sizes[absorb] = 0;
        free_labels.push_back(static_cast<int>(absorb));
    }
    return normalize(Partition(std::move(labels)));
}

Partition perturb(const Partition& p, int level, Rng& rng) {
    if (level < 1) throw InputError("perturbation level must be positive");
    const std::size_t n = p.size();
    const std::size_t count = std::min(static_cast<std::size_t>(level), n);
    std::vector<std::size_t> nodes(n);
    std::iota(nodes.begin(), nodes.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(nodes[i], nodes[pick(rng)]);
    }
    Partition cur = normalize(p);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<int> labels = cur.labels();
        const auto k = static_cast<int>(cur.cluster_count());
        // label k is the fresh cluster
        std::uniform_int_distribution<int> target(0, k);
        labels[nodes[i]] = target(rng);
        cur = normalize(Partition(std::move(labels)));
    }
    return cur;
}

SolveResult solve(const SignedGraph& g, const IlsConfig& cfg) {
    cfg.validate();
    if (g.node_count() == 0) throw InputError("cannot solve an empty graph");
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    const auto timed_out = [&] {
        return cfg.time_limit && Clock::now() - started >= *cfg.time_limit;
    };

    std::mutex mu;
    Partition shared_best;
    double shared_total = std::numeric_limits<double>::infinity();
    SolveTrace trace;

    auto chain = [&](int worker) {
        Rng rng(splitmix64(cfg.rng_seed + static_cast<std::uint64_t>(worker) * 0x9e3779b97f4a7c15ULL));
        Partition best;
        double best_total = std::numeric_limits<double>::infinity();
        for (int start = 0; start < cfg.construction_starts; ++start) {
            Partition p = local_search(g, greedy_construct(g, rng()), cfg, rng);
            const double total = imbalance(g, p).total;
            if (total < best_total - kImprovementEps) {
                best = std::move(p);
                best_total = total;
            }
        }
        {
            std::lock_guard lock(mu);
            if (best_total < shared_total) {
                shared_total = best_total;
                shared_best = best;
            }
            trace.restarts += static_cast<std::size_t>(cfg.construction_starts - 1);
            trace.best_imbalance_per_iteration.push_back(shared_total);
        }
        int stale = 0;
        while (stale < cfg.max_iterations_without_improvement && !timed_out()) {
            {
                std::lock_guard lock(mu);
                if (shared_total < best_total - kImprovementEps) {
                    best = shared_best;
                    best_total = shared_total;
                    ++trace.adoptions;
                }
            }
            Partition candidate = local_search(g, perturb(best, cfg.perturbation_level, rng), cfg, rng);
            const double total = imbalance(g, candidate).total;
            std::lock_guard lock(mu);
            if (total < best_total - kImprovementEps) {
                best = std::move(candidate);
                best_total = total;
                stale = 0;
                if (best_total < shared_total) {
                    shared_total = best_total;
                    shared_best = best;
                }
            } else {
                ++stale;
            }
            ++trace.iterations_run;
            trace.best_imbalance_per_iteration.push_back(shared_total);
        }
    };

    if (cfg.worker_count == 1) {
        chain(0);
    } else {
        std::vector<std::jthread> workers;
        for (int w = 0; w < cfg.worker_count; ++w) workers.emplace_back(chain, w);
    }

    IlsConfig polish_cfg = cfg;
    polish_cfg.neighbor_visit_probability = 1.0;
    Rng polish_rng(splitmix64(cfg.rng_seed ^ 0x5bd1e995ULL));
    Partition final = local_search(g, shared_best, polish_cfg, polish_rng);
    ImbalanceBreakdown breakdown = imbalance(g, final);
    if (breakdown.total > shared_total) {
        // polish found nothing better; keep the incumbent
        final = normalize(shared_best);
        breakdown = imbalance(g, final);
    }
    if (trace.best_imbalance_per_iteration.back() != breakdown.total)
        trace.best_imbalance_per_iteration.push_back(breakdown.total);
    trace.wall_time = Clock::now() - started;
    return {std::move(final), breakdown, std::move(trace)};
}

void write_trace(const SolveTrace& trace, const std::filesystem::path& path) {
    auto out = csv::open_out(path);
    out << "iteration,best_imbalance\n";
    for (std::size_t i = 0; i < trace.best_imbalance_per_iteration.size(); ++i)
        out << i << ',' << csv::format_exact(trace.best_imbalance_per_iteration[i]) << '\n';
}

}  // namespace votenet
