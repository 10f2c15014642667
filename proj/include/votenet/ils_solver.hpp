#pragma once

// Iterated local search for minimum-imbalance partitions of signed graphs.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <vector>

#include "votenet/cc_core.hpp"

namespace votenet {

using Rng = std::mt19937_64;

struct IlsConfig {
    // Chance that each candidate move is evaluated during local search.
    double neighbor_visit_probability = 0.7;
    // Number of nodes reassigned at random per perturbation.
    int perturbation_level = 15;
    // Outer iterations a chain may go without improving before it stops.
    int max_iterations_without_improvement = 50;
    std::optional<std::chrono::duration<double>> time_limit;
    std::uint64_t rng_seed = 0;
    int worker_count = 1;
    // Greedy constructions (each followed by local search) a chain starts from;
    // the best becomes its incumbent.
    int construction_starts = 10;

    // Throws InputError on out-of-range fields.
    void validate() const;
};

struct SolveTrace {
    // Best known imbalance after each outer iteration (across all workers).
    std::vector<double> best_imbalance_per_iteration;
    std::size_t iterations_run = 0;
    std::chrono::duration<double> wall_time{0};
    // Greedy constructions beyond the first, summed over chains.
    std::size_t restarts = 0;
    // Times a chain adopted a better solution published by another chain.
    std::size_t adoptions = 0;
};

struct SolveResult {
    Partition partition;
    ImbalanceBreakdown breakdown;
    SolveTrace trace;
};

// Visits nodes in seeded random order and puts each into the already-built
// cluster with the lowest added imbalance, or a new cluster if none is strictly
// better. Result is normalized.
Partition greedy_construct(const SignedGraph& g, std::uint64_t rng_seed);

// Single-node relocation descent. Each candidate move (to another cluster or to a
// new one) is evaluated with probability cfg.neighbor_visit_probability; the best
// strictly improving evaluated move is applied (ties to the lowest label). When a
// full pass moves nothing, the best strictly improving merge of two clusters
// (sampled the same way) is applied and node passes resume. Stops when neither
// kind of move applies. Result is normalized.
Partition local_search(const SignedGraph& g, const Partition& p, const IlsConfig& cfg, Rng& rng);

// Reassigns min(level, n) distinct random nodes, each to a uniformly chosen
// cluster among the existing ones plus one fresh cluster. Result is normalized.
Partition perturb(const Partition& p, int level, Rng& rng);

// Runs cfg.worker_count cooperating chains and returns the best partition after
// a final full-neighborhood polish. Throws InputError for an empty graph.
SolveResult solve(const SignedGraph& g, const IlsConfig& cfg);

// `iteration,best_imbalance`
void write_trace(const SolveTrace& trace, const std::filesystem::path& path);

}  // namespace votenet
