#include <doctest.h>

#include <fstream>

#include "test_support.hpp"
#include "votenet/error.hpp"
#include "votenet/ils_solver.hpp"

using namespace votenet;
using namespace votenet::testing;

namespace {

SignedGraph complete(std::size_t n, Sign s) {
    std::vector<SignedLink> links;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) links.push_back({u, v, 1.0, s});
    return SignedGraph(node_names(n), std::move(links));
}

IlsConfig full_neighborhood() {
    IlsConfig cfg;
    cfg.neighbor_visit_probability = 1.0;
    return cfg;
}

bool is_local_optimum(const SignedGraph& g, const Partition& p) {
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        for (int c = 0; c < p.label_bound(); ++c)
            if (c != p[v] && move_delta(g, p, v, c) < -1e-12) return false;
        if (move_delta(g, p, v, kNewCluster) < -1e-12) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("config validation") {
    IlsConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.neighbor_visit_probability = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.perturbation_level = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.worker_count = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.max_iterations_without_improvement = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.construction_starts = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("greedy_construct") {
    SUBCASE("two positive cliques with a negative bridge, every seed") {
        const auto g = two_cliques(4, {{0, 0}});
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto p = greedy_construct(g, seed);
            CHECK(imbalance(g, p).total == 0.0);
            CHECK(p.cluster_count() == 2);
        }
    }
    SUBCASE("single node") {
        const SignedGraph g({"only"}, {});
        CHECK(greedy_construct(g, 1).cluster_count() == 1);
    }
    SUBCASE("all-negative complete graph gives singletons") {
        const auto g = complete(6, Sign::Negative);
        const auto p = greedy_construct(g, 5);
        CHECK(p.cluster_count() == 6);
        CHECK(imbalance(g, p).total == brute_force_optimum(g).second.total);
    }
    SUBCASE("output is normalized") {
        const auto g = random_signed_graph(12, 0.5, 0.5, 9);
        const auto p = greedy_construct(g, 3);
        CHECK(normalize(p) == p);
    }
}

TEST_CASE("local_search") {
    Rng rng(1);
    SUBCASE("local optimum is a fixed point at probability 1") {
        const auto g = two_cliques(4, {{0, 0}, {1, 2}});
        const auto p = planted_halves(4);
        CHECK(local_search(g, p, full_neighborhood(), rng) == p);
    }
    SUBCASE("frustrated triangle reaches the optimum") {
        const SignedGraph g({"a", "b", "c"}, {{0, 1, 1.0, Sign::Positive},
                                              {0, 2, 1.0, Sign::Positive},
                                              {1, 2, 1.0, Sign::Negative}});
        const auto p = local_search(g, Partition::single_cluster(3), full_neighborhood(), rng);
        CHECK(imbalance(g, p).total == 1.0);
        const auto s = local_search(g, Partition::singletons(3), full_neighborhood(), rng);
        CHECK(imbalance(g, s).total == 1.0);
    }
    SUBCASE("never worsens, on 100 random instances") {
        std::mt19937_64 gen(77);
        IlsConfig cfg;  // default probability 0.7
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = 3 + gen() % 18;
            const auto g = random_signed_graph(n, 0.5, 0.5, gen());
            const auto p = random_partition(n, 4, gen);
            const auto out = local_search(g, p, cfg, rng);
            CHECK(imbalance(g, out).total <= imbalance(g, p).total + 1e-12);
            CHECK(out.size() == n);
        }
    }
    SUBCASE("probability 1 ends in a single-move local optimum") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto g = random_signed_graph(14, 0.5, 0.5, seed);
            const auto out = local_search(g, Partition::single_cluster(14), full_neighborhood(), rng);
            CHECK(is_local_optimum(g, out));
        }
    }
    SUBCASE("merges two clusters no single move can join") {
        // two positive 6-cliques; every cross pair is weakly positive except one
        // negative link, so the merge pays off but each single move would cut a clique
        std::vector<SignedLink> links;
        for (std::size_t u = 0; u < 12; ++u)
            for (std::size_t v = u + 1; v < 12; ++v) {
                if ((u < 6) == (v < 6)) links.push_back({u, v, 1.0, Sign::Positive});
                else if (u == 0 && v == 6) links.push_back({u, v, 0.5, Sign::Negative});
                else links.push_back({u, v, 0.1, Sign::Positive});
            }
        const SignedGraph g(node_names(12), std::move(links));
        const Partition split(std::vector<int>{0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1});
        CHECK(is_local_optimum(g, split));
        const auto out = local_search(g, split, full_neighborhood(), rng);
        CHECK(out.cluster_count() == 1);
        CHECK(imbalance(g, out).total == doctest::Approx(0.5));
    }
}

TEST_CASE("perturb") {
    Rng rng(4);
    const Partition p({0, 0, 1, 1, 2, 2, 3, 3, 4, 4});
    SUBCASE("output stays a normalized total assignment") {
        for (int level : {1, 3, 15, 50}) {
            for (int i = 0; i < 100; ++i) {
                const auto q = perturb(p, level, rng);
                CHECK(q.size() == 10);
                CHECK(normalize(q) == q);
                for (int l : q.labels()) CHECK((l >= 0 && l < static_cast<int>(q.cluster_count())));
            }
        }
    }
    CHECK_THROWS_AS(perturb(p, 0, rng), InputError);
}

TEST_CASE("perturb level one relocates at most one node") {
    // Labels are renormalized, so compare co-membership with one node left out.
    auto same_without = [](const Partition& a, const Partition& b, std::size_t skip) {
        for (std::size_t v = 0; v < a.size(); ++v)
            for (std::size_t w = v + 1; w < a.size(); ++w)
                if (v != skip && w != skip && (a[v] == a[w]) != (b[v] == b[w])) return false;
        return true;
    };
    Rng rng(8);
    const Partition p({0, 1, 2, 0, 1, 2, 0, 1, 2});
    for (int i = 0; i < 200; ++i) {
        const auto q = perturb(p, 1, rng);
        bool explained = false;
        for (std::size_t v = 0; v < p.size() && !explained; ++v) explained = same_without(p, q, v);
        CHECK(explained);
    }
}

TEST_CASE("solve") {
    SUBCASE("two 5-cliques with three negative links") {
        const auto g = two_cliques(5, {{0, 0}, {1, 3}, {4, 2}});
        const auto r = solve(g, IlsConfig{});
        CHECK(r.breakdown.total == 0.0);
        CHECK(r.partition == planted_halves(5));
    }
    SUBCASE("complete positive graph") {
        const auto r = solve(complete(7, Sign::Positive), IlsConfig{});
        CHECK(r.partition.cluster_count() == 1);
        CHECK(r.breakdown.total == 0.0);
    }
    SUBCASE("empty graph") {
        CHECK_THROWS_AS(solve(SignedGraph{}, IlsConfig{}), InputError);
    }
    SUBCASE("trace is monotone and ends at the returned total") {
        const auto g = random_signed_graph(30, 0.5, 0.5, 12);
        IlsConfig cfg;
        cfg.rng_seed = 99;
        const auto r = solve(g, cfg);
        const auto& t = r.trace.best_imbalance_per_iteration;
        REQUIRE(!t.empty());
        for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] <= t[i - 1]);
        CHECK(t.back() == r.breakdown.total);
        CHECK(r.trace.iterations_run >= static_cast<std::size_t>(cfg.max_iterations_without_improvement));
        CHECK(is_local_optimum(g, r.partition));
    }
    SUBCASE("seed determinism with one worker") {
        const auto g = random_signed_graph(25, 0.5, 0.5, 4);
        IlsConfig cfg;
        cfg.rng_seed = 17;
        const auto a = solve(g, cfg), b = solve(g, cfg);
        CHECK(a.partition == b.partition);
        CHECK(a.trace.best_imbalance_per_iteration == b.trace.best_imbalance_per_iteration);
    }
    SUBCASE("multiple workers and a time limit") {
        const auto g = random_signed_graph(25, 0.5, 0.5, 6);
        IlsConfig cfg;
        cfg.worker_count = 3;
        cfg.time_limit = std::chrono::duration<double>(5.0);
        const auto r = solve(g, cfg);
        CHECK(r.breakdown.total == doctest::Approx(imbalance(g, r.partition).total));
        const auto& t = r.trace.best_imbalance_per_iteration;
        for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] <= t[i - 1]);
        CHECK(is_local_optimum(g, r.partition));
    }
    SUBCASE("never below the exhaustive optimum") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto g = random_signed_graph(7, 0.5, 0.5, seed + 500);
            IlsConfig cfg;
            cfg.rng_seed = seed;
            CHECK(solve(g, cfg).breakdown.total >= brute_force_optimum(g).second.total - 1e-9);
        }
    }
}

TEST_CASE("trace CSV") {
    TempDir dir;
    SolveTrace t;
    t.best_imbalance_per_iteration = {3.5, 2.25, 2.25};
    write_trace(t, dir / "t.csv");
    std::ifstream in(dir / "t.csv");
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all == "iteration,best_imbalance\n0,3.5\n1,2.25\n2,2.25\n");
}
