#include <doctest.h>

#include <fstream>

#include "test_support.hpp"
#include "votenet/cc_core.hpp"
#include "votenet/error.hpp"

using namespace votenet;
using namespace votenet::testing;

namespace {

// ab:+1, ac:+1, bc:-1
SignedGraph frustrated_triangle() {
    return SignedGraph({"a", "b", "c"},
                       {{0, 1, 1.0, Sign::Positive}, {0, 2, 1.0, Sign::Positive}, {1, 2, 1.0, Sign::Negative}});
}

SignedGraph complete(std::size_t n, Sign s, double w = 1.0) {
    std::vector<SignedLink> links;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) links.push_back({u, v, w, s});
    return SignedGraph(node_names(n), std::move(links));
}

}  // namespace

TEST_CASE("imbalance extremes") {
    const auto pos = complete(5, Sign::Positive);
    CHECK(imbalance(pos, Partition::single_cluster(5)).total == 0.0);

    const auto neg = complete(5, Sign::Negative, 0.5);
    const auto one = imbalance(neg, Partition::single_cluster(5));
    CHECK(one.total == 5.0);
    CHECK(one.uncut_negative_weight == 5.0);
    CHECK(one.percent_of_total_weight == 100.0);
    CHECK(one.percent_of_link_count == 100.0);
    CHECK(imbalance(neg, Partition::singletons(5)).total == 0.0);

    const SignedGraph empty({"a", "b"}, {});
    CHECK(imbalance(empty, Partition::singletons(2)).percent_of_total_weight == 0.0);
}

TEST_CASE("frustrated triangle: every partition costs at least 1") {
    const auto g = frustrated_triangle();
    // all five set partitions of {a, b, c}
    const std::vector<std::vector<int>> all = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
    const std::vector<double> expected = {1.0, 1.0, 1.0, 3.0, 2.0};
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto b = imbalance(g, Partition(all[i]));
        CHECK(b.total == expected[i]);
        CHECK(b.total == b.uncut_negative_weight + b.cut_positive_weight);
        CHECK(b.total == oracle_imbalance(g, all[i]));
    }
    CHECK(imbalance(g, Partition({0, 0, 1})).total == 1.0);
}

TEST_CASE("imbalance rejects partitions of the wrong size") {
    CHECK_THROWS_WITH_AS(imbalance(frustrated_triangle(), Partition({0, 0})), doctest::Contains("unassigned"),
                         InputError);
}

TEST_CASE("imbalance equals the weight of violated links and is relabel/scale consistent") {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto g = random_signed_graph(15, 0.5, 0.5, seed);
        const auto p = random_partition(15, 4, rng);
        const auto b = imbalance(g, p);
        CHECK(b.total == doctest::Approx(oracle_imbalance(g, p.labels())).epsilon(1e-12));
        CHECK(b.total <= g.total_weight() + 1e-12);
        CHECK(imbalance(g, normalize(p)).total == b.total);

        std::vector<SignedLink> halved = g.links();
        for (auto& l : halved) l.weight *= 0.5;
        const SignedGraph scaled(g.nodes().ids(), halved);
        CHECK(imbalance(scaled, p).total == doctest::Approx(0.5 * b.total).epsilon(1e-12));
    }
}

TEST_CASE("move_delta examples") {
    const auto g = frustrated_triangle();
    CHECK(move_delta(g, Partition::single_cluster(3), 2, kNewCluster) == 0.0);
    CHECK_THROWS_AS(move_delta(g, Partition({0, 0, 1}), 2, 1), InputError);

    const SignedGraph iso({"a", "b", "c"}, {{0, 1, 0.4, Sign::Negative}});
    CHECK(move_delta(iso, Partition({0, 0, 1}), 2, 0) == 0.0);
    CHECK(move_delta(iso, Partition({0, 0, 1}), 2, kNewCluster) == 0.0);
}

TEST_CASE("move_delta matches full recomputation on 200 random moves") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 19;
        const auto g = random_signed_graph(n, 0.5, 0.5, rng());
        const auto p = random_partition(n, 1 + static_cast<int>(rng() % 5), rng);
        const std::size_t node = rng() % n;
        int target = static_cast<int>(rng() % (p.label_bound() + 1));
        if (target == p[node]) target = kNewCluster;
        std::vector<int> moved = p.labels();
        moved[node] = target == kNewCluster ? p.label_bound() : target;
        const double expected = oracle_imbalance(g, moved) - oracle_imbalance(g, p.labels());
        CHECK(std::abs(move_delta(g, p, node, target) - expected) <= 1e-9);
    }
}

TEST_CASE("normalize") {
    CHECK(normalize(Partition({2, 0, 2})).labels() == std::vector<int>{0, 1, 0});
    const Partition already({0, 1, 0, 2});
    CHECK(normalize(already) == already);
    const Partition sparse({7, 3, 9, 3, 7});
    CHECK(normalize(sparse).cluster_count() == 3);
    CHECK(normalize(normalize(sparse)) == normalize(sparse));
}

TEST_CASE("brute_force_optimum") {
    SUBCASE("frustrated triangle") {
        const auto [p, b] = brute_force_optimum(frustrated_triangle());
        CHECK(b.total == 1.0);
        // fewest clusters among the cost-1 partitions: {abc}
        CHECK(p.cluster_count() == 1);
    }
    SUBCASE("complete positive graph") {
        const auto [p, b] = brute_force_optimum(complete(6, Sign::Positive));
        CHECK(b.total == 0.0);
        CHECK(p.cluster_count() == 1);
    }
    SUBCASE("two cliques joined by one negative link") {
        const auto g = two_cliques(4, {{0, 0}});
        const auto [p, b] = brute_force_optimum(g);
        CHECK(b.total == 0.0);
        CHECK(p == planted_halves(4));
    }
    SUBCASE("cap") {
        CHECK_THROWS_WITH_AS(brute_force_optimum(complete(13, Sign::Positive)), doctest::Contains("12"),
                             InputError);
        CHECK_NOTHROW(brute_force_optimum(complete(5, Sign::Negative), 5));
    }
    SUBCASE("agrees with labelling enumeration") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const std::size_t n = 2 + seed % 5;
            const auto g = random_signed_graph(n, 0.6, 0.5, seed);
            CHECK(brute_force_optimum(g).second.total == doctest::Approx(oracle_minimum(g)).epsilon(1e-12));
        }
    }
}

TEST_CASE("partition files") {
    TempDir dir;
    const NodeIndex nodes({"a", "b", "c", "d"});
    write_partition(Partition({5, 2, 5, 9}), nodes, dir / "p.csv");
    CHECK(read_partition(dir / "p.csv", nodes).labels() == std::vector<int>{0, 1, 0, 2});

    std::ofstream(dir / "missing.csv") << "node_id,cluster\na,0\nb,1\nc,0\n";
    CHECK_THROWS_WITH_AS(read_partition(dir / "missing.csv", nodes), doctest::Contains("unassigned node 'd'"),
                         InputError);
    std::ofstream(dir / "unknown.csv") << "node_id,cluster\na,0\nz,1\n";
    CHECK_THROWS_WITH_AS(read_partition(dir / "unknown.csv", nodes), doctest::Contains("unknown node"), InputError);
    std::ofstream(dir / "twice.csv") << "node_id,cluster\na,0\na,1\n";
    CHECK_THROWS_AS(read_partition(dir / "twice.csv", nodes), InputError);
}
