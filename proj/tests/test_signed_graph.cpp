#include <doctest.h>

#include <fstream>

#include "test_support.hpp"
#include "votenet/error.hpp"
#include "votenet/signed_graph.hpp"

using namespace votenet;
using namespace votenet::testing;

namespace {

SignedGraph mixed() {
    // ab:+0.6, bc:+0.25, cd:-0.5
    return SignedGraph({"a", "b", "c", "d"},
                       {{0, 1, 0.6, Sign::Positive}, {1, 2, 0.25, Sign::Positive}, {2, 3, 0.5, Sign::Negative}});
}

}  // namespace

TEST_CASE("graph construction rejects invalid links") {
    CHECK_THROWS_AS(SignedGraph({"a", "b"}, {{0, 0, 0.5, Sign::Positive}}), InputError);
    CHECK_THROWS_AS(SignedGraph({"a", "b"}, {{0, 1, 0.5, Sign::Positive}, {1, 0, 0.2, Sign::Negative}}),
                    InputError);
    CHECK_THROWS_AS(SignedGraph({"a", "b"}, {{0, 1, 0.0, Sign::Positive}}), InputError);
    CHECK_THROWS_AS(SignedGraph({"a", "b"}, {{0, 1, 1.5, Sign::Positive}}), InputError);
    CHECK_THROWS_AS(SignedGraph({"a", "a"}, {}), InputError);
}

TEST_CASE("graph_from_agreement maps signs and skips zeros") {
    AgreementMatrix m({"x", "y", "z"}, 3);
    m.set(0, 1, 0.6);
    m.set(0, 2, -0.5);
    m.set(1, 2, 0.0);
    const auto g = graph_from_agreement(m);
    REQUIRE(g.link_count() == 2);
    CHECK(g.links()[0] == SignedLink{0, 1, 0.6, Sign::Positive});
    CHECK(g.links()[1] == SignedLink{0, 2, 0.5, Sign::Negative});

    AgreementMatrix zeros({"x", "y", "z"}, 3);
    CHECK(graph_from_agreement(zeros).link_count() == 0);
    CHECK(graph_from_agreement(zeros).node_count() == 3);

    AgreementMatrix ones({"w", "x", "y", "z"}, 3);
    for (std::size_t u = 0; u < 4; ++u)
        for (std::size_t v = u + 1; v < 4; ++v) ones.set(u, v, 1.0);
    const auto full = graph_from_agreement(ones);
    CHECK(full.link_count() == 6);
    for (const auto& l : full.links()) CHECK((l.sign == Sign::Positive && l.weight == 1.0));
}

TEST_CASE("signed weights read back the nonzero agreement entries") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(-4, 4);
    AgreementMatrix m(node_names(7), 4);
    for (std::size_t u = 0; u < 7; ++u)
        for (std::size_t v = u + 1; v < 7; ++v) m.set(u, v, pick(rng) / 4.0);
    const auto g = graph_from_agreement(m);
    std::size_t nonzero = 0;
    for (std::size_t u = 0; u < 7; ++u)
        for (std::size_t v = u + 1; v < 7; ++v) nonzero += m.at(u, v) != 0.0;
    CHECK(g.link_count() == nonzero);
    for (const auto& l : g.links())
        CHECK((l.sign == Sign::Positive ? l.weight : -l.weight) == m.at(l.u, l.v));
}

TEST_CASE("positive and negative subgraphs split the links") {
    const auto g = mixed();
    const auto pos = positive_subgraph(g);
    const auto neg = negative_subgraph(g);
    CHECK(pos.link_count() == 2);
    CHECK(neg.link_count() == 1);
    CHECK(pos.node_count() == 4);
    CHECK(neg.node_count() == 4);
    CHECK(pos.links()[0] == UnsignedLink{0, 1, 0.6});
    CHECK(pos.links()[1] == UnsignedLink{1, 2, 0.25});

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = random_signed_graph(9, 0.6, 0.5, seed);
        const auto p = positive_subgraph(r), n = negative_subgraph(r);
        CHECK(p.link_count() + n.link_count() == r.link_count());
        std::size_t i = 0, j = 0;
        for (const auto& l : r.links()) {
            if (l.sign == Sign::Positive) CHECK(p.links()[i++] == UnsignedLink{l.u, l.v, l.weight});
            else CHECK(n.links()[j++] == UnsignedLink{l.u, l.v, l.weight});
        }
    }

    const SignedGraph all_neg({"a", "b", "c"}, {{0, 1, 1.0, Sign::Negative}, {1, 2, 1.0, Sign::Negative}});
    CHECK(positive_subgraph(all_neg).link_count() == 0);
    const SignedGraph all_pos({"a", "b", "c"}, {{0, 1, 1.0, Sign::Positive}});
    CHECK(negative_subgraph(all_pos).link_count() == 0);
}

TEST_CASE("complementary negative graph") {
    const SignedGraph g({"a", "b", "c", "d"}, {{0, 1, 0.6, Sign::Positive}, {2, 3, 0.4, Sign::Negative}});
    const auto c = complementary_negative_graph(g, 0.3);
    REQUIRE(c.link_count() == 5);
    CHECK(c.links()[0] == UnsignedLink{0, 1, 0.6});
    CHECK(c.links()[1] == UnsignedLink{0, 2, 0.3});
    CHECK(c.links()[2] == UnsignedLink{0, 3, 0.3});
    CHECK(c.links()[3] == UnsignedLink{1, 2, 0.3});
    CHECK(c.links()[4] == UnsignedLink{1, 3, 0.3});

    const SignedGraph none({"a", "b", "c", "d"}, {});
    CHECK(complementary_negative_graph(none).link_count() == 6);

    const SignedGraph every({"a", "b", "c"},
                            {{0, 1, 1.0, Sign::Negative}, {0, 2, 1.0, Sign::Negative}, {1, 2, 1.0, Sign::Negative}});
    CHECK(complementary_negative_graph(every).link_count() == 0);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = random_signed_graph(10, 0.5, 0.5, seed);
        std::size_t negatives = 0;
        for (const auto& l : r.links()) negatives += l.sign == Sign::Negative;
        CHECK(complementary_negative_graph(r).link_count() == 45 - negatives);
    }
    CHECK_THROWS_AS(complementary_negative_graph(g, 0.0), InputError);
}

TEST_CASE("edge lists round-trip bit-exactly and keep isolated nodes") {
    TempDir dir;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = random_signed_graph(12, 0.4, 0.5, seed);
        write_signed_graph(g, dir / "g.csv");
        CHECK(std::filesystem::exists(dir / "g.nodes.csv"));
        CHECK(read_signed_graph(dir / "g.csv") == g);

        const auto u = complementary_negative_graph(g, 0.7);
        write_unsigned_graph(u, dir / "u.csv");
        CHECK(read_unsigned_graph(dir / "u.csv") == u);
    }
    const SignedGraph isolated({"solo", "a", "b"}, {{1, 2, 0.1, Sign::Negative}});
    write_signed_graph(isolated, dir / "iso.csv");
    CHECK(read_signed_graph(dir / "iso.csv").node_count() == 3);
}

TEST_CASE("edge list without node list infers nodes; bad rows are rejected") {
    TempDir dir;
    std::ofstream(dir / "e.csv") << "source,target,weight,sign\nx,y,0.5,+\ny,z,1,-\n";
    const auto g = read_signed_graph(dir / "e.csv");
    CHECK(g.nodes().ids() == std::vector<std::string>{"x", "y", "z"});

    std::ofstream(dir / "bad.csv") << "source,target,weight,sign\nx,y,0.5,?\n";
    CHECK_THROWS_WITH_AS(read_signed_graph(dir / "bad.csv"), doctest::Contains("bad.csv:2: column 4"), InputError);
    std::ofstream(dir / "w.csv") << "source,target,weight,sign\nx,y,1.5,+\n";
    CHECK_THROWS_AS(read_signed_graph(dir / "w.csv"), InputError);
}
