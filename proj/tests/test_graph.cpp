#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "graphos/graph.hpp"
#include "support/testutil.hpp"

using namespace graphos;
namespace tu = graphos::testutil;

TEST_CASE("from_edge_list") {
    Graph k2 = Graph::from_edge_list(2, {{1, 2}});
    CHECK(k2.vertex_count() == 2);
    CHECK(k2.edge_count() == 1);
    CHECK(k2.adjacent(0, 1));

    Graph c6 = Graph::from_edge_list(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}});
    CHECK(c6.edge_count() == 6);
    CHECK(c6.adjacent(0, 5));
    CHECK_FALSE(c6.adjacent(0, 3));

    CHECK_THROWS_AS(Graph::from_edge_list(3, {{1, 1}}), LoopEdge);
    CHECK_THROWS_AS(Graph::from_edge_list(3, {{1, 4}}), IndexOutOfRange);
    CHECK_THROWS_AS(Graph::from_edge_list(3, {{0, 2}}), IndexOutOfRange);

    // duplicates and reversed duplicates collapse
    Graph g = Graph::from_edge_list(3, {{1, 2}, {2, 1}, {1, 2}});
    CHECK(g.edge_count() == 1);
}

TEST_CASE("complement on fixed graphs") {
    CHECK(complement(tu::complete(3)).edge_count() == 0);
    CHECK(complement(tu::empty_graph(4)).edge_count() == 6);

    Graph cc4 = complement(tu::cycle(4));
    CHECK(cc4.edge_count() == 2);
    CHECK(cc4.adjacent(0, 2));
    CHECK(cc4.adjacent(1, 3));
}

TEST_CASE("complement is an involution and splits the pairs") {
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : tu::nonisomorphic_graphs(n)) {
            Graph cc = complement(complement(g));
            CHECK(tu::edge_mask(cc) == tu::edge_mask(g));
            CHECK(g.edge_count() + complement(g).edge_count() == n * (n - 1) / 2);
        }
}

TEST_CASE("strong product fixed cases") {
    Graph k4 = strong_product(tu::complete(2), tu::complete(2));
    CHECK(k4.vertex_count() == 4);
    CHECK(k4.edge_count() == 6);

    Graph c4 = tu::cycle(4);
    Graph same = strong_product(c4, tu::complete(1));
    CHECK(tu::edge_mask(same) == tu::edge_mask(c4));

    Graph p = strong_product(c4, tu::complete(2));
    CHECK(p.vertex_count() == 8);
    CHECK(p.edge_count() == 20);
}

TEST_CASE("strong product matches the clause oracle and the kron identity") {
    // every labeled pair with up to 4 vertices on each side
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m)
            for (const Graph& g : tu::all_labeled_graphs(n))
                for (const Graph& h : tu::all_labeled_graphs(m)) {
                    Graph p = strong_product(g, h);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < m; ++j)
                            for (int k = 0; k < n; ++k)
                                for (int l = 0; l < m; ++l) {
                                    if (i == k && j == l) continue;
                                    CHECK(p.adjacent(i * m + j, k * m + l) ==
                                          tu::strong_product_adjacent(g, h, i, j, k, l));
                                }
                    CHECK(frobenius_norm(r_matrix(p) - kron(r_matrix(g), r_matrix(h))) == 0.0);
                }
    // spot-check the kron identity at the 4-vertex scale
    std::mt19937_64 rng(2024);
    auto g4 = tu::nonisomorphic_graphs(4);
    for (const Graph& g : g4)
        for (const Graph& h : g4)
            CHECK(frobenius_norm(r_matrix(strong_product(g, h)) -
                                 kron(r_matrix(g), r_matrix(h))) == 0.0);
}

TEST_CASE("adjacency and pattern matrices") {
    DenseMatrix a = adjacency(tu::complete(2));
    CHECK(a(0, 1) == 1.0);
    CHECK(a(0, 0) == 0.0);
    for (int n : {2, 5}) {
        DenseMatrix r = r_matrix(tu::complete(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(r(i, j) == 1.0);
        DenseMatrix re = r_matrix(tu::empty_graph(n));
        CHECK(frobenius_norm(re - DenseMatrix::identity(n)) == 0.0);
    }
}

TEST_CASE("coperp basis") {
    CHECK(coperp_basis(tu::complete(5)).size() == 0);

    auto c6 = coperp_basis(tu::cycle(6));
    const std::vector<std::pair<int, int>> want{
        {1, 3}, {3, 1}, {1, 4}, {4, 1}, {1, 5}, {5, 1}, {2, 4}, {4, 2}, {2, 5},
        {5, 2}, {2, 6}, {6, 2}, {3, 5}, {5, 3}, {3, 6}, {6, 3}, {4, 6}, {6, 4}};
    CHECK(c6.pairs() == want);

    for (int n : {2, 4}) {
        auto b = coperp_basis(tu::empty_graph(n));
        CHECK(static_cast<int>(b.size()) == n * (n - 1));
    }

    // size identity and reversal-closure on every graph with <= 5 vertices
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : tu::nonisomorphic_graphs(n)) {
            auto b = coperp_basis(g);
            CHECK(static_cast<int>(b.size()) == n * (n - 1) - 2 * g.edge_count());
            std::set<std::pair<int, int>> s(b.pairs().begin(), b.pairs().end());
            for (const auto& [i, j] : s) CHECK(s.count({j, i}) == 1);
        }
}

TEST_CASE("coperp support of a strong product") {
    // kernel support of the product = (g-kernel x everything) + (everything x h-kernel)
    auto support_set = [](const Graph& g) {
        const CoperpBasis basis = coperp_basis(g);
        return std::set<std::pair<int, int>>(basis.pairs().begin(), basis.pairs().end());
    };
    for (int n = 2; n <= 3; ++n)
        for (int m = 2; m <= 3; ++m)
            for (const Graph& g : tu::all_labeled_graphs(n))
                for (const Graph& h : tu::all_labeled_graphs(m)) {
                    auto sp = support_set(strong_product(g, h));
                    auto sg = support_set(g);
                    auto sh = support_set(h);
                    std::set<std::pair<int, int>> expect;
                    for (int i = 1; i <= n; ++i)
                        for (int j = 1; j <= m; ++j)
                            for (int k = 1; k <= n; ++k)
                                for (int l = 1; l <= m; ++l) {
                                    if (i == k && j == l) continue;
                                    const bool in_g = i != k && sg.count({i, k});
                                    const bool in_h = j != l && sh.count({j, l});
                                    // E_ik (x) E_jl lies in the product kernel iff one
                                    // factor index pair is a kernel pair
                                    if (in_g || in_h)
                                        expect.insert({(i - 1) * m + j, (k - 1) * m + l});
                                }
                    CHECK(sp == expect);
                }
}

TEST_CASE("clique and chromatic numbers") {
    CHECK(clique_number(tu::cycle(5)) == 2);
    CHECK(chromatic_number(tu::cycle(5)) == 3);
    CHECK(clique_number(tu::cycle(6)) == 2);
    CHECK(chromatic_number(tu::cycle(6)) == 2);
    for (int n : {1, 3, 6}) {
        CHECK(clique_number(tu::complete(n)) == n);
        CHECK(chromatic_number(tu::complete(n)) == n);
    }

    // Petersen graph: triangle-free and 3-chromatic
    Graph petersen = Graph::from_edge_list(
        10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1},      // outer 5-cycle
             {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6},    // inner 5-cycle (pentagram)
             {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10}});   // spokes
    CHECK(clique_number(petersen) == 2);
    CHECK(chromatic_number(petersen) == 3);

    CHECK_THROWS_AS(clique_number(tu::empty_graph(17)), SizeCapExceeded);
    CHECK_THROWS_AS(chromatic_number(tu::empty_graph(17)), SizeCapExceeded);
}

TEST_CASE("clique and chromatic numbers match the brute-force oracles") {
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : tu::nonisomorphic_graphs(n)) {
            const int w = tu::brute_clique_number(g);
            const int x = tu::brute_chromatic_number(g);
            CHECK(clique_number(g) == w);
            CHECK(chromatic_number(g) == x);
            CHECK(w <= x);
        }
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = tu::random_graph(rng, 7, 0.5);
        CHECK(clique_number(g) == tu::brute_clique_number(g));
        CHECK(chromatic_number(g) == tu::brute_chromatic_number(g));
    }
}

TEST_CASE("induced bipartite maximum") {
    auto c4 = induced_bipartite_max(tu::cycle(4));
    CHECK(c4.p == 2);
    CHECK(c4.q == 2);
    CHECK(c4.value == doctest::Approx(2.0));

    auto p3 = induced_bipartite_max(tu::path(3));
    CHECK(p3.p == 1);
    CHECK(p3.q == 2);
    CHECK(p3.value == doctest::Approx(std::sqrt(2.0)));

    for (int n : {2, 4, 6}) {
        auto kn = induced_bipartite_max(tu::complete(n));
        CHECK(kn.p == 1);
        CHECK(kn.q == 1);
        CHECK(kn.value == doctest::Approx(1.0));
    }

    auto star = induced_bipartite_max(tu::complete_bipartite(1, 5));
    CHECK(star.p == 1);
    CHECK(star.q == 5);

    auto none = induced_bipartite_max(tu::empty_graph(3));
    CHECK(none.value == 0.0);

    CHECK_THROWS_AS(induced_bipartite_max(tu::empty_graph(15)), SizeCapExceeded);
}

TEST_CASE("induced bipartite maximum matches exhaustive enumeration") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        Graph g = tu::random_graph(rng, n, 0.45);
        // oracle: all ordered pairs of disjoint nonempty subsets
        long best = 0;
        for (uint32_t s1 = 1; s1 < (1u << n); ++s1)
            for (uint32_t s2 = 1; s2 < (1u << n); ++s2) {
                if (s1 & s2) continue;
                bool ok = true;
                for (int i = 0; i < n && ok; ++i)
                    for (int j = 0; j < n && ok; ++j) {
                        const bool a = s1 & (1u << i), b = s2 & (1u << j);
                        if (a && b && !g.adjacent(i, j)) ok = false;
                        if (i < j) {
                            const bool boths1 = (s1 & (1u << i)) && (s1 & (1u << j));
                            const bool boths2 = (s2 & (1u << i)) && (s2 & (1u << j));
                            if ((boths1 || boths2) && g.adjacent(i, j)) ok = false;
                        }
                    }
                if (ok)
                    best = std::max(best, static_cast<long>(std::popcount(s1)) * std::popcount(s2));
            }
        auto got = induced_bipartite_max(g);
        CHECK(static_cast<long>(got.p) * got.q == best);
    }
}

TEST_CASE("permute and isomorphism") {
    std::mt19937_64 rng(99);
    Graph c4 = tu::cycle(4);
    auto pi = tu::random_permutation(rng, 4);
    Graph relabeled = permute(c4, pi);
    auto witness = is_isomorphic(c4, relabeled);
    REQUIRE(witness.has_value());
    CHECK(tu::edge_mask(permute(c4, *witness)) == tu::edge_mask(relabeled));

    CHECK_FALSE(is_isomorphic(tu::cycle(6), tu::complete_bipartite(3, 3)).has_value());

    // the 5-cycle is self-complementary
    auto self = is_isomorphic(tu::cycle(5), complement(tu::cycle(5)));
    REQUIRE(self.has_value());
    CHECK(tu::edge_mask(permute(tu::cycle(5), *self)) == tu::edge_mask(complement(tu::cycle(5))));

    CHECK_FALSE(is_isomorphic(tu::cycle(4), tu::cycle(5)).has_value());
    CHECK_THROWS_AS(is_isomorphic(tu::empty_graph(11), tu::empty_graph(11)), SizeCapExceeded);
    CHECK_THROWS_AS(permute(c4, {1, 2, 3}), IndexOutOfRange);
    CHECK_THROWS_AS(permute(c4, {1, 2, 3, 3}), IndexOutOfRange);
}

TEST_CASE("is_isomorphic agrees with canonical forms") {
    // exhaustive over all labeled 4-vertex graphs
    auto graphs = tu::all_labeled_graphs(4);
    for (const Graph& g : graphs)
        for (const Graph& h : graphs) {
            const bool want = tu::canonical_mask(g) == tu::canonical_mask(h);
            auto w = is_isomorphic(g, h);
            CHECK(w.has_value() == want);
            if (w) CHECK(tu::edge_mask(permute(g, *w)) == tu::edge_mask(h));
        }
    // sampled positive and negative pairs at 6 vertices
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = tu::random_graph(rng, 6, 0.5);
        Graph h = permute(g, tu::random_permutation(rng, 6));
        auto w = is_isomorphic(g, h);
        REQUIRE(w.has_value());
        CHECK(tu::edge_mask(permute(g, *w)) == tu::edge_mask(h));

        Graph other = tu::random_graph(rng, 6, 0.5);
        CHECK(is_isomorphic(g, other).has_value() ==
              (tu::canonical_mask(g) == tu::canonical_mask(other)));
    }
}

TEST_CASE("edge list text format") {
    Graph g = Graph::from_edge_list(5, {{1, 2}, {2, 3}, {4, 5}});
    std::stringstream ss;
    write_edge_list(g, ss);
    Graph back = parse_edge_list(ss);
    CHECK(tu::edge_mask(back) == tu::edge_mask(g));
    CHECK(back.vertex_count() == 5);

    auto parse_str = [](const std::string& s) {
        std::istringstream in(s);
        return parse_edge_list(in);
    };
    Graph commented = parse_str("# a comment\n4  # vertex count\n1 2\n# another\n3 4\n");
    CHECK(commented.vertex_count() == 4);
    CHECK(commented.edge_count() == 2);

    CHECK_THROWS_AS(parse_str(""), ParseError);
    CHECK_THROWS_AS(parse_str("abc\n"), ParseError);
    CHECK_THROWS_AS(parse_str("3\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_str("3\n1 2 3\n"), ParseError);
    CHECK_THROWS_AS(parse_str("3\n1 4\n"), ParseError);
    CHECK_THROWS_AS(parse_str("3\n2 2\n"), ParseError);
    try {
        parse_str("3\n1 2\n1 x\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("graph6 decoding") {
    Graph k2 = parse_graph6("A_");
    CHECK(k2.vertex_count() == 2);
    CHECK(k2.adjacent(0, 1));

    Graph e2 = parse_graph6("A?");
    CHECK(e2.edge_count() == 0);

    Graph k3 = parse_graph6("Bw");
    CHECK(tu::edge_mask(k3) == tu::edge_mask(tu::complete(3)));

    Graph p3 = parse_graph6("Bg");
    REQUIRE(is_isomorphic(p3, tu::path(3)).has_value());

    Graph c5 = parse_graph6("Dhc");
    CHECK(tu::edge_mask(c5) == tu::edge_mask(tu::cycle(5)));

    CHECK_THROWS_AS(parse_graph6(""), ParseError);
    CHECK_THROWS_AS(parse_graph6("A"), ParseError);
    CHECK_THROWS_AS(parse_graph6(":abc"), ParseError);
}

TEST_CASE("graph hash is stable under edge input order, not relabeling") {
    Graph a = Graph::from_edge_list(4, {{1, 2}, {3, 4}});
    Graph b = Graph::from_edge_list(4, {{3, 4}, {2, 1}});
    CHECK(graph_hash(a) == graph_hash(b));
    Graph c = Graph::from_edge_list(4, {{1, 3}, {2, 4}});
    CHECK(graph_hash(a) != graph_hash(c));
}
