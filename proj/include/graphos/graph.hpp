#pragma once

// Finite simple graphs: construction, complement, strong product, exact
// combinatorial parameters at desk scale, and the text formats used by the
// command line tool.
//
// Vertex labels are 1-based at every public boundary (edge lists,
// permutations, witness output) and 0-based in internal storage and in
// matrix indexing: vertex v maps to matrix row v-1.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphos/linalg.hpp"

namespace graphos {

class Graph {
public:
    Graph() = default;
    explicit Graph(int n);  // edgeless graph on n >= 1 vertices

    // pairs are 1-based; loops rejected, duplicate/reversed pairs deduplicated
    static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // 0-based adjacency query
    bool adjacent(int u, int v) const { return adj_[static_cast<size_t>(u) * n_ + v] != 0; }

    // 0-based edges, each with first < second, sorted
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    void add_edge_unchecked(int u, int v);  // 0-based, u != v

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<uint8_t> adj_;

    friend Graph complement(const Graph&);
    friend Graph strong_product(const Graph&, const Graph&);
    friend Graph permute(const Graph&, const std::vector<int>&);
};

// Ordered support of the orthogonal complement of the graph's operator
// system: all ordered off-diagonal non-edge pairs, 1-based, listed row-major
// over unordered pairs with each reverse immediately following.
class CoperpBasis {
public:
    const std::vector<std::pair<int, int>>& pairs() const& { return pairs_; }
    std::vector<std::pair<int, int>> pairs() && { return std::move(pairs_); }
    size_t size() const { return pairs_.size(); }

private:
    explicit CoperpBasis(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {}
    std::vector<std::pair<int, int>> pairs_;
    friend CoperpBasis coperp_basis(const Graph&);
};

Graph complement(const Graph& g);

// Strong product on n*m vertices; pair (i,j), 1-based, maps to (i-1)*m + j,
// so the 0/1 pattern matrix of the product is exactly kron of the factors'.
Graph strong_product(const Graph& g, const Graph& h);

DenseMatrix adjacency(const Graph& g);
DenseMatrix r_matrix(const Graph& g);  // identity + adjacency

CoperpBasis coperp_basis(const Graph& g);

// 0-based unordered non-edge pairs (i < j), row-major; the variable support
// used by the SDP formulations.
std::vector<std::pair<int, int>> nonedge_pairs(const Graph& g);

// Exact exponential searches; throw SizeCapExceeded above the cap.
int clique_number(const Graph& g, int size_cap = 16);
int chromatic_number(const Graph& g, int size_cap = 16);

struct BipartiteMax {
    int p = 0;
    int q = 0;
    double value = 0.0;  // sqrt(p*q); 0 when the graph has no edges
};

// Maximum sqrt(p*q) over induced complete bipartite subgraphs with parts of
// sizes p <= q; ties broken by lexicographic (p, q).
BipartiteMax induced_bipartite_max(const Graph& g, int size_cap = 14);

// pi[i-1] is the image of vertex i (1-based values)
Graph permute(const Graph& g, const std::vector<int>& pi);

// Witness permutation pi with permute(g, pi) == h, or nothing.  Graphs of
// different orders are never isomorphic; throws SizeCapExceeded for n > cap.
std::optional<std::vector<int>> is_isomorphic(const Graph& g, const Graph& h, int size_cap = 10);

// Edge-list text format: first line "n", then one "i j" pair per line,
// whitespace separated, '#' starts a comment.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);

// graph6 decoding for batch ingestion (short form, n <= 62)
Graph parse_graph6(const std::string& line);

// deterministic identifier of the labeled graph (FNV-1a over n and edges)
std::string graph_hash(const Graph& g);

}  // namespace graphos
