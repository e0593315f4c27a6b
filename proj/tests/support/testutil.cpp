#include "support/testutil.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace graphos::testutil {

Graph empty_graph(int n) { return Graph::from_edge_list(n, {}); }

Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
    return Graph::from_edge_list(n, e);
}

Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    if (n >= 3) e.emplace_back(n, 1);
    return Graph::from_edge_list(n, e);
}

Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edge_list(n, e);
}

Graph complete_bipartite(int p, int q) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= p; ++i)
        for (int j = p + 1; j <= p + q; ++j) e.emplace_back(i, j);
    return Graph::from_edge_list(p + q, e);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> e;
    for (const auto& [u, v] : a.edges()) e.emplace_back(u + 1, v + 1);
    const int off = a.vertex_count();
    for (const auto& [u, v] : b.edges()) e.emplace_back(off + u + 1, off + v + 1);
    return Graph::from_edge_list(a.vertex_count() + b.vertex_count(), e);
}

static int pair_index(int n, int i, int j) {
    // row-major over i < j
    int idx = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (a == i && b == j) return idx;
            ++idx;
        }
    throw std::logic_error("pair_index");
}

Graph from_edge_mask(int n, uint32_t mask) {
    std::vector<std::pair<int, int>> e;
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx)
            if (mask & (1u << idx)) e.emplace_back(i + 1, j + 1);
    return Graph::from_edge_list(n, e);
}

uint32_t edge_mask(const Graph& g) {
    uint32_t mask = 0;
    for (const auto& [u, v] : g.edges()) mask |= 1u << pair_index(g.vertex_count(), u, v);
    return mask;
}

uint32_t canonical_mask(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    uint32_t best = ~0u;
    do {
        uint32_t m = 0;
        for (const auto& [u, v] : g.edges()) {
            int a = perm[u], b = perm[v];
            if (a > b) std::swap(a, b);
            m |= 1u << pair_index(n, a, b);
        }
        best = std::min(best, m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v)
            if (!seen[v] && g.adjacent(u, v)) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

std::vector<Graph> all_labeled_graphs(int n) {
    const int pairs = n * (n - 1) / 2;
    std::vector<Graph> out;
    out.reserve(1u << pairs);
    for (uint32_t mask = 0; mask < (1u << pairs); ++mask) out.push_back(from_edge_mask(n, mask));
    return out;
}

std::vector<Graph> nonisomorphic_graphs(int n, bool connected_only) {
    const int pairs = n * (n - 1) / 2;
    std::vector<Graph> out;
    for (uint32_t mask = 0; mask < (1u << pairs); ++mask) {
        Graph g = from_edge_mask(n, mask);
        if (canonical_mask(g) != mask) continue;
        if (connected_only && !is_connected(g)) continue;
        out.push_back(std::move(g));
    }
    return out;
}

Graph random_graph(std::mt19937_64& rng, int n, double edge_prob) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (u(rng) < edge_prob) e.emplace_back(i, j);
    return Graph::from_edge_list(n, e);
}

std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 1);
    std::shuffle(pi.begin(), pi.end(), rng);
    return pi;
}

DenseMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    DenseMatrix m(rows, cols);
    for (auto& v : m.entries()) v = u(rng);
    return m;
}

DenseMatrix random_symmetric(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
    return m;
}

DenseMatrix conjugate_by_permutation(const DenseMatrix& x, const std::vector<int>& pi) {
    const int n = x.rows();
    DenseMatrix y(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y(pi[i] - 1, pi[j] - 1) = x(i, j);
    return y;
}

int brute_clique_number(const Graph& g) {
    const int n = g.vertex_count();
    int best = 0;
    for (uint32_t sub = 0; sub < (1u << n); ++sub) {
        bool clique = true;
        for (int i = 0; i < n && clique; ++i)
            for (int j = i + 1; j < n && clique; ++j)
                if ((sub & (1u << i)) && (sub & (1u << j)) && !g.adjacent(i, j)) clique = false;
        if (clique) best = std::max(best, std::popcount(sub));
    }
    return best;
}

int brute_chromatic_number(const Graph& g) {
    const int n = g.vertex_count();
    if (g.edge_count() == 0) return 1;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> color(n, 0);
        while (true) {
            bool proper = true;
            for (const auto& [u, v] : g.edges())
                if (color[u] == color[v]) {
                    proper = false;
                    break;
                }
            if (proper) goto found;
            int pos = n - 1;
            while (pos >= 0 && color[pos] == k - 1) color[pos--] = 0;
            if (pos < 0) break;
            ++color[pos];
        }
        continue;
    found:
        return k;
    }
    return n;
}

bool strong_product_adjacent(const Graph& g, const Graph& h, int i, int j, int k, int l) {
    if (i == k && j == l) return false;
    if (g.adjacent(i, k) && j == l) return true;
    if (i == k && h.adjacent(j, l)) return true;
    return g.adjacent(i, k) && h.adjacent(j, l);
}

}  // namespace graphos::testutil
