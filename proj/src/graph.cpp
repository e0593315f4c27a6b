#include "graphos/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace graphos {

Graph::Graph(int n) : n_(n), adj_(static_cast<size_t>(n) * n, 0) {
    if (n <= 0) throw IndexOutOfRange("vertex count must be positive");
}

void Graph::add_edge_unchecked(int u, int v) {
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
    adj_[static_cast<size_t>(u) * n_ + v] = 1;
    adj_[static_cast<size_t>(v) * n_ + u] = 1;
}

Graph Graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs) {
    Graph g(n);
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j] : pairs) {
        if (i < 1 || i > n || j < 1 || j > n)
            throw IndexOutOfRange("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") out of range for n=" + std::to_string(n));
        if (i == j) throw LoopEdge("loop edge (" + std::to_string(i) + "," + std::to_string(i) + ")");
        seen.emplace(std::min(i, j) - 1, std::max(i, j) - 1);
    }
    for (const auto& [u, v] : seen) g.add_edge_unchecked(u, v);
    return g;
}

Graph complement(const Graph& g) {
    const int n = g.vertex_count();
    Graph c(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) c.add_edge_unchecked(u, v);
    return c;
}

Graph strong_product(const Graph& g, const Graph& h) {
    const int n = g.vertex_count();
    const int m = h.vertex_count();
    Graph p(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            const int u = i * m + j;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < m; ++l) {
                    const int v = k * m + l;
                    if (v <= u) continue;
                    const bool e = (g.adjacent(i, k) && j == l) || (i == k && h.adjacent(j, l)) ||
                                   (g.adjacent(i, k) && h.adjacent(j, l));
                    if (e) p.add_edge_unchecked(u, v);
                }
        }
    return p;
}

DenseMatrix adjacency(const Graph& g) {
    const int n = g.vertex_count();
    DenseMatrix a(n, n);
    for (const auto& [u, v] : g.edges()) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    return a;
}

DenseMatrix r_matrix(const Graph& g) {
    DenseMatrix r = adjacency(g);
    for (int i = 0; i < g.vertex_count(); ++i) r(i, i) = 1.0;
    return r;
}

std::vector<std::pair<int, int>> nonedge_pairs(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    const int n = g.vertex_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.adjacent(i, j)) out.emplace_back(i, j);
    return out;
}

CoperpBasis coperp_basis(const Graph& g) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [i, j] : nonedge_pairs(g)) {
        pairs.emplace_back(i + 1, j + 1);
        pairs.emplace_back(j + 1, i + 1);
    }
    return CoperpBasis(std::move(pairs));
}

namespace {

struct CliqueSearch {
    const std::vector<uint32_t>& adj;
    int best = 0;

    void expand(uint32_t cand, int size) {
        if (size > best) best = size;
        while (cand) {
            if (size + std::popcount(cand) <= best) return;
            const int v = std::countr_zero(cand);
            cand &= cand - 1;
            expand(cand & adj[v], size + 1);
        }
    }
};

std::vector<uint32_t> adjacency_masks(const Graph& g) {
    std::vector<uint32_t> adj(g.vertex_count(), 0);
    for (const auto& [u, v] : g.edges()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    return adj;
}

// backtracking over the given vertex order; new colors are opened one at a
// time to kill color-permutation symmetry
bool color_rec(const Graph& g, const std::vector<int>& order, std::vector<int>& color, int depth,
               int used, int k) {
    const int n = g.vertex_count();
    if (depth == n) return true;
    const int v = order[depth];
    const int limit = std::min(k, used + 1);
    for (int c = 0; c < limit; ++c) {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            if (color[u] == c && g.adjacent(u, v)) ok = false;
        if (!ok) continue;
        color[v] = c;
        if (color_rec(g, order, color, depth + 1, std::max(used, c + 1), k)) return true;
        color[v] = -1;
    }
    return false;
}

bool colorable(const Graph& g, const std::vector<int>& order, int k) {
    std::vector<int> color(g.vertex_count(), -1);
    return color_rec(g, order, color, 0, 0, k);
}

}  // namespace

int clique_number(const Graph& g, int size_cap) {
    if (g.vertex_count() > size_cap)
        throw SizeCapExceeded("clique_number: n=" + std::to_string(g.vertex_count()) + " exceeds cap " +
                              std::to_string(size_cap));
    auto adj = adjacency_masks(g);
    CliqueSearch s{adj};
    s.expand((g.vertex_count() == 32 ? ~0u : (1u << g.vertex_count()) - 1u), 0);
    return s.best;
}

int chromatic_number(const Graph& g, int size_cap) {
    const int n = g.vertex_count();
    if (n > size_cap)
        throw SizeCapExceeded("chromatic_number: n=" + std::to_string(n) + " exceeds cap " +
                              std::to_string(size_cap));
    if (g.edge_count() == 0) return 1;

    std::vector<int> degree(n, 0);
    for (const auto& [u, v] : g.edges()) {
        ++degree[u];
        ++degree[v];
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return degree[a] > degree[b]; });

    for (int k = clique_number(g, size_cap); k <= n; ++k)
        if (colorable(g, order, k)) return k;
    return n;
}

BipartiteMax induced_bipartite_max(const Graph& g, int size_cap) {
    const int n = g.vertex_count();
    if (n > size_cap)
        throw SizeCapExceeded("induced_bipartite_max: n=" + std::to_string(n) + " exceeds cap " +
                              std::to_string(size_cap));
    auto adj = adjacency_masks(g);

    long best_pq = 0;
    int best_p = 0, best_q = 0;

    // assign each vertex to {skip, side1, side2}; adding v to a side requires
    // no neighbor inside that side and adjacency to every vertex across
    auto consider = [&](int p, int q) {
        if (p == 0 || q == 0) return;
        int lo = std::min(p, q), hi = std::max(p, q);
        const long pq = static_cast<long>(lo) * hi;
        if (pq > best_pq ||
            (pq == best_pq && (lo < best_p || (lo == best_p && hi < best_q)))) {
            best_pq = pq;
            best_p = lo;
            best_q = hi;
        }
    };

    struct Frame {
        int v;
        uint32_t s1, s2;
    };
    std::vector<Frame> frames;
    frames.push_back({0, 0, 0});
    while (!frames.empty()) {
        Frame f = frames.back();
        frames.pop_back();
        if (f.v == n) {
            consider(std::popcount(f.s1), std::popcount(f.s2));
            continue;
        }
        const uint32_t bit = 1u << f.v;
        // skip v
        frames.push_back({f.v + 1, f.s1, f.s2});
        // v -> side1: independent within side1, complete to side2
        if ((adj[f.v] & f.s1) == 0 && (adj[f.v] & f.s2) == f.s2)
            frames.push_back({f.v + 1, f.s1 | bit, f.s2});
        // v -> side2
        if ((adj[f.v] & f.s2) == 0 && (adj[f.v] & f.s1) == f.s1)
            frames.push_back({f.v + 1, f.s1, f.s2 | bit});
    }

    BipartiteMax out;
    out.p = best_p;
    out.q = best_q;
    out.value = std::sqrt(static_cast<double>(best_pq));
    return out;
}

Graph permute(const Graph& g, const std::vector<int>& pi) {
    const int n = g.vertex_count();
    if (static_cast<int>(pi.size()) != n)
        throw IndexOutOfRange("permutation length " + std::to_string(pi.size()) + " != n=" +
                              std::to_string(n));
    std::vector<char> hit(n, 0);
    for (int v : pi) {
        if (v < 1 || v > n || hit[v - 1]) throw IndexOutOfRange("not a permutation of 1..n");
        hit[v - 1] = 1;
    }
    Graph out(n);
    for (const auto& [u, v] : g.edges()) out.add_edge_unchecked(pi[u] - 1, pi[v] - 1);
    std::sort(out.edges_.begin(), out.edges_.end());
    return out;
}

namespace {

bool iso_backtrack(const Graph& g, const Graph& h, const std::vector<int>& order, size_t depth,
                   std::vector<int>& map, std::vector<char>& used, const std::vector<int>& gdeg,
                   const std::vector<int>& hdeg) {
    const int n = g.vertex_count();
    if (depth == order.size()) return true;
    const int v = order[depth];
    for (int w = 0; w < n; ++w) {
        if (used[w] || gdeg[v] != hdeg[w]) continue;
        bool ok = true;
        for (size_t d = 0; d < depth && ok; ++d) {
            const int u = order[d];
            if (g.adjacent(v, u) != h.adjacent(map[u], w)) ok = false;
        }
        if (!ok) continue;
        map[v] = w;
        used[w] = 1;
        if (iso_backtrack(g, h, order, depth + 1, map, used, gdeg, hdeg)) return true;
        used[w] = 0;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Graph& g, const Graph& h, int size_cap) {
    if (g.vertex_count() != h.vertex_count()) return std::nullopt;
    const int n = g.vertex_count();
    if (n > size_cap)
        throw SizeCapExceeded("is_isomorphic: n=" + std::to_string(n) + " exceeds cap " +
                              std::to_string(size_cap));
    if (g.edge_count() != h.edge_count()) return std::nullopt;

    auto degrees = [](const Graph& x) {
        std::vector<int> d(x.vertex_count(), 0);
        for (const auto& [u, v] : x.edges()) {
            ++d[u];
            ++d[v];
        }
        return d;
    };
    const auto gdeg = degrees(g);
    const auto hdeg = degrees(h);
    auto gs = gdeg, hs = hdeg;
    std::sort(gs.begin(), gs.end());
    std::sort(hs.begin(), hs.end());
    if (gs != hs) return std::nullopt;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return gdeg[a] > gdeg[b]; });

    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    if (!iso_backtrack(g, h, order, 0, map, used, gdeg, hdeg)) return std::nullopt;

    std::vector<int> pi(n);
    for (int v = 0; v < n; ++v) pi[v] = map[v] + 1;
    return pi;
}

Graph parse_edge_list(std::istream& in) {
    std::string raw;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> pairs;

    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;

        auto as_int = [&](const std::string& s, const char* what) {
            size_t pos = 0;
            long v = 0;
            try {
                v = std::stol(s, &pos);
            } catch (const std::exception&) {
                throw ParseError(lineno, std::string("expected ") + what + ", got '" + s + "'");
            }
            if (pos != s.size())
                throw ParseError(lineno, std::string("expected ") + what + ", got '" + s + "'");
            return static_cast<int>(v);
        };

        if (n < 0) {
            if (toks.size() != 1) throw ParseError(lineno, "first line must contain only the vertex count");
            n = as_int(toks[0], "vertex count");
            if (n <= 0) throw ParseError(lineno, "vertex count must be positive");
            continue;
        }
        if (toks.size() != 2) throw ParseError(lineno, "expected one 'i j' pair");
        const int i = as_int(toks[0], "vertex label");
        const int j = as_int(toks[1], "vertex label");
        if (i < 1 || i > n || j < 1 || j > n)
            throw ParseError(lineno, "vertex label out of range 1.." + std::to_string(n));
        if (i == j) throw ParseError(lineno, "loop edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
        pairs.emplace_back(i, j);
    }
    if (n < 0) throw ParseError(lineno + 1, "empty edge-list file");
    return Graph::from_edge_list(n, pairs);
}

Graph parse_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.vertex_count() << "\n";
    for (const auto& [u, v] : g.edges()) out << (u + 1) << " " << (v + 1) << "\n";
}

Graph parse_graph6(const std::string& line) {
    if (line.empty()) throw ParseError(1, "empty graph6 string");
    if (line[0] == ':' || line[0] == ';' || line[0] == '&' || line[0] == '~')
        throw ParseError(1, "unsupported graph6 variant");
    const int n = line[0] - 63;
    if (n < 1 || n > 62) throw ParseError(1, "graph6 vertex count out of supported range 1..62");
    const int nbits = n * (n - 1) / 2;
    const size_t need = static_cast<size_t>((nbits + 5) / 6);
    if (line.size() != 1 + need)
        throw ParseError(1, "graph6 string has wrong length for n=" + std::to_string(n));

    std::vector<std::pair<int, int>> pairs;
    int bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit) {
            const char c = line[1 + bit / 6];
            if (c < 63 || c > 126) throw ParseError(1, "invalid graph6 character");
            const int val = c - 63;
            if ((val >> (5 - bit % 6)) & 1) pairs.emplace_back(i + 1, j + 1);
        }
    return Graph::from_edge_list(n, pairs);
}

std::string graph_hash(const Graph& g) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<uint64_t>(g.vertex_count()));
    for (const auto& [u, v] : g.edges()) mix((static_cast<uint64_t>(u) << 32) | static_cast<uint64_t>(v));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace graphos
