// graphos: operator-system norms and theta-type parameters of finite graphs.
//
// Subcommands: compute, sandwich, product-check, theta-stability, iso, batch.
// Graphs come from edge-list files ("n" then "i j" lines, '#' comments) or
// graph6 strings (files ending in .g6).  Exit codes: 0 success, 1 usage or
// input errors, 2 infeasible/degenerate computations.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphos/graph.hpp"
#include "graphos/parameters.hpp"

using namespace graphos;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;

struct CommonOpts {
    std::string format = "human";
    double gap_tol = 1e-7;
    double feas_tol = 1e-8;
    double flag_tol = 1e-4;
    int product_cap = 36;
    int omega_chi_cap = 16;
    int bipartite_cap = 14;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format: human, json or csv")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    cmd->add_option("--gap-tol", o.gap_tol, "solver duality gap tolerance");
    cmd->add_option("--feas-tol", o.feas_tol, "solver feasibility tolerance");
    cmd->add_option("--flag-tol", o.flag_tol, "tolerance for inequality flags");
    cmd->add_option("--product-cap", o.product_cap, "max product order n*m");
    cmd->add_option("--omega-cap", o.omega_chi_cap, "max n for exact omega/chi");
    cmd->add_option("--bipartite-cap", o.bipartite_cap, "max n for induced bipartite search");
}

ParamSettings to_settings(const CommonOpts& o) {
    ParamSettings ps;
    ps.sdp.gap_tol = o.gap_tol;
    ps.sdp.feas_tol = o.feas_tol;
    ps.flag_tol = o.flag_tol;
    ps.product_cap = o.product_cap;
    ps.omega_chi_cap = o.omega_chi_cap;
    ps.bipartite_cap = o.bipartite_cap;
    // environment default, command-line flags win
    if (const char* env = std::getenv("GRAPHOS_GAP_TOL")) {
        const double v = std::atof(env);
        if (v > 0.0 && o.gap_tol == 1e-7) ps.sdp.gap_tol = v;
    }
    return ps;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Graph load_graph(const std::string& path) {
    if (ends_with(path, ".g6")) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open graph file: " + path);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) return parse_graph6(line);
        throw ParseError(1, "no graph6 line in " + path);
    }
    return parse_edge_list_file(path);
}

// graph paths for batch rows; a .g6 file contributes one row per line
std::vector<std::pair<std::string, Graph>> load_batch(const std::string& list_path) {
    std::ifstream in(list_path);
    if (!in) throw Error("cannot open batch list: " + list_path);
    std::vector<std::pair<std::string, Graph>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string path;
        if (!(ls >> path)) continue;
        if (ends_with(path, ".g6")) {
            std::ifstream gin(path);
            if (!gin) throw Error("cannot open graph file: " + path);
            std::string g6;
            int idx = 0;
            while (std::getline(gin, g6))
                if (!g6.empty()) rows.emplace_back(path + ":" + std::to_string(++idx), parse_graph6(g6));
        } else {
            rows.emplace_back(path, load_graph(path));
        }
    }
    return rows;
}

DenseMatrix resolve_x(const std::string& spec, const Graph& g) {
    if (spec == "RG") return r_matrix(g);
    if (spec == "I") return DenseMatrix::identity(g.vertex_count());
    if (spec == "AG") return adjacency(g);
    DenseMatrix x = parse_matrix_file(spec);
    if (x.rows() != g.vertex_count() || x.cols() != g.vertex_count())
        throw ShapeMismatch("--x matrix is " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + " but the graph has " +
                            std::to_string(g.vertex_count()) + " vertices");
    return x;
}

std::vector<std::string> split_params(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

json report_json(const ParameterReport& rep, const Graph& g, const std::string& x_source) {
    json j = json::parse(report_to_json(rep));
    j["n"] = g.vertex_count();
    j["edges"] = g.edge_count();
    if (!x_source.empty()) j["x_source"] = x_source;
    return j;
}

void print_report(const ParameterReport& rep, const Graph& g, const std::string& x_source,
                  const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << report_json(rep, g, x_source).dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        out << "parameter,value\n";
        char buf[32];
        for (const auto& [k, v] : rep.values) {
            std::snprintf(buf, sizeof(buf), "%.12g", v);
            out << k << "," << buf << "\n";
        }
        for (const auto& f : rep.flags)
            out << "flag:" << f.name << "," << (f.pass ? 1 : 0) << "\n";
        return;
    }
    out << "graph: n=" << g.vertex_count() << " edges=" << g.edge_count()
        << " hash=" << rep.graph_hash << "\n";
    if (!x_source.empty()) out << "x: " << x_source << "\n";
    char buf[32];
    for (const auto& [k, v] : rep.values) {
        std::snprintf(buf, sizeof(buf), "%.9f", v);
        out << "  " << k << " = " << buf << "\n";
    }
    for (const auto& f : rep.flags) {
        std::snprintf(buf, sizeof(buf), "%.3g", f.residual);
        out << "  [" << (f.pass ? "ok" : "FAIL") << "] " << f.name << " residual=" << buf;
        if (!f.detail.empty()) out << "  (" << f.detail << ")";
        out << "\n";
    }
}

int run_compute(const std::string& graph_path, const std::string& x_spec,
                const std::string& params_csv, const CommonOpts& opts) {
    const Graph g = load_graph(graph_path);
    const DenseMatrix x = resolve_x(x_spec, g);
    const auto params = split_params(params_csv);
    const ParameterReport rep = compute_report(g, x, params, to_settings(opts));
    print_report(rep, g, x_spec, opts.format, std::cout);
    return kExitOk;
}

int run_sandwich(const std::string& graph_path, const CommonOpts& opts) {
    const Graph g = load_graph(graph_path);
    const ParameterReport rep = sandwich_report(g, to_settings(opts));
    print_report(rep, g, "RG", opts.format, std::cout);
    return kExitOk;
}

int run_product_check(const std::string& g_path, const std::string& h_path, int trials,
                      uint64_t seed, bool use_rg, const CommonOpts& opts) {
    const Graph g = load_graph(g_path);
    const Graph h = load_graph(h_path);
    const ParamSettings ps = to_settings(opts);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    auto random_sym = [&](int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
        return m;
    };

    bool all_ok = true;
    json rows = json::array();
    if (opts.format == "human")
        std::cout << "trial  d_inf(G)  d_inf(H)  d_inf(GxH)  resid_d   sigma(G)  sigma(H)  "
                     "sigma(GxH)  resid_s\n";
    if (opts.format == "csv")
        std::cout << "trial,d_inf_g,d_inf_h,d_inf_product,d_inf_residual,sigma_g,sigma_h,"
                     "sigma_product,sigma_residual\n";
    const int count = use_rg ? 1 : trials;
    for (int t = 0; t < count; ++t) {
        const DenseMatrix x = use_rg ? r_matrix(g) : random_sym(g.vertex_count());
        const DenseMatrix y = use_rg ? r_matrix(h) : random_sym(h.vertex_count());
        const ProductCheck pc = product_check(g, h, x, y, ps);
        all_ok = all_ok && pc.d_inf_residual <= ps.flag_tol && pc.sigma_residual <= ps.flag_tol;
        if (opts.format == "json") {
            rows.push_back({{"trial", t},
                            {"d_inf_g", pc.d_inf_g},
                            {"d_inf_h", pc.d_inf_h},
                            {"d_inf_product", pc.d_inf_product},
                            {"d_inf_residual", pc.d_inf_residual},
                            {"sigma_g", pc.sigma_g},
                            {"sigma_h", pc.sigma_h},
                            {"sigma_product", pc.sigma_product},
                            {"sigma_residual", pc.sigma_residual}});
        } else {
            char line[256];
            const char* fmt = (opts.format == "csv")
                                  ? "%d,%.9f,%.9f,%.9f,%.3g,%.9f,%.9f,%.9f,%.3g"
                                  : "%5d  %8.5f  %8.5f  %10.5f  %8.2e  %8.5f  %8.5f  %10.5f  %8.2e";
            std::snprintf(line, sizeof(line), fmt, t, pc.d_inf_g, pc.d_inf_h, pc.d_inf_product,
                          pc.d_inf_residual, pc.sigma_g, pc.sigma_h, pc.sigma_product,
                          pc.sigma_residual);
            std::cout << line << "\n";
        }
    }
    if (opts.format == "json") {
        json j{{"trials", rows}, {"all_within_tol", all_ok}, {"flag_tol", ps.flag_tol}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (all_ok ? "all residuals within tolerance\n" : "RESIDUALS ABOVE TOLERANCE\n");
    }
    return all_ok ? kExitOk : kExitDegenerate;
}

int run_theta_stability(const std::string& graph_path, int p, const CommonOpts& opts) {
    const Graph g = load_graph(graph_path);
    const ThetaStability st = theta_stability_check(g, p, to_settings(opts));
    if (opts.format == "json") {
        json j{{"theta", st.theta_g}, {"theta_product", st.theta_product}, {"residual", st.residual}};
        std::cout << j.dump(2) << "\n";
    } else {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "theta=%.9f theta_product=%.9f residual=%.3g\n", st.theta_g,
                      st.theta_product, st.residual);
        std::cout << buf;
    }
    return kExitOk;
}

int run_iso(const std::string& g_path, const std::string& h_path, const CommonOpts& opts) {
    const Graph g = load_graph(g_path);
    const Graph h = load_graph(h_path);
    auto w = is_isomorphic(g, h);
    if (opts.format == "json") {
        json j;
        j["isomorphic"] = w.has_value();
        if (w) j["witness"] = *w;
        std::cout << j.dump(2) << "\n";
    } else if (w) {
        std::cout << "isomorphic; witness:";
        for (int v : *w) std::cout << " " << v;
        std::cout << "\n";
    } else {
        std::cout << "not isomorphic\n";
    }
    return kExitOk;
}

int run_batch(const std::string& list_path, const std::string& x_spec,
              const std::string& params_csv, int jobs, const CommonOpts& opts) {
    const auto rows = load_batch(list_path);
    const auto params = split_params(params_csv);
    const ParamSettings ps = to_settings(opts);

    struct Row {
        std::string path;
        int n = 0, edges = 0;
        std::map<std::string, double> values;
        std::string error;
    };
    std::vector<Row> results(rows.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            Row& row = results[i];
            row.path = rows[i].first;
            const Graph& g = rows[i].second;
            row.n = g.vertex_count();
            row.edges = g.edge_count();
            try {
                const DenseMatrix x = resolve_x(x_spec, g);
                ParameterReport rep = compute_report(g, x, params, ps);
                row.values = std::move(rep.values);
            } catch (const std::exception& e) {
                row.error = e.what();  // one bad row must not abort the batch
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // fixed column order regardless of completion order
    std::cout << "path,n,edges";
    for (const auto& p : params) std::cout << "," << p;
    std::cout << ",error\n";
    char buf[32];
    for (const auto& row : results) {
        std::cout << row.path << "," << row.n << "," << row.edges;
        for (const auto& p : params) {
            auto it = row.values.find(p);
            if (it == row.values.end()) {
                std::cout << ",";
            } else {
                std::snprintf(buf, sizeof(buf), "%.12g", it->second);
                std::cout << "," << buf;
            }
        }
        std::cout << "," << row.error << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-system norms and theta-type parameters of finite graphs"};
    app.set_help_flag("--help", "print help");  // frees -h / --h for the graph options
    app.require_subcommand(1);

    CommonOpts opts;

    auto* compute = app.add_subcommand("compute", "compute parameters of one graph");
    std::string graph_path, x_spec = "RG", params_csv = "theta,theta_bar,d_inf,sigma";
    compute->add_option("--graph", graph_path, "edge-list or .g6 file")->required();
    compute->add_option("--x", x_spec, "RG, I, AG, or a matrix file");
    compute->add_option("--params", params_csv,
                        "comma list: theta,theta_bar,theta_dual,d_inf,d_inf_dual,sigma,"
                        "sigma_dual,gamma,omega,chi,phi_induced,ratio,wilf_bound");
    add_common(compute, opts);

    auto* sandwich = app.add_subcommand("sandwich", "sandwich and equality-flag report");
    std::string sandwich_path;
    sandwich->add_option("--graph", sandwich_path, "edge-list or .g6 file")->required();
    add_common(sandwich, opts);

    auto* product = app.add_subcommand("product-check", "strong-product multiplicativity residuals");
    std::string g_path, h_path;
    int trials = 10;
    uint64_t seed = 0;
    bool use_rg = false;
    product->add_option("--g", g_path, "first factor")->required();
    product->add_option("--h", h_path, "second factor")->required();
    product->add_option("--trials", trials, "random symmetric samples");
    product->add_option("--seed", seed, "rng seed");
    product->add_flag("--use-rg", use_rg, "use the pattern matrices instead of random samples");
    add_common(product, opts);

    auto* stability = app.add_subcommand("theta-stability", "theta under product with a complete graph");
    std::string stab_path;
    int stab_p = 2;
    stability->add_option("--graph", stab_path, "edge-list or .g6 file")->required();
    stability->add_option("--p", stab_p, "complete factor order");
    add_common(stability, opts);

    auto* iso = app.add_subcommand("iso", "isomorphism witness search");
    std::string iso_g, iso_h;
    iso->add_option("--g", iso_g, "first graph")->required();
    iso->add_option("--h", iso_h, "second graph")->required();
    add_common(iso, opts);

    auto* batch = app.add_subcommand("batch", "csv over a list of graph files");
    std::string list_path, batch_x = "RG", batch_params = "theta,theta_bar,d_inf,sigma";
    int jobs = 1;
    batch->add_option("--list", list_path, "file with one graph path per line")->required();
    batch->add_option("--x", batch_x, "RG, I, AG, or a matrix file");
    batch->add_option("--params", batch_params, "comma list of parameters");
    batch->add_option("--jobs", jobs, "worker threads");
    add_common(batch, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return run_compute(graph_path, x_spec, params_csv, opts);
        if (sandwich->parsed()) return run_sandwich(sandwich_path, opts);
        if (product->parsed()) return run_product_check(g_path, h_path, trials, seed, use_rg, opts);
        if (stability->parsed()) return run_theta_stability(stab_path, stab_p, opts);
        if (iso->parsed()) return run_iso(iso_g, iso_h, opts);
        if (batch->parsed()) return run_batch(list_path, batch_x, batch_params, jobs, opts);
    } catch (const DegenerateQuotient& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const SolverFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
