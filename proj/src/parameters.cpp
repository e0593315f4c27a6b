#include "graphos/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace graphos {

namespace {

using nlohmann::json;

void require_square_x(const Graph& g, const DenseMatrix& x, const char* op) {
    const int n = g.vertex_count();
    if (x.rows() != n || x.cols() != n)
        throw ShapeMismatch(std::string(op) + ": x must be " + std::to_string(n) + "x" +
                            std::to_string(n));
}

std::vector<DenseMatrix> eval_blocks(const LmiProblem& p, const std::vector<double>& x) {
    std::vector<DenseMatrix> s = p.f0;
    for (int i = 0; i < p.num_vars; ++i) {
        if (x[i] == 0.0) continue;
        for (const auto& e : p.fs[i].entries) s[e.block](e.row, e.col) += x[i] * e.value;
    }
    for (auto& m : s) m = symmetrized(m);
    return s;
}

// optimal values are only reported after their constraint blocks pass an
// independent psd re-check
void verify_feasible(const LmiProblem& p, const std::vector<double>& x, const char* op) {
    for (const auto& m : eval_blocks(p, x)) {
        const double tol = 1e-6 * std::max(1.0, max_abs(m));
        if (!is_psd(m, tol))
            throw SolverFailure(std::string(op) + ": optimizer failed the psd re-check");
    }
}

SdpSolution solve_checked(const LmiProblem& p, const SdpSettings& set, const char* op) {
    SdpSolution sol = solve(p, set);
    if (sol.status != SdpStatus::Optimal)
        throw SolverFailure(std::string(op) + ": solver returned " + to_string(sol.status) +
                            "; subproblem dumped to " + dump_lmi_to_tempfile(p, op));
    verify_feasible(p, sol.x, op);
    return sol;
}

std::vector<DenseMatrix> symmetric_unit_directions(int n,
                                                   const std::vector<std::pair<int, int>>& pairs) {
    std::vector<DenseMatrix> dirs;
    dirs.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        DenseMatrix d(n, n);
        d(i, j) = d(j, i) = 1.0;
        dirs.push_back(std::move(d));
    }
    return dirs;
}

std::vector<DenseMatrix> ordered_unit_directions(int n,
                                                 const std::vector<std::pair<int, int>>& pairs) {
    std::vector<DenseMatrix> dirs;
    dirs.reserve(2 * pairs.size());
    for (const auto& [i, j] : pairs) {
        DenseMatrix a(n, n);
        a(i, j) = 1.0;
        dirs.push_back(std::move(a));
        DenseMatrix b(n, n);
        b(j, i) = 1.0;
        dirs.push_back(std::move(b));
    }
    return dirs;
}

DenseMatrix combine(int n, const std::vector<DenseMatrix>& dirs, const std::vector<double>& k) {
    DenseMatrix m(n, n);
    for (size_t i = 0; i < dirs.size(); ++i)
        if (k[i] != 0.0) m = m + k[i] * dirs[i];
    return m;
}

}  // namespace

ParameterValue theta_bar_certified(const Graph& g, const ParamSettings& ps) {
    const int n = g.vertex_count();
    const auto pairs = nonedge_pairs(g);
    const auto dirs = symmetric_unit_directions(n, pairs);
    AffineOptResult r = min_lambda1(r_matrix(g), dirs, ps.sdp);

    DenseMatrix k = combine(n, dirs, r.coefficients);
    const DenseMatrix shifted = r.value * DenseMatrix::identity(n) - (r_matrix(g) + k);
    if (!is_psd(shifted, 1e-6 * std::max(1.0, r.value)))
        throw SolverFailure("theta_bar: optimizer failed the psd re-check");

    ParameterValue out;
    out.value = r.value;
    out.certificate.matrices.emplace("K", std::move(k));
    return out;
}

ParameterValue theta_certified(const Graph& g, const ParamSettings& ps) {
    return theta_bar_certified(complement(g), ps);
}

ParameterValue theta_dual_certified(const Graph& g, const ParamSettings& ps) {
    const int n = g.vertex_count();
    LmiProblem p;
    p.block_dims = {n};
    p.f0 = {DenseMatrix(n, n)};

    std::vector<int> diag_var(n);
    for (int i = 0; i < n; ++i) {
        diag_var[i] = p.add_variable(-1.0);
        p.fs[diag_var[i]].add(0, i, i, 1.0);
    }
    const auto pairs = nonedge_pairs(g);
    std::vector<int> pair_var(pairs.size());
    for (size_t t = 0; t < pairs.size(); ++t) {
        pair_var[t] = p.add_variable(-2.0);
        p.fs[pair_var[t]].add(0, pairs[t].first, pairs[t].second, 1.0);
    }

    LinearEquality eq;
    eq.a.assign(p.num_vars, 0.0);
    for (int i = 0; i < n; ++i) eq.a[diag_var[i]] = 1.0;
    eq.b = 1.0;
    p.equalities.push_back(std::move(eq));

    p.initial_x.assign(p.num_vars, 0.0);
    for (int i = 0; i < n; ++i) p.initial_x[diag_var[i]] = 1.0 / n;

    SdpSolution sol = solve_checked(p, ps.sdp, "theta_dual");

    DenseMatrix b(n, n);
    for (int i = 0; i < n; ++i) b(i, i) = sol.x[diag_var[i]];
    for (size_t t = 0; t < pairs.size(); ++t)
        b(pairs[t].first, pairs[t].second) = b(pairs[t].second, pairs[t].first) =
            sol.x[pair_var[t]];

    ParameterValue out;
    out.value = -sol.primal_objective;
    out.certificate.matrices.emplace("B", std::move(b));
    return out;
}

ParameterValue d_inf_certified(const Graph& g, const DenseMatrix& x, const ParamSettings& ps) {
    require_square_x(g, x, "d_inf");
    const int n = g.vertex_count();
    const auto pairs = nonedge_pairs(g);
    const bool sym = is_symmetric(x, kSymTol);
    const auto dirs = sym ? symmetric_unit_directions(n, pairs) : ordered_unit_directions(n, pairs);

    AffineOptResult r = min_opnorm_affine(x, dirs, ps.sdp);
    DenseMatrix k = combine(n, dirs, r.coefficients);

    ParameterValue out;
    out.value = r.value;
    out.certificate.matrices.emplace("K", std::move(k));
    return out;
}

ParameterValue d_inf_dual_certified(const Graph& g, const DenseMatrix& x, const ParamSettings& ps) {
    require_square_x(g, x, "d_inf_dual");
    const int n = g.vertex_count();
    LmiProblem p;
    p.block_dims = {2 * n, 1};
    p.f0 = {DenseMatrix(2 * n, 2 * n), DenseMatrix(1, 1)};
    p.f0[1](0, 0) = 2.0;  // trace budget Tr(U) + Tr(V) <= 2

    // Q ranges over the annihilator of the kernel, i.e. the entries of Q on
    // the off-diagonal non-edges vanish and the diagonal + edge entries are
    // free (the distance-to-subspace dual pairs the trace-norm ball of the
    // orthogonal complement against the operator norm).
    struct QVar {
        int i, j, var;
    };
    std::vector<QVar> qvars;
    auto add_q = [&](int a, int b) {
        const int v = p.add_variable(-x(a, b));
        p.fs[v].add(0, a, n + b, 1.0);
        qvars.push_back({a, b, v});
    };
    for (int i = 0; i < n; ++i) add_q(i, i);
    for (const auto& [i, j] : g.edges()) {
        add_q(i, j);
        add_q(j, i);
    }
    std::vector<int> udiag(n), vdiag(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const int uv = p.add_variable(0.0);
            p.fs[uv].add(0, i, j, 1.0);
            if (i == j) {
                p.fs[uv].add(1, 0, 0, -1.0);
                udiag[i] = uv;
            }
            const int vv = p.add_variable(0.0);
            p.fs[vv].add(0, n + i, n + j, 1.0);
            if (i == j) {
                p.fs[vv].add(1, 0, 0, -1.0);
                vdiag[i] = vv;
            }
        }

    p.initial_x.assign(p.num_vars, 0.0);
    for (int i = 0; i < n; ++i) p.initial_x[udiag[i]] = p.initial_x[vdiag[i]] = 1.0 / (n + 1.0);

    SdpSolution sol = solve_checked(p, ps.sdp, "d_inf_dual");

    DenseMatrix q(n, n);
    for (const auto& v : qvars) q(v.i, v.j) = sol.x[v.var];

    ParameterValue out;
    out.value = -sol.primal_objective;
    out.certificate.matrices.emplace("Q", std::move(q));
    return out;
}

ParameterValue sigma_certified(const Graph& g, const DenseMatrix& x, const ParamSettings& ps) {
    require_square_x(g, x, "sigma");
    const int n = g.vertex_count();
    const auto pairs = nonedge_pairs(g);
    const bool sym = is_symmetric(x, kSymTol);

    LmiProblem p;
    p.block_dims = {2 * n};
    DenseMatrix f0(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            f0(i, n + j) = x(i, j);
            f0(n + j, i) = x(i, j);
        }
    p.f0 = {std::move(f0)};

    const int lam = p.add_variable(1.0);
    for (int d = 0; d < 2 * n; ++d) p.fs[lam].entries.push_back({0, d, d, 1.0});

    struct Vars {
        std::vector<int> k1, k3, k2o;  // general form
        std::vector<int> kd, k2s;      // symmetric form
    } vars;

    if (sym) {
        // x symmetric: swapping the two block rows/columns and averaging
        // shows the optimum is reached with K1 = K3 and K2 symmetric
        for (const auto& [i, j] : pairs) {
            const int kd = p.add_variable(0.0);
            p.fs[kd].add(0, i, j, 1.0);
            p.fs[kd].add(0, n + i, n + j, 1.0);
            vars.kd.push_back(kd);
            const int k2 = p.add_variable(0.0);
            p.fs[k2].add(0, i, n + j, 1.0);
            p.fs[k2].add(0, j, n + i, 1.0);
            vars.k2s.push_back(k2);
        }
    } else {
        for (const auto& [i, j] : pairs) {
            const int k1 = p.add_variable(0.0);
            p.fs[k1].add(0, i, j, 1.0);
            vars.k1.push_back(k1);
            const int k3 = p.add_variable(0.0);
            p.fs[k3].add(0, n + i, n + j, 1.0);
            vars.k3.push_back(k3);
            for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
                const int z = p.add_variable(0.0);
                p.fs[z].add(0, a, n + b, 1.0);
                vars.k2o.push_back(z);
            }
        }
    }

    p.initial_x.assign(p.num_vars, 0.0);
    p.initial_x[lam] = operator_norm(x) + 1.0;

    SdpSolution sol = solve_checked(p, ps.sdp, "sigma");

    DenseMatrix k1(n, n), k2(n, n), k3(n, n);
    if (sym) {
        for (size_t t = 0; t < pairs.size(); ++t) {
            const auto [i, j] = pairs[t];
            k1(i, j) = k1(j, i) = k3(i, j) = k3(j, i) = sol.x[vars.kd[t]];
            k2(i, j) = k2(j, i) = sol.x[vars.k2s[t]];
        }
    } else {
        for (size_t t = 0; t < pairs.size(); ++t) {
            const auto [i, j] = pairs[t];
            k1(i, j) = k1(j, i) = sol.x[vars.k1[t]];
            k3(i, j) = k3(j, i) = sol.x[vars.k3[t]];
            k2(i, j) = sol.x[vars.k2o[2 * t]];
            k2(j, i) = sol.x[vars.k2o[2 * t + 1]];
        }
    }

    ParameterValue out;
    out.value = sol.x[lam];
    out.certificate.matrices.emplace("K1", std::move(k1));
    out.certificate.matrices.emplace("K2", std::move(k2));
    out.certificate.matrices.emplace("K3", std::move(k3));
    return out;
}

ParameterValue sigma_dual_certified(const Graph& g, const DenseMatrix& x, const ParamSettings& ps) {
    require_square_x(g, x, "sigma_dual");
    const int n = g.vertex_count();
    const bool sym = is_symmetric(x, kSymTol);

    // support of the graph's operator system: diagonal plus edges
    std::vector<std::pair<int, int>> support;
    for (int i = 0; i < n; ++i) support.emplace_back(i, i);
    for (const auto& e : g.edges()) support.push_back(e);

    LmiProblem p;
    p.block_dims = {2 * n};
    p.f0 = {DenseMatrix(2 * n, 2 * n)};

    std::vector<int> avars, cvars, bvars;
    if (sym) {
        // same block-swap averaging as in sigma: A = C and B symmetric
        for (const auto& [i, j] : support) {
            const int a = p.add_variable(0.0);
            p.fs[a].add(0, i, j, 1.0);
            p.fs[a].add(0, n + i, n + j, 1.0);
            avars.push_back(a);
            const double w = (i == j) ? 2.0 * x(i, i) : 4.0 * x(i, j);
            const int b = p.add_variable(-w);
            p.fs[b].add(0, i, n + j, 1.0);
            if (i != j) p.fs[b].add(0, j, n + i, 1.0);
            bvars.push_back(b);
        }
    } else {
        for (const auto& [i, j] : support) {
            const int a = p.add_variable(0.0);
            p.fs[a].add(0, i, j, 1.0);
            avars.push_back(a);
            const int c = p.add_variable(0.0);
            p.fs[c].add(0, n + i, n + j, 1.0);
            cvars.push_back(c);
            const int b1 = p.add_variable(-2.0 * x(i, j));
            p.fs[b1].add(0, i, n + j, 1.0);
            bvars.push_back(b1);
            if (i != j) {
                const int b2 = p.add_variable(-2.0 * x(j, i));
                p.fs[b2].add(0, j, n + i, 1.0);
                bvars.push_back(b2);
            }
        }
    }

    LinearEquality eq;
    eq.a.assign(p.num_vars, 0.0);
    for (int i = 0; i < n; ++i) {
        if (sym) {
            eq.a[avars[i]] = 2.0;  // Tr(A) + Tr(C) with A = C
        } else {
            eq.a[avars[i]] = 1.0;
            eq.a[cvars[i]] = 1.0;
        }
    }
    eq.b = 1.0;
    p.equalities.push_back(std::move(eq));

    p.initial_x.assign(p.num_vars, 0.0);
    for (int i = 0; i < n; ++i) {
        p.initial_x[avars[i]] = 1.0 / (2.0 * n);
        if (!sym) p.initial_x[cvars[i]] = 1.0 / (2.0 * n);
    }

    SdpSolution sol = solve_checked(p, ps.sdp, "sigma_dual");

    DenseMatrix a(n, n), b(n, n), c(n, n);
    if (sym) {
        for (size_t t = 0; t < support.size(); ++t) {
            const auto [i, j] = support[t];
            a(i, j) = a(j, i) = c(i, j) = c(j, i) = sol.x[avars[t]];
            b(i, j) = b(j, i) = sol.x[bvars[t]];
        }
    } else {
        size_t bi = 0;
        for (size_t t = 0; t < support.size(); ++t) {
            const auto [i, j] = support[t];
            a(i, j) = a(j, i) = sol.x[avars[t]];
            c(i, j) = c(j, i) = sol.x[cvars[t]];
            b(i, j) = sol.x[bvars[bi++]];
            if (i != j) b(j, i) = sol.x[bvars[bi++]];
        }
    }

    ParameterValue out;
    out.value = -sol.primal_objective;
    out.certificate.matrices.emplace("A", std::move(a));
    out.certificate.matrices.emplace("B", std::move(b));
    out.certificate.matrices.emplace("C", std::move(c));
    return out;
}

ParameterValue gamma_certified(const Graph& g, const ParamSettings& ps) {
    const int n = g.vertex_count();
    const DenseMatrix r = r_matrix(g);

    LmiProblem p;
    p.block_dims.assign(1, 2 * n);
    for (int i = 0; i < 2 * n; ++i) p.block_dims.push_back(1);

    DenseMatrix f0(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            f0(i, n + j) = r(i, j);
            f0(n + j, i) = r(i, j);
        }
    p.f0.push_back(std::move(f0));
    for (int i = 0; i < 2 * n; ++i) p.f0.emplace_back(1, 1);

    const int tv = p.add_variable(1.0);
    for (int i = 0; i < 2 * n; ++i) p.fs[tv].add(1 + i, 0, 0, 1.0);

    std::vector<int> pv, qv;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const int a = p.add_variable(0.0);
            p.fs[a].add(0, i, j, 1.0);
            if (i == j) {
                p.fs[a].add(1 + i, 0, 0, -1.0);
                pv.push_back(a);
            }
            const int b = p.add_variable(0.0);
            p.fs[b].add(0, n + i, n + j, 1.0);
            if (i == j) {
                p.fs[b].add(1 + n + i, 0, 0, -1.0);
                qv.push_back(b);
            }
        }

    const double nr = operator_norm(r);
    p.initial_x.assign(p.num_vars, 0.0);
    p.initial_x[tv] = nr + 2.0;
    for (int i = 0; i < n; ++i) p.initial_x[pv[i]] = p.initial_x[qv[i]] = nr + 1.0;

    SdpSolution sol = solve_checked(p, ps.sdp, "gamma");

    // reconstruct the psd completion blocks for the certificate
    DenseMatrix pm(n, n), qm(n, n);
    {
        auto blocks = eval_blocks(p, sol.x);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                pm(i, j) = blocks[0](i, j);
                qm(i, j) = blocks[0](n + i, n + j);
            }
    }

    ParameterValue out;
    out.value = sol.x[tv];
    out.certificate.matrices.emplace("P", std::move(pm));
    out.certificate.matrices.emplace("Q", std::move(qm));
    return out;
}

double theta_diag_kernel(int n) {
    if (n < 1) throw Error("theta_diag_kernel: n must be >= 1");
    // psd of a diagonal unit-diagonal completion forces every perturbation
    // entry >= -1; zero trace then caps any single entry at n-1
    DenseMatrix witness(n, n);
    witness(0, 0) = static_cast<double>(n - 1);
    for (int i = 1; i < n; ++i) witness(i, i) = -1.0;

    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += witness(i, i);
    const DenseMatrix completed = DenseMatrix::identity(n) + witness;
    if (std::abs(tr) > 1e-12 || !is_psd(completed, 1e-12) ||
        std::abs(operator_norm(completed) - n) > 1e-9 * n)
        throw Error("theta_diag_kernel: witness verification failed");
    return static_cast<double>(n);
}

double distortion_ratio(const Graph& g, const DenseMatrix& x, const ParamSettings& ps) {
    const double s = sigma(g, x, ps);
    // the effective floor never drops below what the solver can resolve
    const double floor_val = std::max(ps.ratio_floor, 10.0 * ps.sdp.gap_tol);
    if (s < floor_val)
        throw DegenerateQuotient("distortion_ratio: sigma = " + std::to_string(s) +
                                 " is below the floor (x lies in the kernel)");
    return d_inf(g, x, ps) / s;
}

DenseMatrix bipartite_witness(const Graph& g, const std::vector<int>& side1,
                              const std::vector<int>& side2) {
    const int n = g.vertex_count();
    auto check_side = [&](const std::vector<int>& side, const char* name) {
        if (side.empty()) throw NotInducedBipartite(std::string(name) + " is empty");
        for (int v : side)
            if (v < 1 || v > n)
                throw IndexOutOfRange(std::string(name) + " contains vertex " + std::to_string(v) +
                                      " outside 1.." + std::to_string(n));
    };
    check_side(side1, "side1");
    check_side(side2, "side2");

    std::set<int> s1(side1.begin(), side1.end()), s2(side2.begin(), side2.end());
    for (int v : s1)
        if (s2.count(v)) throw NotInducedBipartite("sides share vertex " + std::to_string(v));

    auto internal_edge = [&](const std::set<int>& s) {
        for (int u : s)
            for (int v : s)
                if (u < v && g.adjacent(u - 1, v - 1)) return true;
        return false;
    };
    if (internal_edge(s1) || internal_edge(s2))
        throw NotInducedBipartite("a side contains an internal edge");
    for (int u : s1)
        for (int v : s2)
            if (!g.adjacent(u - 1, v - 1))
                throw NotInducedBipartite("missing cross edge (" + std::to_string(u) + "," +
                                          std::to_string(v) + ")");

    DenseMatrix x(n, n);
    for (int u : s1)
        for (int v : s2) x(u - 1, v - 1) = 1.0;
    return x;
}

ThetaStability theta_stability_check(const Graph& g, int p, const ParamSettings& ps) {
    if (p < 1) throw Error("theta_stability_check: p must be >= 1");
    const long size = static_cast<long>(g.vertex_count()) * p;
    if (size > ps.product_cap)
        throw SizeCapExceeded("theta_stability_check: product size " + std::to_string(size) +
                              " exceeds cap " + std::to_string(ps.product_cap));
    std::vector<std::pair<int, int>> kp_edges;
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j) kp_edges.emplace_back(i, j);
    const Graph kp = Graph::from_edge_list(p, kp_edges);

    ThetaStability out;
    out.theta_g = theta(g, ps);
    out.theta_product = theta(strong_product(g, kp), ps);
    out.residual = std::abs(out.theta_product - out.theta_g);
    return out;
}

ProductCheck product_check(const Graph& g, const Graph& h, const DenseMatrix& x,
                           const DenseMatrix& y, const ParamSettings& ps) {
    const long size = static_cast<long>(g.vertex_count()) * h.vertex_count();
    if (size > ps.product_cap)
        throw SizeCapExceeded("product_check: product size " + std::to_string(size) +
                              " exceeds cap " + std::to_string(ps.product_cap));
    require_square_x(g, x, "product_check");
    require_square_x(h, y, "product_check");

    const Graph gh = strong_product(g, h);
    const DenseMatrix xy = kron(x, y);

    ProductCheck out;
    out.d_inf_g = d_inf(g, x, ps);
    out.d_inf_h = d_inf(h, y, ps);
    out.d_inf_product = d_inf(gh, xy, ps);
    out.d_inf_residual = std::abs(out.d_inf_product - out.d_inf_g * out.d_inf_h);
    out.sigma_g = sigma(g, x, ps);
    out.sigma_h = sigma(h, y, ps);
    out.sigma_product = sigma(gh, xy, ps);
    out.sigma_residual = std::abs(out.sigma_product - out.sigma_g * out.sigma_h);
    return out;
}

ParameterReport sandwich_report(const Graph& g, const ParamSettings& ps) {
    ParameterReport rep;
    rep.graph_hash = graph_hash(g);

    const int omega = clique_number(g, ps.omega_chi_cap);
    const int chi = chromatic_number(g, ps.omega_chi_cap);
    const SymEigen ae = sym_eigen(adjacency(g));
    const double lam1 = ae.values.empty() ? 0.0 : ae.values.front();
    const double wilf = 1.0 + lam1;

    ParameterValue tb = theta_bar_certified(g, ps);
    ParameterValue di = d_inf_certified(g, r_matrix(g), ps);
    const double th = theta(g, ps);
    const double gm = gamma(g, ps);

    rep.values["omega"] = omega;
    rep.values["chi"] = chi;
    rep.values["lambda1"] = lam1;
    rep.values["wilf_bound"] = wilf;
    rep.values["theta"] = th;
    rep.values["theta_bar"] = tb.value;
    rep.values["d_inf"] = di.value;
    rep.values["gamma"] = gm;
    rep.certificates.emplace("theta_bar", std::move(tb.certificate));
    rep.certificates.emplace("d_inf", std::move(di.certificate));

    const double tol = ps.flag_tol;
    auto add_flag = [&](const std::string& name, bool pass, double residual,
                        const std::string& detail) {
        rep.flags.push_back({name, pass, residual, detail});
    };

    const double classic_res = std::min(tb.value - omega, chi - tb.value);
    add_flag("sandwich_classic", classic_res >= -tol, classic_res,
             "min(theta_bar - omega, chi - theta_bar)");
    add_flag("wilf", wilf - chi >= -tol, wilf - chi, "1 + lambda1(A) - chi");

    const double eq_res = std::abs(tb.value - di.value);
    const bool equality = eq_res <= tol;
    add_flag("equality_case", equality, eq_res, "|theta_bar - d_inf(R)|");

    if (equality) {
        const double ns = tb.value - chi / gm;
        add_flag("new_sandwich_lower", ns >= -tol, ns, "theta_bar - chi/gamma");
        const double sp = tb.value - wilf / gm;
        add_flag("spectral_lower", sp >= -tol, sp, "theta_bar - (1 + lambda1)/gamma");
    } else {
        add_flag("new_sandwich_lower", true, 0.0, "not applicable: equality_case fails");
        add_flag("spectral_lower", true, 0.0, "not applicable: equality_case fails");
    }

    if (th <= 2.0 + tol) {
        add_flag("theta2_corollary", equality, eq_res,
                 "theta <= 2 must force theta_bar == d_inf(R)");
    } else {
        add_flag("theta2_corollary", true, th - 2.0, "not applicable: theta > 2");
    }
    return rep;
}

ParameterReport compute_report(const Graph& g, const DenseMatrix& x,
                               const std::vector<std::string>& params, const ParamSettings& ps) {
    ParameterReport rep;
    rep.graph_hash = graph_hash(g);
    for (const std::string& name : params) {
        if (name == "theta") {
            auto v = theta_certified(g, ps);
            rep.values[name] = v.value;
            rep.certificates[name] = std::move(v.certificate);
        } else if (name == "theta_bar") {
            auto v = theta_bar_certified(g, ps);
            rep.values[name] = v.value;
            rep.certificates[name] = std::move(v.certificate);
        } else if (name == "theta_dual") {
            auto v = theta_dual_certified(g, ps);
            rep.values[name] = v.value;
            rep.certificates[name] = std::move(v.certificate);
        } else if (name == "d_inf") {
            auto v = d_inf_certified(g, x, ps);
            rep.values[name] = v.value;
            rep.certificates[name] = std::move(v.certificate);
        } else if (name == "d_inf_dual") {
            auto v = d_inf_dual_certified(g, x, ps);
            rep.values[name] = v.value;
            rep.certificates[name] = std::move(v.certificate);
        } else if (name == "sigma") {
            auto v = sigma_certified(g, x, ps);
            rep.values[name] = v.value;
            rep.certificates[name] = std::move(v.certificate);
        } else if (name == "sigma_dual") {
            auto v = sigma_dual_certified(g, x, ps);
            rep.values[name] = v.value;
            rep.certificates[name] = std::move(v.certificate);
        } else if (name == "gamma") {
            auto v = gamma_certified(g, ps);
            rep.values[name] = v.value;
            rep.certificates[name] = std::move(v.certificate);
        } else if (name == "omega") {
            rep.values[name] = clique_number(g, ps.omega_chi_cap);
        } else if (name == "chi") {
            rep.values[name] = chromatic_number(g, ps.omega_chi_cap);
        } else if (name == "phi_induced") {
            rep.values[name] = induced_bipartite_max(g, ps.bipartite_cap).value;
        } else if (name == "ratio") {
            rep.values[name] = distortion_ratio(g, x, ps);
        } else if (name == "wilf_bound") {
            const SymEigen ae = sym_eigen(adjacency(g));
            rep.values[name] = 1.0 + (ae.values.empty() ? 0.0 : ae.values.front());
        } else {
            throw Error("unknown parameter name: " + name);
        }
    }
    return rep;
}

std::string report_to_json(const ParameterReport& r, int indent) {
    json j;
    j["graph_hash"] = r.graph_hash;
    j["values"] = json::object();
    for (const auto& [k, v] : r.values) j["values"][k] = v;
    j["flags"] = json::array();
    for (const auto& f : r.flags)
        j["flags"].push_back(
            {{"name", f.name}, {"pass", f.pass}, {"residual", f.residual}, {"detail", f.detail}});
    j["certificates"] = json::object();
    for (const auto& [k, cert] : r.certificates) {
        json c = json::object();
        for (const auto& [mk, m] : cert.matrices) c[mk] = matrix_to_string(m);
        j["certificates"][k] = std::move(c);
    }
    return j.dump(indent);
}

}  // namespace graphos
