#include "graphos/sdp.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace graphos {

const char* to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Optimal: return "Optimal";
        case SdpStatus::Infeasible: return "Infeasible";
        case SdpStatus::Unbounded: return "Unbounded";
        case SdpStatus::MaxIterations: return "MaxIterations";
    }
    return "?";
}

namespace {

using BlockMatrix = std::vector<DenseMatrix>;

constexpr double kHuge = 1e100;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs_vec(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s = std::max(s, std::abs(v));
    return s;
}

BlockMatrix zero_blocks(const std::vector<int>& dims) {
    BlockMatrix m;
    m.reserve(dims.size());
    for (int d : dims) m.emplace_back(d, d);
    return m;
}

BlockMatrix identity_blocks(const std::vector<int>& dims, double scale) {
    BlockMatrix m;
    m.reserve(dims.size());
    for (int d : dims) m.push_back(scale * DenseMatrix::identity(d));
    return m;
}

double block_inner(const BlockMatrix& a, const BlockMatrix& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        const auto& x = a[k].entries();
        const auto& y = b[k].entries();
        for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    }
    return s;
}

void block_axpy(BlockMatrix& a, double s, const BlockMatrix& b) {
    for (size_t k = 0; k < a.size(); ++k) {
        auto& x = a[k].entries();
        const auto& y = b[k].entries();
        for (size_t i = 0; i < x.size(); ++i) x[i] += s * y[i];
    }
}

void block_resym(BlockMatrix& a) {
    for (auto& m : a)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = i + 1; j < m.cols(); ++j) {
                const double v = 0.5 * (m(i, j) + m(j, i));
                m(i, j) = m(j, i) = v;
            }
}

double block_max_abs(const BlockMatrix& a) {
    double s = 0.0;
    for (const auto& m : a) s = std::max(s, max_abs(m));
    return s;
}

double block_lambda_min(const BlockMatrix& a) {
    double lmin = kHuge;
    for (const auto& m : a) {
        SymEigen e = sym_eigen(m);
        if (!e.values.empty()) lmin = std::min(lmin, e.values.back());
    }
    return lmin == kHuge ? 0.0 : lmin;
}

double sparse_inner(const SparseSymMatrix& f, const BlockMatrix& d) {
    double s = 0.0;
    for (const auto& e : f.entries) s += e.value * d[e.block](e.row, e.col);
    return s;
}

BlockMatrix eval_f(const LmiProblem& p, const std::vector<double>& x) {
    BlockMatrix s = p.f0;
    for (int i = 0; i < p.num_vars; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (const auto& e : p.fs[i].entries) s[e.block](e.row, e.col) += xi * e.value;
    }
    return s;
}

BlockMatrix assemble(const LmiProblem& p, const std::vector<double>& w) {
    BlockMatrix m = zero_blocks(p.block_dims);
    for (int i = 0; i < p.num_vars; ++i) {
        const double wi = w[i];
        if (wi == 0.0) continue;
        for (const auto& e : p.fs[i].entries) m[e.block](e.row, e.col) += wi * e.value;
    }
    return m;
}

// V f(Lambda) V^T with f(lambda) = lambda^expo
DenseMatrix eig_power(const SymEigen& e, double expo) {
    const int n = e.vectors.rows();
    DenseMatrix r(n, n);
    for (int k = 0; k < n; ++k) {
        double lam = e.values[k];
        lam = (expo < 0.0) ? std::max(lam, 1e-300) : std::max(lam, 0.0);
        const double f = std::pow(lam, expo);
        if (f == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const double fi = f * e.vectors(i, k);
            if (fi == 0.0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += fi * e.vectors(j, k);
        }
    }
    return r;
}

// largest alpha with A + alpha*dA psd, given A^{-1/2}; kHuge when unbounded
double max_step(const BlockMatrix& ainvhalf, const BlockMatrix& da) {
    double best = kHuge;
    for (size_t b = 0; b < da.size(); ++b) {
        DenseMatrix g = symmetrized(ainvhalf[b] * da[b] * ainvhalf[b]);
        SymEigen e = sym_eigen(g);
        if (e.values.empty()) continue;
        const double lmin = e.values.back();
        if (lmin < -1e-14) best = std::min(best, -1.0 / lmin);
    }
    return best;
}

bool cholesky_inplace(std::vector<double>& m, int n) {
    for (int j = 0; j < n; ++j) {
        double d = m[static_cast<size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            const double l = m[static_cast<size_t>(j) * n + k];
            d -= l * l;
        }
        if (d <= 0.0 || !std::isfinite(d)) return false;
        const double dj = std::sqrt(d);
        m[static_cast<size_t>(j) * n + j] = dj;
        for (int i = j + 1; i < n; ++i) {
            double s = m[static_cast<size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s -= m[static_cast<size_t>(i) * n + k] * m[static_cast<size_t>(j) * n + k];
            m[static_cast<size_t>(i) * n + j] = s / dj;
        }
    }
    return true;
}

void chol_solve(const std::vector<double>& l, int n, std::vector<double>& x) {
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= l[static_cast<size_t>(i) * n + k] * x[k];
        x[i] = s / l[static_cast<size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l[static_cast<size_t>(k) * n + i] * x[k];
        x[i] = s / l[static_cast<size_t>(i) * n + i];
    }
}

// Cholesky solve plus two rounds of iterative refinement; the Schur systems
// get very ill conditioned near the central path's end and the refinement
// keeps the Newton residual near machine level.
void chol_solve_refined(const std::vector<double>& m, const std::vector<double>& l, int n,
                        std::vector<double>& x) {
    const std::vector<double> rhs = x;
    chol_solve(l, n, x);
    std::vector<double> resid(n), corr(n);
    for (int round = 0; round < 2; ++round) {
        for (int i = 0; i < n; ++i) {
            double s = rhs[i];
            for (int k = 0; k < n; ++k) s -= m[static_cast<size_t>(i) * n + k] * x[k];
            resid[i] = s;
        }
        corr = resid;
        chol_solve(l, n, corr);
        for (int i = 0; i < n; ++i) x[i] += corr[i];
    }
}

void validate(const LmiProblem& p) {
    if (p.block_dims.empty()) throw Error("LmiProblem: no blocks");
    for (int d : p.block_dims)
        if (d < 1) throw Error("LmiProblem: block dimension must be positive");
    const size_t nv = static_cast<size_t>(p.num_vars);
    if (p.c.size() != nv || p.fs.size() != nv)
        throw Error("LmiProblem: c/fs sizes do not match num_vars");
    if (p.f0.size() != p.block_dims.size()) throw Error("LmiProblem: f0 block count mismatch");
    for (size_t b = 0; b < p.f0.size(); ++b) {
        if (p.f0[b].rows() != p.block_dims[b] || p.f0[b].cols() != p.block_dims[b])
            throw Error("LmiProblem: f0 block dimension mismatch");
        if (!is_symmetric(p.f0[b], kSymTol)) throw NotSymmetric("LmiProblem: f0 is not symmetric");
    }
    const int nb = static_cast<int>(p.block_dims.size());
    for (const auto& f : p.fs) {
        std::map<std::tuple<int, int, int>, double> acc;
        double scale = 0.0;
        for (const auto& e : f.entries) {
            if (e.block < 0 || e.block >= nb || e.row < 0 || e.col < 0 ||
                e.row >= p.block_dims[e.block] || e.col >= p.block_dims[e.block])
                throw Error("LmiProblem: constraint entry out of range");
            acc[{e.block, e.row, e.col}] += e.value;
            scale = std::max(scale, std::abs(e.value));
        }
        for (const auto& [key, v] : acc) {
            const auto& [b, r, c] = key;
            auto it = acc.find({b, c, r});
            const double w = (it == acc.end()) ? 0.0 : it->second;
            if (std::abs(v - w) > kSymTol * std::max(1.0, scale))
                throw NotSymmetric("LmiProblem: constraint matrix is not symmetric");
        }
    }
    for (const auto& eq : p.equalities)
        if (eq.a.size() != nv) throw Error("LmiProblem: equality row length mismatch");
    if (!p.initial_x.empty() && p.initial_x.size() != nv)
        throw Error("LmiProblem: initial_x length mismatch");
}

void fill_stats(const LmiProblem& p, const std::vector<double>& x, const BlockMatrix& s,
                const BlockMatrix& z, SdpSolution& sol) {
    sol.x = x;
    sol.primal_objective = dot(p.c, x);
    sol.dual_objective = -block_inner(p.f0, z);
    sol.complementarity = block_inner(s, z);
    double dres = 0.0;
    for (int i = 0; i < p.num_vars; ++i)
        dres = std::max(dres, std::abs(p.c[i] - sparse_inner(p.fs[i], z)));
    sol.dual_residual = dres;
    sol.gap = std::abs(sol.primal_objective - sol.dual_objective);
    sol.dual_matrix = z;
}

// Path-following core.  x_start must be strictly feasible: F(x_start) > 0.
SdpSolution ipm_core(const LmiProblem& p, const std::vector<double>& x_start,
                     const SdpSettings& set) {
    const int nv = p.num_vars;
    const int nb = static_cast<int>(p.block_dims.size());
    int tdim = 0;
    for (int d : p.block_dims) tdim += d;

    std::vector<double> x = x_start;
    BlockMatrix S = eval_f(p, x);
    BlockMatrix Z = identity_blocks(p.block_dims, set.initial_scale);

    SdpSolution sol;
    sol.status = SdpStatus::MaxIterations;

    const double unbounded_floor = -1e12 * std::max(1.0, std::abs(dot(p.c, x)));
    const double mu0 = block_inner(S, Z) / tdim;

    std::vector<double> g(nv), fsinv(nv), dx(nv), dxa(nv);
    std::vector<double> schur(static_cast<size_t>(nv) * nv), chol;
    BlockMatrix dS, dZ, dSa, dZa;

    // The reported primal value sits within
    //   comp + |x.g| + ||x||_1 * ||g||_inf
    // of a certified dual bound; track the iterate minimizing that budget and
    // hand it back, since very late iterates can drown in conditioning noise.
    struct Snapshot {
        std::vector<double> x;
        BlockMatrix s, z;
        double err = kHuge;
        int iter = 0;
    } best;
    std::vector<double> err_history;

    for (int iter = 0; iter <= set.max_iter; ++iter) {
        for (int i = 0; i < nv; ++i) g[i] = p.c[i] - sparse_inner(p.fs[i], Z);
        const double comp = block_inner(S, Z);
        const double dres = max_abs_vec(g);
        const double xg = dot(x, g);
        const double obj_p = dot(p.c, x);
        double x1 = 0.0;
        for (double v : x) x1 += std::abs(v);
        const double err_budget =
            (std::isfinite(comp) && comp >= 0.0)
                ? comp + std::abs(xg) + dres * std::max(1.0, x1)
                : kHuge;

        if (err_budget < best.err) {
            best.x = x;
            best.s = S;
            best.z = Z;
            best.err = err_budget;
            best.iter = iter;
        }
        err_history.push_back(err_budget);

        if (err_budget <= set.gap_tol) {
            fill_stats(p, x, S, Z, sol);
            sol.iterations = iter;
            sol.status = SdpStatus::Optimal;
            return sol;
        }
        if (obj_p < unbounded_floor) {
            fill_stats(p, x, S, Z, sol);
            sol.iterations = iter;
            sol.status = SdpStatus::Unbounded;
            return sol;
        }
        if (iter == set.max_iter) break;
        if (!std::isfinite(comp) || comp <= 0.0) break;  // numerical collapse

        const double mu = comp / tdim;
        if (mu < 1e-13 * std::max(1.0, mu0)) break;
        // no meaningful progress over a trailing window
        if (err_history.size() > 12 &&
            err_budget > 0.9 * err_history[err_history.size() - 12])
            break;

        // Nesterov-Todd scaling V per block (V S V = Z), plus the inverse
        // square roots used for exact step lengths
        BlockMatrix Sinv(nb), Sinvh(nb), V(nb), Zinvh(nb);
        for (int b = 0; b < nb; ++b) {
            SymEigen es = sym_eigen(S[b]);
            DenseMatrix shalf = eig_power(es, 0.5);
            Sinvh[b] = eig_power(es, -0.5);
            Sinv[b] = eig_power(es, -1.0);
            SymEigen et = sym_eigen(symmetrized(shalf * Z[b] * shalf));
            V[b] = symmetrized(Sinvh[b] * eig_power(et, 0.5) * Sinvh[b]);
            SymEigen ez = sym_eigen(Z[b]);
            Zinvh[b] = eig_power(ez, -0.5);
        }

        // Schur complement M_ij = sum_blocks Tr(F_i V F_j V), via the sparse
        // entry lists: Tr(F_i V F_j V) = sum_{e in F_i, f in F_j}
        //   e.v * f.v * V(e.col, f.row) * V(f.col, e.row)
        for (int i = 0; i < nv; ++i) {
            for (int j = i; j < nv; ++j) {
                double s = 0.0;
                for (const auto& e : p.fs[i].entries)
                    for (const auto& f : p.fs[j].entries) {
                        if (e.block != f.block) continue;
                        const auto& v = V[e.block];
                        s += e.value * f.value * v(e.col, f.row) * v(f.col, e.row);
                    }
                schur[static_cast<size_t>(i) * nv + j] = s;
                schur[static_cast<size_t>(j) * nv + i] = s;
            }
        }
        chol = schur;
        bool ok = cholesky_inplace(chol, nv);
        for (int attempt = 0; !ok && attempt < 3; ++attempt) {
            double base = 1.0;
            for (int i = 0; i < nv; ++i)
                base = std::max(base, schur[static_cast<size_t>(i) * nv + i]);
            const double jitter = std::pow(100.0, attempt) * 1e-13 * base;
            chol = schur;
            for (int i = 0; i < nv; ++i) chol[static_cast<size_t>(i) * nv + i] += jitter;
            ok = cholesky_inplace(chol, nv);
        }
        if (!ok) break;

        for (int i = 0; i < nv; ++i) fsinv[i] = sparse_inner(p.fs[i], Sinv);

        // Newton direction for target sigma*mu:
        //   M dx = sigma*mu * A(S^{-1}) - c
        //   dS = sum dx_i F_i,   dZ = sigma*mu*S^{-1} - Z - V dS V
        auto newton = [&](double sigma_mu, std::vector<double>& out_dx, BlockMatrix& out_ds,
                          BlockMatrix& out_dz) {
            for (int i = 0; i < nv; ++i) out_dx[i] = sigma_mu * fsinv[i] - p.c[i];
            chol_solve_refined(schur, chol, nv, out_dx);
            out_ds = assemble(p, out_dx);
            out_dz = zero_blocks(p.block_dims);
            for (int b = 0; b < nb; ++b) {
                DenseMatrix vdsv = V[b] * out_ds[b] * V[b];
                auto& t = out_dz[b].entries();
                const auto& si = Sinv[b].entries();
                const auto& zz = Z[b].entries();
                const auto& w = vdsv.entries();
                for (size_t q = 0; q < t.size(); ++q) t[q] = sigma_mu * si[q] - zz[q] - w[q];
            }
            block_resym(out_dz);
        };

        // predictor fixes the centering weight, corrector takes the step
        newton(0.0, dxa, dSa, dZa);
        const double apa = std::min(1.0, max_step(Sinvh, dSa));
        const double ada = std::min(1.0, max_step(Zinvh, dZa));
        double comp_aff = comp + apa * block_inner(dSa, Z) + ada * block_inner(S, dZa) +
                          apa * ada * block_inner(dSa, dZa);
        comp_aff = std::max(comp_aff, 0.0);
        double sigma = std::clamp(std::pow(comp_aff / comp, 3.0), 1e-10, 0.9999);
        // while dual feasibility lags complementarity, keep the path centered
        // so the Z step does not get pinned at the cone boundary; in the
        // end-game (comp at tolerance) centering only amplifies solve noise
        if (dres * std::max(1.0, x1) > comp && comp > set.gap_tol) sigma = std::max(sigma, 0.5);

        newton(sigma * mu, dx, dS, dZ);
        const double tau = 0.98;
        const double ap = std::min(1.0, tau * max_step(Sinvh, dS));
        const double ad = std::min(1.0, tau * max_step(Zinvh, dZ));
        if (set.trace)
            std::fprintf(stderr,
                         "  it %3d  mu %.3e  comp %.3e  dres %.3e  err %.3e  sigma %.2e  "
                         "ap %.2e  ad %.2e\n",
                         iter, mu, comp, dres, err_budget, sigma, ap, ad);
        if (std::min(ap, ad) < 1e-12) break;  // stalled

        for (int i = 0; i < nv; ++i) x[i] += ap * dx[i];
        block_axpy(S, ap, dS);
        block_axpy(Z, ad, dZ);
        block_resym(S);
        block_resym(Z);
    }

    if (best.err < kHuge) {
        fill_stats(p, best.x, best.s, best.z, sol);
        sol.iterations = best.iter;
        sol.status = (best.err <= set.gap_tol) ? SdpStatus::Optimal : SdpStatus::MaxIterations;
    } else {
        fill_stats(p, x, S, Z, sol);
        sol.iterations = set.max_iter;
    }
    return sol;
}

SdpSolution solve_impl(const LmiProblem& p, const SdpSettings& set);

// Remove a.x = b constraints by reparametrizing x = x0 + N y over the null
// space of the equality system, then solve the reduced pure-LMI problem.
SdpSolution solve_with_equalities(const LmiProblem& p, const SdpSettings& set) {
    const int nv = p.num_vars;
    const int k = static_cast<int>(p.equalities.size());

    std::vector<std::vector<double>> rows(k, std::vector<double>(nv + 1, 0.0));
    double scale = 1.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < nv; ++j) rows[i][j] = p.equalities[i].a[j];
        rows[i][nv] = p.equalities[i].b;
        scale = std::max(scale, max_abs_vec(rows[i]));
    }
    const double tol = 1e-12 * scale;

    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < nv && r < k; ++col) {
        int arg = -1;
        double best = tol;
        for (int i = r; i < k; ++i)
            if (std::abs(rows[i][col]) > best) {
                best = std::abs(rows[i][col]);
                arg = i;
            }
        if (arg < 0) continue;
        std::swap(rows[r], rows[arg]);
        const double piv = rows[r][col];
        for (int j = col; j <= nv; ++j) rows[r][j] /= piv;
        for (int i = 0; i < k; ++i) {
            if (i == r) continue;
            const double f = rows[i][col];
            if (f == 0.0) continue;
            for (int j = col; j <= nv; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (int i = r; i < k; ++i)
        if (std::abs(rows[i][nv]) > tol) {
            SdpSolution sol;
            sol.status = SdpStatus::Infeasible;
            sol.primal_objective = sol.dual_objective = sol.gap =
                std::numeric_limits<double>::quiet_NaN();
            return sol;
        }

    std::vector<char> is_pivot(nv, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    std::vector<int> free_col;
    for (int j = 0; j < nv; ++j)
        if (!is_pivot[j]) free_col.push_back(j);
    const int f = static_cast<int>(free_col.size());

    std::vector<double> x0(nv, 0.0);
    for (int i = 0; i < r; ++i) x0[pivot_col[i]] = rows[i][nv];

    // column j of N: 1 at free_col[j], -rows[i][free_col[j]] at pivot_col[i]
    auto ncoef = [&](int var, int j) -> double {
        if (var == free_col[j]) return 1.0;
        for (int i = 0; i < r; ++i)
            if (pivot_col[i] == var) return -rows[i][free_col[j]];
        return 0.0;
    };

    LmiProblem rp;
    rp.block_dims = p.block_dims;
    rp.f0 = eval_f(p, x0);
    block_resym(rp.f0);
    for (int j = 0; j < f; ++j) {
        rp.add_variable(0.0);
        double cj = 0.0;
        std::map<std::tuple<int, int, int>, double> acc;
        for (int var = 0; var < nv; ++var) {
            const double w = ncoef(var, j);
            if (w == 0.0) continue;
            cj += w * p.c[var];
            for (const auto& e : p.fs[var].entries) acc[{e.block, e.row, e.col}] += w * e.value;
        }
        rp.c[j] = cj;
        for (const auto& [key, v] : acc) {
            if (std::abs(v) < 1e-14) continue;
            const auto& [b, rr, cc] = key;
            rp.fs[j].entries.push_back({b, rr, cc, v});
        }
    }
    if (!p.initial_x.empty()) {
        rp.initial_x.resize(f);
        for (int j = 0; j < f; ++j) rp.initial_x[j] = p.initial_x[free_col[j]];
    }
    const double const_obj = dot(p.c, x0);

    SdpSolution sub = solve_impl(rp, set);

    SdpSolution sol = sub;
    if (sub.status == SdpStatus::Infeasible) return sol;
    sol.x.assign(nv, 0.0);
    for (int var = 0; var < nv; ++var) {
        double v = x0[var];
        for (int j = 0; j < f && j < static_cast<int>(sub.x.size()); ++j)
            v += ncoef(var, j) * sub.x[j];
        sol.x[var] = v;
    }
    sol.primal_objective += const_obj;
    sol.dual_objective += const_obj;
    return sol;
}

// Max-margin feasibility search: max s s.t. F(x) - s I >= 0, s <= 1.
// Started from x = 0, which is always strictly inside for s negative enough.
SdpSolution phase1(const LmiProblem& p, const SdpSettings& set) {
    LmiProblem ph;
    ph.block_dims = p.block_dims;
    ph.block_dims.push_back(1);
    ph.f0 = p.f0;
    ph.f0.emplace_back(1, 1);
    ph.f0.back()(0, 0) = 1.0;  // margin capped at 1
    for (int i = 0; i < p.num_vars; ++i) {
        ph.add_variable(0.0);
        ph.fs[i] = p.fs[i];
    }
    const int si = ph.add_variable(-1.0);
    for (size_t b = 0; b < p.block_dims.size(); ++b)
        for (int d = 0; d < p.block_dims[b]; ++d)
            ph.fs[si].add(static_cast<int>(b), d, d, -1.0);
    ph.fs[si].add(static_cast<int>(p.block_dims.size()), 0, 0, -1.0);

    std::vector<double> seed(ph.num_vars, 0.0);
    seed[si] = std::min(block_lambda_min(p.f0) - 1.0, 0.0);

    SdpSettings ps = set;
    ps.gap_tol = std::max(set.gap_tol, 1e-8);
    ps.max_iter = std::max(set.max_iter, 100);
    return ipm_core(ph, seed, ps);
}

SdpSolution solve_impl(const LmiProblem& p, const SdpSettings& set) {
    if (!p.equalities.empty()) return solve_with_equalities(p, set);

    if (p.num_vars == 0) {
        SdpSolution sol;
        const double lmin = block_lambda_min(p.f0);
        if (lmin >= -set.feas_tol) {
            sol.status = SdpStatus::Optimal;
            sol.dual_matrix = zero_blocks(p.block_dims);
        } else {
            sol.status = SdpStatus::Infeasible;
            sol.primal_objective = sol.dual_objective = sol.gap =
                std::numeric_limits<double>::quiet_NaN();
        }
        return sol;
    }

    auto strict_margin = [&](const std::vector<double>& x) {
        BlockMatrix s = eval_f(p, x);
        return block_lambda_min(s) - 1e-12 * std::max(1.0, block_max_abs(s));
    };

    std::vector<double> x0;
    if (!p.initial_x.empty() && strict_margin(p.initial_x) > 0.0) x0 = p.initial_x;
    if (x0.empty()) {
        std::vector<double> zeros(p.num_vars, 0.0);
        if (strict_margin(zeros) > 0.0) x0 = zeros;
    }
    if (x0.empty()) {
        SdpSolution p1 = phase1(p, set);
        const double margin = p1.x.empty() ? -1.0 : p1.x.back();
        if (margin <= 1e-9) {
            SdpSolution sol;
            sol.status = SdpStatus::Infeasible;
            sol.primal_objective = sol.dual_objective = sol.gap =
                std::numeric_limits<double>::quiet_NaN();
            // Z from phase-1 certifies: Z >= 0, Tr(F_i Z) ~ 0, Tr(F0 Z) < 0
            if (!p1.dual_matrix.empty())
                sol.dual_matrix.assign(p1.dual_matrix.begin(),
                                       p1.dual_matrix.begin() + p.block_dims.size());
            return sol;
        }
        x0.assign(p1.x.begin(), p1.x.end() - 1);
    }

    return ipm_core(p, x0, set);
}

}  // namespace

SdpSolution solve(const LmiProblem& p, const SdpSettings& settings) {
    validate(p);
    return solve_impl(p, settings);
}

namespace {

void extract_nonzeros(const DenseMatrix& m, int block, double sign, SparseSymMatrix& out) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0) out.entries.push_back({block, i, j, sign * m(i, j)});
}

LmiProblem build_min_lambda1(const DenseMatrix& a0, const std::vector<DenseMatrix>& dirs,
                             double t_seed) {
    const int n = a0.rows();
    LmiProblem p;
    p.block_dims = {n};
    p.f0 = {symmetrized(-1.0 * a0)};
    const int ti = p.add_variable(1.0);
    for (int d = 0; d < n; ++d) p.fs[ti].entries.push_back({0, d, d, 1.0});
    for (const auto& dir : dirs) {
        const int ki = p.add_variable(0.0);
        extract_nonzeros(symmetrized(dir), 0, -1.0, p.fs[ki]);
    }
    p.initial_x.assign(p.num_vars, 0.0);
    p.initial_x[0] = t_seed;
    return p;
}

LmiProblem build_min_opnorm(const DenseMatrix& x0, const std::vector<DenseMatrix>& dirs,
                            double t_seed) {
    const int r = x0.rows();
    const int c = x0.cols();
    LmiProblem p;
    p.block_dims = {r + c};
    DenseMatrix f0(r + c, r + c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            f0(i, r + j) = x0(i, j);
            f0(r + j, i) = x0(i, j);
        }
    p.f0 = {f0};
    const int ti = p.add_variable(1.0);
    for (int d = 0; d < r + c; ++d) p.fs[ti].entries.push_back({0, d, d, 1.0});
    for (const auto& dir : dirs) {
        const int ki = p.add_variable(0.0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (dir(i, j) != 0.0) {
                    p.fs[ki].entries.push_back({0, i, r + j, dir(i, j)});
                    p.fs[ki].entries.push_back({0, r + j, i, dir(i, j)});
                }
    }
    p.initial_x.assign(p.num_vars, 0.0);
    p.initial_x[0] = t_seed;
    return p;
}

// Feasibility oracle for the bisection fallback: max-margin problem at fixed
// t for a builder-produced family.  Positive margin certifies feasibility.
struct MarginResult {
    double margin = -kHuge;
    std::vector<double> k;
    SdpSolution sol;
};

MarginResult margin_at(const LmiProblem& family, double t, const SdpSettings& set) {
    // family has variable 0 = t; freeze it into F0 and add the margin var
    LmiProblem mp;
    mp.block_dims = family.block_dims;
    mp.block_dims.push_back(1);
    mp.f0 = family.f0;
    for (const auto& e : family.fs[0].entries) mp.f0[e.block](e.row, e.col) += t * e.value;
    mp.f0.emplace_back(1, 1);
    mp.f0.back()(0, 0) = 1.0;
    for (int i = 1; i < family.num_vars; ++i) {
        const int ki = mp.add_variable(0.0);
        mp.fs[ki] = family.fs[i];
    }
    const int si = mp.add_variable(-1.0);
    for (size_t b = 0; b < family.block_dims.size(); ++b)
        for (int d = 0; d < family.block_dims[b]; ++d)
            mp.fs[si].add(static_cast<int>(b), d, d, -1.0);
    mp.fs[si].add(static_cast<int>(family.block_dims.size()), 0, 0, -1.0);

    mp.initial_x.assign(mp.num_vars, 0.0);
    mp.initial_x[si] = std::min(block_lambda_min(mp.f0) - 1.0, 0.0);
    // the capped-margin block needs s0 < 1, which the min() guarantees

    SdpSettings ms = set;
    ms.gap_tol = std::min(set.gap_tol, 1e-8);
    SdpSolution sol = solve(mp, ms);
    MarginResult out;
    out.sol = sol;
    if (sol.x.empty()) return out;
    out.margin = sol.x.back();
    out.k.assign(sol.x.begin(), sol.x.end() - 1);
    return out;
}

AffineOptResult bisect_fallback(const LmiProblem& family, double lo, double hi,
                                std::vector<double> k_hi, const SdpSettings& set,
                                const char* what) {
    SdpSolution last;
    for (int it = 0; it < 80 && hi - lo > 0.5 * set.gap_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        MarginResult m = margin_at(family, mid, set);
        if (m.sol.status != SdpStatus::Optimal && m.sol.status != SdpStatus::MaxIterations)
            throw SolverFailure(std::string(what) + ": margin oracle failed (" +
                                to_string(m.sol.status) + ")");
        if (m.margin > 1e-9) {
            hi = mid;
            k_hi = m.k;
            last = m.sol;
        } else {
            lo = mid;
        }
    }
    AffineOptResult out;
    out.value = hi;
    out.coefficients = std::move(k_hi);
    out.solution = last;
    out.solution.status = SdpStatus::Optimal;
    out.solution.gap = hi - lo;
    return out;
}

AffineOptResult run_affine(const LmiProblem& family, double ub_seed, double lo0,
                           const SdpSettings& set, const char* what, bool probe_lower) {
    SdpSolution sol = solve(family, set);
    if (sol.status == SdpStatus::Optimal) {
        AffineOptResult out;
        out.value = sol.x[0];
        out.coefficients.assign(sol.x.begin() + 1, sol.x.end());
        out.solution = std::move(sol);
        return out;
    }
    if (sol.status == SdpStatus::Unbounded)
        throw SolverFailure(std::string(what) + ": problem is unbounded below");

    // path-follower stalled: bisection on t with a max-margin feasibility
    // oracle; t = ub_seed is strictly feasible with zero coefficients
    double hi = ub_seed;
    std::vector<double> k_hi(family.num_vars - 1, 0.0);
    double lo = lo0;
    if (probe_lower) {
        lo = hi - 2.0;
        double width = 2.0;
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 50)
                throw SolverFailure(std::string(what) + ": lower probe found no finite bound");
            MarginResult m = margin_at(family, lo, set);
            if (m.margin > 1e-9) {
                hi = lo;
                k_hi = m.k;
                width *= 2.0;
                lo -= width;
            } else {
                break;
            }
        }
    }
    return bisect_fallback(family, lo, hi, std::move(k_hi), set, what);
}

}  // namespace

AffineOptResult min_lambda1(const DenseMatrix& a0, const std::vector<DenseMatrix>& directions,
                            const SdpSettings& settings) {
    if (!a0.square()) throw NotSquare("min_lambda1: a0 must be square");
    if (!is_symmetric(a0, kSymTol)) throw NotSymmetric("min_lambda1: a0 must be symmetric");
    for (const auto& d : directions) {
        if (d.rows() != a0.rows() || d.cols() != a0.cols())
            throw ShapeMismatch("min_lambda1: direction shape mismatch");
        if (!is_symmetric(d, kSymTol)) throw NotSymmetric("min_lambda1: directions must be symmetric");
    }
    SymEigen e = sym_eigen(a0);
    const double lam1 = e.values.empty() ? 0.0 : e.values.front();
    LmiProblem family = build_min_lambda1(a0, directions, lam1 + 1.0);
    return run_affine(family, lam1 + 1.0, 0.0, settings, "min_lambda1", /*probe_lower=*/true);
}

AffineOptResult min_opnorm_affine(const DenseMatrix& x0, const std::vector<DenseMatrix>& directions,
                                  const SdpSettings& settings) {
    for (const auto& d : directions)
        if (d.rows() != x0.rows() || d.cols() != x0.cols())
            throw ShapeMismatch("min_opnorm_affine: direction shape mismatch");
    const double nrm = operator_norm(x0);
    LmiProblem family = build_min_opnorm(x0, directions, nrm + 1.0);
    // operator norms are nonnegative, so t = 0 bounds the bisection below
    return run_affine(family, nrm + 1.0, 0.0, settings, "min_opnorm_affine", /*probe_lower=*/false);
}

void dump_lmi(const LmiProblem& p, std::ostream& out) {
    out << "lmi 1\n";
    out << "vars " << p.num_vars << "\n";
    out << "blocks " << p.block_dims.size();
    for (int d : p.block_dims) out << " " << d;
    out << "\n";
    out << "c";
    char buf[32];
    for (double v : p.c) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << " " << buf;
    }
    out << "\n";
    out << "eq " << p.equalities.size() << "\n";
    for (const auto& eq : p.equalities) {
        for (double v : eq.a) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << buf << " ";
        }
        std::snprintf(buf, sizeof(buf), "%.17g", eq.b);
        out << buf << "\n";
    }
    size_t count = 0;
    for (size_t b = 0; b < p.f0.size(); ++b)
        for (int i = 0; i < p.f0[b].rows(); ++i)
            for (int j = 0; j < p.f0[b].cols(); ++j)
                if (p.f0[b](i, j) != 0.0) ++count;
    for (const auto& f : p.fs) count += f.entries.size();
    out << "entries " << count << "\n";
    for (size_t b = 0; b < p.f0.size(); ++b)
        for (int i = 0; i < p.f0[b].rows(); ++i)
            for (int j = 0; j < p.f0[b].cols(); ++j)
                if (p.f0[b](i, j) != 0.0) {
                    std::snprintf(buf, sizeof(buf), "%.17g", p.f0[b](i, j));
                    out << "0 " << b << " " << i << " " << j << " " << buf << "\n";
                }
    for (int v = 0; v < p.num_vars; ++v)
        for (const auto& e : p.fs[v].entries) {
            std::snprintf(buf, sizeof(buf), "%.17g", e.value);
            out << (v + 1) << " " << e.block << " " << e.row << " " << e.col << " " << buf << "\n";
        }
    out << "seed " << p.initial_x.size();
    for (double v : p.initial_x) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << " " << buf;
    }
    out << "\n";
}

std::string dump_lmi_to_tempfile(const LmiProblem& p, const std::string& tag) {
    const char* base = std::getenv("TMPDIR");
    std::string dir = base ? base : "/tmp";
    static std::atomic<unsigned> counter{0};
    const std::string path = dir + "/graphos_" + tag + "_" + std::to_string(counter.fetch_add(1)) +
                             "_" + std::to_string(::getpid()) + ".lmi";
    std::ofstream out(path);
    if (out) dump_lmi(p, out);
    return path;
}

LmiProblem load_lmi(std::istream& in) {
    auto fail = [](const std::string& msg) -> ParseError { return ParseError(0, "lmi dump: " + msg); };
    std::string word;
    int version = 0;
    if (!(in >> word >> version) || word != "lmi" || version != 1) throw fail("bad header");
    LmiProblem p;
    int nv = 0;
    if (!(in >> word >> nv) || word != "vars" || nv < 0) throw fail("bad vars line");
    size_t nb = 0;
    if (!(in >> word >> nb) || word != "blocks") throw fail("bad blocks line");
    p.block_dims.resize(nb);
    for (auto& d : p.block_dims)
        if (!(in >> d) || d < 1) throw fail("bad block dimension");
    if (!(in >> word) || word != "c") throw fail("missing objective");
    for (int i = 0; i < nv; ++i) {
        double v;
        if (!(in >> v)) throw fail("short objective");
        p.add_variable(v);
    }
    size_t neq = 0;
    if (!(in >> word >> neq) || word != "eq") throw fail("bad eq line");
    for (size_t i = 0; i < neq; ++i) {
        LinearEquality eq;
        eq.a.resize(nv);
        for (auto& v : eq.a)
            if (!(in >> v)) throw fail("short equality row");
        if (!(in >> eq.b)) throw fail("short equality row");
        p.equalities.push_back(std::move(eq));
    }
    size_t nent = 0;
    if (!(in >> word >> nent) || word != "entries") throw fail("bad entries line");
    for (int d : p.block_dims) p.f0.emplace_back(d, d);
    for (size_t i = 0; i < nent; ++i) {
        int mi, b, r, c;
        double v;
        if (!(in >> mi >> b >> r >> c >> v)) throw fail("short entry list");
        if (mi < 0 || mi > nv || b < 0 || b >= static_cast<int>(nb)) throw fail("entry out of range");
        if (r < 0 || c < 0 || r >= p.block_dims[b] || c >= p.block_dims[b])
            throw fail("entry index out of range");
        if (mi == 0)
            p.f0[b](r, c) = v;
        else
            p.fs[mi - 1].entries.push_back({b, r, c, v});
    }
    size_t nseed = 0;
    if (!(in >> word >> nseed) || word != "seed") throw fail("bad seed line");
    p.initial_x.resize(nseed);
    for (auto& v : p.initial_x)
        if (!(in >> v)) throw fail("short seed");
    return p;
}

}  // namespace graphos
