#pragma once

// Small dense semidefinite programming in linear-matrix-inequality form:
//
//     minimize    c.x
//     subject to  F(x) = F0 + sum_i x_i F_i  >= 0   (block diagonal)
//                 a_k.x = b_k                        (optional equalities)
//
// solved by an infeasible-start primal-dual path-following interior point
// method with Nesterov-Todd scaling.  Equalities are removed up front by
// null-space reparametrization.  Built for problems with matrix dimension
// up to ~200 and up to ~10^3 variables; no sparsity exploitation beyond the
// constraint matrices themselves.

#include <iosfwd>
#include <string>
#include <vector>

#include "graphos/linalg.hpp"

namespace graphos {

struct SparseEntry {
    int block = 0;
    int row = 0;
    int col = 0;
    double value = 0.0;
};

// A symmetric block-diagonal matrix stored as explicit nonzeros (both halves
// of each off-diagonal pair are present).
struct SparseSymMatrix {
    std::vector<SparseEntry> entries;

    void add(int block, int row, int col, double value) {
        entries.push_back({block, row, col, value});
        if (row != col) entries.push_back({block, col, row, value});
    }
};

struct LinearEquality {
    std::vector<double> a;
    double b = 0.0;
};

struct LmiProblem {
    std::vector<int> block_dims;
    int num_vars = 0;
    std::vector<double> c;
    std::vector<DenseMatrix> f0;        // one dense symmetric matrix per block
    std::vector<SparseSymMatrix> fs;    // one per variable, same block structure
    std::vector<LinearEquality> equalities;

    // Optional strictly feasible seed (F(x) > 0, equalities satisfied).
    // When absent the solver falls back to a max-margin phase-1 search and
    // reports Infeasible if none exists.
    std::vector<double> initial_x;

    int add_variable(double objective_coeff) {
        c.push_back(objective_coeff);
        fs.emplace_back();
        return num_vars++;
    }
};

struct SdpSettings {
    double gap_tol = 1e-7;    // absolute duality gap at Optimal
    double feas_tol = 1e-8;   // dual feasibility residual at Optimal
    double comp_tol = 1e-6;   // |Tr(F(x) Z)| at Optimal
    int max_iter = 200;
    double initial_scale = 1.0;  // Z starts at initial_scale * I
    bool trace = false;          // per-iteration progress to stderr
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, MaxIterations };

const char* to_string(SdpStatus s);

struct SdpSolution {
    SdpStatus status = SdpStatus::MaxIterations;
    std::vector<double> x;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double gap = 0.0;                    // |primal - dual|
    double dual_residual = 0.0;          // max_i |c_i - Tr(F_i Z)|
    double complementarity = 0.0;        // Tr(F(x) Z)
    int iterations = 0;
    std::vector<DenseMatrix> dual_matrix;  // Z per block; infeasibility witness when Infeasible
};

SdpSolution solve(const LmiProblem& p, const SdpSettings& settings = {});

// Scalar-objective wrappers.  Both fall back to bisection on t with a
// max-margin feasibility oracle if the path-follower stalls, and throw
// SolverFailure only when that fails too.
struct AffineOptResult {
    double value = 0.0;
    std::vector<double> coefficients;
    SdpSolution solution;
};

// min over coefficients k of lambda_1(a0 + sum_i k_i d_i); directions symmetric
AffineOptResult min_lambda1(const DenseMatrix& a0, const std::vector<DenseMatrix>& directions,
                            const SdpSettings& settings = {});

// min over coefficients k of ||x0 + sum_i k_i d_i|| via the 2x2 dilation LMI
AffineOptResult min_opnorm_affine(const DenseMatrix& x0, const std::vector<DenseMatrix>& directions,
                                  const SdpSettings& settings = {});

// Debug dump for replay and external cross-checking.  Entries are one line
// per nonzero: matrix-index (0 for F0, i for F_i), block, row, col, value.
void dump_lmi(const LmiProblem& p, std::ostream& out);
LmiProblem load_lmi(std::istream& in);

// writes the dump next to the system temp directory and returns its path;
// used to surface failing subproblems
std::string dump_lmi_to_tempfile(const LmiProblem& p, const std::string& tag);

}  // namespace graphos
