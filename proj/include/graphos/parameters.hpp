#pragma once

// Graph parameters built on the LMI solver: the two quotient norms of a
// matrix modulo the orthogonal complement of the graph's operator system
// (operator-space d_inf and operator-system sigma), Lovász theta in primal
// and dual form, the Schur multiplier norm gamma, distortion bounds, and the
// sandwich/product identity checks.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphos/graph.hpp"
#include "graphos/linalg.hpp"
#include "graphos/sdp.hpp"

namespace graphos {

struct ParamSettings {
    SdpSettings sdp;
    double flag_tol = 1e-4;     // absolute tolerance on inequality/equality flags
    double ratio_floor = 1e-9;  // sigma below this makes the ratio degenerate
    int omega_chi_cap = 16;
    int bipartite_cap = 14;
    int iso_cap = 10;
    int product_cap = 36;  // max n*m for product / stability checks
};

struct Flag {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    std::string detail;
};

struct Certificate {
    std::map<std::string, DenseMatrix> matrices;
};

struct ParameterReport {
    std::string graph_hash;
    std::map<std::string, double> values;
    std::map<std::string, Certificate> certificates;
    std::vector<Flag> flags;
};

struct ParameterValue {
    double value = 0.0;
    Certificate certificate;
};

// Lovász theta of g: min lambda_1 over completions of the complement's
// pattern matrix.  1 <= theta(g) <= n.
ParameterValue theta_certified(const Graph& g, const ParamSettings& ps = {});

// theta of the complement, computed directly on g's pattern matrix
ParameterValue theta_bar_certified(const Graph& g, const ParamSettings& ps = {});

// independent cross-check: max sum(B) over psd B with unit trace vanishing
// on the edges of g
ParameterValue theta_dual_certified(const Graph& g, const ParamSettings& ps = {});

// operator-space quotient norm: min ||x + K|| over real K supported on the
// off-diagonal non-edges; K symmetric when x is
ParameterValue d_inf_certified(const Graph& g, const DenseMatrix& x, const ParamSettings& ps = {});

// trace-norm-ball dual of d_inf: max Tr(x^T Q), Q supported on non-edges,
// Tr|Q| <= 1
ParameterValue d_inf_dual_certified(const Graph& g, const DenseMatrix& x,
                                    const ParamSettings& ps = {});

// operator-system quotient norm via the 2x2 block completion
ParameterValue sigma_certified(const Graph& g, const DenseMatrix& x, const ParamSettings& ps = {});

// dual of sigma: max 2 Tr(x^T B) over psd [[A,B],[B^T,C]] supported on the
// graph pattern with Tr(A+C) = 1
ParameterValue sigma_dual_certified(const Graph& g, const DenseMatrix& x,
                                    const ParamSettings& ps = {});

// Schur multiplier norm of the graph pattern matrix
ParameterValue gamma_certified(const Graph& g, const ParamSettings& ps = {});

inline double theta(const Graph& g, const ParamSettings& ps = {}) {
    return theta_certified(g, ps).value;
}
inline double theta_bar(const Graph& g, const ParamSettings& ps = {}) {
    return theta_bar_certified(g, ps).value;
}
inline double theta_dual(const Graph& g, const ParamSettings& ps = {}) {
    return theta_dual_certified(g, ps).value;
}
inline double d_inf(const Graph& g, const DenseMatrix& x, const ParamSettings& ps = {}) {
    return d_inf_certified(g, x, ps).value;
}
inline double d_inf_dual(const Graph& g, const DenseMatrix& x, const ParamSettings& ps = {}) {
    return d_inf_dual_certified(g, x, ps).value;
}
inline double sigma(const Graph& g, const DenseMatrix& x, const ParamSettings& ps = {}) {
    return sigma_certified(g, x, ps).value;
}
inline double sigma_dual(const Graph& g, const DenseMatrix& x, const ParamSettings& ps = {}) {
    return sigma_dual_certified(g, x, ps).value;
}
inline double gamma(const Graph& g, const ParamSettings& ps = {}) {
    return gamma_certified(g, ps).value;
}

// Largest norm of a unit-diagonal psd completion of the trace-0 diagonal
// kernel in dimension n; equals n exactly, with witness diag(n, 0, ..., 0).
double theta_diag_kernel(int n);

// d_inf / sigma; throws DegenerateQuotient when sigma is below the floor
double distortion_ratio(const Graph& g, const DenseMatrix& x, const ParamSettings& ps = {});

// 0/1 matrix supported on side1 x side2 (1-based vertex sets); requires the
// induced subgraph on side1 + side2 to be complete bipartite with those parts
DenseMatrix bipartite_witness(const Graph& g, const std::vector<int>& side1,
                              const std::vector<int>& side2);

struct ThetaStability {
    double theta_g = 0.0;
    double theta_product = 0.0;
    double residual = 0.0;
};

// theta is invariant under strong product with a complete graph
ThetaStability theta_stability_check(const Graph& g, int p, const ParamSettings& ps = {});

struct ProductCheck {
    double d_inf_g = 0.0, d_inf_h = 0.0, d_inf_product = 0.0, d_inf_residual = 0.0;
    double sigma_g = 0.0, sigma_h = 0.0, sigma_product = 0.0, sigma_residual = 0.0;
};

// multiplicativity of both quotient norms under the strong product
ProductCheck product_check(const Graph& g, const Graph& h, const DenseMatrix& x,
                           const DenseMatrix& y, const ParamSettings& ps = {});

// omega/chi/spectral/multiplier sandwich around theta of the complement,
// with the equality-triggered refinements
ParameterReport sandwich_report(const Graph& g, const ParamSettings& ps = {});

// Names accepted: theta, theta_bar, theta_dual, d_inf, d_inf_dual, sigma,
// sigma_dual, gamma, omega, chi, phi_induced, ratio, wilf_bound.
ParameterReport compute_report(const Graph& g, const DenseMatrix& x,
                               const std::vector<std::string>& params,
                               const ParamSettings& ps = {});

// stable JSON tree; matrices serialized in the matrix text format
std::string report_to_json(const ParameterReport& r, int indent = 2);

}  // namespace graphos
