#pragma once

// Dense real matrix kernels: Jacobi eigendecomposition, operator/trace norms
// via the symmetric dilation, Kronecker and Schur products, PSD tests and
// cyclic (circulant) averaging.  Everything here is plain double precision,
// row major, and small-matrix oriented.

#include <iosfwd>
#include <string>
#include <vector>

#include "graphos/errors.hpp"

namespace graphos {

// Relative tolerance under which a matrix is accepted as symmetric.
// Symmetric-only operations symmetrize their input after the check.
inline constexpr double kSymTol = 1e-8;

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols);
    DenseMatrix(int rows, int cols, std::vector<double> entries);

    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<double>& entries() const { return a_; }
    std::vector<double>& entries() { return a_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

DenseMatrix transpose(const DenseMatrix& m);
double trace(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);

// max |m - m^T| <= tol * max(1, max |m|)
bool is_symmetric(const DenseMatrix& m, double tol = kSymTol);
DenseMatrix symmetrized(const DenseMatrix& m);

struct SymEigen {
    std::vector<double> values;  // descending
    DenseMatrix vectors;         // orthonormal columns, column k pairs with values[k]
};

// Cyclic Jacobi rotations; throws NotSquare / NotSymmetric.
SymEigen sym_eigen(const DenseMatrix& m);

// Singular values (descending) from the eigenvalues of [[0, M], [M^T, 0]].
std::vector<double> singular_values(const DenseMatrix& m);

double operator_norm(const DenseMatrix& m);  // largest singular value
double trace_norm(const DenseMatrix& m);     // sum of singular values

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix schur_product(const DenseMatrix& a, const DenseMatrix& b);

// true iff lambda_min(m) >= -tol; throws NotSymmetric
bool is_psd(const DenseMatrix& m, double tol);

// (1/p) * sum_k (S*)^k M S^k for the cyclic forward shift S mod p;
// requires m square with rows == period.
DenseMatrix cyclic_average(const DenseMatrix& m, int period);

// Text format: "rows cols" header line, then row-major whitespace-separated
// entries.  parse throws ParseError with a 1-based line number.
DenseMatrix parse_matrix(std::istream& in);
DenseMatrix parse_matrix_file(const std::string& path);
void write_matrix(const DenseMatrix& m, std::ostream& out);
std::string matrix_to_string(const DenseMatrix& m);

}  // namespace graphos
