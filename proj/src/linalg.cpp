#include "graphos/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace graphos {

DenseMatrix::DenseMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw ShapeMismatch("matrix dimensions must be nonnegative");
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw ShapeMismatch("matrix dimensions must be nonnegative");
    if (a_.size() != static_cast<size_t>(rows) * cols)
        throw ShapeMismatch("entry count does not match rows*cols");
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

static void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " differ");
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "operator+");
    DenseMatrix r(a.rows(), a.cols());
    for (size_t i = 0; i < r.entries().size(); ++i) r.entries()[i] = a.entries()[i] + b.entries()[i];
    return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "operator-");
    DenseMatrix r(a.rows(), a.cols());
    for (size_t i = 0; i < r.entries().size(); ++i) r.entries()[i] = a.entries()[i] - b.entries()[i];
    return r;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("operator*: inner dimensions differ");
    DenseMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix r(a.rows(), a.cols());
    for (size_t i = 0; i < r.entries().size(); ++i) r.entries()[i] = s * a.entries()[i];
    return r;
}

DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix r(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

double trace(const DenseMatrix& m) {
    if (!m.square()) throw NotSquare("trace: matrix is not square");
    double t = 0.0;
    for (int i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.entries()) s += v * v;
    return std::sqrt(s);
}

double max_abs(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.entries()) s = std::max(s, std::abs(v));
    return s;
}

bool is_symmetric(const DenseMatrix& m, double tol) {
    if (!m.square()) return false;
    double dev = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) dev = std::max(dev, std::abs(m(i, j) - m(j, i)));
    return dev <= tol * std::max(1.0, max_abs(m));
}

DenseMatrix symmetrized(const DenseMatrix& m) {
    if (!m.square()) throw NotSquare("symmetrized: matrix is not square");
    DenseMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = 0.5 * (m(i, j) + m(j, i));
    return r;
}

static void require_symmetric(const DenseMatrix& m, const char* op) {
    if (!m.square()) throw NotSquare(std::string(op) + ": matrix is not square");
    if (!is_symmetric(m, kSymTol))
        throw NotSymmetric(std::string(op) + ": matrix is not symmetric within tolerance");
}

SymEigen sym_eigen(const DenseMatrix& m) {
    require_symmetric(m, "sym_eigen");
    DenseMatrix a = symmetrized(m);
    const int n = a.rows();
    DenseMatrix v = DenseMatrix::identity(n);

    const double scale = frobenius_norm(a);
    const double stop = 1e-15 * scale;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        off = std::sqrt(2.0 * off);
        if (off <= stop) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // rotations below working precision only churn; zero them out
                if (std::abs(apq) <= 1e-18 * (std::abs(a(p, p)) + std::abs(a(q, q)))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = a(p, k) = c * akp - s * akq;
                    a(k, q) = a(q, k) = s * akp + c * akq;
                }
                const double app = a(p, p);
                const double aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;

                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

    SymEigen out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (int r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> singular_values(const DenseMatrix& m) {
    const int r = m.rows();
    const int c = m.cols();
    DenseMatrix d(r + c, r + c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            d(i, r + j) = m(i, j);
            d(r + j, i) = m(i, j);
        }
    SymEigen e = sym_eigen(d);
    const int k = std::min(r, c);
    std::vector<double> sv(e.values.begin(), e.values.begin() + k);
    for (double& s : sv) s = std::max(s, 0.0);
    return sv;
}

double operator_norm(const DenseMatrix& m) {
    auto sv = singular_values(m);
    return sv.empty() ? 0.0 : sv.front();
}

double trace_norm(const DenseMatrix& m) {
    auto sv = singular_values(m);
    return std::accumulate(sv.begin(), sv.end(), 0.0);
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

DenseMatrix schur_product(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "schur_product");
    DenseMatrix r(a.rows(), a.cols());
    for (size_t i = 0; i < r.entries().size(); ++i) r.entries()[i] = a.entries()[i] * b.entries()[i];
    return r;
}

bool is_psd(const DenseMatrix& m, double tol) {
    require_symmetric(m, "is_psd");
    SymEigen e = sym_eigen(m);
    return e.values.empty() || e.values.back() >= -tol;
}

DenseMatrix cyclic_average(const DenseMatrix& m, int period) {
    if (!m.square() || m.rows() != period)
        throw ShapeMismatch("cyclic_average: matrix must be square with rows == period");
    const int p = period;
    DenseMatrix r(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            double s = 0.0;
            for (int k = 0; k < p; ++k) s += m((i + k) % p, (j + k) % p);
            r(i, j) = s / p;
        }
    return r;
}

namespace {

// whitespace tokenizer that tracks 1-based line numbers for error reporting
struct TokenReader {
    std::istream& in;
    int line = 1;

    bool next(std::string& tok) {
        tok.clear();
        int ch;
        while ((ch = in.get()) != EOF) {
            if (ch == '\n') {
                if (!tok.empty()) {
                    in.unget();
                    return true;
                }
                ++line;
            } else if (std::isspace(ch)) {
                if (!tok.empty()) return true;
            } else {
                tok.push_back(static_cast<char>(ch));
            }
        }
        return !tok.empty();
    }
};

long parse_long(const std::string& tok, int line, const char* what) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    return v;
}

double parse_double(const std::string& tok, int line) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected a number, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected a number, got '" + tok + "'");
    return v;
}

}  // namespace

DenseMatrix parse_matrix(std::istream& in) {
    TokenReader rd{in};
    std::string tok;
    if (!rd.next(tok)) throw ParseError(rd.line, "missing matrix header 'rows cols'");
    const long rows = parse_long(tok, rd.line, "row count");
    if (!rd.next(tok)) throw ParseError(rd.line, "missing column count in matrix header");
    const long cols = parse_long(tok, rd.line, "column count");
    if (rows <= 0 || cols <= 0) throw ParseError(rd.line, "matrix dimensions must be positive");

    DenseMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (long i = 0; i < rows * cols; ++i) {
        if (!rd.next(tok))
            throw ParseError(rd.line, "matrix ended after " + std::to_string(i) + " of " +
                                          std::to_string(rows * cols) + " entries");
        m.entries()[static_cast<size_t>(i)] = parse_double(tok, rd.line);
    }
    if (rd.next(tok)) throw ParseError(rd.line, "unexpected trailing token '" + tok + "'");
    return m;
}

DenseMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file: " + path);
    return parse_matrix(in);
}

void write_matrix(const DenseMatrix& m, std::ostream& out) {
    out << m.rows() << " " << m.cols() << "\n";
    char buf[32];
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << buf << (j + 1 == m.cols() ? "" : " ");
        }
        out << "\n";
    }
}

std::string matrix_to_string(const DenseMatrix& m) {
    std::ostringstream os;
    write_matrix(m, os);
    return os.str();
}

}  // namespace graphos
