#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wha {

using cx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Process-wide comparison tolerance. Defaults to 1e-9 unless WHA_TOL is set.
double tolerance();
void set_tolerance(double tol);

class MathError : public std::runtime_error {
public:
    MathError(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double inf_norm(const Mat& m);
double inf_norm(const Vec& v);

// Row-major reshape helpers: entry (i, j) of the matrix is v[i * cols + j].
Mat to_matrix(const Vec& v, int rows, int cols);
Vec to_vector(const Mat& m);

Mat null_space(const Mat& system, double tol);
Mat range_basis(const Mat& columns, double tol);
int numerical_rank(const Mat& m, double tol);

struct LinearSolution {
    Vec particular;
    Mat kernel;
    double residual = 0.0;
};

// Least-squares solve of system * x = rhs. Throws NoSolution when the
// residual exceeds tol * max(1, |rhs|).
LinearSolution solve_linear(const Mat& system, const Vec& rhs, double tol);

// Orthonormal basis of a subspace of C^dim, with helpers for the usual
// lattice operations.
class Subspace {
public:
    Subspace() = default;
    Subspace(int ambient, Mat basis) : ambient_(ambient), basis_(std::move(basis)) {}

    static Subspace span(const Mat& columns, double tol);
    static Subspace full(int ambient);
    static Subspace zero(int ambient);

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Mat& basis() const { return basis_; }
    Vec project(const Vec& v) const;
    bool contains(const Vec& v, double tol) const;
    bool contains(const Subspace& other, double tol) const;
    bool equals(const Subspace& other, double tol) const;

    Subspace intersect(const Subspace& other, double tol) const;
    Subspace sum(const Subspace& other, double tol) const;

private:
    int ambient_ = 0;
    Mat basis_;
};

Mat kron(const Mat& a, const Mat& b);

}  // namespace wha
