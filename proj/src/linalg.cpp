#include "wha/linalg.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace wha {

namespace {

double initial_tolerance()
{
    if (const char* env = std::getenv("WHA_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return 1e-9;
}

std::atomic<double>& tol_slot()
{
    static std::atomic<double> slot{initial_tolerance()};
    return slot;
}

// Singular values and right singular vectors of a (possibly tall) matrix.
// Tall systems are first compressed by a QR factorization so the SVD only
// sees a square block. BDCSVD occasionally returns NaN on exactly deflated
// inputs; Jacobi is used for small blocks and as the fallback.
void svd_square(const Mat& m, Eigen::VectorXd& sigma, Mat& v)
{
    if (m.cols() > 96) {
        Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
        sigma = svd.singularValues();
        v = svd.matrixV();
        if (sigma.allFinite() && v.allFinite()) return;
    }
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    sigma = svd.singularValues();
    v = svd.matrixV();
}

void svd_right(const Mat& m, Eigen::VectorXd& sigma, Mat& v)
{
    const Eigen::Index cols = m.cols();
    if (m.rows() > 2 * cols) {
        Eigen::HouseholderQR<Mat> qr(m);
        Mat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
        svd_square(r, sigma, v);
        return;
    }
    svd_square(m, sigma, v);
}

}  // namespace

double tolerance() { return tol_slot().load(); }

void set_tolerance(double tol)
{
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    tol_slot().store(tol);
}

double inf_norm(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Mat to_matrix(const Vec& v, int rows, int cols)
{
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
    return m;
}

Vec to_vector(const Mat& m)
{
    Vec v(m.size());
    const Eigen::Index cols = m.cols();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < cols; ++j) v[i * cols + j] = m(i, j);
    return v;
}

Mat null_space(const Mat& system, double tol)
{
    const Eigen::Index n = system.cols();
    if (n == 0) return Mat(0, 0);
    if (system.rows() == 0 || inf_norm(system) == 0.0) return Mat::Identity(n, n);
    Eigen::VectorXd sigma;
    Mat v;
    svd_right(system, sigma, v);
    const double cut = tol * std::max(1.0, sigma[0]);
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma[r] > cut) ++r;
    return v.rightCols(n - r);
}

Mat range_basis(const Mat& columns, double tol)
{
    if (columns.cols() == 0 || inf_norm(columns) == 0.0) return Mat(columns.rows(), 0);
    Eigen::VectorXd sigma;
    Mat u;
    if (std::min(columns.rows(), columns.cols()) > 96) {
        Eigen::BDCSVD<Mat> svd(columns, Eigen::ComputeThinU);
        sigma = svd.singularValues();
        u = svd.matrixU();
    }
    if (sigma.size() == 0 || !sigma.allFinite() || !u.allFinite()) {
        Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeThinU);
        sigma = svd.singularValues();
        u = svd.matrixU();
    }
    const double cut = tol * std::max(1.0, sigma[0]);
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma[r] > cut) ++r;
    return u.leftCols(r);
}

int numerical_rank(const Mat& m, double tol)
{
    return static_cast<int>(m.cols() - null_space(m, tol).cols());
}

LinearSolution solve_linear(const Mat& system, const Vec& rhs, double tol)
{
    LinearSolution out;
    Eigen::CompleteOrthogonalDecomposition<Mat> cod;
    cod.setThreshold(tol);
    cod.compute(system);
    out.particular = cod.solve(rhs);
    out.residual = inf_norm(Vec(system * out.particular - rhs));
    out.kernel = null_space(system, tol);
    const double scale = std::max(1.0, inf_norm(rhs));
    if (!(out.residual <= tol * scale))
        throw MathError("NoSolution", "linear system residual " + std::to_string(out.residual));
    return out;
}

Subspace Subspace::span(const Mat& columns, double tol)
{
    return Subspace(static_cast<int>(columns.rows()), range_basis(columns, tol));
}

Subspace Subspace::full(int ambient) { return Subspace(ambient, Mat::Identity(ambient, ambient)); }
Subspace Subspace::zero(int ambient) { return Subspace(ambient, Mat(ambient, 0)); }

Vec Subspace::project(const Vec& v) const
{
    if (dim() == 0) return Vec::Zero(ambient_);
    return basis_ * (basis_.adjoint() * v);
}

bool Subspace::contains(const Vec& v, double tol) const
{
    return inf_norm(Vec(v - project(v))) <= tol * std::max(1.0, inf_norm(v));
}

bool Subspace::contains(const Subspace& other, double tol) const
{
    for (int i = 0; i < other.dim(); ++i)
        if (!contains(Vec(other.basis_.col(i)), tol)) return false;
    return true;
}

bool Subspace::equals(const Subspace& other, double tol) const
{
    return dim() == other.dim() && contains(other, tol) && other.contains(*this, tol);
}

Subspace Subspace::intersect(const Subspace& other, double tol) const
{
    if (dim() == 0 || other.dim() == 0) return zero(ambient_);
    Mat joint(ambient_, dim() + other.dim());
    joint << basis_, -other.basis_;
    Mat ker = null_space(joint, tol);
    if (ker.cols() == 0) return zero(ambient_);
    return span(basis_ * ker.topRows(dim()), tol);
}

Subspace Subspace::sum(const Subspace& other, double tol) const
{
    Mat joint(ambient_, dim() + other.dim());
    joint << basis_, other.basis_;
    return span(joint, tol);
}

Mat kron(const Mat& a, const Mat& b)
{
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace wha
