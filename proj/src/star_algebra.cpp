#include "wha/star_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace wha {

namespace {

std::string triple(int i, int j, int k, double r)
{
    std::ostringstream os;
    os << "basis (" << i << ", " << j << ", " << k << ") residual " << r;
    return os.str();
}

// Hermitian matrix of L_a in an orthonormal frame of the trace form.
Mat hermitian_frame(const Mat& chol, const Mat& chol_inv, const Mat& la)
{
    Mat h = chol * la * chol_inv;
    return 0.5 * (h + h.adjoint());
}

}  // namespace

Vec StarAlgebra::basis(int i) const
{
    Vec v = Vec::Zero(dim_);
    v[i] = 1.0;
    return v;
}

Mat StarAlgebra::L(const Vec& a) const
{
    Mat out = Mat::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        if (a[i] != cx(0.0)) out += a[i] * left_[i];
    return out;
}

Mat StarAlgebra::R(const Vec& a) const
{
    Mat out = Mat::Zero(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
        if (a[j] != cx(0.0)) out += a[j] * right_[j];
    return out;
}

Vec StarAlgebra::mul(const Vec& a, const Vec& b) const { return L(a) * b; }

Vec StarAlgebra::star(const Vec& a) const { return star_ * a.conjugate(); }

Mat StarAlgebra::product_table(const Mat& x, const Mat& y) const
{
    const Eigen::Index cx_ = x.cols(), cy = y.cols();
    Mat out = Mat::Zero(dim_, cx_ * cy);
    for (int p = 0; p < dim_; ++p) {
        if (x.row(p).cwiseAbs().maxCoeff() == 0.0) continue;
        Mat yp = left_[p] * y;
        for (Eigen::Index i = 0; i < cx_; ++i)
            if (x(p, i) != cx(0.0)) out.middleCols(i * cy, cy) += x(p, i) * yp;
    }
    return out;
}

Vec StarAlgebra::contract(const Mat& t) const { return flat_ * to_vector(t); }

StarAlgebra make_star_algebra(int dim, std::vector<std::string> labels, const std::vector<Mat>& left_mult,
                              const Vec& unit, const Mat& star_mat, bool check_cstar)
{
    if (dim <= 0) throw InputError("algebra dimension must be positive");
    if (static_cast<int>(left_mult.size()) != dim || unit.size() != dim || star_mat.rows() != dim ||
        star_mat.cols() != dim)
        throw InputError("structure tables have inconsistent dimensions");
    for (const auto& m : left_mult)
        if (m.rows() != dim || m.cols() != dim) throw InputError("structure tables have inconsistent dimensions");
    if (labels.empty())
        for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
    if (static_cast<int>(labels.size()) != dim) throw InputError("label count does not match dimension");

    StarAlgebra a;
    a.dim_ = dim;
    a.labels_ = std::move(labels);
    a.left_ = left_mult;
    a.unit_ = unit;
    a.star_ = star_mat;
    a.right_.assign(dim, Mat::Zero(dim, dim));
    a.flat_ = Mat::Zero(dim, dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            a.right_[j].col(i) = left_mult[i].col(j);
            a.flat_.col(i * dim + j) = left_mult[i].col(j);
        }

    const double tol = tolerance();
    const Mat id = Mat::Identity(dim, dim);

    double ru = std::max(inf_norm(Mat(a.L(unit) - id)), inf_norm(Mat(a.R(unit) - id)));
    if (ru > tol) throw MathError("UnitViolation", "unit residual " + std::to_string(ru));

    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Mat diff = left_mult[i] * left_mult[j] - a.L(a.flat_.col(i * dim + j));
            double r = inf_norm(diff);
            if (r > tol) {
                Eigen::Index row, col;
                diff.cwiseAbs().maxCoeff(&row, &col);
                throw MathError("AssociativityViolation", triple(i, j, static_cast<int>(col), r));
            }
        }

    double rinv = inf_norm(Mat(star_mat * star_mat.conjugate() - id));
    if (rinv > tol) throw MathError("StarViolation", "star is not involutive, residual " + std::to_string(rinv));
    Mat stars = a.product_table(star_mat, star_mat);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Vec lhs = a.star(a.flat_.col(i * dim + j));
            double r = inf_norm(Vec(lhs - stars.col(j * dim + i)));
            if (r > tol)
                throw MathError("StarViolation", "(xy)* != y*x* on " + triple(i, j, -1, r));
        }

    Vec traces(dim);
    for (int k = 0; k < dim; ++k) traces[k] = left_mult[k].trace();
    Mat prods = a.product_table(star_mat, id);
    a.gram_ = Mat(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a.gram_(i, j) = prods.col(i * dim + j).cwiseProduct(traces).sum();
    double herm = inf_norm(Mat(a.gram_ - a.gram_.adjoint()));
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a.gram_ + a.gram_.adjoint()));
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    a.cstar_ = herm <= tol * scale && ev.minCoeff() > tol * scale;
    if (check_cstar && !a.cstar_)
        throw MathError("NotCStar", "trace form not positive definite, smallest eigenvalue " +
                                        std::to_string(ev.minCoeff()));
    if (a.cstar_) {
        Eigen::LLT<Mat> llt(0.5 * (a.gram_ + a.gram_.adjoint()));
        a.chol_ = llt.matrixU();
        a.chol_inv_ = a.chol_.triangularView<Eigen::Upper>().solve(id);
    }
    return a;
}

StarAlgebra star_algebra_from_tables(int dim, std::vector<std::string> labels,
                                     const std::vector<std::vector<std::vector<cx>>>& mu,
                                     const std::vector<cx>& unit,
                                     const std::vector<std::vector<cx>>& star_table, bool check_cstar)
{
    if (static_cast<int>(mu.size()) != dim || static_cast<int>(unit.size()) != dim ||
        static_cast<int>(star_table.size()) != dim)
        throw InputError("structure tables have inconsistent dimensions");
    std::vector<Mat> left(dim, Mat::Zero(dim, dim));
    Mat st(dim, dim);
    Vec u(dim);
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(mu[i].size()) != dim || static_cast<int>(star_table[i].size()) != dim)
            throw InputError("structure tables have inconsistent dimensions");
        u[i] = unit[i];
        for (int j = 0; j < dim; ++j) {
            if (static_cast<int>(mu[i][j].size()) != dim)
                throw InputError("structure tables have inconsistent dimensions");
            for (int k = 0; k < dim; ++k) left[i](k, j) = mu[i][j][k];
        }
        for (int k = 0; k < dim; ++k) st(k, i) = star_table[i][k];
    }
    return make_star_algebra(dim, std::move(labels), left, u, st, check_cstar);
}

std::vector<std::vector<std::vector<cx>>> structure_table(const StarAlgebra& a)
{
    const int n = a.dim();
    std::vector<std::vector<std::vector<cx>>> mu(n, std::vector<std::vector<cx>>(n, std::vector<cx>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) mu[i][j][k] = a.left_basis(i)(k, j);
    return mu;
}

std::vector<std::vector<cx>> star_table(const StarAlgebra& a)
{
    const int n = a.dim();
    std::vector<std::vector<cx>> t(n, std::vector<cx>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t[i][k] = a.star_matrix()(k, i);
    return t;
}

bool is_self_adjoint(const StarAlgebra& a, const Vec& x, double tol)
{
    return inf_norm(Vec(a.star(x) - x)) <= tol * std::max(1.0, inf_norm(x));
}

bool is_positive(const StarAlgebra& a, const Vec& x)
{
    const double tol = tolerance();
    if (!is_self_adjoint(a, x, tol)) throw MathError("NotSelfAdjoint", "element is not self-adjoint");
    if (!a.cstar_) throw MathError("NotCStar", "positivity needs a certified C*-algebra");
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_frame(a.chol_, a.chol_inv_, a.L(x)), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return ev.minCoeff() > -tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
}

Vec spectral_apply(const StarAlgebra& a, const Vec& x, const std::function<cx(double)>& f)
{
    const double tol = tolerance();
    if (!is_self_adjoint(a, x, tol)) throw MathError("NotSelfAdjoint", "element is not self-adjoint");
    if (!a.cstar_) throw MathError("NotCStar", "spectral calculus needs a certified C*-algebra");
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_frame(a.chol_, a.chol_inv_, a.L(x)));
    const Eigen::VectorXd& ev = es.eigenvalues();
    Vec fe(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) fe[i] = f(ev[i]);
    const Mat& u = es.eigenvectors();
    Mat fl = a.chol_inv_ * u * fe.asDiagonal() * u.adjoint() * a.chol_;
    return fl * a.unit();
}

Vec sqrt_positive(const StarAlgebra& a, const Vec& x)
{
    if (!is_positive(a, x)) throw MathError("NotPositive", "square root of a non-positive element");
    return spectral_apply(a, x, [](double t) { return cx(t > 0.0 ? std::sqrt(t) : 0.0); });
}

Vec positive_power(const StarAlgebra& a, const Vec& x, cx exponent)
{
    if (!is_positive(a, x)) throw MathError("NotPositive", "power of a non-positive element");
    const double tol = tolerance();
    return spectral_apply(a, x, [&](double t) {
        if (t <= tol) throw MathError("Singular", "power of a non-invertible positive element");
        return std::exp(exponent * std::log(t));
    });
}

bool is_invertible(const StarAlgebra& a, const Vec& x)
{
    return numerical_rank(a.L(x), tolerance()) == a.dim();
}

Vec invert(const StarAlgebra& a, const Vec& x)
{
    Mat lx = a.L(x);
    if (numerical_rank(lx, tolerance()) < a.dim()) throw MathError("Singular", "element is not invertible");
    Vec y = lx.fullPivLu().solve(a.unit());
    return y;
}

Subspace commutant(const Mat& generators, const StarAlgebra& a)
{
    const int n = a.dim();
    const Eigen::Index g = generators.cols();
    if (g == 0) return Subspace::full(n);
    Mat system(n * g, n);
    for (Eigen::Index s = 0; s < g; ++s) system.middleRows(s * n, n) = a.L(generators.col(s)) - a.R(generators.col(s));
    Mat ker = null_space(system, tolerance());
    return Subspace::span(ker, tolerance());
}

Subspace center(const StarAlgebra& a) { return commutant(Mat::Identity(a.dim(), a.dim()), a); }

Subspace product_span(const StarAlgebra& a, const Mat& x, const Mat& y)
{
    return Subspace::span(a.product_table(x, y), tolerance());
}

Subspace generated_algebra(const StarAlgebra& a, const Mat& generators)
{
    Subspace s = Subspace::span(generators, tolerance());
    for (int round = 0; round <= a.dim(); ++round) {
        Subspace next = s.sum(product_span(a, s.basis(), s.basis()), tolerance());
        if (next.dim() == s.dim()) return next;
        s = next;
    }
    return s;
}

bool is_unital_star_subalgebra(const StarAlgebra& a, const Subspace& s, double tol)
{
    if (!s.contains(a.unit(), tol)) return false;
    for (int i = 0; i < s.dim(); ++i)
        if (!s.contains(a.star(s.basis().col(i)), tol)) return false;
    Mat prods = a.product_table(s.basis(), s.basis());
    for (Eigen::Index c = 0; c < prods.cols(); ++c)
        if (!s.contains(Vec(prods.col(c)), tol)) return false;
    return true;
}

StarAlgebra restrict_to(const StarAlgebra& a, const Subspace& s, const std::string& prefix)
{
    const int d = s.dim();
    const Mat& b = s.basis();
    Mat prods = b.adjoint() * a.product_table(b, b);
    std::vector<Mat> left(d, Mat::Zero(d, d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) left[i].col(j) = prods.col(i * d + j);
    Mat st(d, d);
    for (int i = 0; i < d; ++i) st.col(i) = b.adjoint() * a.star(b.col(i));
    std::vector<std::string> labels;
    for (int i = 0; i < d; ++i) labels.push_back(prefix + std::to_string(i));
    return make_star_algebra(d, labels, left, b.adjoint() * a.unit(), st, true);
}

StarAlgebra matrix_algebra(int n)
{
    const int d = n * n;
    std::vector<Mat> left(d, Mat::Zero(d, d));
    Mat st = Mat::Zero(d, d);
    Vec unit = Vec::Zero(d);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
            st(j * n + i, i * n + j) = 1.0;
            for (int l = 0; l < n; ++l) left[i * n + j](i * n + l, j * n + l) = 1.0;
        }
    for (int i = 0; i < n; ++i) unit[i * n + i] = 1.0;
    return make_star_algebra(d, labels, left, unit, st, true);
}

StarAlgebra group_algebra(const std::vector<std::vector<int>>& mult, const std::vector<std::string>& labels)
{
    const int n = static_cast<int>(mult.size());
    int e = -1;
    for (int g = 0; g < n && e < 0; ++g) {
        bool ok = true;
        for (int h = 0; h < n; ++h) ok = ok && mult[g][h] == h;
        if (ok) e = g;
    }
    if (e < 0) throw InputError("group table has no identity");
    std::vector<Mat> left(n, Mat::Zero(n, n));
    Mat st = Mat::Zero(n, n);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            left[g](mult[g][h], h) = 1.0;
            if (mult[g][h] == e) st(h, g) = 1.0;
        }
    Vec unit = Vec::Zero(n);
    unit[e] = 1.0;
    return make_star_algebra(n, labels, left, unit, st, true);
}

}  // namespace wha
