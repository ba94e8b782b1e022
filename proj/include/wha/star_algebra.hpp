#pragma once

#include "wha/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wha {

// Finite-dimensional *-algebra given by structure constants.
// left[i](k, j) = coefficient of e_k in e_i e_j; star_mat column i holds e_i*.
class StarAlgebra {
public:
    int dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Vec& unit() const { return unit_; }
    const Mat& star_matrix() const { return star_; }
    const Mat& left_basis(int i) const { return left_[i]; }
    const Mat& right_basis(int j) const { return right_[j]; }
    // flat(k, i * dim + j) = coefficient of e_k in e_i e_j
    const Mat& flat() const { return flat_; }

    cx structure(int i, int j, int k) const { return left_[i](k, j); }

    Vec basis(int i) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec star(const Vec& a) const;
    Mat L(const Vec& a) const;
    Mat R(const Vec& a) const;
    // Column (i * cols(y) + j) is x_i y_j for columns x_i of x and y_j of y.
    Mat product_table(const Mat& x, const Mat& y) const;
    // Multiplies the two legs of a 2-tensor t (t(p, q) coefficient of e_p (x) e_q).
    Vec contract(const Mat& t) const;

    // Trace form <a, b> = Tr(L_{a* b}); positive definite for certified algebras.
    const Mat& trace_gram() const { return gram_; }
    bool certified_cstar() const { return cstar_; }

    friend StarAlgebra make_star_algebra(int, std::vector<std::string>, const std::vector<Mat>&,
                                         const Vec&, const Mat&, bool);

private:
    int dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<Mat> left_;
    std::vector<Mat> right_;
    Mat flat_;
    Vec unit_;
    Mat star_;
    Mat gram_;
    Mat chol_;      // upper factor R with gram = R^H R
    Mat chol_inv_;
    bool cstar_ = false;

    friend Vec spectral_apply(const StarAlgebra&, const Vec&, const std::function<cx(double)>&);
    friend bool is_positive(const StarAlgebra&, const Vec&);
};

// left_mult[i](k, j) = coefficient of e_k in e_i e_j. star_mat column i = e_i*.
// Throws MathError with kinds AssociativityViolation, UnitViolation,
// StarViolation, NotCStar.
StarAlgebra make_star_algebra(int dim, std::vector<std::string> labels, const std::vector<Mat>& left_mult,
                              const Vec& unit, const Mat& star_mat, bool check_cstar = true);

// Same input, built from the raw table mu[i][j][k] and star table T[i][k].
StarAlgebra star_algebra_from_tables(int dim, std::vector<std::string> labels,
                                     const std::vector<std::vector<std::vector<cx>>>& mu,
                                     const std::vector<cx>& unit,
                                     const std::vector<std::vector<cx>>& star_table,
                                     bool check_cstar = true);

std::vector<std::vector<std::vector<cx>>> structure_table(const StarAlgebra& a);
std::vector<std::vector<cx>> star_table(const StarAlgebra& a);

bool is_self_adjoint(const StarAlgebra& a, const Vec& x, double tol);
bool is_positive(const StarAlgebra& a, const Vec& x);
Vec spectral_apply(const StarAlgebra& a, const Vec& x, const std::function<cx(double)>& f);
Vec sqrt_positive(const StarAlgebra& a, const Vec& x);
Vec positive_power(const StarAlgebra& a, const Vec& x, cx exponent);
Vec invert(const StarAlgebra& a, const Vec& x);
bool is_invertible(const StarAlgebra& a, const Vec& x);

Subspace commutant(const Mat& generators, const StarAlgebra& a);
Subspace center(const StarAlgebra& a);
// Smallest subspace containing the columns and closed under multiplication.
Subspace generated_algebra(const StarAlgebra& a, const Mat& generators);
// Span of all products x_i y_j.
Subspace product_span(const StarAlgebra& a, const Mat& x, const Mat& y);

bool is_unital_star_subalgebra(const StarAlgebra& a, const Subspace& s, double tol);

// Re-presents a unital *-subalgebra in the orthonormal basis of s.
StarAlgebra restrict_to(const StarAlgebra& a, const Subspace& s, const std::string& prefix);

// Standard algebras used across the code base.
StarAlgebra matrix_algebra(int n);
StarAlgebra group_algebra(const std::vector<std::vector<int>>& mult, const std::vector<std::string>& labels);

}  // namespace wha
