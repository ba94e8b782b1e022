#pragma once

#include "wha/module_action.hpp"

namespace wha {

// M x_{A_L} A realised as the orthogonal complement of the relation span in M (x) A.
// Raw index p * dim(A) + i stands for e_p (x) e_i.
class CrossedProduct {
public:
    explicit CrossedProduct(const ModuleAlgebra& base);

    const ModuleAlgebra& base() const { return base_; }
    const StarAlgebra& alg() const { return alg_; }
    int dim() const { return alg_.dim(); }
    int raw_dim() const { return raw_dim_; }
    const Subspace& relations() const { return relations_; }
    const Mat& quotient_basis() const { return qb_; }

    // dim(X) x dim(M) and dim(X) x dim(A)
    const Mat& embed_module() const { return embed_m_; }
    const Mat& embed_acting() const { return embed_a_; }
    Vec element(const Vec& m, const Vec& a) const;   // class of m (x) a
    Vec reduce(const Vec& raw) const { return qb_.adjoint() * raw; }
    Vec lift(const Vec& x) const { return qb_ * x; }
    // Left multiplication by a raw vector on the raw space.
    Mat raw_left(const Vec& raw) const;

    Report checks;  // well-definedness of product and star on the quotient

private:
    ModuleAlgebra base_;
    int raw_dim_ = 0;
    Subspace relations_;
    Mat qb_;
    StarAlgebra alg_;
    Mat embed_m_, embed_a_;
};

// Covariance, embeddings, inclusions of the boundary pieces, center identity, dimension count.
Report verify_crossed_product(const CrossedProduct& x);

// phi |> (m x a) = m x (phi -> a) as a module algebra over the dual.
ModuleAlgebra dual_action(const CrossedProduct& x);
// Fixed points of the dual action equal M, and its unit orbit equals 1 x A_R.
Report verify_dual_action(const CrossedProduct& x, const ModuleAlgebra& dual);

// E(m x a) = m ((lambda -> a) |> 1) as a dim(M) x dim(X) matrix.
Mat hat_expectation(const CrossedProduct& x, const Vec& lambda);
// For a nondegenerate left integral l with dual lambda: the explicit quasi-basis, E(1 x l) = 1,
// E(1) = tau(Ind l), Ind E = 1 x Ind lambda, matched against the generic quasi-basis solve.
Report verify_hat_expectation(const CrossedProduct& x, const Vec& l);

struct RegularRep {
    Mat hilbert_gram;          // inner product on M (x) A
    std::vector<Mat> images;   // image of each quotient basis vector
    Mat projection;            // image of the unit
    Report checks;
};
// (id (x) tau_L)(rho(m)) (1 (x) ell(a)) on M (x) A with M in its left regular representation.
RegularRep regular_homomorphism(const CrossedProduct& x);
// The same map on the raw space, used to test that relations map to zero.
Mat regular_image_raw(const CrossedProduct& x, int raw_index);

struct CrossGns {
    Vec cyclic;         // P (1 (x) 1) in M (x) A
    Mat hilbert_gram;   // GNS form of omega on M tensored with the Haar form on A
    Mat isometry;       // m -> Lambda(m x l0) Omega_A
    Report checks;
};
CrossGns gns_cross(const CrossedProduct& x, const GnsData& gns);

// Jones relation e m e = E_l(m) e = e E_l(m) in X with e = 1 x e_l.
Report jones_relation(const CrossedProduct& x, const Vec& l);

struct TljResult {
    Vec e, e_hat;   // in the second crossed product
    Report checks;
};
// Needs a positive nondegenerate normalized l.
TljResult tlj_elements(const CrossedProduct& x, const Vec& l);

struct CommutantData {
    Subspace module_commutant;      // M' /\ X
    Subspace fixed_in_module;       // N' /\ M
    Subspace fixed_in_cross;        // N' /\ X
    Subspace cross_center;          // C(X)
    Report checks;
};
CommutantData commutant_suite(const CrossedProduct& x);

struct GaloisResult {
    Vec p;                 // central projection in X
    bool is_galois = false;
    int gamma_rank = 0;
    int gamma_target = 0;
    int span_dim = 0;      // dim M h M
    Report checks;
};
GaloisResult galois_test(const CrossedProduct& x);

// Index comparison Ind E_l = E_lambda(p) <= E_lambda(1) = tau(Ind l), with equality iff Galois,
// and generation of X by M and the Jones projection.
struct BasicConstruction {
    Vec index;         // Ind E_l in M
    Vec bound;         // tau(Ind l) in M
    bool strict = false;
    int generated_dim = 0;
    Report checks;
};
BasicConstruction basic_construction(const CrossedProduct& x, const Vec& l);

// lambda_2 l S^-1(lambda_1) = 1 in the crossed product of the dual by A, for each dual pair.
Report heisenberg_unit_identity(const WeakHopf& w, const Vec& l);

}  // namespace wha
