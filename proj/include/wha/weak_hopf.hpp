#pragma once

#include "wha/report.hpp"
#include "wha/star_algebra.hpp"
#include "wha/tensor.hpp"

#include <memory>
#include <mutex>

namespace wha {

enum class Side { L, R };

// Weak C*-Hopf algebra in coordinates. coproduct column j is Delta(e_j) as a
// dim^2 vector, leg order (i, j) -> i * dim + j.
class WeakHopf {
public:
    WeakHopf(StarAlgebra alg, Mat coproduct, Vec counit, Mat antipode);

    const StarAlgebra& alg() const { return alg_; }
    int dim() const { return alg_.dim(); }
    const Vec& unit() const { return alg_.unit(); }
    const Mat& coproduct() const { return coproduct_; }
    const Vec& counit() const { return counit_; }
    const Mat& antipode() const { return antipode_; }
    const Mat& antipode_inverse() const { return antipode_inv_; }

    // Delta(x) as a dim x dim matrix (row index: first leg).
    Mat delta(const Vec& x) const;
    Tensor delta_tensor(const Vec& x) const;
    // (Delta (x) id) Delta(x) as a three-leg tensor.
    Tensor delta2(const Vec& x) const;
    // eps(e_i e_j)
    const Mat& counit_form() const { return counit_form_; }

    // Canonical dual, built once and shared between copies.
    const WeakHopf& dual() const;
    const Subspace& boundary(Side side) const;

    // Opaque per-algebra slot used by the integrals module to cache Haar data.
    std::shared_ptr<const void> cached_haar(const std::function<std::shared_ptr<const void>()>& make) const;

private:
    struct Cache {
        std::once_flag dual_once, left_once, right_once, haar_once;
        std::unique_ptr<WeakHopf> dual;
        Subspace left, right;
        std::shared_ptr<const void> haar;
    };

    StarAlgebra alg_;
    Mat coproduct_;
    Vec counit_;
    Mat antipode_;
    Mat antipode_inv_;
    Mat counit_form_;
    std::shared_ptr<Cache> cache_;
};

WeakHopf make_dual(const WeakHopf& w);

// Residuals of every structural axiom plus the standard consequences
// (antipode anti-(co)multiplicative, S(x*)* = S^-1(x), the four leg identities).
struct AxiomReport {
    Report checks;
    bool strong_ok = false;   // the full axiom list
    bool relaxed_ok = false;  // reduced system: antipode anti-(co)multiplicative, unit legs commute
    bool ok() const { return strong_ok; }
};

AxiomReport verify_weak_hopf(const WeakHopf& w);

// a -> a_1 S(a_2), a -> S(a_1) a_2, a -> a_2 S^-1(a_1), a -> S^-1(a_2) a_1 as matrices.
Mat target_map(const WeakHopf& w);
Mat source_map(const WeakHopf& w);
Mat target_map_inverse(const WeakHopf& w);
Mat source_map_inverse(const WeakHopf& w);

// <a -> phi | b> = <phi | b a>  and  <phi <- a | b> = <phi | a b>
Vec arrow_left(const WeakHopf& w, const Vec& a, const Vec& phi);
Vec arrow_right(const WeakHopf& w, const Vec& phi, const Vec& a);
// Dual functionals acting on A: phi -> a = a_1 phi(a_2),  a <- phi = phi(a_1) a_2.
Vec hat_arrow_left(const WeakHopf& w, const Vec& phi, const Vec& a);
Vec hat_arrow_right(const WeakHopf& w, const Vec& a, const Vec& phi);

struct CounitMaps {
    Mat eps_L, eps_R;        // A -> dual
    Mat eps_hat_L, eps_hat_R;  // dual -> A
};
CounitMaps counit_maps(const WeakHopf& w);
Report verify_counit_maps(const WeakHopf& w);

Subspace boundary_subalgebra(const WeakHopf& w, Side side);
Report verify_boundary(const WeakHopf& w);

// Restriction of eps_R to A_L (side R) or eps_L to A_R (side L).
struct MuIso {
    Mat forward;   // dim(dual) x dim(A), restricted to the source subspace
    Mat inverse;   // dual -> A
    Report checks;
};
MuIso mu_iso(const WeakHopf& w, Side side);

bool is_pure(const WeakHopf& w);
Subspace hypercenter(const WeakHopf& w);
Report verify_hypercenter(const WeakHopf& w);

// x_* = S(x)*
Vec star_conjugate(const WeakHopf& w, const Vec& x);

// Counit/antipode exchange identities on all basis pairs, positivity of the counit.
Report verify_structure_identities(const WeakHopf& w);

}  // namespace wha
