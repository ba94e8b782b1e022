#pragma once

#include "wha/integrals.hpp"

namespace wha {

// Left action of a weak Hopf algebra on a *-algebra M. act_basis[i] is the
// matrix of m -> e_i |> m in the coordinates of M.
class ModuleAlgebra {
public:
    ModuleAlgebra(WeakHopf hopf, StarAlgebra target, std::vector<Mat> act_basis);

    const WeakHopf& hopf() const { return hopf_; }
    const StarAlgebra& target() const { return target_; }
    const std::vector<Mat>& action_basis() const { return act_; }
    int dim() const { return target_.dim(); }

    Mat action(const Vec& a) const;
    Vec act(const Vec& a, const Vec& m) const { return action(a) * m; }
    // a |> 1_M
    Vec on_unit(const Vec& a) const { return action(a) * target_.unit(); }

private:
    WeakHopf hopf_;
    StarAlgebra target_;
    std::vector<Mat> act_;
};

// Module algebra axioms, the mirrored unit law, nm = (1_1|>n)(1_2|>m), and
// the boundary identities for a in A_L, A_R, A_L /\ A_R, C(A).
Report verify_module_axioms(const ModuleAlgebra& ma);

// Throws MathError ActionAxiomViolation naming the first failed check.
ModuleAlgebra make_module_algebra(WeakHopf hopf, StarAlgebra target, std::vector<Mat> act_basis);

// rho(m) = sum_k (e_k |> m) (x) delta^k. Column p holds rho(e_p) with leg index q * dim(A) + k.
Mat coaction(const ModuleAlgebra& ma);
Report verify_coaction(const ModuleAlgebra& ma);

// N = {n : a |> n = a_1 S(a_2) |> n}.
Subspace fixed_points(const ModuleAlgebra& ma);
// The four characterizations solved separately and compared, plus rho(N) in M (x) dual_L.
Report verify_fixed_points(const ModuleAlgebra& ma);

struct ImageData {
    Subspace m_r;           // A |> 1
    Mat mu;                 // A_L basis -> M, a -> a |> 1
    Subspace ker_mu;        // inside A
    Vec z;                  // central projection with ker mu = z A_L
    Subspace annihilator;   // {a : a |> M = 0}
    Subspace ideal;         // A ker mu
    bool standard = false;
    Report checks;
};
ImageData image_data(const ModuleAlgebra& ma);

// dual_R -> M_R, (a -> 1^) |-> a |> 1.
Vec tau(const ModuleAlgebra& ma, const Vec& phi);

// E_l(m) = l |> m as a dim(M) x dim(M) matrix.
Mat cond_expectation(const ModuleAlgebra& ma, const Vec& l);
Report verify_cond_expectation(const ModuleAlgebra& ma, const Vec& l);
// Injectivity of l -> E_l and matching classification, when standard and N' /\ M = M_R.
Report verify_expectation_correspondence(const ModuleAlgebra& ma);

// Quasi-basis of a linear map E: M -> M, solved jointly from both one-sided conditions.
struct QuasiBasis {
    Mat tensor;     // tensor(p, q) coefficient of e_p (x) e_q
    Vec index;      // sum u_i v_i
    Report checks;  // residuals, centrality, independence of the chosen solution
};
// Throws MathError NotIndexFinite.
QuasiBasis quasi_basis(const StarAlgebra& m, const Mat& expectation);
// Residuals of both defining conditions for a given tensor.
double quasi_basis_residual(const StarAlgebra& m, const Mat& expectation, const Mat& tensor);

// Ind E_{l d} = (d^-1 |> 1) Ind E_l for invertible d in A_L /\ A_R.
Report verify_index_rescaling(const ModuleAlgebra& ma, const Vec& l);

// Implementers T: A -> ambient with T(a) m = (a_1 |> m) T(a_2); embed maps M into ambient.
// Coordinates: vector index j * dim(ambient) + q for the coefficient of e_q in T(e_j).
Subspace implementer_space(const ModuleAlgebra& ma, const StarAlgebra& ambient, const Mat& embed);
// rho(1)(1 (x) lambda) for lambda in the left integrals of the dual, times the center of M.
Subspace trivial_implementers(const ModuleAlgebra& ma, const StarAlgebra& ambient, const Mat& embed);
// Only rho(1)(1 (x) lambda), without the center.
Subspace basic_implementers(const ModuleAlgebra& ma, const StarAlgebra& ambient, const Mat& embed);

bool is_outer(const ModuleAlgebra& ma);
bool is_minimal(const ModuleAlgebra& ma);
bool is_regular(const ModuleAlgebra& ma);

// GNS data of a faithful state on M: inner product gram(i, j) = omega(e_i* e_j) and the
// polar decomposition of the Tomita map in orthonormal coordinates.
struct GnsData {
    Vec state;         // omega(m) = state^T m
    Mat gram;
    Mat to_orthonormal;    // C with gram = C^H C
    Mat from_orthonormal;  // C^-1
    Mat modular;       // Delta, Hermitian positive in orthonormal coordinates
    Mat conjugation;   // J u = conjugation * conj(u) in orthonormal coordinates
    Mat tomita;        // S u = tomita * conj(u) in orthonormal coordinates
};
// omega = omega0 o E_h. Throws MathError NotFaithful.
GnsData invariant_state(const ModuleAlgebra& ma, const Vec& omega0);
// Invariance conditions on the averaged state, J^2 = 1, S = J Delta^{1/2}.
Report verify_invariant_state(const ModuleAlgebra& ma, const GnsData& gns);
// Delta^{it} pi(a) Delta^{-it} = pi(g^{it} a g^{-it}) for t in {1/2, 1} and J pi(a) J = pi(a bar) on A_L A_R.
Report modular_check(const ModuleAlgebra& ma, const GnsData& gns);

// a bar = g^{1/2} S(a)* g^{-1/2}
Vec modular_bar(const WeakHopf& w, const Vec& a);

}  // namespace wha
