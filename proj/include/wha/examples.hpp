#pragma once

#include "wha/crossed_product.hpp"

#include <string>
#include <vector>

namespace wha {

struct FiniteGroup {
    int order = 0;
    std::vector<std::vector<int>> mult;
    std::vector<int> inv;
    int identity = 0;
    std::vector<std::string> names;

    int op(int a, int b) const { return mult[a][b]; }
    int conj(int g, int h) const { return mult[mult[g][h]][inv[g]]; }  // g h g^-1
};

// Validates the table (closure, associativity, identity, inverses). Throws InputError.
FiniteGroup make_group(const std::vector<std::vector<int>>& mult, std::vector<std::string> names = {});
FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup klein_group();
FiniteGroup symmetric_group3();

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h);
bool is_normal(const FiniteGroup& g, const std::vector<int>& h);

// z: |H| x |H| indexed by positions in h; c: |G| x |H|.
struct Cocycle {
    std::vector<std::vector<cx>> z;
    std::vector<std::vector<cx>> c;
};
Cocycle trivial_cocycle(int group_order, int subgroup_order);
Report check_cocycle(const FiniteGroup& g, const std::vector<int>& h, const Cocycle& cc);

// CH x|_Ad G with basis index (h, g) -> pos(h) * |G| + g. Throws MathError NotNormal.
WeakHopf group_weak_hopf(const FiniteGroup& g, const std::vector<int>& h);
// Throws MathError CocycleViolation naming the failed condition.
WeakHopf twisted_group_weak_hopf(const FiniteGroup& g, const std::vector<int>& h, const Cocycle& cc);
WeakHopf group_hopf(const FiniteGroup& g);

// Index of (h, g) in the basis of the group examples; h is a group element of H.
int pair_index(const FiniteGroup& g, const std::vector<int>& h, int h_elem, int g_elem);

// Phases z, c read off from projective implementers u(h) in M and an action alpha_g (coordinate maps on M).
Cocycle derive_cocycle(const FiniteGroup& g, const std::vector<int>& h, const std::vector<Vec>& u,
                       const std::vector<Mat>& alpha, const StarAlgebra& m);

// m -> v m v^* on matrix-unit coordinates of M_n.
Mat adjoint_action(const Mat& v);
// Coordinates of an n x n matrix in the matrix-unit basis.
Vec matrix_coords(const Mat& x);
Mat coords_matrix(const Vec& v, int n);

// Pauli data: Klein group realised by 1, sigma_x, sigma_z, sigma_y on M_2.
struct PauliData {
    FiniteGroup group;
    std::vector<int> subgroup;
    std::vector<Vec> implementers;
    std::vector<Mat> action;
    Cocycle cocycle;
};
PauliData pauli_data();

// (h, g) |> m = u(h) alpha_g(m) for the (twisted) group weak Hopf algebra of (g, h).
// u is indexed by positions in h, alpha by elements of g. Throws MathError ImplementerMismatch
// when alpha_h is not Ad u(h) or the implementers are not related by the cocycle phases.
ModuleAlgebra partly_inner_action(const WeakHopf& w, const FiniteGroup& g, const std::vector<int>& h,
                                  const StarAlgebra& m, const std::vector<Mat>& alpha, const std::vector<Vec>& u,
                                  const Cocycle& cc);

// Natural left action a -> phi = phi(. a) of A on its dual.
ModuleAlgebra canonical_dual_module(const WeakHopf& w);

struct GroupIntegrals {
    std::vector<Vec> left_basis;   // l_h = |G|^-1 sum_g (g h g^-1, g), h in H
    std::vector<Vec> dual_basis;   // lambda(h', g) = delta(h' g) [h' = h]
    Vec haar;                      // |G|^-1 sum_g (1, g)
    Vec dual_haar;                 // |H| delta(h) delta(g)
};
GroupIntegrals group_integrals(const FiniteGroup& g, const std::vector<int>& h);

// The M_2 seeds over CZ2 x|_Ad Z2: u(r) = diag(1, -1) with alpha = Ad u (regular), and
// u(r) = 1 with trivial alpha (collapsed, not standard).
struct PartlyInnerData {
    FiniteGroup group;
    std::vector<int> subgroup;
    std::vector<Vec> implementers;
    std::vector<Mat> alpha;
};
PartlyInnerData diagonal_sign_data();
PartlyInnerData collapsed_data();
ModuleAlgebra diagonal_sign_action();
ModuleAlgebra collapsed_action();

// M x_alpha G with basis index p * |G| + g, product (m x g)(m' x g') = m alpha_g(m') x g g'.
StarAlgebra skew_group_algebra(const StarAlgebra& m, const FiniteGroup& g, const std::vector<Mat>& alpha);

// The map m x (h, g) -> m u(h) x g from the crossed product onto M x_alpha G:
// relations vanish, it is a unital *-homomorphism, and it is bijective.
Report verify_skew_identification(const CrossedProduct& x, const PartlyInnerData& data);

}  // namespace wha
