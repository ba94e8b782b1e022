#pragma once

#include "wha/crossed_product.hpp"

namespace wha {

// N = M_{-1} in M_0 in M_1 in ... with M_{i+1} = M_i x A_i, where A_i alternates
// between the seed algebra and its dual.
class Tower {
public:
    Tower(const ModuleAlgebra& seed, int depth, int budget);

    int depth() const { return static_cast<int>(crossed_.size()); }
    // Level i runs from -1 (the fixed points) to depth().
    int dim(int level) const;
    std::vector<int> dims() const;

    // Action of A_i on M_i and the crossed product M_{i+1} it produces.
    const ModuleAlgebra& step(int i) const { return steps_.at(i); }
    const CrossedProduct& crossed(int i) const { return crossed_.at(i); }
    // Level as an algebra, for level >= 0.
    const StarAlgebra& algebra(int level) const;

    // dim(M_to) x dim(M_from) inclusion for -1 <= from <= to <= depth().
    Mat embedding(int from, int to) const;
    // Jones projection 1 x h_i in M_{i+1} and the Haar expectation on M_i.
    const Vec& jones_projection(int i) const { return jones_.at(i); }
    const Mat& expectation(int i) const { return expectations_.at(i); }

    // Span of the image of level `from` inside level `to`.
    Subspace image(int from, int to) const;
    // Center of a level in its own coordinates; level -1 uses M_0 coordinates.
    Subspace center_of(int level) const;
    // Commutant of the image of `from` inside level `to`.
    Subspace relative_commutant(int from, int to) const;

private:
    std::vector<ModuleAlgebra> steps_;   // one more than the number of crossed products
    std::vector<CrossedProduct> crossed_;
    Mat fixed_basis_;
    std::vector<Vec> jones_;
    std::vector<Mat> expectations_;
};

// Default refusal threshold for the raw dimension of a crossed product.
constexpr int kDefaultBudget = 5000;

// Throws MathError BudgetExceeded when a level would exceed the budget.
Tower build_tower(const ModuleAlgebra& seed, int depth, int budget = kDefaultBudget);

// Jones relation at every level, using the Haar integral of each acting algebra.
Report tower_jones_relations(const Tower& t);

// Jones generation, dual expectation on the Jones projection and the index bound at step i.
Report basic_construction_check(const Tower& t, int i);

struct CommutantTable {
    std::vector<int> derived_dims;     // N' /\ M_i for i = 0..depth
    std::vector<int> center_dims;      // C(M_i) for i = -1..depth
    std::vector<int> global_fixed_dims;  // C(M_i) /\ C(M_{i+1}) for i = -1..depth-1
    std::vector<int> expected_derived_dims;  // A_L, A, A x dual, ...
    bool regular = false;
    Report checks;
};
// Relative commutants and centers against the boundary pieces of the seed algebra. Identities
// that need regularity are only asserted when the seed action is regular.
CommutantTable commutant_table(const Tower& t);

// A quasi-basis of the dual expectation M_1 -> M_0 inside N' /\ M_1, if one exists.
struct DepthTwo {
    bool holds = false;
    double residual = 0.0;
    Report checks;
};
DepthTwo depth2_check(const Tower& t);

}  // namespace wha
