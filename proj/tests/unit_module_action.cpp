#include "test_support.hpp"

using namespace wha;
using namespace wha::test;

namespace {

Subspace diagonals()
{
    Mat d(4, 2);
    d << 1, 0, 0, 0, 0, 0, 0, 1;
    return Subspace::span(d, 1e-12);
}

// CZ2 acting on M_2 by Ad sigma_z: the nontrivial element is inner.
ModuleAlgebra inner_group_action()
{
    const FiniteGroup z2 = cyclic_group(2);
    const std::vector<Mat> alpha{Mat::Identity(4, 4), adjoint_action(pauli_z())};
    return partly_inner_action(group_hopf(z2), z2, {z2.identity}, matrix_algebra(2), alpha,
                               {matrix_coords(Mat::Identity(2, 2))}, trivial_cocycle(2, 1));
}

}  // namespace

TEST_CASE("module algebra axioms on the seeds")
{
    for (const ModuleAlgebra& ma : {diagonal_sign_action(), collapsed_action(), inner_group_action(),
                                    canonical_dual_module(group_weak_hopf(cyclic_group(2), {0, 1}))}) {
        WHA_CHECK_REPORT(verify_module_axioms(ma));
        WHA_CHECK_REPORT(verify_coaction(ma));
        WHA_CHECK_REPORT(verify_fixed_points(ma));
    }
}

TEST_CASE("an action violating multiplicativity is refused")
{
    const ModuleAlgebra ma = diagonal_sign_action();
    std::vector<Mat> act = ma.action_basis();
    act[1] = 2.0 * act[1];
    CHECK_FALSE(verify_module_axioms(ModuleAlgebra(ma.hopf(), ma.target(), act)).ok());
    CHECK_THROWS_AS(make_module_algebra(ma.hopf(), ma.target(), act), MathError);
}

TEST_CASE("coaction of the regular representation is the coproduct")
{
    const WeakHopf w = group_weak_hopf(cyclic_group(2), {0, 1});
    const ModuleAlgebra ma = canonical_dual_module(w);
    const WeakHopf& d = w.dual();
    const Mat rho = coaction(ma);
    CHECK(inf_norm(Mat(rho - d.coproduct())) < 1e-12);
}

TEST_CASE("fixed points of the seeds")
{
    const WeakHopf w = group_weak_hopf(cyclic_group(3), {0, 1, 2});
    CHECK(fixed_points(canonical_dual_module(w)).equals(w.dual().boundary(Side::L), 1e-10));
    CHECK(fixed_points(diagonal_sign_action()).equals(diagonals(), 1e-10));
    CHECK(fixed_points(inner_group_action()).equals(diagonals(), 1e-10));
    CHECK(fixed_points(collapsed_action()).dim() == 4);
}

TEST_CASE("unit orbit of the diagonal sign action")
{
    const ImageData img = image_data(diagonal_sign_action());
    CHECK(img.standard);
    CHECK(img.m_r.equals(diagonals(), 1e-10));
    CHECK(img.m_r.contains(matrix_coords(pauli_z()), 1e-12));
    WHA_CHECK_REPORT(img.checks);
    const ImageData collapsed = image_data(collapsed_action());
    CHECK_FALSE(collapsed.standard);
    CHECK(collapsed.m_r.dim() == 1);
}

TEST_CASE("Haar expectation of the diagonal sign action is the pinching")
{
    const ModuleAlgebra ma = diagonal_sign_action();
    const Mat e = cond_expectation(ma, haar(ma.hopf()).h);
    for (unsigned seed = 1; seed <= 4; ++seed) {
        const Mat m = to_matrix(random_vector(4, seed), 2, 2);
        const Mat pinched = m.diagonal().asDiagonal();
        CHECK(inf_norm(Vec(e * matrix_coords(m) - matrix_coords(pinched))) < 1e-12);
    }
    WHA_CHECK_REPORT(verify_cond_expectation(ma, haar(ma.hopf()).h));
}

TEST_CASE("pinching has the quasi-basis 1 x 1 + sigma_x x sigma_x with index 2")
{
    const ModuleAlgebra ma = diagonal_sign_action();
    const Mat e = cond_expectation(ma, haar(ma.hopf()).h);
    const Vec one = matrix_coords(Mat::Identity(2, 2)), sx = matrix_coords(pauli_x());
    const Mat tensor = one * one.transpose() + sx * sx.transpose();
    CHECK(quasi_basis_residual(ma.target(), e, tensor) < 1e-12);
    const QuasiBasis qb = quasi_basis(ma.target(), e);
    CHECK(inf_norm(Vec(qb.index - 2.0 * one)) < 1e-10);
    WHA_CHECK_REPORT(qb.checks);
}

TEST_CASE("canonical dual module expectation has a quasi-basis")
{
    for (const WeakHopf& w : {group_hopf(cyclic_group(3)), group_weak_hopf(cyclic_group(2), {0, 1})}) {
        const ModuleAlgebra ma = canonical_dual_module(w);
        const QuasiBasis qb = quasi_basis(ma.target(), cond_expectation(ma, haar(w).h));
        WHA_CHECK_REPORT(qb.checks);
        CHECK(center(ma.target()).contains(qb.index, 1e-9));
    }
}

TEST_CASE("index rescaling by boundary elements")
{
    const ModuleAlgebra ma = canonical_dual_module(group_weak_hopf(cyclic_group(2), {0, 1}));
    WHA_CHECK_REPORT(verify_index_rescaling(ma, haar(ma.hopf()).h));
}

TEST_CASE("outerness and regularity of the seeds")
{
    const ModuleAlgebra sign = diagonal_sign_action();
    CHECK(is_outer(sign));
    CHECK(is_minimal(sign));
    CHECK(is_regular(sign));
    CHECK_FALSE(is_regular(collapsed_action()));
    CHECK_FALSE(is_outer(inner_group_action()));
    const ModuleAlgebra dual_seed = canonical_dual_module(group_hopf(cyclic_group(2)));
    CHECK(is_outer(dual_seed));
    CHECK(is_minimal(dual_seed));
}

TEST_CASE("implementer spaces contain the basic implementers")
{
    for (const ModuleAlgebra& ma : {diagonal_sign_action(), inner_group_action(), collapsed_action()}) {
        const Mat id = Mat::Identity(ma.dim(), ma.dim());
        const Subspace all = implementer_space(ma, ma.target(), id);
        const Subspace trivial = trivial_implementers(ma, ma.target(), id);
        CHECK(all.contains(basic_implementers(ma, ma.target(), id), 1e-9));
        CHECK(all.contains(trivial, 1e-9));
        CHECK((all.dim() == trivial.dim()) == is_outer(ma));
    }
}

TEST_CASE("invariant trace state on M2 and its modular data")
{
    const ModuleAlgebra ma = diagonal_sign_action();
    Vec trace = matrix_coords(Mat::Identity(2, 2)) / 2.0;
    const GnsData gns = invariant_state(ma, trace);
    WHA_CHECK_REPORT(verify_invariant_state(ma, gns));
    WHA_CHECK_REPORT(modular_check(ma, gns));
    CHECK(inf_norm(Mat(gns.modular - Mat::Identity(4, 4))) < 1e-10);
    CHECK(inf_norm(Vec(modular_bar(ma.hopf(), ma.hopf().unit()) - ma.hopf().unit())) < 1e-12);
}

TEST_CASE("a degenerate state is refused")
{
    const ModuleAlgebra ma = diagonal_sign_action();
    CHECK_THROWS_AS(invariant_state(ma, unit_vector(4, 0)), MathError);
}
