#include "test_support.hpp"

using namespace wha;
using namespace wha::test;

TEST_CASE("Heisenberg double of CZ2 is a full matrix algebra")
{
    const WeakHopf w = group_hopf(cyclic_group(2));
    const CrossedProduct x(canonical_dual_module(w));
    CHECK(x.dim() == 4);
    CHECK(center(x.alg()).dim() == 1);
    WHA_CHECK_REPORT(x.checks);
    WHA_CHECK_REPORT(heisenberg_unit_identity(w, haar(w).h));
}

TEST_CASE("dual action on M2 x Z2 has M2 as fixed points")
{
    const CrossedProduct x(diagonal_sign_action());
    const ModuleAlgebra dual = dual_action(x);
    WHA_CHECK_REPORT(verify_module_axioms(dual));
    WHA_CHECK_REPORT(verify_dual_action(x, dual));
    CHECK(fixed_points(dual).equals(Subspace::span(x.embed_module(), 1e-12), 1e-9));
    const Vec one_hat = dual.hopf().unit();
    for (int i = 0; i < x.dim(); ++i)
        CHECK(inf_norm(Vec(dual.act(one_hat, unit_vector(x.dim(), i)) - unit_vector(x.dim(), i))) < 1e-12);
    CHECK(image_data(dual).m_r.dim() == x.base().hopf().dual().boundary(Side::L).dim());
}

TEST_CASE("dual Haar expectation picks the identity component")
{
    const PartlyInnerData data = diagonal_sign_data();
    const ModuleAlgebra ma = diagonal_sign_action();
    const CrossedProduct x(ma);
    const WeakHopf& w = ma.hopf();
    const Mat e = hat_expectation(x, haar(w).hhat);
    for (int g = 0; g < data.group.order; ++g) {
        const Vec a = unit_vector(w.dim(), pair_index(data.group, data.subgroup, data.group.identity, g));
        for (unsigned seed = 1; seed <= 2; ++seed) {
            const Vec m = random_vector(4, seed);
            const Vec expected = g == data.group.identity ? m : Vec(Vec::Zero(4));
            CHECK(inf_norm(Vec(e * x.element(m, a) - expected)) < 1e-10);
        }
    }
    WHA_CHECK_REPORT(verify_hat_expectation(x, haar(w).h));
}

TEST_CASE("regular representation of M2 x Z2 is faithful")
{
    const CrossedProduct x(diagonal_sign_action());
    const RegularRep rep = regular_homomorphism(x);
    CHECK(rep.images.size() == 8);
    const CheckEntry* injective = rep.checks.find("regular_injective");
    REQUIRE(injective != nullptr);
    CHECK(injective->pass);
    CHECK(inf_norm(Mat(rep.projection * rep.projection - rep.projection)) < 1e-10);
    WHA_CHECK_REPORT(rep.checks);
    for (int r = 0; r < x.relations().dim(); ++r) {
        Mat image = Mat::Zero(rep.projection.rows(), rep.projection.cols());
        for (int raw = 0; raw < x.raw_dim(); ++raw) image += x.relations().basis()(raw, r) * regular_image_raw(x, raw);
        CHECK(inf_norm(image) < 1e-10);
    }
}

TEST_CASE("crossed GNS isometry")
{
    const ModuleAlgebra ma = diagonal_sign_action();
    const CrossedProduct x(ma);
    const GnsData gns = invariant_state(ma, matrix_coords(Mat::Identity(2, 2)) / 2.0);
    const CrossGns cg = gns_cross(x, gns);
    WHA_CHECK_REPORT(cg.checks);
}

TEST_CASE("Jones relation and Temperley-Lieb projections")
{
    for (const ModuleAlgebra& ma : {diagonal_sign_action(), canonical_dual_module(group_hopf(cyclic_group(3)))}) {
        const CrossedProduct x(ma);
        const Vec& h = haar(ma.hopf()).h;
        WHA_CHECK_REPORT(jones_relation(x, h));
        const TljResult t = tlj_elements(x, h);
        WHA_CHECK_REPORT(t.checks);
    }
}

TEST_CASE("relative commutants of M2 x Z2")
{
    const CrossedProduct x(diagonal_sign_action());
    const CommutantData cd = commutant_suite(x);
    CHECK(cd.module_commutant.dim() == 2);
    CHECK(cd.fixed_in_module.dim() == 2);
    CHECK(cd.fixed_in_cross.dim() == 4);
    CHECK(cd.cross_center.dim() == 2);
    WHA_CHECK_REPORT(cd.checks);
}

TEST_CASE("Galois property of the seeds")
{
    const GaloisResult dual_seed = galois_test(CrossedProduct(canonical_dual_module(group_hopf(cyclic_group(2)))));
    CHECK(dual_seed.is_galois);
    const CrossedProduct sign(diagonal_sign_action());
    const GaloisResult g = galois_test(sign);
    CHECK(g.is_galois);
    CHECK(g.gamma_rank == 8);
    CHECK(g.span_dim == sign.dim());
    const CrossedProduct collapsed(collapsed_action());
    const GaloisResult c = galois_test(collapsed);
    CHECK_FALSE(c.is_galois);
    CHECK(c.gamma_rank == 4);
    CHECK(c.gamma_target == 8);
    CHECK(inf_norm(Vec(collapsed.alg().mul(c.p, c.p) - c.p)) < 1e-10);
    CHECK(center(collapsed.alg()).contains(c.p, 1e-10));
}

TEST_CASE("basic construction index comparison")
{
    const ModuleAlgebra sign = diagonal_sign_action();
    const BasicConstruction bc = basic_construction(CrossedProduct(sign), haar(sign.hopf()).h);
    CHECK_FALSE(bc.strict);
    CHECK(inf_norm(Vec(bc.index - bc.bound)) < 1e-9);
    CHECK(inf_norm(Vec(bc.index - 2.0 * sign.target().unit())) < 1e-9);
    WHA_CHECK_REPORT(bc.checks);
    const ModuleAlgebra collapsed = collapsed_action();
    const BasicConstruction bcc = basic_construction(CrossedProduct(collapsed), haar(collapsed.hopf()).h);
    CHECK(bcc.strict);
    WHA_CHECK_REPORT(bcc.checks);
}

TEST_CASE("crossed product by the Pauli twisted action")
{
    const PauliData p = pauli_data();
    const WeakHopf w = twisted_group_weak_hopf(p.group, p.subgroup, p.cocycle);
    const ModuleAlgebra ma =
        partly_inner_action(w, p.group, p.subgroup, matrix_algebra(2), p.action, p.implementers, p.cocycle);
    WHA_CHECK_REPORT(verify_module_axioms(ma));
    const CrossedProduct x(ma);
    WHA_CHECK_REPORT(verify_crossed_product(x));
    WHA_CHECK_REPORT(jones_relation(x, haar(w).h));
}

TEST_CASE("pure algebras acting outerly on a factor give a factor crossed product")
{
    const WeakHopf trivial = group_hopf(cyclic_group(1));
    const ModuleAlgebra on_factor(trivial, matrix_algebra(2), {Mat::Identity(4, 4)});
    WHA_CHECK_REPORT(verify_module_axioms(on_factor));
    REQUIRE(is_pure(trivial));
    REQUIRE(is_outer(on_factor));
    const CrossedProduct x(on_factor);
    CHECK(center(x.alg()).dim() == 1);
    CHECK(is_pure(trivial.dual()));
    CHECK(is_outer(dual_action(x)));

    // Z2 grading of M2 by the parity of the off-diagonal entries: C(M x A) is not a factor,
    // and accordingly the action is not outer.
    const WeakHopf functions = group_hopf(cyclic_group(2)).dual();
    Mat even = Mat::Zero(4, 4), odd = Mat::Zero(4, 4);
    even(0, 0) = even(3, 3) = 1.0;
    odd(1, 1) = odd(2, 2) = 1.0;
    const ModuleAlgebra graded(functions, matrix_algebra(2), {even, odd});
    WHA_CHECK_REPORT(verify_module_axioms(graded));
    CHECK(is_pure(functions) == (center(functions.alg()).intersect(functions.boundary(Side::L), 1e-10).dim() == 1));
    CHECK(center(CrossedProduct(graded).alg()).dim() == 2);
    CHECK_FALSE(is_outer(graded));
}
