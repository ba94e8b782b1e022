#include "test_support.hpp"

using namespace wha;
using namespace wha::test;

TEST_CASE("tower dimensions double at each step")
{
    const Tower sign = build_tower(diagonal_sign_action(), 2);
    CHECK(sign.dims() == std::vector<int>{2, 4, 8, 16});
    const Tower dual = build_tower(canonical_dual_module(group_hopf(cyclic_group(2))), 3);
    CHECK(dual.dims() == std::vector<int>{1, 2, 4, 8, 16});
    const Tower collapsed = build_tower(collapsed_action(), 2);
    CHECK(collapsed.dims() == std::vector<int>{4, 4, 8, 16});
    CHECK(build_tower(diagonal_sign_action(), 0).dims() == std::vector<int>{2, 4});
}

TEST_CASE("tower embeddings are unital, multiplicative and compose")
{
    const Tower t = build_tower(diagonal_sign_action(), 2);
    for (int from = 0; from <= 2; ++from)
        for (int to = from; to <= 2; ++to) {
            const Mat e = t.embedding(from, to);
            const StarAlgebra& a = t.algebra(from);
            const StarAlgebra& b = t.algebra(to);
            CHECK(inf_norm(Vec(e * a.unit() - b.unit())) < 1e-10);
            for (unsigned seed = 1; seed <= 2; ++seed) {
                const Vec x = random_vector(a.dim(), seed), y = random_vector(a.dim(), seed + 9);
                CHECK(inf_norm(Vec(e * a.mul(x, y) - b.mul(e * x, e * y))) < 1e-9);
                CHECK(inf_norm(Vec(e * a.star(x) - b.star(e * x))) < 1e-9);
            }
        }
    CHECK(inf_norm(Mat(t.embedding(0, 2) - t.embedding(1, 2) * t.embedding(0, 1))) < 1e-10);
    CHECK(inf_norm(Mat(t.embedding(-1, 2) - t.embedding(0, 2) * t.embedding(-1, 0))) < 1e-10);
}

TEST_CASE("Jones projections and expectations along the tower")
{
    const Tower t = build_tower(diagonal_sign_action(), 2);
    for (int i = 0; i < t.depth(); ++i) {
        const Vec& e = t.jones_projection(i);
        const StarAlgebra& a = t.algebra(i + 1);
        CHECK(inf_norm(Vec(a.mul(e, e) - e)) < 1e-10);
        CHECK(inf_norm(Vec(a.star(e) - e)) < 1e-10);
        WHA_CHECK_REPORT(basic_construction_check(t, i));
    }
    WHA_CHECK_REPORT(tower_jones_relations(t));
}

TEST_CASE("relative commutants of the regular tower")
{
    const Tower t = build_tower(diagonal_sign_action(), 2);
    const CommutantTable ct = commutant_table(t);
    CHECK(ct.regular);
    CHECK(ct.derived_dims == std::vector<int>{2, 4, 8});
    CHECK(ct.derived_dims == ct.expected_derived_dims);
    CHECK(ct.center_dims.size() == 4);
    WHA_CHECK_REPORT(ct.checks);
    CHECK(t.relative_commutant(-1, 0).dim() == 2);
    CHECK(t.center_of(0).dim() == 1);
}

TEST_CASE("the collapsed tower is not regular")
{
    const CommutantTable ct = commutant_table(build_tower(collapsed_action(), 1));
    CHECK_FALSE(ct.regular);
    WHA_CHECK_REPORT(ct.checks);
}

TEST_CASE("depth two for the Galois seed")
{
    const DepthTwo d = depth2_check(build_tower(diagonal_sign_action(), 2));
    CHECK(d.holds);
    CHECK(d.residual < 1e-8);
    WHA_CHECK_REPORT(d.checks);
}

TEST_CASE("towers beyond the budget are refused")
{
    try {
        build_tower(diagonal_sign_action(), 3, 40);
        FAIL("expected a budget refusal");
    } catch (const MathError& e) {
        CHECK(e.kind() == "BudgetExceeded");
    }
}
