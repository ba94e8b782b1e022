#include "test_support.hpp"

using namespace wha;
using namespace wha::test;

namespace {

std::vector<int> order_three_subgroup(const FiniteGroup& g)
{
    std::vector<int> out;
    for (int x = 0; x < g.order; ++x)
        if (g.op(g.op(x, x), x) == g.identity) out.push_back(x);
    return out;
}

Mat pair_columns(const FiniteGroup& g, const std::vector<int>& h, const std::function<int(int)>& second)
{
    const int n = static_cast<int>(h.size()) * g.order;
    Mat cols(n, h.size());
    for (size_t i = 0; i < h.size(); ++i) cols.col(i) = unit_vector(n, pair_index(g, h, h[i], second(h[i])));
    return cols;
}

}  // namespace

TEST_CASE("group weak Hopf algebras have the expected sizes")
{
    const FiniteGroup z2 = cyclic_group(2);
    const WeakHopf w = group_weak_hopf(z2, {0, 1});
    CHECK(w.dim() == 4);
    CHECK(std::abs(w.counit().dot(w.unit()) - 2.0) < 1e-14);

    const FiniteGroup s3 = symmetric_group3();
    const std::vector<int> a3 = order_three_subgroup(s3);
    REQUIRE(a3.size() == 3);
    const WeakHopf v = group_weak_hopf(s3, a3);
    CHECK(v.dim() == 18);
    CHECK(v.boundary(Side::L).dim() == 3);
    CHECK(verify_weak_hopf(v).ok());
}

TEST_CASE("non-normal subgroups are refused")
{
    const FiniteGroup s3 = symmetric_group3();
    int transposition = -1;
    for (int x = 0; x < s3.order; ++x)
        if (x != s3.identity && s3.op(x, x) == s3.identity) transposition = x;
    REQUIRE(transposition >= 0);
    CHECK_FALSE(is_normal(s3, {s3.identity, transposition}));
    CHECK_THROWS_AS(group_weak_hopf(s3, {s3.identity, transposition}), MathError);
}

TEST_CASE("boundary subalgebras of the group example")
{
    const FiniteGroup k = klein_group();
    const std::vector<int> h{k.identity, k.identity == 0 ? 1 : 0};
    const WeakHopf w = group_weak_hopf(k, h);
    const Subspace left = Subspace::span(pair_columns(k, h, [&](int) { return k.identity; }), 1e-12);
    const Subspace right = Subspace::span(pair_columns(k, h, [&](int x) { return k.inv[x]; }), 1e-12);
    CHECK(w.boundary(Side::L).equals(left, 1e-10));
    CHECK(w.boundary(Side::R).equals(right, 1e-10));
    WHA_CHECK_REPORT(verify_boundary(w));
    WHA_CHECK_REPORT(mu_iso(w, Side::L).checks);
    WHA_CHECK_REPORT(mu_iso(w, Side::R).checks);
}

TEST_CASE("counit maps compose to the left boundary projection")
{
    const FiniteGroup z3 = cyclic_group(3);
    const std::vector<int> h{0, 1, 2};
    const WeakHopf w = group_weak_hopf(z3, h);
    const CounitMaps cm = counit_maps(w);
    for (int x : h)
        for (int g = 0; g < z3.order; ++g) {
            const Vec image = cm.eps_hat_L * cm.eps_R * unit_vector(w.dim(), pair_index(z3, h, x, g));
            CHECK(inf_norm(Vec(image - unit_vector(w.dim(), pair_index(z3, h, x, z3.identity)))) < 1e-12);
        }
    WHA_CHECK_REPORT(verify_counit_maps(w));
    for (unsigned seed = 1; seed <= 3; ++seed) {
        const Vec a = random_vector(w.dim(), seed);
        for (const auto& [outer, inner] : {std::pair{cm.eps_L, cm.eps_hat_R}, std::pair{cm.eps_R, cm.eps_hat_L}}) {
            const Vec once = outer * a;
            CHECK(inf_norm(Vec(outer * (inner * once) - once)) < 1e-10);
        }
    }
}

TEST_CASE("dual of a group algebra multiplies pointwise")
{
    const FiniteGroup s3 = symmetric_group3();
    const WeakHopf w = group_hopf(s3);
    const StarAlgebra& d = w.dual().alg();
    for (int a = 0; a < s3.order; ++a)
        for (int b = 0; b < s3.order; ++b) {
            const Vec expected = a == b ? unit_vector(6, a) : Vec(Vec::Zero(6));
            CHECK(inf_norm(Vec(d.mul(unit_vector(6, a), unit_vector(6, b)) - expected)) < 1e-12);
        }
    CHECK(inf_norm(Vec(d.unit() - Vec::Ones(6))) < 1e-12);
}

TEST_CASE("translation of dual basis functionals in CG")
{
    const FiniteGroup s3 = symmetric_group3();
    const WeakHopf w = group_hopf(s3);
    for (int g = 0; g < s3.order; ++g)
        for (int k = 0; k < s3.order; ++k) {
            const Vec moved = arrow_left(w, unit_vector(6, g), unit_vector(6, k));
            CHECK(inf_norm(Vec(moved - unit_vector(6, s3.op(k, s3.inv[g])))) < 1e-12);
        }
    const Vec phi = random_vector(6, 3);
    CHECK(inf_norm(Vec(arrow_left(w, w.unit(), phi) - phi)) < 1e-12);
}

TEST_CASE("double dual reproduces the structure constants")
{
    const PauliData p = pauli_data();
    const WeakHopf w = twisted_group_weak_hopf(p.group, p.subgroup, p.cocycle);
    const WeakHopf& dd = w.dual().dual();
    REQUIRE(dd.dim() == w.dim());
    CHECK(inf_norm(Mat(dd.alg().flat() - w.alg().flat())) < 1e-10);
    CHECK(inf_norm(Mat(dd.coproduct() - w.coproduct())) < 1e-10);
    CHECK(inf_norm(Mat(dd.antipode() - w.antipode())) < 1e-10);
    CHECK(inf_norm(Vec(dd.counit() - w.counit())) < 1e-10);
}

TEST_CASE("purity and hypercenters")
{
    const FiniteGroup z2 = cyclic_group(2);
    CHECK(is_pure(group_hopf(z2)));
    const WeakHopf w = group_weak_hopf(z2, {0, 1});
    CHECK_FALSE(is_pure(w));
    CHECK(is_pure(w.dual()));
    CHECK(hypercenter(group_hopf(symmetric_group3())).dim() == 1);
    CHECK(hypercenter(w).dim() == hypercenter(w.dual()).dim());
    CHECK(hypercenter(w.dual()).dim() == 1);
    WHA_CHECK_REPORT(verify_hypercenter(w));
}

TEST_CASE("star conjugation is an involution")
{
    const FiniteGroup s3 = symmetric_group3();
    const WeakHopf w = group_weak_hopf(s3, order_three_subgroup(s3));
    for (int i = 0; i < w.dim(); ++i) {
        const Vec e = unit_vector(w.dim(), i);
        CHECK(inf_norm(Vec(star_conjugate(w, star_conjugate(w, e)) - e)) < 1e-12);
    }
    WHA_CHECK_REPORT(verify_structure_identities(w));
}

TEST_CASE("the reduced axiom system agrees with the full one on valid inputs")
{
    for (const WeakHopf& w : {group_hopf(cyclic_group(3)), group_weak_hopf(cyclic_group(2), {0, 1})}) {
        const AxiomReport r = verify_weak_hopf(w);
        CHECK(r.strong_ok);
        CHECK(r.relaxed_ok);
    }
}

TEST_CASE("a rescaled counit is caught by the weak multiplicativity check")
{
    const WeakHopf w = group_weak_hopf(cyclic_group(2), {0, 1});
    const WeakHopf broken(w.alg(), w.coproduct(), Vec(2.0 * w.counit()), w.antipode());
    const AxiomReport r = verify_weak_hopf(broken);
    CHECK_FALSE(r.ok());
    const CheckEntry* e = r.checks.find("counit_weak_multiplicative");
    REQUIRE(e != nullptr);
    CHECK_FALSE(e->pass);
}

TEST_CASE("Pauli cocycle satisfies its identities")
{
    const PauliData p = pauli_data();
    WHA_CHECK_REPORT(check_cocycle(p.group, p.subgroup, p.cocycle));
    const Cocycle again = derive_cocycle(p.group, p.subgroup, p.implementers, p.action, matrix_algebra(2));
    for (size_t i = 0; i < again.z.size(); ++i)
        for (size_t j = 0; j < again.z[i].size(); ++j) CHECK(std::abs(again.z[i][j] - p.cocycle.z[i][j]) < 1e-12);
    bool nontrivial = false;
    for (const auto& row : p.cocycle.z)
        for (cx z : row) nontrivial = nontrivial || std::abs(z - 1.0) > 1e-6;
    CHECK(nontrivial);
}

TEST_CASE("broken cocycles are refused")
{
    const PauliData p = pauli_data();
    Cocycle bad = p.cocycle;
    bad.z[1][2] *= cx(0, 1);
    CHECK_FALSE(check_cocycle(p.group, p.subgroup, bad).ok());
    CHECK_THROWS_AS(twisted_group_weak_hopf(p.group, p.subgroup, bad), MathError);
}
