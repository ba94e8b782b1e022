// Acceptance runner: one PASS/FAIL line per criterion. With an argument, runs only the named criterion.
#include "wha/tower.hpp"
#include "wha/examples.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace wha;

namespace {

struct Instance {
    std::string name;
    WeakHopf w;
    bool group = false;  // untwisted group pair, with the data below
    FiniteGroup g;
    std::vector<int> h;
};

std::vector<int> elements_of_order_dividing(const FiniteGroup& g, int k)
{
    std::vector<int> out;
    for (int x = 0; x < g.order; ++x) {
        int y = g.identity;
        for (int i = 0; i < k; ++i) y = g.op(y, x);
        if (y == g.identity) out.push_back(x);
    }
    return out;
}

std::vector<Instance> base_instances()
{
    std::vector<Instance> out;
    auto add_group = [&](const std::string& name, const FiniteGroup& g, const std::vector<int>& h) {
        out.push_back({name, group_weak_hopf(g, h), true, g, h});
    };
    add_group("CZ2", cyclic_group(2), {0});
    add_group("CZ3", cyclic_group(3), {0});
    add_group("CS3", symmetric_group3(), {symmetric_group3().identity});
    add_group("Z2_in_Z2", cyclic_group(2), {0, 1});
    const FiniteGroup klein = klein_group();
    add_group("Z2_in_Klein", klein, {klein.identity, klein.identity == 0 ? 1 : 0});
    const FiniteGroup s3 = symmetric_group3();
    add_group("Z3_in_S3", s3, elements_of_order_dividing(s3, 3));
    const PauliData p = pauli_data();
    out.push_back({"pauli_twisted", twisted_group_weak_hopf(p.group, p.subgroup, p.cocycle), false, p.group, p.subgroup});
    return out;
}

std::vector<Instance> all_instances()
{
    std::vector<Instance> out = base_instances();
    const size_t n = out.size();
    for (size_t i = 0; i < n; ++i) out.push_back({out[i].name + "_dual", out[i].w.dual(), false, {}, {}});
    return out;
}

// An entry passes if it passed at the working tolerance or its residual is below the criterion threshold.
bool within(const Report& r, double threshold, std::string& why, const std::string& where)
{
    for (const auto& e : r.entries)
        if (!e.pass && !(e.residual < threshold)) {
            why = where + ": " + e.name + " residual " + std::to_string(e.residual);
            return false;
        }
    return true;
}

double dist(const Vec& a, const Vec& b) { return inf_norm(Vec(a - b)); }

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why)
    {
        if (pass) detail = why;
        pass = false;
    }
    void require(bool ok, const std::string& why)
    {
        if (!ok) fail(why);
    }
    void require(const Report& r, double threshold, const std::string& where)
    {
        std::string why;
        if (!within(r, threshold, why, where)) fail(why);
    }
};

Vec trace_state(const StarAlgebra& m)
{
    Vec om(m.dim());
    for (int p = 0; p < m.dim(); ++p) om[p] = m.left_basis(p).trace();
    return om / (om.transpose() * m.unit())(0);
}

Outcome axiom_suite()
{
    Outcome o;
    for (const auto& inst : all_instances()) {
        const AxiomReport r = verify_weak_hopf(inst.w);
        o.require(r.checks, 1e-9, inst.name);
        o.require(r.strong_ok, inst.name + ": axiom list incomplete");
    }
    return o;
}

Outcome haar_identities()
{
    Outcome o;
    for (const auto& inst : all_instances()) {
        o.require(verify_haar(inst.w), 1e-9, inst.name);
        if (!inst.group) continue;
        const GroupIntegrals gi = group_integrals(inst.g, inst.h);
        o.require(dist(haar(inst.w).h, gi.haar) < 1e-12, inst.name + ": Haar integral differs from the group formula");
        o.require(dist(haar(inst.w).hhat, gi.dual_haar) < 1e-12, inst.name + ": dual Haar integral differs from the group formula");
    }
    return o;
}

Outcome modular_suite()
{
    Outcome o;
    for (const auto& inst : all_instances()) {
        o.require(verify_modular(inst.w), 1e-9, inst.name);
        if (!inst.group) continue;
        const Vec expected = inst.w.unit() / std::sqrt(static_cast<double>(inst.g.order));
        o.require(dist(haar(inst.w).g_L, expected) < 1e-12 && dist(haar(inst.w).g_R, expected) < 1e-12,
                  inst.name + ": modular elements are not |G|^-1/2");
    }
    return o;
}

Outcome boundary_subalgebras()
{
    Outcome o;
    for (const auto& inst : all_instances()) {
        o.require(verify_boundary(inst.w), 1e-9, inst.name);
        for (Side s : {Side::L, Side::R}) o.require(mu_iso(inst.w, s).checks, 1e-9, inst.name + " counit isomorphism");
        if (inst.group) {
            const int nh = static_cast<int>(inst.h.size());
            o.require(inst.w.boundary(Side::L).dim() == nh && inst.w.boundary(Side::R).dim() == nh,
                      inst.name + ": boundary dimension differs from |H|");
        }
    }
    return o;
}

Outcome integral_duality()
{
    Outcome o;
    for (const auto& inst : all_instances()) {
        int taken = 0;
        for (unsigned seed = 1; taken < 20 && seed < 200; ++seed) {
            const Vec l = random_left_integral(inst.w, seed);
            const IntegralClass c = classify(inst.w, l);
            o.require(c.nondegenerate == c.gram_nondegenerate && c.positive == c.gram_positive,
                      inst.name + ": classification disagrees with the Gram oracle");
            o.require(c.split_form_residual < 1e-8, inst.name + ": split form mismatch");
            if (!c.nondegenerate) continue;
            ++taken;
            const Vec lambda = dual_integral(inst.w, l);
            o.require(verify_dual_pair(inst.w, l, lambda), 1e-8, inst.name);
        }
        o.require(taken == 20, inst.name + ": not enough nondegenerate samples");
    }
    return o;
}

Outcome p_duality()
{
    Outcome o;
    for (const auto& inst : all_instances()) {
        for (unsigned seed = 1; seed <= 10; ++seed) {
            const Vec l = random_positive_normalized_integral(inst.w, seed);
            const Vec lambda = p_dual(inst.w, l);
            const Vec back = p_dual(inst.w.dual(), lambda);
            o.require(dist(back, l) < 1e-8, inst.name + ": p-dual is not involutive");
            const Vec e = jones_projection(inst.w, l);
            o.require(dist(hat_arrow_left(inst.w, lambda, e), inst.w.unit()) < 1e-10,
                      inst.name + ": p-dual does not pair to the unit");
        }
    }
    return o;
}

Outcome tlj_relations()
{
    Outcome o;
    const std::vector<std::pair<std::string, ModuleAlgebra>> seeds{
        {"M2_sign", diagonal_sign_action()},
        {"dual_of_CZ2", canonical_dual_module(group_hopf(cyclic_group(2)))},
        {"dual_of_Z2_in_Z2", canonical_dual_module(group_weak_hopf(cyclic_group(2), {0, 1}))}};
    for (const auto& [name, ma] : seeds) {
        const CrossedProduct x(ma);
        o.require(tlj_elements(x, haar(ma.hopf()).h).checks, 1e-8, name);
    }
    return o;
}

Outcome crossed_product_structure()
{
    Outcome o;
    const ModuleAlgebra ma = diagonal_sign_action();
    const CrossedProduct x(ma);
    o.require(verify_crossed_product(x), 1e-9, "M2_sign");
    o.require(x.dim() == 8, "M2_sign: crossed product dimension " + std::to_string(x.dim()));
    o.require(verify_skew_identification(x, diagonal_sign_data()), 1e-9, "skew group identification");
    const RegularRep rep = regular_homomorphism(x);
    o.require(rep.checks, 1e-9, "regular representation");
    for (const ModuleAlgebra& other : {collapsed_action(), canonical_dual_module(group_hopf(cyclic_group(3)))}) {
        const CrossedProduct y(other);
        o.require(verify_crossed_product(y), 1e-9, "secondary seed");
        o.require(regular_homomorphism(y).checks, 1e-9, "secondary regular representation");
    }
    return o;
}

Outcome index_oracle()
{
    Outcome o;
    for (const FiniteGroup& g : {cyclic_group(2), cyclic_group(3), symmetric_group3()}) {
        const WeakHopf w = group_hopf(g);
        const Vec& h = haar(w).h;
        const IntegralIndex idx = integral_index(w, h);
        const ModuleAlgebra ma = canonical_dual_module(w);
        const QuasiBasis qb = quasi_basis(ma.target(), cond_expectation(ma, h));
        const Vec expected = static_cast<double>(g.order) * w.dual().unit();
        const std::string name = "order " + std::to_string(g.order);
        o.require(dist(qb.index, expected) < 1e-9, name + ": quasi-basis index differs from |G|");
        o.require(dist(idx.index, expected) < 1e-9, name + ": integral index differs from |G|");
        o.require(qb.checks, 1e-9, name + " quasi-basis");
        o.require(verify_hat_expectation(CrossedProduct(ma), h), 1e-9, name + " dual expectation");
    }
    o.require(verify_hat_expectation(CrossedProduct(diagonal_sign_action()), haar(diagonal_sign_action().hopf()).h), 1e-9,
              "M2_sign dual expectation");
    return o;
}

Outcome jones_galois()
{
    Outcome o;
    const ModuleAlgebra ma = diagonal_sign_action();
    const CrossedProduct x(ma);
    const Vec& h = haar(ma.hopf()).h;
    const GaloisResult g = galois_test(x);
    o.require(g.checks, 1e-9, "Galois test");
    o.require(g.is_galois && dist(g.p, x.alg().unit()) < 1e-9, "M2_sign: Galois projection is not 1");
    o.require(g.gamma_rank == g.gamma_target, "M2_sign: Galois map not of full rank");
    o.require(jones_relation(x, h), 1e-9, "Jones relation");
    const BasicConstruction bc = basic_construction(x, h);
    o.require(bc.checks, 1e-9, "basic construction");
    o.require(!bc.strict, "M2_sign: index bound is strict");
    const CommutantData cd = commutant_suite(x);
    o.require(cd.checks, 1e-9, "commutant suite");
    o.require(cd.module_commutant.dim() == 2 && cd.fixed_in_module.dim() == 2 && cd.fixed_in_cross.dim() == 4,
              "M2_sign: relative commutant dimensions");
    o.require(cd.cross_center.dim() == 2, "M2_sign: center of the crossed product");

    const ModuleAlgebra col = collapsed_action();
    const CrossedProduct y(col);
    const GaloisResult gc = galois_test(y);
    o.require(gc.checks, 1e-9, "collapsed Galois test");
    o.require(!gc.is_galois && dist(gc.p, y.alg().unit()) > 1e-6, "collapsed: Galois projection equals 1");
    const BasicConstruction bcc = basic_construction(y, haar(col.hopf()).h);
    o.require(bcc.checks, 1e-9, "collapsed basic construction");
    o.require(bcc.strict, "collapsed: index bound is not strict");
    return o;
}

Outcome regularity_propagation()
{
    Outcome o;
    std::vector<std::pair<std::string, ModuleAlgebra>> seeds{
        {"M2_sign", diagonal_sign_action()},
        {"dual_of_Z2_in_Z2", canonical_dual_module(group_weak_hopf(cyclic_group(2), {0, 1}))},
        {"dual_of_Z3_in_S3", canonical_dual_module(group_weak_hopf(symmetric_group3(),
                                                                   elements_of_order_dividing(symmetric_group3(), 3)))}};
    int regular = 0;
    for (const auto& [name, ma] : seeds) {
        if (!is_regular(ma)) continue;
        ++regular;
        const Tower t = build_tower(ma, name == "M2_sign" ? 2 : 1);
        o.require(is_regular(t.step(1)), name + ": dual action is not regular");
        const CommutantTable ct = commutant_table(t);
        o.require(ct.regular, name + ": table not evaluated under regularity");
        o.require(ct.checks, 1e-9, name + " center table");
    }
    o.require(regular >= 2, "fewer than two regular seeds");
    return o;
}

Outcome modular_conjugation()
{
    Outcome o;
    const ModuleAlgebra ma = diagonal_sign_action();
    const GnsData gns = invariant_state(ma, trace_state(ma.target()));
    o.require(verify_invariant_state(ma, gns), 1e-7, "invariant state");
    o.require(modular_check(ma, gns), 1e-7, "modular check");
    return o;
}

struct Criterion {
    std::string name;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list{
        {"weak_hopf_axioms_on_all_instances_and_duals", axiom_suite},
        {"haar_integral_identities_and_group_formulas", haar_identities},
        {"modular_elements_and_group_square_roots", modular_suite},
        {"boundary_subalgebra_dimensions_and_counit_isomorphisms", boundary_subalgebras},
        {"dual_pairs_of_random_nondegenerate_integrals", integral_duality},
        {"p_duality_is_involutive", p_duality},
        {"temperley_lieb_relations_in_second_crossed_product", tlj_relations},
        {"crossed_product_inclusions_dimension_and_regular_representation", crossed_product_structure},
        {"integral_index_matches_quasi_basis_index", index_oracle},
        {"jones_projection_galois_and_relative_commutants", jones_galois},
        {"regularity_passes_to_dual_action_with_center_table", regularity_propagation},
        {"modular_conjugation_on_matrix_seed", modular_conjugation},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string only = argc > 1 ? argv[1] : "";
    bool all_pass = true, found = false;
    for (const auto& c : criteria()) {
        if (!only.empty() && c.name != only) continue;
        found = true;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.name;
        if (!o.pass) std::cout << "  (" << o.detail << ")";
        std::cout << std::endl;
        all_pass = all_pass && o.pass;
    }
    if (!found) {
        std::cerr << "unknown criterion " << only << "\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}
