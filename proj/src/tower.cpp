#include "wha/tower.hpp"

#include "wha/examples.hpp"

namespace wha {

Tower::Tower(const ModuleAlgebra& seed, int depth, int budget)
{
    if (depth < 0) throw InputError("tower depth must be non-negative");
    steps_.push_back(seed);
    fixed_basis_ = fixed_points(seed).basis();
    for (int i = 0; i < depth; ++i) {
        const ModuleAlgebra& ma = steps_.back();
        const long raw = static_cast<long>(ma.dim()) * ma.hopf().dim();
        if (raw > budget)
            throw MathError("BudgetExceeded", "level " + std::to_string(i + 1) + " needs raw dimension " +
                                                  std::to_string(raw) + " > " + std::to_string(budget));
        crossed_.emplace_back(ma);
        const Vec& h = haar(ma.hopf()).h;
        jones_.push_back(crossed_.back().embed_acting() * h);
        expectations_.push_back(cond_expectation(ma, h));
        steps_.push_back(dual_action(crossed_.back()));
    }
}

int Tower::dim(int level) const
{
    return level < 0 ? static_cast<int>(fixed_basis_.cols()) : algebra(level).dim();
}

std::vector<int> Tower::dims() const
{
    std::vector<int> out;
    for (int level = -1; level <= depth(); ++level) out.push_back(dim(level));
    return out;
}

const StarAlgebra& Tower::algebra(int level) const
{
    if (level < 0 || level > depth()) throw InputError("tower level out of range");
    return steps_[level].target();
}

Mat Tower::embedding(int from, int to) const
{
    if (from < -1 || to > depth() || from > to) throw InputError("invalid tower embedding");
    if (from == -1) return Mat(embedding(0, to) * fixed_basis_);
    Mat out = Mat::Identity(dim(from), dim(from));
    for (int k = from; k < to; ++k) out = crossed_[k].embed_module() * out;
    return out;
}

Subspace Tower::image(int from, int to) const { return Subspace::span(embedding(from, to), tolerance()); }

Subspace Tower::center_of(int level) const
{
    if (level >= 0) return center(algebra(level));
    const Subspace fixed(dim(0), fixed_basis_);
    return fixed.intersect(commutant(fixed_basis_, algebra(0)), tolerance());
}

Subspace Tower::relative_commutant(int from, int to) const
{
    return commutant(embedding(from, to), algebra(to));
}

Tower build_tower(const ModuleAlgebra& seed, int depth, int budget) { return Tower(seed, depth, budget); }

Report tower_jones_relations(const Tower& t)
{
    Report r;
    for (int i = 0; i < t.depth(); ++i)
        r.merge(jones_relation(t.crossed(i), haar(t.step(i).hopf()).h), "level_" + std::to_string(i) + "_");
    return r;
}

Report basic_construction_check(const Tower& t, int i)
{
    Report r;
    const BasicConstruction bc = basic_construction(t.crossed(i), haar(t.step(i).hopf()).h);
    r.merge(bc.checks);
    r.merge(jones_relation(t.crossed(i), haar(t.step(i).hopf()).h));
    return r;
}

namespace {

// Center of level i pushed into level `top`.
Subspace center_in(const Tower& t, int level, int top)
{
    const Subspace c = t.center_of(level);
    const Mat emb = level < 0 ? t.embedding(0, top) : t.embedding(level, top);
    return Subspace::span(Mat(emb * c.basis()), tolerance());
}

std::vector<int> derived_pattern(const WeakHopf& w, int depth)
{
    std::vector<int> out{w.boundary(Side::L).dim()};
    if (depth >= 1) out.push_back(w.dim());
    if (depth >= 2) {
        ModuleAlgebra current = canonical_dual_module(w.dual());
        for (int level = 2; level <= depth; ++level) {
            CrossedProduct next(current);
            out.push_back(next.dim());
            if (level < depth) current = dual_action(next);
        }
    }
    return out;
}

}  // namespace

CommutantTable commutant_table(const Tower& t)
{
    const double tol = tolerance();
    const ModuleAlgebra& seed = t.step(0);
    const WeakHopf& w = seed.hopf();
    CommutantTable out;
    Report& r = out.checks;

    for (int i = 0; i <= t.depth(); ++i) out.derived_dims.push_back(t.relative_commutant(-1, i).dim());
    for (int i = -1; i <= t.depth(); ++i) out.center_dims.push_back(t.center_of(i).dim());
    std::vector<Subspace> fixed;
    for (int i = -1; i < t.depth(); ++i) {
        fixed.push_back(center_in(t, i, t.depth()).intersect(center_in(t, i + 1, t.depth()), tol));
        out.global_fixed_dims.push_back(fixed.back().dim());
    }
    out.expected_derived_dims = derived_pattern(w, t.depth());
    out.regular = is_regular(seed);
    if (!out.regular) return out;

    for (int i = 0; i < t.depth(); ++i)
        r.flag("dual_action_regular_at_level_" + std::to_string(i + 1), is_regular(t.step(i + 1)));
    r.flag("derived_tower_dims_follow_boundary_pattern", out.derived_dims == out.expected_derived_dims);
    bool constant = true;
    for (const Subspace& s : fixed) constant = constant && s.equals(fixed.front(), tol);
    r.flag("center_intersections_globally_fixed", constant);

    r.flag("fixed_commutant_in_module_is_image_of_left_boundary",
           t.relative_commutant(-1, 0).equals(image_data(seed).m_r, tol));
    if (t.depth() == 0) return out;

    const CrossedProduct& x = t.crossed(0);
    const Mat& ea = x.embed_acting();
    const Subspace al = w.boundary(Side::L), ar = w.boundary(Side::R), ca = center(w.alg());
    auto acting = [&](const Subspace& s) { return Subspace::span(Mat(ea * s.basis()), tol); };
    const Subspace hyper = acting(al.intersect(ar, tol).intersect(ca, tol));
    const Subspace c_fixed = center_in(t, -1, 1), c_module = center_in(t, 0, 1), c_cross = t.center_of(1);

    r.flag("fixed_commutant_in_cross_is_acting_algebra", t.relative_commutant(-1, 1).equals(acting(Subspace::full(w.dim())), tol));
    r.flag("module_commutant_in_cross_is_right_boundary", t.relative_commutant(0, 1).equals(acting(ar), tol));
    r.flag("fixed_center_is_central_left_boundary", c_fixed.equals(acting(al.intersect(ca, tol)), tol));
    r.flag("module_center_is_boundary_intersection", c_module.equals(acting(al.intersect(ar, tol)), tol));
    r.flag("cross_center_is_central_right_boundary", c_cross.equals(acting(ar.intersect(ca, tol)), tol));
    r.flag("fixed_and_module_centers_meet_in_hypercenter", c_fixed.intersect(c_module, tol).equals(hyper, tol));
    r.flag("module_and_cross_centers_meet_in_hypercenter", c_module.intersect(c_cross, tol).equals(hyper, tol));
    return out;
}

DepthTwo depth2_check(const Tower& t)
{
    DepthTwo out;
    if (t.depth() == 0) {
        out.holds = true;
        out.checks.flag("no_crossed_level", true);
        return out;
    }
    const double tol = tolerance();
    const CrossedProduct& x = t.crossed(0);
    const WeakHopf& w = t.step(0).hopf();
    const StarAlgebra& xa = x.alg();
    const int big = x.dim();
    const Mat dual_e = x.embed_module() * hat_expectation(x, p_dual(w, haar(w).h));
    const Mat span = t.relative_commutant(-1, 1).basis();
    const int r = static_cast<int>(span.cols());

    // Columns p * r + q: coefficient of span_p (x) span_q.
    Mat sys(2 * big * big, r * r);
    Vec rhs(2 * big * big);
    for (int k = 0; k < big; ++k) {
        const Vec xk = xa.basis(k);
        for (int p = 0; p < r; ++p)
            for (int q = 0; q < r; ++q) {
                const Vec left = xa.mul(span.col(p), dual_e * xa.mul(span.col(q), xk));
                const Vec right = xa.mul(dual_e * xa.mul(xk, span.col(p)), span.col(q));
                sys.block(k * big, p * r + q, big, 1) = left;
                sys.block((big + k) * big, p * r + q, big, 1) = right;
            }
        rhs.segment(k * big, big) = xk;
        rhs.segment((big + k) * big, big) = xk;
    }
    try {
        const LinearSolution sol = solve_linear(sys, rhs, tol);
        out.residual = sol.residual;
        out.holds = true;
    } catch (const MathError&) {
        out.residual = inf_norm(Vec(sys * sys.completeOrthogonalDecomposition().solve(rhs) - rhs));
        out.holds = false;
    }
    out.checks.add("quasi_basis_in_fixed_commutant", out.residual, tol);
    return out;
}

}  // namespace wha
