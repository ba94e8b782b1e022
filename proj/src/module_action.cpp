#include "wha/module_action.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <random>

namespace wha {

namespace {

Mat stack_rows(const std::vector<Mat>& blocks, Eigen::Index cols)
{
    Eigen::Index rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    Mat out(rows, cols);
    Eigen::Index r = 0;
    for (const auto& b : blocks) {
        out.middleRows(r, b.rows()) = b;
        r += b.rows();
    }
    return out;
}

Vec random_coeffs(Eigen::Index n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cx(nd(rng), nd(rng));
    return v;
}

// Hermitian function of a Hermitian matrix via its eigendecomposition.
Mat hermitian_apply(const Mat& h, const std::function<cx(double)>& f)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
    Vec fe(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < fe.size(); ++i) fe[i] = f(es.eigenvalues()[i]);
    return es.eigenvectors() * fe.asDiagonal() * es.eigenvectors().adjoint();
}

Subspace center_of(const StarAlgebra& m, const Subspace& s)
{
    return commutant(s.basis(), m).intersect(s, tolerance());
}

}  // namespace

ModuleAlgebra::ModuleAlgebra(WeakHopf hopf, StarAlgebra target, std::vector<Mat> act_basis)
    : hopf_(std::move(hopf)), target_(std::move(target)), act_(std::move(act_basis))
{
    if (static_cast<int>(act_.size()) != hopf_.dim())
        throw InputError("action table needs one matrix per basis element of the acting algebra");
    for (const auto& a : act_)
        if (a.rows() != target_.dim() || a.cols() != target_.dim())
            throw InputError("action matrices must be square of the module dimension");
}

Mat ModuleAlgebra::action(const Vec& a) const
{
    Mat out = Mat::Zero(dim(), dim());
    for (int i = 0; i < hopf_.dim(); ++i)
        if (a[i] != cx(0.0)) out += a[i] * act_[i];
    return out;
}

Report verify_module_axioms(const ModuleAlgebra& ma)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    const StarAlgebra& a = w.alg();
    const StarAlgebra& m = ma.target();
    const int n = w.dim(), d = m.dim();
    const Mat eye = Mat::Identity(d, d);
    const Vec one = m.unit();
    Report r;

    double assoc = 0, mult = 0, star = 0;
    const Mat& sa = w.antipode();
    for (int i = 0; i < n; ++i) {
        const Mat& ai = ma.action_basis()[i];
        for (int j = 0; j < n; ++j)
            assoc = std::max(assoc, inf_norm(Mat(ai * ma.action_basis()[j] - ma.action(a.left_basis(i).col(j)))));
        const Mat di = w.delta(a.basis(i));
        Mat split = Mat::Zero(d * d, d * d);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (std::abs(di(p, q)) > 0.0) split += di(p, q) * kron(ma.action_basis()[p], ma.action_basis()[q]);
        mult = std::max(mult, inf_norm(Mat(ai * m.flat() - m.flat() * split)));
        const Vec astar = a.star(Vec(sa.col(i)));
        star = std::max(star, inf_norm(Mat(m.star_matrix() * ai.conjugate() - ma.action(astar) * m.star_matrix())));
    }
    r.add("action_multiplicative", assoc, tol);
    r.add("unit_acts_trivially", inf_norm(Mat(ma.action(a.unit()) - eye)), tol);
    r.add("action_on_products", mult, tol);
    r.add("action_star_compatible", star, tol);

    const Mat t = target_map(w), tinv = target_map_inverse(w);
    double unit_law = 0, unit_law_mirror = 0;
    for (int i = 0; i < n; ++i) {
        const Vec ai1 = ma.action_basis()[i] * one;
        unit_law = std::max(unit_law, inf_norm(Vec(ai1 - ma.on_unit(t.col(i)))));
        unit_law_mirror = std::max(unit_law_mirror, inf_norm(Vec(ai1 - ma.on_unit(tinv.col(i)))));
    }
    r.add("unit_target_law", unit_law, tol);
    r.add("unit_target_law_mirrored", unit_law_mirror, tol);

    const Mat d1 = w.delta(a.unit());
    double split_unit = 0;
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            Vec s = Vec::Zero(d);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (std::abs(d1(x, y)) > 0.0)
                        s += d1(x, y) * m.mul(ma.action_basis()[x].col(p), ma.action_basis()[y].col(q));
            split_unit = std::max(split_unit, inf_norm(Vec(s - m.mul(m.basis(p), m.basis(q)))));
        }
    r.add("product_through_unit_coproduct", split_unit, tol);

    const Subspace al = w.boundary(Side::L), ar = w.boundary(Side::R);
    double left_b = 0, right_b = 0;
    for (int c = 0; c < al.dim(); ++c) {
        const Vec x = al.basis().col(c);
        const Mat ax = ma.action(x);
        left_b = std::max(left_b, inf_norm(Mat(ax - m.L(ma.on_unit(x)))));
        left_b = std::max(left_b, inf_norm(Mat(ax - m.L(ma.on_unit(w.antipode_inverse() * x)))));
    }
    for (int c = 0; c < ar.dim(); ++c) {
        const Vec x = ar.basis().col(c);
        const Mat ax = ma.action(x);
        right_b = std::max(right_b, inf_norm(Mat(ax - m.R(ma.on_unit(x)))));
        right_b = std::max(right_b, inf_norm(Mat(ax - m.R(ma.on_unit(w.antipode() * x)))));
    }
    r.add("left_boundary_acts_by_left_multiplication", left_b, tol);
    r.add("right_boundary_acts_by_right_multiplication", right_b, tol);

    const Subspace cm = center(m);
    const Subspace both = al.intersect(ar, tol);
    bool central = true;
    for (int c = 0; c < both.dim(); ++c) central = central && cm.contains(ma.on_unit(both.basis().col(c)), tol);
    r.flag("boundary_intersection_maps_to_center", central);

    const Subspace fix = fixed_points(ma);
    const Subspace fix_center = center_of(m, fix);
    const Subspace ca = center(a);
    bool inv = true;
    for (int c = 0; c < ca.dim(); ++c) inv = inv && fix_center.contains(ma.on_unit(ca.basis().col(c)), tol);
    r.flag("center_maps_to_fixed_center", inv);
    return r;
}

ModuleAlgebra make_module_algebra(WeakHopf hopf, StarAlgebra target, std::vector<Mat> act_basis)
{
    ModuleAlgebra ma(std::move(hopf), std::move(target), std::move(act_basis));
    const Report r = verify_module_axioms(ma);
    for (const auto& e : r.entries)
        if (!e.pass) throw MathError("ActionAxiomViolation", e.name + " residual " + std::to_string(e.residual));
    return ma;
}

Mat coaction(const ModuleAlgebra& ma)
{
    const int n = ma.hopf().dim(), d = ma.dim();
    Mat out(d * n, d);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
            for (int k = 0; k < n; ++k) out(q * n + k, p) = ma.action_basis()[k](q, p);
    return out;
}

Report verify_coaction(const ModuleAlgebra& ma)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    const WeakHopf& dw = w.dual();
    const StarAlgebra& m = ma.target();
    const int n = w.dim(), d = ma.dim();
    const Mat rho = coaction(ma);
    const std::vector<const StarAlgebra*> legs{&m, &dw.alg()};
    Report r;

    double coassoc = 0, counit = 0, mult = 0, star = 0;
    for (int p = 0; p < d; ++p) {
        const Tensor rp({d, n}, rho.col(p));
        const Mat rpm = to_matrix(rho.col(p), d, n);
        const Vec lhs = to_vector(Mat(rho * rpm));
        const Vec rhs = to_vector(Mat(rpm * dw.coproduct().transpose()));
        coassoc = std::max(coassoc, inf_norm(Vec(lhs - rhs)));
        counit = std::max(counit, inf_norm(Vec(contract_leg(rp, 1, dw.counit()).data - m.basis(p))));
        for (int q = 0; q < d; ++q) {
            const Tensor rq({d, n}, rho.col(q));
            const Tensor prod = legwise_product(rp, rq, legs);
            mult = std::max(mult, inf_norm(Vec(prod.data - rho * m.mul(m.basis(p), m.basis(q)))));
        }
        star = std::max(star, inf_norm(Vec(legwise_star(rp, legs).data - rho * m.star(m.basis(p)))));
    }
    r.add("coaction_coassociative", coassoc, tol);
    r.add("coaction_counital", counit, tol);
    r.add("coaction_multiplicative", mult, tol);
    r.add("coaction_star_preserving", star, tol);

    const Mat& e = w.counit_form();
    const Vec one = m.unit();
    double left_form = 0, right_form = 0;
    for (int i = 0; i < n; ++i) {
        const Mat di = w.delta(w.alg().basis(i));
        for (int j = 0; j < n; ++j) {
            const Vec lhs = ma.on_unit(w.alg().left_basis(i).col(j));
            Vec via_second = Vec::Zero(d), via_first = Vec::Zero(d);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    if (std::abs(di(x, y)) == 0.0) continue;
                    via_second += di(x, y) * e(x, j) * (ma.action_basis()[y] * one);
                    via_first += di(x, y) * e(y, j) * (ma.action_basis()[x] * one);
                }
            left_form = std::max(left_form, inf_norm(Vec(lhs - via_second)));
            right_form = std::max(right_form, inf_norm(Vec(lhs - via_first)));
        }
    }
    r.add("unit_orbit_counit_left", left_form, tol);
    r.add("unit_orbit_counit_right", right_form, tol);
    return r;
}

Subspace fixed_points(const ModuleAlgebra& ma)
{
    const int n = ma.hopf().dim();
    const Mat t = target_map(ma.hopf());
    std::vector<Mat> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back(ma.action_basis()[i] - ma.action(t.col(i)));
    return Subspace(ma.dim(), null_space(stack_rows(blocks, ma.dim()), tolerance()));
}

Report verify_fixed_points(const ModuleAlgebra& ma)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    const StarAlgebra& m = ma.target();
    const int n = w.dim(), d = ma.dim();
    const Subspace fix = fixed_points(ma);

    std::vector<Mat> left_rule, right_rule, mirrored;
    const Mat tinv = target_map_inverse(w);
    for (int i = 0; i < n; ++i) {
        const Mat& ai = ma.action_basis()[i];
        for (int p = 0; p < d; ++p) {
            left_rule.push_back(ai * m.left_basis(p) - m.L(ai.col(p)));
            right_rule.push_back(ai * m.right_basis(p) - m.R(ai.col(p)));
        }
        mirrored.push_back(ai - ma.action(tinv.col(i)));
    }
    const Subspace s_left(d, null_space(stack_rows(left_rule, d), tol));
    const Subspace s_right(d, null_space(stack_rows(right_rule, d), tol));
    const Subspace s_mirror(d, null_space(stack_rows(mirrored, d), tol));
    Report r;
    r.flag("fixed_points_match_left_module_rule", fix.equals(s_left, tol));
    r.flag("fixed_points_match_right_module_rule", fix.equals(s_right, tol));
    r.flag("fixed_points_match_mirrored_target_rule", fix.equals(s_mirror, tol));
    r.flag("fixed_points_unital_star_subalgebra", is_unital_star_subalgebra(m, fix, tol));

    const Subspace dual_left = w.dual().boundary(Side::L);
    const Mat rho = coaction(ma);
    bool in_left = true;
    for (int c = 0; c < fix.dim(); ++c) {
        const Mat rows = to_matrix(rho * fix.basis().col(c), d, n);
        for (int q = 0; q < d; ++q) in_left = in_left && dual_left.contains(Vec(rows.row(q).transpose()), tol);
    }
    r.flag("coaction_of_fixed_points_in_dual_left", in_left);
    return r;
}

ImageData image_data(const ModuleAlgebra& ma)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    const StarAlgebra& a = w.alg();
    const StarAlgebra& m = ma.target();
    const int n = w.dim(), d = ma.dim();
    ImageData out;

    Mat orbit(d, n);
    for (int i = 0; i < n; ++i) orbit.col(i) = ma.action_basis()[i] * m.unit();
    out.m_r = Subspace::span(orbit, tol);

    const Subspace al = w.boundary(Side::L);
    out.mu = Mat(d, al.dim());
    for (int c = 0; c < al.dim(); ++c) out.mu.col(c) = ma.on_unit(al.basis().col(c));
    const Mat ker = null_space(out.mu, tol);
    out.ker_mu = ker.cols() == 0 ? Subspace::zero(n) : Subspace::span(al.basis() * ker, tol);
    out.standard = out.ker_mu.dim() == 0;

    Mat vecs(d * d, n);
    for (int i = 0; i < n; ++i) vecs.col(i) = to_vector(ma.action_basis()[i]);
    out.annihilator = Subspace(n, null_space(vecs, tol));

    const Mat& kb = out.ker_mu.basis();
    out.z = Vec::Zero(n);
    if (out.ker_mu.dim() > 0) {
        std::vector<Mat> blocks;
        Vec rhs(2 * n * kb.cols());
        for (Eigen::Index c = 0; c < kb.cols(); ++c) {
            blocks.push_back(a.R(kb.col(c)) * kb);
            blocks.push_back(a.L(kb.col(c)) * kb);
            rhs.segment(2 * c * n, n) = kb.col(c);
            rhs.segment((2 * c + 1) * n, n) = kb.col(c);
        }
        out.z = kb * solve_linear(stack_rows(blocks, kb.cols()), rhs, tol).particular;
    }
    out.ideal = out.ker_mu.dim() == 0 ? Subspace::zero(n)
                                      : product_span(a, Mat::Identity(n, n), kb);

    Report& r = out.checks;
    r.flag("orbit_of_unit_is_unital_star_subalgebra", is_unital_star_subalgebra(m, out.m_r, tol));
    double hom = 0, star = 0;
    for (int i = 0; i < al.dim(); ++i) {
        const Vec x = al.basis().col(i);
        star = std::max(star, inf_norm(Vec(m.star(ma.on_unit(x)) - ma.on_unit(a.star(x)))));
        for (int j = 0; j < al.dim(); ++j) {
            const Vec y = al.basis().col(j);
            hom = std::max(hom, inf_norm(Vec(ma.on_unit(a.mul(x, y)) - m.mul(ma.on_unit(x), ma.on_unit(y)))));
        }
    }
    r.add("unit_orbit_map_multiplicative", hom, tol);
    r.add("unit_orbit_map_star", star, tol);
    r.flag("unit_orbit_map_onto", numerical_rank(out.mu, tol) == out.m_r.dim());
    const Subspace ca = center(a);
    r.flag("kernel_projection_central", out.ker_mu.dim() == 0 || ca.contains(out.z, tol));
    r.add("kernel_projection_idempotent", inf_norm(Vec(a.mul(out.z, out.z) - out.z)), tol);
    r.add("kernel_projection_self_adjoint", inf_norm(Vec(a.star(out.z) - out.z)), tol);
    if (out.ker_mu.dim() > 0) {
        Mat zal(n, al.dim());
        for (int c = 0; c < al.dim(); ++c) zal.col(c) = a.mul(out.z, al.basis().col(c));
        r.flag("kernel_is_projection_times_left_boundary", Subspace::span(zal, tol).equals(out.ker_mu, tol));
        r.flag("kernel_ideal_two_sided", out.ideal.equals(product_span(a, kb, Mat::Identity(n, n)), tol));
    }
    r.flag("kernel_ideal_annihilates", out.annihilator.contains(out.ideal, tol));

    const Subspace cm = center(m);
    const Subspace fix = fixed_points(ma);
    const Subspace both = al.intersect(w.boundary(Side::R), tol);
    bool to_center = true;
    for (int c = 0; c < both.dim(); ++c) to_center = to_center && cm.contains(ma.on_unit(both.basis().col(c)), tol);
    r.flag("boundary_intersection_image_central", to_center);
    const Subspace lc = al.intersect(ca, tol);
    const Subspace fix_center = center_of(m, fix);
    bool to_fixed_center = true;
    for (int c = 0; c < lc.dim(); ++c)
        to_fixed_center = to_fixed_center && fix_center.contains(ma.on_unit(lc.basis().col(c)), tol);
    r.flag("central_left_boundary_image_in_fixed_center", to_fixed_center);
    r.flag("orbit_commutes_with_fixed_points", commutant(fix.basis(), m).contains(out.m_r, tol));

    const Vec& eps = w.counit();
    double tau_res = 0;
    for (int i = 0; i < n; ++i)
        tau_res = std::max(tau_res, inf_norm(Vec(tau(ma, arrow_left(w, a.basis(i), eps)) - orbit.col(i))));
    r.add("tau_matches_unit_orbit", tau_res, tol);
    return out;
}

Vec tau(const ModuleAlgebra& ma, const Vec& phi)
{
    return ma.on_unit(counit_maps(ma.hopf()).eps_hat_L * phi);
}

Mat cond_expectation(const ModuleAlgebra& ma, const Vec& l) { return ma.action(l); }

Report verify_cond_expectation(const ModuleAlgebra& ma, const Vec& l)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    const StarAlgebra& a = w.alg();
    const StarAlgebra& m = ma.target();
    const int d = ma.dim();
    const Mat e = cond_expectation(ma, l);
    const Subspace fix = fixed_points(ma);
    Report r;

    r.flag("range_in_fixed_points", fix.contains(Subspace::span(e, tol), tol));
    double bimod = 0;
    for (int c = 0; c < fix.dim(); ++c) {
        const Vec x = fix.basis().col(c);
        bimod = std::max(bimod, inf_norm(Mat(e * m.L(x) - m.L(x) * e)));
        bimod = std::max(bimod, inf_norm(Mat(e * m.R(x) - m.R(x) * e)));
    }
    r.add("fixed_point_bimodule", bimod, tol);

    double resc_l = 0, resc_r = 0;
    const Subspace al = w.boundary(Side::L), ar = w.boundary(Side::R);
    for (int c = 0; c < al.dim(); ++c) {
        const Vec x = al.basis().col(c);
        resc_l = std::max(resc_l, inf_norm(Mat(cond_expectation(ma, a.mul(l, x)) - e * m.L(ma.on_unit(x)))));
    }
    for (int c = 0; c < ar.dim(); ++c) {
        const Vec x = ar.basis().col(c);
        resc_r = std::max(resc_r, inf_norm(Mat(cond_expectation(ma, a.mul(l, x)) - e * m.R(ma.on_unit(x)))));
    }
    r.add("left_boundary_rescaling", resc_l, tol);
    r.add("right_boundary_rescaling", resc_r, tol);

    const Vec e1 = e * m.unit();
    r.add("unit_image_left_normalization", inf_norm(Vec(e1 - ma.on_unit(normalization(w, l, Side::L)))), tol);
    r.add("unit_image_right_normalization", inf_norm(Vec(e1 - ma.on_unit(normalization(w, l, Side::R)))), tol);

    const IntegralClass cls = classify(w, l);
    if (cls.positive) {
        const Vec z = ma.on_unit(sqrt_positive(a, rn_derivative(w, l, Side::R)));
        const Mat eh = cond_expectation(ma, haar(w).h);
        const Mat conjugated = eh * m.L(m.star(z)) * m.R(z);
        r.add("positive_expectation_from_haar", inf_norm(Mat(e - conjugated)), tol);
        // Faithful trace functional on M: Tr of left multiplication.
        Vec trace(d);
        for (int p = 0; p < d; ++p) trace[p] = m.left_basis(p).trace();
        Mat gram(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) gram(i, j) = trace.dot(e * m.mul(m.star(m.basis(i)), m.basis(j)));
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
        const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        r.flag("positive_expectation_form", es.eigenvalues().minCoeff() > -tol * top);
        if (cls.nondegenerate) r.flag("nondegenerate_expectation_faithful", es.eigenvalues().minCoeff() > tol * top);
    }
    return r;
}

Report verify_expectation_correspondence(const ModuleAlgebra& ma)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    const StarAlgebra& m = ma.target();
    Report r;
    const ImageData img = image_data(ma);
    const Subspace fix = fixed_points(ma);
    const Subspace rel = commutant(fix.basis(), m);
    const bool premise = img.standard && rel.equals(img.m_r, tol);
    if (!premise) return r;
    const Subspace li = left_integral_space(w);
    const int d = ma.dim();
    Mat maps(d * d, li.dim());
    for (int c = 0; c < li.dim(); ++c) maps.col(c) = to_vector(cond_expectation(ma, li.basis().col(c)));
    r.flag("integral_to_expectation_injective", numerical_rank(maps, tol) == li.dim());
    bool agree = true;
    for (unsigned s = 1; s <= 4; ++s) {
        const Vec l = s == 1 ? haar(w).h : random_left_integral(w, 97 + s);
        const bool normalized = classify(w, l).normalized;
        const bool unital = inf_norm(Vec(cond_expectation(ma, l) * m.unit() - m.unit())) < tol;
        agree = agree && normalized == unital;
    }
    r.flag("normalized_iff_unital", agree);
    return r;
}

double quasi_basis_residual(const StarAlgebra& m, const Mat& expectation, const Mat& tensor)
{
    const int d = m.dim();
    double worst = 0;
    for (int k = 0; k < d; ++k) {
        Vec left = Vec::Zero(d), right = Vec::Zero(d);
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) {
                if (tensor(p, q) == cx(0.0)) continue;
                left += tensor(p, q) * m.mul(m.basis(p), expectation * m.mul(m.basis(q), m.basis(k)));
                right += tensor(p, q) * m.mul(expectation * m.mul(m.basis(k), m.basis(p)), m.basis(q));
            }
        worst = std::max({worst, inf_norm(Vec(left - m.basis(k))), inf_norm(Vec(right - m.basis(k)))});
    }
    return worst;
}

QuasiBasis quasi_basis(const StarAlgebra& m, const Mat& expectation)
{
    const double tol = tolerance();
    const int d = m.dim();
    const Mat& flat = m.flat();
    Mat sys = Mat::Zero(2 * d * d, d * d);
    Vec rhs = Vec::Zero(2 * d * d);
    for (int k = 0; k < d; ++k) {
        rhs[k * d + k] = 1.0;
        rhs[d * d + k * d + k] = 1.0;
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) {
                const Vec left = m.left_basis(p) * (expectation * flat.col(q * d + k));
                const Vec right = m.L(expectation * flat.col(k * d + p)).col(q);
                sys.block(k * d, p * d + q, d, 1) = left;
                sys.block(d * d + k * d, p * d + q, d, 1) = right;
            }
    }
    LinearSolution sol;
    try {
        sol = solve_linear(sys, rhs, tol);
    } catch (const MathError&) {
        throw MathError("NotIndexFinite", "no quasi-basis solves both one-sided conditions");
    }
    QuasiBasis out;
    out.tensor = to_matrix(sol.particular, d, d);
    out.index = m.contract(out.tensor);
    out.checks.add("quasi_basis_residual", quasi_basis_residual(m, expectation, out.tensor), tol);
    out.checks.flag("index_central", center(m).contains(out.index, tol));
    double spread = 0;
    if (sol.kernel.cols() > 0) {
        for (unsigned s = 1; s <= 2; ++s) {
            const Vec other = sol.particular + sol.kernel * random_coeffs(sol.kernel.cols(), 31 * s);
            spread = std::max(spread, inf_norm(Vec(m.contract(to_matrix(other, d, d)) - out.index)));
        }
    }
    out.checks.add("index_choice_independent", spread, tol * std::max(1.0, inf_norm(out.index)) * 10);
    return out;
}

Report verify_index_rescaling(const ModuleAlgebra& ma, const Vec& l)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    const StarAlgebra& a = w.alg();
    const StarAlgebra& m = ma.target();
    const Subspace both = w.boundary(Side::L).intersect(w.boundary(Side::R), tol);
    Report r;
    const QuasiBasis base = quasi_basis(m, cond_expectation(ma, l));
    double worst = 0;
    for (unsigned s = 1; s <= 2; ++s) {
        const Vec dd = a.unit() + random_positive(a, both, 211 * s);
        const QuasiBasis scaled = quasi_basis(m, cond_expectation(ma, a.mul(l, dd)));
        const Vec expect = m.mul(ma.on_unit(invert(a, dd)), base.index);
        worst = std::max(worst, inf_norm(Vec(scaled.index - expect)));
    }
    r.add("index_rescaling_by_central_boundary", worst, tol * std::max(1.0, inf_norm(base.index)) * 10);
    return r;
}

Subspace implementer_space(const ModuleAlgebra& ma, const StarAlgebra& ambient, const Mat& embed)
{
    const WeakHopf& w = ma.hopf();
    const int n = w.dim(), d = ma.dim(), big = ambient.dim();
    Mat sys = Mat::Zero(static_cast<Eigen::Index>(n) * d * big, static_cast<Eigen::Index>(n) * big);
    std::vector<Mat> moved_left(static_cast<size_t>(n) * d);
    for (int r = 0; r < n; ++r)
        for (int p = 0; p < d; ++p) moved_left[r * d + p] = ambient.L(embed * ma.action_basis()[r].col(p));
    for (int i = 0; i < n; ++i) {
        const Mat di = w.delta(w.alg().basis(i));
        for (int p = 0; p < d; ++p) {
            const Eigen::Index row = (static_cast<Eigen::Index>(i) * d + p) * big;
            sys.block(row, static_cast<Eigen::Index>(i) * big, big, big) += ambient.R(embed.col(p));
            for (int j = 0; j < n; ++j)
                for (int r = 0; r < n; ++r)
                    if (std::abs(di(r, j)) > 0.0)
                        sys.block(row, static_cast<Eigen::Index>(j) * big, big, big) -= di(r, j) * moved_left[r * d + p];
        }
    }
    return Subspace(n * big, null_space(sys, tolerance()));
}

Subspace basic_implementers(const ModuleAlgebra& ma, const StarAlgebra& ambient, const Mat& embed)
{
    const WeakHopf& w = ma.hopf();
    const int n = w.dim(), big = ambient.dim();
    const Subspace li = left_integral_space(w.dual());
    Mat cols(n * big, li.dim());
    for (int c = 0; c < li.dim(); ++c)
        for (int j = 0; j < n; ++j)
            cols.block(j * big, c, big, 1) = embed * ma.on_unit(w.delta(w.alg().basis(j)) * li.basis().col(c));
    return Subspace::span(cols, tolerance());
}

Subspace trivial_implementers(const ModuleAlgebra& ma, const StarAlgebra& ambient, const Mat& embed)
{
    const int n = ma.hopf().dim(), big = ambient.dim();
    const Subspace base = basic_implementers(ma, ambient, embed);
    const Subspace cm = center(ma.target());
    Mat cols(n * big, base.dim() * cm.dim());
    for (int z = 0; z < cm.dim(); ++z) {
        const Mat lz = ambient.L(embed * cm.basis().col(z));
        for (int c = 0; c < base.dim(); ++c)
            for (int j = 0; j < n; ++j)
                cols.block(j * big, z * base.dim() + c, big, 1) = lz * base.basis().col(c).segment(j * big, big);
    }
    return Subspace::span(cols, tolerance());
}

bool is_outer(const ModuleAlgebra& ma)
{
    const int d = ma.dim();
    const Mat id = Mat::Identity(d, d);
    return implementer_space(ma, ma.target(), id).equals(trivial_implementers(ma, ma.target(), id), tolerance());
}

bool is_minimal(const ModuleAlgebra& ma)
{
    const StarAlgebra& m = ma.target();
    const Subspace rel = commutant(fixed_points(ma).basis(), m);
    const Subspace expected = product_span(m, center(m).basis(), image_data(ma).m_r.basis());
    return rel.equals(expected, tolerance());
}

bool is_regular(const ModuleAlgebra& ma)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    if (!image_data(ma).standard || !is_outer(ma)) return false;
    const Subspace both = w.boundary(Side::L).intersect(w.boundary(Side::R), tol);
    Mat img(ma.dim(), both.dim());
    for (int c = 0; c < both.dim(); ++c) img.col(c) = ma.on_unit(both.basis().col(c));
    return center(ma.target()).equals(Subspace::span(img, tol), tol);
}

GnsData invariant_state(const ModuleAlgebra& ma, const Vec& omega0)
{
    const StarAlgebra& m = ma.target();
    const int d = ma.dim();
    GnsData g;
    g.state = cond_expectation(ma, haar(ma.hopf()).h).transpose() * omega0;
    g.gram = Mat(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Vec prod = m.L(m.star(m.basis(i))).col(j);
            g.gram(i, j) = (g.state.transpose() * prod)(0);
        }
    const double tol = tolerance();
    if (inf_norm(Mat(g.gram - g.gram.adjoint())) > tol * std::max(1.0, inf_norm(g.gram)))
        throw MathError("NotFaithful", "state is not Hermitian on M");
    Eigen::LLT<Mat> llt(0.5 * (g.gram + g.gram.adjoint()));
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g.gram + g.gram.adjoint()), Eigen::EigenvaluesOnly);
    if (llt.info() != Eigen::Success || es.eigenvalues().minCoeff() <= tol * std::max(1.0, es.eigenvalues().maxCoeff()))
        throw MathError("NotFaithful", "GNS form is not positive definite");
    g.to_orthonormal = llt.matrixU();
    g.from_orthonormal = g.to_orthonormal.inverse();
    g.tomita = g.to_orthonormal * m.star_matrix() * g.from_orthonormal.conjugate();
    g.modular = (g.tomita.adjoint() * g.tomita).conjugate();
    const Mat inv_root = hermitian_apply(g.modular, [](double t) { return cx(1.0 / std::sqrt(t)); });
    g.conjugation = g.tomita * inv_root.conjugate();
    return g;
}

Report verify_invariant_state(const ModuleAlgebra& ma, const GnsData& gns)
{
    const double tol = tolerance();
    const WeakHopf& w = ma.hopf();
    const StarAlgebra& m = ma.target();
    const int n = w.dim(), d = ma.dim();
    const Vec& om = gns.state;
    Report r;
    const Mat eh = cond_expectation(ma, haar(w).h);
    r.add("state_averaged", inf_norm(Vec(eh.transpose() * om - om)), tol);
    double left = 0, right = 0;
    for (int i = 0; i < n; ++i) {
        const Vec ai = w.alg().basis(i);
        const Vec sl = ma.on_unit(w.antipode_inverse() * ai), sr = ma.on_unit(w.antipode() * ai);
        for (int p = 0; p < d; ++p) {
            const cx lhs = (om.transpose() * ma.action_basis()[i].col(p))(0);
            left = std::max(left, std::abs(lhs - (om.transpose() * m.mul(sl, m.basis(p)))(0)));
            right = std::max(right, std::abs(lhs - (om.transpose() * m.mul(m.basis(p), sr))(0)));
        }
    }
    r.add("invariance_through_inverse_antipode", left, tol);
    r.add("invariance_through_antipode", right, tol);
    const Mat eye = Mat::Identity(d, d);
    r.add("conjugation_involutive", inf_norm(Mat(gns.conjugation * gns.conjugation.conjugate() - eye)), tol);
    r.add("conjugation_antiunitary", inf_norm(Mat(gns.conjugation.adjoint() * gns.conjugation - eye)), tol);
    const Mat root = hermitian_apply(gns.modular, [](double t) { return cx(std::sqrt(t)); });
    r.add("tomita_polar_decomposition", inf_norm(Mat(gns.conjugation * root.conjugate() - gns.tomita)), tol);
    Eigen::SelfAdjointEigenSolver<Mat> es(gns.modular, Eigen::EigenvaluesOnly);
    r.flag("modular_operator_positive", es.eigenvalues().minCoeff() > 0.0);
    return r;
}

Vec modular_bar(const WeakHopf& w, const Vec& a)
{
    const StarAlgebra& alg = w.alg();
    const HaarData& hd = haar(w);
    const Vec root = positive_power(alg, hd.g, cx(0.5));
    const Vec root_inv = positive_power(alg, hd.g, cx(-0.5));
    return alg.mul(alg.mul(root, alg.star(w.antipode() * a)), root_inv);
}

Report modular_check(const ModuleAlgebra& ma, const GnsData& gns)
{
    const WeakHopf& w = ma.hopf();
    const StarAlgebra& a = w.alg();
    const double tol = tolerance();
    const Mat& c = gns.to_orthonormal;
    const Mat& ci = gns.from_orthonormal;
    auto pi = [&](const Vec& x) { return Mat(c * ma.action(x) * ci); };
    const Subspace span = product_span(a, w.boundary(Side::L).basis(), w.boundary(Side::R).basis());
    const Vec& g = haar(w).g;
    const Mat& jm = gns.conjugation;
    Report r;
    for (double t : {0.5, 1.0}) {
        const Mat dt = hermitian_apply(gns.modular, [t](double x) { return std::exp(cx(0.0, t) * std::log(x)); });
        const Vec gt = positive_power(a, g, cx(0.0, t)), gmt = positive_power(a, g, cx(0.0, -t));
        double worst = 0;
        for (int k = 0; k < span.dim(); ++k) {
            const Vec x = span.basis().col(k);
            worst = std::max(worst, inf_norm(Mat(dt * pi(x) * dt.adjoint() - pi(a.mul(a.mul(gt, x), gmt)))));
        }
        r.add(t == 1.0 ? "modular_flow_at_one" : "modular_flow_at_half", worst, tol);
    }
    double conj = 0;
    for (int k = 0; k < span.dim(); ++k) {
        const Vec x = span.basis().col(k);
        conj = std::max(conj, inf_norm(Mat(jm * pi(x).conjugate() * jm.conjugate() - pi(modular_bar(w, x)))));
    }
    r.add("modular_conjugation_intertwines", conj, tol);
    return r;
}

}  // namespace wha
