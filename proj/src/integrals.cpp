#include "wha/integrals.hpp"

#include <Eigen/Eigenvalues>

#include <random>

namespace wha {

namespace {

Mat stacked(const std::vector<Mat>& blocks)
{
    Eigen::Index rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    Mat out(rows, blocks.front().cols());
    Eigen::Index r = 0;
    for (const auto& b : blocks) {
        out.middleRows(r, b.rows()) = b;
        r += b.rows();
    }
    return out;
}

bool hermitian_psd(const Mat& g, double tol)
{
    if (inf_norm(Mat(g - g.adjoint())) > tol * std::max(1.0, inf_norm(g))) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return ev.minCoeff() > -tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
}

Vec random_vec(int n, std::mt19937& rng)
{
    std::normal_distribution<double> nd;
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = cx(nd(rng), nd(rng));
    return v;
}

}  // namespace

Subspace left_integral_space(const WeakHopf& w)
{
    const int n = w.dim();
    const Mat t = target_map(w);
    std::vector<Mat> blocks;
    for (int a = 0; a < n; ++a) blocks.push_back(w.alg().left_basis(a) - w.alg().L(t.col(a)));
    return Subspace(n, null_space(stacked(blocks), tolerance()));
}

Subspace right_integral_space(const WeakHopf& w)
{
    const int n = w.dim();
    const Mat s = source_map(w);
    std::vector<Mat> blocks;
    for (int a = 0; a < n; ++a) blocks.push_back(w.alg().right_basis(a) - w.alg().R(s.col(a)));
    return Subspace(n, null_space(stacked(blocks), tolerance()));
}

Vec haar_element(const WeakHopf& w)
{
    const double tol = tolerance();
    const Subspace two_sided = left_integral_space(w).intersect(right_integral_space(w), tol);
    if (two_sided.dim() == 0) throw MathError("NoHaar", "no two-sided integrals");
    const Mat sys = source_map(w) * two_sided.basis();
    LinearSolution sol;
    try {
        sol = solve_linear(sys, w.unit(), tol);
    } catch (const MathError&) {
        throw MathError("NoHaar", "normalization S(h_1)h_2 = 1 has no solution");
    }
    if (sol.kernel.cols() != 0) throw MathError("NoHaar", "normalized two-sided integral is not unique");
    return two_sided.basis() * sol.particular;
}

const HaarData& haar(const WeakHopf& w)
{
    auto slot = w.cached_haar([&w]() -> std::shared_ptr<const void> {
        auto d = std::make_shared<HaarData>();
        const StarAlgebra& a = w.alg();
        d->h = haar_element(w);
        d->hhat = haar_element(w.dual());
        d->g_L = sqrt_positive(a, hat_arrow_left(w, d->hhat, d->h));
        d->g_R = sqrt_positive(a, hat_arrow_right(w, d->h, d->hhat));
        d->g_L_inv = invert(a, d->g_L);
        d->g_R_inv = invert(a, d->g_R);
        d->g = a.mul(d->g_L, d->g_R_inv);
        d->g_inv = invert(a, d->g);
        const Mat eps_R = counit_maps(w).eps_R;
        d->lambda_h = w.dual().alg().mul(d->hhat, eps_R * a.mul(d->g_L_inv, d->g_L_inv));
        return d;
    });
    return *static_cast<const HaarData*>(slot.get());
}

Report verify_haar(const WeakHopf& w)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    const HaarData& d = haar(w);
    const Vec& h = d.h;
    Report r;
    r.add("idempotent", inf_norm(Vec(a.mul(h, h) - h)), tol);
    r.add("self_adjoint", inf_norm(Vec(a.star(h) - h)), tol);
    r.add("antipode_invariant", inf_norm(Vec(w.antipode() * h - h)), tol);
    r.add("source_normalized", inf_norm(Vec(source_map(w) * h - w.unit())), tol);
    r.add("target_normalized", inf_norm(Vec(target_map(w) * h - w.unit())), tol);
    r.flag("left_integral", left_integral_space(w).contains(h, tol));
    r.flag("right_integral", right_integral_space(w).contains(h, tol));
    const IntegralClass c = classify(w, h);
    r.flag("positive_nondegenerate", c.positive && c.nondegenerate && c.gram_positive && c.gram_nondegenerate);
    r.flag("integral_dimension", left_integral_space(w).dim() == w.boundary(Side::L).dim());
    const Vec lam = dual_integral(w, h);
    r.add("dual_of_haar", inf_norm(Vec(lam - d.lambda_h)), tol);
    return r;
}

Report verify_modular(const WeakHopf& w)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    const WeakHopf& dw = w.dual();
    const std::vector<const StarAlgebra*> two{&a, &a};
    const HaarData& d = haar(w);
    const HaarData& dd = haar(dw);
    const CounitMaps m = counit_maps(w);
    Report r;
    r.flag("g_L_in_left", w.boundary(Side::L).contains(d.g_L, tol));
    r.flag("g_R_in_right", w.boundary(Side::R).contains(d.g_R, tol));
    r.flag("g_positive_invertible", is_positive(a, d.g_L) && is_positive(a, d.g_R) && is_invertible(a, d.g_L) &&
                                        is_invertible(a, d.g_R));
    double ghat = 0;
    for (const Vec* gh : {&dd.g_L, &dd.g_R})
        for (const Vec* gs : {&d.g_L, &d.g_R}) {
            const Mat& eps = gh == &dd.g_L ? m.eps_L : m.eps_R;
            ghat = std::max(ghat, inf_norm(Vec(*gh - eps * *gs)));
        }
    r.add("dual_modular_from_counit", ghat, tol);
    r.add("dual_integral_of_haar", inf_norm(Vec(dual_integral(w, d.h) - d.lambda_h)), tol);
    const double gr = std::min(inf_norm(Vec(d.g_R - w.antipode() * d.g_L)),
                               inf_norm(Vec(d.g_R - w.antipode_inverse() * d.g_L)));
    r.add("g_R_antipode_of_g_L", gr, tol);
    const Mat s2 = w.antipode() * w.antipode();
    r.add("squared_antipode_inner", inf_norm(Mat(s2 - a.L(d.g) * a.R(d.g_inv))), tol);
    const Tensor g_t = Tensor::from_vector(d.g);
    const Tensor gg = outer(g_t, g_t);
    const Tensor d1 = w.delta_tensor(w.unit());
    const Tensor dg = w.delta_tensor(d.g);
    r.add("group_like", std::max(inf_norm(dg - legwise_product(gg, d1, two)), inf_norm(dg - legwise_product(d1, gg, two))),
          tol);
    const Tensor one_g = outer(Tensor::from_vector(w.unit()), g_t);
    const Tensor dh = w.delta_tensor(d.h);
    const Tensor twisted = legwise_product(legwise_product(one_g, dh, two), one_g, two);
    r.add("haar_opposite_coproduct", inf_norm(permute_legs(dh, {1, 0}) - twisted), tol);
    return r;
}

Vec rn_derivative(const WeakHopf& w, const Vec& l, Side side)
{
    const CounitMaps m = counit_maps(w);
    return (side == Side::L ? m.eps_hat_L : m.eps_hat_R) * (m.eps_L * l);
}

Vec normalization(const WeakHopf& w, const Vec& l, Side side)
{
    const CounitMaps m = counit_maps(w);
    return (side == Side::L ? m.eps_hat_L : m.eps_hat_R) * (m.eps_R * l);
}

Mat functional_gram(const WeakHopf& w, const Vec& l)
{
    const StarAlgebra& da = w.dual().alg();
    const int n = w.dim();
    const Mat prods = da.product_table(da.star_matrix(), Mat::Identity(n, n));
    const Vec vals = prods.transpose() * l;
    return to_matrix(vals, n, n);
}

Mat split_gram(const WeakHopf& w, const Vec& l)
{
    return w.alg().star_matrix().conjugate() * w.antipode() * w.delta(l);
}

IntegralClass classify(const WeakHopf& w, const Vec& l)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    IntegralClass c;
    const Vec dr = rn_derivative(w, l, Side::R);
    c.nondegenerate = is_invertible(a, dr);
    c.positive = is_self_adjoint(a, dr, tol) && is_positive(a, dr);
    c.normalized = inf_norm(Vec(normalization(w, l, Side::R) - w.unit())) < tol;
    const Mat g = functional_gram(w, l);
    c.gram_positive = hermitian_psd(g, tol);
    c.gram_nondegenerate = numerical_rank(g, tol) == w.dim();
    c.split_form_residual = inf_norm(Mat(g - split_gram(w, l)));
    return c;
}

Mat fourier_left(const WeakHopf& w, const Vec& l) { return w.delta(l).transpose(); }
Mat fourier_right(const WeakHopf& w, const Vec& l) { return w.delta(l); }

Vec dual_integral(const WeakHopf& w, const Vec& l)
{
    const double tol = tolerance();
    LinearSolution sol;
    try {
        sol = solve_linear(fourier_right(w, l), w.unit(), tol);
    } catch (const MathError&) {
        throw MathError("Degenerate", "unit is not in the image of l_R");
    }
    if (sol.kernel.cols() != 0) throw MathError("Degenerate", "l_R is not injective");
    return sol.particular;
}

Report verify_dual_pair(const WeakHopf& w, const Vec& l, const Vec& lambda)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    const int n = w.dim();
    const Mat eye = Mat::Identity(n, n);
    Report r;
    r.add("pairing", inf_norm(Vec(hat_arrow_left(w, lambda, l) - w.unit())), tol);
    r.add("reverse_pairing", inf_norm(Vec(arrow_left(w, l, lambda) - w.counit())), tol);
    Mat lam_left(n, n), lam_right(n, n);
    for (int c = 0; c < n; ++c) {
        lam_left.col(c) = arrow_right(w, lambda, a.basis(c));
        lam_right.col(c) = arrow_left(w, a.basis(c), lambda);
    }
    r.add("fourier_right_inverse", inf_norm(Mat(fourier_right(w, l) * lam_left * w.antipode_inverse() - eye)), tol);
    const Mat shat_inv = w.antipode_inverse().transpose();
    r.add("dual_fourier_right_inverse", inf_norm(Mat(lam_right * fourier_left(w, l) * shat_inv - eye)), tol);
    r.flag("dual_left_integral", left_integral_space(w.dual()).contains(lambda, tol));
    const HaarData& d = haar(w);
    const Vec dl = rn_derivative(w, l, Side::L);
    const Vec inner = a.mul(a.mul(d.g_L, dl), d.g_L);
    const Vec target = invert(w.dual().alg(), counit_maps(w).eps_R * inner);
    r.add("dual_rn_derivative", inf_norm(Vec(rn_derivative(w.dual(), lambda, Side::R) - target)), tol);
    return r;
}

Vec jones_projection(const WeakHopf& w, const Vec& l)
{
    const StarAlgebra& a = w.alg();
    const Vec root = sqrt_positive(a, rn_derivative(w, l, Side::R));
    return a.mul(a.mul(root, haar(w).h), root);
}

Report verify_jones_projection(const WeakHopf& w, const Vec& l)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    const Vec e = jones_projection(w, l);
    Report r;
    r.flag("positive", is_self_adjoint(a, e, tol) && is_positive(a, e));
    const Vec e2 = a.mul(e, e);
    r.add("square_left_normalization", inf_norm(Vec(e2 - a.mul(normalization(w, l, Side::L), e))), tol);
    r.add("square_right_normalization", inf_norm(Vec(e2 - a.mul(normalization(w, l, Side::R), e))), tol);
    return r;
}

Vec p_dual(const WeakHopf& w, const Vec& l)
{
    const double tol = tolerance();
    const IntegralClass c = classify(w, l);
    if (!c.positive) throw MathError("NotPositive", "p-dual needs a positive left integral");
    if (!c.nondegenerate) throw MathError("Degenerate", "p-dual needs a nondegenerate left integral");
    LinearSolution sol;
    try {
        sol = solve_linear(w.delta(jones_projection(w, l)), w.unit(), tol);
    } catch (const MathError&) {
        throw MathError("Degenerate", "lambda -> e_l = 1 has no solution");
    }
    if (sol.kernel.cols() != 0) throw MathError("Degenerate", "p-dual is not unique");
    return sol.particular;
}

Report verify_p_dual(const WeakHopf& w, const Vec& l)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    const WeakHopf& dw = w.dual();
    const Vec lam = p_dual(w, l);
    Report r;
    r.add("solves_pairing", inf_norm(Vec(w.delta(jones_projection(w, l)) * lam - w.unit())), tol);
    const IntegralClass c = classify(dw, lam);
    r.flag("positive_nondegenerate", c.positive && c.nondegenerate);
    r.flag("dual_left_integral", left_integral_space(dw).contains(lam, tol));
    const Vec b = a.mul(w.antipode() * sqrt_positive(a, rn_derivative(w, l, Side::R)), haar(w).g_L);
    const Vec closed = counit_maps(w).eps_R * b;
    const Vec dr = rn_derivative(dw, lam, Side::R);
    r.add("closed_form", inf_norm(Vec(positive_power(dw.alg(), dr, cx(-0.5)) - closed)), tol);
    r.add("involution", inf_norm(Vec(p_dual(dw, lam) - l)), tol);
    const IntegralIndex ind = integral_index(w, l);
    r.add("index_is_dual_normalization", inf_norm(Vec(ind.index - normalization(dw, lam, Side::R))), tol);
    r.flag("index_positive_invertible", is_positive(dw.alg(), ind.index) && is_invertible(dw.alg(), ind.index));
    return r;
}

IntegralIndex integral_index(const WeakHopf& w, const Vec& l)
{
    IntegralIndex out;
    out.lambda = dual_integral(w, l);
    out.index = normalization(w.dual(), out.lambda, Side::R);
    out.dual_index = normalization(w, l, Side::R);
    return out;
}

Report verify_integral_laws(const WeakHopf& w, const Vec& l)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    const Vec& h = haar(w).h;
    const Subspace& al = w.boundary(Side::L);
    const Subspace& ar = w.boundary(Side::R);
    const Subspace cen = center(a);
    Report r;
    for (Side s : {Side::L, Side::R}) {
        const std::string tag = s == Side::L ? "_left" : "_right";
        const Vec d = rn_derivative(w, l, s);
        const Vec nrm = normalization(w, l, s);
        r.add("rn_reconstructs" + tag, inf_norm(Vec(a.mul(h, d) - l)), tol);
        r.add("square" + tag, inf_norm(Vec(a.mul(l, l) - a.mul(nrm, l))), tol);
        const Subspace side = s == Side::L ? al : ar;
        r.flag("normalization_central" + tag, side.intersect(cen, tol).contains(nrm, tol));
    }
    r.add("normalization_antipode",
          std::min(inf_norm(Vec(normalization(w, l, Side::L) - w.antipode() * normalization(w, l, Side::R))),
                   inf_norm(Vec(normalization(w, l, Side::L) - w.antipode_inverse() * normalization(w, l, Side::R)))),
          tol);
    double act = 0;
    for (int i = 0; i < ar.dim(); ++i) {
        const Vec x = ar.basis().col(i);
        act = std::max(act, inf_norm(Vec(a.mul(x, l) - a.mul(w.antipode() * x, l))));
    }
    r.add("right_boundary_action", act, tol);
    for (int i = 0; i < al.dim(); ++i) {
        const Vec x = al.basis().col(i);
        r.add("rn_of_haar_times_left", inf_norm(Vec(rn_derivative(w, a.mul(h, x), Side::L) - x)), tol);
    }
    const Vec nl = normalization(w, l, Side::L), nr = normalization(w, l, Side::R);
    if (is_invertible(a, nl) && is_invertible(a, nr)) {
        const Vec dotted = a.mul(invert(a, nl), l);
        r.add("normalizable_agree", inf_norm(Vec(dotted - a.mul(invert(a, nr), l))), tol);
        r.add("normalized_after_rescale", inf_norm(Vec(normalization(w, dotted, Side::R) - w.unit())), tol);
    }
    const CounitMaps m = counit_maps(w);
    std::mt19937 rng(7);
    const Vec c = cen.basis() * random_vec(cen.dim(), rng);
    const Vec cl = a.mul(c, l);
    for (Side s : {Side::L, Side::R}) {
        const std::string tag = s == Side::L ? "_left" : "_right";
        const Mat& hat = s == Side::L ? m.eps_hat_L : m.eps_hat_R;
        const Vec factor = hat * (m.eps_L * c);
        r.add("rescale_normalization" + tag, inf_norm(Vec(normalization(w, cl, s) - a.mul(factor, normalization(w, l, s)))),
              tol * std::max(1.0, inf_norm(c)));
        r.add("rescale_rn" + tag, inf_norm(Vec(rn_derivative(w, cl, s) - a.mul(factor, rn_derivative(w, l, s)))),
              tol * std::max(1.0, inf_norm(c)));
    }
    return r;
}

Vec random_left_integral(const WeakHopf& w, unsigned seed)
{
    std::mt19937 rng(seed);
    const Subspace li = left_integral_space(w);
    return li.basis() * random_vec(li.dim(), rng);
}

Vec random_positive(const StarAlgebra& a, const Subspace& s, unsigned seed)
{
    std::mt19937 rng(seed);
    const Vec x = s.basis() * random_vec(s.dim(), rng);
    Vec p = a.mul(a.star(x), x);
    p /= std::max(1.0, inf_norm(p));
    return p + 0.25 * a.unit();
}

Vec random_positive_normalized_integral(const WeakHopf& w, unsigned seed)
{
    const StarAlgebra& a = w.alg();
    const Vec d = random_positive(a, w.boundary(Side::R), seed);
    const Vec l = a.mul(haar(w).h, d);
    return a.mul(invert(a, normalization(w, l, Side::R)), l);
}

}  // namespace wha
