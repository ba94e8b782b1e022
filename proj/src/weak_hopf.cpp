#include "wha/weak_hopf.hpp"

#include <Eigen/Eigenvalues>

namespace wha {

WeakHopf::WeakHopf(StarAlgebra alg, Mat coproduct, Vec counit, Mat antipode)
    : alg_(std::move(alg)),
      coproduct_(std::move(coproduct)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)),
      cache_(std::make_shared<Cache>())
{
    const int n = alg_.dim();
    if (coproduct_.rows() != n * n || coproduct_.cols() != n || counit_.size() != n || antipode_.rows() != n ||
        antipode_.cols() != n)
        throw InputError("weak Hopf tables have inconsistent dimensions");
    Eigen::FullPivLU<Mat> lu(antipode_);
    antipode_inv_ = lu.isInvertible() ? Mat(lu.inverse()) : Mat(Mat::Zero(n, n));
    counit_form_ = to_matrix(alg_.flat().transpose() * counit_, n, n);
}

Mat WeakHopf::delta(const Vec& x) const { return to_matrix(coproduct_ * x, dim(), dim()); }

Tensor WeakHopf::delta_tensor(const Vec& x) const { return Tensor({dim(), dim()}, coproduct_ * x); }

Tensor WeakHopf::delta2(const Vec& x) const
{
    return split_leg(apply_leg(delta_tensor(x), 0, coproduct_), 0, dim(), dim());
}

const WeakHopf& WeakHopf::dual() const
{
    std::call_once(cache_->dual_once, [this] { cache_->dual = std::make_unique<WeakHopf>(make_dual(*this)); });
    return *cache_->dual;
}

const Subspace& WeakHopf::boundary(Side side) const
{
    if (side == Side::L) {
        std::call_once(cache_->left_once, [this] { cache_->left = boundary_subalgebra(*this, Side::L); });
        return cache_->left;
    }
    std::call_once(cache_->right_once, [this] { cache_->right = boundary_subalgebra(*this, Side::R); });
    return cache_->right;
}

std::shared_ptr<const void> WeakHopf::cached_haar(const std::function<std::shared_ptr<const void>()>& make) const
{
    std::call_once(cache_->haar_once, [&] { cache_->haar = make(); });
    return cache_->haar;
}

WeakHopf make_dual(const WeakHopf& w)
{
    const int n = w.dim();
    const StarAlgebra& a = w.alg();
    std::vector<Mat> left(n, Mat::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) left[i](k, j) = w.coproduct()(i * n + j, k);
    Mat star_sub = a.star_matrix() * w.antipode().conjugate();
    std::vector<std::string> labels;
    for (const auto& l : a.labels()) labels.push_back("hat(" + l + ")");
    StarAlgebra dual_alg = make_star_algebra(n, labels, left, w.counit(), star_sub.adjoint(), true);
    return WeakHopf(std::move(dual_alg), a.flat().transpose(), a.unit(), w.antipode().transpose());
}

Mat target_map(const WeakHopf& w)
{
    const int n = w.dim();
    Mat out(n, n);
    for (int c = 0; c < n; ++c)
        out.col(c) = w.alg().contract(w.delta(w.alg().basis(c)) * w.antipode().transpose());
    return out;
}

Mat source_map(const WeakHopf& w)
{
    const int n = w.dim();
    Mat out(n, n);
    for (int c = 0; c < n; ++c) out.col(c) = w.alg().contract(w.antipode() * w.delta(w.alg().basis(c)));
    return out;
}

Mat target_map_inverse(const WeakHopf& w)
{
    const int n = w.dim();
    Mat out(n, n);
    for (int c = 0; c < n; ++c)
        out.col(c) = w.alg().contract(w.delta(w.alg().basis(c)).transpose() * w.antipode_inverse().transpose());
    return out;
}

Mat source_map_inverse(const WeakHopf& w)
{
    const int n = w.dim();
    Mat out(n, n);
    for (int c = 0; c < n; ++c)
        out.col(c) = w.alg().contract(w.antipode_inverse() * w.delta(w.alg().basis(c)).transpose());
    return out;
}

Vec arrow_left(const WeakHopf& w, const Vec& a, const Vec& phi) { return w.alg().R(a).transpose() * phi; }
Vec arrow_right(const WeakHopf& w, const Vec& phi, const Vec& a) { return w.alg().L(a).transpose() * phi; }
Vec hat_arrow_left(const WeakHopf& w, const Vec& phi, const Vec& a) { return w.delta(a) * phi; }
Vec hat_arrow_right(const WeakHopf& w, const Vec& a, const Vec& phi) { return w.delta(a).transpose() * phi; }

AxiomReport verify_weak_hopf(const WeakHopf& w)
{
    const double tol = tolerance();
    const int n = w.dim();
    const StarAlgebra& a = w.alg();
    const std::vector<const StarAlgebra*> two{&a, &a}, three{&a, &a, &a};
    const Mat& s = w.antipode();
    const Mat& sinv = w.antipode_inverse();
    const Mat& e = w.counit_form();
    const Vec one = a.unit();
    const Tensor d1 = w.delta_tensor(one);
    const Mat d1m = d1.as_matrix();
    const Tensor unit_t = Tensor::from_vector(one);
    const Tensor d1_then_1 = outer(d1, unit_t);
    const Tensor one_then_d1 = outer(unit_t, d1);
    const Tensor d1_op = permute_legs(d1, {1, 0});

    double mult = 0, star = 0, coassoc = 0, counit = 0, counit_w = 0, counit_wr = 0, src = 0, tgt = 0, sandwich = 0;
    double sxs = 0, antimult = 0, anticomult = 0, star_inv = 0, leg5 = 0, leg6 = 0, leg7 = 0, leg8 = 0;

    std::vector<Tensor> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back(w.delta_tensor(a.basis(i)));

    for (int i = 0; i < n; ++i) {
        const Vec x = a.basis(i);
        for (int j = 0; j < n; ++j) {
            Tensor lhs = w.delta_tensor(a.flat().col(i * n + j));
            mult = std::max(mult, inf_norm(lhs - legwise_product(deltas[i], deltas[j], two)));
            antimult = std::max(antimult, inf_norm(Vec(s * a.flat().col(i * n + j) -
                                                       a.mul(s.col(j), s.col(i)))));
        }
        star = std::max(star, inf_norm(w.delta_tensor(a.star(x)) - legwise_star(deltas[i], two)));

        const Tensor d2 = w.delta2(x);
        const Tensor d2r = split_leg(apply_leg(deltas[i], 1, w.coproduct()), 1, n, n);
        coassoc = std::max(coassoc, inf_norm(d2 - d2r));

        counit = std::max(counit, inf_norm(Vec(contract_leg(deltas[i], 0, w.counit()).data - x)));
        counit = std::max(counit, inf_norm(Vec(contract_leg(deltas[i], 1, w.counit()).data - x)));

        const Mat dx = deltas[i].as_matrix();
        const Mat rb = a.right_basis(i);
        counit_w = std::max(counit_w, inf_norm(Mat(rb.transpose() * e - e * dx * e)));
        counit_wr = std::max(counit_wr, inf_norm(Mat(rb.transpose() * e - e * dx.transpose() * e)));

        Vec src_l = a.contract(s * dx);
        Vec src_r = d1m * e.row(i).transpose();
        src = std::max(src, inf_norm(Vec(src_l - src_r)));
        Vec tgt_l = a.contract(dx * s.transpose());
        Vec tgt_r = d1m.transpose() * e.col(i);
        tgt = std::max(tgt, inf_norm(Vec(tgt_l - tgt_r)));

        Tensor t = apply_leg(apply_leg(d2, 0, s), 2, s);
        t = merge_legs(merge_legs(t, 0, a), 0, a);
        sandwich = std::max(sandwich, inf_norm(Vec(t.data - s.col(i))));

        Tensor u = merge_legs(merge_legs(apply_leg(d2, 1, s), 0, a), 0, a);
        sxs = std::max(sxs, inf_norm(Vec(u.data - x)));

        Tensor ds = w.delta_tensor(s.col(i));
        Tensor sop = apply_leg(apply_leg(permute_legs(deltas[i], {1, 0}), 0, s), 1, s);
        anticomult = std::max(anticomult, inf_norm(ds - sop));

        star_inv = std::max(star_inv, inf_norm(Vec(a.star(s * a.star(x)) - sinv.col(i))));

        const Tensor x_t = Tensor::from_vector(x);
        Tensor l5 = merge_legs(apply_leg(d2, 0, s), 0, a);
        leg5 = std::max(leg5, inf_norm(l5 - legwise_product(outer(unit_t, x_t), d1, two)));
        Tensor l6 = merge_legs(apply_leg(d2, 2, s), 1, a);
        leg6 = std::max(leg6, inf_norm(l6 - legwise_product(d1, outer(x_t, unit_t), two)));
        Tensor rev = permute_legs(d2, {2, 1, 0});
        Tensor l7 = merge_legs(apply_leg(rev, 0, sinv), 0, a);
        leg7 = std::max(leg7, inf_norm(l7 - legwise_product(outer(unit_t, x_t), d1_op, two)));
        Tensor l8 = merge_legs(apply_leg(rev, 2, sinv), 1, a);
        leg8 = std::max(leg8, inf_norm(l8 - legwise_product(d1_op, outer(x_t, unit_t), two)));
    }

    const Tensor d2_one = w.delta2(one);
    const Tensor p12 = legwise_product(d1_then_1, one_then_d1, three);
    const Tensor p21 = legwise_product(one_then_d1, d1_then_1, three);
    double unit_prod = inf_norm(p12 - d2_one);
    double unit_prod_rev = inf_norm(p21 - d2_one);
    double unit_commute = inf_norm(p12 - p21);

    AxiomReport r;
    auto& c = r.checks;
    c.add("coproduct_multiplicative", mult, tol);
    c.add("coproduct_star", star, tol);
    c.add("coassociativity", coassoc, tol);
    c.add("unit_coproduct", unit_prod, tol);
    c.add("unit_coproduct_reversed", unit_prod_rev, tol);
    c.add("counit", counit, tol);
    c.add("counit_weak_multiplicative", counit_w, tol);
    c.add("counit_weak_multiplicative_reversed", counit_wr, tol);
    c.add("antipode_source", src, tol);
    c.add("antipode_target", tgt, tol);
    c.add("antipode_sandwich", sandwich, tol);
    c.add("unit_legs_commute", unit_commute, tol);
    c.add("leg_sandwich", sxs, tol);
    c.add("antipode_antimultiplicative", antimult, tol);
    c.add("antipode_anticomultiplicative", anticomult, tol);
    c.add("antipode_star_inverse", star_inv, tol);
    c.add("source_leg", leg5, tol);
    c.add("target_leg", leg6, tol);
    c.add("inverse_source_leg", leg7, tol);
    c.add("inverse_target_leg", leg8, tol);
    r.strong_ok = c.ok();
    r.relaxed_ok = true;
    for (const char* name : {"coproduct_multiplicative", "coproduct_star", "coassociativity", "counit",
                             "antipode_source", "antipode_target", "antipode_antimultiplicative",
                             "antipode_anticomultiplicative", "unit_legs_commute"})
        r.relaxed_ok = r.relaxed_ok && c.find(name)->pass;
    return r;
}

CounitMaps counit_maps(const WeakHopf& w)
{
    CounitMaps m;
    const Mat& e = w.counit_form();
    const Mat d1 = w.delta(w.unit());
    m.eps_L = e.transpose();
    m.eps_R = e;
    m.eps_hat_L = d1.transpose();
    m.eps_hat_R = d1;
    return m;
}

Report verify_counit_maps(const WeakHopf& w)
{
    const double tol = tolerance();
    const CounitMaps m = counit_maps(w);
    Report r;
    r.add("source_counit", inf_norm(Mat(source_map(w) - m.eps_hat_R * m.eps_L)), tol);
    r.add("target_counit", inf_norm(Mat(target_map(w) - m.eps_hat_L * m.eps_R)), tol);
    r.add("inverse_source_counit", inf_norm(Mat(source_map_inverse(w) - m.eps_hat_L * m.eps_L)), tol);
    r.add("inverse_target_counit", inf_norm(Mat(target_map_inverse(w) - m.eps_hat_R * m.eps_R)), tol);
    const Mat* eps[2] = {&m.eps_L, &m.eps_R};
    const Mat* hat[2] = {&m.eps_hat_L, &m.eps_hat_R};
    double s1 = 0, s2 = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            s1 = std::max(s1, inf_norm(Mat(*eps[i] * *hat[j] * *eps[i] - *eps[i])));
            s2 = std::max(s2, inf_norm(Mat(*hat[i] * *eps[j] * *hat[i] - *hat[i])));
        }
    r.add("counit_sandwich", s1, tol);
    r.add("dual_counit_sandwich", s2, tol);
    return r;
}

Subspace boundary_subalgebra(const WeakHopf& w, Side side)
{
    const Mat d1 = w.delta(w.unit());
    return Subspace::span(side == Side::R ? d1 : Mat(d1.transpose()), tolerance());
}

Report verify_boundary(const WeakHopf& w)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    const std::vector<const StarAlgebra*> two{&a, &a};
    const Subspace& al = w.boundary(Side::L);
    const Subspace& ar = w.boundary(Side::R);
    Report r;
    r.flag("left_subalgebra", is_unital_star_subalgebra(a, al, tol));
    r.flag("right_subalgebra", is_unital_star_subalgebra(a, ar, tol));
    const Tensor d1 = w.delta_tensor(w.unit());
    const Tensor one = Tensor::from_vector(w.unit());
    double lc = 0, rc = 0;
    for (int i = 0; i < al.dim(); ++i) {
        const Tensor b = Tensor::from_vector(al.basis().col(i));
        const Tensor db = w.delta_tensor(al.basis().col(i));
        lc = std::max(lc, inf_norm(db - legwise_product(outer(b, one), d1, two)));
        lc = std::max(lc, inf_norm(db - legwise_product(d1, outer(b, one), two)));
    }
    for (int i = 0; i < ar.dim(); ++i) {
        const Tensor b = Tensor::from_vector(ar.basis().col(i));
        const Tensor db = w.delta_tensor(ar.basis().col(i));
        rc = std::max(rc, inf_norm(db - legwise_product(outer(one, b), d1, two)));
        rc = std::max(rc, inf_norm(db - legwise_product(d1, outer(one, b), two)));
    }
    r.add("left_characterization", lc, tol);
    r.add("right_characterization", rc, tol);
    double comm = 0;
    for (int i = 0; i < al.dim(); ++i)
        for (int j = 0; j < ar.dim(); ++j) {
            Vec x = al.basis().col(i), y = ar.basis().col(j);
            comm = std::max(comm, inf_norm(Vec(a.mul(x, y) - a.mul(y, x))));
        }
    r.add("left_right_commute", comm, tol);
    const Mat d1m = d1.as_matrix();
    const Mat pr = ar.basis() * ar.basis().adjoint();
    const Mat pl = al.basis() * al.basis().adjoint();
    r.add("unit_coproduct_in_right_left", inf_norm(Mat(pr * d1m * pl.transpose() - d1m)), tol);
    const WeakHopf& d = w.dual();
    r.flag("boundary_dimensions", al.dim() == ar.dim() && al.dim() == d.boundary(Side::L).dim() &&
                                      al.dim() == d.boundary(Side::R).dim());
    r.add("left_is_antipode_of_right",
          Subspace::span(w.antipode() * ar.basis(), tol).equals(al, tol) ? 0.0 : 1.0, tol);
    return r;
}

MuIso mu_iso(const WeakHopf& w, Side side)
{
    const double tol = tolerance();
    const CounitMaps m = counit_maps(w);
    const WeakHopf& d = w.dual();
    const Subspace& src = w.boundary(side == Side::R ? Side::L : Side::R);
    const Subspace& dst = d.boundary(side);
    MuIso out;
    const Mat& eps = side == Side::R ? m.eps_R : m.eps_L;
    const Mat& other = side == Side::R ? m.eps_L : m.eps_R;
    out.forward = eps * src.basis() * src.basis().adjoint();
    out.inverse = (side == Side::R ? m.eps_hat_L : m.eps_hat_R) * dst.basis() * dst.basis().adjoint();
    const Mat img = eps * src.basis();
    Report& r = out.checks;
    r.flag("image_in_dual_boundary", dst.contains(Subspace::span(img, tol), tol));
    r.flag("bijective", numerical_rank(img, tol) == src.dim() && src.dim() == dst.dim());
    r.add("left_inverse", inf_norm(Mat(out.inverse * img - src.basis())), tol);
    r.add("right_inverse", inf_norm(Mat(eps * out.inverse * dst.basis() - dst.basis())), tol);
    double hom = 0, st = 0;
    const StarAlgebra& da = d.alg();
    for (int i = 0; i < src.dim(); ++i) {
        const Vec x = src.basis().col(i);
        st = std::max(st, inf_norm(Vec(eps * w.alg().star(x) - da.star(eps * x))));
        for (int j = 0; j < src.dim(); ++j) {
            const Vec y = src.basis().col(j);
            hom = std::max(hom, inf_norm(Vec(eps * w.alg().mul(x, y) - da.mul(eps * x, eps * y))));
        }
    }
    r.add("multiplicative", hom, tol);
    r.add("star_preserving", st, tol);
    r.add("antipode_form", inf_norm(Mat(img - d.antipode() * other * src.basis())), tol);
    return out;
}

bool is_pure(const WeakHopf& w)
{
    const double tol = tolerance();
    const Subspace c = center(w.alg());
    const bool pure = w.boundary(Side::L).intersect(c, tol).dim() == 1;
    const WeakHopf& d = w.dual();
    const bool dual_side = d.boundary(Side::L).intersect(d.boundary(Side::R), tol).dim() == 1;
    if (pure != dual_side) throw MathError("PurityMismatch", "purity criteria disagree");
    return pure;
}

Subspace hypercenter(const WeakHopf& w)
{
    const double tol = tolerance();
    return w.boundary(Side::L).intersect(w.boundary(Side::R), tol).intersect(center(w.alg()), tol);
}

Report verify_hypercenter(const WeakHopf& w)
{
    const double tol = tolerance();
    const Subspace z = hypercenter(w);
    const Subspace zd = hypercenter(w.dual());
    const CounitMaps m = counit_maps(w);
    Report r;
    r.flag("dimension_match", z.dim() == zd.dim());
    for (const Mat* eps : {&m.eps_L, &m.eps_R}) {
        const Mat img = *eps * z.basis();
        r.flag("counit_image", zd.contains(Subspace::span(img, tol), tol) && numerical_rank(img, tol) == z.dim());
    }
    return r;
}

Vec star_conjugate(const WeakHopf& w, const Vec& x) { return w.alg().star(w.antipode() * x); }

Report verify_structure_identities(const WeakHopf& w)
{
    const double tol = tolerance();
    const StarAlgebra& a = w.alg();
    const int n = w.dim();
    const Mat& e = w.counit_form();
    const Mat t = target_map(w), s = source_map(w), ti = target_map_inverse(w), si = source_map_inverse(w);
    double r9 = 0, r10 = 0, r11 = 0, r12 = 0;
    for (int i = 0; i < n; ++i) {
        const Vec x = a.basis(i);
        const Mat dx = w.delta(x);
        for (int j = 0; j < n; ++j) {
            r9 = std::max(r9, inf_norm(Vec(a.mul(x, t.col(j)) - dx.transpose() * e.col(j))));
            r10 = std::max(r10, inf_norm(Vec(a.mul(s.col(j), x) - dx * e.row(j).transpose())));
            r11 = std::max(r11, inf_norm(Vec(a.mul(x, ti.col(j)) - dx * e.col(j))));
            r12 = std::max(r12, inf_norm(Vec(a.mul(si.col(j), x) - dx.transpose() * e.row(j).transpose())));
        }
    }
    Report r;
    r.add("target_exchange", r9, tol);
    r.add("source_exchange", r10, tol);
    r.add("inverse_target_exchange", r11, tol);
    r.add("inverse_source_exchange", r12, tol);
    Mat gram(n, n);
    const Mat prods = a.product_table(a.star_matrix(), Mat::Identity(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram(i, j) = prods.col(i * n + j).dot(w.counit().conjugate());
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
    r.add("counit_hermitian", inf_norm(Mat(gram - gram.adjoint())), tol);
    r.flag("counit_positive", es.eigenvalues().minCoeff() > -tol * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()));
    return r;
}

}  // namespace wha
