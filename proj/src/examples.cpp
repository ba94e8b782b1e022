#include "wha/examples.hpp"

#include <algorithm>
#include <array>

namespace wha {

FiniteGroup make_group(const std::vector<std::vector<int>>& mult, std::vector<std::string> names)
{
    const int n = static_cast<int>(mult.size());
    if (n == 0) throw InputError("group table is empty");
    for (const auto& row : mult) {
        if (static_cast<int>(row.size()) != n) throw InputError("group table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw InputError("group table entry out of range");
    }
    FiniteGroup g;
    g.order = n;
    g.mult = mult;
    g.identity = -1;
    for (int e = 0; e < n && g.identity < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = mult[e][x] == x && mult[x][e] == x;
        if (ok) g.identity = e;
    }
    if (g.identity < 0) throw InputError("group table has no identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) throw InputError("group table is not associative");
    g.inv.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mult[a][b] == g.identity && mult[b][a] == g.identity) g.inv[a] = b;
    if (std::count(g.inv.begin(), g.inv.end(), -1) > 0) throw InputError("group table lacks inverses");
    if (names.empty())
        for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
    if (static_cast<int>(names.size()) != n) throw InputError("group names do not match order");
    g.names = std::move(names);
    return g;
}

FiniteGroup cyclic_group(int n)
{
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
        names.push_back(a == 0 ? "e" : "r" + std::to_string(a));
        for (int b = 0; b < n; ++b) m[a][b] = (a + b) % n;
    }
    return make_group(m, names);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b)
{
    const int n = a.order * b.order;
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int x = 0; x < n; ++x) {
        names.push_back(a.names[x / b.order] + "." + b.names[x % b.order]);
        for (int y = 0; y < n; ++y)
            m[x][y] = a.op(x / b.order, y / b.order) * b.order + b.op(x % b.order, y % b.order);
    }
    return make_group(m, names);
}

FiniteGroup klein_group()
{
    // e, a, b, ab with a^2 = b^2 = e
    std::vector<std::vector<int>> m(4, std::vector<int>(4));
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) m[x][y] = x ^ y;
    return make_group(m, {"e", "a", "b", "ab"});
}

FiniteGroup symmetric_group3()
{
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    const int n = 6;
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::array<int, 3> p{};
            for (int k = 0; k < 3; ++k) p[k] = perms[x][perms[y][k]];
            m[x][y] = static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
        }
    return make_group(m, {"e", "r", "r2", "s01", "s12", "s02"});
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h)
{
    if (std::find(h.begin(), h.end(), g.identity) == h.end()) return false;
    for (int x : h) {
        if (x < 0 || x >= g.order) return false;
        for (int y : h)
            if (std::find(h.begin(), h.end(), g.op(x, g.inv[y])) == h.end()) return false;
    }
    return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& h)
{
    if (!is_subgroup(g, h)) return false;
    for (int x = 0; x < g.order; ++x)
        for (int y : h)
            if (std::find(h.begin(), h.end(), g.conj(x, y)) == h.end()) return false;
    return true;
}

Cocycle trivial_cocycle(int group_order, int subgroup_order)
{
    return {std::vector<std::vector<cx>>(subgroup_order, std::vector<cx>(subgroup_order, 1.0)),
            std::vector<std::vector<cx>>(group_order, std::vector<cx>(subgroup_order, 1.0))};
}

namespace {

std::vector<int> positions(const FiniteGroup& g, const std::vector<int>& h)
{
    std::vector<int> pos(g.order, -1);
    for (int i = 0; i < static_cast<int>(h.size()); ++i) pos[h[i]] = i;
    return pos;
}

}  // namespace

int pair_index(const FiniteGroup& g, const std::vector<int>& h, int h_elem, int g_elem)
{
    return positions(g, h)[h_elem] * g.order + g_elem;
}

Report check_cocycle(const FiniteGroup& g, const std::vector<int>& h, const Cocycle& cc)
{
    const double tol = tolerance();
    const auto pos = positions(g, h);
    const int nh = static_cast<int>(h.size());
    auto z = [&](int a, int b) { return cc.z[pos[a]][pos[b]]; };
    auto c = [&](int x, int a) { return cc.c[x][pos[a]]; };
    double modulus = 0, normal = 0, b7 = 0, b8 = 0, b9 = 0, b10 = 0;
    const int e = g.identity;
    for (int a : h) {
        normal = std::max({normal, std::abs(z(a, g.inv[a]) - 1.0), std::abs(z(e, a) - 1.0), std::abs(z(a, e) - 1.0)});
        b7 = std::max(b7, std::abs(c(e, a) - 1.0));
        for (int b : h) {
            modulus = std::max(modulus, std::abs(std::abs(z(a, b)) - 1.0));
            b10 = std::max(b10, std::abs(c(a, b) - z(a, b) * z(g.op(a, b), g.inv[a])));
            b10 = std::max(b10, std::abs(c(a, b) - z(b, g.inv[a]) * z(a, g.op(b, g.inv[a]))));
            for (int x = 0; x < g.order; ++x)
                b9 = std::max(b9, std::abs(z(a, b) * c(x, g.op(a, b)) - c(x, a) * c(x, b) * z(g.conj(x, a), g.conj(x, b))));
        }
    }
    for (int x = 0; x < g.order; ++x) {
        b7 = std::max(b7, std::abs(c(x, e) - 1.0));
        for (int a : h) {
            modulus = std::max(modulus, std::abs(std::abs(c(x, a)) - 1.0));
            for (int y = 0; y < g.order; ++y) b8 = std::max(b8, std::abs(c(g.op(x, y), a) - c(x, g.conj(y, a)) * c(y, a)));
        }
    }
    (void)nh;
    Report r;
    r.add("unit_modulus", modulus, tol);
    r.add("normalization", normal, tol);
    r.add("trivial_on_units", b7, tol);
    r.add("action_composition", b8, tol);
    r.add("cocycle_compatibility", b9, tol);
    r.add("inner_consistency", b10, tol);
    return r;
}

WeakHopf twisted_group_weak_hopf(const FiniteGroup& g, const std::vector<int>& h, const Cocycle& cc)
{
    if (!is_normal(g, h)) throw MathError("NotNormal", "subgroup is not normal");
    const int nh = static_cast<int>(h.size());
    const int ng = g.order;
    if (static_cast<int>(cc.z.size()) != nh || static_cast<int>(cc.c.size()) != ng)
        throw InputError("cocycle tables have wrong dimensions");
    const Report rc = check_cocycle(g, h, cc);
    if (!rc.ok()) throw MathError("CocycleViolation", rc.failures().front());

    const auto pos = positions(g, h);
    const int n = nh * ng;
    auto idx = [&](int he, int ge) { return pos[he] * ng + ge; };
    auto z = [&](int a, int b) { return cc.z[pos[a]][pos[b]]; };
    auto c = [&](int x, int a) { return cc.c[x][pos[a]]; };

    std::vector<Mat> left(n, Mat::Zero(n, n));
    Mat star = Mat::Zero(n, n), anti = Mat::Zero(n, n), cop = Mat::Zero(n * n, n);
    Vec counit = Vec::Zero(n), unit = Vec::Zero(n);
    std::vector<std::string> labels(n);
    unit[idx(g.identity, g.identity)] = 1.0;
    for (int a : h)
        for (int x = 0; x < ng; ++x) {
            const int i = idx(a, x);
            labels[i] = "(" + g.names[a] + "," + g.names[x] + ")";
            for (int b : h)
                for (int y = 0; y < ng; ++y) {
                    const int bb = g.conj(x, b);
                    left[i](idx(g.op(a, bb), g.op(x, y)), idx(b, y)) = c(x, b) * z(a, bb);
                }
            const int xi = g.inv[x];
            star(idx(g.conj(xi, g.inv[a]), xi), i) = c(xi, g.inv[a]);
            anti(idx(g.conj(xi, a), g.op(xi, g.inv[a])), i) = c(xi, a);
            if (a == g.identity) counit[i] = static_cast<double>(nh);
            for (int t : h) {
                const int first = idx(g.op(a, g.inv[t]), g.op(t, x));
                const int second = idx(t, x);
                cop(first * n + second, i) += z(a, g.inv[t]) / static_cast<double>(nh);
            }
        }
    StarAlgebra alg = make_star_algebra(n, labels, left, unit, star, true);
    return WeakHopf(std::move(alg), cop, counit, anti);
}

WeakHopf group_weak_hopf(const FiniteGroup& g, const std::vector<int>& h)
{
    return twisted_group_weak_hopf(g, h, trivial_cocycle(g.order, static_cast<int>(h.size())));
}

WeakHopf group_hopf(const FiniteGroup& g) { return group_weak_hopf(g, {g.identity}); }

Mat adjoint_action(const Mat& v)
{
    // vec_row(V X V^*) = (V kron conj(V)) vec_row(X)
    return kron(v, v.conjugate());
}

Vec matrix_coords(const Mat& x) { return to_vector(x); }
Mat coords_matrix(const Vec& v, int n) { return to_matrix(v, n, n); }

Cocycle derive_cocycle(const FiniteGroup& g, const std::vector<int>& h, const std::vector<Vec>& u,
                       const std::vector<Mat>& alpha, const StarAlgebra& m)
{
    const double tol = tolerance();
    const auto pos = positions(g, h);
    const int nh = static_cast<int>(h.size());
    Cocycle cc = trivial_cocycle(g.order, nh);
    auto ratio = [&](const Vec& num, const Vec& den) {
        const cx r = den.dot(num) / den.squaredNorm();
        if (inf_norm(Vec(num - r * den)) > tol * std::max(1.0, inf_norm(num)))
            throw MathError("ImplementerMismatch", "implementers are not projectively related");
        return r;
    };
    for (int a : h)
        for (int b : h) cc.z[pos[a]][pos[b]] = ratio(m.mul(u[pos[a]], u[pos[b]]), u[pos[g.op(a, b)]]);
    for (int x = 0; x < g.order; ++x)
        for (int a : h) cc.c[x][pos[a]] = ratio(alpha[x] * u[pos[a]], u[pos[g.conj(x, a)]]);
    return cc;
}

PauliData pauli_data()
{
    PauliData p;
    p.group = klein_group();
    p.subgroup = {0, 1, 2, 3};
    Mat sx(2, 2), sz(2, 2), sy(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    sy << 0, cx(0, -1), cx(0, 1), 0;
    const std::vector<Mat> mats{Mat::Identity(2, 2), sx, sz, sy};
    for (const auto& u : mats) {
        p.implementers.push_back(matrix_coords(u));
        p.action.push_back(adjoint_action(u));
    }
    p.cocycle = derive_cocycle(p.group, p.subgroup, p.implementers, p.action, matrix_algebra(2));
    return p;
}

ModuleAlgebra partly_inner_action(const WeakHopf& w, const FiniteGroup& g, const std::vector<int>& h,
                                  const StarAlgebra& m, const std::vector<Mat>& alpha, const std::vector<Vec>& u,
                                  const Cocycle& cc)
{
    const double tol = tolerance();
    const int nh = static_cast<int>(h.size());
    if (static_cast<int>(alpha.size()) != g.order || static_cast<int>(u.size()) != nh)
        throw InputError("action or implementer table has the wrong length");
    if (w.dim() != nh * g.order) throw InputError("weak Hopf algebra does not match the group pair");
    const auto pos = positions(g, h);
    for (int i = 0; i < nh; ++i) {
        const Mat inner = m.L(u[i]) * m.R(m.star(u[i]));
        if (inf_norm(Mat(inner - alpha[h[i]])) > tol * std::max(1.0, inf_norm(alpha[h[i]])))
            throw MathError("ImplementerMismatch", "alpha of " + g.names[h[i]] + " is not Ad u");
    }
    for (int a : h)
        for (int b : h) {
            const Vec lhs = m.mul(u[pos[a]], u[pos[b]]);
            if (inf_norm(Vec(lhs - cc.z[pos[a]][pos[b]] * u[pos[g.op(a, b)]])) > tol)
                throw MathError("ImplementerMismatch", "implementers do not multiply by the cocycle");
        }
    for (int x = 0; x < g.order; ++x)
        for (int a : h)
            if (inf_norm(Vec(alpha[x] * u[pos[a]] - cc.c[x][pos[a]] * u[pos[g.conj(x, a)]])) > tol)
                throw MathError("ImplementerMismatch", "alpha does not permute the implementers");
    std::vector<Mat> acts(w.dim());
    for (int a : h)
        for (int x = 0; x < g.order; ++x) acts[pos[a] * g.order + x] = m.L(u[pos[a]]) * alpha[x];
    return make_module_algebra(w, m, std::move(acts));
}

ModuleAlgebra canonical_dual_module(const WeakHopf& w)
{
    std::vector<Mat> acts(w.dim());
    for (int i = 0; i < w.dim(); ++i) acts[i] = w.alg().right_basis(i).transpose();
    return make_module_algebra(w, w.dual().alg(), std::move(acts));
}

GroupIntegrals group_integrals(const FiniteGroup& g, const std::vector<int>& h)
{
    const auto pos = positions(g, h);
    const int nh = static_cast<int>(h.size()), n = nh * g.order;
    GroupIntegrals out;
    out.haar = Vec::Zero(n);
    out.dual_haar = Vec::Zero(n);
    for (int x = 0; x < g.order; ++x) out.haar[pos[g.identity] * g.order + x] = 1.0 / g.order;
    out.dual_haar[pos[g.identity] * g.order + g.identity] = static_cast<double>(nh);
    for (int a : h) {
        Vec l = Vec::Zero(n), lam = Vec::Zero(n);
        for (int x = 0; x < g.order; ++x) l[pos[g.conj(x, a)] * g.order + x] += 1.0 / g.order;
        // lambda(b, x) = delta(b x) for b = a only
        lam[pos[a] * g.order + g.inv[a]] = 1.0;
        out.left_basis.push_back(l);
        out.dual_basis.push_back(lam);
    }
    return out;
}

namespace {

PartlyInnerData z2_data(const Mat& implementer, bool inner)
{
    PartlyInnerData d;
    d.group = cyclic_group(2);
    d.subgroup = {0, 1};
    d.implementers = {matrix_coords(Mat::Identity(2, 2)), matrix_coords(implementer)};
    const Mat id = Mat::Identity(4, 4);
    d.alpha = {id, inner ? adjoint_action(implementer) : id};
    return d;
}

Mat sign_matrix()
{
    Mat sz(2, 2);
    sz << 1, 0, 0, -1;
    return sz;
}

ModuleAlgebra seed_action(const PartlyInnerData& d)
{
    return partly_inner_action(group_weak_hopf(d.group, d.subgroup), d.group, d.subgroup, matrix_algebra(2), d.alpha,
                               d.implementers, trivial_cocycle(d.group.order, static_cast<int>(d.subgroup.size())));
}

}  // namespace

PartlyInnerData diagonal_sign_data() { return z2_data(sign_matrix(), true); }
PartlyInnerData collapsed_data() { return z2_data(Mat::Identity(2, 2), false); }
ModuleAlgebra diagonal_sign_action() { return seed_action(diagonal_sign_data()); }
ModuleAlgebra collapsed_action() { return seed_action(collapsed_data()); }

StarAlgebra skew_group_algebra(const StarAlgebra& m, const FiniteGroup& g, const std::vector<Mat>& alpha)
{
    const int d = m.dim(), ng = g.order, n = d * ng;
    std::vector<Mat> left(n, Mat::Zero(n, n));
    Mat star = Mat::Zero(n, n);
    Vec unit = Vec::Zero(n);
    std::vector<std::string> labels;
    for (int p = 0; p < d; ++p)
        for (int x = 0; x < ng; ++x) {
            labels.push_back(m.labels()[p] + "x" + g.names[x]);
            for (int q = 0; q < d; ++q) {
                const Vec prod = m.mul(m.basis(p), alpha[x].col(q));
                for (int y = 0; y < ng; ++y)
                    for (int r = 0; r < d; ++r) left[p * ng + x](r * ng + g.op(x, y), q * ng + y) += prod[r];
            }
            // (m x g)* = alpha_{g^-1}(m*) x g^-1
            const Vec s = alpha[g.inv[x]] * m.star(m.basis(p));
            for (int r = 0; r < d; ++r) star(r * ng + g.inv[x], p * ng + x) = s[r];
        }
    for (int p = 0; p < d; ++p) unit[p * ng + g.identity] = m.unit()[p];
    return make_star_algebra(n, labels, left, unit, star, true);
}

Report verify_skew_identification(const CrossedProduct& x, const PartlyInnerData& data)
{
    const double tol = tolerance();
    const ModuleAlgebra& ma = x.base();
    const StarAlgebra& m = ma.target();
    const FiniteGroup& g = data.group;
    const StarAlgebra skew = skew_group_algebra(m, g, data.alpha);
    const int d = m.dim(), n = ma.hopf().dim(), ng = g.order;
    Mat raw = Mat::Zero(skew.dim(), x.raw_dim());
    for (int p = 0; p < d; ++p)
        for (int hp = 0; hp < static_cast<int>(data.subgroup.size()); ++hp)
            for (int y = 0; y < ng; ++y) {
                const Vec mu = m.mul(m.basis(p), data.implementers[hp]);
                for (int r = 0; r < d; ++r) raw(r * ng + y, p * n + hp * ng + y) = mu[r];
            }
    Report rep;
    rep.add("relations_vanish", x.relations().dim() ? inf_norm(Mat(raw * x.relations().basis())) : 0.0, tol);
    const Mat phi = raw * x.quotient_basis();
    const StarAlgebra& xa = x.alg();
    double mult = 0, star = 0;
    for (int i = 0; i < x.dim(); ++i) {
        star = std::max(star, inf_norm(Vec(phi * xa.star(xa.basis(i)) - skew.star(phi.col(i)))));
        for (int j = 0; j < x.dim(); ++j)
            mult = std::max(mult, inf_norm(Vec(phi * xa.mul(xa.basis(i), xa.basis(j)) - skew.mul(phi.col(i), phi.col(j)))));
    }
    rep.add("multiplicative", mult, tol);
    rep.add("star_preserving", star, tol);
    rep.add("unital", inf_norm(Vec(phi * xa.unit() - skew.unit())), tol);
    rep.flag("bijective", x.dim() == skew.dim() && numerical_rank(phi, tol) == skew.dim());
    return rep;
}

}  // namespace wha
