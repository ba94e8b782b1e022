#include "wha/tensor.hpp"

#include <numeric>

namespace wha {

namespace {

using RowMat = Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

long product(const std::vector<int>& d, int from, int to)
{
    long p = 1;
    for (int i = from; i < to; ++i) p *= d[i];
    return p;
}

}  // namespace

Tensor Tensor::zeros(std::vector<int> d)
{
    long n = product(d, 0, static_cast<int>(d.size()));
    return Tensor(std::move(d), Vec::Zero(n));
}

Tensor Tensor::from_matrix(const Mat& m)
{
    return Tensor({static_cast<int>(m.rows()), static_cast<int>(m.cols())}, to_vector(m));
}

Mat Tensor::as_matrix() const { return to_matrix(data, dims[0], dims[1]); }

Tensor outer(const Tensor& x, const Tensor& y)
{
    std::vector<int> d = x.dims;
    d.insert(d.end(), y.dims.begin(), y.dims.end());
    Vec v(x.data.size() * y.data.size());
    for (Eigen::Index i = 0; i < x.data.size(); ++i) v.segment(i * y.data.size(), y.data.size()) = x.data[i] * y.data;
    return Tensor(d, v);
}

Tensor apply_leg(const Tensor& t, int leg, const Mat& f)
{
    const long pre = product(t.dims, 0, leg);
    const long post = product(t.dims, leg + 1, t.legs());
    const int n = t.dims[leg];
    const int m = static_cast<int>(f.rows());
    std::vector<int> d = t.dims;
    d[leg] = m;
    Vec out(pre * m * post);
    for (long p = 0; p < pre; ++p) {
        Eigen::Map<const RowMat> in(t.data.data() + p * n * post, n, post);
        Eigen::Map<RowMat> res(out.data() + p * m * post, m, post);
        res.noalias() = f * in;
    }
    return Tensor(d, out);
}

Tensor split_leg(const Tensor& t, int leg, int first, int second)
{
    std::vector<int> d;
    for (int i = 0; i < t.legs(); ++i) {
        if (i == leg) {
            d.push_back(first);
            d.push_back(second);
        } else {
            d.push_back(t.dims[i]);
        }
    }
    return Tensor(d, t.data);
}

Tensor merge_legs(const Tensor& t, int leg, const StarAlgebra& a)
{
    std::vector<int> d;
    for (int i = 0; i < t.legs(); ++i) {
        if (i == leg) {
            d.push_back(t.dims[i] * t.dims[i + 1]);
            ++i;
        } else {
            d.push_back(t.dims[i]);
        }
    }
    return apply_leg(Tensor(d, t.data), leg, a.flat());
}

Tensor permute_legs(const Tensor& t, const std::vector<int>& order)
{
    const int k = t.legs();
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) d[i] = t.dims[order[i]];
    std::vector<long> old_stride(k);
    long s = 1;
    for (int i = k - 1; i >= 0; --i) {
        old_stride[i] = s;
        s *= t.dims[i];
    }
    Vec out(t.data.size());
    std::vector<int> idx(k, 0);
    for (long flat = 0; flat < out.size(); ++flat) {
        long src = 0;
        for (int i = 0; i < k; ++i) src += idx[i] * old_stride[order[i]];
        out[flat] = t.data[src];
        for (int i = k - 1; i >= 0; --i) {
            if (++idx[i] < d[i]) break;
            idx[i] = 0;
        }
    }
    return Tensor(d, out);
}

Tensor contract_leg(const Tensor& t, int leg, const Vec& covector)
{
    Tensor r = apply_leg(t, leg, covector.transpose());
    std::vector<int> d;
    for (int i = 0; i < r.legs(); ++i)
        if (i != leg) d.push_back(r.dims[i]);
    if (d.empty()) d.push_back(1);
    return Tensor(d, r.data);
}

Tensor legwise_product(const Tensor& x, const Tensor& y, const std::vector<const StarAlgebra*>& algs)
{
    const int k = x.legs();
    Tensor z = Tensor::zeros(y.dims);
    std::vector<int> idx(k, 0);
    for (long flat = 0; flat < x.data.size(); ++flat) {
        if (x.data[flat] != cx(0.0)) {
            Tensor w = y;
            for (int l = 0; l < k; ++l) w = apply_leg(w, l, algs[l]->left_basis(idx[l]));
            z.data += x.data[flat] * w.data;
        }
        for (int i = k - 1; i >= 0; --i) {
            if (++idx[i] < x.dims[i]) break;
            idx[i] = 0;
        }
    }
    return z;
}

Tensor legwise_star(const Tensor& t, const std::vector<const StarAlgebra*>& algs)
{
    Tensor r(t.dims, t.data.conjugate());
    for (int l = 0; l < t.legs(); ++l) r = apply_leg(r, l, algs[l]->star_matrix());
    return r;
}

double inf_norm(const Tensor& t) { return inf_norm(t.data); }

Tensor operator-(const Tensor& a, const Tensor& b) { return Tensor(a.dims, a.data - b.data); }

}  // namespace wha
