#pragma once

#include "wha/star_algebra.hpp"

#include <vector>

namespace wha {

// Dense multi-leg tensor, row-major (last leg varies fastest).
struct Tensor {
    std::vector<int> dims;
    Vec data;

    Tensor() = default;
    Tensor(std::vector<int> d, Vec v) : dims(std::move(d)), data(std::move(v)) {}
    static Tensor zeros(std::vector<int> d);
    static Tensor from_vector(const Vec& v) { return Tensor({static_cast<int>(v.size())}, v); }
    static Tensor from_matrix(const Mat& m);

    int legs() const { return static_cast<int>(dims.size()); }
    Mat as_matrix() const;  // two-leg tensors only
};

Tensor outer(const Tensor& x, const Tensor& y);
Tensor apply_leg(const Tensor& t, int leg, const Mat& f);
Tensor split_leg(const Tensor& t, int leg, int first, int second);
Tensor merge_legs(const Tensor& t, int leg, const StarAlgebra& a);  // multiplies legs leg and leg+1
Tensor permute_legs(const Tensor& t, const std::vector<int>& order);   // new leg k is old leg order[k]
Tensor contract_leg(const Tensor& t, int leg, const Vec& covector);
Tensor legwise_product(const Tensor& x, const Tensor& y, const std::vector<const StarAlgebra*>& algs);
Tensor legwise_star(const Tensor& t, const std::vector<const StarAlgebra*>& algs);

double inf_norm(const Tensor& t);
Tensor operator-(const Tensor& a, const Tensor& b);

}  // namespace wha
