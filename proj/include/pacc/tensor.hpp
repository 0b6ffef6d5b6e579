#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "pacc/errors.hpp"

namespace pacc {

/// Dense row-major tensor of 64-bit reals. Rank is 0 (scalar), 1 or 2 in
/// practice; the shape vector is kept generic so reductions stay uniform.
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0)
        : shape_(std::move(shape)), data_(count(shape_), fill) {}

    static Tensor scalar(double v) {
        Tensor t(std::vector<std::size_t>{});
        t.data_ = {v};
        return t;
    }

    static Tensor matrix(std::size_t rows, std::size_t cols, double fill = 0.0) {
        return Tensor(std::vector<std::size_t>{rows, cols}, fill);
    }

    static Tensor vec(std::size_t n, double fill = 0.0) {
        return Tensor(std::vector<std::size_t>{n}, fill);
    }

    static std::size_t count(const std::vector<std::size_t>& shape) {
        std::size_t n = 1;
        for (auto d : shape) n *= d;
        return n;
    }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }
    bool is_scalar() const { return shape_.empty(); }

    std::size_t rows() const { return shape_.empty() ? 1 : shape_[0]; }
    std::size_t cols() const {
        if (shape_.empty()) return 1;
        return shape_.size() == 1 ? 1 : shape_[1];
    }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double item() const {
        require(size() == 1, Errc::shape_mismatch, "item() on non-scalar tensor");
        return data_[0];
    }

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

// Raw matrix products used by both forward evaluation and gradient code.
// Loop order keeps the innermost access contiguous.

/// C += A(m x k) * B(k x n)
inline void mm_nn_acc(const Tensor& a, const Tensor& b, Tensor& c) {
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    require(b.rows() == k && c.rows() == m && c.cols() == n, Errc::shape_mismatch, "mm_nn");
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const double av = pa[i * k + p];
            if (av == 0.0) continue;
            const double* brow = pb + p * n;
            double* crow = pc + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

/// C += A(m x k) * B(n x k)^T
inline void mm_nt_acc(const Tensor& a, const Tensor& b, Tensor& c) {
    const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
    require(b.cols() == k && c.rows() == m && c.cols() == n, Errc::shape_mismatch, "mm_nt");
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = pa + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = pb + j * k;
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) acc += arow[p] * brow[p];
            pc[i * n + j] += acc;
        }
    }
}

/// C += A(k x m)^T * B(k x n)
inline void mm_tn_acc(const Tensor& a, const Tensor& b, Tensor& c) {
    const std::size_t k = a.rows(), m = a.cols(), n = b.cols();
    require(b.rows() == k && c.rows() == m && c.cols() == n, Errc::shape_mismatch, "mm_tn");
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    for (std::size_t p = 0; p < k; ++p) {
        const double* arow = pa + p * m;
        const double* brow = pb + p * n;
        for (std::size_t i = 0; i < m; ++i) {
            const double av = arow[i];
            if (av == 0.0) continue;
            double* crow = pc + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

} // namespace pacc
