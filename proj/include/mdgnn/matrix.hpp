#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdgnn {

/// Dense row-major matrix of 64-bit floats. Column vectors are n x 1.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw std::invalid_argument("Matrix: data length " + std::to_string(data_.size()) +
                                        " does not match shape " + shape_str());
        }
    }

    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw std::invalid_argument("Matrix: ragged initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix column(std::span<const double> v) {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.data_[i] = v[i];
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    /// Returns a copy with the same data laid out under a new shape.
    Matrix reshaped(std::size_t rows, std::size_t cols) const {
        if (rows * cols != data_.size()) {
            throw std::invalid_argument("reshape: cannot view " + shape_str() + " as " +
                                        std::to_string(rows) + "x" + std::to_string(cols));
        }
        Matrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.data_ = data_;
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class ElemOp { add, sub, mul };
enum class Activation { sigmoid, tanh, relu };

namespace detail {

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + a.shape_str() +
                                    " vs " + b.shape_str());
    }
}

} // namespace detail

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: incompatible shapes " + a.shape_str() + " x " +
                                    b.shape_str());
    }
    Matrix c(a.rows(), b.cols());
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    const double* ap = a.data().data();
    const double* bp = b.data().data();
    double* cp = c.data().data();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = ap[i * k + l];
            if (ail == 0.0) continue;
            const double* brow = bp + l * n;
            double* crow = cp + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
        }
    }
    return c;
}

/// a * b^T without materializing the transpose.
inline Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("matmul_nt: incompatible shapes " + a.shape_str() + " x " +
                                    b.shape_str() + "^T");
    }
    Matrix c(a.rows(), b.rows());
    const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a.data().data() + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = b.data().data() + j * k;
            double acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) acc += arow[l] * brow[l];
            c(i, j) = acc;
        }
    }
    return c;
}

/// a^T * b without materializing the transpose.
inline Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("matmul_tn: incompatible shapes " + a.shape_str() + "^T x " +
                                    b.shape_str());
    }
    Matrix c(a.cols(), b.cols());
    const std::size_t m = a.cols(), k = a.rows(), n = b.cols();
    double* cp = c.data().data();
    for (std::size_t l = 0; l < k; ++l) {
        const double* arow = a.data().data() + l * m;
        const double* brow = b.data().data() + l * n;
        for (std::size_t i = 0; i < m; ++i) {
            const double ali = arow[i];
            if (ali == 0.0) continue;
            double* crow = cp + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += ali * brow[j];
        }
    }
    return c;
}

inline Matrix elementwise(const Matrix& a, const Matrix& b, ElemOp op) {
    detail::require_same_shape(a, b, "elementwise");
    Matrix c(a.rows(), a.cols());
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        switch (op) {
        case ElemOp::add: c.data()[i] = a.data()[i] + b.data()[i]; break;
        case ElemOp::sub: c.data()[i] = a.data()[i] - b.data()[i]; break;
        case ElemOp::mul: c.data()[i] = a.data()[i] * b.data()[i]; break;
        }
    }
    return c;
}

inline Matrix add(const Matrix& a, const Matrix& b) { return elementwise(a, b, ElemOp::add); }
inline Matrix sub(const Matrix& a, const Matrix& b) { return elementwise(a, b, ElemOp::sub); }
inline Matrix hadamard(const Matrix& a, const Matrix& b) { return elementwise(a, b, ElemOp::mul); }

inline void add_in_place(Matrix& a, const Matrix& b) {
    detail::require_same_shape(a, b, "add_in_place");
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] += b.data()[i];
}

inline Matrix scale(const Matrix& a, double s) {
    Matrix c = a;
    for (double& x : c.data()) x *= s;
    return c;
}

inline Matrix negate(const Matrix& a) { return scale(a, -1.0); }

inline Matrix transpose(const Matrix& a) {
    Matrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

inline double sigmoid_scalar(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline Matrix activation(const Matrix& a, Activation kind) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.data()[i];
        switch (kind) {
        case Activation::sigmoid: c.data()[i] = sigmoid_scalar(x); break;
        case Activation::tanh: c.data()[i] = std::tanh(x); break;
        case Activation::relu: c.data()[i] = x > 0.0 ? x : 0.0; break;
        }
    }
    return c;
}

inline Matrix sigmoid(const Matrix& a) { return activation(a, Activation::sigmoid); }
inline Matrix tanh(const Matrix& a) { return activation(a, Activation::tanh); }
inline Matrix relu(const Matrix& a) { return activation(a, Activation::relu); }

/// Stacks a on top of b (column counts must agree).
inline Matrix concat_rows(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("concat_rows: column mismatch " + a.shape_str() + " vs " +
                                    b.shape_str());
    }
    Matrix c(a.rows() + b.rows(), a.cols());
    std::copy(a.data().begin(), a.data().end(), c.data().begin());
    std::copy(b.data().begin(), b.data().end(), c.data().begin() + static_cast<std::ptrdiff_t>(a.size()));
    return c;
}

inline Matrix slice_rows(const Matrix& a, std::size_t first, std::size_t count) {
    if (first + count > a.rows()) {
        throw std::invalid_argument("slice_rows: range out of bounds for " + a.shape_str());
    }
    Matrix c(count, a.cols());
    std::copy(a.data().begin() + static_cast<std::ptrdiff_t>(first * a.cols()),
              a.data().begin() + static_cast<std::ptrdiff_t>((first + count) * a.cols()),
              c.data().begin());
    return c;
}

inline double sum(const Matrix& a) {
    double s = 0.0;
    for (double x : a.data()) s += x;
    return s;
}

inline double trace(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("trace: matrix is not square: " + a.shape_str());
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

inline double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

inline bool all_finite(const Matrix& a) {
    for (double x : a.data())
        if (!std::isfinite(x)) return false;
    return true;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    detail::require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

} // namespace mdgnn
