#include "privcap/matrix.hpp"

#include <cmath>
#include <string>

#include "privcap/error.hpp"

namespace privcap {

namespace {

std::string shape(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DomainError(std::string(op) + ": shape mismatch " + shape(a.rows(), a.cols()) +
                          " vs " + shape(b.rows(), b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
    if (data_.size() != rows * cols) {
        throw DomainError("matrix " + shape(rows, cols) + " needs " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(data_.size()));
    }
    for (const auto& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw DomainError("matrix entries must be finite");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix out(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t row0, std::size_t col0, std::size_t rows,
                                   std::size_t cols) const {
    if (row0 + rows > rows_ || col0 + cols > cols_) {
        throw DomainError("block " + shape(rows, cols) + " at (" + std::to_string(row0) + ", " +
                          std::to_string(col0) + ") exceeds " + shape(rows_, cols_));
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(row0 + r, col0 + c);
    return out;
}

std::vector<double> ComplexMatrix::real_diagonal() const {
    if (!square()) throw DomainError("real_diagonal: matrix is not square");
    std::vector<double> d(rows_);
    for (std::size_t i = 0; i < rows_; ++i) d[i] = (*this)(i, i).real();
    return d;
}

double ComplexMatrix::frobenius_norm() const noexcept {
    double sum = 0.0;
    for (const auto& z : data_) sum += std::norm(z);
    return std::sqrt(sum);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DomainError("matrix product: inner dimensions differ (" + shape(a.rows(), a.cols()) +
                          " * " + shape(b.rows(), b.cols()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t p = 0; p < a.cols(); ++p) {
            const Complex aip = a(i, p);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aip * b(p, j);
        }
    return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix gram(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) {
            Complex s = 0.0;
            for (std::size_t r = 0; r < a.rows(); ++r) s += std::conj(a(r, i)) * a(r, j);
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    for (std::size_t i = 0; i < a.cols(); ++i) out(i, i) = out(i, i).real();
    return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
    return out;
}

double hermitian_residual(const ComplexMatrix& h) {
    if (!h.square()) throw DomainError("hermitian_residual: matrix is not square");
    double sum = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) sum += std::norm(h(i, j) - std::conj(h(j, i)));
    return std::sqrt(sum);
}

}  // namespace privcap
