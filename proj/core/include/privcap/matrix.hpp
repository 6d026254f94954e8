#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace privcap {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    /// Zero matrix. Throws DomainError if either dimension is zero.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of row-major data; size must equal rows * cols.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] std::span<const Complex> data() const noexcept { return data_; }

    /// Conjugate transpose.
    [[nodiscard]] ComplexMatrix adjoint() const;
    /// Copy of the rows x cols sub-block starting at (row0, col0).
    [[nodiscard]] ComplexMatrix block(std::size_t row0, std::size_t col0, std::size_t rows,
                                      std::size_t cols) const;
    /// Real parts of the main diagonal (square matrices).
    [[nodiscard]] std::vector<double> real_diagonal() const;

    [[nodiscard]] double frobenius_norm() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

[[nodiscard]] ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
[[nodiscard]] ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
[[nodiscard]] ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
[[nodiscard]] ComplexMatrix operator*(Complex scale, ComplexMatrix a);

/// a^dagger a, computed without materialising the adjoint.
[[nodiscard]] ComplexMatrix gram(const ComplexMatrix& a);

/// Block-diagonal direct sum diag(a, b).
[[nodiscard]] ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||h - h^dagger||_F.
[[nodiscard]] double hermitian_residual(const ComplexMatrix& h);

}  // namespace privcap
