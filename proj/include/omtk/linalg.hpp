// linalg.hpp — Dense complex linear solves for the small systems used here
// (4x4 sideband system, 3x3 harmonic-projection normal equations).

#pragma once

#include <complex>
#include <vector>

namespace omtk {

using Complex = std::complex<double>;

// Row-major dense complex matrix, sized for n <= a few dozen.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

struct LinearSolution {
    std::vector<Complex> x;
    // infinity-norm condition estimate ||A|| * ||A^-1|| from the explicit inverse
    double condition_estimate;
};

// Solves A x = b by partially pivoted Gaussian elimination.
// Throws SingularSystem on an exactly zero pivot or when the condition
// estimate exceeds `condition_limit`.
LinearSolution solve_dense(const ComplexMatrix& a, const std::vector<Complex>& b,
                           double condition_limit = 1e12);

// Relative backward residual max_k |A x - b|_k / (sum_j |A_kj x_j| + |b_k|).
double relative_residual(const ComplexMatrix& a, const std::vector<Complex>& x,
                         const std::vector<Complex>& b);

} // namespace omtk
