#include "omtk/linalg.hpp"
#include "omtk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace omtk {

namespace {

// In-place LU factorization with partial pivoting; perm maps factored row -> original row.
void lu_factor(ComplexMatrix& m, std::vector<std::size_t>& perm) {
    const std::size_t n = m.rows();
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(m(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double mag = std::abs(m(r, k));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) {
            throw SingularSystem("solve_dense: exactly singular matrix (zero pivot column)",
                                 std::numeric_limits<double>::infinity());
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(pivot, c));
            std::swap(perm[k], perm[pivot]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex factor = m(r, k) / m(k, k);
            m(r, k) = factor;
            for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= factor * m(k, c);
        }
    }
}

std::vector<Complex> lu_solve(const ComplexMatrix& lu, const std::vector<std::size_t>& perm,
                              const std::vector<Complex>& b) {
    const std::size_t n = lu.rows();
    std::vector<Complex> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = b[perm[r]];
    for (std::size_t r = 1; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c) x[r] -= lu(r, c) * x[c];
    for (std::size_t r = n; r-- > 0;) {
        for (std::size_t c = r + 1; c < n; ++c) x[r] -= lu(r, c) * x[c];
        x[r] /= lu(r, r);
    }
    return x;
}

double inf_norm(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) row += std::abs(m(r, c));
        best = std::max(best, row);
    }
    return best;
}

} // namespace

LinearSolution solve_dense(const ComplexMatrix& a, const std::vector<Complex>& b,
                           double condition_limit) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DomainError("solve_dense: shape mismatch");

    ComplexMatrix lu = a;
    std::vector<std::size_t> perm;
    lu_factor(lu, perm);

    // ||A^-1||_inf from the explicit inverse; n is small so this is cheap.
    double inv_norm = 0.0;
    std::vector<Complex> unit(n, Complex{0.0, 0.0});
    std::vector<double> inv_row(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        unit[c] = 1.0;
        const auto col = lu_solve(lu, perm, unit);
        unit[c] = 0.0;
        for (std::size_t r = 0; r < n; ++r) inv_row[r] += std::abs(col[r]);
    }
    for (double row : inv_row) inv_norm = std::max(inv_norm, row);

    const double cond = inf_norm(a) * inv_norm;
    if (!(cond <= condition_limit)) {
        throw SingularSystem("solve_dense: condition estimate " + std::to_string(cond) +
                                 " exceeds limit",
                             cond);
    }
    return {lu_solve(lu, perm, b), cond};
}

double relative_residual(const ComplexMatrix& a, const std::vector<Complex>& x,
                         const std::vector<Complex>& b) {
    const std::size_t n = a.rows();
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        Complex acc{0.0, 0.0};
        double scale = std::abs(b[r]);
        for (std::size_t c = 0; c < n; ++c) {
            acc += a(r, c) * x[c];
            scale += std::abs(a(r, c) * x[c]);
        }
        if (scale > 0.0) worst = std::max(worst, std::abs(acc - b[r]) / scale);
    }
    return worst;
}

} // namespace omtk
