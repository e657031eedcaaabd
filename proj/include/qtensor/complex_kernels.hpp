#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qtensor/errors.hpp"

namespace qtensor {

using complex128 = std::complex<double>;

// Dense complex matrix, row-major. Workspace type for the adjoint
// representation of quaternion matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::int64_t rows, std::int64_t cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows * cols)) {
        if (rows < 1 || cols < 1) {
            throw DimensionMismatch("complex matrix dimensions must be positive");
        }
    }

    static ComplexMatrix identity(std::int64_t n);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }

    complex128& operator()(std::int64_t r, std::int64_t c) {
        return data_[static_cast<std::size_t>(r * cols_ + c)];
    }
    complex128 operator()(std::int64_t r, std::int64_t c) const {
        return data_[static_cast<std::size_t>(r * cols_ + c)];
    }

private:
    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<complex128> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix conj_transpose(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

struct ComplexSvd {
    // All min(rows, cols) singular values, descending, zeros included.
    std::vector<double> singvals;
    // rows x cols; column t is a unit left singular vector when
    // singvals[t] > 0 and the zero vector otherwise.
    ComplexMatrix u;
    // cols x cols unitary (accumulated rotations; spans the full right basis).
    ComplexMatrix v;
};

// One-sided (Hestenes) Jacobi SVD. Requires rows >= cols; callers flip via
// the conjugate transpose for wide inputs. Deterministic cyclic sweeps,
// capped at max_sweeps; throws ConvergenceFailure past the cap.
ComplexSvd complex_svd_onesided_jacobi(const ComplexMatrix& a,
                                       int max_sweeps = 30,
                                       double conv_tol = 1e-14);

struct ComplexEigh {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix vectors;            // unitary, column t pairs with eigenvalues[t]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix.
ComplexEigh complex_hermitian_eigen_jacobi(const ComplexMatrix& a,
                                           int max_sweeps = 30,
                                           double conv_tol = 1e-14);

}  // namespace qtensor
