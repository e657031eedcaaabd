#pragma once

#include <cstdint>
#include <vector>

#include "qtensor/complex_kernels.hpp"
#include "qtensor/quaternion.hpp"

namespace qtensor {

// Dense quaternion matrix, row-major.
class QuatMatrix {
public:
    QuatMatrix() = default;
    QuatMatrix(std::int64_t rows, std::int64_t cols);

    static QuatMatrix identity(std::int64_t n);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }

    Quaternion& operator()(std::int64_t r, std::int64_t c) {
        return data_[static_cast<std::size_t>(r * cols_ + c)];
    }
    Quaternion operator()(std::int64_t r, std::int64_t c) const {
        return data_[static_cast<std::size_t>(r * cols_ + c)];
    }

    friend bool operator==(const QuatMatrix& a, const QuatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<Quaternion> data_;
};

QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix operator-(const QuatMatrix& a, const QuatMatrix& b);

// Sum-of-products with quaternion factors in left-to-right order; the inner
// summation runs in ascending index order, so results are deterministic.
QuatMatrix matmul(const QuatMatrix& a, const QuatMatrix& b);

QuatMatrix conj_transpose(const QuatMatrix& a);
QuatMatrix eta_conj_transpose(const QuatMatrix& a, ImaginaryUnit eta);

// Entrywise s * a (left) or a * s (right); order matters over quaternions.
QuatMatrix scale_left(Quaternion s, const QuatMatrix& a);
QuatMatrix scale_right(const QuatMatrix& a, Quaternion s);

double frobenius_norm(const QuatMatrix& a);

// Write A = A1 + A2 j with complex blocks A1, A2 and return the 2m x 2n
// matrix [[A1, A2], [-conj(A2), conj(A1)]]. Multiplicative and compatible
// with the conjugate transpose.
ComplexMatrix complex_adjoint(const QuatMatrix& a);

struct MatSvd {
    QuatMatrix u;                  // m x m unitary
    std::vector<double> singvals;  // length rank, descending, all > 0
    QuatMatrix v;                  // n x n unitary
    std::int64_t rank = 0;
};

// Quaternion SVD through the complex adjoint: the adjoint's singular values
// come in symplectic pairs, one quaternion singular value per pair.
//
// tol_rank < 0 selects the default 1e-12 * max(rows, cols). The rank cutoff
// is tol_rank * max(sigma_max, sigma_floor); a positive sigma_floor lets
// callers discard singular values that are negligible against an external
// scale (products of projectors that should vanish exactly).
MatSvd svd(const QuatMatrix& a, double tol_rank = -1.0, double sigma_floor = 0.0);

QuatMatrix pinv(const QuatMatrix& a, double tol_rank = -1.0,
                double sigma_floor = 0.0);

struct MatRankDecomposition {
    QuatMatrix p;  // m x m invertible
    QuatMatrix q;  // n x n invertible
    std::int64_t rank = 0;
};

// A = P * E_r * Q with E_r carrying ones at (1,1)..(r,r).
MatRankDecomposition rank_decomposition(const QuatMatrix& a,
                                        double tol_rank = -1.0);

struct MatEtaDecomposition {
    QuatMatrix u;               // n x n unitary
    std::vector<double> sigma;  // length n, nonnegative, descending
    std::int64_t rank = 0;
};

// Factor an eta-Hermitian A as U * diag(sigma) * U^{eta*}. Route: eta*A is
// skew-Hermitian, i * adjoint(eta*A) is complex Hermitian; diagonalize by
// Jacobi and carry the eigenvectors back to quaternion columns.
MatEtaDecomposition eta_hermitian_decomposition(const QuatMatrix& a,
                                                ImaginaryUnit eta,
                                                double tol_rank = -1.0,
                                                double sym_tol = 1e-10);

}  // namespace qtensor
