#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qtensor/quat_matrix.hpp"
#include "qtensor/tensor_index.hpp"

namespace qtensor {

// Dense even-order quaternion tensor with explicit left modes (I_1..I_N) and
// right modes (J_1..J_M). Storage is the flattened matrix in column-major
// order: position = (linearize(left)-1) + (linearize(right)-1) * prod(I).
class QuatTensor {
public:
    QuatTensor() = default;
    QuatTensor(Shape left, Shape right);

    // Unit tensor: ones exactly at repeated multi-indices (i..., i...).
    static QuatTensor unit(const Shape& s);
    // Diagonal tensor carrying vals (length prod(s)) at repeated indices.
    static QuatTensor diagonal(const Shape& s, const std::vector<double>& vals);

    const Shape& left() const { return left_; }
    const Shape& right() const { return right_; }
    std::int64_t left_size() const { return left_size_; }
    std::int64_t right_size() const { return right_size_; }

    // 1-based multi-index access, validated.
    Quaternion& at(const MultiIndex& li, const MultiIndex& ri);
    Quaternion at(const MultiIndex& li, const MultiIndex& ri) const;

    // 0-based access by linearized (row, column) pair of the flattening.
    Quaternion& entry(std::int64_t lin_left, std::int64_t lin_right) {
        return data_[static_cast<std::size_t>(lin_left + lin_right * left_size_)];
    }
    Quaternion entry(std::int64_t lin_left, std::int64_t lin_right) const {
        return data_[static_cast<std::size_t>(lin_left + lin_right * left_size_)];
    }

    const std::vector<Quaternion>& data() const { return data_; }
    std::vector<Quaternion>& data() { return data_; }

    friend bool operator==(const QuatTensor& a, const QuatTensor& b) {
        return a.left_ == b.left_ && a.right_ == b.right_ && a.data_ == b.data_;
    }

private:
    Shape left_{1};
    Shape right_{1};
    std::int64_t left_size_ = 1;
    std::int64_t right_size_ = 1;
    std::vector<Quaternion> data_ = std::vector<Quaternion>(1);
};

QuatTensor operator+(const QuatTensor& a, const QuatTensor& b);
QuatTensor operator-(const QuatTensor& a, const QuatTensor& b);
QuatTensor operator*(double s, const QuatTensor& a);

// The isomorphism f: exact data movement to a (prod I) x (prod J) matrix
// indexed by the linearized left/right multi-indices.
QuatMatrix flatten(const QuatTensor& t);
QuatTensor unflatten(const QuatMatrix& m, const Shape& left, const Shape& right);

// Contraction of the right modes of a against the left modes of b, realized
// as flatten -> matmul -> unflatten.
QuatTensor einstein_product(const QuatTensor& a, const QuatTensor& b);

QuatTensor conj_transpose(const QuatTensor& a);
QuatTensor eta_conj_transpose(const QuatTensor& a, ImaginaryUnit eta);

double frobenius_norm(const QuatTensor& a);
bool is_unitary(const QuatTensor& a, double tol);
bool is_eta_hermitian(const QuatTensor& a, ImaginaryUnit eta, double tol);

struct TensorSvd {
    QuatTensor u;  // left x left unitary
    QuatTensor b;  // real entries, nonzeros at positions[t]
    QuatTensor v;  // right x right unitary
    std::vector<double> singvals;  // length rank, descending
    // positions[t] = (delinearize(t+1, left), delinearize(t+1, right)):
    // the multi-index home of the t-th listed singular value.
    std::vector<std::pair<MultiIndex, MultiIndex>> positions;
    std::int64_t rank = 0;
};

// A = U * B * V^* with B real and nonzero exactly at positions[t].
TensorSvd tensor_svd(const QuatTensor& a, double tol_rank = -1.0);

struct TensorRankDecomposition {
    QuatTensor p;  // invertible
    QuatTensor b;  // ones at positions[t]
    QuatTensor q;  // invertible
    std::vector<std::pair<MultiIndex, MultiIndex>> positions;
    std::int64_t rank = 0;
};

// A = P * B * Q with invertible P, Q and a 0/1 tensor B.
TensorRankDecomposition tensor_rank_decomposition(const QuatTensor& a,
                                                  double tol_rank = -1.0);

struct TensorEtaDecomposition {
    QuatTensor u;               // unitary
    QuatTensor b;               // real nonnegative, nonzeros at (p_t, p_t)
    std::vector<double> sigma;  // length prod(left), descending
    ImaginaryUnit eta;
    std::vector<std::pair<MultiIndex, MultiIndex>> positions;  // first rank entries
    std::int64_t rank = 0;
};

// A = U * B * U^{eta*} for eta-Hermitian A.
TensorEtaDecomposition tensor_eta_decomposition(const QuatTensor& a,
                                                ImaginaryUnit eta,
                                                double tol_rank = -1.0,
                                                double sym_tol = 1e-10);

// Moore-Penrose inverse under the Einstein product; sigma_floor as in the
// matrix-level pinv.
QuatTensor pinv(const QuatTensor& a, double tol_rank = -1.0,
                double sigma_floor = 0.0);

// L_A = I - A^+ * A (square over the right modes).
QuatTensor projector_L(const QuatTensor& a, double tol_rank = -1.0,
                       double sigma_floor = 0.0);
// R_A = I - A * A^+ (square over the left modes).
QuatTensor projector_R(const QuatTensor& a, double tol_rank = -1.0,
                       double sigma_floor = 0.0);

}  // namespace qtensor
