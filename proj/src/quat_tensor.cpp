#include "qtensor/quat_tensor.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qtensor {

QuatTensor::QuatTensor(Shape left, Shape right)
    : left_(std::move(left)), right_(std::move(right)),
      left_size_(left_.product()), right_size_(right_.product()),
      data_(static_cast<std::size_t>(left_size_ * right_size_)) {}

QuatTensor QuatTensor::unit(const Shape& s) {
    QuatTensor t(s, s);
    for (std::int64_t d = 0; d < t.left_size(); ++d) {
        t.entry(d, d) = Quaternion(1.0);
    }
    return t;
}

QuatTensor QuatTensor::diagonal(const Shape& s, const std::vector<double>& vals) {
    QuatTensor t(s, s);
    if (static_cast<std::int64_t>(vals.size()) != t.left_size()) {
        throw DimensionMismatch("diagonal tensor needs " +
                                std::to_string(t.left_size()) + " values, got " +
                                std::to_string(vals.size()));
    }
    for (std::int64_t d = 0; d < t.left_size(); ++d) {
        t.entry(d, d) = Quaternion(vals[static_cast<std::size_t>(d)]);
    }
    return t;
}

Quaternion& QuatTensor::at(const MultiIndex& li, const MultiIndex& ri) {
    return entry(linearize(li, left_) - 1, linearize(ri, right_) - 1);
}

Quaternion QuatTensor::at(const MultiIndex& li, const MultiIndex& ri) const {
    return entry(linearize(li, left_) - 1, linearize(ri, right_) - 1);
}

namespace {

void require_same_shape(const QuatTensor& a, const QuatTensor& b,
                        const char* what) {
    if (a.left() != b.left() || a.right() != b.right()) {
        throw DimensionMismatch(std::string(what) + ": shapes " +
                                to_string(a.left()) + "|" + to_string(a.right()) +
                                " vs " + to_string(b.left()) + "|" +
                                to_string(b.right()));
    }
}

}  // namespace

QuatTensor operator+(const QuatTensor& a, const QuatTensor& b) {
    require_same_shape(a, b, "tensor addition");
    QuatTensor c = a;
    for (std::size_t t = 0; t < c.data().size(); ++t) c.data()[t] += b.data()[t];
    return c;
}

QuatTensor operator-(const QuatTensor& a, const QuatTensor& b) {
    require_same_shape(a, b, "tensor subtraction");
    QuatTensor c = a;
    for (std::size_t t = 0; t < c.data().size(); ++t) c.data()[t] -= b.data()[t];
    return c;
}

QuatTensor operator*(double s, const QuatTensor& a) {
    QuatTensor c = a;
    for (Quaternion& q : c.data()) q = s * q;
    return c;
}

QuatMatrix flatten(const QuatTensor& t) {
    QuatMatrix m(t.left_size(), t.right_size());
    for (std::int64_t c = 0; c < t.right_size(); ++c) {
        for (std::int64_t r = 0; r < t.left_size(); ++r) {
            m(r, c) = t.entry(r, c);
        }
    }
    return m;
}

QuatTensor unflatten(const QuatMatrix& m, const Shape& left, const Shape& right) {
    if (m.rows() != left.product() || m.cols() != right.product()) {
        throw DimensionMismatch("unflatten: matrix " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) +
                                " does not match shapes " + to_string(left) + "|" +
                                to_string(right));
    }
    QuatTensor t(left, right);
    for (std::int64_t c = 0; c < t.right_size(); ++c) {
        for (std::int64_t r = 0; r < t.left_size(); ++r) {
            t.entry(r, c) = m(r, c);
        }
    }
    return t;
}

QuatTensor einstein_product(const QuatTensor& a, const QuatTensor& b) {
    if (a.right() != b.left()) {
        throw DimensionMismatch("einstein product: contracted modes " +
                                to_string(a.right()) + " vs " + to_string(b.left()));
    }
    return unflatten(matmul(flatten(a), flatten(b)), a.left(), b.right());
}

QuatTensor conj_transpose(const QuatTensor& a) {
    return unflatten(conj_transpose(flatten(a)), a.right(), a.left());
}

QuatTensor eta_conj_transpose(const QuatTensor& a, ImaginaryUnit eta) {
    return unflatten(eta_conj_transpose(flatten(a), eta), a.right(), a.left());
}

double frobenius_norm(const QuatTensor& a) {
    double s = 0.0;
    for (const Quaternion& q : a.data()) s += norm_sq(q);
    return std::sqrt(s);
}

bool is_unitary(const QuatTensor& a, double tol) {
    if (a.left() != a.right()) {
        throw DimensionMismatch("unitarity check requires identical left and "
                                "right shape lists");
    }
    const QuatTensor id = QuatTensor::unit(a.left());
    const double r1 = frobenius_norm(einstein_product(a, conj_transpose(a)) - id);
    const double r2 = frobenius_norm(einstein_product(conj_transpose(a), a) - id);
    return r1 <= tol * static_cast<double>(a.left_size()) &&
           r2 <= tol * static_cast<double>(a.left_size());
}

bool is_eta_hermitian(const QuatTensor& a, ImaginaryUnit eta, double tol) {
    if (a.left() != a.right()) {
        throw DimensionMismatch("eta-Hermitian check requires identical left "
                                "and right shape lists");
    }
    const double res = frobenius_norm(a - eta_conj_transpose(a, eta));
    return res <= tol * std::max(1.0, frobenius_norm(a));
}

namespace {

std::vector<std::pair<MultiIndex, MultiIndex>> diagonal_positions(
    const Shape& left, const Shape& right, std::int64_t count) {
    std::vector<std::pair<MultiIndex, MultiIndex>> pos;
    pos.reserve(static_cast<std::size_t>(count));
    for (std::int64_t t = 1; t <= count; ++t) {
        pos.emplace_back(delinearize(t, left), delinearize(t, right));
    }
    return pos;
}

}  // namespace

TensorSvd tensor_svd(const QuatTensor& a, double tol_rank) {
    const MatSvd s = svd(flatten(a), tol_rank);
    QuatMatrix bmat(a.left_size(), a.right_size());
    for (std::int64_t t = 0; t < s.rank; ++t) {
        bmat(t, t) = Quaternion(s.singvals[static_cast<std::size_t>(t)]);
    }
    TensorSvd out;
    out.u = unflatten(s.u, a.left(), a.left());
    out.b = unflatten(bmat, a.left(), a.right());
    out.v = unflatten(s.v, a.right(), a.right());
    out.singvals = s.singvals;
    out.positions = diagonal_positions(a.left(), a.right(), s.rank);
    out.rank = s.rank;
    return out;
}

TensorRankDecomposition tensor_rank_decomposition(const QuatTensor& a,
                                                  double tol_rank) {
    const MatRankDecomposition d = rank_decomposition(flatten(a), tol_rank);
    QuatMatrix bmat(a.left_size(), a.right_size());
    for (std::int64_t t = 0; t < d.rank; ++t) bmat(t, t) = Quaternion(1.0);
    TensorRankDecomposition out;
    out.p = unflatten(d.p, a.left(), a.left());
    out.b = unflatten(bmat, a.left(), a.right());
    out.q = unflatten(d.q, a.right(), a.right());
    out.positions = diagonal_positions(a.left(), a.right(), d.rank);
    out.rank = d.rank;
    return out;
}

TensorEtaDecomposition tensor_eta_decomposition(const QuatTensor& a,
                                                ImaginaryUnit eta,
                                                double tol_rank, double sym_tol) {
    if (a.left() != a.right()) {
        throw DimensionMismatch("eta-Hermitian decomposition requires identical "
                                "left and right shape lists");
    }
    const MatEtaDecomposition d =
        eta_hermitian_decomposition(flatten(a), eta, tol_rank, sym_tol);
    QuatMatrix bmat(a.left_size(), a.left_size());
    for (std::int64_t t = 0; t < a.left_size(); ++t) {
        bmat(t, t) = Quaternion(d.sigma[static_cast<std::size_t>(t)]);
    }
    TensorEtaDecomposition out;
    out.u = unflatten(d.u, a.left(), a.left());
    out.b = unflatten(bmat, a.left(), a.left());
    out.sigma = d.sigma;
    out.eta = eta;
    out.positions = diagonal_positions(a.left(), a.left(), d.rank);
    out.rank = d.rank;
    return out;
}

QuatTensor pinv(const QuatTensor& a, double tol_rank, double sigma_floor) {
    return unflatten(pinv(flatten(a), tol_rank, sigma_floor), a.right(), a.left());
}

QuatTensor projector_L(const QuatTensor& a, double tol_rank, double sigma_floor) {
    const QuatMatrix f = flatten(a);
    const QuatMatrix m = QuatMatrix::identity(a.right_size()) -
                         matmul(pinv(f, tol_rank, sigma_floor), f);
    return unflatten(m, a.right(), a.right());
}

QuatTensor projector_R(const QuatTensor& a, double tol_rank, double sigma_floor) {
    const QuatMatrix f = flatten(a);
    const QuatMatrix m = QuatMatrix::identity(a.left_size()) -
                         matmul(f, pinv(f, tol_rank, sigma_floor));
    return unflatten(m, a.left(), a.left());
}

}  // namespace qtensor
