#include "qtensor/quat_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qtensor {

QuatMatrix::QuatMatrix(std::int64_t rows, std::int64_t cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 1 || cols < 1) {
        throw DimensionMismatch("matrix dimensions must be positive, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    }
}

QuatMatrix QuatMatrix::identity(std::int64_t n) {
    QuatMatrix m(n, n);
    for (std::int64_t t = 0; t < n; ++t) m(t, t) = Quaternion(1.0);
    return m;
}

QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("matrix addition: shapes differ");
    }
    QuatMatrix c(a.rows(), a.cols());
    for (std::int64_t r = 0; r < a.rows(); ++r) {
        for (std::int64_t s = 0; s < a.cols(); ++s) c(r, s) = a(r, s) + b(r, s);
    }
    return c;
}

QuatMatrix operator-(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("matrix subtraction: shapes differ");
    }
    QuatMatrix c(a.rows(), a.cols());
    for (std::int64_t r = 0; r < a.rows(); ++r) {
        for (std::int64_t s = 0; s < a.cols(); ++s) c(r, s) = a(r, s) - b(r, s);
    }
    return c;
}

QuatMatrix matmul(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
    QuatMatrix c(a.rows(), b.cols());
    for (std::int64_t r = 0; r < a.rows(); ++r) {
        for (std::int64_t s = 0; s < b.cols(); ++s) {
            Quaternion acc;
            for (std::int64_t k = 0; k < a.cols(); ++k) {
                acc += a(r, k) * b(k, s);
            }
            c(r, s) = acc;
        }
    }
    return c;
}

QuatMatrix conj_transpose(const QuatMatrix& a) {
    QuatMatrix r(a.cols(), a.rows());
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < a.cols(); ++j) r(j, i) = conj(a(i, j));
    }
    return r;
}

QuatMatrix eta_conj_transpose(const QuatMatrix& a, ImaginaryUnit eta) {
    QuatMatrix r(a.cols(), a.rows());
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < a.cols(); ++j) {
            r(j, i) = eta_conj(a(i, j), eta);
        }
    }
    return r;
}

QuatMatrix scale_left(Quaternion s, const QuatMatrix& a) {
    QuatMatrix r(a.rows(), a.cols());
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    }
    return r;
}

QuatMatrix scale_right(const QuatMatrix& a, Quaternion s) {
    QuatMatrix r(a.rows(), a.cols());
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * s;
    }
    return r;
}

double frobenius_norm(const QuatMatrix& a) {
    double s = 0.0;
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < a.cols(); ++j) s += norm_sq(a(i, j));
    }
    return std::sqrt(s);
}

ComplexMatrix complex_adjoint(const QuatMatrix& a) {
    const std::int64_t m = a.rows();
    const std::int64_t n = a.cols();
    ComplexMatrix c(2 * m, 2 * n);
    for (std::int64_t i = 0; i < m; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            const Quaternion q = a(i, j);
            const complex128 a1(q.w, q.x);
            const complex128 a2(q.y, q.z);
            c(i, j) = a1;
            c(i, j + n) = a2;
            c(i + m, j) = -std::conj(a2);
            c(i + m, j + n) = std::conj(a1);
        }
    }
    return c;
}

namespace {

using QuatColumn = std::vector<Quaternion>;

// Quaternion column encoded by a complex 2n-vector [a; b]: a - conj(b) j.
QuatColumn column_from_complex(const ComplexMatrix& m, std::int64_t col) {
    const std::int64_t n = m.rows() / 2;
    QuatColumn v(static_cast<std::size_t>(n));
    for (std::int64_t s = 0; s < n; ++s) {
        const complex128 a = m(s, col);
        const complex128 b = m(s + n, col);
        v[static_cast<std::size_t>(s)] =
            Quaternion{a.real(), a.imag(), -b.real(), b.imag()};
    }
    return v;
}

Quaternion h_inner(const QuatColumn& u, const QuatColumn& v) {
    Quaternion acc;
    for (std::size_t s = 0; s < u.size(); ++s) acc += conj(u[s]) * v[s];
    return acc;
}

double column_norm(const QuatColumn& v) {
    double s = 0.0;
    for (const Quaternion& q : v) s += norm_sq(q);
    return std::sqrt(s);
}

// v <- v - sum_c basis[c] * <basis[c], v>; returns the remaining norm.
double mgs_project_out(const std::vector<QuatColumn>& basis, QuatColumn& v) {
    for (const QuatColumn& b : basis) {
        const Quaternion ip = h_inner(b, v);
        for (std::size_t s = 0; s < v.size(); ++s) v[s] -= b[s] * ip;
    }
    return column_norm(v);
}

void normalize(QuatColumn& v, double norm) {
    for (Quaternion& q : v) q = q / norm;
}

// Greedily extend `accepted` to `target` H-orthonormal columns, drawing
// candidates first from the supplied complex columns and then from the
// identity basis. on_accept(candidate_position) fires for complex-sourced
// acceptances (position < 0 for identity fills).
template <typename OnAccept>
void greedy_complete(std::vector<QuatColumn>& accepted, std::size_t target,
                     std::int64_t dim, const ComplexMatrix& source,
                     std::int64_t first_col, std::int64_t last_col,
                     OnAccept on_accept) {
    for (std::int64_t c = first_col; c < last_col && accepted.size() < target; ++c) {
        QuatColumn v = column_from_complex(source, c);
        const double n = mgs_project_out(accepted, v);
        if (n > 0.25) {
            normalize(v, n);
            accepted.push_back(std::move(v));
            on_accept(c);
        }
    }
    for (std::int64_t c = 0; c < dim && accepted.size() < target; ++c) {
        QuatColumn v(static_cast<std::size_t>(dim));
        v[static_cast<std::size_t>(c)] = Quaternion(1.0);
        const double n = mgs_project_out(accepted, v);
        if (n > 0.25) {
            normalize(v, n);
            accepted.push_back(std::move(v));
            on_accept(-1);
        }
    }
    if (accepted.size() < target) {
        throw ConvergenceFailure("failed to complete an orthonormal basis");
    }
}

QuatMatrix columns_to_matrix(const std::vector<QuatColumn>& cols) {
    const std::int64_t n = static_cast<std::int64_t>(cols.size());
    const std::int64_t m = static_cast<std::int64_t>(cols.front().size());
    QuatMatrix out(m, n);
    for (std::int64_t c = 0; c < n; ++c) {
        for (std::int64_t r = 0; r < m; ++r) {
            out(r, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
        }
    }
    return out;
}

double default_tol_rank(double tol_rank, std::int64_t rows, std::int64_t cols) {
    if (tol_rank >= 0.0) return tol_rank;
    return 1e-12 * static_cast<double>(std::max(rows, cols));
}

}  // namespace

MatSvd svd(const QuatMatrix& a, double tol_rank, double sigma_floor) {
    const std::int64_t m = a.rows();
    const std::int64_t n = a.cols();
    if (m < n) {
        MatSvd flipped = svd(conj_transpose(a), tol_rank, sigma_floor);
        return MatSvd{std::move(flipped.v), std::move(flipped.singvals),
                      std::move(flipped.u), flipped.rank};
    }
    const double tol = default_tol_rank(tol_rank, m, n);
    const ComplexSvd cs = complex_svd_onesided_jacobi(complex_adjoint(a));
    const double sigma_max = cs.singvals.empty() ? 0.0 : cs.singvals.front();
    const double cutoff = tol * std::max(sigma_max, sigma_floor);

    // One quaternion right-singular column per symplectic pair. Greedy
    // selection drops the pair partner (it projects to zero under MGS) and
    // keeps repeated-value clusters well conditioned.
    std::vector<QuatColumn> vcols;
    std::vector<double> sigma;
    greedy_complete(vcols, static_cast<std::size_t>(n), n, cs.v, 0, 2 * n,
                    [&](std::int64_t c) {
                        sigma.push_back(c >= 0 ? cs.singvals[static_cast<std::size_t>(c)]
                                               : 0.0);
                    });

    std::int64_t rank = 0;
    while (rank < n && sigma[static_cast<std::size_t>(rank)] > cutoff) ++rank;
    sigma.resize(static_cast<std::size_t>(rank));

    // Left columns u_t = A v_t / sigma_t keep A * V = U * Sigma exact up to
    // rounding; the null-range completion is deterministic.
    std::vector<QuatColumn> ucols;
    for (std::int64_t t = 0; t < rank; ++t) {
        QuatColumn u(static_cast<std::size_t>(m));
        const QuatColumn& v = vcols[static_cast<std::size_t>(t)];
        for (std::int64_t r = 0; r < m; ++r) {
            Quaternion acc;
            for (std::int64_t k = 0; k < n; ++k) {
                acc += a(r, k) * v[static_cast<std::size_t>(k)];
            }
            u[static_cast<std::size_t>(r)] = acc / sigma[static_cast<std::size_t>(t)];
        }
        const double nn = mgs_project_out(ucols, u);
        normalize(u, nn);
        ucols.push_back(std::move(u));
    }
    const ComplexMatrix no_candidates(1, 1);
    greedy_complete(ucols, static_cast<std::size_t>(m), m, no_candidates, 0, 0,
                    [](std::int64_t) {});

    return MatSvd{columns_to_matrix(ucols), std::move(sigma),
                  columns_to_matrix(vcols), rank};
}

QuatMatrix pinv(const QuatMatrix& a, double tol_rank, double sigma_floor) {
    const MatSvd s = svd(a, tol_rank, sigma_floor);
    // V * Sigma^+ * U't: fold the diagonal scaling into the product.
    QuatMatrix out(a.cols(), a.rows());
    for (std::int64_t i = 0; i < a.cols(); ++i) {
        for (std::int64_t j = 0; j < a.rows(); ++j) {
            Quaternion acc;
            for (std::int64_t t = 0; t < s.rank; ++t) {
                acc += s.v(i, t) * (1.0 / s.singvals[static_cast<std::size_t>(t)]) *
                       conj(s.u(j, t));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

MatRankDecomposition rank_decomposition(const QuatMatrix& a, double tol_rank) {
    const MatSvd s = svd(a, tol_rank);
    // P = U * diag(D_r, I_{m-r}), Q = V^*; then A = P * E_r * Q.
    QuatMatrix p = s.u;
    for (std::int64_t t = 0; t < s.rank; ++t) {
        const double d = s.singvals[static_cast<std::size_t>(t)];
        for (std::int64_t r = 0; r < p.rows(); ++r) p(r, t) = p(r, t) * d;
    }
    return MatRankDecomposition{std::move(p), conj_transpose(s.v), s.rank};
}

MatEtaDecomposition eta_hermitian_decomposition(const QuatMatrix& a,
                                                ImaginaryUnit eta,
                                                double tol_rank, double sym_tol) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("eta-Hermitian decomposition expects square input");
    }
    const std::int64_t n = a.rows();
    const double scale = std::max(1.0, frobenius_norm(a));
    const QuatMatrix asym = a - eta_conj_transpose(a, eta);
    if (frobenius_norm(asym) > sym_tol * scale) {
        throw NotEtaHermitian("input is not eta-Hermitian within tolerance: residual " +
                              std::to_string(frobenius_norm(asym) / scale));
    }

    // eta * A is skew-Hermitian, so i * adjoint(eta * A) is Hermitian.
    // Hermitize to absorb any sub-tolerance asymmetry of the input.
    const ComplexMatrix adj = complex_adjoint(scale_left(unit(eta), a));
    ComplexMatrix h(2 * n, 2 * n);
    for (std::int64_t r = 0; r < 2 * n; ++r) {
        for (std::int64_t c = 0; c < 2 * n; ++c) {
            const complex128 v = complex128(0, 1) * adj(r, c);
            const complex128 vt = complex128(0, 1) * adj(c, r);
            h(r, c) = 0.5 * (v + std::conj(vt));
        }
    }
    const ComplexEigh eig = complex_hermitian_eigen_jacobi(h);

    double lam_max = 0.0;
    for (double lam : eig.eigenvalues) lam_max = std::max(lam_max, std::fabs(lam));
    const double tol = default_tol_rank(tol_rank, n, n);
    const double cutoff = tol * lam_max;

    // The spectrum is symmetric: {+sigma_t, -sigma_t}. Positive eigenvectors
    // give one quaternion column per singular value; the kernel fills the rest.
    std::vector<QuatColumn> xcols;
    std::vector<double> sigma;
    for (std::int64_t c = 0; c < 2 * n && static_cast<std::int64_t>(xcols.size()) < n;
         ++c) {
        if (eig.eigenvalues[static_cast<std::size_t>(c)] <= cutoff) break;
        QuatColumn v = column_from_complex(eig.vectors, c);
        const double nn = mgs_project_out(xcols, v);
        if (nn > 0.25) {
            normalize(v, nn);
            xcols.push_back(std::move(v));
            sigma.push_back(eig.eigenvalues[static_cast<std::size_t>(c)]);
        }
    }
    const std::int64_t rank = static_cast<std::int64_t>(xcols.size());
    std::int64_t zero_first = 0;
    while (zero_first < 2 * n &&
           eig.eigenvalues[static_cast<std::size_t>(zero_first)] > cutoff) {
        ++zero_first;
    }
    greedy_complete(xcols, static_cast<std::size_t>(n), n, eig.vectors, zero_first,
                    2 * n, [&](std::int64_t) { sigma.push_back(0.0); });

    // Columns satisfy (eta A) x = x (-i sigma). Right-multiplying by a unit u
    // with conj(u) (-i) u = eta standardizes the eigenvalue to eta sigma;
    // U = eta W eta then gives A = U diag(sigma) U^{eta*}.
    Quaternion u;
    if (eta == ImaginaryUnit::i) {
        u = unit(ImaginaryUnit::j);
    } else {
        u = (Quaternion{0.0, -1.0, 0.0, 0.0} + unit(eta)) / std::sqrt(2.0);
    }
    const Quaternion e = unit(eta);
    QuatMatrix umat(n, n);
    for (std::int64_t c = 0; c < n; ++c) {
        for (std::int64_t r = 0; r < n; ++r) {
            const Quaternion w =
                xcols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] * u;
            umat(r, c) = e * w * e;
        }
    }
    return MatEtaDecomposition{std::move(umat), std::move(sigma), rank};
}

}  // namespace qtensor
