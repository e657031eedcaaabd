#include "qtensor/complex_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qtensor {

ComplexMatrix ComplexMatrix::identity(std::int64_t n) {
    ComplexMatrix m(n, n);
    for (std::int64_t t = 0; t < n; ++t) m(t, t) = 1.0;
    return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("complex matmul: inner dimensions differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::int64_t r = 0; r < a.rows(); ++r) {
        for (std::int64_t k = 0; k < a.cols(); ++k) {
            const complex128 ark = a(r, k);
            if (ark == complex128{}) continue;
            for (std::int64_t s = 0; s < b.cols(); ++s) {
                c(r, s) += ark * b(k, s);
            }
        }
    }
    return c;
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < a.cols(); ++j) {
            r(j, i) = std::conj(a(i, j));
        }
    }
    return r;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        for (std::int64_t j = 0; j < a.cols(); ++j) {
            s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

namespace {

// cos/sin of the real Jacobi rotation annihilating the off-diagonal of
// [[app, b],[b, aqq]], b > 0.
void real_jacobi_pair(double app, double aqq, double b, double& cs, double& sn) {
    const double tau = (aqq - app) / (2.0 * b);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::hypot(1.0, tau));
    cs = 1.0 / std::hypot(1.0, t);
    sn = t * cs;
}

}  // namespace

ComplexSvd complex_svd_onesided_jacobi(const ComplexMatrix& a, int max_sweeps,
                                       double conv_tol) {
    if (a.rows() < a.cols()) {
        throw DimensionMismatch("one-sided Jacobi expects rows >= cols");
    }
    const std::int64_t m = a.rows();
    const std::int64_t n = a.cols();
    ComplexMatrix g = a;
    ComplexMatrix v = ComplexMatrix::identity(n);

    bool converged = (n == 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::int64_t p = 0; p + 1 < n; ++p) {
            for (std::int64_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                complex128 apq{};
                for (std::int64_t r = 0; r < m; ++r) {
                    app += std::norm(g(r, p));
                    aqq += std::norm(g(r, q));
                    apq += std::conj(g(r, p)) * g(r, q);
                }
                const double beta = std::abs(apq);
                if (beta <= conv_tol * std::sqrt(app * aqq) || app == 0.0 ||
                    aqq == 0.0) {
                    continue;
                }
                converged = false;
                // Phase that makes the column inner product real positive,
                // then a real rotation on the (p, q) plane.
                const complex128 phase = apq / beta;
                double cs, sn;
                real_jacobi_pair(app, aqq, beta, cs, sn);
                const complex128 ph = std::conj(phase);
                for (std::int64_t r = 0; r < m; ++r) {
                    const complex128 gp = g(r, p);
                    const complex128 gq = g(r, q) * ph;
                    g(r, p) = cs * gp - sn * gq;
                    g(r, q) = sn * gp + cs * gq;
                }
                for (std::int64_t r = 0; r < n; ++r) {
                    const complex128 vp = v(r, p);
                    const complex128 vq = v(r, q) * ph;
                    v(r, p) = cs * vp - sn * vq;
                    v(r, q) = sn * vp + cs * vq;
                }
            }
        }
    }
    if (!converged) {
        throw ConvergenceFailure("one-sided Jacobi SVD did not converge in " +
                                 std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<double> norms(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::int64_t r = 0; r < m; ++r) s += std::norm(g(r, c));
        norms[static_cast<std::size_t>(c)] = std::sqrt(s);
    }
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int64_t l, std::int64_t r) {
        return norms[static_cast<std::size_t>(l)] > norms[static_cast<std::size_t>(r)];
    });

    ComplexSvd out;
    out.singvals.resize(static_cast<std::size_t>(n));
    out.u = ComplexMatrix(m, n);
    out.v = ComplexMatrix(n, n);
    for (std::int64_t c = 0; c < n; ++c) {
        const std::int64_t src = order[static_cast<std::size_t>(c)];
        const double sv = norms[static_cast<std::size_t>(src)];
        out.singvals[static_cast<std::size_t>(c)] = sv;
        for (std::int64_t r = 0; r < n; ++r) out.v(r, c) = v(r, src);
        if (sv > 0.0) {
            for (std::int64_t r = 0; r < m; ++r) out.u(r, c) = g(r, src) / sv;
        }
    }
    return out;
}

ComplexEigh complex_hermitian_eigen_jacobi(const ComplexMatrix& a, int max_sweeps,
                                           double conv_tol) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("eigendecomposition expects a square matrix");
    }
    const std::int64_t n = a.rows();
    ComplexMatrix h = a;
    ComplexMatrix w = ComplexMatrix::identity(n);
    const double scale = frobenius_norm(a);

    bool converged = (n == 1) || scale == 0.0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::int64_t p = 0; p + 1 < n; ++p) {
            for (std::int64_t q = p + 1; q < n; ++q) {
                const complex128 hpq = h(p, q);
                const double beta = std::abs(hpq);
                if (beta <= conv_tol * scale) continue;
                converged = false;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const complex128 phase = hpq / beta;
                double cs, sn;
                real_jacobi_pair(app, aqq, beta, cs, sn);
                // R restricted to the (p, q) plane:
                //   [ cs        sn      ]
                //   [ -sn*ph    cs*ph   ]   with ph = conj(phase).
                const complex128 ph = std::conj(phase);
                // Columns: H <- H R
                for (std::int64_t r = 0; r < n; ++r) {
                    const complex128 hp = h(r, p);
                    const complex128 hq = h(r, q) * ph;
                    h(r, p) = cs * hp - sn * hq;
                    h(r, q) = sn * hp + cs * hq;
                }
                // Rows: H <- R^H H
                for (std::int64_t c = 0; c < n; ++c) {
                    const complex128 hp = h(p, c);
                    const complex128 hq = h(q, c) * std::conj(ph);
                    h(p, c) = cs * hp - sn * hq;
                    h(q, c) = sn * hp + cs * hq;
                }
                for (std::int64_t r = 0; r < n; ++r) {
                    const complex128 wp = w(r, p);
                    const complex128 wq = w(r, q) * ph;
                    w(r, p) = cs * wp - sn * wq;
                    w(r, q) = sn * wp + cs * wq;
                }
            }
        }
    }
    if (!converged) {
        throw ConvergenceFailure("Hermitian Jacobi did not converge in " +
                                 std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<double> lam(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t) lam[static_cast<std::size_t>(t)] = h(t, t).real();
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int64_t l, std::int64_t r) {
        return lam[static_cast<std::size_t>(l)] > lam[static_cast<std::size_t>(r)];
    });

    ComplexEigh out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.vectors = ComplexMatrix(n, n);
    for (std::int64_t c = 0; c < n; ++c) {
        const std::int64_t src = order[static_cast<std::size_t>(c)];
        out.eigenvalues[static_cast<std::size_t>(c)] = lam[static_cast<std::size_t>(src)];
        for (std::int64_t r = 0; r < n; ++r) out.vectors(r, c) = w(r, src);
    }
    return out;
}

}  // namespace qtensor
