#include "qtensor/sylvester.hpp"

#include <algorithm>
#include <cmath>

namespace qtensor {

namespace {

QuatTensor ein(const QuatTensor& a, const QuatTensor& b) {
    return einstein_product(a, b);
}

double scale_of(const QuatTensor& e) { return std::max(1.0, frobenius_norm(e)); }

QuatTensor zero_or(const std::optional<QuatTensor>& u, const Shape& left,
                   const Shape& right, const char* name) {
    if (!u) return QuatTensor(left, right);
    if (u->left() != left || u->right() != right) {
        throw DimensionMismatch(std::string("free parameter ") + name +
                                " must have shape " + to_string(left) + "|" +
                                to_string(right) + ", got " + to_string(u->left()) +
                                "|" + to_string(u->right()));
    }
    return *u;
}

QuatTensor unit_like_right(const QuatTensor& t) { return QuatTensor::unit(t.right()); }
QuatTensor unit_like_left(const QuatTensor& t) { return QuatTensor::unit(t.left()); }

}  // namespace

SylvesterProblem::SylvesterProblem(QuatTensor a_, QuatTensor b_, QuatTensor c_,
                                   QuatTensor d_, QuatTensor e_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)),
      e(std::move(e_)) {
    if (a.left() != e.left()) {
        throw DimensionMismatch("A and E must share left modes");
    }
    if (c.left() != e.left()) {
        throw DimensionMismatch("C and E must share left modes");
    }
    if (b.right() != e.right()) {
        throw DimensionMismatch("B and E must share right modes");
    }
    if (d.right() != e.right()) {
        throw DimensionMismatch("D and E must share right modes");
    }
}

SolverIntermediates compute_intermediates(const SylvesterProblem& pr) {
    SolverIntermediates w;
    const double scale_c = scale_of(pr.c);
    const double scale_d = scale_of(pr.d);

    w.pinv_a = pinv(pr.a);
    w.pinv_b = pinv(pr.b);
    w.pinv_c = pinv(pr.c);
    w.pinv_d = pinv(pr.d);

    w.l_a = unit_like_right(pr.a) - ein(w.pinv_a, pr.a);
    w.l_b = unit_like_right(pr.b) - ein(w.pinv_b, pr.b);
    w.l_d = unit_like_right(pr.d) - ein(w.pinv_d, pr.d);
    w.r_a = unit_like_left(pr.a) - ein(pr.a, w.pinv_a);
    w.r_b = unit_like_left(pr.b) - ein(pr.b, w.pinv_b);
    w.r_c = unit_like_left(pr.c) - ein(pr.c, w.pinv_c);
    w.r_d = unit_like_left(pr.d) - ein(pr.d, w.pinv_d);

    w.p = ein(w.r_a, pr.c);
    w.q = ein(pr.d, w.l_b);
    w.pinv_p = pinv(w.p, -1.0, scale_c);
    w.pinv_q = pinv(w.q, -1.0, scale_d);
    w.l_p = unit_like_right(w.p) - ein(w.pinv_p, w.p);
    w.l_q = unit_like_right(w.q) - ein(w.pinv_q, w.q);
    w.r_p = unit_like_left(w.p) - ein(w.p, w.pinv_p);
    w.r_q = unit_like_left(w.q) - ein(w.q, w.pinv_q);

    w.s = ein(pr.c, w.l_p);
    w.pinv_s = pinv(w.s, -1.0, scale_c);
    w.l_s = unit_like_right(w.s) - ein(w.pinv_s, w.s);

    return w;
}

namespace {

std::vector<ConditionResidual> condition_residuals(const SylvesterProblem& pr,
                                                   const SolverIntermediates& w) {
    const double scale = scale_of(pr.e);
    return {
        {"R_P*R_A*E", frobenius_norm(ein(w.r_p, ein(w.r_a, pr.e))) / scale},
        {"E*L_B*L_Q", frobenius_norm(ein(ein(pr.e, w.l_b), w.l_q)) / scale},
        {"R_A*E*L_D", frobenius_norm(ein(ein(w.r_a, pr.e), w.l_d)) / scale},
        {"R_C*E*L_B", frobenius_norm(ein(ein(w.r_c, pr.e), w.l_b)) / scale},
    };
}

bool all_within(const std::vector<ConditionResidual>& conds, double tol) {
    return std::all_of(conds.begin(), conds.end(),
                       [&](const ConditionResidual& c) { return c.value <= tol; });
}

std::string worst_condition(const std::vector<ConditionResidual>& conds) {
    const auto it = std::max_element(
        conds.begin(), conds.end(),
        [](const ConditionResidual& l, const ConditionResidual& r) {
            return l.value < r.value;
        });
    return it->formula + " = " + std::to_string(it->value);
}

SolverReport solve_with(const SylvesterProblem& pr, const SolverIntermediates& w,
                        const FreeParameters& params, double tol) {
    SolverReport report;
    report.conditions = condition_residuals(pr, w);
    report.solvable = all_within(report.conditions, tol);
    if (!report.solvable) {
        throw Inconsistent("solvability conditions violated, worst: " +
                           worst_condition(report.conditions));
    }

    const QuatTensor u1 = zero_or(params.u1, pr.c.right(), pr.d.left(), "U1");
    const QuatTensor u2 = zero_or(params.u2, pr.c.right(), pr.d.left(), "U2");
    const QuatTensor u3 = zero_or(params.u3, pr.c.right(), pr.d.left(), "U3");
    const QuatTensor u4 = zero_or(params.u4, pr.a.right(), pr.b.left(), "U4");
    const QuatTensor u5 = zero_or(params.u5, pr.a.right(), pr.b.left(), "U5");

    const QuatTensor ae = ein(w.pinv_a, pr.e);
    QuatTensor x = ein(ae, w.pinv_b);
    x = x - ein(w.pinv_a, ein(pr.c, ein(w.pinv_p, ein(pr.e, w.pinv_b))));
    const QuatTensor as = ein(w.pinv_a, w.s);
    x = x - ein(as, ein(w.pinv_c, ein(pr.e, ein(w.pinv_q, ein(pr.d, w.pinv_b)))));
    x = x - ein(as, ein(u2, ein(w.r_q, ein(pr.d, w.pinv_b))));
    x = x + ein(w.l_a, u4);
    x = x + ein(u5, w.r_b);

    QuatTensor y = ein(w.pinv_p, ein(pr.e, w.pinv_d));
    y = y + ein(w.pinv_s, ein(w.s, ein(w.pinv_c, ein(pr.e, w.pinv_q))));
    y = y + ein(w.l_p, ein(w.l_s, u1));
    y = y + ein(w.l_p, ein(u2, w.r_q));
    y = y + ein(u3, w.r_d);

    const QuatTensor lhs = ein(pr.a, ein(x, pr.b)) + ein(pr.c, ein(y, pr.d));
    report.equation_residual = frobenius_norm(lhs - pr.e) / scale_of(pr.e);
    report.x = std::move(x);
    report.y = std::move(y);
    return report;
}

}  // namespace

SolverReport check_consistency(const SylvesterProblem& problem, double tol) {
    SolverReport report;
    report.conditions = condition_residuals(problem, compute_intermediates(problem));
    report.solvable = all_within(report.conditions, tol);
    return report;
}

SolverReport solve(const SylvesterProblem& problem, const FreeParameters& params,
                   double tol) {
    return solve_with(problem, compute_intermediates(problem), params, tol);
}

std::pair<QuatTensor, QuatTensor> recover_particular(const SylvesterProblem& pr,
                                                     const QuatTensor& x0,
                                                     const QuatTensor& y0,
                                                     double tol) {
    const QuatTensor lhs = ein(pr.a, ein(x0, pr.b)) + ein(pr.c, ein(y0, pr.d));
    const double res = frobenius_norm(lhs - pr.e) / scale_of(pr.e);
    if (res > tol) {
        throw NotASolution("claimed particular solution has residual " +
                           std::to_string(res));
    }
    const SolverIntermediates w = compute_intermediates(pr);
    FreeParameters params;
    params.u1 = ein(y0, ein(w.q, w.pinv_q));
    params.u2 = ein(y0, ein(pr.d, w.pinv_d));
    params.u3 = y0;
    params.u4 = ein(x0, ein(pr.b, w.pinv_b));
    params.u5 = x0;
    const SolverReport report = solve_with(pr, w, params, tol);
    return {*report.x, *report.y};
}

SolverReport solve_axb(const QuatTensor& a, const QuatTensor& b, const QuatTensor& e,
                       const std::optional<QuatTensor>& u,
                       const std::optional<QuatTensor>& v, double tol) {
    if (a.left() != e.left() || b.right() != e.right()) {
        throw DimensionMismatch("A*X*B = E: nonconformable shapes");
    }
    const QuatTensor pinv_a = pinv(a);
    const QuatTensor pinv_b = pinv(b);
    const QuatTensor l_a = unit_like_right(a) - ein(pinv_a, a);
    const QuatTensor l_b = unit_like_right(b) - ein(pinv_b, b);
    const QuatTensor r_a = unit_like_left(a) - ein(a, pinv_a);
    const QuatTensor r_b = unit_like_left(b) - ein(b, pinv_b);

    const double scale = scale_of(e);
    SolverReport report;
    report.conditions = {
        {"R_A*E", frobenius_norm(ein(r_a, e)) / scale},
        {"E*L_B", frobenius_norm(ein(e, l_b)) / scale},
    };
    report.solvable = all_within(report.conditions, tol);
    if (!report.solvable) {
        throw Inconsistent("solvability conditions violated, worst: " +
                           worst_condition(report.conditions));
    }

    const QuatTensor uu = zero_or(u, a.right(), b.left(), "U");
    const QuatTensor vv = zero_or(v, a.right(), b.left(), "V");
    QuatTensor x = ein(pinv_a, ein(e, pinv_b));
    x = x + ein(l_a, uu);
    x = x + ein(vv, r_b);
    report.equation_residual =
        frobenius_norm(ein(a, ein(x, b)) - e) / scale;
    report.x = std::move(x);
    return report;
}

SolverReport solve_ax_yd(const QuatTensor& a, const QuatTensor& d, const QuatTensor& e,
                         const std::optional<QuatTensor>& u1,
                         const std::optional<QuatTensor>& u2,
                         const std::optional<QuatTensor>& u3, double tol) {
    if (a.left() != e.left() || d.right() != e.right()) {
        throw DimensionMismatch("A*X + Y*D = E: nonconformable shapes");
    }
    const QuatTensor pinv_a = pinv(a);
    const QuatTensor pinv_d = pinv(d);
    const QuatTensor l_a = unit_like_right(a) - ein(pinv_a, a);
    const QuatTensor l_d = unit_like_right(d) - ein(pinv_d, d);
    const QuatTensor r_a = unit_like_left(a) - ein(a, pinv_a);
    const QuatTensor r_d = unit_like_left(d) - ein(d, pinv_d);

    const double scale = scale_of(e);
    SolverReport report;
    report.conditions = {
        {"R_A*E*L_D", frobenius_norm(ein(ein(r_a, e), l_d)) / scale},
    };
    report.solvable = all_within(report.conditions, tol);
    if (!report.solvable) {
        throw Inconsistent("solvability condition violated: " +
                           worst_condition(report.conditions));
    }

    const QuatTensor p1 = zero_or(u1, a.right(), d.left(), "U1");
    const QuatTensor p2 = zero_or(u2, a.right(), e.right(), "U2");
    const QuatTensor p3 = zero_or(u3, e.left(), d.left(), "U3");

    QuatTensor x = ein(pinv_a, e);
    x = x - ein(p1, d);
    x = x + ein(l_a, p2);
    QuatTensor y = ein(ein(r_a, e), pinv_d);
    y = y + ein(a, p1);
    y = y + ein(p3, r_d);

    report.equation_residual =
        frobenius_norm(ein(a, x) + ein(y, d) - e) / scale;
    report.x = std::move(x);
    report.y = std::move(y);
    return report;
}

namespace {

void require_eta_symmetric(const QuatTensor& e, ImaginaryUnit eta, double tol) {
    if (e.left() != e.right()) {
        throw DimensionMismatch("right-hand side must be square over its modes");
    }
    if (!is_eta_hermitian(e, eta, tol)) {
        const QuatTensor diff = e - eta_conj_transpose(e, eta);
        std::size_t worst = 0;
        for (std::size_t t = 1; t < diff.data().size(); ++t) {
            if (norm_sq(diff.data()[t]) > norm_sq(diff.data()[worst])) worst = t;
        }
        throw NotEtaHermitian(
            std::string("right-hand side is not ") + to_string(eta) +
            "-Hermitian within tolerance; worst asymmetry " +
            to_string(diff.data()[worst]));
    }
}

QuatTensor symmetrize(const QuatTensor& t, ImaginaryUnit eta) {
    return 0.5 * (t + eta_conj_transpose(t, eta));
}

}  // namespace

SolverReport solve_eta(const QuatTensor& a, const QuatTensor& c, const QuatTensor& e,
                       ImaginaryUnit eta, const FreeParameters& params, double tol) {
    require_eta_symmetric(e, eta, tol);
    const SylvesterProblem pr(a, eta_conj_transpose(a, eta), c,
                              eta_conj_transpose(c, eta), symmetrize(e, eta));
    SolverReport report = solve(pr, params, tol);
    report.x = symmetrize(*report.x, eta);
    report.y = symmetrize(*report.y, eta);
    const QuatTensor lhs =
        ein(pr.a, ein(*report.x, pr.b)) + ein(pr.c, ein(*report.y, pr.d));
    report.equation_residual = frobenius_norm(lhs - pr.e) / scale_of(pr.e);
    return report;
}

SolverReport solve_eta_single(const QuatTensor& a, const QuatTensor& e,
                              ImaginaryUnit eta, const std::optional<QuatTensor>& u,
                              double tol) {
    require_eta_symmetric(e, eta, tol);
    if (a.left() != e.left()) {
        throw DimensionMismatch("A and E must share left modes");
    }
    const QuatTensor es = symmetrize(e, eta);
    const QuatTensor pinv_a = pinv(a);
    const QuatTensor l_a = unit_like_right(a) - ein(pinv_a, a);
    const QuatTensor r_a = unit_like_left(a) - ein(a, pinv_a);

    const double scale = scale_of(es);
    SolverReport report;
    report.conditions = {
        {"R_A*E", frobenius_norm(ein(r_a, es)) / scale},
    };
    report.solvable = all_within(report.conditions, tol);
    if (!report.solvable) {
        throw Inconsistent("solvability condition violated: " +
                           worst_condition(report.conditions));
    }

    const QuatTensor uu = zero_or(u, a.right(), a.right(), "U");
    QuatTensor x = ein(pinv_a, ein(es, eta_conj_transpose(pinv_a, eta)));
    x = x + ein(l_a, uu);
    x = x + ein(eta_conj_transpose(uu, eta), eta_conj_transpose(l_a, eta));

    report.equation_residual =
        frobenius_norm(ein(a, ein(x, eta_conj_transpose(a, eta))) - es) / scale;
    report.x = std::move(x);
    return report;
}

}  // namespace qtensor
