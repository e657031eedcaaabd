#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtensor/quat_tensor.hpp"

namespace qtensor {

// Coefficients of A * X * B + C * Y * D = E with shapes
//   A: I|J, B: K|L, C: I|G, D: H|L, E: I|L,
// so that X: J|K and Y: G|H.
struct SylvesterProblem {
    QuatTensor a, b, c, d, e;

    SylvesterProblem(QuatTensor a_, QuatTensor b_, QuatTensor c_, QuatTensor d_,
                     QuatTensor e_);
};

// P = R_A * C, Q = D * L_B, S = C * L_P, plus every pseudoinverse and
// projector the solution formulas reuse. The pseudoinverses of P, Q, S use a
// sigma floor tied to ||C|| resp. ||D||: these products of projectors can be
// exact zeros that surface as pure rounding noise, and a noise matrix must
// not be treated as full rank.
struct SolverIntermediates {
    QuatTensor p, q, s;
    QuatTensor pinv_a, pinv_b, pinv_c, pinv_d, pinv_p, pinv_q, pinv_s;
    QuatTensor l_a, l_b, l_d, l_p, l_q, l_s;
    QuatTensor r_a, r_b, r_c, r_d, r_p, r_q;
};

SolverIntermediates compute_intermediates(const SylvesterProblem& problem);

// Arbitrary tensors of the shapes the solution formulas require; absent
// entries mean zero. u1, u2, u3: G|H.  u4, u5: J|K.
struct FreeParameters {
    std::optional<QuatTensor> u1, u2, u3, u4, u5;
};

struct ConditionResidual {
    std::string formula;
    double value;  // Frobenius norm normalized by max(1, ||E||_F)
};

struct SolverReport {
    std::vector<ConditionResidual> conditions;
    bool solvable = false;
    std::optional<QuatTensor> x, y;
    std::optional<double> equation_residual;  // relative to max(1, ||E||_F)
};

// The four solvability residuals R_P*R_A*E, E*L_B*L_Q, R_A*E*L_D, R_C*E*L_B,
// each normalized by max(1, ||E||_F); solvable iff all <= tol.
SolverReport check_consistency(const SylvesterProblem& problem, double tol = 1e-10);

// General solution assembled term by term:
//   X = A^+ E B^+ - A^+ C P^+ E B^+ - A^+ S C^+ E Q^+ D B^+
//       - A^+ S U2 R_Q D B^+ + L_A U4 + U5 R_B
//   Y = P^+ E D^+ + S^+ S C^+ E Q^+ + L_P L_S U1 + L_P U2 R_Q + U3 R_D
// Throws Inconsistent when the conditions fail at tol.
SolverReport solve(const SylvesterProblem& problem, const FreeParameters& params = {},
                   double tol = 1e-10);

// Executable completeness: reproduces a given solution (x0, y0) by choosing
//   U1 = Y0 Q Q^+, U2 = Y0 D D^+, U3 = Y0, U4 = X0 B B^+, U5 = X0.
// Throws NotASolution when (x0, y0) fails the equation at tol.
std::pair<QuatTensor, QuatTensor> recover_particular(const SylvesterProblem& problem,
                                                     const QuatTensor& x0,
                                                     const QuatTensor& y0,
                                                     double tol = 1e-10);

// A * X * B = E; consistent iff R_A*E = 0 and E*L_B = 0;
// X = A^+ E B^+ + L_A U + V R_B.
SolverReport solve_axb(const QuatTensor& a, const QuatTensor& b, const QuatTensor& e,
                       const std::optional<QuatTensor>& u = std::nullopt,
                       const std::optional<QuatTensor>& v = std::nullopt,
                       double tol = 1e-10);

// A * X + Y * D = E; consistent iff R_A*E*L_D = 0;
// X = A^+ E - U1 D + L_A U2, Y = R_A E D^+ + A U1 + U3 R_D.
SolverReport solve_ax_yd(const QuatTensor& a, const QuatTensor& d, const QuatTensor& e,
                         const std::optional<QuatTensor>& u1 = std::nullopt,
                         const std::optional<QuatTensor>& u2 = std::nullopt,
                         const std::optional<QuatTensor>& u3 = std::nullopt,
                         double tol = 1e-10);

// A X A^{eta*} + C Y C^{eta*} = E with eta-Hermitian X, Y and E = E^{eta*}:
// solved through the substitution B := A^{eta*}, D := C^{eta*}, then
// symmetrized as X = (X^ + X^{eta*})/2 and likewise for Y. E is symmetrized
// to (E + E^{eta*})/2 first; beyond tol this throws NotEtaHermitian.
SolverReport solve_eta(const QuatTensor& a, const QuatTensor& c, const QuatTensor& e,
                       ImaginaryUnit eta, const FreeParameters& params = {},
                       double tol = 1e-10);

// A X A^{eta*} = E, X eta-Hermitian; consistent iff R_A*E = 0;
// X = A^+ E (A^+)^{eta*} + L_A U + U^{eta*} (L_A)^{eta*}.
SolverReport solve_eta_single(const QuatTensor& a, const QuatTensor& e,
                              ImaginaryUnit eta,
                              const std::optional<QuatTensor>& u = std::nullopt,
                              double tol = 1e-10);

}  // namespace qtensor
