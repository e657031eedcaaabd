#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtensor/generator.hpp"
#include "qtensor/quat_matrix.hpp"
#include "qtensor/sylvester.hpp"

using namespace qtensor;

namespace {

double fro(const QuatTensor& t) { return frobenius_norm(t); }

struct Instance {
    SylvesterProblem problem;
    QuatTensor x0, y0;
};

// Constructively consistent instance: E = A X0 B + C Y0 D.
Instance consistent_instance(std::uint64_t seed, bool rank_deficient = false) {
    const Shape si{2, 2}, sj{3}, sk{2}, sl{2, 2}, sg{2}, sh{3};
    const QuatTensor a = rank_deficient ? generate_rank(si, sj, 2, seed)
                                        : generate_uniform(si, sj, seed);
    const QuatTensor b = rank_deficient ? generate_rank(sk, sl, 1, seed + 1)
                                        : generate_uniform(sk, sl, seed + 1);
    const QuatTensor c = generate_uniform(si, sg, seed + 2);
    const QuatTensor d = generate_uniform(sh, sl, seed + 3);
    QuatTensor x0 = generate_uniform(sj, sk, seed + 4);
    QuatTensor y0 = generate_uniform(sg, sh, seed + 5);
    const QuatTensor e = einstein_product(a, einstein_product(x0, b)) +
                         einstein_product(c, einstein_product(y0, d));
    return {SylvesterProblem(a, b, c, d, e), x0, y0};
}

double equation_residual(const SylvesterProblem& p, const QuatTensor& x,
                         const QuatTensor& y) {
    const QuatTensor lhs = einstein_product(p.a, einstein_product(x, p.b)) +
                           einstein_product(p.c, einstein_product(y, p.d));
    return fro(lhs - p.e) / std::max(1.0, fro(p.e));
}

FreeParameters random_params(const SylvesterProblem& p, std::uint64_t seed,
                             double amplitude) {
    FreeParameters u;
    u.u1 = amplitude * generate_uniform(p.c.right(), p.d.left(), seed);
    u.u2 = amplitude * generate_uniform(p.c.right(), p.d.left(), seed + 1);
    u.u3 = amplitude * generate_uniform(p.c.right(), p.d.left(), seed + 2);
    u.u4 = amplitude * generate_uniform(p.a.right(), p.b.left(), seed + 3);
    u.u5 = amplitude * generate_uniform(p.a.right(), p.b.left(), seed + 4);
    return u;
}

}  // namespace

TEST_CASE("problem construction validates conformability") {
    const QuatTensor a = generate_uniform(Shape{2}, Shape{3}, 1);
    const QuatTensor b = generate_uniform(Shape{2}, Shape{2}, 2);
    const QuatTensor c = generate_uniform(Shape{2}, Shape{2}, 3);
    const QuatTensor d = generate_uniform(Shape{3}, Shape{2}, 4);
    const QuatTensor e = generate_uniform(Shape{2}, Shape{2}, 5);
    CHECK_NOTHROW(SylvesterProblem(a, b, c, d, e));
    const QuatTensor bad_e = generate_uniform(Shape{3}, Shape{2}, 6);
    CHECK_THROWS_AS(SylvesterProblem(a, b, c, d, bad_e), DimensionMismatch);
}

TEST_CASE("intermediates match their defining formulas") {
    const Instance inst = consistent_instance(11000);
    const SolverIntermediates w = compute_intermediates(inst.problem);
    const QuatTensor p = einstein_product(projector_R(inst.problem.a), inst.problem.c);
    const QuatTensor q = einstein_product(inst.problem.d, projector_L(inst.problem.b));
    const QuatTensor s = einstein_product(inst.problem.c, w.l_p);
    CHECK(fro(w.p - p) <= 1e-12 * std::max(1.0, fro(p)));
    CHECK(fro(w.q - q) <= 1e-12 * std::max(1.0, fro(q)));
    CHECK(fro(w.s - s) <= 1e-12 * std::max(1.0, fro(s)));
}

TEST_CASE("zero right-hand side is trivially consistent") {
    Instance inst = consistent_instance(12000);
    const SylvesterProblem p(inst.problem.a, inst.problem.b, inst.problem.c,
                             inst.problem.d,
                             QuatTensor(inst.problem.e.left(), inst.problem.e.right()));
    const SolverReport r = check_consistency(p);
    CHECK(r.solvable);
    for (const auto& c : r.conditions) CHECK(c.value == 0.0);
}

TEST_CASE("constructively consistent instances pass and solve") {
    for (std::uint64_t seed : {100u, 200u, 300u}) {
        const Instance inst = consistent_instance(seed);
        const SolverReport check = check_consistency(inst.problem);
        CHECK(check.solvable);
        for (const auto& c : check.conditions) CHECK(c.value <= 1e-11);

        const SolverReport sol = solve(inst.problem);
        REQUIRE(sol.x);
        REQUIRE(sol.y);
        CHECK(*sol.equation_residual <= 1e-10);
        CHECK(equation_residual(inst.problem, *sol.x, *sol.y) <= 1e-10);
    }
}

TEST_CASE("rank-deficient coefficients still solve") {
    const Instance inst = consistent_instance(42000, /*rank_deficient=*/true);
    const SolverReport sol = solve(inst.problem);
    CHECK(*sol.equation_residual <= 1e-10);
}

TEST_CASE("identity coefficients split E") {
    const Shape s{2, 2};
    const QuatTensor id = QuatTensor::unit(s);
    const QuatTensor e = generate_uniform(s, s, 77);
    const SylvesterProblem p(id, id, id, id, e);
    const SolverReport sol = solve(p);
    CHECK(*sol.equation_residual <= 1e-12);
    const QuatTensor sum = *sol.x + *sol.y;
    CHECK(fro(sum - e) <= 1e-12 * std::max(1.0, fro(e)));
}

TEST_CASE("free parameters never break the equation") {
    const Instance inst = consistent_instance(500);
    for (int draw = 0; draw < 100; ++draw) {
        const FreeParameters u =
            random_params(inst.problem, 1000 + static_cast<std::uint64_t>(draw) * 7, 10.0);
        const SolverReport sol = solve(inst.problem, u);
        CHECK(*sol.equation_residual <= 1e-10);
    }
}

TEST_CASE("perturbed right-hand sides are flagged inconsistent") {
    const Instance inst = consistent_instance(600);
    // Push E out of range: R_A * W * L_B cannot be matched by any X, and is
    // built to violate the third/fourth conditions as well.
    const QuatTensor w =
        generate_uniform(inst.problem.e.left(), inst.problem.e.right(), 601);
    const QuatTensor ra = projector_R(inst.problem.a);
    const QuatTensor lb = projector_L(inst.problem.b);
    const QuatTensor e_bad =
        inst.problem.e + einstein_product(ra, einstein_product(w, lb));
    const SylvesterProblem bad(inst.problem.a, inst.problem.b, inst.problem.c,
                               inst.problem.d, e_bad);
    const SolverReport r = check_consistency(bad);
    CHECK_FALSE(r.solvable);
    double worst = 0.0;
    for (const auto& c : r.conditions) worst = std::max(worst, c.value);
    CHECK(worst > 1e-3);
    CHECK_THROWS_AS(solve(bad), Inconsistent);
}

TEST_CASE("recover_particular reproduces planted solutions") {
    for (std::uint64_t seed : {700u, 800u, 900u}) {
        const Instance inst = consistent_instance(seed);
        const auto [x, y] = recover_particular(inst.problem, inst.x0, inst.y0);
        CHECK(fro(x - inst.x0) <= 1e-9 * std::max(1.0, fro(inst.x0)));
        CHECK(fro(y - inst.y0) <= 1e-9 * std::max(1.0, fro(inst.y0)));
    }
}

TEST_CASE("recover_particular on the identity split") {
    const Shape s{2, 2};
    const QuatTensor id = QuatTensor::unit(s);
    const QuatTensor e = generate_uniform(s, s, 901);
    const SylvesterProblem p(id, id, id, id, e);
    const QuatTensor zero(s, s);
    const auto [x, y] = recover_particular(p, e, zero);
    CHECK(fro(x - e) <= 1e-11 * std::max(1.0, fro(e)));
    CHECK(fro(y) <= 1e-11 * std::max(1.0, fro(e)));

    // Zero pair against a zero right-hand side stays zero.
    const SylvesterProblem p0(id, id, id, id, QuatTensor(s, s));
    const auto [x0, y0] = recover_particular(p0, zero, zero);
    CHECK(fro(x0) == 0.0);
    CHECK(fro(y0) == 0.0);
}

TEST_CASE("recover_particular rejects non-solutions") {
    const Instance inst = consistent_instance(950);
    const QuatTensor junk =
        inst.x0 + generate_uniform(inst.x0.left(), inst.x0.right(), 951);
    CHECK_THROWS_AS(recover_particular(inst.problem, junk, inst.y0), NotASolution);
}

TEST_CASE("recover_particular is total on zero right-hand side") {
    Instance inst = consistent_instance(960);
    const QuatTensor zx(inst.x0.left(), inst.x0.right());
    const QuatTensor zy(inst.y0.left(), inst.y0.right());
    const SylvesterProblem p(inst.problem.a, inst.problem.b, inst.problem.c,
                             inst.problem.d,
                             QuatTensor(inst.problem.e.left(), inst.problem.e.right()));
    const auto [x, y] = recover_particular(p, zx, zy);
    CHECK(fro(x) <= 1e-12);
    CHECK(fro(y) <= 1e-12);
}

TEST_CASE("solve_axb") {
    const Shape s{2, 2};
    const QuatTensor id = QuatTensor::unit(s);
    const QuatTensor e = generate_uniform(s, s, 1001);
    // Identity coefficients: X = E exactly.
    const SolverReport r0 = solve_axb(id, id, e);
    CHECK(fro(*r0.x - e) <= 1e-13);

    const QuatTensor a = generate_uniform(Shape{2, 2}, Shape{3}, 1002);
    const QuatTensor b = generate_uniform(Shape{2}, Shape{2, 2}, 1003);
    const QuatTensor x0 = generate_uniform(Shape{3}, Shape{2}, 1004);
    const QuatTensor e1 = einstein_product(a, einstein_product(x0, b));
    const SolverReport r1 = solve_axb(a, b, e1);
    CHECK(*r1.equation_residual <= 1e-10);

    // Free parameters keep it a solution.
    const SolverReport r2 =
        solve_axb(a, b, e1, 3.0 * generate_uniform(Shape{3}, Shape{2}, 1005),
                  3.0 * generate_uniform(Shape{3}, Shape{2}, 1006));
    CHECK(*r2.equation_residual <= 1e-10);

    // Component outside the range of A: flagged via R_A*E.
    const QuatTensor w = generate_uniform(e1.left(), e1.right(), 1007);
    const QuatTensor e_bad =
        e1 + einstein_product(projector_R(a), w);
    CHECK_THROWS_AS(solve_axb(a, b, e_bad), Inconsistent);
    bool violated = false;
    try {
        solve_axb(a, b, e_bad);
    } catch (const Inconsistent&) {
        violated = true;
    }
    CHECK(violated);
}

TEST_CASE("solve_ax_yd") {
    const Shape si{2, 2};
    const QuatTensor id = QuatTensor::unit(si);
    const QuatTensor e = generate_uniform(si, si, 1101);
    // A = I: X = E, Y = 0 under zero parameters.
    const SolverReport r0 = solve_ax_yd(id, id, e);
    CHECK(fro(*r0.x - e) <= 1e-12);
    CHECK(fro(*r0.y) <= 1e-12);

    const QuatTensor a = generate_uniform(si, Shape{3}, 1102);
    const QuatTensor d = generate_uniform(Shape{2}, si, 1103);
    const QuatTensor x0 = generate_uniform(Shape{3}, si, 1104);
    const QuatTensor y0 = generate_uniform(si, Shape{2}, 1105);
    const QuatTensor e1 = einstein_product(a, x0) + einstein_product(y0, d);
    const SolverReport r1 = solve_ax_yd(a, d, e1);
    CHECK(*r1.equation_residual <= 1e-10);

    const SolverReport r2 = solve_ax_yd(
        a, d, e1, 2.0 * generate_uniform(Shape{3}, Shape{2}, 1106),
        2.0 * generate_uniform(Shape{3}, si, 1107),
        2.0 * generate_uniform(si, Shape{2}, 1108));
    CHECK(*r2.equation_residual <= 1e-10);

    // R_A * W * L_D perturbation violates the single condition.
    const QuatTensor w = generate_uniform(si, si, 1109);
    const QuatTensor e_bad =
        e1 + einstein_product(projector_R(a), einstein_product(w, projector_L(d)));
    const SolverReport rbad = check_consistency(
        SylvesterProblem(a, QuatTensor::unit(si), QuatTensor::unit(si), d, e_bad));
    (void)rbad;
    CHECK_THROWS_AS(solve_ax_yd(a, d, e_bad), Inconsistent);
}

TEST_CASE("tensor solve agrees with the flattened matrix-level route") {
    const Instance inst = consistent_instance(61000);
    const SolverReport sol = solve(inst.problem);

    // The same closed form assembled with matrix operations only.
    const QuatMatrix a = flatten(inst.problem.a);
    const QuatMatrix b = flatten(inst.problem.b);
    const QuatMatrix c = flatten(inst.problem.c);
    const QuatMatrix d = flatten(inst.problem.d);
    const QuatMatrix e = flatten(inst.problem.e);
    const QuatMatrix ad = pinv(a), bd = pinv(b), cd = pinv(c), dd = pinv(d);
    auto lproj = [](const QuatMatrix& m, const QuatMatrix& md) {
        return QuatMatrix::identity(m.cols()) - matmul(md, m);
    };
    auto rproj = [](const QuatMatrix& m, const QuatMatrix& md) {
        return QuatMatrix::identity(m.rows()) - matmul(m, md);
    };
    const QuatMatrix ra = rproj(a, ad), lb = lproj(b, bd);
    const QuatMatrix p = matmul(ra, c);
    const QuatMatrix q = matmul(d, lb);
    const double sc = std::max(1.0, frobenius_norm(c));
    const double sd = std::max(1.0, frobenius_norm(d));
    const QuatMatrix pd = pinv(p, -1.0, sc);
    const QuatMatrix qd = pinv(q, -1.0, sd);
    const QuatMatrix lp = lproj(p, pd);
    const QuatMatrix sm = matmul(c, lp);
    const QuatMatrix smd = pinv(sm, -1.0, sc);
    const QuatMatrix x = matmul(matmul(ad, e), bd) -
                         matmul(matmul(matmul(matmul(ad, c), pd), e), bd) -
                         matmul(matmul(matmul(ad, sm),
                                       matmul(matmul(cd, e),
                                              matmul(qd, matmul(d, bd)))),
                                QuatMatrix::identity(b.rows()));
    const QuatMatrix y =
        matmul(matmul(pd, e), dd) +
        matmul(matmul(smd, sm), matmul(cd, matmul(e, qd)));

    const QuatMatrix xt = flatten(*sol.x);
    const QuatMatrix yt = flatten(*sol.y);
    CHECK(frobenius_norm(xt - x) <= 1e-12 * std::max(1.0, frobenius_norm(x)));
    CHECK(frobenius_norm(yt - y) <= 1e-12 * std::max(1.0, frobenius_norm(y)));
}

TEST_CASE("solve_eta on constructive instances for every eta") {
    std::uint64_t seed = 2000;
    for (ImaginaryUnit eta : {ImaginaryUnit::i, ImaginaryUnit::j, ImaginaryUnit::k}) {
        const QuatTensor a = generate_uniform(Shape{2}, Shape{3}, seed++);
        const QuatTensor c = generate_uniform(Shape{2}, Shape{2}, seed++);
        const QuatTensor x0 = generate_eta_hermitian(Shape{3}, eta, seed++);
        const QuatTensor y0 = generate_eta_hermitian(Shape{2}, eta, seed++);
        const QuatTensor e =
            einstein_product(a, einstein_product(x0, eta_conj_transpose(a, eta))) +
            einstein_product(c, einstein_product(y0, eta_conj_transpose(c, eta)));
        REQUIRE(is_eta_hermitian(e, eta, 1e-12));

        const SolverReport sol = solve_eta(a, c, e, eta);
        CHECK(*sol.equation_residual <= 1e-10);
        // Symmetry is structural, not just within tolerance.
        CHECK(fro(*sol.x - eta_conj_transpose(*sol.x, eta)) <=
              1e-13 * std::max(1.0, fro(*sol.x)));
        CHECK(fro(*sol.y - eta_conj_transpose(*sol.y, eta)) <=
              1e-13 * std::max(1.0, fro(*sol.y)));
    }
}

TEST_CASE("solve_eta identity split") {
    const Shape s{2, 2};
    const QuatTensor id = QuatTensor::unit(s);
    for (ImaginaryUnit eta : {ImaginaryUnit::i, ImaginaryUnit::j, ImaginaryUnit::k}) {
        const QuatTensor e = generate_eta_hermitian(s, eta, 2100);
        const SolverReport sol = solve_eta(id, id, e, eta);
        CHECK(*sol.equation_residual <= 1e-12);
        CHECK(fro(*sol.x + *sol.y - e) <= 1e-12 * std::max(1.0, fro(e)));
    }
}

TEST_CASE("solve_eta rejects asymmetric right-hand sides") {
    const QuatTensor a = generate_uniform(Shape{2}, Shape{2}, 2200);
    const QuatTensor c = generate_uniform(Shape{2}, Shape{2}, 2201);
    const QuatTensor e = generate_uniform(Shape{2}, Shape{2}, 2202);
    CHECK_THROWS_AS(solve_eta(a, c, e, ImaginaryUnit::j), NotEtaHermitian);
}

TEST_CASE("solve_eta flags inconsistent instances") {
    // A = C = 0 with a nonzero eta-Hermitian E cannot be solved.
    const QuatTensor zero(Shape{2}, Shape{3});
    const QuatTensor zero_c(Shape{2}, Shape{2});
    const QuatTensor e = generate_eta_hermitian(Shape{2}, ImaginaryUnit::i, 2300);
    CHECK_THROWS_AS(solve_eta(zero, zero_c, e, ImaginaryUnit::i), Inconsistent);
}

TEST_CASE("solve_eta handles a kernel-heavy instance") {
    // A = 0 forces everything through the C term; P and S then collapse to
    // exact zeros plus rounding, which the sigma floor must absorb.
    const ImaginaryUnit eta = ImaginaryUnit::j;
    const QuatTensor a(Shape{2}, Shape{2});
    const QuatTensor c = generate_uniform(Shape{2}, Shape{2}, 2400);
    const QuatTensor y0 = generate_eta_hermitian(Shape{2}, eta, 2401);
    const QuatTensor e =
        einstein_product(c, einstein_product(y0, eta_conj_transpose(c, eta)));
    const SolverReport sol = solve_eta(a, c, e, eta);
    CHECK(*sol.equation_residual <= 1e-10);
}

TEST_CASE("solve_eta_single") {
    std::uint64_t seed = 2500;
    for (ImaginaryUnit eta : {ImaginaryUnit::i, ImaginaryUnit::j, ImaginaryUnit::k}) {
        const QuatTensor id = QuatTensor::unit(Shape{2});
        const QuatTensor e_id = generate_eta_hermitian(Shape{2}, eta, seed++);
        const SolverReport r0 = solve_eta_single(id, e_id, eta);
        CHECK(fro(*r0.x - e_id) <= 1e-12);

        const QuatTensor a = generate_uniform(Shape{2}, Shape{2, 2}, seed++);
        const QuatTensor x0 = generate_eta_hermitian(Shape{2, 2}, eta, seed++);
        const QuatTensor e =
            einstein_product(a, einstein_product(x0, eta_conj_transpose(a, eta)));
        const SolverReport r1 = solve_eta_single(a, e, eta);
        CHECK(r1.conditions.front().value <= 1e-11);
        CHECK(*r1.equation_residual <= 1e-10);
        CHECK(fro(*r1.x - eta_conj_transpose(*r1.x, eta)) <=
              1e-13 * std::max(1.0, fro(*r1.x)));

        // 100 parameter draws keep symmetry and the equation.
        for (int draw = 0; draw < 100; ++draw) {
            const QuatTensor u = 2.0 * generate_uniform(Shape{2, 2}, Shape{2, 2},
                                                        seed + 100 + draw);
            const SolverReport r = solve_eta_single(a, e, eta, u);
            CHECK(fro(*r.x - eta_conj_transpose(*r.x, eta)) <=
                  1e-13 * std::max(1.0, fro(*r.x)));
            CHECK(*r.equation_residual <= 1e-10);
        }
        seed += 300;
    }
}

TEST_CASE("solve_eta_single flags out-of-range right-hand sides") {
    const ImaginaryUnit eta = ImaginaryUnit::k;
    const QuatTensor a = generate_rank(Shape{2, 2}, Shape{2, 2}, 2, 2600);
    // Make an eta-Hermitian E that is not confined to range(A).
    const QuatTensor e = generate_eta_hermitian(Shape{2, 2}, eta, 2601);
    CHECK_THROWS_AS(solve_eta_single(a, e, eta), Inconsistent);
}
