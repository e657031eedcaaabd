// qtensor: command-line front end for quaternion tensor decompositions and
// generalized Sylvester tensor equations.
//
// Exit codes: 0 ok, 2 inconsistent equation, 3 file/format error,
// 4 dimension mismatch, 5 structure precondition, 6 convergence failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtensor/generator.hpp"
#include "qtensor/qten_io.hpp"
#include "qtensor/sylvester.hpp"

namespace {

using json = nlohmann::ordered_json;
using qtensor::QuatTensor;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

// Tolerance resolution: flag wins over QTENSOR_TOL, which wins over the
// built-in default.
double resolve_tol(const std::optional<double>& flag, double fallback) {
    if (flag) return *flag;
    if (const char* env = std::getenv("QTENSOR_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw qtensor::FormatError("QTENSOR_TOL is not a number: " +
                                       std::string(env));
        }
    }
    return fallback;
}

void write_report(const std::string& path, const json& report) {
    std::ofstream out(path);
    if (!out) {
        throw qtensor::FormatError("cannot open report for writing: " + path);
    }
    out << report.dump(2) << "\n";
}

std::string default_report_path(const std::string& primary_output) {
    return primary_output + ".report";
}

json positions_json(const std::vector<std::pair<qtensor::MultiIndex,
                                                qtensor::MultiIndex>>& positions) {
    json arr = json::array();
    for (const auto& [p, q] : positions) {
        arr.push_back(json{{"p", p}, {"q", q}});
    }
    return arr;
}

json conditions_json(const std::vector<qtensor::ConditionResidual>& conds) {
    json obj = json::object();
    for (const auto& c : conds) obj[c.formula] = c.value;
    return obj;
}

double relative_residual(const QuatTensor& lhs, const QuatTensor& rhs) {
    return qtensor::frobenius_norm(lhs - rhs) /
           std::max(1.0, qtensor::frobenius_norm(rhs));
}

int run_flatten(const std::string& in, const std::string& out) {
    const QuatTensor t = qtensor::read_qten_file(in);
    const qtensor::QuatMatrix m = qtensor::flatten(t);
    qtensor::write_qten_file(
        out, qtensor::unflatten(m, qtensor::Shape{m.rows()}, qtensor::Shape{m.cols()}));
    return 0;
}

int run_unflatten(const std::string& in, const std::vector<std::int64_t>& left,
                  const std::vector<std::int64_t>& right, const std::string& out) {
    const QuatTensor t = qtensor::read_qten_file(in);
    qtensor::write_qten_file(
        out, qtensor::unflatten(qtensor::flatten(t), qtensor::Shape{left},
                                qtensor::Shape{right}));
    return 0;
}

int run_svd(const std::string& in, const std::string& out_u, const std::string& out_b,
            const std::string& out_v, const std::optional<double>& tol_flag,
            const std::string& report_path) {
    Timer timer;
    const QuatTensor a = qtensor::read_qten_file(in);
    const double tol_rank = resolve_tol(tol_flag, -1.0);
    const qtensor::TensorSvd s = qtensor::tensor_svd(a, tol_rank);
    qtensor::write_qten_file(out_u, s.u);
    qtensor::write_qten_file(out_b, s.b);
    qtensor::write_qten_file(out_v, s.v);

    const QuatTensor recon = qtensor::einstein_product(
        s.u, qtensor::einstein_product(s.b, qtensor::conj_transpose(s.v)));
    json report;
    report["command"] = "svd";
    report["inputs"] = {{"in", in}};
    report["outputs"] = {{"u", out_u}, {"b", out_b}, {"v", out_v}};
    report["tol_rank"] = tol_rank < 0 ? json("default") : json(tol_rank);
    report["rank"] = s.rank;
    report["singvals"] = s.singvals;
    report["positions"] = positions_json(s.positions);
    report["residuals"] = {
        {"U*B*V^t reconstruction", relative_residual(recon, a)},
    };
    report["timings_ms"] = {{"total", timer.elapsed_ms()}};
    write_report(report_path.empty() ? default_report_path(out_b) : report_path,
                 report);
    return 0;
}

int run_pinv(const std::string& in, const std::string& out,
             const std::optional<double>& tol_flag, const std::string& report_path) {
    Timer timer;
    const QuatTensor a = qtensor::read_qten_file(in);
    const double tol_rank = resolve_tol(tol_flag, -1.0);
    const QuatTensor x = qtensor::pinv(a, tol_rank);
    qtensor::write_qten_file(out, x);

    namespace qt = qtensor;
    const double scale =
        std::max({1.0, qt::frobenius_norm(a), qt::frobenius_norm(x)});
    const QuatTensor ax = qt::einstein_product(a, x);
    const QuatTensor xa = qt::einstein_product(x, a);
    // The inverse table: 1/d_t lands at the swapped home (q_t, p_t).
    const qtensor::TensorSvd svd_of_a = qtensor::tensor_svd(a, tol_rank);
    json inverse_table = json::array();
    for (std::size_t t = 0; t < svd_of_a.positions.size(); ++t) {
        inverse_table.push_back(json{{"value", 1.0 / svd_of_a.singvals[t]},
                                     {"q", svd_of_a.positions[t].second},
                                     {"p", svd_of_a.positions[t].first}});
    }
    json report;
    report["command"] = "pinv";
    report["inputs"] = {{"in", in}};
    report["outputs"] = {{"pinv", out}};
    report["tol_rank"] = tol_rank < 0 ? json("default") : json(tol_rank);
    report["rank"] = svd_of_a.rank;
    report["singvals"] = svd_of_a.singvals;
    report["inverse_table"] = inverse_table;
    report["residuals"] = {
        {"A*X*A=A", qt::frobenius_norm(qt::einstein_product(ax, a) - a) / scale},
        {"X*A*X=X", qt::frobenius_norm(qt::einstein_product(xa, x) - x) / scale},
        {"(A*X)*=A*X", qt::frobenius_norm(qt::conj_transpose(ax) - ax) / scale},
        {"(X*A)*=X*A", qt::frobenius_norm(qt::conj_transpose(xa) - xa) / scale},
    };
    report["timings_ms"] = {{"total", timer.elapsed_ms()}};
    write_report(report_path.empty() ? default_report_path(out) : report_path, report);
    return 0;
}

int run_rankdec(const std::string& in, const std::string& out_p,
                const std::string& out_b, const std::string& out_q,
                const std::optional<double>& tol_flag,
                const std::string& report_path) {
    Timer timer;
    const QuatTensor a = qtensor::read_qten_file(in);
    const double tol_rank = resolve_tol(tol_flag, -1.0);
    const qtensor::TensorRankDecomposition d =
        qtensor::tensor_rank_decomposition(a, tol_rank);
    qtensor::write_qten_file(out_p, d.p);
    qtensor::write_qten_file(out_b, d.b);
    qtensor::write_qten_file(out_q, d.q);

    const QuatTensor recon =
        qtensor::einstein_product(d.p, qtensor::einstein_product(d.b, d.q));
    json report;
    report["command"] = "rankdec";
    report["inputs"] = {{"in", in}};
    report["outputs"] = {{"p", out_p}, {"b", out_b}, {"q", out_q}};
    report["tol_rank"] = tol_rank < 0 ? json("default") : json(tol_rank);
    report["rank"] = d.rank;
    report["positions"] = positions_json(d.positions);
    report["residuals"] = {
        {"P*B*Q reconstruction", relative_residual(recon, a)},
    };
    report["timings_ms"] = {{"total", timer.elapsed_ms()}};
    write_report(report_path.empty() ? default_report_path(out_b) : report_path,
                 report);
    return 0;
}

int run_etadec(const std::string& in, const std::string& eta_name,
               const std::string& out_u, const std::string& out_b,
               const std::optional<double>& tol_flag, const std::string& report_path) {
    Timer timer;
    const QuatTensor a = qtensor::read_qten_file(in);
    const qtensor::ImaginaryUnit eta = qtensor::parse_imaginary_unit(eta_name);
    const double tol = resolve_tol(tol_flag, 1e-10);
    const qtensor::TensorEtaDecomposition d =
        qtensor::tensor_eta_decomposition(a, eta, -1.0, tol);
    qtensor::write_qten_file(out_u, d.u);
    qtensor::write_qten_file(out_b, d.b);

    const QuatTensor recon = qtensor::einstein_product(
        d.u, qtensor::einstein_product(d.b, qtensor::eta_conj_transpose(d.u, eta)));
    json report;
    report["command"] = "etadec";
    report["inputs"] = {{"in", in}};
    report["eta"] = eta_name;
    report["outputs"] = {{"u", out_u}, {"b", out_b}};
    report["tol"] = tol;
    report["rank"] = d.rank;
    report["singvals"] = d.sigma;
    report["positions"] = positions_json(d.positions);
    report["residuals"] = {
        {"U*B*U^{eta*} reconstruction", relative_residual(recon, a)},
    };
    report["timings_ms"] = {{"total", timer.elapsed_ms()}};
    write_report(report_path.empty() ? default_report_path(out_b) : report_path,
                 report);
    return 0;
}

std::optional<QuatTensor> maybe_read(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return qtensor::read_qten_file(path);
}

int run_solve(const std::string& a_path, const std::string& b_path,
              const std::string& c_path, const std::string& d_path,
              const std::string& e_path, const std::string& out_x,
              const std::string& out_y, const std::vector<std::string>& u_paths,
              const std::optional<double>& tol_flag, const std::string& report_path) {
    Timer timer;
    const qtensor::SylvesterProblem problem(
        qtensor::read_qten_file(a_path), qtensor::read_qten_file(b_path),
        qtensor::read_qten_file(c_path), qtensor::read_qten_file(d_path),
        qtensor::read_qten_file(e_path));
    qtensor::FreeParameters params;
    params.u1 = maybe_read(u_paths[0]);
    params.u2 = maybe_read(u_paths[1]);
    params.u3 = maybe_read(u_paths[2]);
    params.u4 = maybe_read(u_paths[3]);
    params.u5 = maybe_read(u_paths[4]);
    const double tol = resolve_tol(tol_flag, 1e-10);

    const qtensor::SolverReport check = qtensor::check_consistency(problem, tol);
    json report;
    report["command"] = "solve";
    report["inputs"] = {{"A", a_path}, {"B", b_path}, {"C", c_path},
                        {"D", d_path}, {"E", e_path}};
    report["tol"] = tol;
    report["residuals"] = conditions_json(check.conditions);
    report["solvable"] = check.solvable;
    const std::string rpath =
        report_path.empty() ? default_report_path(out_x) : report_path;
    if (!check.solvable) {
        report["timings_ms"] = {{"total", timer.elapsed_ms()}};
        write_report(rpath, report);
        std::cerr << "inconsistent: see " << rpath << "\n";
        return 2;
    }
    const qtensor::SolverReport sol = qtensor::solve(problem, params, tol);
    qtensor::write_qten_file(out_x, *sol.x);
    qtensor::write_qten_file(out_y, *sol.y);
    report["outputs"] = {{"x", out_x}, {"y", out_y}};
    report["residuals"]["A*X*B+C*Y*D=E"] = *sol.equation_residual;
    report["timings_ms"] = {{"total", timer.elapsed_ms()}};
    write_report(rpath, report);
    return 0;
}

int run_solve_eta(const std::string& a_path, const std::string& c_path,
                  const std::string& e_path, const std::string& eta_name,
                  const std::string& out_x, const std::string& out_y,
                  const std::optional<double>& tol_flag,
                  const std::string& report_path) {
    Timer timer;
    const QuatTensor a = qtensor::read_qten_file(a_path);
    const QuatTensor c = qtensor::read_qten_file(c_path);
    const QuatTensor e = qtensor::read_qten_file(e_path);
    const qtensor::ImaginaryUnit eta = qtensor::parse_imaginary_unit(eta_name);
    const double tol = resolve_tol(tol_flag, 1e-10);

    json report;
    report["command"] = "solve-eta";
    report["inputs"] = {{"A", a_path}, {"C", c_path}, {"E", e_path}};
    report["eta"] = eta_name;
    report["tol"] = tol;
    const std::string rpath =
        report_path.empty() ? default_report_path(out_x) : report_path;
    try {
        const qtensor::SolverReport sol = qtensor::solve_eta(a, c, e, eta, {}, tol);
        qtensor::write_qten_file(out_x, *sol.x);
        qtensor::write_qten_file(out_y, *sol.y);
        report["residuals"] = conditions_json(sol.conditions);
        report["residuals"]["A*X*A^{eta*}+C*Y*C^{eta*}=E"] = *sol.equation_residual;
        report["residuals"]["X=X^{eta*}"] =
            qtensor::frobenius_norm(*sol.x -
                                    qtensor::eta_conj_transpose(*sol.x, eta)) /
            std::max(1.0, qtensor::frobenius_norm(*sol.x));
        report["residuals"]["Y=Y^{eta*}"] =
            qtensor::frobenius_norm(*sol.y -
                                    qtensor::eta_conj_transpose(*sol.y, eta)) /
            std::max(1.0, qtensor::frobenius_norm(*sol.y));
        report["outputs"] = {{"x", out_x}, {"y", out_y}};
        report["solvable"] = true;
        report["timings_ms"] = {{"total", timer.elapsed_ms()}};
        write_report(rpath, report);
        return 0;
    } catch (const qtensor::Inconsistent& err) {
        report["solvable"] = false;
        report["error"] = err.what();
        report["timings_ms"] = {{"total", timer.elapsed_ms()}};
        write_report(rpath, report);
        std::cerr << "inconsistent: " << err.what() << "\n";
        return 2;
    }
}

int run_gen(const std::vector<std::int64_t>& left, const std::vector<std::int64_t>& right,
            std::uint64_t seed, std::optional<std::int64_t> rank, bool eta_hermitian,
            const std::string& eta_name, const std::string& out) {
    const qtensor::Shape lshape{left};
    const qtensor::Shape rshape{right};
    QuatTensor t;
    if (eta_hermitian) {
        if (lshape != rshape) {
            throw qtensor::DimensionMismatch(
                "--eta-hermitian requires identical left and right shapes");
        }
        t = qtensor::generate_eta_hermitian(
            lshape, qtensor::parse_imaginary_unit(eta_name), seed, rank);
    } else if (rank) {
        t = qtensor::generate_rank(lshape, rshape, *rank, seed);
    } else {
        t = qtensor::generate_uniform(lshape, rshape, seed);
    }
    qtensor::write_qten_file(out, t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternion tensor algebra tool"};
    app.require_subcommand(1);

    std::string in, out, out_u, out_b, out_v, out_p, out_q, out_x, out_y;
    std::string a_path, b_path, c_path, d_path, e_path;
    std::string eta_name = "i";
    std::string report_path;
    std::vector<std::string> u_paths(5);
    std::vector<std::int64_t> left, right;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> rank;
    bool eta_hermitian = false;

    CLI::App* cmd_flatten = app.add_subcommand("flatten", "tensor -> matrix under f");
    cmd_flatten->add_option("in", in)->required();
    cmd_flatten->add_option("--out", out)->required();

    CLI::App* cmd_unflatten =
        app.add_subcommand("unflatten", "matrix -> tensor under f^{-1}");
    cmd_unflatten->add_option("in", in)->required();
    cmd_unflatten->add_option("--left", left)->required();
    cmd_unflatten->add_option("--right", right)->required();
    cmd_unflatten->add_option("--out", out)->required();

    CLI::App* cmd_svd = app.add_subcommand("svd", "tensor SVD A = U*B*V^*");
    cmd_svd->add_option("in", in)->required();
    cmd_svd->add_option("--out-u", out_u)->required();
    cmd_svd->add_option("--out-b", out_b)->required();
    cmd_svd->add_option("--out-v", out_v)->required();
    cmd_svd->add_option("--tol", tol);
    cmd_svd->add_option("--report", report_path);

    CLI::App* cmd_pinv = app.add_subcommand("pinv", "Moore-Penrose inverse");
    cmd_pinv->add_option("in", in)->required();
    cmd_pinv->add_option("--out", out)->required();
    cmd_pinv->add_option("--tol", tol);
    cmd_pinv->add_option("--report", report_path);

    CLI::App* cmd_rankdec =
        app.add_subcommand("rankdec", "rank decomposition A = P*B*Q");
    cmd_rankdec->add_option("in", in)->required();
    cmd_rankdec->add_option("--out-p", out_p)->required();
    cmd_rankdec->add_option("--out-b", out_b)->required();
    cmd_rankdec->add_option("--out-q", out_q)->required();
    cmd_rankdec->add_option("--tol", tol);
    cmd_rankdec->add_option("--report", report_path);

    CLI::App* cmd_etadec =
        app.add_subcommand("etadec", "eta-Hermitian decomposition A = U*B*U^{eta*}");
    cmd_etadec->add_option("in", in)->required();
    cmd_etadec->add_option("--eta", eta_name)->required();
    cmd_etadec->add_option("--out-u", out_u)->required();
    cmd_etadec->add_option("--out-b", out_b)->required();
    cmd_etadec->add_option("--tol", tol);
    cmd_etadec->add_option("--report", report_path);

    CLI::App* cmd_solve =
        app.add_subcommand("solve", "general solution of A*X*B + C*Y*D = E");
    cmd_solve->add_option("--A", a_path)->required();
    cmd_solve->add_option("--B", b_path)->required();
    cmd_solve->add_option("--C", c_path)->required();
    cmd_solve->add_option("--D", d_path)->required();
    cmd_solve->add_option("--E", e_path)->required();
    cmd_solve->add_option("--out-x", out_x)->required();
    cmd_solve->add_option("--out-y", out_y)->required();
    cmd_solve->add_option("--u1", u_paths[0]);
    cmd_solve->add_option("--u2", u_paths[1]);
    cmd_solve->add_option("--u3", u_paths[2]);
    cmd_solve->add_option("--u4", u_paths[3]);
    cmd_solve->add_option("--u5", u_paths[4]);
    cmd_solve->add_option("--tol", tol);
    cmd_solve->add_option("--report", report_path);

    CLI::App* cmd_solve_eta = app.add_subcommand(
        "solve-eta", "eta-Hermitian solution of A*X*A^{eta*} + C*Y*C^{eta*} = E");
    cmd_solve_eta->add_option("--A", a_path)->required();
    cmd_solve_eta->add_option("--C", c_path)->required();
    cmd_solve_eta->add_option("--E", e_path)->required();
    cmd_solve_eta->add_option("--eta", eta_name)->required();
    cmd_solve_eta->add_option("--out-x", out_x)->required();
    cmd_solve_eta->add_option("--out-y", out_y)->required();
    cmd_solve_eta->add_option("--tol", tol);
    cmd_solve_eta->add_option("--report", report_path);

    CLI::App* cmd_gen = app.add_subcommand("gen", "seeded reproducible tensor");
    cmd_gen->add_option("--left", left)->required();
    cmd_gen->add_option("--right", right)->required();
    cmd_gen->add_option("--seed", seed)->required();
    cmd_gen->add_option("--rank", rank);
    cmd_gen->add_flag("--eta-hermitian", eta_hermitian);
    cmd_gen->add_option("--eta", eta_name);
    cmd_gen->add_option("--out", out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(cmd_flatten)) return run_flatten(in, out);
        if (app.got_subcommand(cmd_unflatten)) return run_unflatten(in, left, right, out);
        if (app.got_subcommand(cmd_svd))
            return run_svd(in, out_u, out_b, out_v, tol, report_path);
        if (app.got_subcommand(cmd_pinv)) return run_pinv(in, out, tol, report_path);
        if (app.got_subcommand(cmd_rankdec))
            return run_rankdec(in, out_p, out_b, out_q, tol, report_path);
        if (app.got_subcommand(cmd_etadec))
            return run_etadec(in, eta_name, out_u, out_b, tol, report_path);
        if (app.got_subcommand(cmd_solve))
            return run_solve(a_path, b_path, c_path, d_path, e_path, out_x, out_y,
                             u_paths, tol, report_path);
        if (app.got_subcommand(cmd_solve_eta))
            return run_solve_eta(a_path, c_path, e_path, eta_name, out_x, out_y, tol,
                                 report_path);
        if (app.got_subcommand(cmd_gen))
            return run_gen(left, right, seed, rank, eta_hermitian, eta_name, out);
    } catch (const qtensor::Inconsistent& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const qtensor::FormatError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const qtensor::DimensionMismatch& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 4;
    } catch (const qtensor::IndexOutOfRange& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 4;
    } catch (const qtensor::NotEtaHermitian& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 5;
    } catch (const qtensor::DomainError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 5;
    } catch (const qtensor::ConvergenceFailure& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 6;
    }
    return 0;
}
