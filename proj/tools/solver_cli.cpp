// Command-line front end: solve, analyze, bench, problems.
// Exit codes: 0 converged, 2 not converged, 3 diverged/non-finite, 4 input error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "solver/aitken.hpp"
#include "solver/bench.hpp"
#include "solver/iteration.hpp"
#include "solver/json_io.hpp"
#include "solver/linalg.hpp"
#include "solver/problems.hpp"
#include "solver/spectral.hpp"

namespace {

using nlohmann::ordered_json;

// Trace CSVs pin full 17-significant-digit formatting.
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Shortest round-trip formatting for CSV/JSON data values.
std::string fmt_shortest(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct LoadedSystem {
    solver::LinearSystem sys;
    std::optional<solver::NamedProblem> prob;
};

LoadedSystem load_target(const std::string& problem_id, const std::string& system_path) {
    const bool has_p = !problem_id.empty();
    const bool has_s = !system_path.empty();
    if (has_p == has_s) throw solver::invariant_error("exactly one of --problem and --system is required");
    if (has_p) {
        auto p = solver::builtin(problem_id);
        auto sys = p.system;
        return {std::move(sys), std::move(p)};
    }
    return {solver::load_system_json(system_path), std::nullopt};
}

solver::Vector resolve_x0(const LoadedSystem& target, std::string spec) {
    const std::size_t n = target.sys.size();
    if (spec.empty()) spec = target.prob ? "paper" : "zero";
    if (spec == "zero") return solver::Vector::zeros(n);
    if (spec == "paper") {
        if (!target.prob)
            throw solver::invariant_error("--x0 paper requires --problem (file-loaded systems have no published start)");
        return target.prob->default_start;
    }
    return solver::load_vector_json(spec, n);
}

const char* status_name(solver::IterationStatus s) {
    switch (s) {
        case solver::IterationStatus::Converged: return "converged";
        case solver::IterationStatus::MaxItersReached: return "max-iters";
        case solver::IterationStatus::NonFinite: return "non-finite";
    }
    return "unknown";
}

const char* status_name(solver::SolveStatus s) {
    switch (s) {
        case solver::SolveStatus::Converged: return "converged";
        case solver::SolveStatus::Stalled: return "stalled";
        case solver::SolveStatus::SingularRatio: return "singular-ratio";
        case solver::SolveStatus::MaxItersReached: return "max-iters";
    }
    return "unknown";
}

void write_iteration_csv(const solver::IterationTrace& t, std::size_t n, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw solver::invariant_error("cannot write file: " + path);
    out << "iter,residual_norm";
    for (std::size_t i = 0; i < n; ++i) out << ",x_" << i;
    out << "\n";
    for (std::size_t k = 0; k < t.iterates.size(); ++k) {
        out << k << ',' << fmt17(t.residuals[k]);
        for (std::size_t i = 0; i < n; ++i) out << ',' << fmt17(t.iterates[k][i]);
        out << "\n";
    }
}

void write_extrap_csv(const std::vector<solver::SolveTraceRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw solver::invariant_error("cannot write file: " + path);
    out << "outer,inner,layer,lambda,residual_norm\n";
    for (const auto& r : rows)
        out << r.outer << ',' << r.inner << ',' << r.layer << ',' << fmt17(r.lambda) << ','
            << fmt17(r.residual_norm) << "\n";
}

struct SolveArgs {
    std::string problem, system_path, method, trace_path, x0;
    double omega = 1.0;
    bool has_omega = false;
    std::size_t order = 1;
    std::size_t window = 0;
    bool has_window = false;
    double tol = 1e-10;
    std::size_t max_iters = 10000;
    bool has_order = false;
};

int run_solve(const SolveArgs& a) {
    const auto target = load_target(a.problem, a.system_path);
    const auto& sys = target.sys;
    const solver::Vector x0 = resolve_x0(target, a.x0);

    ordered_json j;
    int rc = 0;
    if (a.method == "gs" || a.method == "sor") {
        if (a.has_order || a.has_window)
            throw solver::invariant_error("--order and --window apply only to --method aitken");
        if (a.method == "gs" && a.has_omega)
            throw solver::invariant_error("--omega applies only to --method sor or aitken");
        if (a.method == "sor" && !a.has_omega) throw solver::invariant_error("--method sor requires --omega");
        const auto method =
            a.method == "gs" ? solver::IterationMethod::gauss_seidel() : solver::IterationMethod::sor(a.omega);
        const auto trace = solver::run_iteration(sys, x0, method, a.max_iters, a.tol, 1e15);
        if (!a.trace_path.empty()) write_iteration_csv(trace, sys.size(), a.trace_path);
        j["solution"] = trace.iterates.back().entries;
        j["status"] = status_name(trace.status);
        j["iterations"] = trace.iterates.size() - 1;
        j["residual_norm"] = trace.residuals.back();
        switch (trace.status) {
            case solver::IterationStatus::Converged: rc = 0; break;
            case solver::IterationStatus::MaxItersReached: rc = 2; break;
            case solver::IterationStatus::NonFinite: rc = 3; break;
        }
    } else {
        const std::size_t window = a.has_window ? a.window : std::max<std::size_t>(12, a.order + 3);
        solver::SolveConfig cfg;
        cfg.window = window;
        cfg.max_outer = std::max<std::size_t>(1, (a.max_iters + window - 1) / window);
        cfg.tol = a.tol;
        const auto inner =
            a.has_omega ? solver::IterationMethod::sor(a.omega) : solver::IterationMethod::gauss_seidel();
        std::vector<solver::SolveTraceRow> rows;
        const auto report =
            solver::solve_extrapolated(sys, x0, inner, a.order, cfg, a.trace_path.empty() ? nullptr : &rows);
        if (!a.trace_path.empty()) write_extrap_csv(rows, a.trace_path);
        j["solution"] = report.solution.entries;
        j["status"] = status_name(report.status);
        j["iterations"] = report.outer_iterations;
        j["inner_sweeps"] = report.inner_sweeps_total;
        j["residual_norm"] = report.final_residual;
        j["lambda_estimates"] = report.lambda_estimates;
        rc = report.status == solver::SolveStatus::Converged ? 0 : 2;
    }
    std::cout << j.dump(2) << "\n";
    return rc;
}

struct AnalyzeArgs {
    std::string problem, system_path;
    double omega = 1.0;
    bool has_omega = false;
};

int run_analyze(const AnalyzeArgs& a) {
    const auto target = load_target(a.problem, a.system_path);
    const auto m = a.has_omega ? solver::build_sor_iteration_matrix(target.sys, a.omega)
                               : solver::build_iteration_matrix(target.sys);
    const auto rep = solver::eigenvalues_qr(m);
    ordered_json j;
    auto evs = ordered_json::array();
    for (const auto& z : rep.eigenvalues) evs.push_back(ordered_json::array({z.real(), z.imag()}));
    j["eigenvalues"] = std::move(evs);
    j["dominant_modulus"] = rep.dominant_modulus;
    j["dominant_is_real"] = rep.dominant_is_real;
    std::cout << j.dump(2) << "\n";
    return 0;
}

double parse_double_strict(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw solver::invariant_error(what + " is not a finite number: '" + s + "'");
    }
}

std::vector<double> parse_sweep(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos)
        throw solver::invariant_error("--sweep-omega must be start:stop:step");
    const double start = parse_double_strict(spec.substr(0, c1), "sweep start");
    const double stop = parse_double_strict(spec.substr(c1 + 1, c2 - c1 - 1), "sweep stop");
    const double step = parse_double_strict(spec.substr(c2 + 1), "sweep step");
    if (!(step > 0.0)) throw solver::invariant_error("sweep step must be positive");
    if (stop < start) throw solver::invariant_error("sweep stop must be >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

struct BenchArgs {
    std::string problem, sweep, out_path;
    std::size_t order = 1;
};

int run_bench(const BenchArgs& a) {
    const auto prob = solver::builtin(a.problem);
    const auto omegas = parse_sweep(a.sweep);
    solver::BenchConfig cfg;
    cfg.order = a.order;
    const auto rows = solver::bench_sweep(prob.system, prob.default_start, omegas, cfg);
    std::string csv = "omega,iters_sor,iters_sor_gse,acceleration,dominant_re,dominant_im\n";
    for (const auto& r : rows) {
        csv += fmt_shortest(r.omega);
        csv += ',' + std::to_string(r.iters_sor);
        csv += ',' + std::to_string(r.iters_sor_plus_extrap);
        csv += ',' + fmt_shortest(r.acceleration);
        csv += ',' + fmt_shortest(r.dominant_eig.real());
        csv += ',' + fmt_shortest(r.dominant_eig.imag());
        csv += '\n';
    }
    std::cout << csv;
    if (!a.out_path.empty()) {
        std::ofstream out(a.out_path);
        if (!out) throw solver::invariant_error("cannot write file: " + a.out_path);
        out << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stationary-iteration linear solver with vector Aitken extrapolation", "solver"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve a linear system and print the solution as JSON");
    solve->add_option("--problem", sa.problem, "Builtin problem id (see: problems list)");
    solve->add_option("--system", sa.system_path, "Path to a LinearSystem JSON file");
    solve->add_option("--method", sa.method, "Iteration method")
        ->required()
        ->check(CLI::IsMember({"gs", "sor", "aitken"}));
    auto* sa_omega = solve->add_option("--omega", sa.omega, "Relaxation factor (sor, or aitken's inner sweep)");
    auto* sa_order = solve->add_option("--order", sa.order, "Extrapolation order (aitken)")->check(CLI::PositiveNumber);
    auto* sa_window = solve->add_option("--window", sa.window, "Sweeps per outer iteration (aitken)")
                          ->check(CLI::PositiveNumber);
    solve->add_option("--tol", sa.tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
    solve->add_option("--max-iters", sa.max_iters, "Total sweep budget")->check(CLI::PositiveNumber);
    solve->add_option("--trace", sa.trace_path, "Write the iteration trace CSV here");
    solve->add_option("--x0", sa.x0, "Starting vector: zero, paper, or a JSON file path");

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Print the iteration-matrix spectrum as JSON");
    analyze->add_option("--problem", aa.problem, "Builtin problem id");
    analyze->add_option("--system", aa.system_path, "Path to a LinearSystem JSON file");
    auto* aa_omega = analyze->add_option("--omega", aa.omega, "Analyze the SOR matrix at this omega");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Iteration-count sweep over omega, CSV output");
    bench->add_option("--problem", ba.problem, "Builtin problem id")->required();
    bench->add_option("--sweep-omega", ba.sweep, "start:stop:step")->required();
    bench->add_option("--order", ba.order, "Extrapolation order")->check(CLI::PositiveNumber);
    bench->add_option("--out", ba.out_path, "Also write the CSV to this path");

    std::string export_id, export_out;
    auto* problems = app.add_subcommand("problems", "List or export the builtin problems");
    problems->require_subcommand(1);
    auto* plist = problems->add_subcommand("list", "Print one builtin problem id per line");
    auto* pexport = problems->add_subcommand("export", "Write a builtin system as LinearSystem JSON");
    pexport->add_option("--id", export_id, "Builtin problem id")->required();
    pexport->add_option("--out", export_out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    sa.has_omega = sa_omega->count() > 0;
    sa.has_order = sa_order->count() > 0;
    sa.has_window = sa_window->count() > 0;
    aa.has_omega = aa_omega->count() > 0;

    try {
        if (solve->parsed()) return run_solve(sa);
        if (analyze->parsed()) return run_analyze(aa);
        if (bench->parsed()) return run_bench(ba);
        if (plist->parsed()) {
            for (const auto& id : solver::builtin_ids()) std::cout << id << "\n";
            return 0;
        }
        if (pexport->parsed()) {
            solver::save_system_json(solver::builtin(export_id).system, export_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 4;
}
