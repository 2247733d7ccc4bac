#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mateq/constructor.hpp"
#include "mateq/documents.hpp"
#include "mateq/errors.hpp"
#include "mateq/verifier.hpp"

namespace {

using namespace mateq;

enum Exit : int { ok = 0, malformed = 1, domain = 2, validation = 3, numerical = 4, verification = 5 };

int run_construct(int n, int m, const std::string& out, const std::string& plan_path, std::optional<int> seed) {
    ConstructOptions options;
    if (seed) {
        options.scheme = ValueScheme::consecutive_integers;
        options.y_start = *seed;
    }
    std::optional<ConstructionResult> result;
    try {
        result = construct(n, m, options);
    } catch (const DomainError& e) {
        std::cerr << e.what() << '\n';
        return domain;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return validation;
    }
    doc::write_text(out, doc::dump(doc::equation_document(result->equation)));
    if (!plan_path.empty()) doc::write_text(plan_path, doc::dump(doc::plan_document(*result)));
    std::cout << out << '\n';
    return ok;
}

int run_solve(const std::string& in, const std::string& out, const std::string& backend, std::optional<double> tol) {
    std::optional<MatrixEquation> eq;
    try {
        eq = doc::equation_from_document(doc::read_document(in));
    } catch (const ParseError& e) {
        std::cerr << "solve: " << e.what() << '\n';
        return malformed;
    }
    SolverOptions options;
    options.roots.backend = backend == "b" ? RootBackend::Companion : RootBackend::Aberth;
    if (tol) options.rank_tol = *tol;
    try {
        const SolutionSet set = solve_equation(*eq, options);
        doc::write_text(out, doc::dump(doc::solution_document(set)));
    } catch (const Error& e) {
        std::cerr << "solve: " << e.what() << '\n';
        return numerical;
    }
    std::cout << out << '\n';
    return ok;
}

int run_verify(const std::string& eq_path, const std::string& sol_path, const std::string& report_path) {
    std::optional<MatrixEquation> eq;
    SolutionSet set;
    try {
        eq = doc::equation_from_document(doc::read_document(eq_path));
        set = doc::solutions_from_document(doc::read_document(sol_path));
    } catch (const ParseError& e) {
        std::cerr << "verify: " << e.what() << '\n';
        return malformed;
    }
    const VerificationReport report = verify_solution_set(*eq, set);
    if (!report_path.empty()) {
        doc::write_text(report_path, doc::dump(doc::report_document(report)));
        std::cout << report_path << '\n';
    }
    if (!report.pass) {
        std::cerr << report.to_text();
        return verification;
    }
    return ok;
}

struct Cell {
    int n = 0;
    int m = 0;
    int p = 0;
    int pbar = 0;
    std::int64_t count = 0;
    double max_residual = 0.0;
    double wall_ms = 0.0;
    bool pass = false;
    std::string reason;
};

Cell sweep_cell(int n, int m) {
    Cell cell;
    cell.n = n;
    cell.m = m;
    const auto start = std::chrono::steady_clock::now();
    try {
        const ConstructionResult result = construct(n, m);
        if (result.plan) {
            cell.p = result.plan->p;
            cell.pbar = result.plan->pbar;
        }
        const VerificationReport report = verify_solution_set(result.equation, result.solutions);
        cell.count = report.claimed_count;
        for (const auto& c : report.checks) cell.max_residual = std::max(cell.max_residual, c.residual);
        cell.pass = report.pass;
        if (!report.pass) cell.reason = report.reasons.front();
    } catch (const Error& e) {
        cell.reason = e.what();
    }
    cell.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

int run_sweep(int n_max, const std::string& report_path, int jobs) {
    if (n_max < 1 || n_max > kMaxDegree) {
        std::cerr << "sweep: --n-max must lie in [1, " << kMaxDegree << "]\n";
        return domain;
    }
    if (jobs < 1) {
        std::cerr << "sweep: --jobs must be positive\n";
        return domain;
    }
    std::vector<Cell> cells;
    for (int n = 1; n <= n_max; ++n)
        for (int m = 1; m <= max_solution_count(n); ++m) {
            cells.emplace_back();
            cells.back().n = n;
            cells.back().m = m;
        }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) cells[i] = sweep_cell(cells[i].n, cells[i].m);
    };
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
    }

    std::ostringstream table;
    table << "# n <= " << n_max << ", " << cells.size() << " cells\n";
    table << std::setw(3) << "n" << std::setw(6) << "m" << std::setw(5) << "p" << std::setw(6) << "pbar" << std::setw(7)
          << "count" << std::setw(14) << "max_residual" << std::setw(11) << "wall_ms" << "  status\n";
    std::vector<const Cell*> failing;
    for (const auto& c : cells) {
        table << std::setw(3) << c.n << std::setw(6) << c.m;
        if (c.p > 0)
            table << std::setw(5) << c.p << std::setw(6) << c.pbar;
        else
            table << std::setw(5) << "-" << std::setw(6) << "-";
        table << std::setw(7) << c.count << std::setw(14) << std::scientific << std::setprecision(3) << c.max_residual
              << std::setw(11) << std::fixed << std::setprecision(3) << c.wall_ms << "  " << (c.pass ? "pass" : "FAIL")
              << '\n';
        if (!c.pass) failing.push_back(&c);
    }
    for (const auto* c : failing) table << "# failing n=" << c->n << " m=" << c->m << ": " << c->reason << '\n';
    doc::write_text(report_path, table.str());
    std::cout << report_path << '\n';
    if (failing.empty()) return ok;
    for (const auto* c : failing) std::cerr << "sweep: n=" << c->n << " m=" << c->m << ": " << c->reason << '\n';
    return verification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct, solve and verify 2x2 matrix polynomial equations"};
    app.require_subcommand(1);

    int n = 0;
    int m = 0;
    std::string out;
    std::string plan;
    std::optional<int> seed;
    auto* construct_cmd = app.add_subcommand("construct", "Build an equation with exactly m solutions");
    construct_cmd->add_option("--n", n, "Degree")->required();
    construct_cmd->add_option("--m", m, "Number of solutions")->required();
    construct_cmd->add_option("--out", out, "Equation document to write")->required();
    construct_cmd->add_option("--plan", plan, "Also write the construction plan here");
    construct_cmd->add_option("--seed-values", seed, "Use consecutive integer block values starting here");

    std::string in;
    std::string backend = "a";
    std::optional<double> tol;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an equation document");
    solve_cmd->add_option("--in", in, "Equation document")->required();
    solve_cmd->add_option("--out", out, "Solution document to write")->required();
    solve_cmd->add_option("--backend", backend, "Root finder: a (Aberth) or b (companion matrix)")
        ->check(CLI::IsMember({"a", "b"}));
    solve_cmd->add_option("--tol", tol, "Rank tolerance for critical spaces")->check(CLI::PositiveNumber);

    std::string eq_path;
    std::string sol_path;
    std::string report;
    auto* verify_cmd = app.add_subcommand("verify", "Check a solution document against its equation");
    verify_cmd->add_option("--equation", eq_path, "Equation document")->required();
    verify_cmd->add_option("--solutions", sol_path, "Solution document")->required();
    verify_cmd->add_option("--report", report, "Write the verification report here");

    int n_max = 0;
    int jobs = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "Construct, solve and verify every (n, m) up to n-max");
    sweep_cmd->add_option("--n-max", n_max, "Largest degree")->required();
    sweep_cmd->add_option("--report", report, "Table to write")->required();
    sweep_cmd->add_option("--jobs", jobs, "Cells to run in parallel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return malformed;
    }

    try {
        if (*construct_cmd) return run_construct(n, m, out, plan, seed);
        if (*solve_cmd) return run_solve(in, out, backend, tol);
        if (*verify_cmd) return run_verify(eq_path, sol_path, report);
        return run_sweep(n_max, report, jobs);
    } catch (const std::exception& e) {
        std::cerr << "mateq: " << e.what() << '\n';
        return malformed;
    }
}
