// sgfem: convergence studies for classical, two-scale, multiscale and hierarchical
// sparse grid finite elements on -Lap u + u = f, (0,1)^2.

#include "sgfem/error.hpp"
#include "sgfem/study.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

void print_rows(const std::vector<sgfem::StudyRow>& rows)
{
    std::printf("%-13s %6s %6s %10s %12s %14s %7s %10s\n", "method", "N", "param", "dofs", "nnz", "error", "rate",
                "solve_s");
    for (const auto& r : rows) {
        const std::string param = r.param ? std::to_string(*r.param) : "-";
        const std::string rate = r.rate ? std::to_string(*r.rate).substr(0, 6) : "-";
        std::printf("%-13s %6lld %6s %10lld %12lld %14.6e %7s %10.3f\n", std::string(sgfem::to_string(r.method)).c_str(),
                    static_cast<long long>(r.n), param.c_str(), static_cast<long long>(r.dofs),
                    static_cast<long long>(r.nnz), r.error, rate.c_str(), r.solve_s);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sparse grid finite element convergence studies"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a sweep over N for one or more methods and write CSV");
    std::vector<std::string> methods;
    std::vector<sgfem::Index> ns;
    std::optional<sgfem::Index> sigma;
    std::optional<int> k;
    std::string problem_name = "P1";
    std::string out_path;
    std::string solver = "direct";
    double tol = 1e-10;
    std::string ordering = "natural";
    std::string export_dir;

    run->add_option("--method", methods, "classical | two-scale | multiscale | hierarchical (comma-separated)")
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember({"classical", "two-scale", "two_scale", "multiscale", "hierarchical"}));
    run->add_option("--N", ns, "Interval counts per direction (comma-separated)")->delimiter(',');
    run->add_option("--sigma", sigma, "Two-scale coarse interval count (default round(N^(1/3)))");
    run->add_option("--k", k, "Multiscale level (default log2(N) - 1)");
    run->add_option("--problem", problem_name, "Test problem: P1, P2 or P3")->capture_default_str();
    run->add_option("--out", out_path, "Output CSV path")->required();
    run->add_option("--solver", solver, "Linear solver")
        ->check(CLI::IsMember({"direct", "cg"}))
        ->capture_default_str();
    run->add_option("--tol", tol, "Relative residual tolerance")->capture_default_str();
    run->add_option("--ordering", ordering, "Basis ordering")
        ->check(CLI::IsMember({"natural", "lex"}))
        ->capture_default_str();
    run->add_option("--export-matrix", export_dir, "Directory for .mtx and sparsity-pattern dumps");

    CLI11_PARSE(app, argc, argv);

    try {
        const sgfem::Problem& problem = sgfem::find_problem(problem_name);
        sgfem::SweepSpec spec;
        for (const auto& m : methods) {
            spec.methods.push_back(sgfem::parse_method(m));
        }
        spec.ns = ns;
        spec.sigma = sigma;
        spec.k = k;

        sgfem::StudyOptions options;
        options.solve.kind = solver == "cg" ? sgfem::SolverKind::cg : sgfem::SolverKind::direct;
        options.solve.tol = tol;
        options.ordering = sgfem::parse_ordering(ordering);
        if (!export_dir.empty()) {
            options.export_dir = export_dir;
        }

        const sgfem::SweepResult result = sgfem::run_sweep(spec, problem, options);
        sgfem::write_csv(result.rows, out_path);
        sgfem::write_metadata(result, problem, out_path + ".meta.json");
        print_rows(result.rows);
    } catch (const sgfem::Error& e) {
        std::cerr << "sgfem: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
