#pragma once

#include "sgfem/problems.hpp"
#include "sgfem/projectors.hpp"
#include "sgfem/quadrature.hpp"
#include "sgfem/solve.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sgfem {

struct StudyOptions {
    SolveOptions solve;
    Ordering ordering = Ordering::natural;
    QuadratureRule rule = two_point_gauss();
    /// When set, A, P and P^T A P are written there as .mtx plus a sparsity pattern dump.
    std::optional<std::filesystem::path> export_dir;
};

/// One (method, N) result of a convergence study.
struct StudyRow {
    Method method = Method::classical;
    Index n = 0;
    std::optional<Index> param; ///< sigma (two-scale) or k (multiscale, hierarchical)
    Index dofs = 0;
    Index nnz = 0;              ///< nonzeros of the matrix actually solved
    double error = 0.0;         ///< energy-norm error; NaN when no reference energy is known
    std::optional<double> rate; ///< log(e_prev / e) / log(N / N_prev) within a method's sweep
    double assemble_s = 0.0;
    double project_s = 0.0;
    double solve_s = 0.0;
    std::string solver;
};

struct MethodSolution {
    Coeffs fine_coeffs; ///< solution expressed in the classical N x N hat basis
    Coeffs rhs;         ///< fine-grid load vector b
    StudyRow row;
};

/// Assembles A and b on the N x N grid and solves the method's Galerkin system: A u = b for
/// classical, otherwise (P^T A P) x = P^T b followed by u = P x. The error column is filled
/// from `reference_fu` if given, else from problem.exact_fu, else left NaN.
MethodSolution solve_method(const MethodConfig& config, const Problem& problem, const StudyOptions& options = {},
                            std::optional<double> reference_fu = std::nullopt);

/// sqrt((f,u) - b^T u_h), the energy-norm error by Galerkin orthogonality. A bracket within
/// 1e-12 (relative to max(1, (f,u))) below zero is clamped; a more negative one means the
/// discrete energy exceeds the reference and throws DomainError.
double energy_error(double exact_fu, std::span<const double> rhs, std::span<const double> fine_coeffs);

/// As above with (f,u) from the problem; throws ConfigError when the problem has none.
double energy_error(const Problem& problem, std::span<const double> rhs, std::span<const double> fine_coeffs);

struct SweepSpec {
    std::vector<Method> methods;
    std::vector<Index> ns;
    std::optional<Index> sigma; ///< fixed sigma for every N; default round(N^(1/3))
    std::optional<int> k;       ///< fixed level for every N; default log2(N) - 1
};

struct SweepResult {
    std::vector<StudyRow> rows;
    std::optional<double> reference_fu;
    /// Set when the reference energy came from a classical solve rather than a closed form.
    std::optional<Index> reference_n;
};

/// Every (method, N) cell, method-major with N ascending. Problems without exact (f,u) use a
/// classical solve at 4x the largest N as reference, always with the direct solver.
SweepResult run_sweep(const SweepSpec& spec, const Problem& problem, const StudyOptions& options = {});

inline constexpr std::string_view csv_header = "method,N,param,dofs,nnz,error,rate,assemble_s,project_s,solve_s,solver";

std::string format_csv(std::span<const StudyRow> rows);
void write_csv(std::span<const StudyRow> rows, const std::filesystem::path& path);

/// JSON sidecar describing where the reference energy came from.
void write_metadata(const SweepResult& result, const Problem& problem, const std::filesystem::path& path);

} // namespace sgfem
