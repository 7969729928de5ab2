#include "sgfem/study.hpp"

#include "sgfem/assembly.hpp"
#include "sgfem/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace sgfem {

namespace {

class Stopwatch {
public:
    double lap()
    {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string matrix_stem(const MethodConfig& c)
{
    return std::string(to_string(c.method)) + "_N" + std::to_string(c.n);
}

void export_matrices(const std::filesystem::path& dir, const MethodConfig& c, const SparseMatrix& a,
                     const SparseMatrix* p, const SparseMatrix& solved)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create export directory " + dir.string() + ": " + ec.message());
    }
    const std::string stem = matrix_stem(c);
    write_matrix_market(a, dir / (stem + "_A.mtx"));
    if (p) {
        write_matrix_market(*p, dir / (stem + "_P.mtx"));
        write_matrix_market(solved, dir / (stem + "_PtAP.mtx"));
    }
    write_sparsity_pattern(solved, dir / (stem + "_pattern.txt"));
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

double energy_error(double exact_fu, std::span<const double> rhs, std::span<const double> fine_coeffs)
{
    const double bracket = exact_fu - dot(rhs, fine_coeffs);
    if (bracket >= 0.0) {
        return std::sqrt(bracket);
    }
    if (-bracket <= 1e-12 * std::max(1.0, std::abs(exact_fu))) {
        return 0.0;
    }
    throw DomainError("energy_error: discrete energy b^T u_h exceeds (f,u) by " + format_double(-bracket)
                      + "; the reference energy is inconsistent with the Galerkin solution");
}

double energy_error(const Problem& problem, std::span<const double> rhs, std::span<const double> fine_coeffs)
{
    if (!problem.exact_fu) {
        throw ConfigError("problem " + problem.name
                          + " has no exact (f,u); compute a reference energy with a refined classical run");
    }
    return energy_error(*problem.exact_fu, rhs, fine_coeffs);
}

MethodSolution solve_method(const MethodConfig& config, const Problem& problem, const StudyOptions& options,
                            std::optional<double> reference_fu)
{
    config.validate();
    MethodSolution out;
    StudyRow& row = out.row;
    row.method = config.method;
    row.n = config.n;
    if (config.method == Method::two_scale) {
        row.param = config.resolved_sigma();
    } else if (config.method == Method::multiscale || config.method == Method::hierarchical) {
        row.param = config.resolved_k();
    }

    Stopwatch clock;
    const SparseMatrix a = system_2d(config.n);
    out.rhs = rhs_2d(config.n, problem.f, options.rule);
    row.assemble_s = clock.lap();

    const auto fail = [&](const SolverError& e) {
        return SolverError(std::string(to_string(config.method)) + " N=" + std::to_string(config.n) + ": " + e.what());
    };

    if (config.method == Method::classical) {
        try {
            SolveResult s = spd_solve(a, out.rhs, options.solve);
            out.fine_coeffs = std::move(s.x);
            row.solver = s.algorithm;
        } catch (const SolverError& e) {
            throw fail(e);
        }
        row.solve_s = clock.lap();
        row.dofs = a.rows();
        row.nnz = a.nnz();
        if (options.export_dir) {
            export_matrices(*options.export_dir, config, a, nullptr, a);
        }
    } else {
        MethodConfig ordered = config;
        ordered.ordering = options.ordering;
        const SparseMatrix p = build_projector(ordered);
        const SparseMatrix reduced = triple_product(p, a);
        const Coeffs reduced_rhs = transpose(p).multiply(out.rhs);
        row.project_s = clock.lap();
        try {
            SolveResult s = spd_solve(reduced, reduced_rhs, options.solve);
            row.solve_s = clock.lap();
            row.solver = s.algorithm;
            out.fine_coeffs = p.multiply(s.x);
        } catch (const SolverError& e) {
            throw fail(e);
        }
        row.project_s += clock.lap();
        row.dofs = reduced.rows();
        row.nnz = reduced.nnz();
        if (options.export_dir) {
            export_matrices(*options.export_dir, config, a, &p, reduced);
        }
    }
    if (row.dofs != dof_count(config)) {
        throw Error("internal: constructed dimension " + std::to_string(row.dofs) + " differs from closed form "
                    + std::to_string(dof_count(config)));
    }

    const std::optional<double> fu = reference_fu ? reference_fu : problem.exact_fu;
    row.error = fu ? energy_error(*fu, out.rhs, out.fine_coeffs) : std::numeric_limits<double>::quiet_NaN();
    return out;
}

SweepResult run_sweep(const SweepSpec& spec, const Problem& problem, const StudyOptions& options)
{
    SweepResult result;
    std::vector<Index> ns = spec.ns;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    // Validate every cell before spending time on solves.
    std::vector<MethodConfig> configs;
    for (Method m : spec.methods) {
        for (Index n : ns) {
            MethodConfig c{m, n, spec.sigma, spec.k, options.ordering};
            if (m != Method::two_scale) {
                c.sigma.reset();
            }
            if (m != Method::multiscale) {
                c.k.reset();
            }
            c.validate();
            configs.push_back(c);
        }
    }
    if (configs.empty()) {
        return result;
    }

    if (problem.exact_fu) {
        result.reference_fu = problem.exact_fu;
    } else {
        const Index n_ref = 4 * ns.back();
        StudyOptions ref_options = options;
        ref_options.export_dir.reset();
        // Jacobi CG on a 4x finer classical grid is far too slow; the reference is always direct.
        ref_options.solve.kind = SolverKind::direct;
        const MethodSolution ref = solve_method(MethodConfig{Method::classical, n_ref}, problem, ref_options);
        result.reference_fu = dot(ref.rhs, ref.fine_coeffs);
        result.reference_n = n_ref;
    }

    for (std::size_t c = 0; c < configs.size(); ++c) {
        StudyRow row = solve_method(configs[c], problem, options, result.reference_fu).row;
        if (c > 0 && configs[c - 1].method == configs[c].method) {
            const StudyRow& prev = result.rows.back();
            if (prev.error > 0.0 && row.error > 0.0) {
                row.rate = std::log(prev.error / row.error)
                           / std::log(static_cast<double>(row.n) / static_cast<double>(prev.n));
            }
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string format_csv(std::span<const StudyRow> rows)
{
    std::string out(csv_header);
    out += '\n';
    for (const auto& r : rows) {
        out += to_string(r.method);
        out += ',' + std::to_string(r.n);
        out += ',' + (r.param ? std::to_string(*r.param) : std::string());
        out += ',' + std::to_string(r.dofs);
        out += ',' + std::to_string(r.nnz);
        out += ',' + format_double(r.error);
        out += ',' + (r.rate ? format_double(*r.rate) : std::string());
        out += ',' + format_double(r.assemble_s);
        out += ',' + format_double(r.project_s);
        out += ',' + format_double(r.solve_s);
        out += ',' + r.solver;
        out += '\n';
    }
    return out;
}

void write_csv(std::span<const StudyRow> rows, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << format_csv(rows);
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

void write_metadata(const SweepResult& result, const Problem& problem, const std::filesystem::path& path)
{
    nlohmann::json meta;
    meta["problem"] = problem.name;
    meta["description"] = problem.description;
    if (result.reference_fu) {
        meta["reference_fu"] = *result.reference_fu;
    }
    if (result.reference_n) {
        meta["reference"] = "classical solve at N = " + std::to_string(*result.reference_n);
        meta["caveat"] = "errors are measured against a discrete reference; values near the reference "
                         "resolution are biased low (Richardson-type error of order 1/N_ref)";
    } else {
        meta["reference"] = "closed-form (f,u)";
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << meta.dump(2) << '\n';
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

} // namespace sgfem
