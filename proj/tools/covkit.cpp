// covkit command line: catalog, jacobian, coderivative, covering, solve.
//
// Exit codes: 0 success, 2 bad input or failed precondition, 3 solver did
// not converge at some grid point (the partial report is still printed).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "covkit/covkit.hpp"
#include "covkit/config.hpp"
#include "covkit/problem.hpp"
#include "covkit/report.hpp"

using namespace covkit;

namespace {

struct Common {
    std::string mapping;
    std::string expr;
    std::string point;
    std::string output = "json";
    std::uint64_t seed = 0;
};

void add_target(CLI::App* cmd, Common& c, bool need_point) {
    cmd->add_option("--mapping", c.mapping, "catalog mapping name");
    cmd->add_option("--expr", c.expr, "inline mapping, e.g. \"x1*x2, x1*x3\"");
    auto* p = cmd->add_option("--point", c.point, "comma separated coordinates");
    if (need_point) p->required();
}

void add_output(CLI::App* cmd, Common& c) {
    cmd->add_option("--output", c.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", c.seed, "sampling seed");
}

MappingSpec resolve(const Common& c) {
    if (c.mapping.empty() == c.expr.empty()) throw precondition_error("give exactly one of --mapping or --expr");
    if (!c.mapping.empty()) return catalog::get(c.mapping);
    return parse_inline_mapping(c.expr);
}

std::string label(const Common& c) { return c.mapping.empty() ? c.expr : c.mapping; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covering constants and coderivatives of finite-dimensional mappings"};
    app.require_subcommand(1);

    Common cat_opts, jac_opts, cod_opts, cov_opts, sol_opts;

    auto* cat = app.add_subcommand("catalog", "list the built-in mappings");
    add_output(cat, cat_opts);

    auto* jac = app.add_subcommand("jacobian", "AD and finite-difference Jacobians");
    add_target(jac, jac_opts, true);
    add_output(jac, jac_opts);
    double tol = 0.0;
    jac->add_option("--tol", tol, "finite-difference step (default cbrt(eps) max(1, |z|))");

    auto* cod = app.add_subcommand("coderivative", "Frechet coderivative at a point");
    add_target(cod, cod_opts, true);
    add_output(cod, cod_opts);
    std::string dual;
    cod->add_option("--dual", dual, "dual vector y to apply");

    auto* cov = app.add_subcommand("covering", "estimate the local covering constant");
    add_target(cov, cov_opts, true);
    add_output(cov, cov_opts);
    CoveringOptions copt;
    cov->add_option("--eta0", copt.eta0, "initial radius (default max(0.5, 0.1 |z|))");
    cov->add_option("--eta-factor", copt.eta_factor, "radius shrink factor")->check(CLI::Range(1e-6, 0.999999));
    cov->add_option("--eta-steps", copt.eta_steps, "number of radii")->check(CLI::PositiveNumber);
    cov->add_option("--samples", copt.samples, "samples per radius (at least 64)");

    auto* sol = app.add_subcommand("solve", "parametric coincidence points F(x) = h(x, s) + omega(s)");
    std::string config_path, grid_text;
    double sol_tol = 0.0;
    sol->add_option("config", config_path, "key = value problem file")->required();
    sol->add_option("--mapping", sol_opts.mapping, "override F");
    sol->add_option("--param-grid", grid_text, "start:stop:count or comma list");
    sol->add_option("--tol", sol_tol, "residual tolerance");
    add_output(sol, sol_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*cat) {
            if (cat_opts.output == "csv") {
                std::cout << "name,n,m,norm_identity,singular_locus\n";
                for (const auto& s : catalog::all())
                    std::cout << s.name << "," << s.n << "," << s.m << "," << to_string(s.norm_identity) << ","
                              << (s.locus_description.empty() ? "none" : s.locus_description) << "\n";
                return 0;
            }
            json list = json::array();
            for (const auto& s : catalog::all())
                list.push_back(json{{"name", s.name},
                                    {"n", s.n},
                                    {"m", s.m},
                                    {"norm_identity", to_string(s.norm_identity)},
                                    {"singular_locus", s.locus_description.empty() ? "none" : s.locus_description}});
            emit(json{{"command", "catalog"}, {"result", list}, {"provenance", provenance(cat_opts.seed, 0)}});
            return 0;
        }

        if (*jac) {
            const MappingSpec f = resolve(jac_opts);
            const Vector z = parse_point(jac_opts.point);
            const Matrix ad = jacobian_ad(f, z);
            const Matrix fd = tol > 0 ? jacobian_fd(f, z, tol) : jacobian_fd(f, z);
            if (jac_opts.output == "csv") {
                std::cout << matrix_csv(ad);
                return 0;
            }
            emit(json{{"command", "jacobian"},
                      {"mapping", label(jac_opts)},
                      {"point", to_json(z)},
                      {"result", json{{"ad", to_json(ad)}, {"fd", to_json(fd)}}},
                      {"provenance", provenance(jac_opts.seed, 0)}});
            return 0;
        }

        if (*cod) {
            const MappingSpec f = resolve(cod_opts);
            const Vector z = parse_point(cod_opts.point);
            const CoderivativeResult r = coderivative_matrix(f, z);
            json res = to_json(r);
            if (!dual.empty()) {
                const auto x = apply(r, parse_point(dual));
                res["dual"] = to_json(parse_point(dual));
                res["applied"] = x ? to_json(*x) : json("empty");
            }
            if (cod_opts.output == "csv") {
                std::cout << "status," << to_string(r.status) << "\n";
                if (r.matrix) std::cout << matrix_csv(*r.matrix);
                return 0;
            }
            emit(json{{"command", "coderivative"},
                      {"mapping", label(cod_opts)},
                      {"point", to_json(z)},
                      {"result", res},
                      {"provenance", provenance(cod_opts.seed, 0)}});
            return 0;
        }

        if (*cov) {
            const MappingSpec f = resolve(cov_opts);
            const Vector z = parse_point(cov_opts.point);
            copt.seed = cov_opts.seed;
            const CoveringEstimate est = estimate(f, z, copt);
            if (cov_opts.output == "csv") {
                std::cout << schedule_csv(est);
                return 0;
            }
            emit(covering_report(label(cov_opts), z, est, cov_opts.seed));
            return 0;
        }

        if (*sol) {
            SolveConfig cfg = load_solve_config(config_path);
            if (!sol_opts.mapping.empty()) cfg.mapping = sol_opts.mapping;
            if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
            if (sol_tol > 0) cfg.tol = sol_tol;
            const PreparedSolve ps = prepare_solve(cfg, sol_opts.seed);
            SolveOptions so;
            so.tol = cfg.tol;
            const auto sols = solve_grid(ps.problem, ps.grid, true, so);
            bool all_ok = true;
            for (const auto& s : sols) all_ok = all_ok && s.status == SolveStatus::converged;
            if (sol_opts.output == "csv") {
                std::cout << "parameter,residual,bound_rhs,bound_holds,iterations,status";
                for (std::size_t i = 0; i < ps.problem.F.n; ++i) std::cout << ",sigma" << i + 1;
                std::cout << "\n";
                for (const auto& s : sols) {
                    std::cout << format_double(s.parameter) << "," << format_double(s.residual) << ","
                              << format_double(s.bound_rhs) << "," << (s.bound_holds ? "true" : "false") << ","
                              << s.iterations << "," << to_string(s.status);
                    for (double v : s.sigma) std::cout << "," << format_double(v);
                    std::cout << "\n";
                }
            } else {
                json list = json::array();
                for (const auto& s : sols) list.push_back(to_json(s));
                emit(json{{"command", "solve"},
                          {"mapping", cfg.mapping},
                          {"point", to_json(ps.problem.x_bar)},
                          {"result", json{{"alpha_hat", ps.alpha_hat},
                                          {"beta", ps.problem.beta},
                                          {"alpha", ps.problem.alpha},
                                          {"converged", all_ok},
                                          {"solutions", list}}},
                          {"provenance", provenance(sol_opts.seed, ps.grid.size())}});
            }
            return all_ok ? 0 : 3;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
