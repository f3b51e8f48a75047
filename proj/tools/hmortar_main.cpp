#include "hmortar/config_io.hpp"
#include "hmortar/diagnostics.hpp"
#include "hmortar/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>

namespace {

constexpr double pi = std::numbers::pi;
constexpr double deg = pi / 180.0;

namespace fs = std::filesystem;
using namespace hmortar;

std::vector<double> nodal_field(const Mesh& mesh, const DofMap& dofs,
                                const Eigen::VectorXd& a) {
    std::vector<double> field(mesh.nodes.size(), 0.0);
    for (int f = 0; f < dofs.n_free(); ++f)
        field[static_cast<size_t>(dofs.node_of_free[static_cast<size_t>(f)])] = a[f];
    return field;
}

std::vector<double> gradient_magnitude(const Mesh& mesh, const std::vector<double>& a) {
    std::vector<double> field;
    field.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        const Eigen::Vector2d& p0 = mesh.nodes[static_cast<size_t>(t.v[0])];
        const Eigen::Vector2d& p1 = mesh.nodes[static_cast<size_t>(t.v[1])];
        const Eigen::Vector2d& p2 = mesh.nodes[static_cast<size_t>(t.v[2])];
        const double area2 = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
                             (p2.x() - p0.x()) * (p1.y() - p0.y());
        const Eigen::Vector2d g0(p1.y() - p2.y(), p2.x() - p1.x());
        const Eigen::Vector2d g1(p2.y() - p0.y(), p0.x() - p2.x());
        const Eigen::Vector2d g2(p0.y() - p1.y(), p1.x() - p0.x());
        const Eigen::Vector2d grad =
            (a[static_cast<size_t>(t.v[0])] * g0 + a[static_cast<size_t>(t.v[1])] * g1 +
             a[static_cast<size_t>(t.v[2])] * g2) /
            area2;
        field.push_back(grad.norm());
    }
    return field;
}

void export_fields(const AssembledSystem& sys, const SolutionState& state,
                   const fs::path& out_dir) {
    const auto a_R = nodal_field(sys.meshes.rotor, sys.dofs_R, state.a_R);
    const auto a_S = nodal_field(sys.meshes.stator, sys.dofs_S, state.a_S);
    const auto g_R = gradient_magnitude(sys.meshes.rotor, a_R);
    const auto g_S = gradient_magnitude(sys.meshes.stator, a_S);
    write_vtk(sys.meshes.rotor, (out_dir / "rotor.vtk").string(), &a_R, &g_R);
    write_vtk(sys.meshes.stator, (out_dir / "stator.vtk").string(), &a_S, &g_S);
}

int run_simulate(const std::string& config_path, double alpha_deg, const std::string& out,
                 bool fields) {
    const MachineConfig cfg = load_config(config_path);
    const double alpha = alpha_deg * deg;
    const AssembledSystem sys = assemble_system(cfg);
    const SchurPrecomputation pre = precompute_schur(sys);
    const Eigen::VectorXd lambda = solve_interface(pre, alpha);
    const SolutionState state = reconstruct(pre, lambda, alpha);

    const double energy = compute_energy(sys, state);
    const double torque = compute_torque(sys, state);

    fs::create_directories(out);
    {
        std::ofstream summary(fs::path(out) / "summary.txt");
        summary.precision(17);
        summary << "alpha_deg " << alpha_deg << "\n";
        summary << "energy_J_per_m " << energy << "\n";
        summary << "energy_J " << energy * cfg.axial_length << "\n";
        summary << "torque_Nm " << torque << "\n";
        const Eigen::VectorXd fourier = to_fourier_coeffs(lambda);
        summary << "lambda_coefficients (lambda = c0/2 + sum; order c0 c1 d1 ... cN dN)\n";
        for (Eigen::Index i = 0; i < fourier.size(); ++i) summary << fourier[i] << "\n";
    }
    if (fields) export_fields(sys, state, out);

    std::cout << "alpha = " << alpha_deg << " deg, energy = " << energy
              << " J/m, torque = " << torque << " N*m\n";
    return 0;
}

int run_sweep(const std::string& config_path, double start_deg, double stop_deg, int count,
              const std::string& out, bool symmetry) {
    const MachineConfig cfg = load_config(config_path);
    const AssembledSystem sys = assemble_system(cfg);
    const SchurPrecomputation pre = precompute_schur(sys);
    const TorqueCurve curve = sweep_torque(sys, pre, start_deg * deg, stop_deg * deg, count);

    fs::create_directories(out);
    write_torque_csv(curve, (fs::path(out) / "torque.csv").string());

    int unstable = 0;
    for (Eigen::Index i = 0; i < curve.torques.size(); ++i)
        if (std::isnan(curve.torques[i])) ++unstable;
    if (unstable > 0)
        std::cerr << "hmortar: " << unstable << " of " << count
                  << " angles hit the interface instability; recorded as NaN\n";

    if (symmetry) {
        if (std::abs((stop_deg - start_deg) - 360.0) > 1e-9) {
            std::cerr << "hmortar: symmetry report needs a full-turn sweep "
                         "(stop - start = 360)\n";
            return 1;
        }
        if (unstable > 0) {
            std::cerr << "hmortar: symmetry report skipped (unstable angles present)\n";
            return 1;
        }
        const int order = cogging_order(cfg);
        // drop the duplicated end point so samples cover [0, 2*pi) uniformly
        const Eigen::VectorXd samples = curve.torques.head(count - 1);
        const int max_mode = std::min(3 * order, (static_cast<int>(samples.size()) - 1) / 2);
        const FourierCoeffs coeffs = fourier_analyze(samples, max_mode);
        const SymmetryReport rep = torque_symmetry_report(coeffs, order);
        write_fourier_summary(coeffs, rep, order, (fs::path(out) / "fourier.txt").string());

        const Eigen::VectorXd lambda = solve_interface(pre, 7.0 * deg);
        const SymmetryReport lrep =
            lambda_symmetry_report(to_fourier_coeffs(lambda), cfg.pole_pairs);
        std::ofstream lout(fs::path(out) / "lambda_symmetry.txt");
        lout.precision(17);
        lout << "# multiplier mode amplitudes at alpha = 7 deg\n";
        lout << "max_relevant " << lrep.max_relevant << "\n";
        lout << "irrelevant_sum " << lrep.irrelevant_sum << "\n";
    }
    std::cout << "sweep written to " << out << "\n";
    return 0;
}

struct CheckRunner {
    int failures = 0;

    void check(const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    }
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

int run_verify(const std::string& config_path, bool perturb_coupling) {
    const MachineConfig cfg = load_config(config_path);
    CheckRunner r;

    AssembledSystem sys = assemble_system(cfg);
    if (perturb_coupling) sys.B_R0.entries(1, 3) += 1e-6;  // negative-control hook
    const SchurPrecomputation pre = precompute_schur(sys);

    // rotation identity: assembling on a rotated trace matches R(alpha) B(0)
    {
        const InterfaceTrace trace = extract_trace(sys.meshes.rotor);
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(0.0, 2.0 * pi);
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            const double alpha = dist(rng);
            Mesh rotated = sys.meshes.rotor;
            for (auto& p : rotated.nodes) p = rotate_point(p, alpha);
            const InterfaceTrace rtrace = extract_trace(rotated);
            const CouplingMatrix direct =
                assemble_coupling(rtrace, make_dof_map(rotated), sys.degree, cfg.r_gamma);
            const Eigen::MatrixXd via_blocks =
                rotation_blocks(alpha, sys.degree) * sys.B_R0.entries;
            // align columns by node id (sorting by angle permutes the trace)
            std::vector<int> col_of_node(rotated.nodes.size(), -1);
            for (size_t j = 0; j < trace.node_ids.size(); ++j)
                col_of_node[static_cast<size_t>(trace.node_ids[j])] = static_cast<int>(j);
            const double scale = sys.B_R0.entries.cwiseAbs().maxCoeff();
            for (size_t j = 0; j < rtrace.node_ids.size(); ++j) {
                const int j0 = col_of_node[static_cast<size_t>(rtrace.node_ids[j])];
                worst = std::max(worst, (direct.entries.col(static_cast<Eigen::Index>(j)) -
                                         via_blocks.col(j0))
                                                .cwiseAbs()
                                                .maxCoeff() /
                                            scale);
            }
        }
        r.check("rotation identity B_R(alpha) = R(alpha) B_R(0)", worst <= 1e-12);
    }

    // coupling integrals against adaptive quadrature
    {
        const InterfaceTrace trace = extract_trace(sys.meshes.rotor);
        const DofMap dofs = make_dof_map(sys.meshes.rotor);
        const CouplingMatrix B = assemble_coupling(trace, dofs, 5, cfg.r_gamma);
        const int K = static_cast<int>(trace.angles.size());
        double worst = 0.0;
        for (int j : {0, 1, K / 2}) {
            double t_prev = trace.angles[static_cast<size_t>((j + K - 1) % K)];
            double t_next = trace.angles[static_cast<size_t>((j + 1) % K)];
            const double tj = trace.angles[static_cast<size_t>(j)];
            if (j == 0) t_prev -= 2.0 * pi;
            if (j == K - 1) t_next += 2.0 * pi;
            auto hat = [&](double th) {
                return th < tj ? (th - t_prev) / (tj - t_prev) : (t_next - th) / (t_next - tj);
            };
            for (int row = 0; row <= 2 * 5; ++row) {
                auto integrand = [&](double th) {
                    const double trig = row == 0          ? 1.0
                                        : row % 2 == 1 ? std::cos(((row + 1) / 2) * th)
                                                       : std::sin((row / 2) * th);
                    return cfg.r_gamma * trig * hat(th);
                };
                const double oracle = integrate(integrand, t_prev, tj, 1e-15) +
                                      integrate(integrand, tj, t_next, 1e-15);
                worst = std::max(worst, std::abs(B.entries(row, j) - oracle));
            }
        }
        r.check("analytic coupling integrals vs adaptive quadrature", worst <= 1e-12);
    }

    // Schur path against the monolithic saddle-point solve
    {
        bool ok = true;
        for (double alpha : {0.0, 0.3}) {
            const SolutionState mono = solve_monolithic(sys, alpha);
            const SolutionState schur = reconstruct(pre, solve_interface(pre, alpha), alpha);
            const double scale = std::max(1e-300, mono.a_R.norm());
            ok = ok && (mono.a_S - schur.a_S).norm() <= 1e-8 * std::max(1e-300, mono.a_S.norm()) &&
                 (mono.a_R - schur.a_R).norm() <= 1e-8 * scale &&
                 (mono.lambda - schur.lambda).norm() <= 1e-8 * std::max(1e-300, mono.lambda.norm());
        }
        r.check("Schur-complement path matches monolithic solve", ok);
    }

    // discrete energy balance
    {
        bool ok = true;
        for (double alpha : {0.1, 1.0, 2.5}) {
            const SolutionState state = reconstruct(pre, solve_interface(pre, alpha), alpha);
            const DerivativeState dstate = solve_derivative_system(sys, pre, state);
            const double scale = std::max(
                {std::abs(compute_energy(sys, state)),
                 std::abs(compute_torque_per_length(sys, state)), 1.0});
            ok = ok && energy_balance_residual(sys, state, dstate) <= 1e-10 * scale;
        }
        r.check("discrete energy balance", ok);
    }

    // instability detection above the trace-dof bound
    {
        MachineConfig small = cfg;
        // 2N+1 beyond the combined trace dof count forces a singular K_int
        small.multiplier_degree =
            (sys.trace_size_rotor() + sys.trace_size_stator()) / 2 + 1;
        bool raised = false;
        try {
            const AssembledSystem unstable_sys = assemble_system(small);
            const SchurPrecomputation unstable_pre = precompute_schur(unstable_sys);
            solve_interface(unstable_pre, 0.1);
        } catch (const InstabilityError&) {
            raised = true;
        }
        r.check("instability detected above the multiplier stability bound", raised);
    }

    return r.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D magnetostatic machine simulator with harmonic mortar stator-rotor coupling"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "hmortar_out";
    double alpha_deg = 0.0;
    double start_deg = 0.0, stop_deg = 10.0;
    int count = 2;
    bool fields = false, symmetry = false, perturb = false;

    auto* sim = app.add_subcommand("simulate", "solve at a single rotation angle");
    sim->add_option("--config", config_path, "config file (JSON)")->required();
    sim->add_option("--alpha-deg", alpha_deg, "rotation angle in degrees")->required();
    sim->add_option("--out", out_dir, "output directory");
    sim->add_flag("--export-fields", fields, "write VTK field files");

    auto* sweep = app.add_subcommand("sweep", "torque sweep over a rotation angle grid");
    sweep->add_option("--config", config_path, "config file (JSON)")->required();
    sweep->add_option("--start-deg", start_deg, "grid start (deg)")->required();
    sweep->add_option("--stop-deg", stop_deg, "grid stop (deg)")->required();
    sweep->add_option("--count", count, "grid point count")->required()
        ->check(CLI::Range(2, 1 << 20));
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_flag("--symmetry-report", symmetry,
                    "write Fourier/symmetry reports (needs a full-turn sweep)");

    auto* verify = app.add_subcommand("verify", "run the built-in consistency checks");
    verify->add_option("--config", config_path, "config file (JSON)")->required();
    verify->add_flag("--perturb-coupling", perturb,
                     "negative control: corrupt B_R(0) before checking");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return run_simulate(config_path, alpha_deg, out_dir, fields);
        if (sweep->parsed()) return run_sweep(config_path, start_deg, stop_deg, count, out_dir, symmetry);
        return run_verify(config_path, perturb);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
