#include "hmortar/diagnostics.hpp"
#include "hmortar/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hmortar;
using hmortar::testing::pi;
using hmortar::testing::small_config;

namespace {

// excitation currents break the rotational symmetry so torques and angle
// derivatives are well away from zero
const AssembledSystem& cached_system() {
    static const AssembledSystem sys = [] {
        MachineConfig cfg = small_config();
        // 4-slot pattern: spatial harmonic 9 lies inside the degree-10
        // multiplier space, so the rotor side genuinely depends on alpha
        cfg.current_density = {1.2e6, 1.2e6, -1.2e6, -1.2e6};
        return assemble_system(cfg);
    }();
    return sys;
}

const SchurPrecomputation& cached_schur() {
    static const SchurPrecomputation pre = precompute_schur(cached_system());
    return pre;
}

SolutionState solve_at(double alpha) {
    return reconstruct(cached_schur(), solve_interface(cached_schur(), alpha), alpha);
}

// element-loop oracle for the energy functional:
// sum over triangles of area * (nu/2 |grad a|^2 + M_perp . grad a)
double energy_oracle(const Mesh& mesh, const MachineConfig& cfg, const DofMap& dofs,
                     const Eigen::VectorXd& a_free) {
    Eigen::VectorXd a_node = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.nodes.size()));
    for (size_t n = 0; n < mesh.nodes.size(); ++n)
        if (dofs.free_of_node[n] >= 0) a_node[static_cast<Eigen::Index>(n)] = a_free[dofs.free_of_node[n]];

    double e = 0.0;
    for (const auto& t : mesh.triangles) {
        const Eigen::Vector2d p0 = mesh.nodes[static_cast<size_t>(t.v[0])];
        const Eigen::Vector2d p1 = mesh.nodes[static_cast<size_t>(t.v[1])];
        const Eigen::Vector2d p2 = mesh.nodes[static_cast<size_t>(t.v[2])];
        Eigen::Matrix2d J;
        J.col(0) = p1 - p0;
        J.col(1) = p2 - p0;
        const Eigen::Vector2d dv(a_node[t.v[1]] - a_node[t.v[0]],
                                 a_node[t.v[2]] - a_node[t.v[0]]);
        const Eigen::Vector2d grad = J.transpose().inverse() * dv;
        const double area = triangle_area(mesh, t);
        const Material mat = material_at((p0 + p1 + p2) / 3.0, cfg);
        e += area * (0.5 * mat.nu * grad.squaredNorm() + mat.m_perp.dot(grad));
    }
    return e;
}

} // namespace

TEST_CASE("energy vanishes for the zero state") {
    const AssembledSystem& sys = cached_system();
    SolutionState zero;
    zero.a_S = Eigen::VectorXd::Zero(sys.dofs_S.n_free());
    zero.a_R = Eigen::VectorXd::Zero(sys.dofs_R.n_free());
    zero.lambda = Eigen::VectorXd::Zero(multiplier_dim(sys.degree));
    CHECK(compute_energy(sys, zero) == 0.0);
    CHECK(compute_torque(sys, zero) == 0.0);
}

TEST_CASE("energy matches an element-loop oracle") {
    const AssembledSystem& sys = cached_system();
    const SolutionState state = solve_at(0.3);
    const double e = energy_oracle(sys.meshes.stator, sys.cfg, sys.dofs_S, state.a_S) +
                     energy_oracle(sys.meshes.rotor, sys.cfg, sys.dofs_R, state.a_R);
    CHECK(compute_energy(sys, state) == doctest::Approx(e).epsilon(1e-10));
}

TEST_CASE("source scaling: potentials linear, stored field energy quadratic") {
    MachineConfig cfg = small_config();
    cfg.current_density.clear();
    const double c = 2.0;
    MachineConfig scaled = cfg;
    scaled.b_remanence *= c;

    const AssembledSystem s1 = assemble_system(cfg);
    const AssembledSystem s2 = assemble_system(scaled);
    const SolutionState u1 = solve_monolithic(s1, 0.2);
    const SolutionState u2 = solve_monolithic(s2, 0.2);
    CHECK((u2.a_R - c * u1.a_R).norm() <= 1e-10 * u2.a_R.norm());

    // the quadratic part scales with c^2, the magnetization work term too
    const double quad1 = compute_energy(s1, u1) + s1.j_M.dot(u1.a_R);
    const double quad2 = compute_energy(s2, u2) + s2.j_M.dot(u2.a_R);
    CHECK(quad2 == doctest::Approx(c * c * quad1).epsilon(1e-10));
}

TEST_CASE("torque forms agree and torque scales with axial length") {
    const AssembledSystem& sys = cached_system();
    for (double alpha : {0.05, 0.4, 1.7}) {
        const SolutionState state = solve_at(alpha);
        const double t = compute_torque(sys, state);
        CHECK(compute_torque_dual(sys, state) == doctest::Approx(t).epsilon(1e-12));
        CHECK(compute_torque_per_length(sys, state) * sys.cfg.axial_length ==
              doctest::Approx(t).epsilon(1e-15));
    }
}

TEST_CASE("cogging torque vanishes at the aligned position") {
    // magnets centered on theta = 0 and mirror-symmetric slots make alpha = 0
    // a stationary point of the energy; needs a machine whose ripple order
    // is reachable by the multiplier space
    const AssembledSystem sys = assemble_system(hmortar::testing::tiny_config());
    const SchurPrecomputation pre = precompute_schur(sys);
    auto torque_at = [&](double a) {
        return compute_torque(sys, reconstruct(pre, solve_interface(pre, a), a));
    };
    const double tref = std::abs(torque_at(0.3));
    CHECK(tref > 0.0);
    CHECK(std::abs(torque_at(0.0)) <= 1e-9 * tref);
}

TEST_CASE("derivative state matches central differences of the interface solve") {
    const AssembledSystem& sys = cached_system();
    const SchurPrecomputation& pre = cached_schur();
    const double alpha = 0.47;
    const SolutionState state = solve_at(alpha);
    const DerivativeState d = solve_derivative_system(sys, pre, state);

    const double eps = 1e-5;
    const SolutionState up = solve_at(alpha + eps);
    const SolutionState dn = solve_at(alpha - eps);
    const Eigen::VectorXd fd_l = (up.lambda - dn.lambda) / (2.0 * eps);
    const Eigen::VectorXd fd_S = (up.a_S - dn.a_S) / (2.0 * eps);
    const Eigen::VectorXd fd_R = (up.a_R - dn.a_R) / (2.0 * eps);
    CHECK((fd_l - d.dlambda).norm() <= 1e-6 * (d.dlambda.norm() + 1e-300));
    CHECK((fd_S - d.da_S).norm() <= 1e-6 * (d.da_S.norm() + 1e-300));
    CHECK((fd_R - d.da_R).norm() <= 1e-6 * (d.da_R.norm() + 1e-300));
}

TEST_CASE("discrete energy balance holds to round-off") {
    const AssembledSystem& sys = cached_system();
    const SchurPrecomputation& pre = cached_schur();
    for (double alpha : {0.1, 1.0, 2.5}) {
        const SolutionState state = solve_at(alpha);
        const DerivativeState d = solve_derivative_system(sys, pre, state);
        const double scale = std::max({std::abs(compute_energy(sys, state)),
                                       std::abs(compute_torque_per_length(sys, state)), 1.0});
        CHECK(energy_balance_residual(sys, state, d) <= 1e-10 * scale);
    }
}

TEST_CASE("energy derivative against finite differences of the energy") {
    const AssembledSystem& sys = cached_system();
    const SchurPrecomputation& pre = cached_schur();
    const double alpha = 0.9, eps = 1e-5;
    const SolutionState state = solve_at(alpha);
    const DerivativeState d = solve_derivative_system(sys, pre, state);
    const double dE = state.a_S.dot(sys.K_S * d.da_S) + state.a_R.dot(sys.K_R * d.da_R) -
                      sys.j_M.dot(d.da_R);
    const double fd =
        (compute_energy(sys, solve_at(alpha + eps)) - compute_energy(sys, solve_at(alpha - eps))) /
        (2.0 * eps);
    CHECK(dE == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("Fourier analysis recovers synthetic spectra") {
    const int K = 32;
    Eigen::VectorXd samples(K);
    for (int k = 0; k < K; ++k) {
        const double a = 2.0 * pi * k / K;
        samples[k] = 1.5 + 2.0 * std::cos(3.0 * a) - 0.7 * std::sin(5.0 * a);
    }
    const FourierCoeffs f = fourier_analyze(samples, 7);
    CHECK(f.cos_c[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.cos_c[3] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.sin_d[5] == doctest::Approx(-0.7).epsilon(1e-12));
    double rest = 0.0;
    for (int m = 0; m <= 7; ++m) {
        if (m != 0 && m != 3) rest += std::abs(f.cos_c[m]);
        if (m != 5) rest += std::abs(f.sin_d[m]);
    }
    CHECK(rest <= 1e-12);

    CHECK_THROWS_AS(fourier_analyze(samples, 16), ConfigError);
}

TEST_CASE("Fourier analysis resolves a high mode with just enough samples") {
    const int M = 36, K = 2 * M + 1;
    Eigen::VectorXd samples(K);
    for (int k = 0; k < K; ++k) samples[k] = std::sin(M * 2.0 * pi * k / K);
    const FourierCoeffs f = fourier_analyze(samples, M);
    CHECK(f.sin_d[M] == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("cogging order") {
    MachineConfig cfg = default_config();
    CHECK(cogging_order(cfg) == 36);
    cfg.pole_pairs = 1;
    cfg.slots = 6;
    CHECK(cogging_order(cfg) == 6);
    cfg.pole_pairs = 2;
    cfg.slots = 9;
    CHECK(cogging_order(cfg) == 36);
}

TEST_CASE("multiplier symmetry report classifies modes") {
    // Fourier convention [c0, c1, d1, ...], degree 9, pole pairs 3:
    // relevant modes are 3 and 9 (odd multiples of 3)
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(19);
    coeffs[0] = 0.2;                  // constant, irrelevant
    coeffs[2 * 3 - 1] = 3.0;          // cos_3
    coeffs[2 * 6] = 0.4;              // sin_6, even multiple, irrelevant
    coeffs[2 * 9] = 1.0;              // sin_9
    const SymmetryReport rep = lambda_symmetry_report(coeffs, 3);
    CHECK(rep.relevant_modes == std::vector<int>{3, 9});
    CHECK(rep.max_relevant == doctest::Approx(3.0));
    CHECK(rep.irrelevant_sum == doctest::Approx(0.4 + 0.1));
}

TEST_CASE("torque symmetry report separates cogging harmonics") {
    FourierCoeffs f;
    f.cos_c = Eigen::VectorXd::Zero(13);
    f.sin_d = Eigen::VectorXd::Zero(13);
    f.cos_c[0] = 0.02;
    f.sin_d[6] = 5.0;
    f.sin_d[12] = 1.5;
    f.sin_d[7] = 0.3;
    const SymmetryReport rep = torque_symmetry_report(f, 6);
    CHECK(rep.relevant_modes == std::vector<int>{6, 12});
    CHECK(rep.max_relevant == doctest::Approx(5.0));
    CHECK(rep.irrelevant_sum == doctest::Approx(0.3));
    CHECK(rep.cos_sum == doctest::Approx(0.01));
}

TEST_CASE("torque sweep covers the grid and flags unstable angles") {
    const TorqueCurve curve = sweep_torque(cached_system(), cached_schur(), 0.0, pi, 5);
    REQUIRE(curve.alphas.size() == 5);
    CHECK(curve.alphas[0] == 0.0);
    CHECK(curve.alphas[4] == doctest::Approx(pi));
    for (int i = 0; i < 5; ++i) CHECK(std::isfinite(curve.torques[i]));

    const AssembledSystem bad = assemble_system(small_config(), 61);
    const SchurPrecomputation bad_pre = precompute_schur(bad);
    const TorqueCurve nan_curve = sweep_torque(bad, bad_pre, 0.0, 1.0, 3);
    for (int i = 0; i < 3; ++i) CHECK(std::isnan(nan_curve.torques[i]));

    CHECK_THROWS_AS(sweep_torque(cached_system(), cached_schur(), 0.0, 1.0, 1), ConfigError);
}
