#include "hmortar/diagnostics.hpp"
#include "hmortar/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace hmortar {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

double compute_energy(const AssembledSystem& sys, const SolutionState& state) {
    return 0.5 * state.a_S.dot(sys.K_S * state.a_S) + 0.5 * state.a_R.dot(sys.K_R * state.a_R) -
           sys.j_M.dot(state.a_R);
}

double compute_torque_per_length(const AssembledSystem& sys, const SolutionState& state) {
    const Eigen::MatrixXd Rp = rotation_derivative(state.alpha, sys.degree);
    return state.lambda.dot(Rp * sys.B_R0.apply(state.a_R));
}

double compute_torque(const AssembledSystem& sys, const SolutionState& state) {
    return sys.cfg.axial_length * compute_torque_per_length(sys, state);
}

double compute_torque_dual(const AssembledSystem& sys, const SolutionState& state) {
    // R'(alpha) factors as J * R(alpha) with J the skew mode-derivative
    // blocks, so the torque can also be contracted through the coefficient
    // derivative of the multiplier.
    const Eigen::MatrixXd R = rotation_blocks(state.alpha, sys.degree);
    const Eigen::VectorXd dlambda = derivative_coeffs(state.lambda);
    return sys.cfg.axial_length * dlambda.dot(R * sys.B_R0.apply(state.a_R));
}

DerivativeState solve_derivative_system(const AssembledSystem& sys,
                                        const SchurPrecomputation& pre,
                                        const SolutionState& state) {
    const double alpha = state.alpha;
    const Eigen::MatrixXd R = rotation_blocks(alpha, sys.degree);
    const Eigen::MatrixXd Rp = rotation_derivative(alpha, sys.degree);

    // Differentiated system: K_S a_S' + B_S^T l' = 0,
    // K_R a_R' - B_R^T l' = B_R'^T l, B_S a_S' - B_R a_R' = B_R' a_R.
    // Eliminating the interior unknowns with the precomputed Schur data:
    //   K_int l' = -R G_R R'^T l - R'(alpha) B_R0 a_R.
    const Eigen::VectorXd rhs =
        -(R * (pre.G_R * (Rp.transpose() * state.lambda))) - Rp * sys.B_R0.apply(state.a_R);
    const Eigen::VectorXd dlambda = solve_interface_rhs(pre, alpha, rhs);

    DerivativeState d;
    d.alpha = alpha;
    d.dlambda = dlambda;
    d.da_S = -pre.X_S * dlambda;
    d.da_R = pre.X_R * (Rp.transpose() * state.lambda + R.transpose() * dlambda);
    return d;
}

double energy_balance_residual(const AssembledSystem& sys, const SolutionState& state,
                               const DerivativeState& dstate) {
    const double dE = state.a_S.dot(sys.K_S * dstate.da_S) +
                      state.a_R.dot(sys.K_R * dstate.da_R) - sys.j_M.dot(dstate.da_R);
    const double electric_power = sys.j_e.dot(dstate.da_S);
    const double torque = compute_torque_per_length(sys, state);
    return std::abs(dE - (electric_power - torque));
}

FourierCoeffs fourier_analyze(const Eigen::VectorXd& samples, int max_mode) {
    const int K = static_cast<int>(samples.size());
    if (K < 2 * max_mode + 1)
        throw ConfigError("Fourier analysis needs at least 2*M+1 samples over the period");
    FourierCoeffs f;
    f.cos_c = Eigen::VectorXd::Zero(max_mode + 1);
    f.sin_d = Eigen::VectorXd::Zero(max_mode + 1);
    for (int m = 0; m <= max_mode; ++m) {
        double c = 0.0, d = 0.0;
        for (int k = 0; k < K; ++k) {
            const double a = 2.0 * pi * k / K;
            c += samples[k] * std::cos(m * a);
            d += samples[k] * std::sin(m * a);
        }
        f.cos_c[m] = 2.0 * c / K;
        f.sin_d[m] = m == 0 ? 0.0 : 2.0 * d / K;
    }
    return f;
}

int cogging_order(const MachineConfig& cfg) {
    return std::lcm(2 * cfg.pole_pairs, cfg.slots);
}

SymmetryReport lambda_symmetry_report(const Eigen::VectorXd& fourier_coeffs, int pole_pairs) {
    const int degree = (static_cast<int>(fourier_coeffs.size()) - 1) / 2;
    SymmetryReport rep;
    double c0 = 0.5 * fourier_coeffs[0];
    rep.irrelevant_sum = std::abs(c0);  // constant mode is never symmetry-relevant
    for (int n = 1; n <= degree; ++n) {
        const double amp = std::hypot(fourier_coeffs[2 * n - 1], fourier_coeffs[2 * n]);
        const bool relevant = n % pole_pairs == 0 && (n / pole_pairs) % 2 == 1;
        if (relevant) {
            rep.relevant_modes.push_back(n);
            rep.max_relevant = std::max(rep.max_relevant, amp);
        } else {
            rep.irrelevant_sum += amp;
        }
    }
    return rep;
}

SymmetryReport torque_symmetry_report(const FourierCoeffs& coeffs, int order) {
    SymmetryReport rep;
    const int max_mode = static_cast<int>(coeffs.cos_c.size()) - 1;
    rep.cos_sum = std::abs(0.5 * coeffs.cos_c[0]);
    for (int m = 1; m <= max_mode; ++m) rep.cos_sum += std::abs(coeffs.cos_c[m]);
    for (int m = 1; m <= max_mode; ++m) {
        if (m % order == 0) {
            rep.relevant_modes.push_back(m);
            rep.max_relevant = std::max(rep.max_relevant, std::abs(coeffs.sin_d[m]));
        } else {
            rep.irrelevant_sum += std::abs(coeffs.sin_d[m]);
        }
    }
    return rep;
}

TorqueCurve sweep_torque(const AssembledSystem& sys, const SchurPrecomputation& pre,
                         double start, double stop, int count) {
    if (count < 2) throw ConfigError("sweep needs at least 2 grid points");
    TorqueCurve curve;
    curve.alphas.resize(count);
    curve.torques.resize(count);
    for (int i = 0; i < count; ++i) {
        const double alpha = start + (stop - start) * i / (count - 1);
        curve.alphas[i] = alpha;
        try {
            const Eigen::VectorXd lambda = solve_interface(pre, alpha);
            const SolutionState state = reconstruct(pre, lambda, alpha);
            curve.torques[i] = compute_torque(sys, state);
        } catch (const InstabilityError&) {
            curve.torques[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return curve;
}

} // namespace hmortar
