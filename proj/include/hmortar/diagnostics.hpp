#pragma once

#include "hmortar/solver.hpp"

namespace hmortar {

/// Magnetic energy per unit axial length (J/m):
/// E = 1/2 |a_S|^2_{K_S} + 1/2 |a_R|^2_{K_R} - j_M^T a_R.
double compute_energy(const AssembledSystem& sys, const SolutionState& state);

/// Torque per unit axial length: T = lambda^T R'(alpha) B_R(0) a_R.
/// Positive counterclockwise.
double compute_torque_per_length(const AssembledSystem& sys, const SolutionState& state);

/// Torque in N*m, scaled by the axial length.
double compute_torque(const AssembledSystem& sys, const SolutionState& state);

/// Alternative torque form via the mode-derivative of the multiplier:
/// T = (D lambda)^T R(alpha) B_R(0) a_R. Agrees with compute_torque.
double compute_torque_dual(const AssembledSystem& sys, const SolutionState& state);

struct DerivativeState {
    double alpha = 0.0;
    Eigen::VectorXd da_S, da_R, dlambda;
};

/// Solve the formally differentiated system for (a_S', a_R', lambda')
/// reusing the Schur machinery; only right-hand sides change.
DerivativeState solve_derivative_system(const AssembledSystem& sys,
                                        const SchurPrecomputation& pre,
                                        const SolutionState& state);

/// | dE/dalpha - (electric power - torque) |, evaluated algebraically:
/// (a_S^T K_S a_S' + a_R^T K_R a_R' - j_M^T a_R') - (j_e^T a_S' - T).
/// Vanishes to round-off (discrete energy balance).
double energy_balance_residual(const AssembledSystem& sys, const SolutionState& state,
                               const DerivativeState& dstate);

/// Discrete Fourier coefficients c_m, d_m (m = 0..M) of samples on a
/// uniform grid alpha_k = k * 2*pi / K over one full period, in the
/// convention f = c0/2 + sum c_m cos(m a) + d_m sin(m a).
/// Throws ConfigError if the grid is too short (K < 2M+1).
struct FourierCoeffs {
    Eigen::VectorXd cos_c;  // c_0 .. c_M
    Eigen::VectorXd sin_d;  // d_0 (=0) .. d_M
};

FourierCoeffs fourier_analyze(const Eigen::VectorXd& samples, int max_mode);

/// Amplitude partition into symmetry-relevant modes and the complement.
struct SymmetryReport {
    std::vector<int> relevant_modes;
    double max_relevant = 0.0;
    double irrelevant_sum = 0.0;
    double cos_sum = 0.0;  // torque reports: sum |c_m| over all m
};

/// Cogging order lcm(2P, S): fundamental spatial harmonic of the torque.
int cogging_order(const MachineConfig& cfg);

/// Multiplier modes: relevant are the odd multiples of P.
SymmetryReport lambda_symmetry_report(const Eigen::VectorXd& fourier_coeffs, int pole_pairs);

/// Torque modes: relevant are the sine coefficients at multiples of the
/// cogging order; all cosine coefficients are irrelevant.
SymmetryReport torque_symmetry_report(const FourierCoeffs& coeffs, int order);

struct TorqueCurve {
    Eigen::VectorXd alphas;   // rad
    Eigen::VectorXd torques;  // N*m
};

/// Torque over a uniform alpha grid through the interface solver. Angles
/// where the interface system is unstable get NaN entries.
TorqueCurve sweep_torque(const AssembledSystem& sys, const SchurPrecomputation& pre,
                         double start, double stop, int count);

} // namespace hmortar
