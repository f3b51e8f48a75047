#pragma once

#include "hmortar/mortar.hpp"

#include <Eigen/SparseCholesky>
#include <memory>

namespace hmortar {

/// Everything that is independent of the rotation angle: subdomain
/// stiffness matrices and loads, coupling matrices, factorizations.
struct AssembledSystem {
    MachineConfig cfg;
    MeshPair meshes;
    DofMap dofs_S, dofs_R;
    Eigen::SparseMatrix<double> K_S, K_R;
    Eigen::VectorXd j_e, j_M;
    CouplingMatrix B_S, B_R0;
    int degree = 0;  // multiplier degree N

    std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> fact_S, fact_R;

    int trace_size_rotor() const { return static_cast<int>(B_R0.cols_free.size()); }
    int trace_size_stator() const { return static_cast<int>(B_S.cols_free.size()); }
};

/// Assemble meshes, matrices, loads and couplings, and factorize K_S, K_R.
/// `degree_override` < 0 keeps cfg.multiplier_degree.
AssembledSystem assemble_system(const MachineConfig& cfg, int degree_override = -1);

struct SolutionState {
    double alpha = 0.0;
    Eigen::VectorXd a_S, a_R;
    Eigen::VectorXd lambda;  // internal basis coefficients
};

/// Reference solve of the full symmetric indefinite saddle-point system
/// [[K_S, 0, B_S^T], [0, K_R, -B_R(a)^T], [B_S, -B_R(a), 0]].
/// Verification oracle only. Throws InstabilityError when the saddle matrix
/// is numerically singular.
SolutionState solve_monolithic(const AssembledSystem& sys, double alpha);

/// Angle-independent Schur data: X = K^{-1} B^T columns, y = K^{-1} j,
/// Gram blocks G = B X and g = B y.
struct SchurPrecomputation {
    int degree = 0;
    Eigen::MatrixXd X_S, X_R;  // n_free x (2N+1)
    Eigen::VectorXd y_S, y_R;
    Eigen::MatrixXd G_S, G_R;  // (2N+1) x (2N+1), symmetric PSD
    Eigen::VectorXd g_S, g_R;
};

SchurPrecomputation precompute_schur(const AssembledSystem& sys);

/// Interface matrix K_int(alpha) = G_S + R(alpha) G_R R(alpha)^T.
Eigen::MatrixXd interface_matrix(const SchurPrecomputation& pre, double alpha);

/// Extreme-eigenvalue condition estimate of K_int(alpha).
double interface_condition(const SchurPrecomputation& pre, double alpha);

/// Threshold above which solve_interface refuses to solve.
inline constexpr double instability_condition_limit = 1e12;

/// Solve K_int(alpha) lambda = f_int(alpha) = g_S - R(alpha) g_R.
/// Throws InstabilityError when the condition estimate exceeds the limit.
Eigen::VectorXd solve_interface(const SchurPrecomputation& pre, double alpha);

/// Solve K_int(alpha) x = rhs for an arbitrary right-hand side (used by the
/// derivative system). Same instability behavior as solve_interface.
Eigen::VectorXd solve_interface_rhs(const SchurPrecomputation& pre, double alpha,
                                    const Eigen::VectorXd& rhs);

/// a_S = y_S - X_S lambda, a_R = y_R + X_R R(alpha)^T lambda.
SolutionState reconstruct(const SchurPrecomputation& pre, const Eigen::VectorXd& lambda,
                          double alpha);

/// Relative residual norms of the three block equations at the given state.
Eigen::Vector3d block_residuals(const AssembledSystem& sys, const SolutionState& state);

/// Instrumentation: number of sparse factorizations performed so far.
long factorization_count();
void reset_factorization_count();

} // namespace hmortar
