#pragma once

#include "hmortar/assembly.hpp"
#include "hmortar/mesh.hpp"

namespace hmortar {

/// Trigonometric multiplier basis of degree N, internal ordering
/// [1, cos(theta), sin(theta), ..., cos(N*theta), sin(N*theta)],
/// dimension 2N+1. The constant basis function is 1; reported coefficients
/// follow the c0/2 convention (see to_fourier_coeffs).
inline int multiplier_dim(int degree) { return 2 * degree + 1; }

/// Coupling matrix between the multiplier basis and the piecewise-linear
/// interface trace: entry (mode, j) = r_gamma * integral of
/// trig_mode(theta) * hat_j(theta) over [0, 2*pi), computed in closed form.
/// Columns are trace dofs; cols_free maps them into the free dof vector.
struct CouplingMatrix {
    int degree = 0;
    double r_gamma = 0.0;
    Eigen::MatrixXd entries;        // (2N+1) x trace size
    std::vector<int> cols_free;     // trace column -> free dof index

    /// B * a for a free-dof coefficient vector.
    Eigen::VectorXd apply(const Eigen::VectorXd& free_vec) const;

    /// free_vec += scale * B^T * mu.
    void add_transposed(const Eigen::VectorXd& mu, double scale,
                        Eigen::VectorXd& free_vec) const;

    /// Dense B scattered into a (2N+1) x n_free matrix.
    Eigen::MatrixXd scatter(int n_free) const;
};

CouplingMatrix assemble_coupling(const InterfaceTrace& trace, const DofMap& dofs,
                                 int degree, double r_gamma);

/// Block-diagonal rotation operator R(alpha): identity on the constant mode
/// and a 2x2 rotation by n*alpha on each (cos_n, sin_n) pair. Orthogonal.
Eigen::MatrixXd rotation_blocks(double alpha, int degree);

/// d/dalpha R(alpha): block n is n*[[-sin,-cos],[cos,-sin]](n*alpha),
/// zero on the constant mode.
Eigen::MatrixXd rotation_derivative(double alpha, int degree);

/// Coefficient map of d/dtheta on the internal basis:
/// (c_n, d_n) -> (n*d_n, -n*c_n), constant mode -> 0.
Eigen::VectorXd derivative_coeffs(const Eigen::VectorXd& coeffs);

/// Internal coefficients -> standard Fourier convention (c_0 doubled,
/// lambda = c0/2 + sum c_n cos + d_n sin).
Eigen::VectorXd to_fourier_coeffs(const Eigen::VectorXd& internal);
Eigen::VectorXd from_fourier_coeffs(const Eigen::VectorXd& fourier);

/// Evaluate lambda(theta) = c0/2 + sum c_n cos(n theta) + d_n sin(n theta)
/// from Fourier-convention coefficients [c0, c1, d1, ..., cN, dN].
double eval_multiplier(const Eigen::VectorXd& fourier_coeffs, double theta);

} // namespace hmortar
