#pragma once

#include "hmortar/mesh.hpp"

#include <Eigen/Sparse>

namespace hmortar {

/// Mapping between mesh nodes and free (non-Dirichlet) degrees of freedom.
struct DofMap {
    std::vector<int> free_of_node;  // -1 for Dirichlet nodes
    std::vector<int> node_of_free;

    int n_free() const { return static_cast<int>(node_of_free.size()); }
};

DofMap make_dof_map(const Mesh& m);

/// P1 stiffness matrix with piecewise-constant reluctivity, Dirichlet
/// rows/columns eliminated. Symmetric positive definite for a nonempty
/// Dirichlet set. Throws AssemblyError on a degenerate triangle.
Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& m, const MachineConfig& cfg,
                                               const DofMap& dofs);

/// Unreduced stiffness over all nodes (constants in the kernel).
Eigen::SparseMatrix<double> assemble_stiffness_full(const Mesh& m, const MachineConfig& cfg);

/// Load vector of the impressed currents: entry i = sum over triangles of
/// j * area / 3. Exact for P1 with piecewise-constant j.
Eigen::VectorXd assemble_current_load(const Mesh& m, const MachineConfig& cfg,
                                      const DofMap& dofs);

/// Load vector of the magnetization: entry i = -sum M_perp . grad(phi_i) * area.
Eigen::VectorXd assemble_magnet_load(const Mesh& m, const MachineConfig& cfg,
                                     const DofMap& dofs);

} // namespace hmortar
