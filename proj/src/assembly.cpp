#include "hmortar/assembly.hpp"
#include "hmortar/errors.hpp"

#include <array>
#include <string>

namespace hmortar {

namespace {

struct ElementGeometry {
    double area;
    std::array<Eigen::Vector2d, 3> grad;  // constant P1 basis gradients
};

ElementGeometry element_geometry(const Mesh& m, const Triangle& t, size_t index) {
    const Eigen::Vector2d& a = m.nodes[static_cast<size_t>(t.v[0])];
    const Eigen::Vector2d& b = m.nodes[static_cast<size_t>(t.v[1])];
    const Eigen::Vector2d& c = m.nodes[static_cast<size_t>(t.v[2])];
    const double area2 = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
    if (!(area2 > 0.0))
        throw AssemblyError("degenerate triangle " + std::to_string(index) +
                            " (non-positive signed area)");
    ElementGeometry g;
    g.area = 0.5 * area2;
    g.grad[0] = Eigen::Vector2d(b.y() - c.y(), c.x() - b.x()) / area2;
    g.grad[1] = Eigen::Vector2d(c.y() - a.y(), a.x() - c.x()) / area2;
    g.grad[2] = Eigen::Vector2d(a.y() - b.y(), b.x() - a.x()) / area2;
    return g;
}

Eigen::Vector2d centroid(const Mesh& m, const Triangle& t) {
    return (m.nodes[static_cast<size_t>(t.v[0])] + m.nodes[static_cast<size_t>(t.v[1])] +
            m.nodes[static_cast<size_t>(t.v[2])]) /
           3.0;
}

template <typename Keep>
Eigen::SparseMatrix<double> assemble_stiffness_impl(const Mesh& m, const MachineConfig& cfg,
                                                    int dim, Keep keep) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(m.triangles.size() * 9);
    for (size_t e = 0; e < m.triangles.size(); ++e) {
        const Triangle& t = m.triangles[e];
        const ElementGeometry g = element_geometry(m, t, e);
        const double nu = material_at(centroid(m, t), cfg).nu;
        for (int i = 0; i < 3; ++i) {
            const int row = keep(t.v[i]);
            if (row < 0) continue;
            for (int j = 0; j < 3; ++j) {
                const int col = keep(t.v[j]);
                if (col < 0) continue;
                triplets.emplace_back(row, col, nu * g.area * g.grad[i].dot(g.grad[j]));
            }
        }
    }
    Eigen::SparseMatrix<double> K(dim, dim);
    K.setFromTriplets(triplets.begin(), triplets.end());
    K.makeCompressed();
    return K;
}

} // namespace

DofMap make_dof_map(const Mesh& m) {
    DofMap dofs;
    dofs.free_of_node.assign(m.nodes.size(), 0);
    for (int id : m.dirichlet_nodes) dofs.free_of_node[static_cast<size_t>(id)] = -1;
    for (size_t i = 0; i < m.nodes.size(); ++i) {
        if (dofs.free_of_node[i] == 0) {
            dofs.free_of_node[i] = static_cast<int>(dofs.node_of_free.size());
            dofs.node_of_free.push_back(static_cast<int>(i));
        }
    }
    return dofs;
}

Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& m, const MachineConfig& cfg,
                                               const DofMap& dofs) {
    return assemble_stiffness_impl(m, cfg, dofs.n_free(), [&dofs](int node) {
        return dofs.free_of_node[static_cast<size_t>(node)];
    });
}

Eigen::SparseMatrix<double> assemble_stiffness_full(const Mesh& m, const MachineConfig& cfg) {
    return assemble_stiffness_impl(m, cfg, static_cast<int>(m.nodes.size()),
                                   [](int node) { return node; });
}

Eigen::VectorXd assemble_current_load(const Mesh& m, const MachineConfig& cfg,
                                      const DofMap& dofs) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(dofs.n_free());
    for (size_t e = 0; e < m.triangles.size(); ++e) {
        const Triangle& t = m.triangles[e];
        const double j = material_at(centroid(m, t), cfg).current_density;
        if (j == 0.0) continue;
        const double contribution = j * element_geometry(m, t, e).area / 3.0;
        for (int i = 0; i < 3; ++i) {
            const int row = dofs.free_of_node[static_cast<size_t>(t.v[i])];
            if (row >= 0) f[row] += contribution;
        }
    }
    return f;
}

Eigen::VectorXd assemble_magnet_load(const Mesh& m, const MachineConfig& cfg,
                                     const DofMap& dofs) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(dofs.n_free());
    for (size_t e = 0; e < m.triangles.size(); ++e) {
        const Triangle& t = m.triangles[e];
        const Eigen::Vector2d m_perp = material_at(centroid(m, t), cfg).m_perp;
        if (m_perp.isZero()) continue;
        const ElementGeometry g = element_geometry(m, t, e);
        for (int i = 0; i < 3; ++i) {
            const int row = dofs.free_of_node[static_cast<size_t>(t.v[i])];
            if (row >= 0) f[row] -= m_perp.dot(g.grad[i]) * g.area;
        }
    }
    return f;
}

} // namespace hmortar
