#include "hmortar/mesh.hpp"
#include "hmortar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

namespace hmortar {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

std::vector<double> material_radii(const MachineConfig& cfg, Side side) {
    if (side == Side::Rotor)
        return {cfg.r_rotor_in, cfg.r_magnet_in(), cfg.r_rotor_out, cfg.r_gamma};
    return {cfg.r_gamma, cfg.r_stator_in, cfg.r_slot_out(), cfg.r_stator_out};
}

std::vector<int> radial_layer_counts(const MachineConfig& cfg, Side side) {
    const std::vector<double> radii = material_radii(cfg, side);
    double t_max = 0.0;
    for (size_t i = 0; i + 1 < radii.size(); ++i)
        t_max = std::max(t_max, radii[i + 1] - radii[i]);
    std::vector<int> counts;
    for (size_t i = 0; i + 1 < radii.size(); ++i) {
        const double t = radii[i + 1] - radii[i];
        counts.push_back(std::max(1, static_cast<int>(
                                         std::lround(cfg.radial_layers * t / t_max))));
    }
    return counts;
}

namespace {

Mesh build_annulus(const MachineConfig& cfg, Side side) {
    const int divisions = side == Side::Rotor ? cfg.angular_divisions_rotor
                                              : cfg.angular_divisions_stator;
    const std::vector<double> radii = material_radii(cfg, side);
    const std::vector<int> layers = radial_layer_counts(cfg, side);

    // radial grid lines: one exactly at each material radius
    std::vector<double> rings;
    rings.push_back(radii.front());
    for (size_t reg = 0; reg + 1 < radii.size(); ++reg) {
        const int n = layers[reg];
        for (int l = 1; l < n; ++l)
            rings.push_back(radii[reg] + (radii[reg + 1] - radii[reg]) * l / n);
        rings.push_back(radii[reg + 1]);  // material radius hit exactly
    }

    Mesh mesh;
    mesh.side = side;
    mesh.angular_divisions = divisions;

    const int n_rings = static_cast<int>(rings.size());
    mesh.nodes.reserve(static_cast<size_t>(n_rings) * divisions);
    for (int i = 0; i < n_rings; ++i)
        for (int k = 0; k < divisions; ++k) {
            const double theta = 2.0 * pi * k / divisions;
            mesh.nodes.emplace_back(rings[static_cast<size_t>(i)] * std::cos(theta),
                                    rings[static_cast<size_t>(i)] * std::sin(theta));
        }

    auto node = [divisions](int ring, int sector) {
        return ring * divisions + (sector % divisions);
    };

    // Quads split along alternating diagonals by (ring + sector) parity so
    // the triangulation stays invariant under the mesh mirror and under
    // rotations by an even number of sectors.
    mesh.triangles.reserve(static_cast<size_t>(n_rings - 1) * divisions * 2);
    for (int i = 0; i + 1 < n_rings; ++i) {
        for (int k = 0; k < divisions; ++k) {
            const int n00 = node(i, k), n10 = node(i + 1, k);
            const int n01 = node(i, k + 1), n11 = node(i + 1, k + 1);
            if ((i + k) % 2 == 0) {
                mesh.triangles.push_back({{n00, n10, n11}, RegionKind::AirGapRotor});
                mesh.triangles.push_back({{n00, n11, n01}, RegionKind::AirGapRotor});
            } else {
                mesh.triangles.push_back({{n00, n10, n01}, RegionKind::AirGapRotor});
                mesh.triangles.push_back({{n10, n11, n01}, RegionKind::AirGapRotor});
            }
        }
    }

    for (auto& tri : mesh.triangles) {
        const Eigen::Vector2d c = (mesh.nodes[static_cast<size_t>(tri.v[0])] +
                                   mesh.nodes[static_cast<size_t>(tri.v[1])] +
                                   mesh.nodes[static_cast<size_t>(tri.v[2])]) /
                                  3.0;
        tri.tag = material_at(c, cfg).region;
    }

    if (side == Side::Rotor) {
        for (int k = 0; k < divisions; ++k) mesh.dirichlet_nodes.push_back(node(0, k));
        // interface nodes on the outermost ring; reseat them exactly on the circle
        for (int k = 0; k < divisions; ++k) mesh.interface_nodes.push_back(node(n_rings - 1, k));
    } else {
        for (int k = 0; k < divisions; ++k)
            mesh.dirichlet_nodes.push_back(node(n_rings - 1, k));
        for (int k = 0; k < divisions; ++k) mesh.interface_nodes.push_back(node(0, k));
    }
    return mesh;
}

} // namespace

MeshPair build_meshes(const MachineConfig& cfg) {
    cfg.validate();
    const int min_trace = std::min(cfg.angular_divisions_rotor, cfg.angular_divisions_stator);
    if (2 * cfg.multiplier_degree + 1 > min_trace)
        std::cerr << "hmortar: warning: multiplier dimension " << 2 * cfg.multiplier_degree + 1
                  << " exceeds the interface trace size " << min_trace
                  << "; interface system will be unstable\n";
    return {build_annulus(cfg, Side::Rotor), build_annulus(cfg, Side::Stator)};
}

double triangle_area(const Mesh& m, const Triangle& t) {
    const Eigen::Vector2d& a = m.nodes[static_cast<size_t>(t.v[0])];
    const Eigen::Vector2d& b = m.nodes[static_cast<size_t>(t.v[1])];
    const Eigen::Vector2d& c = m.nodes[static_cast<size_t>(t.v[2])];
    return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

double min_triangle_angle(const Mesh& m) {
    double min_angle = pi;
    for (const auto& t : m.triangles) {
        for (int i = 0; i < 3; ++i) {
            const Eigen::Vector2d& p = m.nodes[static_cast<size_t>(t.v[i])];
            const Eigen::Vector2d u = m.nodes[static_cast<size_t>(t.v[(i + 1) % 3])] - p;
            const Eigen::Vector2d v = m.nodes[static_cast<size_t>(t.v[(i + 2) % 3])] - p;
            min_angle = std::min(min_angle,
                                 std::acos(u.dot(v) / (u.norm() * v.norm())));
        }
    }
    return min_angle;
}

InterfaceTrace extract_trace(const Mesh& m) {
    if (m.interface_nodes.size() < 3)
        throw AssemblyError("interface trace needs at least 3 nodes");

    double r_sum = 0.0;
    for (int id : m.interface_nodes) r_sum += m.nodes[static_cast<size_t>(id)].norm();
    const double r_gamma = r_sum / static_cast<double>(m.interface_nodes.size());
    for (int id : m.interface_nodes) {
        const double r = m.nodes[static_cast<size_t>(id)].norm();
        if (std::abs(r - r_gamma) > 1e-10 * r_gamma)
            throw AssemblyError("interface nodes do not lie on a common circle");
    }

    struct Entry {
        double angle;
        int id;
    };
    std::vector<Entry> entries;
    entries.reserve(m.interface_nodes.size());
    for (int id : m.interface_nodes) {
        const Eigen::Vector2d& p = m.nodes[static_cast<size_t>(id)];
        double theta = std::atan2(p.y(), p.x());
        if (theta < 0.0) theta += 2.0 * pi;
        if (theta >= 2.0 * pi) theta -= 2.0 * pi;
        entries.push_back({theta, id});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.angle < b.angle; });
    for (size_t i = 0; i + 1 < entries.size(); ++i)
        if (!(entries[i].angle < entries[i + 1].angle))
            throw AssemblyError("duplicate interface node angle");

    InterfaceTrace trace;
    trace.side = m.side;
    trace.r_gamma = r_gamma;
    for (const auto& e : entries) {
        trace.angles.push_back(e.angle);
        trace.node_ids.push_back(e.id);
    }
    return trace;
}

void write_vtk(const Mesh& m, const std::string& path, const std::vector<double>* nodal_field,
               const std::vector<double>* cell_field) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.precision(17);
    out << "# vtk DataFile Version 3.0\nhmortar mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << m.nodes.size() << " double\n";
    for (const auto& p : m.nodes) out << p.x() << " " << p.y() << " 0\n";
    out << "CELLS " << m.triangles.size() << " " << 4 * m.triangles.size() << "\n";
    for (const auto& t : m.triangles) out << "3 " << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
    out << "CELL_TYPES " << m.triangles.size() << "\n";
    for (size_t i = 0; i < m.triangles.size(); ++i) out << "5\n";
    out << "CELL_DATA " << m.triangles.size() << "\n";
    out << "SCALARS region int 1\nLOOKUP_TABLE default\n";
    for (const auto& t : m.triangles) out << static_cast<int>(t.tag) << "\n";
    if (cell_field) {
        out << "SCALARS grad_a_magnitude double 1\nLOOKUP_TABLE default\n";
        for (double v : *cell_field) out << v << "\n";
    }
    if (nodal_field) {
        out << "POINT_DATA " << m.nodes.size() << "\n";
        out << "SCALARS a double 1\nLOOKUP_TABLE default\n";
        for (double v : *nodal_field) out << v << "\n";
    }
}

} // namespace hmortar
