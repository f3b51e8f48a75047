#pragma once

#include "hmortar/machine.hpp"

#include <array>
#include <string>
#include <vector>

namespace hmortar {

enum class Side { Rotor, Stator };

struct Triangle {
    std::array<int, 3> v;  // counterclockwise
    RegionKind tag;
};

/// Structured triangulation of one annulus. Nodes live on concentric rings;
/// ring i, sector k has node index i*A + k with A angular divisions.
struct Mesh {
    Side side;
    int angular_divisions = 0;
    std::vector<Eigen::Vector2d> nodes;
    std::vector<Triangle> triangles;
    std::vector<int> dirichlet_nodes;  // outer stator / inner rotor boundary
    std::vector<int> interface_nodes;  // on the circle r_gamma, ordered by angle
};

struct MeshPair {
    Mesh rotor;
    Mesh stator;
};

/// Radii of the material breakpoints of one side, innermost first.
std::vector<double> material_radii(const MachineConfig& cfg, Side side);

/// Radial layer count per material region. Layers are distributed
/// proportionally to the region thickness with `radial_layers` in the
/// thickest region and at least one layer everywhere, so thin air-gap
/// rings stay single-layer and triangle aspect ratios remain bounded.
std::vector<int> radial_layer_counts(const MachineConfig& cfg, Side side);

/// Independent structured meshes of the rotor and stator annuli.
/// Nonconforming across the interface circle.
MeshPair build_meshes(const MachineConfig& cfg);

double triangle_area(const Mesh& m, const Triangle& t);

/// Smallest interior angle over all triangles, in radians.
double min_triangle_angle(const Mesh& m);

/// Piecewise-linear-in-theta parametrization of the mesh boundary on the
/// interface circle. Angles strictly increasing in [0, 2*pi).
struct InterfaceTrace {
    Side side;
    double r_gamma = 0.0;
    std::vector<double> angles;
    std::vector<int> node_ids;
};

/// Throws AssemblyError if the interface nodes do not lie on a common circle.
InterfaceTrace extract_trace(const Mesh& m);

/// Legacy VTK ASCII dump (triangles + region tag as cell data). Optional
/// nodal scalar field attached as point data when given.
void write_vtk(const Mesh& m, const std::string& path,
               const std::vector<double>* nodal_field = nullptr,
               const std::vector<double>* cell_field = nullptr);

} // namespace hmortar
