#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hmortar {

/// Material region of a mesh triangle. The tag determines the reluctivity,
/// the magnetization and the impressed current density on that triangle.
enum class RegionKind {
    RotorIron,
    MagnetPos,
    MagnetNeg,
    StatorIron,
    Slot,
    AirGapRotor,
    AirGapStator,
};

const char* region_name(RegionKind kind);

/// Cross-section parametrization of the machine. All lengths in meters.
///
/// The rotor annulus [r_rotor_in, r_rotor_out] carries an iron core and a
/// ring of 2*pole_pairs alternating magnet sectors at its outer rim. The
/// stator annulus [r_stator_in, r_stator_out] carries a ring of `slots`
/// winding sectors at its inner rim. The coupling circle of radius r_gamma
/// lies in the air gap between the two annuli.
struct MachineConfig {
    double r_rotor_in = 0.0;
    double r_rotor_out = 0.0;
    double r_stator_in = 0.0;
    double r_stator_out = 0.0;
    double r_gamma = 0.0;

    int pole_pairs = 0;
    int slots = 0;

    double mu_r_iron = 1.0;
    double mu_r_copper = 1.0;
    double mu_r_magnet = 1.0;
    double b_remanence = 0.0;   // T
    double axial_length = 1.0;  // m

    int multiplier_degree = 0;  // N, trigonometric degree of the multiplier space
    int angular_divisions_rotor = 0;
    int angular_divisions_stator = 0;
    int radial_layers = 0;  // layers in the radially thickest region per side

    /// Per-slot impressed current density pattern (A/m^2), cycled over the
    /// slot index. Empty means no excitation (cogging study).
    std::vector<double> current_density;

    // Sector layout. Fractions of the respective annulus thickness / pitch.
    double magnet_depth_fraction = 0.3;
    double slot_depth_fraction = 0.4;
    double magnet_arc_fraction = 0.8;
    double slot_arc_fraction = 0.5;

    double r_magnet_in() const {
        return r_rotor_out - magnet_depth_fraction * (r_rotor_out - r_rotor_in);
    }
    double r_slot_out() const {
        return r_stator_in + slot_depth_fraction * (r_stator_out - r_stator_in);
    }

    /// Throws ConfigError naming the offending field if any invariant fails.
    void validate() const;
};

/// Point material data: reluctivity nu = 1/(mu0*mu_r), the rotated
/// magnetization M_perp = (m_y, -m_x), and the impressed current density.
struct Material {
    RegionKind region;
    double nu = 0.0;
    Eigen::Vector2d m_perp = Eigen::Vector2d::Zero();
    double current_density = 0.0;
};

inline constexpr double mu0 = 4.0e-7 * 3.14159265358979323846;

/// Rotate p counterclockwise by alpha around the origin.
inline Eigen::Vector2d rotate_point(const Eigen::Vector2d& p, double alpha) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    return {c * p.x() - s * p.y(), s * p.x() + c * p.y()};
}

/// Material data at a point of the rotor or stator annulus (each in its own
/// body-fixed frame). Throws DomainError outside both annuli.
Material material_at(const Eigen::Vector2d& p, const MachineConfig& cfg);

/// Current density of slot `slot_index` from the configured pattern.
double slot_current(const MachineConfig& cfg, int slot_index);

/// Parameters of the six-pole reference machine at desk-scale resolution.
MachineConfig default_config();

} // namespace hmortar
