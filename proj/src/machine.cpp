#include "hmortar/machine.hpp"
#include "hmortar/errors.hpp"

#include <cmath>
#include <numbers>

namespace hmortar {

namespace {
constexpr double pi = std::numbers::pi;

double wrap_angle(double theta) {
    double t = std::fmod(theta, 2.0 * pi);
    if (t < 0.0) t += 2.0 * pi;
    return t;
}
} // namespace

const char* region_name(RegionKind kind) {
    switch (kind) {
        case RegionKind::RotorIron: return "rotor_iron";
        case RegionKind::MagnetPos: return "magnet_pos";
        case RegionKind::MagnetNeg: return "magnet_neg";
        case RegionKind::StatorIron: return "stator_iron";
        case RegionKind::Slot: return "slot";
        case RegionKind::AirGapRotor: return "air_gap_rotor";
        case RegionKind::AirGapStator: return "air_gap_stator";
    }
    return "unknown";
}

void MachineConfig::validate() const {
    if (!(r_rotor_in > 0.0)) throw ConfigError("r_rotor_in must be positive");
    if (!(r_rotor_in < r_rotor_out && r_rotor_out < r_gamma && r_gamma < r_stator_in &&
          r_stator_in < r_stator_out))
        throw ConfigError("radii must satisfy r_rotor_in < r_rotor_out < r_gamma < "
                          "r_stator_in < r_stator_out");
    if (pole_pairs < 1) throw ConfigError("pole_pairs must be a positive integer");
    if (slots < 1) throw ConfigError("slots must be a positive integer");
    if (!(mu_r_iron > 0.0 && mu_r_copper > 0.0 && mu_r_magnet > 0.0))
        throw ConfigError("relative permeabilities must be positive");
    if (!(axial_length > 0.0)) throw ConfigError("axial_length must be positive");
    if (multiplier_degree < 0) throw ConfigError("multiplier_degree must be non-negative");
    if (angular_divisions_rotor < 1 || angular_divisions_stator < 1 || radial_layers < 1)
        throw ConfigError("mesh resolutions must be positive integers");
    if (angular_divisions_rotor % (2 * pole_pairs) != 0)
        throw ConfigError("angular_divisions_rotor must be a multiple of 2*pole_pairs");
    if (angular_divisions_stator % slots != 0)
        throw ConfigError("angular_divisions_stator must be a multiple of slots");
    if (!(magnet_depth_fraction > 0.0 && magnet_depth_fraction < 1.0))
        throw ConfigError("magnet_depth_fraction must lie in (0,1)");
    if (!(slot_depth_fraction > 0.0 && slot_depth_fraction < 1.0))
        throw ConfigError("slot_depth_fraction must lie in (0,1)");
    if (!(magnet_arc_fraction >= 0.0 && magnet_arc_fraction <= 1.0))
        throw ConfigError("magnet_arc_fraction must lie in [0,1]");
    if (!(slot_arc_fraction >= 0.0 && slot_arc_fraction <= 1.0))
        throw ConfigError("slot_arc_fraction must lie in [0,1]");
}

double slot_current(const MachineConfig& cfg, int slot_index) {
    if (cfg.current_density.empty()) return 0.0;
    const int n = static_cast<int>(cfg.current_density.size());
    int k = slot_index % n;
    if (k < 0) k += n;
    return cfg.current_density[static_cast<size_t>(k)];
}

Material material_at(const Eigen::Vector2d& p, const MachineConfig& cfg) {
    const double r = p.norm();
    const double theta = wrap_angle(std::atan2(p.y(), p.x()));
    const double tol = 1e-12 * cfg.r_stator_out;

    Material mat;
    const double nu_air = 1.0 / mu0;

    if (r >= cfg.r_rotor_in - tol && r <= cfg.r_gamma + tol) {
        // rotor-side annulus, body-fixed frame
        if (r < cfg.r_magnet_in()) {
            mat.region = RegionKind::RotorIron;
            mat.nu = 1.0 / (mu0 * cfg.mu_r_iron);
            return mat;
        }
        if (r < cfg.r_rotor_out) {
            // magnet ring: 2P alternating radially magnetized sectors,
            // pole k centered at k*pi/P, covering magnet_arc_fraction of the pitch
            const double pitch = pi / cfg.pole_pairs;
            const int k = static_cast<int>(std::floor((theta + 0.5 * pitch) / pitch));
            const double center = k * pitch;
            double off = theta - center;
            if (off > pi) off -= 2.0 * pi;
            if (std::abs(off) <= 0.5 * cfg.magnet_arc_fraction * pitch) {
                const int poles = 2 * cfg.pole_pairs;
                const int sign = ((k % poles) + poles) % 2 == 0 ? 1 : -1;
                mat.region = sign > 0 ? RegionKind::MagnetPos : RegionKind::MagnetNeg;
                mat.nu = 1.0 / (mu0 * cfg.mu_r_magnet);
                const double magnitude = cfg.b_remanence / (mu0 * cfg.mu_r_magnet);
                const Eigen::Vector2d m =
                    sign * magnitude * Eigen::Vector2d(std::cos(theta), std::sin(theta));
                mat.m_perp = {m.y(), -m.x()};
                return mat;
            }
            mat.region = RegionKind::AirGapRotor;  // inter-magnet air
            mat.nu = nu_air;
            return mat;
        }
        mat.region = RegionKind::AirGapRotor;
        mat.nu = nu_air;
        return mat;
    }

    if (r >= cfg.r_gamma - tol && r <= cfg.r_stator_out + tol) {
        // stator-side annulus, fixed frame
        if (r < cfg.r_stator_in) {
            mat.region = RegionKind::AirGapStator;
            mat.nu = nu_air;
            return mat;
        }
        if (r < cfg.r_slot_out()) {
            const double pitch = 2.0 * pi / cfg.slots;
            const int k = static_cast<int>(std::floor((theta + 0.5 * pitch) / pitch));
            const double center = k * pitch;
            double off = theta - center;
            if (off > pi) off -= 2.0 * pi;
            if (std::abs(off) <= 0.5 * cfg.slot_arc_fraction * pitch) {
                mat.region = RegionKind::Slot;
                mat.nu = 1.0 / (mu0 * cfg.mu_r_copper);
                mat.current_density = slot_current(cfg, ((k % cfg.slots) + cfg.slots) % cfg.slots);
                return mat;
            }
            mat.region = RegionKind::StatorIron;
            mat.nu = 1.0 / (mu0 * cfg.mu_r_iron);
            return mat;
        }
        mat.region = RegionKind::StatorIron;
        mat.nu = 1.0 / (mu0 * cfg.mu_r_iron);
        return mat;
    }

    throw DomainError("point outside the rotor and stator annuli");
}

MachineConfig default_config() {
    MachineConfig cfg;
    cfg.r_rotor_in = 16e-3;
    cfg.r_rotor_out = 44e-3;
    cfg.r_stator_in = 45e-3;
    cfg.r_stator_out = 67.5e-3;
    cfg.r_gamma = 0.5 * (cfg.r_rotor_out + cfg.r_stator_in);
    cfg.pole_pairs = 3;
    cfg.slots = 36;
    cfg.mu_r_iron = 500.0;
    cfg.mu_r_copper = 1.0;
    cfg.mu_r_magnet = 1.05;
    cfg.b_remanence = 0.94;
    cfg.axial_length = 0.1;
    cfg.multiplier_degree = 40;
    cfg.angular_divisions_rotor = 192;
    cfg.angular_divisions_stator = 288;
    cfg.radial_layers = 15;
    return cfg;
}

} // namespace hmortar
