#include "hmortar/config_io.hpp"
#include "hmortar/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace hmortar {

using nlohmann::json;

namespace {

template <typename T>
void read_field(const json& j, const char* key, T& value) {
    if (auto it = j.find(key); it != j.end()) {
        try {
            value = it->get<T>();
        } catch (const json::exception&) {
            throw ConfigError(std::string("config key '") + key + "' has the wrong type");
        }
    }
}

} // namespace

MachineConfig parse_config(std::istream& in, const std::string& origin) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(origin + ": config root must be an object");

    static const std::set<std::string> known = {
        "r_rotor_in", "r_rotor_out", "r_stator_in", "r_stator_out", "r_gamma",
        "pole_pairs", "slots", "mu_r_iron", "mu_r_copper", "mu_r_magnet",
        "b_remanence", "axial_length", "multiplier_degree", "angular_divisions_rotor",
        "angular_divisions_stator", "radial_layers", "current_density",
        "magnet_depth_fraction", "slot_depth_fraction", "magnet_arc_fraction",
        "slot_arc_fraction"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.contains(it.key()))
            throw ConfigError(origin + ": unknown config key '" + it.key() + "'");

    MachineConfig cfg = default_config();
    read_field(j, "r_rotor_in", cfg.r_rotor_in);
    read_field(j, "r_rotor_out", cfg.r_rotor_out);
    read_field(j, "r_stator_in", cfg.r_stator_in);
    read_field(j, "r_stator_out", cfg.r_stator_out);
    if (!j.contains("r_gamma") && (j.contains("r_rotor_out") || j.contains("r_stator_in")))
        cfg.r_gamma = 0.5 * (cfg.r_rotor_out + cfg.r_stator_in);
    read_field(j, "r_gamma", cfg.r_gamma);
    read_field(j, "pole_pairs", cfg.pole_pairs);
    read_field(j, "slots", cfg.slots);
    read_field(j, "mu_r_iron", cfg.mu_r_iron);
    read_field(j, "mu_r_copper", cfg.mu_r_copper);
    read_field(j, "mu_r_magnet", cfg.mu_r_magnet);
    read_field(j, "b_remanence", cfg.b_remanence);
    read_field(j, "axial_length", cfg.axial_length);
    read_field(j, "multiplier_degree", cfg.multiplier_degree);
    read_field(j, "angular_divisions_rotor", cfg.angular_divisions_rotor);
    read_field(j, "angular_divisions_stator", cfg.angular_divisions_stator);
    read_field(j, "radial_layers", cfg.radial_layers);
    read_field(j, "current_density", cfg.current_density);
    read_field(j, "magnet_depth_fraction", cfg.magnet_depth_fraction);
    read_field(j, "slot_depth_fraction", cfg.slot_depth_fraction);
    read_field(j, "magnet_arc_fraction", cfg.magnet_arc_fraction);
    read_field(j, "slot_arc_fraction", cfg.slot_arc_fraction);
    cfg.validate();
    return cfg;
}

MachineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_config(in, path);
}

void write_torque_csv(const TorqueCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.precision(17);
    out << "alpha_deg,torque_Nm\n";
    for (Eigen::Index i = 0; i < curve.alphas.size(); ++i)
        out << curve.alphas[i] * 180.0 / 3.14159265358979323846 << "," << curve.torques[i]
            << "\n";
}

void write_fourier_summary(const FourierCoeffs& coeffs, const SymmetryReport& report,
                           int order, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.precision(17);
    out << "# torque Fourier coefficients, f = c0/2 + sum c_m cos(m a) + d_m sin(m a)\n";
    out << "# cogging order: " << order << "\n";
    out << "m c_m d_m\n";
    for (Eigen::Index m = 0; m < coeffs.cos_c.size(); ++m)
        out << m << " " << coeffs.cos_c[m] << " " << coeffs.sin_d[m] << "\n";
    out << "sum_abs_cos " << report.cos_sum << "\n";
    out << "sum_abs_sin_irrelevant " << report.irrelevant_sum << "\n";
    out << "max_abs_sin_relevant " << report.max_relevant << "\n";
}

} // namespace hmortar
