#pragma once

#include "hmortar/diagnostics.hpp"
#include "hmortar/machine.hpp"

#include <iosfwd>
#include <string>

namespace hmortar {

/// Parse a JSON config file mirroring the MachineConfig field names.
/// Unknown keys are errors. Missing keys keep the default_config() value.
MachineConfig load_config(const std::string& path);
MachineConfig parse_config(std::istream& in, const std::string& origin);

void write_torque_csv(const TorqueCurve& curve, const std::string& path);

/// Structured text listing m, c_m, d_m and the relevant/irrelevant sums.
void write_fourier_summary(const FourierCoeffs& coeffs, const SymmetryReport& report,
                           int order, const std::string& path);

} // namespace hmortar
