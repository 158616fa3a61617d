#pragma once

namespace ianet {

// Power-law attenuation with a short-range cutoff: gain(rho) =
// c_dec * max(rho, rho0)^(-alpha). rho0 > 0 bounds the gain; rho0 = 0 is the
// pure power law, which is infinite at rho = 0 (coincident nodes error out).
struct AttenuationSpec {
  double alpha = 2.0;
  double c_dec = 1.0;
  double rho0 = 1e-3;

  void validate() const;  // throws ConfigError

  // Throws SimulationError when rho <= 0 and rho0 == 0.
  double gain(double rho) const;

  bool operator==(const AttenuationSpec&) const = default;
};

// Free-function form of AttenuationSpec::gain.
double attenuation_gain(const AttenuationSpec& spec, double rho);

}  // namespace ianet
