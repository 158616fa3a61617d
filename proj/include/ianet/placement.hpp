#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ianet/rng.hpp"

namespace ianet {

enum class PlacementKind { uniform_box, gaussian, custom_density };

// Spatial distribution for one side (transmitters or receivers) of the
// network. All three kinds sample points in R^d:
//   uniform_box     uniform on [0, sides[k]] per axis
//   gaussian        isotropic normal, mean per axis, common sd
//   custom_density  piecewise-constant density on a grid over a box,
//                   sampled by rejection against the max cell weight
struct PlacementSpec {
  PlacementKind kind = PlacementKind::uniform_box;

  std::vector<double> sides;  // uniform_box, custom_density

  std::vector<double> mean;  // gaussian
  double sd = 1.0;

  std::vector<double> origin;        // custom_density box corner
  std::vector<std::size_t> cells;    // custom_density per-axis cell counts
  std::vector<double> weights;       // row-major cell weights, >= 0

  std::size_t dimension() const;
  void validate() const;  // throws ConfigError

  // Appends count*dimension() coordinates to out.
  void sample(rng::StreamRng& gen, std::size_t count, std::vector<double>& out) const;

  static PlacementSpec uniform_box_spec(std::vector<double> sides);
  static PlacementSpec gaussian_spec(std::vector<double> mean, double sd);
  static PlacementSpec density_spec(std::vector<double> origin, std::vector<double> sides,
                                    std::vector<std::size_t> cells, std::vector<double> weights);

  bool operator==(const PlacementSpec&) const = default;
};

// Rejection attempts allowed per point before giving up on a density.
inline constexpr std::size_t kRejectionCap = 1000000;

std::string to_string(PlacementKind kind);
PlacementKind placement_kind_from_string(const std::string& name);

}  // namespace ianet
