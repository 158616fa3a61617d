#include "ianet/placement.hpp"

#include <algorithm>
#include <cmath>

#include "ianet/errors.hpp"

namespace ianet {

std::string to_string(PlacementKind kind) {
  switch (kind) {
    case PlacementKind::uniform_box: return "uniform_box";
    case PlacementKind::gaussian: return "gaussian";
    case PlacementKind::custom_density: return "custom_density";
  }
  throw ConfigError("unknown placement kind");
}

PlacementKind placement_kind_from_string(const std::string& name) {
  if (name == "uniform_box") return PlacementKind::uniform_box;
  if (name == "gaussian") return PlacementKind::gaussian;
  if (name == "custom_density") return PlacementKind::custom_density;
  throw ConfigError("unknown placement kind '" + name + "'");
}

std::size_t PlacementSpec::dimension() const {
  switch (kind) {
    case PlacementKind::uniform_box: return sides.size();
    case PlacementKind::gaussian: return mean.size();
    case PlacementKind::custom_density: return sides.size();
  }
  return 0;
}

void PlacementSpec::validate() const {
  switch (kind) {
    case PlacementKind::uniform_box:
      if (sides.empty()) throw ConfigError("uniform_box placement needs side lengths");
      for (double s : sides)
        if (!(s > 0.0)) throw ConfigError("uniform_box side lengths must be positive");
      return;
    case PlacementKind::gaussian:
      if (mean.empty()) throw ConfigError("gaussian placement needs a mean vector");
      if (!(sd > 0.0)) throw ConfigError("gaussian placement sd must be positive");
      return;
    case PlacementKind::custom_density: {
      const std::size_t d = sides.size();
      if (d == 0) throw ConfigError("custom_density placement needs side lengths");
      if (origin.size() != d || cells.size() != d)
        throw ConfigError("custom_density origin/cells dimension mismatch");
      for (double s : sides)
        if (!(s > 0.0)) throw ConfigError("custom_density side lengths must be positive");
      std::size_t total = 1;
      for (std::size_t c : cells) {
        if (c == 0) throw ConfigError("custom_density cell counts must be positive");
        total *= c;
      }
      if (weights.size() != total)
        throw ConfigError("custom_density weights size must equal the cell count product");
      double mass = 0.0;
      for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
          throw ConfigError("custom_density weights must be finite and nonnegative");
        mass += w;
      }
      if (!(mass > 0.0)) throw ConfigError("custom_density needs positive total mass");
      return;
    }
  }
  throw ConfigError("unknown placement kind");
}

void PlacementSpec::sample(rng::StreamRng& gen, std::size_t count, std::vector<double>& out) const {
  const std::size_t d = dimension();
  out.reserve(out.size() + count * d);
  switch (kind) {
    case PlacementKind::uniform_box:
      for (std::size_t p = 0; p < count; ++p)
        for (std::size_t k = 0; k < d; ++k) out.push_back(sides[k] * gen.uniform01());
      return;
    case PlacementKind::gaussian:
      for (std::size_t p = 0; p < count; ++p)
        for (std::size_t k = 0; k < d; ++k) out.push_back(mean[k] + sd * gen.gaussian());
      return;
    case PlacementKind::custom_density: {
      const double wmax = *std::max_element(weights.begin(), weights.end());
      std::vector<double> point(d);
      for (std::size_t p = 0; p < count; ++p) {
        std::size_t attempts = 0;
        for (;;) {
          if (++attempts > kRejectionCap)
            throw SimulationError("custom_density rejection sampling exceeded " +
                                  std::to_string(kRejectionCap) + " attempts per point");
          std::size_t cell = 0;
          for (std::size_t k = 0; k < d; ++k) {
            const double u = gen.uniform01();
            point[k] = origin[k] + sides[k] * u;
            std::size_t c = static_cast<std::size_t>(u * static_cast<double>(cells[k]));
            if (c >= cells[k]) c = cells[k] - 1;
            cell = cell * cells[k] + c;
          }
          if (gen.uniform01() * wmax < weights[cell]) break;
        }
        for (std::size_t k = 0; k < d; ++k) out.push_back(point[k]);
      }
      return;
    }
  }
  throw ConfigError("unknown placement kind");
}

PlacementSpec PlacementSpec::uniform_box_spec(std::vector<double> sides) {
  PlacementSpec spec;
  spec.kind = PlacementKind::uniform_box;
  spec.sides = std::move(sides);
  return spec;
}

PlacementSpec PlacementSpec::gaussian_spec(std::vector<double> mean, double sd) {
  PlacementSpec spec;
  spec.kind = PlacementKind::gaussian;
  spec.mean = std::move(mean);
  spec.sd = sd;
  return spec;
}

PlacementSpec PlacementSpec::density_spec(std::vector<double> origin, std::vector<double> sides,
                                          std::vector<std::size_t> cells,
                                          std::vector<double> weights) {
  PlacementSpec spec;
  spec.kind = PlacementKind::custom_density;
  spec.origin = std::move(origin);
  spec.sides = std::move(sides);
  spec.cells = std::move(cells);
  spec.weights = std::move(weights);
  return spec;
}

}  // namespace ianet
