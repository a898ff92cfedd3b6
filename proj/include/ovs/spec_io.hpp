#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ovs/posmaps.hpp"
#include "ovs/unitize.hpp"

namespace ovs {

/// Malformed space or map document. The message names the field path (e.g. "cone.generators[2]")
/// or, for JSON syntax errors, the line.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpaceSpec {
  SeminormedSpace space;
  std::optional<Vector> unit;  // "unit": makes the space an Archimedean order unit space
  TolerancePolicy tol;

  /// The space as a map endpoint: AouSpace when a unit is given, otherwise SeminormedSpace.
  MapSpace as_map_space() const;
};

/// { "dim": n, "cone": {...}, "seminorm": {...}, "unit": [...]?, "tolerance": {...}? }
SpaceSpec parse_space_spec(const std::string& text);
SpaceSpec load_space_spec(const std::string& path);

struct MapSpec {
  PositiveMap map;
  TolerancePolicy tol;
};

/// { "domain": space, "codomain": space, "matrix": [[...], ...] }
MapSpec parse_map_spec(const std::string& text);
MapSpec load_map_spec(const std::string& path);

/// Comma-separated reals, e.g. "1,-2.5,3".
Vector parse_csv_vector(const std::string& text);

}  // namespace ovs
