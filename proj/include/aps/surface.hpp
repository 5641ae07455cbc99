#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aps {

using Dart = std::int32_t;

/// Genus-zero surface: a disk with holes.  The outer boundary is implicit
/// (it plays the role of the designated outer face of any diagram drawn on
/// the surface); the inner boundary components are named punctures.
struct PlanarSurface {
    std::vector<std::string> punctures;

    bool has_puncture(const std::string& name) const;
};

/// A plane combinatorial map: a rotation system.  Each vertex is a cyclic
/// counter-clockwise sequence of darts; `edge_pairs` is the fixed-point-free
/// involution pairing the two darts of every edge.  Dart identifiers are
/// arbitrary distinct ints.
struct PlaneMap {
    std::vector<std::vector<Dart>> vertex_rotations;
    std::vector<std::pair<Dart, Dart>> edge_pairs;

    std::size_t vertex_count() const { return vertex_rotations.size(); }
    std::size_t edge_count() const { return edge_pairs.size(); }
    std::size_t dart_count() const { return 2 * edge_pairs.size(); }
    bool empty() const { return vertex_rotations.empty(); }
};

struct MapViolation {
    std::string code;     // stable identifier, e.g. "fixed-point"
    std::string detail;   // offending dart / vertex ids
};

/// Index structures for walking a validated map.
class MapIndex {
public:
    explicit MapIndex(const PlaneMap& map);

    Dart theta(Dart d) const { return theta_[pos(d)]; }
    Dart sigma(Dart d) const { return sigma_[pos(d)]; }          // CCW successor at the vertex
    Dart sigma_inv(Dart d) const { return sigma_inv_[pos(d)]; }
    int vertex_of(Dart d) const { return vertex_[pos(d)]; }
    /// The dart opposite d in a 4-valent rotation (sigma applied twice).
    Dart opposite(Dart d) const { return sigma(sigma(d)); }
    /// Face walk: next dart of the face lying to the right of d.
    Dart face_next(Dart d) const { return sigma(theta(d)); }

    const std::vector<Dart>& darts() const { return darts_; }
    bool has_dart(Dart d) const;
    std::size_t dart_index(Dart d) const { return pos(d); }

private:
    std::size_t pos(Dart d) const;

    std::vector<Dart> darts_;        // sorted
    std::vector<Dart> theta_, sigma_, sigma_inv_;
    std::vector<int> vertex_;
};

/// Traces the face orbits of the walk d -> sigma(theta(d)).  Each orbit is
/// rotated to start at its minimal dart and the list is sorted by that dart.
/// For a connected map the orbits are exactly the plane faces; for a
/// disconnected map a plane region may carry several boundary orbits.
/// Throws MalformedMap if the map fails its structural invariants.
std::vector<std::vector<Dart>> trace_faces(const PlaneMap& map);

/// Checks every structural invariant (involution, rotation partition, and
/// the per-component Euler identity V - E + F = 2) and returns the full
/// violation list; empty means the map is valid.
std::vector<MapViolation> validate_map(const PlaneMap& map);

/// Connected components of the map, as vertex index sets (sorted).
std::vector<std::vector<int>> map_components(const PlaneMap& map);

}  // namespace aps
