#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aps/surface.hpp"

namespace aps {

/// One crossing: a 4-valent vertex whose rotation is stored counter-clockwise
/// starting from the incoming under-strand dart.  The position in
/// Diagram::crossings is the crossing's cube coordinate.
struct Crossing {
    int vertex = -1;  // index into map.vertex_rotations
};

/// A link diagram on a punctured disk.
///
/// Faces of the underlying map are traced orbits; a plane *region* of a
/// disconnected diagram may be bounded by several orbits (nested circles),
/// so the region structure is stored explicitly: each region is the sorted
/// list of the minimal darts of its boundary orbits.  Regions are ordered by
/// their minimal dart.  Punctures live in regions; the outer region holds
/// none.
struct Diagram {
    PlanarSurface surface;
    PlaneMap map;
    std::vector<Crossing> crossings;            // ordered: fixes cube coordinates
    std::vector<int> loop_markers;              // bivalent marker vertices
    std::vector<std::vector<Dart>> regions;     // orbit grouping, see above
    int outer_region = 0;
    std::map<std::string, int> puncture_regions;
    /// One forward dart per component; orients the component so that the
    /// listed dart points along the direction of travel.
    std::vector<Dart> orientations;

    int crossing_count() const { return static_cast<int>(crossings.size()); }
    bool empty() const { return map.empty(); }

    /// Under-strand darts of crossing c: rotation[0] and its opposite.
    Dart under_in(int c) const { return map.vertex_rotations[crossings[c].vertex][0]; }
};

struct DiagramViolation {
    std::string code;
    std::string detail;
};

/// Parses an "aps-diagram/1" JSON document.  Throws ParseError on malformed
/// JSON and SchemaError on structural problems.  Orientations default to the
/// lowest-dart traversal of each component when the document omits them.
Diagram parse_diagram(const std::string& text);

/// Lossless inverse of parse_diagram (canonical key order, stable bytes).
std::string serialize_diagram(const Diagram& d);

/// Full validation: underlying map invariants, vertex shapes, region
/// structure, puncture placement, orientation coherence.
std::vector<DiagramViolation> validate_diagram(const Diagram& d);

/// Number of negative crossings under the diagram's component orientations.
int negative_crossing_count(const Diagram& d);

/// Derived per-dart orientation: true if the dart points along its
/// component's direction of travel.  Indexed like MapIndex::darts().
std::vector<bool> forward_darts(const Diagram& d, const MapIndex& idx);

/// Link components (strand traversals through crossings), each returned as
/// the sorted dart set of the component.
std::vector<std::vector<Dart>> link_components(const Diagram& d);

/// Renaming-invariant canonical form; equal strings iff the diagrams are
/// isomorphic as labeled embedded diagrams (up to dart renaming).
std::string canonical_signature(const Diagram& d);

namespace detail {
/// Rebuilds regions/orientations-dependent caches after surgery; shared by
/// the move implementations.  Orbit of a dart in an arbitrary valid map.
std::vector<Dart> orbit_of(const PlaneMap& map, const MapIndex& idx, Dart d);
}  // namespace detail

}  // namespace aps
