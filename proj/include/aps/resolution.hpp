#pragma once

#include <cstdint>
#include <vector>

#include "aps/diagram.hpp"

namespace aps {

/// Cube coordinate v in {0,1}^k, encoded so that lexicographic order of
/// (v_1,...,v_k) is numeric order of the index: v_1 is the most significant
/// bit.
using StateIndex = std::uint32_t;

inline int state_bit(StateIndex s, int k, int i) { return (s >> (k - 1 - i)) & 1; }
inline StateIndex flip_state(StateIndex s, int k, int i) { return s | (StateIndex{1} << (k - 1 - i)); }
inline int state_weight(StateIndex s) { return __builtin_popcount(s); }

struct ResolutionVector {
    std::vector<std::uint8_t> bits;  // bits[i] = v_{i+1}

    int weight() const;
    StateIndex index() const;
    static ResolutionVector from_index(StateIndex s, int k);
};

enum class CircleClass { Contractible, Essential };

/// One circle of a resolved diagram.  `enclosed` lists the indices (into
/// surface.punctures) of the punctures strictly inside the circle; it is the
/// complete isotopy invariant of the circle on a genus-zero surface, and it
/// is empty exactly for contractible circles.
struct Circle {
    std::vector<Dart> darts;       // strand cycle, minimal dart first
    std::vector<int> enclosed;     // sorted puncture indices
    CircleClass classification = CircleClass::Contractible;

    Dart canonical_id() const { return darts.front(); }
    bool essential() const { return classification == CircleClass::Essential; }
};

struct ResolvedState {
    StateIndex v = 0;
    std::vector<Circle> circles;   // sorted by canonical_id

    int circle_of_dart(Dart d) const;  // index into circles
};

enum class EdgeKind { Merge, Split };

/// One cube edge v -> u with u - v = e_i.  Active circles are those meeting
/// crossing i; passive circles correspond across the edge by identical dart
/// sets (their enclosed sets agree).
struct CubeEdge {
    StateIndex from = 0, to = 0;
    int crossing = 0;              // 0-based flipped coordinate
    EdgeKind kind = EdgeKind::Merge;
    int active_from[2] = {-1, -1}; // circle indices in the source state
    int active_to[2] = {-1, -1};   // circle indices in the target state
    std::vector<std::pair<int, int>> passive;  // (from index, to index)
    int sign = 1;                  // (-1)^{sum_{j>i} v_j}
};

/// Smooths every crossing of d according to v and classifies the resulting
/// circles.  Deterministic: equal inputs give identical circle lists.
ResolvedState resolve(const Diagram& d, const ResolutionVector& v);

/// All 2^k resolved states in lexicographic order of v.
std::vector<ResolvedState> resolve_all(const Diagram& d);

/// The punctures strictly enclosed by a circle of a state (sorted indices).
std::vector<int> enclosed_punctures(const ResolvedState& state, int circle);

CircleClass classify(const Circle& c);

/// Cube edge sign (-1)^{sum_{j > i} v_j}; v_i must be 0.
int edge_sign(StateIndex v, int k, int i);

/// All k * 2^{k-1} cube edges, ordered by (from, crossing).  Requires the
/// output of resolve_all.
std::vector<CubeEdge> cube_edges(const Diagram& d, const std::vector<ResolvedState>& states);

}  // namespace aps
