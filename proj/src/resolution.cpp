#include "aps/resolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "aps/errors.hpp"

namespace aps {

int ResolutionVector::weight() const {
    int w = 0;
    for (auto b : bits) w += b;
    return w;
}

StateIndex ResolutionVector::index() const {
    StateIndex s = 0;
    for (auto b : bits) s = (s << 1) | b;
    return s;
}

ResolutionVector ResolutionVector::from_index(StateIndex s, int k) {
    ResolutionVector v;
    v.bits.resize(k);
    for (int i = 0; i < k; ++i) v.bits[i] = static_cast<std::uint8_t>(state_bit(s, k, i));
    return v;
}

int ResolvedState::circle_of_dart(Dart d) const {
    for (std::size_t i = 0; i < circles.size(); ++i)
        if (std::binary_search(circles[i].darts.begin(), circles[i].darts.end(), d))
            return static_cast<int>(i);
    return -1;
}

int edge_sign(StateIndex v, int k, int i) {
    const StateIndex below = v & ((StateIndex{1} << (k - 1 - i)) - 1);
    return (__builtin_popcount(below) & 1) ? -1 : 1;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// The smoothed map: same darts and edges, crossings replaced by two bivalent
// joints per the 0/1 smoothing of Figure-1 type.  Rotation (d1,d2,d3,d4)
// starts at the under-in dart; the 0-smoothing joins d1-d2 and d3-d4, the
// 1-smoothing joins d1-d4 and d2-d3.
PlaneMap smoothed_map(const Diagram& d, const ResolutionVector& v) {
    PlaneMap out;
    out.edge_pairs = d.map.edge_pairs;
    std::set<int> crossing_vs;
    for (const auto& c : d.crossings) crossing_vs.insert(c.vertex);
    for (int m : d.loop_markers) out.vertex_rotations.push_back(d.map.vertex_rotations[m]);
    for (int i = 0; i < d.crossing_count(); ++i) {
        const auto& rot = d.map.vertex_rotations[d.crossings[i].vertex];
        if (v.bits[i] == 0) {
            out.vertex_rotations.push_back({rot[0], rot[1]});
            out.vertex_rotations.push_back({rot[2], rot[3]});
        } else {
            out.vertex_rotations.push_back({rot[0], rot[3]});
            out.vertex_rotations.push_back({rot[1], rot[2]});
        }
    }
    return out;
}

}  // namespace

ResolvedState resolve(const Diagram& d, const ResolutionVector& v) {
    if (static_cast<int>(v.bits.size()) != d.crossing_count())
        throw SchemaError("resolution vector length differs from crossing count");
    ResolvedState state;
    state.v = v.index();
    if (d.map.empty()) return state;

    const PlaneMap smoothed = smoothed_map(d, v);
    MapIndex idx(smoothed);
    const auto& darts = idx.darts();
    const int n = static_cast<int>(darts.size());

    // circles = connected components of the smoothed map
    UnionFind uf(n);
    for (const auto& rot : smoothed.vertex_rotations)
        uf.unite(idx.dart_index(rot[0]), idx.dart_index(rot[1]));
    for (const auto& [a, b] : smoothed.edge_pairs)
        uf.unite(idx.dart_index(a), idx.dart_index(b));
    std::map<int, std::vector<Dart>> groups;
    for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(darts[i]);
    std::vector<std::vector<Dart>> circles;
    for (auto& [root, ds] : groups) {
        (void)root;
        circles.push_back(std::move(ds));  // already sorted: darts[] ascending
    }
    std::sort(circles.begin(), circles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<int> circle_of(n);
    for (std::size_t c = 0; c < circles.size(); ++c)
        for (Dart x : circles[c]) circle_of[idx.dart_index(x)] = static_cast<int>(c);

    // resolved orbits, then plane regions of the smoothed diagram: every
    // diagram region stays connected under smoothing, so resolved orbits
    // belong to one region exactly when some diagram region meets both.
    auto orbits = trace_faces(smoothed);
    std::vector<int> orbit_of(n);
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (Dart x : orbits[o]) orbit_of[idx.dart_index(x)] = static_cast<int>(o);

    MapIndex diagram_idx(d.map);
    auto diagram_orbits = trace_faces(d.map);
    std::map<Dart, int> diagram_orbit_of_min;
    for (std::size_t o = 0; o < diagram_orbits.size(); ++o)
        diagram_orbit_of_min[diagram_orbits[o].front()] = static_cast<int>(o);

    UnionFind region_uf(static_cast<int>(orbits.size()));
    for (const auto& region : d.regions) {
        int first = -1;
        for (Dart omin : region) {
            for (Dart x : diagram_orbits[diagram_orbit_of_min.at(omin)]) {
                int ro = orbit_of[idx.dart_index(x)];
                if (first < 0)
                    first = ro;
                else
                    region_uf.unite(first, ro);
            }
        }
    }
    std::map<int, int> region_id;  // root -> dense id
    std::vector<std::vector<int>> region_orbits;
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        int root = region_uf.find(static_cast<int>(o));
        auto it = region_id.find(root);
        if (it == region_id.end()) {
            it = region_id.emplace(root, static_cast<int>(region_orbits.size())).first;
            region_orbits.push_back({});
        }
        region_orbits[it->second].push_back(static_cast<int>(o));
    }
    auto region_of_dart = [&](Dart x) {
        return region_id.at(region_uf.find(orbit_of[idx.dart_index(x)]));
    };

    // outer region: inherited from the diagram's outer region
    const Dart outer_witness = diagram_orbits[diagram_orbit_of_min.at(
        d.regions[d.outer_region].front())].front();
    const int outer = region_of_dart(outer_witness);

    // puncture -> resolved region
    std::vector<int> puncture_region(d.surface.punctures.size(), -1);
    for (std::size_t p = 0; p < d.surface.punctures.size(); ++p) {
        auto it = d.puncture_regions.find(d.surface.punctures[p]);
        if (it == d.puncture_regions.end()) continue;
        const Dart witness =
            diagram_orbits[diagram_orbit_of_min.at(d.regions[it->second].front())].front();
        puncture_region[p] = region_of_dart(witness);
    }

    // enclosure: BFS over regions from the outer one, toggling the parity of
    // the circle whose edge is crossed
    const int R = static_cast<int>(region_orbits.size());
    const int C = static_cast<int>(circles.size());
    std::vector<std::vector<std::pair<int, int>>> adj(R);  // region -> (region, circle)
    for (const auto& [a, b] : smoothed.edge_pairs) {
        int ra = region_of_dart(a), rb = region_of_dart(b);
        int c = circle_of[idx.dart_index(a)];
        adj[ra].push_back({rb, c});
        adj[rb].push_back({ra, c});
    }
    std::vector<std::vector<std::uint8_t>> parity(R, std::vector<std::uint8_t>(C, 0));
    std::vector<int> seen(R, 0);
    std::vector<int> queue{outer};
    seen[outer] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int r = queue[h];
        for (auto [r2, c] : adj[r]) {
            if (seen[r2]) continue;
            seen[r2] = 1;
            parity[r2] = parity[r];
            parity[r2][c] ^= 1;
            queue.push_back(r2);
        }
    }

    state.circles.reserve(circles.size());
    for (std::size_t c = 0; c < circles.size(); ++c) {
        Circle circle;
        circle.darts = circles[c];
        for (std::size_t p = 0; p < d.surface.punctures.size(); ++p)
            if (puncture_region[p] >= 0 && parity[puncture_region[p]][c])
                circle.enclosed.push_back(static_cast<int>(p));
        circle.classification =
            circle.enclosed.empty() ? CircleClass::Contractible : CircleClass::Essential;
        state.circles.push_back(std::move(circle));
    }
    return state;
}

std::vector<ResolvedState> resolve_all(const Diagram& d) {
    const int k = d.crossing_count();
    std::vector<ResolvedState> states;
    states.reserve(std::size_t{1} << k);
    for (StateIndex s = 0; s < (StateIndex{1} << k); ++s)
        states.push_back(resolve(d, ResolutionVector::from_index(s, k)));
    return states;
}

std::vector<int> enclosed_punctures(const ResolvedState& state, int circle) {
    return state.circles.at(circle).enclosed;
}

CircleClass classify(const Circle& c) {
    return c.enclosed.empty() ? CircleClass::Contractible : CircleClass::Essential;
}

std::vector<CubeEdge> cube_edges(const Diagram& d, const std::vector<ResolvedState>& states) {
    const int k = d.crossing_count();
    std::vector<CubeEdge> edges;
    edges.reserve(static_cast<std::size_t>(k) << (k > 0 ? k - 1 : 0));
    for (StateIndex s = 0; s < (StateIndex{1} << k); ++s) {
        for (int i = 0; i < k; ++i) {
            if (state_bit(s, k, i)) continue;
            CubeEdge e;
            e.from = s;
            e.to = flip_state(s, k, i);
            e.crossing = i;
            e.sign = edge_sign(s, k, i);
            const auto& sv = states[e.from];
            const auto& su = states[e.to];
            const auto& rot = d.map.vertex_rotations[d.crossings[i].vertex];

            std::set<int> av, au;
            for (Dart x : rot) {
                av.insert(sv.circle_of_dart(x));
                au.insert(su.circle_of_dart(x));
            }
            if (av.size() + au.size() != 3)
                throw UnrealizableCase("cube edge is neither a merge nor a split");
            e.kind = av.size() == 2 ? EdgeKind::Merge : EdgeKind::Split;
            {
                int j = 0;
                for (int c : av) e.active_from[j++] = c;
                j = 0;
                for (int c : au) e.active_to[j++] = c;
            }
            // passive correspondence: identical dart sets
            std::map<Dart, int> u_by_id;
            for (std::size_t c = 0; c < su.circles.size(); ++c)
                u_by_id[su.circles[c].canonical_id()] = static_cast<int>(c);
            for (std::size_t c = 0; c < sv.circles.size(); ++c) {
                if (av.count(static_cast<int>(c))) continue;
                auto it = u_by_id.find(sv.circles[c].canonical_id());
                if (it == u_by_id.end() ||
                    su.circles[it->second].darts != sv.circles[c].darts)
                    throw UnrealizableCase("passive circle lost across a cube edge");
                if (su.circles[it->second].enclosed != sv.circles[c].enclosed)
                    throw UnrealizableCase("passive circle changed its enclosed set");
                e.passive.push_back({static_cast<int>(c), it->second});
            }
            edges.push_back(std::move(e));
        }
    }
    return edges;
}

}  // namespace aps
