#include "aps/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "aps/errors.hpp"

namespace aps {

bool PlanarSurface::has_puncture(const std::string& name) const {
    return std::find(punctures.begin(), punctures.end(), name) != punctures.end();
}

MapIndex::MapIndex(const PlaneMap& map) {
    for (const auto& rot : map.vertex_rotations)
        for (Dart d : rot) darts_.push_back(d);
    std::sort(darts_.begin(), darts_.end());
    const std::size_t n = darts_.size();
    theta_.assign(n, 0);
    sigma_.assign(n, 0);
    sigma_inv_.assign(n, 0);
    vertex_.assign(n, -1);
    for (std::size_t v = 0; v < map.vertex_rotations.size(); ++v) {
        const auto& rot = map.vertex_rotations[v];
        for (std::size_t i = 0; i < rot.size(); ++i) {
            const std::size_t p = pos(rot[i]);
            vertex_[p] = static_cast<int>(v);
            sigma_[p] = rot[(i + 1) % rot.size()];
            sigma_inv_[p] = rot[(i + rot.size() - 1) % rot.size()];
        }
    }
    for (const auto& [a, b] : map.edge_pairs) {
        theta_[pos(a)] = b;
        theta_[pos(b)] = a;
    }
}

std::size_t MapIndex::pos(Dart d) const {
    auto it = std::lower_bound(darts_.begin(), darts_.end(), d);
    return static_cast<std::size_t>(it - darts_.begin());
}

bool MapIndex::has_dart(Dart d) const {
    return std::binary_search(darts_.begin(), darts_.end(), d);
}

namespace {

// Structural checks shared by trace_faces and validate_map.  Returns the
// violation list; index structures are only safe to build when it is empty.
std::vector<MapViolation> structural_violations(const PlaneMap& map) {
    std::vector<MapViolation> out;
    std::map<Dart, int> seen;  // dart -> rotation multiplicity
    for (const auto& rot : map.vertex_rotations) {
        if (rot.empty()) out.push_back({"empty-vertex", "vertex with no darts"});
        for (Dart d : rot) seen[d]++;
    }
    for (const auto& [d, count] : seen)
        if (count > 1)
            out.push_back({"duplicate-dart", "dart " + std::to_string(d) +
                                                 " appears in " + std::to_string(count) +
                                                 " rotation slots"});
    std::map<Dart, int> edge_uses;
    for (const auto& [a, b] : map.edge_pairs) {
        if (a == b)
            out.push_back({"fixed-point", "fixed-point dart " + std::to_string(a)});
        edge_uses[a]++;
        edge_uses[b]++;
    }
    for (const auto& [d, count] : edge_uses) {
        if (count > 1)
            out.push_back({"duplicate-edge-end",
                           "dart " + std::to_string(d) + " paired " +
                               std::to_string(count) + " times"});
        if (!seen.count(d))
            out.push_back({"unassigned-dart",
                           "dart " + std::to_string(d) + " has no vertex"});
    }
    for (const auto& [d, count] : seen) {
        (void)count;
        if (!edge_uses.count(d))
            out.push_back({"unpaired-dart",
                           "dart " + std::to_string(d) + " has no edge partner"});
    }
    return out;
}

}  // namespace

std::vector<std::vector<Dart>> trace_faces(const PlaneMap& map) {
    auto violations = structural_violations(map);
    if (!violations.empty())
        throw MalformedMap("malformed map: " + violations.front().code + " (" +
                           violations.front().detail + ")");
    MapIndex idx(map);
    std::set<Dart> todo(idx.darts().begin(), idx.darts().end());
    std::vector<std::vector<Dart>> faces;
    while (!todo.empty()) {
        Dart start = *todo.begin();
        std::vector<Dart> face;
        Dart d = start;
        do {
            face.push_back(d);
            todo.erase(d);
            d = idx.face_next(d);
        } while (d != start);
        // rotate so the minimal dart leads
        auto mn = std::min_element(face.begin(), face.end());
        std::rotate(face.begin(), mn, face.end());
        faces.push_back(std::move(face));
    }
    std::sort(faces.begin(), faces.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return faces;
}

std::vector<std::vector<int>> map_components(const PlaneMap& map) {
    const int nv = static_cast<int>(map.vertex_rotations.size());
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    if (nv == 0) return {};
    MapIndex idx(map);
    for (const auto& [a, b] : map.edge_pairs) {
        int ra = find(idx.vertex_of(a)), rb = find(idx.vertex_of(b));
        if (ra != rb) parent[ra] = rb;
    }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < nv; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, vs] : groups) {
        (void)root;
        out.push_back(std::move(vs));
    }
    return out;
}

std::vector<MapViolation> validate_map(const PlaneMap& map) {
    auto out = structural_violations(map);
    if (!out.empty()) return out;

    // Euler identity per connected component: V - E + F = 2.
    MapIndex idx(map);
    auto faces = trace_faces(map);
    auto components = map_components(map);
    std::vector<int> comp_of_vertex(map.vertex_rotations.size(), -1);
    for (std::size_t c = 0; c < components.size(); ++c)
        for (int v : components[c]) comp_of_vertex[v] = static_cast<int>(c);
    std::vector<long> V(components.size(), 0), E(components.size(), 0),
        F(components.size(), 0);
    for (std::size_t c = 0; c < components.size(); ++c)
        V[c] = static_cast<long>(components[c].size());
    for (const auto& [a, b] : map.edge_pairs) {
        (void)b;
        E[comp_of_vertex[idx.vertex_of(a)]]++;
    }
    for (const auto& face : faces) F[comp_of_vertex[idx.vertex_of(face.front())]]++;
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (V[c] - E[c] + F[c] != 2)
            out.push_back({"euler",
                           "component of vertex " + std::to_string(components[c].front()) +
                               ": V-E+F = " + std::to_string(V[c] - E[c] + F[c])});
    }
    return out;
}

}  // namespace aps
