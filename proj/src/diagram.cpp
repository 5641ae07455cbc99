#include "aps/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aps/errors.hpp"

namespace aps {

using nlohmann::ordered_json;

namespace detail {

std::vector<Dart> orbit_of(const PlaneMap& map, const MapIndex& idx, Dart d) {
    (void)map;
    std::vector<Dart> orbit;
    Dart cur = d;
    do {
        orbit.push_back(cur);
        cur = idx.face_next(cur);
    } while (cur != d);
    auto mn = std::min_element(orbit.begin(), orbit.end());
    std::rotate(orbit.begin(), mn, orbit.end());
    return orbit;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// link components and orientations

namespace {

// Strand continuation through a vertex: opposite dart at a crossing, the
// other dart at a bivalent marker.
Dart strand_through(const Diagram& d, const MapIndex& idx, Dart arriving) {
    const auto& rot = d.map.vertex_rotations[idx.vertex_of(arriving)];
    if (rot.size() == 2) return rot[arriving == rot[0] ? 1 : 0];
    return idx.opposite(arriving);
}

}  // namespace

std::vector<std::vector<Dart>> link_components(const Diagram& d) {
    if (d.map.empty()) return {};
    MapIndex idx(d.map);
    std::set<Dart> todo(idx.darts().begin(), idx.darts().end());
    std::vector<std::vector<Dart>> comps;
    while (!todo.empty()) {
        Dart start = *todo.begin();
        std::vector<Dart> comp;
        // walk forward: leave via dart f, cross the edge, pass through.
        Dart f = start;
        do {
            comp.push_back(f);
            comp.push_back(idx.theta(f));
            f = strand_through(d, idx, idx.theta(f));
        } while (f != start);
        std::sort(comp.begin(), comp.end());
        comp.erase(std::unique(comp.begin(), comp.end()), comp.end());
        for (Dart x : comp) todo.erase(x);
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

std::vector<bool> forward_darts(const Diagram& d, const MapIndex& idx) {
    std::vector<bool> forward(idx.darts().size(), false);
    for (Dart start : d.orientations) {
        Dart f = start;
        do {
            forward[idx.dart_index(f)] = true;
            f = strand_through(d, idx, idx.theta(f));
        } while (f != start);
    }
    return forward;
}

int negative_crossing_count(const Diagram& d) {
    if (d.crossings.empty()) return 0;
    MapIndex idx(d.map);
    auto forward = forward_darts(d, idx);
    int n_minus = 0;
    for (const auto& cr : d.crossings) {
        const auto& rot = d.map.vertex_rotations[cr.vertex];
        // entry dart of a strand: the dart whose edge partner is forward.
        Dart under_entry = forward[idx.dart_index(idx.theta(rot[0]))] ? rot[0] : rot[2];
        Dart over_entry = forward[idx.dart_index(idx.theta(rot[1]))] ? rot[1] : rot[3];
        // positive crossing: the CCW successor of the over entry is the
        // under entry.
        if (idx.sigma(over_entry) != under_entry) n_minus++;
    }
    return n_minus;
}

// ---------------------------------------------------------------------------
// validation

std::vector<DiagramViolation> validate_diagram(const Diagram& d) {
    std::vector<DiagramViolation> out;
    for (auto& v : validate_map(d.map)) out.push_back({v.code, v.detail});

    std::set<std::string> names;
    for (const auto& p : d.surface.punctures)
        if (!names.insert(p).second)
            out.push_back({"duplicate-puncture", p});

    // vertex shapes
    std::set<int> crossing_vertices, marker_vertices;
    for (const auto& c : d.crossings) {
        if (c.vertex < 0 || c.vertex >= static_cast<int>(d.map.vertex_count())) {
            out.push_back({"bad-crossing-vertex", std::to_string(c.vertex)});
            continue;
        }
        if (!crossing_vertices.insert(c.vertex).second)
            out.push_back({"crossing-listed-twice", std::to_string(c.vertex)});
        if (d.map.vertex_rotations[c.vertex].size() != 4)
            out.push_back({"crossing-not-4-valent", std::to_string(c.vertex)});
    }
    for (int m : d.loop_markers) {
        if (m < 0 || m >= static_cast<int>(d.map.vertex_count())) {
            out.push_back({"bad-marker-vertex", std::to_string(m)});
            continue;
        }
        marker_vertices.insert(m);
        if (d.map.vertex_rotations[m].size() != 2)
            out.push_back({"marker-not-bivalent", std::to_string(m)});
    }
    for (std::size_t v = 0; v < d.map.vertex_count(); ++v) {
        const auto sz = d.map.vertex_rotations[v].size();
        const bool is_crossing = crossing_vertices.count(static_cast<int>(v));
        const bool is_marker = marker_vertices.count(static_cast<int>(v));
        if (sz == 4 && !is_crossing)
            out.push_back({"unlisted-crossing", "vertex " + std::to_string(v)});
        else if (sz == 2 && !is_marker)
            out.push_back({"unlisted-marker", "vertex " + std::to_string(v)});
        else if (sz != 2 && sz != 4)
            out.push_back({"bad-valence", "vertex " + std::to_string(v) + " has degree " +
                                              std::to_string(sz)});
    }
    if (!out.empty()) return out;  // region checks need a sound map

    // region structure: orbits partitioned into regions, global Euler,
    // connected region adjacency.
    if (d.map.empty()) {
        if (!d.regions.empty()) out.push_back({"regions-on-empty", ""});
        if (!d.puncture_regions.empty()) out.push_back({"punctures-on-empty", ""});
        return out;
    }
    auto orbits = trace_faces(d.map);
    std::set<Dart> orbit_ids;
    for (const auto& o : orbits) orbit_ids.insert(o.front());
    std::set<Dart> grouped;
    for (const auto& region : d.regions)
        for (Dart o : region) {
            if (!orbit_ids.count(o))
                out.push_back({"unknown-orbit", std::to_string(o)});
            if (!grouped.insert(o).second)
                out.push_back({"orbit-in-two-regions", std::to_string(o)});
        }
    if (grouped.size() != orbit_ids.size())
        out.push_back({"ungrouped-orbit",
                       std::to_string(orbit_ids.size() - grouped.size()) + " missing"});
    const long V = static_cast<long>(d.map.vertex_count());
    const long E = static_cast<long>(d.map.edge_count());
    const long C = static_cast<long>(map_components(d.map).size());
    if (V - E + static_cast<long>(d.regions.size()) != 1 + C)
        out.push_back({"region-euler", "V-E+R = " +
                                           std::to_string(V - E + static_cast<long>(
                                                                      d.regions.size()))});
    if (d.outer_region < 0 || d.outer_region >= static_cast<int>(d.regions.size()))
        out.push_back({"bad-outer-region", std::to_string(d.outer_region)});
    if (!out.empty()) return out;

    // region adjacency graph must be connected (sphere embedding)
    MapIndex idx(d.map);
    std::map<Dart, int> region_of_orbit;
    for (std::size_t r = 0; r < d.regions.size(); ++r)
        for (Dart o : d.regions[r]) region_of_orbit[o] = static_cast<int>(r);
    std::map<Dart, Dart> orbit_of_dart;
    for (const auto& o : orbits)
        for (Dart x : o) orbit_of_dart[x] = o.front();
    std::vector<int> reach(d.regions.size(), 0);
    std::vector<int> stack{d.outer_region};
    reach[d.outer_region] = 1;
    std::multimap<int, int> adj;
    for (const auto& [a, b] : d.map.edge_pairs) {
        int ra = region_of_orbit[orbit_of_dart[a]];
        int rb = region_of_orbit[orbit_of_dart[b]];
        adj.insert({ra, rb});
        adj.insert({rb, ra});
    }
    while (!stack.empty()) {
        int r = stack.back();
        stack.pop_back();
        auto [lo, hi] = adj.equal_range(r);
        for (auto it = lo; it != hi; ++it)
            if (!reach[it->second]) {
                reach[it->second] = 1;
                stack.push_back(it->second);
            }
    }
    if (std::find(reach.begin(), reach.end(), 0) != reach.end())
        out.push_back({"regions-disconnected", ""});

    // punctures: all placed, in existing non-outer regions
    for (const auto& p : d.surface.punctures)
        if (!d.puncture_regions.count(p))
            out.push_back({"unplaced-puncture", p});
    for (const auto& [p, r] : d.puncture_regions) {
        if (!d.surface.has_puncture(p))
            out.push_back({"unknown-puncture", p});
        if (r < 0 || r >= static_cast<int>(d.regions.size()))
            out.push_back({"bad-puncture-region", p});
        else if (r == d.outer_region)
            out.push_back({"puncture-in-outer-region", p});
    }

    // orientations: one forward dart per link component
    auto comps = link_components(d);
    std::vector<int> hits(comps.size(), 0);
    for (Dart o : d.orientations) {
        if (!idx.has_dart(o)) {
            out.push_back({"unknown-orientation-dart", std::to_string(o)});
            continue;
        }
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (std::binary_search(comps[i].begin(), comps[i].end(), o)) hits[i]++;
    }
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (hits[i] != 1)
            out.push_back({"component-orientation",
                           "component of dart " + std::to_string(comps[i].front()) +
                               " has " + std::to_string(hits[i]) + " orientation darts"});
    return out;
}

// ---------------------------------------------------------------------------
// JSON parsing / serialization

namespace {

ordered_json require(const ordered_json& j, const char* key) {
    if (!j.contains(key))
        throw SchemaError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    try {
        if (require(j, "format").get<std::string>() != "aps-diagram/1")
            throw SchemaError("unsupported format (want \"aps-diagram/1\")");
        Diagram d;
        for (const auto& p : require(require(j, "surface"), "punctures"))
            d.surface.punctures.push_back(p.get<std::string>());

        std::set<Dart> declared;
        for (const auto& x : require(j, "darts")) {
            Dart dart = x.get<Dart>();
            if (!declared.insert(dart).second)
                throw SchemaError("dart " + std::to_string(dart) + " declared twice");
        }
        std::set<Dart> used;
        for (const auto& v : require(j, "vertices")) {
            const std::string kind = require(v, "kind").get<std::string>();
            std::vector<Dart> rot;
            for (const auto& x : require(v, "rotation")) rot.push_back(x.get<Dart>());
            for (Dart x : rot) {
                if (!declared.count(x))
                    throw SchemaError("rotation references undeclared dart " +
                                      std::to_string(x));
                if (!used.insert(x).second)
                    throw SchemaError("dart " + std::to_string(x) +
                                      " referenced twice in rotations");
            }
            if (kind == "crossing") {
                if (rot.size() != 4) throw SchemaError("crossing rotation must have 4 darts");
                Dart under = require(v, "under_in").get<Dart>();
                auto it = std::find(rot.begin(), rot.end(), under);
                if (it == rot.end())
                    throw SchemaError("under_in " + std::to_string(under) +
                                      " not in crossing rotation");
                std::rotate(rot.begin(), it, rot.end());
                d.map.vertex_rotations.push_back(rot);
                d.crossings.push_back({static_cast<int>(d.map.vertex_count() - 1)});
            } else if (kind == "loop") {
                if (rot.size() != 2) throw SchemaError("loop rotation must have 2 darts");
                d.map.vertex_rotations.push_back(rot);
                d.loop_markers.push_back(static_cast<int>(d.map.vertex_count() - 1));
            } else {
                throw SchemaError("unknown vertex kind \"" + kind + "\"");
            }
        }
        if (used != declared) throw SchemaError("declared darts and rotation darts differ");

        for (const auto& e : require(j, "edges")) {
            if (!e.is_array() || e.size() != 2) throw SchemaError("edge must be a dart pair");
            d.map.edge_pairs.push_back({e[0].get<Dart>(), e[1].get<Dart>()});
        }
        {
            auto violations = validate_map(d.map);
            if (!violations.empty())
                throw SchemaError("invalid map: " + violations.front().code + " (" +
                                  violations.front().detail + ")");
        }

        if (d.map.empty()) {
            if (!d.surface.punctures.empty() && j.contains("puncture_faces") &&
                !j.at("puncture_faces").empty())
                throw SchemaError("empty diagram cannot place punctures");
            return d;
        }

        auto orbits = trace_faces(d.map);
        const bool connected = map_components(d.map).size() <= 1;
        if (j.contains("faces")) {
            for (const auto& region : j.at("faces")) {
                std::vector<Dart> r;
                for (const auto& o : region) r.push_back(o.get<Dart>());
                std::sort(r.begin(), r.end());
                d.regions.push_back(std::move(r));
            }
            std::sort(d.regions.begin(), d.regions.end());
        } else if (connected) {
            for (const auto& o : orbits) d.regions.push_back({o.front()});
        } else {
            throw SchemaError("\"faces\" grouping is required for disconnected diagrams");
        }

        d.outer_region = require(j, "outer_face").get<int>();
        for (const auto& [name, idx] : require(j, "puncture_faces").items())
            d.puncture_regions[name] = idx.get<int>();

        if (j.contains("orientations")) {
            for (const auto& x : j.at("orientations")) d.orientations.push_back(x.get<Dart>());
        } else {
            for (const auto& comp : link_components(d)) d.orientations.push_back(comp.front());
        }

        auto violations = validate_diagram(d);
        if (!violations.empty())
            throw SchemaError("invalid diagram: " + violations.front().code + " (" +
                              violations.front().detail + ")");
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(e.what());
    }
}

std::string serialize_diagram(const Diagram& d) {
    ordered_json j;
    j["format"] = "aps-diagram/1";
    j["surface"]["punctures"] = d.surface.punctures;
    std::vector<Dart> darts;
    for (const auto& rot : d.map.vertex_rotations)
        for (Dart x : rot) darts.push_back(x);
    std::sort(darts.begin(), darts.end());
    j["darts"] = darts;
    std::vector<std::pair<Dart, Dart>> edges;
    for (auto [a, b] : d.map.edge_pairs) edges.push_back({std::min(a, b), std::max(a, b)});
    std::sort(edges.begin(), edges.end());
    j["edges"] = ordered_json::array();
    for (auto [a, b] : edges) j["edges"].push_back({a, b});
    j["vertices"] = ordered_json::array();
    for (const auto& c : d.crossings) {
        ordered_json v;
        v["kind"] = "crossing";
        v["rotation"] = d.map.vertex_rotations[c.vertex];
        v["under_in"] = d.map.vertex_rotations[c.vertex][0];
        j["vertices"].push_back(v);
    }
    std::vector<int> markers = d.loop_markers;
    std::sort(markers.begin(), markers.end(), [&](int a, int b) {
        return d.map.vertex_rotations[a] < d.map.vertex_rotations[b];
    });
    for (int m : markers) {
        ordered_json v;
        v["kind"] = "loop";
        v["rotation"] = d.map.vertex_rotations[m];
        j["vertices"].push_back(v);
    }
    if (!d.map.empty()) {
        auto regions = d.regions;
        std::sort(regions.begin(), regions.end());
        j["faces"] = regions;
        j["outer_face"] = d.outer_region;
        j["puncture_faces"] = ordered_json::object();
        for (const auto& [p, r] : d.puncture_regions) j["puncture_faces"][p] = r;
        auto orient = d.orientations;
        std::sort(orient.begin(), orient.end());
        j["orientations"] = orient;
    } else {
        j["darts"] = ordered_json::array();
        j["edges"] = ordered_json::array();
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// canonical signature

namespace {

// Canonical relabeling of one map component starting from a root dart:
// darts are numbered in discovery order of the walk that repeatedly applies
// sigma then theta.  The emitted string captures sigma, theta, vertex shape,
// under_in marks and orientation bits, so equal strings mean an isomorphism
// of labeled diagrams restricted to the component.
std::string component_string(const Diagram& d, const MapIndex& idx,
                             const std::vector<bool>& forward, Dart root,
                             std::map<Dart, int>* labels_out) {
    std::map<Dart, int> label;
    std::vector<Dart> order;
    std::vector<Dart> queue{root};
    label[root] = 0;
    order.push_back(root);
    std::size_t head = 0;
    while (head < queue.size()) {
        Dart cur = queue[head++];
        for (Dart nxt : {idx.sigma(cur), idx.theta(cur)}) {
            if (!label.count(nxt)) {
                label[nxt] = static_cast<int>(order.size());
                order.push_back(nxt);
                queue.push_back(nxt);
            }
        }
    }
    std::set<int> crossing_vs;
    for (const auto& c : d.crossings) crossing_vs.insert(c.vertex);
    std::ostringstream os;
    for (Dart x : order) {
        const int v = idx.vertex_of(x);
        const auto& rot = d.map.vertex_rotations[v];
        os << label[idx.sigma(x)] << ',' << label[idx.theta(x)] << ','
           << (crossing_vs.count(v) ? (x == rot[0] ? 'U' : 'c') : 'm')
           << (forward[idx.dart_index(x)] ? '>' : '.') << ';';
    }
    if (labels_out) *labels_out = std::move(label);
    return os.str();
}

}  // namespace

std::string canonical_signature(const Diagram& d) {
    if (d.map.empty()) {
        std::string s = "empty[";
        for (const auto& p : d.surface.punctures) s += p + ",";
        return s + "]";
    }
    MapIndex idx(d.map);
    auto forward = forward_darts(d, idx);

    // per map component: minimal string over all roots, remembering the
    // winning labeling
    auto vcomps = map_components(d.map);
    struct Comp {
        std::string str;
        std::map<Dart, int> labels;
    };
    std::vector<Comp> comps;
    for (const auto& vs : vcomps) {
        Comp best;
        for (int v : vs)
            for (Dart root : d.map.vertex_rotations[v]) {
                std::map<Dart, int> labels;
                std::string s = component_string(d, idx, forward, root, &labels);
                if (best.str.empty() || s < best.str) best = {std::move(s), std::move(labels)};
            }
        comps.push_back(std::move(best));
    }
    std::sort(comps.begin(), comps.end(),
              [](const Comp& a, const Comp& b) { return a.str < b.str; });

    // order equal components every possible way and keep the minimal full
    // signature (regions and punctures included); tie groups are tiny in
    // practice, so cap the search
    std::vector<std::size_t> perm(comps.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> orders{perm};
    {
        std::size_t budget = 720;
        std::vector<std::vector<std::size_t>> expanded;
        std::function<void(std::size_t, std::vector<std::size_t>&)> rec =
            [&](std::size_t i, std::vector<std::size_t>& acc) {
                if (expanded.size() >= budget) return;
                if (i == comps.size()) {
                    expanded.push_back(acc);
                    return;
                }
                std::size_t jend = i;
                while (jend < comps.size() && comps[jend].str == comps[i].str) jend++;
                std::vector<std::size_t> group(acc.begin() + i, acc.begin() + jend);
                std::sort(group.begin(), group.end());
                do {
                    std::copy(group.begin(), group.end(), acc.begin() + i);
                    rec(jend, acc);
                } while (std::next_permutation(group.begin(), group.end()) &&
                         expanded.size() < budget);
            };
        rec(0, perm);
        if (!expanded.empty()) orders = std::move(expanded);
    }

    auto orbits = trace_faces(d.map);
    std::map<Dart, Dart> orbit_of_dart;
    for (const auto& o : orbits)
        for (Dart x : o) orbit_of_dart[x] = o.front();

    std::string best;
    for (const auto& ord : orders) {
        // global dart label = component offset + local label
        std::map<Dart, int> global;
        int offset = 0;
        std::string body;
        for (std::size_t ci : ord) {
            body += comps[ci].str + "|";
            for (const auto& [dart, l] : comps[ci].labels) global[dart] = offset + l;
            offset += static_cast<int>(comps[ci].labels.size());
        }
        // canonical name of an orbit: minimal global label over its darts
        auto orbit_name = [&](Dart orbit_min) {
            int best_label = -1;
            for (const auto& o : orbits) {
                if (o.front() != orbit_min) continue;
                for (Dart x : o) {
                    int g = global[x];
                    if (best_label < 0 || g < best_label) best_label = g;
                }
            }
            return best_label;
        };
        std::vector<std::vector<int>> regions;
        for (const auto& r : d.regions) {
            std::vector<int> named;
            for (Dart o : r) named.push_back(orbit_name(o));
            std::sort(named.begin(), named.end());
            regions.push_back(std::move(named));
        }
        std::vector<int> region_rank(regions.size());
        std::iota(region_rank.begin(), region_rank.end(), 0);
        std::sort(region_rank.begin(), region_rank.end(),
                  [&](int a, int b) { return regions[a] < regions[b]; });
        std::ostringstream os;
        os << body << "#regions:";
        std::vector<int> region_position(regions.size());
        for (std::size_t i = 0; i < region_rank.size(); ++i)
            region_position[region_rank[i]] = static_cast<int>(i);
        for (int rr : region_rank) {
            os << "[";
            for (int x : regions[rr]) os << x << ",";
            os << "]";
        }
        os << "#outer:" << region_position[d.outer_region] << "#punctures:";
        for (const auto& [p, r] : d.puncture_regions)
            os << p << "->" << region_position[r] << ",";
        os << "#crossings:";
        for (const auto& c : d.crossings) os << global[d.map.vertex_rotations[c.vertex][0]] << ",";
        std::string s = os.str();
        if (best.empty() || s < best) best = std::move(s);
    }
    return best;
}

}  // namespace aps
