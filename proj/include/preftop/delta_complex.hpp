#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "preftop/error.hpp"

namespace preftop {

// Two-dimensional delta complex: triangular faces attached along directed
// edges. Unlike an abstract simplicial complex this survives quotients:
// parallel edges, loops, and faces meeting an edge twice are all legal.
struct DeltaComplex {
    struct Edge {
        int tail = 0, head = 0;
        std::string label;
    };
    // Reference to an edge as traversed by a face chain; forward means the
    // traversal runs tail -> head of the stored edge.
    struct EdgeRef {
        int edge = 0;
        bool forward = true;
        bool operator==(const EdgeRef&) const = default;
    };
    struct Face {
        std::array<EdgeRef, 3> chain;  // consecutive refs join head-to-tail
        std::string label;
    };

    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<Face> faces;

    int ref_tail(EdgeRef r) const {
        const Edge& e = edges[static_cast<size_t>(r.edge)];
        return r.forward ? e.tail : e.head;
    }
    int ref_head(EdgeRef r) const {
        const Edge& e = edges[static_cast<size_t>(r.edge)];
        return r.forward ? e.head : e.tail;
    }

    int vertex_index(const std::string& label) const {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == label) return static_cast<int>(i);
        fail(errc::domain, "no vertex labelled " + label);
    }
    int edge_index(const std::string& label) const {
        for (size_t i = 0; i < edges.size(); ++i)
            if (edges[i].label == label) return static_cast<int>(i);
        fail(errc::domain, "no edge labelled " + label);
    }
    int face_index(const std::string& label) const {
        for (size_t i = 0; i < faces.size(); ++i)
            if (faces[i].label == label) return static_cast<int>(i);
        fail(errc::domain, "no face labelled " + label);
    }

    void validate() const {
        std::set<std::string> seen;
        for (const auto& v : vertices)
            if (!seen.insert(v).second)
                fail(errc::construction, "duplicate vertex label " + v);
        seen.clear();
        for (const auto& e : edges) {
            if (!seen.insert(e.label).second)
                fail(errc::construction, "duplicate edge label " + e.label);
            if (e.tail < 0 || e.tail >= static_cast<int>(vertices.size()) ||
                e.head < 0 || e.head >= static_cast<int>(vertices.size()))
                fail(errc::construction, "edge endpoint out of range");
        }
        seen.clear();
        for (const auto& f : faces) {
            if (!seen.insert(f.label).second)
                fail(errc::construction, "duplicate face label " + f.label);
            for (auto r : f.chain)
                if (r.edge < 0 || r.edge >= static_cast<int>(edges.size()))
                    fail(errc::construction, "face references missing edge");
            for (int i = 0; i < 3; ++i)
                if (ref_head(f.chain[static_cast<size_t>(i)]) !=
                    ref_tail(f.chain[static_cast<size_t>((i + 1) % 3)]))
                    fail(errc::construction,
                         "face chain does not close: " + f.label);
        }
    }
};

inline int euler_characteristic(const DeltaComplex& c) {
    return static_cast<int>(c.vertices.size()) -
           static_cast<int>(c.edges.size()) +
           static_cast<int>(c.faces.size());
}

// Simplicial construction: shared edges are deduplicated by their unordered
// endpoints, stored with the lexicographically smaller vertex label as tail
// and labelled "<tail>-<head>".
inline DeltaComplex from_triangles(
    const std::vector<std::string>& vertices,
    const std::vector<std::array<std::string, 3>>& triples,
    const std::vector<std::string>& face_labels = {}) {
    if (!face_labels.empty() && face_labels.size() != triples.size())
        fail(errc::domain, "one face label per triple expected");
    DeltaComplex c;
    c.vertices = vertices;
    std::map<std::pair<int, int>, int> edge_of;  // (min,max) vertex index
    auto edge_between = [&](int u, int v) {
        auto key = std::minmax(u, v);
        auto it = edge_of.find(key);
        if (it != edge_of.end()) return it->second;
        int lo = u, hi = v;
        if (c.vertices[static_cast<size_t>(hi)] <
            c.vertices[static_cast<size_t>(lo)])
            std::swap(lo, hi);
        DeltaComplex::Edge e;
        e.tail = lo;
        e.head = hi;
        e.label = c.vertices[static_cast<size_t>(lo)] + "-" +
                  c.vertices[static_cast<size_t>(hi)];
        c.edges.push_back(e);
        int id = static_cast<int>(c.edges.size()) - 1;
        edge_of[key] = id;
        return id;
    };
    for (size_t t = 0; t < triples.size(); ++t) {
        std::array<int, 3> v;
        for (int i = 0; i < 3; ++i)
            v[static_cast<size_t>(i)] =
                c.vertex_index(triples[t][static_cast<size_t>(i)]);
        if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
            fail(errc::construction, "degenerate triangle with repeated vertex");
        DeltaComplex::Face f;
        for (int i = 0; i < 3; ++i) {
            int a = v[static_cast<size_t>(i)], b = v[static_cast<size_t>((i + 1) % 3)];
            int e = edge_between(a, b);
            f.chain[static_cast<size_t>(i)] = {e, c.edges[static_cast<size_t>(e)].tail == a};
        }
        f.label = face_labels.empty() ? "t" + std::to_string(t) : face_labels[t];
        c.faces.push_back(f);
    }
    c.validate();
    return c;
}

// One traversal of an edge by a face chain.
struct FaceSide {
    int face = 0;
    int pos = 0;        // chain slot
    bool forward = true;  // traversal direction relative to edge storage
};

inline std::vector<std::vector<FaceSide>> edge_sides(const DeltaComplex& c) {
    std::vector<std::vector<FaceSide>> sides(c.edges.size());
    for (size_t f = 0; f < c.faces.size(); ++f)
        for (int p = 0; p < 3; ++p) {
            auto r = c.faces[f].chain[static_cast<size_t>(p)];
            sides[static_cast<size_t>(r.edge)].push_back(
                {static_cast<int>(f), p, r.forward});
        }
    return sides;
}

struct SurfaceReport {
    bool ok = true;
    std::vector<std::string> defects;
};

// An edge end is (edge, endpoint); endpoint 0 is the stored tail, 1 the
// head. Loops own two distinct ends at the same vertex.
namespace detail {
struct End {
    int edge;
    int endpoint;
    auto operator<=>(const End&) const = default;
};

inline int end_vertex(const DeltaComplex& c, End e) {
    const auto& ed = c.edges[static_cast<size_t>(e.edge)];
    return e.endpoint == 0 ? ed.tail : ed.head;
}

// Corners of face chains: at the joint between consecutive chain slots the
// two edge ends meet. These are the link arcs used by the manifold check.
inline std::vector<std::pair<End, End>> corners(const DeltaComplex& c) {
    std::vector<std::pair<End, End>> out;
    for (const auto& f : c.faces)
        for (int i = 0; i < 3; ++i) {
            auto cur = f.chain[static_cast<size_t>(i)];
            auto nxt = f.chain[static_cast<size_t>((i + 1) % 3)];
            End a{cur.edge, cur.forward ? 1 : 0};   // chain-head end of cur
            End b{nxt.edge, nxt.forward ? 0 : 1};   // chain-tail end of nxt
            out.emplace_back(a, b);
        }
    return out;
}
}  // namespace detail

inline SurfaceReport is_surface(const DeltaComplex& c) {
    SurfaceReport rep;
    auto sides = edge_sides(c);
    for (size_t e = 0; e < c.edges.size(); ++e) {
        size_t n = sides[e].size();
        if (n == 0)
            rep.defects.push_back("edge " + c.edges[e].label +
                                  " borders no face");
        else if (n > 2)
            rep.defects.push_back("edge " + c.edges[e].label + " borders " +
                                  std::to_string(n) + " face-sides");
    }

    // vertex links: ends at the vertex joined by face corners must form one
    // arc or one cycle
    std::vector<std::vector<detail::End>> ends_at(c.vertices.size());
    for (size_t e = 0; e < c.edges.size(); ++e) {
        ends_at[static_cast<size_t>(c.edges[e].tail)].push_back(
            {static_cast<int>(e), 0});
        ends_at[static_cast<size_t>(c.edges[e].head)].push_back(
            {static_cast<int>(e), 1});
    }
    std::map<detail::End, std::vector<detail::End>> adj;
    for (auto [a, b] : detail::corners(c)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (size_t v = 0; v < c.vertices.size(); ++v) {
        const auto& ends = ends_at[v];
        if (ends.empty()) {
            rep.defects.push_back("isolated vertex " + c.vertices[v]);
            continue;
        }
        bool degree_ok = true;
        for (auto e : ends) {
            size_t deg = adj.count(e) ? adj[e].size() : 0;
            if (deg > 2) degree_ok = false;
        }
        if (!degree_ok) {
            rep.defects.push_back("vertex " + c.vertices[v] +
                                  " has an overfull link");
            continue;
        }
        // connectivity of the link graph on this vertex's ends
        std::set<detail::End> seen;
        std::vector<detail::End> stack{ends[0]};
        while (!stack.empty()) {
            auto e = stack.back();
            stack.pop_back();
            if (!seen.insert(e).second) continue;
            if (adj.count(e))
                for (auto n : adj[e]) stack.push_back(n);
        }
        if (seen.size() != ends.size())
            rep.defects.push_back("vertex " + c.vertices[v] +
                                  " has a disconnected link");
    }
    rep.ok = rep.defects.empty();
    return rep;
}

namespace detail {
inline void require_surface(const DeltaComplex& c, const char* op) {
    auto rep = is_surface(c);
    if (!rep.ok) {
        std::string msg = std::string(op) + " needs a surface complex;";
        for (const auto& d : rep.defects) msg += " " + d + ";";
        fail(errc::precondition, msg);
    }
}
}  // namespace detail

// Boundary circuits as canonical vertex label cycles: rotated so the
// lexicographically smallest label leads, directed toward its smaller
// neighbour. Circuits are returned sorted.
inline std::vector<std::string> canonical_circuit(
    std::vector<std::string> cyc) {
    if (cyc.empty()) return cyc;
    size_t at = static_cast<size_t>(
        std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
    std::rotate(cyc.begin(), cyc.begin() + static_cast<long>(at), cyc.end());
    if (cyc.size() > 2 && cyc[cyc.size() - 1] < cyc[1]) {
        std::reverse(cyc.begin() + 1, cyc.end());
    }
    return cyc;
}

inline std::vector<std::vector<std::string>> boundary_components(
    const DeltaComplex& c) {
    auto sides = edge_sides(c);
    std::vector<int> boundary;  // edge ids with exactly one face-side
    for (size_t e = 0; e < c.edges.size(); ++e) {
        if (sides[e].size() > 2)
            fail(errc::precondition,
                 "edge " + c.edges[e].label + " borders more than 2 face-sides");
        if (sides[e].size() == 0)
            fail(errc::precondition,
                 "edge " + c.edges[e].label + " borders no face");
        if (sides[e].size() == 1) boundary.push_back(static_cast<int>(e));
    }
    std::map<int, std::vector<detail::End>> at_vertex;
    for (int e : boundary) {
        at_vertex[c.edges[static_cast<size_t>(e)].tail].push_back({e, 0});
        at_vertex[c.edges[static_cast<size_t>(e)].head].push_back({e, 1});
    }
    for (auto& [v, ends] : at_vertex)
        if (ends.size() != 2)
            fail(errc::precondition,
                 "boundary does not close at vertex " +
                     c.vertices[static_cast<size_t>(v)]);
    std::set<int> visited;
    std::vector<std::vector<std::string>> circuits;
    for (int e0 : boundary) {
        if (visited.count(e0)) continue;
        std::vector<std::string> cyc;
        detail::End cur{e0, 0};  // enter e0 at its tail
        while (true) {
            visited.insert(cur.edge);
            int v = detail::end_vertex(c, cur);
            cyc.push_back(c.vertices[static_cast<size_t>(v)]);
            detail::End other{cur.edge, 1 - cur.endpoint};
            int w = detail::end_vertex(c, other);
            // leave w through its other boundary end
            const auto& ends = at_vertex[w];
            detail::End next = (ends[0] == other) ? ends[1] : ends[0];
            if (next.edge == e0 && next.endpoint == 0) break;
            cur = next;
        }
        circuits.push_back(canonical_circuit(std::move(cyc)));
    }
    std::sort(circuits.begin(), circuits.end());
    return circuits;
}

struct OrientResult {
    bool orientable = true;
    std::map<std::string, int> sign;  // face label -> +1/-1 when orientable
    std::string conflict_edge;
    std::vector<std::string> conflict_faces;
};

// Breadth-first sign propagation. Two faces sharing an edge are compatible
// when they traverse it in opposite directions; a face meeting an edge
// twice in the same direction can never be oriented.
inline OrientResult orient(const DeltaComplex& c) {
    detail::require_surface(c, "orient");
    auto sides = edge_sides(c);
    OrientResult res;
    std::vector<int> sign(c.faces.size(), 0);
    std::vector<int> parent(c.faces.size(), -1);

    auto trail = [&](int f) {
        std::vector<std::string> path;
        for (int x = f; x != -1; x = parent[static_cast<size_t>(x)])
            path.push_back(c.faces[static_cast<size_t>(x)].label);
        return path;
    };
    auto conflict = [&](size_t e, int f1, int f2) {
        res.orientable = false;
        res.conflict_edge = c.edges[e].label;
        auto p1 = trail(f1);
        auto p2 = trail(f2);
        std::reverse(p2.begin(), p2.end());
        res.conflict_faces = std::move(p1);
        res.conflict_faces.insert(res.conflict_faces.end(), p2.begin(),
                                  p2.end());
    };

    // a face with two equal-direction sides on one edge conflicts with
    // itself regardless of propagation
    for (size_t e = 0; e < c.edges.size(); ++e)
        if (sides[e].size() == 2 && sides[e][0].face == sides[e][1].face &&
            sides[e][0].forward == sides[e][1].forward) {
            res.orientable = false;
            res.conflict_edge = c.edges[e].label;
            res.conflict_faces = {c.faces[static_cast<size_t>(sides[e][0].face)].label};
            return res;
        }

    for (size_t seed = 0; seed < c.faces.size(); ++seed) {
        if (sign[seed] != 0) continue;
        sign[seed] = 1;
        std::vector<int> queue{static_cast<int>(seed)};
        size_t qi = 0;
        while (qi < queue.size()) {
            int f = queue[qi++];
            for (int p = 0; p < 3; ++p) {
                auto r = c.faces[static_cast<size_t>(f)].chain[static_cast<size_t>(p)];
                size_t e = static_cast<size_t>(r.edge);
                if (sides[e].size() != 2) continue;
                auto s1 = sides[e][0], s2 = sides[e][1];
                if (s1.face == s2.face) continue;  // opposite directions, no constraint
                int other = (s1.face == f) ? s2.face : s1.face;
                int d1 = s1.forward ? 1 : -1, d2 = s2.forward ? 1 : -1;
                // want sign[s2.face] = -sign[s1.face] * d1 * d2
                int rel = -d1 * d2;  // sign ratio other/f in either role
                int want = sign[static_cast<size_t>(f)] * rel;
                if (sign[static_cast<size_t>(other)] == 0) {
                    sign[static_cast<size_t>(other)] = want;
                    parent[static_cast<size_t>(other)] = f;
                    queue.push_back(other);
                } else if (sign[static_cast<size_t>(other)] != want) {
                    conflict(e, f, other);
                    return res;
                }
            }
        }
    }
    for (size_t f = 0; f < c.faces.size(); ++f)
        res.sign[c.faces[f].label] = sign[f];
    return res;
}

// ---- connected components ----

namespace detail {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

// Union-find over edges carrying a parity bit: 0 when the member keeps the
// orientation of its root, 1 when it is reversed against it.
struct ParityUnionFind {
    std::vector<int> parent;
    std::vector<int> parity;  // relative to parent
    explicit ParityUnionFind(size_t n) : parent(n), parity(n, 0) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    std::pair<int, int> find(int x) {  // (root, parity to root)
        if (parent[static_cast<size_t>(x)] == x) return {x, 0};
        auto [r, p] = find(parent[static_cast<size_t>(x)]);
        parent[static_cast<size_t>(x)] = r;
        parity[static_cast<size_t>(x)] ^= p;
        return {r, parity[static_cast<size_t>(x)]};
    }
    // returns false on parity conflict
    bool unite(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        parent[static_cast<size_t>(rb)] = ra;
        parity[static_cast<size_t>(rb)] = pa ^ pb ^ rel;
        return true;
    }
};
}  // namespace detail

inline int component_count(const DeltaComplex& c) {
    detail::UnionFind uf(c.vertices.size());
    for (const auto& e : c.edges) uf.unite(e.tail, e.head);
    std::set<int> roots;
    for (size_t v = 0; v < c.vertices.size(); ++v)
        roots.insert(uf.find(static_cast<int>(v)));
    return static_cast<int>(roots.size());
}

inline std::vector<DeltaComplex> connected_components(const DeltaComplex& c) {
    detail::UnionFind uf(c.vertices.size());
    for (const auto& e : c.edges) uf.unite(e.tail, e.head);
    std::map<int, int> comp_of_root;
    std::vector<DeltaComplex> out;
    for (size_t v = 0; v < c.vertices.size(); ++v) {
        int r = uf.find(static_cast<int>(v));
        if (!comp_of_root.count(r)) {
            comp_of_root[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
    }
    std::vector<int> new_vertex(c.vertices.size());
    for (size_t v = 0; v < c.vertices.size(); ++v) {
        auto& comp = out[static_cast<size_t>(comp_of_root[uf.find(static_cast<int>(v))])];
        new_vertex[v] = static_cast<int>(comp.vertices.size());
        comp.vertices.push_back(c.vertices[v]);
    }
    std::vector<int> new_edge(c.edges.size());
    for (size_t e = 0; e < c.edges.size(); ++e) {
        int ci = comp_of_root[uf.find(c.edges[e].tail)];
        auto& comp = out[static_cast<size_t>(ci)];
        new_edge[e] = static_cast<int>(comp.edges.size());
        comp.edges.push_back({new_vertex[static_cast<size_t>(c.edges[e].tail)],
                              new_vertex[static_cast<size_t>(c.edges[e].head)],
                              c.edges[e].label});
    }
    for (const auto& f : c.faces) {
        int ci = comp_of_root[uf.find(c.edges[static_cast<size_t>(f.chain[0].edge)].tail)];
        auto& comp = out[static_cast<size_t>(ci)];
        DeltaComplex::Face nf = f;
        for (auto& r : nf.chain) r.edge = new_edge[static_cast<size_t>(r.edge)];
        comp.faces.push_back(nf);
    }
    for (auto& comp : out) comp.validate();
    return out;
}

// ---- classification ----

enum class SurfaceType {
    Sphere,
    Disk,
    Annulus,
    MobiusStrip,
    KleinBottle,
    ProjectivePlane,
    Torus,
    Other,
};

inline const char* surface_name(SurfaceType t) {
    switch (t) {
        case SurfaceType::Sphere: return "Sphere";
        case SurfaceType::Disk: return "Disk";
        case SurfaceType::Annulus: return "Annulus";
        case SurfaceType::MobiusStrip: return "MobiusStrip";
        case SurfaceType::KleinBottle: return "KleinBottle";
        case SurfaceType::ProjectivePlane: return "ProjectivePlane";
        case SurfaceType::Torus: return "Torus";
        case SurfaceType::Other: return "Other";
    }
    return "Other";
}

struct Classification {
    SurfaceType type = SurfaceType::Other;
    bool connected = true;
    int euler = 0;
    bool orientable = true;
    int boundary_circles = 0;
};

inline Classification classify(const DeltaComplex& c) {
    detail::require_surface(c, "classify");
    if (component_count(c) != 1)
        fail(errc::precondition,
             "disconnected complex: split with connected_components and "
             "classify each component separately");
    Classification r;
    r.connected = true;
    r.euler = euler_characteristic(c);
    r.orientable = orient(c).orientable;
    r.boundary_circles = static_cast<int>(boundary_components(c).size());
    bool o = r.orientable;
    int chi = r.euler, b = r.boundary_circles;
    if (o && chi == 2 && b == 0) r.type = SurfaceType::Sphere;
    else if (o && chi == 1 && b == 1) r.type = SurfaceType::Disk;
    else if (o && chi == 0 && b == 2) r.type = SurfaceType::Annulus;
    else if (o && chi == 0 && b == 0) r.type = SurfaceType::Torus;
    else if (!o && chi == 0 && b == 1) r.type = SurfaceType::MobiusStrip;
    else if (!o && chi == 0 && b == 0) r.type = SurfaceType::KleinBottle;
    else if (!o && chi == 1 && b == 0) r.type = SurfaceType::ProjectivePlane;
    else r.type = SurfaceType::Other;
    return r;
}

// ---- quotient gluing ----

struct VertexPair {
    std::string a, b;
};
// tails_match: the stored tails of the two edges are the identified ends.
struct EdgePair {
    std::string a, b;
    bool tails_match = true;
};
// Identify two faces; a_vertices[i] corresponds to b_vertices[i]. The
// triples must list each face's corners (any rotation or reversal).
struct FacePair {
    std::string face_a, face_b;
    std::array<std::string, 3> a_vertices, b_vertices;
};
struct GluingSpec {
    std::vector<VertexPair> vertices;
    std::vector<EdgePair> edges;
    std::vector<FacePair> faces;
};

struct CellMap {
    std::map<std::string, std::string> vertex, edge, face;
};

struct QuotientResult {
    DeltaComplex complex;
    CellMap map;
};

namespace detail {
// The chain slot of face f joining corners x and y, as edge id plus the
// flag "slot traverses x->y along the stored edge direction".
inline std::pair<int, bool> slot_between(const DeltaComplex& c, int f, int x,
                                         int y) {
    std::optional<std::pair<int, bool>> found;
    const auto& face = c.faces[static_cast<size_t>(f)];
    for (auto r : face.chain) {
        int t = c.ref_tail(r), h = c.ref_head(r);
        if ((t == x && h == y) || (t == y && h == x)) {
            if (found)
                fail(errc::unsupported,
                     "ambiguous edge between glued corners of face " +
                         face.label);
            const auto& e = c.edges[static_cast<size_t>(r.edge)];
            found = {r.edge, e.tail == x};
        }
    }
    if (!found)
        fail(errc::construction, "corner pair is not an edge of face " +
                                     face.label);
    return *found;
}
}  // namespace detail

// Identifies cells per the closure of the given correspondences: a face
// pair identifies its corresponded edges, an edge pair its corresponded
// endpoints. Merged cells keep the lexicographically smallest label.
inline QuotientResult quotient(const DeltaComplex& c, const GluingSpec& g) {
    detail::UnionFind vuf(c.vertices.size());
    detail::ParityUnionFind euf(c.edges.size());
    detail::UnionFind fuf(c.faces.size());

    auto unite_edges = [&](int ea, int eb, bool tails_match) {
        if (ea == eb) {
            if (!tails_match)
                fail(errc::unsupported,
                     "identifying edge " + c.edges[static_cast<size_t>(ea)].label +
                         " with itself reversed");
            return;
        }
        if (!euf.unite(ea, eb, tails_match ? 0 : 1))
            fail(errc::construction,
                 "inconsistent closure: edge " +
                     c.edges[static_cast<size_t>(ea)].label +
                     " glued to " + c.edges[static_cast<size_t>(eb)].label +
                     " with conflicting orientations");
        const auto& A = c.edges[static_cast<size_t>(ea)];
        const auto& B = c.edges[static_cast<size_t>(eb)];
        if (tails_match) {
            vuf.unite(A.tail, B.tail);
            vuf.unite(A.head, B.head);
        } else {
            vuf.unite(A.tail, B.head);
            vuf.unite(A.head, B.tail);
        }
    };

    for (const auto& p : g.vertices)
        vuf.unite(c.vertex_index(p.a), c.vertex_index(p.b));

    for (const auto& p : g.edges)
        unite_edges(c.edge_index(p.a), c.edge_index(p.b), p.tails_match);

    for (const auto& p : g.faces) {
        int fa = c.face_index(p.face_a), fb = c.face_index(p.face_b);
        if (fa == fb)
            fail(errc::unsupported,
                 "identifying face " + p.face_a + " with itself");
        fuf.unite(fa, fb);
        std::array<int, 3> av, bv;
        for (int i = 0; i < 3; ++i) {
            av[static_cast<size_t>(i)] = c.vertex_index(p.a_vertices[static_cast<size_t>(i)]);
            bv[static_cast<size_t>(i)] = c.vertex_index(p.b_vertices[static_cast<size_t>(i)]);
        }
        for (int i = 0; i < 3; ++i) {
            vuf.unite(av[static_cast<size_t>(i)], bv[static_cast<size_t>(i)]);
            auto [ea, da] = detail::slot_between(c, fa, av[static_cast<size_t>(i)],
                                                 av[static_cast<size_t>((i + 1) % 3)]);
            auto [eb, db] = detail::slot_between(c, fb, bv[static_cast<size_t>(i)],
                                                 bv[static_cast<size_t>((i + 1) % 3)]);
            unite_edges(ea, eb, da == db);
        }
    }

    // rebuild; class representatives are the lexicographically smallest
    // member labels, and cells are emitted sorted by label
    QuotientResult out;
    DeltaComplex& q = out.complex;

    std::map<int, std::vector<int>> vclass;
    for (size_t v = 0; v < c.vertices.size(); ++v)
        vclass[vuf.find(static_cast<int>(v))].push_back(static_cast<int>(v));
    std::vector<std::pair<std::string, int>> vreps;  // (label, root)
    for (auto& [root, members] : vclass) {
        std::string best = c.vertices[static_cast<size_t>(members[0])];
        for (int m : members)
            best = std::min(best, c.vertices[static_cast<size_t>(m)]);
        vreps.emplace_back(best, root);
    }
    std::sort(vreps.begin(), vreps.end());
    std::vector<int> new_vertex(c.vertices.size(), -1);
    for (size_t i = 0; i < vreps.size(); ++i) {
        q.vertices.push_back(vreps[i].first);
        for (int m : vclass[vreps[i].second]) {
            new_vertex[static_cast<size_t>(m)] = static_cast<int>(i);
            out.map.vertex[c.vertices[static_cast<size_t>(m)]] = vreps[i].first;
        }
    }

    std::map<int, std::vector<int>> eclass;
    for (size_t e = 0; e < c.edges.size(); ++e)
        eclass[euf.find(static_cast<int>(e)).first].push_back(static_cast<int>(e));
    std::vector<std::pair<std::string, int>> ereps;  // (label, representative edge)
    for (auto& [root, members] : eclass) {
        int best = members[0];
        for (int m : members)
            if (c.edges[static_cast<size_t>(m)].label <
                c.edges[static_cast<size_t>(best)].label)
                best = m;
        ereps.emplace_back(c.edges[static_cast<size_t>(best)].label, best);
    }
    std::sort(ereps.begin(), ereps.end());
    std::vector<int> new_edge(c.edges.size(), -1);
    std::vector<int> flip_vs_rep(c.edges.size(), 0);
    for (size_t i = 0; i < ereps.size(); ++i) {
        int rep = ereps[i].second;
        const auto& e = c.edges[static_cast<size_t>(rep)];
        q.edges.push_back({new_vertex[static_cast<size_t>(e.tail)],
                           new_vertex[static_cast<size_t>(e.head)], e.label});
        int rep_par = euf.find(rep).second;
        for (int m : eclass[euf.find(rep).first]) {
            new_edge[static_cast<size_t>(m)] = static_cast<int>(i);
            flip_vs_rep[static_cast<size_t>(m)] = euf.find(m).second ^ rep_par;
            out.map.edge[c.edges[static_cast<size_t>(m)].label] = e.label;
        }
    }

    auto remap_chain = [&](const DeltaComplex::Face& f) {
        std::array<DeltaComplex::EdgeRef, 3> chain;
        for (int i = 0; i < 3; ++i) {
            auto r = f.chain[static_cast<size_t>(i)];
            chain[static_cast<size_t>(i)] = {
                new_edge[static_cast<size_t>(r.edge)],
                r.forward != (flip_vs_rep[static_cast<size_t>(r.edge)] == 1)};
        }
        return chain;
    };
    auto same_cycle = [](const std::array<DeltaComplex::EdgeRef, 3>& a,
                         const std::array<DeltaComplex::EdgeRef, 3>& b) {
        for (int rot = 0; rot < 3; ++rot) {
            bool eq = true, rev = true;
            for (int i = 0; i < 3; ++i) {
                auto x = a[static_cast<size_t>(i)];
                auto y = b[static_cast<size_t>((i + rot) % 3)];
                if (!(x == y)) eq = false;
                auto z = b[static_cast<size_t>((rot + 3 - i) % 3)];
                if (x.edge != z.edge || x.forward == z.forward) rev = false;
            }
            if (eq || rev) return true;
        }
        return false;
    };

    std::map<int, std::vector<int>> fclass;
    for (size_t f = 0; f < c.faces.size(); ++f)
        fclass[fuf.find(static_cast<int>(f))].push_back(static_cast<int>(f));
    std::vector<std::pair<std::string, int>> freps;
    for (auto& [root, members] : fclass) {
        int best = members[0];
        for (int m : members)
            if (c.faces[static_cast<size_t>(m)].label <
                c.faces[static_cast<size_t>(best)].label)
                best = m;
        freps.emplace_back(c.faces[static_cast<size_t>(best)].label, best);
    }
    std::sort(freps.begin(), freps.end());
    for (auto& [label, rep] : freps) {
        auto chain = remap_chain(c.faces[static_cast<size_t>(rep)]);
        for (int m : fclass[fuf.find(rep)]) {
            if (m != rep &&
                !same_cycle(chain, remap_chain(c.faces[static_cast<size_t>(m)])))
                fail(errc::construction,
                     "glued faces " + label + " and " +
                         c.faces[static_cast<size_t>(m)].label +
                         " disagree after identification");
            out.map.face[c.faces[static_cast<size_t>(m)].label] = label;
        }
        q.faces.push_back({chain, label});
    }
    q.validate();
    return out;
}

// ---- puncture ----

// Removes the open disk of a face by collaring: the face is subdivided
// into a six-triangle ring around an inner triangle, and the inner
// triangle is left out. Drops the Euler characteristic by one and opens
// one new boundary circuit while leaving every original cell in place, so
// repeated punctures stay surfaces no matter which faces are chosen.
inline DeltaComplex puncture(const DeltaComplex& c,
                             const std::string& face_label) {
    int fi = c.face_index(face_label);
    DeltaComplex out = c;
    DeltaComplex::Face f = out.faces[static_cast<size_t>(fi)];
    out.faces.erase(out.faces.begin() + fi);

    std::array<int, 3> w;  // corner vertices in chain order
    for (int k = 0; k < 3; ++k) w[static_cast<size_t>(k)] = c.ref_tail(f.chain[static_cast<size_t>(k)]);

    std::array<int, 3> inner_v, inner_e, spoke, diag;
    for (int k = 0; k < 3; ++k) {
        inner_v[static_cast<size_t>(k)] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(face_label + "/v" + std::to_string(k));
    }
    for (int k = 0; k < 3; ++k) {
        inner_e[static_cast<size_t>(k)] = static_cast<int>(out.edges.size());
        out.edges.push_back({inner_v[static_cast<size_t>(k)],
                             inner_v[static_cast<size_t>((k + 1) % 3)],
                             face_label + "/e" + std::to_string(k)});
    }
    for (int k = 0; k < 3; ++k) {
        spoke[static_cast<size_t>(k)] = static_cast<int>(out.edges.size());
        out.edges.push_back({w[static_cast<size_t>(k)], inner_v[static_cast<size_t>(k)],
                             face_label + "/s" + std::to_string(k)});
    }
    for (int k = 0; k < 3; ++k) {
        diag[static_cast<size_t>(k)] = static_cast<int>(out.edges.size());
        out.edges.push_back({w[static_cast<size_t>((k + 1) % 3)], inner_v[static_cast<size_t>(k)],
                             face_label + "/d" + std::to_string(k)});
    }
    for (int k = 0; k < 3; ++k) {
        // outer ring triangle: rim, diagonal in, spoke back out
        DeltaComplex::Face A;
        A.chain = {f.chain[static_cast<size_t>(k)],
                   DeltaComplex::EdgeRef{diag[static_cast<size_t>(k)], true},
                   DeltaComplex::EdgeRef{spoke[static_cast<size_t>(k)], false}};
        A.label = face_label + "/r" + std::to_string(2 * k);
        out.faces.push_back(A);
        // inner ring triangle: spoke in, inner edge back, diagonal out
        DeltaComplex::Face B;
        B.chain = {DeltaComplex::EdgeRef{spoke[static_cast<size_t>((k + 1) % 3)], true},
                   DeltaComplex::EdgeRef{inner_e[static_cast<size_t>(k)], false},
                   DeltaComplex::EdgeRef{diag[static_cast<size_t>(k)], false}};
        B.label = face_label + "/r" + std::to_string(2 * k + 1);
        out.faces.push_back(B);
    }
    out.validate();
    return out;
}

// ---- orientation double cover ----

struct DoubleCover {
    DeltaComplex complex;
    std::map<std::string, std::string> vertex_base, edge_base, face_base;
    std::map<std::string, std::string> deck_vertex, deck_edge, deck_face;
};

// Two signed copies of every face; across each interior edge the copies
// pair so the induced traversals cancel, which makes the result orientable
// by construction. The base is orientable exactly when the cover falls
// apart into two components.
inline DoubleCover orientation_double_cover(const DeltaComplex& c) {
    detail::require_surface(c, "orientation_double_cover");
    auto sides = edge_sides(c);
    size_t F = c.faces.size();
    size_t copies = 2 * F;
    // copy index: 2*f for the + copy, 2*f+1 for the - copy
    auto copy_sign = [](size_t ci) { return ci % 2 == 0 ? 1 : -1; };
    auto cover_pos = [](size_t ci, int base_pos) {
        return ci % 2 == 0 ? base_pos : 2 - base_pos;
    };

    detail::ParityUnionFind euf(3 * copies);  // slot copies; parity unused
    detail::UnionFind vuf(3 * copies);        // corner copies

    // chain-tail corner of slot p in a copy is corner p; for direction dir
    // (relative to the base edge) the corner at the base tail is p when
    // dir=+1, else p+1
    auto corner_at_base_tail = [&](size_t ci, int cp, int dir) {
        return static_cast<int>(3 * ci) + (dir > 0 ? cp : (cp + 1) % 3);
    };
    auto corner_at_base_head = [&](size_t ci, int cp, int dir) {
        return static_cast<int>(3 * ci) + (dir > 0 ? (cp + 1) % 3 : cp);
    };

    for (size_t e = 0; e < c.edges.size(); ++e) {
        if (sides[e].size() != 2) continue;
        auto s1 = sides[e][0], s2 = sides[e][1];
        int d1 = s1.forward ? 1 : -1, d2 = s2.forward ? 1 : -1;
        for (int sgn1 : {1, -1}) {
            int sgn2 = -sgn1 * d1 * d2;
            size_t ci1 = 2 * static_cast<size_t>(s1.face) + (sgn1 > 0 ? 0 : 1);
            size_t ci2 = 2 * static_cast<size_t>(s2.face) + (sgn2 > 0 ? 0 : 1);
            int cp1 = cover_pos(ci1, s1.pos), cp2 = cover_pos(ci2, s2.pos);
            int dir1 = sgn1 * d1, dir2 = sgn2 * d2;  // dir2 == -dir1
            euf.unite(static_cast<int>(3 * ci1) + cp1,
                      static_cast<int>(3 * ci2) + cp2, 0);
            vuf.unite(corner_at_base_tail(ci1, cp1, dir1),
                      corner_at_base_tail(ci2, cp2, dir2));
            vuf.unite(corner_at_base_head(ci1, cp1, dir1),
                      corner_at_base_head(ci2, cp2, dir2));
        }
    }

    // base cell of each corner and slot, for labels and the projection
    auto base_corner = [&](size_t ci, int k) {
        int bk = ci % 2 == 0 ? k : (3 - k) % 3;
        const auto& f = c.faces[ci / 2];
        return c.ref_tail(f.chain[static_cast<size_t>(bk)]);
    };
    auto base_slot_edge = [&](size_t ci, int cp) {
        int bp = ci % 2 == 0 ? cp : 2 - cp;
        return c.faces[ci / 2].chain[static_cast<size_t>(bp)].edge;
    };
    auto slot_dir = [&](size_t ci, int cp) {
        int bp = ci % 2 == 0 ? cp : 2 - cp;
        auto r = c.faces[ci / 2].chain[static_cast<size_t>(bp)];
        return copy_sign(ci) * (r.forward ? 1 : -1);
    };

    DoubleCover out;
    DeltaComplex& q = out.complex;

    // vertices: classes of corner copies, labelled "<base>.<k>" in order of
    // smallest member
    std::map<int, std::vector<int>> vclass;
    for (size_t i = 0; i < 3 * copies; ++i)
        vclass[vuf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
    std::map<int, int> vertex_id;       // root -> new index
    std::map<int, int> copies_of_base;  // base vertex -> count so far
    std::vector<std::pair<int, int>> vorder;  // (smallest member, root)
    for (auto& [root, members] : vclass) vorder.emplace_back(members[0], root);
    std::sort(vorder.begin(), vorder.end());
    for (auto& [first, root] : vorder) {
        size_t ci = static_cast<size_t>(first) / 3;
        int k = first % 3;
        int bv = base_corner(ci, k);
        for (int m : vclass[root]) {
            size_t mci = static_cast<size_t>(m) / 3;
            if (base_corner(mci, m % 3) != bv)
                fail(errc::lemma, "cover corner class crosses base vertices");
        }
        int n = copies_of_base[bv]++;
        vertex_id[root] = static_cast<int>(q.vertices.size());
        std::string label = c.vertices[static_cast<size_t>(bv)] + "." +
                            std::to_string(n);
        q.vertices.push_back(label);
        out.vertex_base[label] = c.vertices[static_cast<size_t>(bv)];
    }
    auto corner_vertex = [&](size_t ci, int k) {
        return vertex_id[vuf.find(static_cast<int>(3 * ci) + k)];
    };

    // edges: classes of slot copies; stored in base direction, labelled
    // "<base>.<k>"
    std::map<int, std::vector<int>> eclass;
    for (size_t i = 0; i < 3 * copies; ++i)
        eclass[euf.find(static_cast<int>(i)).first].push_back(static_cast<int>(i));
    std::map<int, int> edge_id;
    std::map<int, int> e_copies_of_base;
    std::vector<std::pair<int, int>> eorder;
    for (auto& [root, members] : eclass) eorder.emplace_back(members[0], root);
    std::sort(eorder.begin(), eorder.end());
    for (auto& [first, root] : eorder) {
        size_t ci = static_cast<size_t>(first) / 3;
        int cp = first % 3;
        int be = base_slot_edge(ci, cp);
        int dir = slot_dir(ci, cp);
        int tail_corner = corner_at_base_tail(ci, cp, dir);
        int head_corner = corner_at_base_head(ci, cp, dir);
        int n = e_copies_of_base[be]++;
        edge_id[root] = static_cast<int>(q.edges.size());
        std::string label = c.edges[static_cast<size_t>(be)].label + "." +
                            std::to_string(n);
        q.edges.push_back({vertex_id[vuf.find(tail_corner)],
                           vertex_id[vuf.find(head_corner)], label});
        out.edge_base[label] = c.edges[static_cast<size_t>(be)].label;
    }

    for (size_t ci = 0; ci < copies; ++ci) {
        DeltaComplex::Face f;
        for (int cp = 0; cp < 3; ++cp) {
            int root = euf.find(static_cast<int>(3 * ci) + cp).first;
            f.chain[static_cast<size_t>(cp)] = {edge_id[root],
                                                slot_dir(ci, cp) > 0};
        }
        std::string base = c.faces[ci / 2].label;
        f.label = base + (ci % 2 == 0 ? "+" : "-");
        q.faces.push_back(f);
        out.face_base[f.label] = base;
        out.deck_face[f.label] = base + (ci % 2 == 0 ? "-" : "+");
    }
    q.validate();

    // deck transformation on vertices and edges via the copy swap
    for (size_t ci = 0; ci < copies; ++ci) {
        size_t oci = ci % 2 == 0 ? ci + 1 : ci - 1;
        for (int k = 0; k < 3; ++k) {
            int a = corner_vertex(ci, k);
            int b = corner_vertex(oci, (3 - k) % 3);
            out.deck_vertex[q.vertices[static_cast<size_t>(a)]] =
                q.vertices[static_cast<size_t>(b)];
        }
        for (int cp = 0; cp < 3; ++cp) {
            int a = edge_id[euf.find(static_cast<int>(3 * ci) + cp).first];
            int b = edge_id[euf.find(static_cast<int>(3 * oci) + (2 - cp)).first];
            out.deck_edge[q.edges[static_cast<size_t>(a)].label] =
                q.edges[static_cast<size_t>(b)].label;
        }
    }
    return out;
}

}  // namespace preftop
