#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "preftop/delta_complex.hpp"
#include "preftop/error.hpp"
#include "preftop/preferences.hpp"

namespace preftop {

// Vertex label for the ordered pair (x, y): "12", "21", ...
inline std::string pair_label(Alt x, Alt y) {
    return alt_name(x) + alt_name(y);
}

// One ground-set element of a cover. The reference triple lists the cover
// indices the element belongs to, ordered by the element's own chain:
// [ab, bc, ac] for the order a < b < c, [ab, bc, ca] for the cycle
// a < b < c < a.
struct CoverElement {
    std::string name;
    TernaryCode code;
    bool is_cycle = false;
    std::array<std::string, 3> reference{};
};

// Indexed family of subsets of a small ground set of preference states.
// Indices are the ordered pairs (x, y), x != y; the member sets are given
// by ids into `ground`.
struct Cover {
    AlternativeSet alts;
    std::vector<std::pair<Alt, Alt>> indices;
    std::vector<std::string> index_labels;
    std::vector<CoverElement> ground;
    std::vector<std::vector<int>> members;
    bool includes_cycles = false;
};

namespace detail {

inline std::array<std::string, 3> order_reference(const StrictOrder& o) {
    Alt a = o.ranking[0], b = o.ranking[1], c = o.ranking[2];
    return {pair_label(a, b), pair_label(b, c), pair_label(a, c)};
}

inline std::array<std::string, 3> cycle_reference(const PreferenceCycle& y) {
    Alt a = y.elements[0], b = y.elements[1], c = y.elements[2];
    return {pair_label(a, b), pair_label(b, c), pair_label(c, a)};
}

inline Cover make_cover(const AlternativeSet& alts, bool with_cycles) {
    if (alts.size() != 3)
        fail(errc::unsupported,
             "cover construction needs exactly 3 alternatives, got " +
                 std::to_string(alts.size()));
    Cover cov;
    cov.alts = alts;
    cov.includes_cycles = with_cycles;
    for (Alt x : alts.ids)
        for (Alt y : alts.ids)
            if (x != y) cov.indices.emplace_back(x, y);
    std::sort(cov.indices.begin(), cov.indices.end(),
              [](const auto& p, const auto& q) {
                  return pair_label(p.first, p.second) <
                         pair_label(q.first, q.second);
              });
    for (auto& [x, y] : cov.indices) cov.index_labels.push_back(pair_label(x, y));

    for (const auto& o : enumerate_strict_orders(alts))
        cov.ground.push_back(
            {to_string(o), encode(o), false, order_reference(o)});
    if (with_cycles)
        for (const auto& y : valid_cycles(alts))
            cov.ground.push_back(
                {to_string(y), encode(y), true, cycle_reference(y)});

    cov.members.resize(cov.indices.size());
    for (size_t i = 0; i < cov.indices.size(); ++i) {
        auto [x, y] = cov.indices[i];
        for (size_t e = 0; e < cov.ground.size(); ++e) {
            const TernaryCode& c = cov.ground[e].code;
            if (prefers(c, x, y) && !prefers(c, y, x))
                cov.members[i].push_back(static_cast<int>(e));
        }
    }
    return cov;
}

}  // namespace detail

// The six sets of strict orders that place x above y, one per ordered pair.
inline Cover cover_U(const AlternativeSet& alts) {
    return detail::make_cover(alts, false);
}

// Same index set over the eight states: six strict orders plus the two
// strict total cycles.
inline Cover cover_V(const AlternativeSet& alts) {
    return detail::make_cover(alts, true);
}

// Nerve of a cover, with bookkeeping the quotient constructions need:
// which ground element produced each face, the reference vertex ordering
// of each face, and reference orderings for length-3 boundary circuits
// that match a cycle's would-be triangle.
struct OrientedNerve {
    DeltaComplex complex;
    AlternativeSet alts;
    std::map<std::string, std::pair<Alt, Alt>> vertex_pair;
    std::map<std::string, std::string> provenance;
    std::map<std::string, std::array<std::string, 3>> face_reference;
    std::map<std::string, std::array<std::string, 3>> boundary_reference;
};

inline OrientedNerve nerve(const Cover& cover) {
    const size_t n = cover.indices.size();

    std::vector<std::vector<int>> elem_sets(cover.ground.size());
    for (size_t i = 0; i < n; ++i)
        for (int e : cover.members[i]) elem_sets[e].push_back(static_cast<int>(i));
    for (size_t e = 0; e < cover.ground.size(); ++e) {
        if (elem_sets[e].empty())
            fail(errc::construction, "cover does not contain its ground element " +
                                         cover.ground[e].name);
        if (elem_sets[e].size() > 3)
            fail(errc::unsupported,
                 "cover element " + cover.ground[e].name +
                     " lies in more than 3 sets; nerve would exceed dimension 2");
    }

    OrientedNerve out;
    out.alts = cover.alts;

    DeltaComplex& c = out.complex;
    std::map<int, int> vertex_of_index;
    for (size_t i = 0; i < n; ++i) {
        if (cover.members[i].empty()) continue;
        vertex_of_index[static_cast<int>(i)] = static_cast<int>(c.vertices.size());
        c.vertices.push_back(cover.index_labels[i]);
        out.vertex_pair[cover.index_labels[i]] = cover.indices[i];
    }

    auto intersect = [&](int i, int j) {
        std::vector<int> common;
        std::set_intersection(cover.members[i].begin(), cover.members[i].end(),
                              cover.members[j].begin(), cover.members[j].end(),
                              std::back_inserter(common));
        return common;
    };

    std::map<std::pair<int, int>, int> edge_of;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (intersect(static_cast<int>(i), static_cast<int>(j)).empty())
                continue;
            const std::string &u = cover.index_labels[i], &v = cover.index_labels[j];
            const std::string &tail = std::min(u, v), &head = std::max(u, v);
            edge_of[{static_cast<int>(i), static_cast<int>(j)}] =
                static_cast<int>(c.edges.size());
            c.edges.push_back({vertex_of_index.at(static_cast<int>(i)),
                               vertex_of_index.at(static_cast<int>(j)),
                               tail + "-" + head});
            if (tail != u) std::swap(c.edges.back().tail, c.edges.back().head);
        }

    auto index_of_label = [&](const std::string& lbl) {
        for (size_t i = 0; i < n; ++i)
            if (cover.index_labels[i] == lbl) return static_cast<int>(i);
        fail(errc::construction, "reference label " + lbl + " is not a cover index");
    };
    auto edge_between = [&](int i, int j) {
        auto it = edge_of.find({std::min(i, j), std::max(i, j)});
        if (it == edge_of.end())
            fail(errc::construction, "face edge between " + cover.index_labels[i] +
                                         " and " + cover.index_labels[j] +
                                         " is not a nerve simplex");
        return it->second;
    };

    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                auto ij = intersect(static_cast<int>(i), static_cast<int>(j));
                std::vector<int> common;
                std::set_intersection(ij.begin(), ij.end(),
                                      cover.members[k].begin(),
                                      cover.members[k].end(),
                                      std::back_inserter(common));
                if (common.empty()) continue;
                if (common.size() > 1)
                    fail(errc::construction,
                         "triple intersection at {" + cover.index_labels[i] + "," +
                             cover.index_labels[j] + "," + cover.index_labels[k] +
                             "} is not a singleton");
                const CoverElement& el = cover.ground[common[0]];
                std::set<int> have{static_cast<int>(i), static_cast<int>(j),
                                   static_cast<int>(k)};
                std::set<int> want;
                for (const auto& lbl : el.reference) want.insert(index_of_label(lbl));
                if (have != want)
                    fail(errc::construction, "reference triple of " + el.name +
                                                 " does not match its face");
                DeltaComplex::Face f;
                f.label = el.name;
                for (int s = 0; s < 3; ++s) {
                    int from = index_of_label(el.reference[s]);
                    int to = index_of_label(el.reference[(s + 1) % 3]);
                    int e = edge_between(from, to);
                    f.chain[s] = {e, c.edges[e].tail ==
                                         vertex_of_index.at(from)};
                }
                c.faces.push_back(f);
                out.provenance[el.name] = el.name;
                out.face_reference[el.name] = el.reference;
            }

    c.validate();

    // A strict cycle missing from the ground set may still trace a circuit
    // of the nerve; record its reference ordering when that circuit is an
    // actual boundary.
    if (cover.alts.size() == 3 && is_surface(c).ok && !c.faces.empty()) {
        auto circuits = boundary_components(c);
        for (const auto& y : valid_cycles(cover.alts)) {
            std::string nm = to_string(y);
            if (out.face_reference.count(nm)) continue;
            auto ref = detail::cycle_reference(y);
            auto canon = canonical_circuit({ref.begin(), ref.end()});
            for (const auto& circ : circuits)
                if (circ == canon) out.boundary_reference[nm] = ref;
        }
    }
    return out;
}

enum class Winding { Counterclockwise, Clockwise };

inline std::string winding_name(Winding w) {
    return w == Winding::Counterclockwise ? "counterclockwise" : "clockwise";
}

// Winding of every face and recorded boundary circuit against the fixed
// planar layout of the six pair vertices. Only the relative result matters
// downstream: the two cycle triangles always wind opposite ways.
inline std::map<std::string, Winding> reference_orientation_signature(
    const OrientedNerve& n) {
    if (n.alts.size() != 3)
        fail(errc::domain, "orientation signature is defined for 3 alternatives");
    Alt a0 = n.alts.ids[0], a1 = n.alts.ids[1], a2 = n.alts.ids[2];
    std::map<std::string, std::pair<double, double>> coords{
        {pair_label(a0, a1), {6.0, 12.25}}, {pair_label(a1, a2), {3.0, 8.0}},
        {pair_label(a2, a0), {9.0, 8.0}},   {pair_label(a0, a2), {5.25, 10.0}},
        {pair_label(a2, a1), {6.75, 10.0}}, {pair_label(a1, a0), {6.0, 9.0}},
    };
    for (const auto& v : n.complex.vertices)
        if (!coords.count(v))
            fail(errc::domain, "vertex " + v + " has no place in the fixed layout");

    auto wind = [&](const std::array<std::string, 3>& tri) {
        auto [x1, y1] = coords.at(tri[0]);
        auto [x2, y2] = coords.at(tri[1]);
        auto [x3, y3] = coords.at(tri[2]);
        double twice_area = x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2);
        if (twice_area == 0.0)
            fail(errc::domain, "degenerate triangle in the fixed layout");
        return twice_area > 0 ? Winding::Counterclockwise : Winding::Clockwise;
    };

    std::map<std::string, Winding> out;
    for (const auto& [face, ref] : n.face_reference) out[face] = wind(ref);
    for (const auto& [cyc, ref] : n.boundary_reference) out[cyc] = wind(ref);
    return out;
}

}  // namespace preftop
