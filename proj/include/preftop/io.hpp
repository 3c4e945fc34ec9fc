#pragma once

// Serialization of complexes, reports, and rule tables.
//
// The complex interchange format is plain JSON:
//
//   {
//     "vertices": ["12", "13", ...],
//     "edges":    [["12", "13", "12-13"], ...],          tail, head, label
//     "faces":    [["+12-13", "-13-23", "+12-23"], ...], signed edge labels
//     "face_labels": ["1<2<3", ...]                      optional, parallel
//   }
//
// Every writer in this header is deterministic: the same value always
// serialises to the same bytes.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "preftop/delta_complex.hpp"
#include "preftop/error.hpp"
#include "preftop/models.hpp"
#include "preftop/nerve.hpp"
#include "preftop/preferences.hpp"
#include "preftop/social_choice.hpp"

namespace preftop {

using ordered_json = nlohmann::ordered_json;

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::resource, "cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::resource, "cannot open " + path + " for writing");
    out << content;
    if (!out) fail(errc::resource, "failed writing " + path);
}

inline ordered_json parse_json_text(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::construction, std::string("invalid JSON: ") + e.what());
    }
}

inline ordered_json error_to_json(const Error& e) {
    ordered_json j;
    j["error"]["kind"] = errc_name(e.kind());
    j["error"]["message"] = e.what();
    return j;
}

inline ordered_json complex_to_json(const DeltaComplex& c) {
    ordered_json j;
    j["vertices"] = c.vertices;
    auto edges = ordered_json::array();
    for (const auto& e : c.edges)
        edges.push_back({c.vertices[static_cast<size_t>(e.tail)],
                         c.vertices[static_cast<size_t>(e.head)], e.label});
    j["edges"] = std::move(edges);
    auto faces = ordered_json::array();
    auto labels = ordered_json::array();
    for (const auto& f : c.faces) {
        auto chain = ordered_json::array();
        for (const auto& r : f.chain)
            chain.push_back((r.forward ? "+" : "-") +
                            c.edges[static_cast<size_t>(r.edge)].label);
        faces.push_back(std::move(chain));
        labels.push_back(f.label);
    }
    j["faces"] = std::move(faces);
    j["face_labels"] = std::move(labels);
    return j;
}

inline DeltaComplex complex_from_json(const ordered_json& j) {
    try {
        DeltaComplex c;
        for (const auto& v : j.at("vertices"))
            c.vertices.push_back(v.get<std::string>());
        std::map<std::string, int> edge_by_label;
        for (const auto& row : j.at("edges")) {
            if (!row.is_array() || row.size() != 3)
                fail(errc::construction,
                     "edge rows must be [tail, head, label]");
            DeltaComplex::Edge e;
            e.tail = c.vertex_index(row[0].get<std::string>());
            e.head = c.vertex_index(row[1].get<std::string>());
            e.label = row[2].get<std::string>();
            if (edge_by_label.count(e.label))
                fail(errc::construction, "duplicate edge label " + e.label);
            edge_by_label[e.label] = static_cast<int>(c.edges.size());
            c.edges.push_back(e);
        }
        const auto& face_rows = j.at("faces");
        std::vector<std::string> face_labels;
        if (j.contains("face_labels"))
            for (const auto& l : j.at("face_labels"))
                face_labels.push_back(l.get<std::string>());
        if (!face_labels.empty() && face_labels.size() != face_rows.size())
            fail(errc::construction,
                 "face_labels must be parallel to faces");
        for (size_t i = 0; i < face_rows.size(); ++i) {
            const auto& row = face_rows[i];
            if (!row.is_array() || row.size() != 3)
                fail(errc::construction,
                     "faces must list exactly three signed edge labels");
            DeltaComplex::Face f;
            for (size_t k = 0; k < 3; ++k) {
                std::string entry = row[k].get<std::string>();
                if (entry.size() < 2 ||
                    (entry.front() != '+' && entry.front() != '-'))
                    fail(errc::construction,
                         "face entries must be +label or -label, got " +
                             entry);
                auto it = edge_by_label.find(entry.substr(1));
                if (it == edge_by_label.end())
                    fail(errc::construction,
                         "face references unknown edge " + entry.substr(1));
                f.chain[k] = {it->second, entry.front() == '+'};
            }
            f.label = face_labels.empty() ? "t" + std::to_string(i)
                                          : face_labels[i];
            c.faces.push_back(f);
        }
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        fail(errc::construction,
             std::string("malformed complex JSON: ") + e.what());
    }
}

// OFF export. Coordinates are synthesised (vertices spaced on a circle);
// only the combinatorics are meaningful.
inline std::string complex_to_off(const DeltaComplex& c) {
    const size_t nv = c.vertices.size();
    std::string s = "OFF\n";
    s += std::to_string(nv) + " " + std::to_string(c.faces.size()) + " " +
         std::to_string(c.edges.size()) + "\n";
    const double tau = 6.283185307179586;
    for (size_t i = 0; i < nv; ++i) {
        double angle = nv ? tau * static_cast<double>(i) /
                                static_cast<double>(nv)
                          : 0.0;
        char line[96];
        std::snprintf(line, sizeof line, "%.6f %.6f %.6f\n",
                      10.0 * std::cos(angle), 10.0 * std::sin(angle), 0.0);
        s += line;
    }
    for (const auto& f : c.faces) {
        s += "3";
        for (const auto& r : f.chain)
            s += " " + std::to_string(c.ref_tail(r));
        s += "\n";
    }
    return s;
}

// DOT export of the face adjacency graph. Faces become nodes; every
// interior edge (two incident face sides) becomes a graph edge labelled
// with the shared edge label. Boundary edges are omitted.
inline std::string complex_to_dot(const DeltaComplex& c) {
    std::string s = "graph face_adjacency {\n";
    for (const auto& f : c.faces) s += "  \"" + f.label + "\";\n";
    for (size_t e = 0; e < c.edges.size(); ++e) {
        std::vector<std::string> sides;
        for (const auto& f : c.faces)
            for (const auto& r : f.chain)
                if (r.edge == static_cast<int>(e)) sides.push_back(f.label);
        if (sides.size() == 2)
            s += "  \"" + sides[0] + "\" -- \"" + sides[1] + "\" [label=\"" +
                 c.edges[e].label + "\"];\n";
    }
    s += "}\n";
    return s;
}

inline ordered_json nerve_to_json(const OrientedNerve& n) {
    ordered_json j = complex_to_json(n.complex);
    ordered_json prov = ordered_json::object();
    for (const auto& [face, element] : n.provenance) prov[face] = element;
    j["provenance"] = std::move(prov);
    ordered_json refs = ordered_json::object();
    for (const auto& [face, ref] : n.face_reference) refs[face] = ref;
    j["reference_orientation"] = std::move(refs);
    if (!n.boundary_reference.empty()) {
        ordered_json bnd = ordered_json::object();
        for (const auto& [name, ref] : n.boundary_reference) bnd[name] = ref;
        j["boundary_reference"] = std::move(bnd);
    }
    return j;
}

inline ordered_json classification_to_json(const Classification& k) {
    ordered_json j;
    j["surface"] = surface_name(k.type);
    j["orientable"] = k.orientable;
    j["euler"] = k.euler;
    j["boundary_circles"] = k.boundary_circles;
    j["connected"] = k.connected;
    return j;
}

inline std::string classification_to_text(const Classification& k) {
    std::string s;
    s += "surface: " + std::string(surface_name(k.type)) + "\n";
    s += "orientable: " + std::string(k.orientable ? "true" : "false") + "\n";
    s += "euler: " + std::to_string(k.euler) + "\n";
    s += "boundary_circles: " + std::to_string(k.boundary_circles) + "\n";
    s += "connected: " + std::string(k.connected ? "true" : "false") + "\n";
    return s;
}

inline ordered_json verdict_to_json(const ArrovianVerdict& v) {
    ordered_json j;
    j["swf"] = v.swf_name;
    auto triple = ordered_json::array();
    for (Alt a : v.triple.ids) triple.push_back(alt_name(a));
    j["triple"] = std::move(triple);
    j["image"]["orders"] =
        std::vector<std::string>(v.image.orders.begin(), v.image.orders.end());
    j["image"]["cycles"] =
        std::vector<std::string>(v.image.cycles.begin(), v.image.cycles.end());
    j["model_kind"] = model_kind_name(v.model_kind);
    j["model"]["vertices"] = v.model.vertices.size();
    j["model"]["edges"] = v.model.edges.size();
    j["model"]["faces"] = v.model.faces.size();
    j["model"]["euler"] = euler_characteristic(v.model);
    j["surface"] = surface_name(v.surface);
    j["orientable"] = v.orientable;
    j["non_dictatorship"] = v.non_dictatorship;
    j["theorem_holds"] = v.theorem_holds;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline ordered_json table_report_to_json(const ModelTableReport& r) {
    ordered_json j;
    auto cells = ordered_json::array();
    for (const auto& cell : r.cells) {
        ordered_json c;
        c["kind"] = model_kind_name(cell.kind);
        c["computed"] = surface_name(cell.computed);
        c["expected"] = surface_name(cell.expected);
        c["match"] = cell.match;
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    j["pass"] = r.pass;
    return j;
}

inline std::string table_report_to_text(const ModelTableReport& r) {
    auto cell_text = [&](CycleRegime regime, Realisation realisation) {
        for (const auto& cell : r.cells)
            if (cell.kind == ModelKind{regime, realisation}) {
                std::string s = surface_name(cell.computed);
                if (!cell.match)
                    s += " (expected " +
                         std::string(surface_name(cell.expected)) + ")";
                return s;
            }
        return std::string("?");
    };
    auto pad = [](std::string s, size_t width) {
        while (s.size() < width) s += ' ';
        return s;
    };
    const size_t left = 15, mid = 34;
    std::string s;
    s += pad("", left) + pad("unrealised", mid) + "realised\n";
    s += pad("valid", left) +
         pad(cell_text(CycleRegime::Valid, Realisation::Unrealised), mid) +
         cell_text(CycleRegime::Valid, Realisation::Realised) + "\n";
    s += pad("contradictory", left) +
         pad(cell_text(CycleRegime::Contradictory, Realisation::Unrealised),
             mid) +
         cell_text(CycleRegime::Contradictory, Realisation::Realised) + "\n";
    s += std::string("result: ") + (r.pass ? "PASS" : "FAIL") + "\n";
    return s;
}

// Rule tables travel as JSON so externally defined rules can be audited:
//   {"alternatives": 3, "individuals": 2, "name": "...",
//    "entries": {"1<2<3|1<2<3": "(0,0,0)", ...}}
// Keys are profiles (ballots joined by '|'), values pairwise codes.
inline ordered_json swf_table_to_json(const SocialWelfareFunction& swf,
                                      AuditOptions opt = {}) {
    SocialWelfareFunction t =
        swf.kind == SwfKind::LookupTable ? swf : materialize(swf, opt);
    ordered_json j;
    j["alternatives"] = t.alts.size();
    j["individuals"] = t.individuals;
    j["name"] = t.name;
    ordered_json entries = ordered_json::object();
    for (const auto& [key, code] : t.table) entries[key] = to_string(code);
    j["entries"] = std::move(entries);
    return j;
}

inline SocialWelfareFunction swf_table_from_json(const ordered_json& j,
                                                 AuditOptions opt = {}) {
    try {
        const int nalts = j.at("alternatives").get<int>();
        const int individuals = j.at("individuals").get<int>();
        if (nalts < 1) fail(errc::construction, "alternatives must be >= 1");
        AlternativeSet alts = AlternativeSet::universe(nalts);
        std::map<std::string, TernaryCode> table;
        for (const auto& [key, value] : j.at("entries").items())
            table.emplace(key, parse_code(value.get<std::string>(), alts));
        std::string name = j.value("name", std::string("lookup-table"));
        return lookup_table(alts, individuals, std::move(table), name, opt);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::construction,
             std::string("malformed rule table JSON: ") + e.what());
    }
}

}  // namespace preftop
