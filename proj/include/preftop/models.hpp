#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "preftop/delta_complex.hpp"
#include "preftop/error.hpp"
#include "preftop/nerve.hpp"
#include "preftop/preferences.hpp"
#include "preftop/social_choice.hpp"

namespace preftop {

enum class CycleRegime { Valid, Contradictory };
enum class Realisation { Unrealised, Realised };

struct ModelKind {
    CycleRegime regime = CycleRegime::Valid;
    Realisation realisation = Realisation::Unrealised;
    bool operator==(const ModelKind&) const = default;
};

inline constexpr ModelKind kValidUnrealised{CycleRegime::Valid,
                                            Realisation::Unrealised};
inline constexpr ModelKind kValidRealised{CycleRegime::Valid,
                                          Realisation::Realised};
inline constexpr ModelKind kContradictoryUnrealised{CycleRegime::Contradictory,
                                                    Realisation::Unrealised};
inline constexpr ModelKind kContradictoryRealised{CycleRegime::Contradictory,
                                                  Realisation::Realised};

inline std::string model_kind_name(ModelKind k) {
    std::string s = k.regime == CycleRegime::Valid ? "valid" : "contradictory";
    s += k.realisation == Realisation::Unrealised ? "-unrealised" : "-realised";
    return s;
}

inline ModelKind model_kind_from_name(const std::string& name) {
    for (ModelKind k : {kValidUnrealised, kValidRealised,
                        kContradictoryUnrealised, kContradictoryRealised})
        if (model_kind_name(k) == name) return k;
    fail(errc::domain,
         "unknown model kind \"" + name +
             "\"; expected valid-unrealised, valid-realised, "
             "contradictory-unrealised or contradictory-realised");
}

// A surface model of a preference regime, with enough provenance to
// puncture by preference state: face_of maps each strict order or cycle
// to the face that carries it (several states share one face after a
// contradictory identification).
struct Model {
    ModelKind kind;
    AlternativeSet alts;
    DeltaComplex complex;
    std::map<std::string, std::string> face_of;
};

namespace detail {

inline std::array<std::string, 3> rotate_min_first(
    std::array<std::string, 3> t) {
    size_t best = 0;
    for (size_t i = 1; i < 3; ++i)
        if (t[i] < t[best]) best = i;
    std::rotate(t.begin(), t.begin() + static_cast<long>(best), t.end());
    return t;
}

inline std::string edge_label_between(const std::string& u,
                                      const std::string& v) {
    return std::min(u, v) + "-" + std::max(u, v);
}

// Pairs the two reference-oriented circuits position by position, lex-least
// vertex first, walking both in their reference directions.
inline GluingSpec circuit_gluing(const std::array<std::string, 3>& ref_a,
                                 const std::array<std::string, 3>& ref_b) {
    auto a = rotate_min_first(ref_a), b = rotate_min_first(ref_b);
    GluingSpec g;
    for (size_t k = 0; k < 3; ++k) {
        const std::string &fa = a[k], &ta = a[(k + 1) % 3];
        const std::string &fb = b[k], &tb = b[(k + 1) % 3];
        bool a_runs_forward = fa < ta;  // stored tail is the lex-least endpoint
        bool b_runs_forward = fb < tb;
        g.edges.push_back({edge_label_between(fa, ta), edge_label_between(fb, tb),
                           a_runs_forward == b_runs_forward});
    }
    return g;
}

// Preference reversal as a map on cover elements: flip every pair entry.
inline std::map<std::string, std::string> reversal_partners(const Cover& cov) {
    std::map<std::string, std::string> partner;
    for (const auto& el : cov.ground) {
        std::vector<Rel> flipped;
        for (Rel r : el.code.entries) flipped.push_back(flip(r));
        TernaryCode rc = TernaryCode::make(cov.alts, flipped);
        for (const auto& other : cov.ground)
            if (other.code == rc) partner[el.name] = other.name;
    }
    return partner;
}

}  // namespace detail

// Assembles one cell of the four-model grid:
//   valid-unrealised: nerve of the strict-order cover (annulus);
//   valid-realised: nerve of the cover extended by both cycles (sphere);
//   contradictory-unrealised: the annulus with its two reference-oriented
//     boundary circuits identified position-wise (Klein bottle);
//   contradictory-realised: the sphere quotiented by preference reversal,
//     the free involution pairing every state with its opposite (projective
//     plane).
inline Model build_model(ModelKind kind,
                         const AlternativeSet& alts = AlternativeSet::universe(3)) {
    bool realised = kind.realisation == Realisation::Realised;
    Cover cov = realised ? cover_V(alts) : cover_U(alts);
    OrientedNerve n = nerve(cov);

    Model m;
    m.kind = kind;
    m.alts = alts;
    for (const auto& [face, src] : n.provenance) m.face_of[src] = face;

    if (kind.regime == CycleRegime::Valid) {
        m.complex = n.complex;
        return m;
    }

    GluingSpec g;
    if (!realised) {
        if (n.boundary_reference.size() != 2)
            fail(errc::construction,
                 "expected two reference-oriented boundary circuits, found " +
                     std::to_string(n.boundary_reference.size()));
        auto it = n.boundary_reference.begin();
        const auto& ref_a = it->second;
        const auto& ref_b = std::next(it)->second;
        g = detail::circuit_gluing(ref_a, ref_b);
    } else {
        auto partner = detail::reversal_partners(cov);
        for (const auto& [name, ref] : n.face_reference) {
            const std::string& twin = partner.at(name);
            if (!(name < twin)) continue;
            FacePair fp;
            fp.face_a = name;
            fp.face_b = twin;
            fp.a_vertices = ref;
            for (size_t i = 0; i < 3; ++i) {
                auto [x, y] = n.vertex_pair.at(ref[i]);
                fp.b_vertices[i] = pair_label(y, x);
            }
            g.faces.push_back(fp);
        }
    }

    QuotientResult q = quotient(n.complex, g);
    m.complex = q.complex;
    for (auto& [src, face] : m.face_of) face = q.map.face.at(face);
    return m;
}

// Punctures the model at the faces carrying the given preference states.
// States sharing a face (reversal pairs in the contradictory-realised
// model) puncture it once. Removing a cycle from a contradictory model is
// refused: there the cycle is not a separate region, so its removal is a
// change of regime, not a puncture.
inline Model punctured_variant(ModelKind kind,
                               const std::vector<std::string>& removals,
                               const AlternativeSet& alts =
                                   AlternativeSet::universe(3)) {
    Model m = build_model(kind, alts);
    std::set<std::string> cycle_names;
    for (const auto& y : valid_cycles(alts)) cycle_names.insert(to_string(y));

    std::set<std::string> targets;
    for (const auto& r : removals) {
        if (cycle_names.count(r) && kind.regime == CycleRegime::Contradictory)
            fail(errc::semantic,
                 "removing the cycle " + r +
                     " from a contradictory model does not puncture it; the "
                     "cycle-free regime is the valid-unrealised model");
        auto it = m.face_of.find(r);
        if (it != m.face_of.end()) {
            targets.insert(it->second);
            continue;
        }
        if (cycle_names.count(r))
            fail(errc::domain,
                 "cycle " + r + " is not realised as a face of this model");
        fail(errc::domain, "no preference state \"" + r + "\" in this model");
    }

    for (const auto& f : targets) {
        m.complex = puncture(m.complex, f);
        for (auto it = m.face_of.begin(); it != m.face_of.end();)
            it = it->second == f ? m.face_of.erase(it) : std::next(it);
    }
    return m;
}

// Model selection for a restricted image: strict orders only means the
// cycle-free annulus; any cycle content means the contradictory-realised
// identification.
struct ArrovianModelResult {
    Model model;
    std::string note;
};

inline ArrovianModelResult arrovian_model(const TripleImage& image) {
    std::set<std::string> expected;
    for (const auto& o : enumerate_strict_orders(image.triple))
        expected.insert(to_string(o));
    if (image.orders != expected) {
        std::string got;
        for (const auto& o : image.orders) got += (got.empty() ? "" : ", ") + o;
        fail(errc::lemma,
             "restricted image must contain every strict order on the "
             "triple; got {" + got + "}");
    }
    ArrovianModelResult out;
    ModelKind kind =
        image.cycles.empty() ? kValidUnrealised : kContradictoryRealised;
    if (image.cycles.size() == 1)
        out.note = "image contains exactly one cycle (" +
                   *image.cycles.begin() + "); treated as cycle-bearing";
    out.model = build_model(kind, image.triple);
    return out;
}

struct ArrovianVerdict {
    std::string swf_name;
    AlternativeSet triple;
    TripleImage image;
    ModelKind model_kind;
    DeltaComplex model;
    SurfaceType surface = SurfaceType::Other;
    bool orientable = true;
    bool non_dictatorship = false;
    bool theorem_holds = false;
    std::string note;
};

// The full pipeline: audit fairness, restrict to the triple, pick the
// model, classify, and compare orientability against the dictator search.
// theorem_holds is computed from both sides, never assumed.
inline ArrovianVerdict arrow_check(const SocialWelfareFunction& swf,
                                   const AlternativeSet& triple,
                                   AuditOptions opt = {}) {
    auto uni = check_unanimity(swf, opt);
    if (!uni.pass) {
        const auto& v = *uni.violation;
        fail(errc::precondition,
             "unanimity audit failed: on profile " + to_string(v.profile) +
                 " everyone puts " + alt_name(v.first) + " above " +
                 alt_name(v.second) + " but the aggregate does not");
    }
    auto iia = check_iia(swf, opt);
    if (!iia.pass) {
        const auto& v = *iia.violation;
        fail(errc::precondition,
             "pairwise-locality audit failed: profiles " + to_string(v.left) +
                 " and " + to_string(v.right) + " agree on {" +
                 alt_name(v.first) + "," + alt_name(v.second) +
                 "} but aggregate differently there");
    }

    ArrovianVerdict verdict;
    verdict.swf_name = swf.name;
    verdict.triple = triple;
    verdict.image = image_on_triple(swf, triple, opt);
    auto chosen = arrovian_model(verdict.image);
    verdict.model_kind = chosen.model.kind;
    verdict.model = chosen.model.complex;
    verdict.note = chosen.note;
    Classification cls = classify(verdict.model);
    verdict.surface = cls.type;
    verdict.orientable = cls.orientable;
    verdict.non_dictatorship = !find_dictator(swf, opt).dictator.has_value();
    verdict.theorem_holds = (verdict.non_dictatorship == !verdict.orientable);
    return verdict;
}

inline ArrovianVerdict arrow_check(const SocialWelfareFunction& swf,
                                   AuditOptions opt = {}) {
    if (swf.alts.size() < 3)
        fail(errc::domain, "the orientability check needs at least 3 "
                           "alternatives");
    AlternativeSet triple = AlternativeSet::of(
        {swf.alts.ids[0], swf.alts.ids[1], swf.alts.ids[2]});
    return arrow_check(swf, triple, opt);
}

// The four-cell grid, each cell rebuilt from scratch and compared with the
// expected classification.
struct ModelTableCell {
    ModelKind kind;
    SurfaceType computed = SurfaceType::Other;
    SurfaceType expected = SurfaceType::Other;
    bool match = false;
};

struct ModelTableReport {
    std::vector<ModelTableCell> cells;
    bool pass = true;
};

inline ModelTableReport model_table_report(
    const AlternativeSet& alts = AlternativeSet::universe(3)) {
    const std::pair<ModelKind, SurfaceType> expectations[] = {
        {kValidUnrealised, SurfaceType::Annulus},
        {kValidRealised, SurfaceType::Sphere},
        {kContradictoryUnrealised, SurfaceType::KleinBottle},
        {kContradictoryRealised, SurfaceType::ProjectivePlane},
    };
    ModelTableReport report;
    for (const auto& [kind, expected] : expectations) {
        ModelTableCell cell;
        cell.kind = kind;
        cell.expected = expected;
        cell.computed = classify(build_model(kind, alts).complex).type;
        cell.match = cell.computed == cell.expected;
        report.pass = report.pass && cell.match;
        report.cells.push_back(cell);
    }
    return report;
}

}  // namespace preftop
