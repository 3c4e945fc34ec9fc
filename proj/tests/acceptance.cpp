// End-to-end acceptance run. Each numbered criterion recomputes its claim
// from scratch and prints exactly one PASS/FAIL line; the process exits
// non-zero if any criterion fails.

#include <array>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "preftop/cli.hpp"

using namespace preftop;

namespace {

void check(bool condition, const std::string& what) {
    if (!condition) throw std::runtime_error(what);
}

const std::array<const char*, 6> kOrderNames = {
    "1<2<3", "1<3<2", "2<1<3", "2<3<1", "3<1<2", "3<2<1"};

std::vector<std::string> mask_subset(unsigned mask) {
    std::vector<std::string> subset;
    for (size_t i = 0; i < kOrderNames.size(); ++i)
        if (mask & (1u << i)) subset.push_back(kOrderNames[i]);
    return subset;
}

void criterion_1() {
    ModelTableReport report = model_table_report();
    check(report.cells.size() == 4, "expected four grid cells");
    for (const auto& cell : report.cells)
        check(cell.match, std::string(model_kind_name(cell.kind)) +
                              " computed " + surface_name(cell.computed) +
                              ", expected " + surface_name(cell.expected));
    check(report.pass, "grid report did not pass");
    std::ostringstream out, err;
    check(cli::run({"table1"}, out, err) == 0, "table1 verb exited non-zero");
    check(out.str().find("result: PASS") != std::string::npos,
          "table1 verb did not report PASS");
}

void criterion_2() {
    AlternativeSet a3 = AlternativeSet::universe(3);
    OrientedNerve u = nerve(cover_U(a3));
    check(u.complex.vertices.size() == 6, "order nerve vertex count");
    check(u.complex.edges.size() == 12, "order nerve edge count");
    check(u.complex.faces.size() == 6, "order nerve face count");
    check(euler_characteristic(u.complex) == 0, "order nerve euler");
    auto circuits = boundary_components(u.complex);
    check(circuits.size() == 2, "order nerve boundary count");
    check(circuits[0] == std::vector<std::string>{"12", "23", "31"},
          "first boundary circuit");
    check(circuits[1] == std::vector<std::string>{"13", "21", "32"},
          "second boundary circuit");
    check(u.boundary_reference.at("1<2<3<1") ==
              std::array<std::string, 3>{"12", "23", "31"},
          "oriented circuit of the forward cycle");
    check(u.boundary_reference.at("1<3<2<1") ==
              std::array<std::string, 3>{"13", "32", "21"},
          "oriented circuit of the reverse cycle");
    OrientedNerve v = nerve(cover_V(a3));
    check(v.complex.faces.size() == 8, "extended nerve face count");
    check(euler_characteristic(v.complex) == 2, "extended nerve euler");
    check(boundary_components(v.complex).empty(),
          "extended nerve must be closed");
}

void criterion_3() {
    AlternativeSet a3 = AlternativeSet::universe(3);
    SocialWelfareFunction majority = pairwise_majority(a3, 3);
    auto run = [&](const std::string& text, const std::string& expected) {
        Profile p = parse_profile(text, a3);
        Decoded d = decode(aggregate(majority, p));
        check(std::holds_alternative<PreferenceCycle>(d),
              text + " did not aggregate to a cycle");
        const auto& cycle = std::get<PreferenceCycle>(d);
        check(cycle.is_strict(), text + " cycle is not strict");
        check(to_string(cycle) == expected,
              text + " aggregated to " + to_string(cycle) + ", expected " +
                  expected);
    };
    run("1<2<3|2<3<1|3<1<2", "1<2<3<1");
    run("3<2<1|1<3<2|2<1<3", "1<3<2<1");
}

void criterion_4() {
    AlternativeSet a3 = AlternativeSet::universe(3);
    ArrovianVerdict majority = arrow_check(pairwise_majority(a3, 3));
    check(majority.non_dictatorship, "majority should have no dictator");
    check(majority.surface == SurfaceType::ProjectivePlane,
          "majority model should be ProjectivePlane");
    check(!majority.orientable, "majority model should be non-orientable");
    check(majority.theorem_holds, "majority equivalence failed");
    for (int i : {0, 1}) {
        ArrovianVerdict d = arrow_check(dictator(a3, 2, i));
        check(!d.non_dictatorship, "dictator rule should have a dictator");
        check(d.surface == SurfaceType::Annulus,
              "dictator model should be Annulus");
        check(d.orientable, "dictator model should be orientable");
        check(d.theorem_holds, "dictator equivalence failed");
    }
}

void criterion_5() {
    AlternativeSet a3 = AlternativeSet::universe(3);
    std::vector<DeltaComplex> pool;
    for (ModelKind kind : {kValidUnrealised, kValidRealised,
                           kContradictoryUnrealised, kContradictoryRealised})
        pool.push_back(build_model(kind).complex);
    pool.push_back(nerve(cover_U(a3)).complex);
    pool.push_back(nerve(cover_V(a3)).complex);
    pool.push_back(arrow_check(pairwise_majority(a3, 3)).model);
    pool.push_back(arrow_check(dictator(a3, 2, 0)).model);
    for (ModelKind kind : {kValidUnrealised, kValidRealised,
                           kContradictoryUnrealised, kContradictoryRealised})
        for (unsigned mask = 1; mask < 64; ++mask)
            pool.push_back(punctured_variant(kind, mask_subset(mask)).complex);
    for (const auto& c : pool) {
        bool orientable = orient(c).orientable;
        DoubleCover cover = orientation_double_cover(c);
        int components = component_count(cover.complex);
        check(components == (orientable ? 2 : 1),
              "cover connectedness disagrees with orientation verdict");
        check(euler_characteristic(cover.complex) ==
                  2 * euler_characteristic(c),
              "cover euler characteristic is not doubled");
        check(orient(cover.complex).orientable,
              "double cover must be orientable");
    }
    DeltaComplex cr = build_model(kContradictoryRealised).complex;
    Classification cover_class =
        classify(orientation_double_cover(cr).complex);
    check(cover_class.type == SurfaceType::Sphere,
          "cover of the contradictory-realised model should be a Sphere");
    check(cover_class.euler == 2,
          "cover of the contradictory-realised model should have euler 2");
}

void criterion_6() {
    for (const char* order : kOrderNames) {
        Model m = punctured_variant(kContradictoryRealised, {order});
        check(classify(m.complex).type == SurfaceType::MobiusStrip,
              std::string("removing ") + order + " should leave MobiusStrip");
    }
    Model annulus =
        punctured_variant(kValidRealised, {"1<2<3<1", "1<3<2<1"});
    check(classify(annulus.complex).type == SurfaceType::Annulus,
          "removing both cycles should leave an Annulus");
    for (const char* cycle : {"1<2<3<1", "1<3<2<1"}) {
        Model disk = punctured_variant(kValidRealised, {cycle});
        check(classify(disk.complex).type == SurfaceType::Disk,
              std::string("removing ") + cycle + " should leave a Disk");
    }
    for (ModelKind kind : {kValidUnrealised, kValidRealised,
                           kContradictoryUnrealised, kContradictoryRealised}) {
        bool base = orient(build_model(kind).complex).orientable;
        for (unsigned mask = 1; mask < 64; ++mask) {
            Model m = punctured_variant(kind, mask_subset(mask));
            check(orient(m.complex).orientable == base,
                  std::string(model_kind_name(kind)) +
                      ": puncturing changed the orientability verdict");
        }
    }
}

void criterion_7() {
    AlternativeSet a3 = AlternativeSet::universe(3);
    std::vector<SocialWelfareFunction> fleet;
    fleet.push_back(pairwise_majority(a3, 2));
    fleet.push_back(pairwise_majority(a3, 3));
    fleet.push_back(dictator(a3, 2, 0));
    fleet.push_back(dictator(a3, 2, 1));
    fleet.push_back(dictator(a3, 3, 1));
    fleet.push_back(random_pairwise_table(a3, 2, 7));
    fleet.push_back(random_pairwise_table(a3, 2, 99));
    std::set<std::string> all_orders;
    for (const auto& o : enumerate_strict_orders(a3))
        all_orders.insert(to_string(o));
    for (const auto& swf : fleet) {
        check(check_unanimity(swf).pass, swf.name + " fails unanimity");
        check(check_iia(swf).pass, swf.name + " fails pairwise locality");
        TripleImage image = image_on_triple(swf, a3);
        check(image.orders == all_orders,
              swf.name + ": image must contain every strict order");
        DictatorReport report = find_dictator(swf);
        check(report.dictator.has_value() == image.cycles.empty(),
              swf.name + ": dictator presence must match a cycle-free image");
        TripleRestriction restriction = restrict_to_triple(swf, a3);
        check(restriction.commutation_checked && restriction.commutes,
              swf.name + ": restriction does not commute with decoding");
    }
}

void criterion_8() {
    AlternativeSet a3 = AlternativeSet::universe(3);
    auto weak = enumerate_weak_orders(a3);
    check(weak.size() == 13, "expected 13 weak orders");
    check(enumerate_strict_orders(a3).size() == 6, "expected 6 strict orders");
    const std::array<Rel, 3> rels = {Rel::fst, Rel::snd, Rel::tie};
    int decoded_weak = 0;
    for (Rel r0 : rels)
        for (Rel r1 : rels)
            for (Rel r2 : rels) {
                TernaryCode code = TernaryCode::make(a3, {r0, r1, r2});
                Decoded d = decode(code);
                if (!std::holds_alternative<WeakOrder>(d)) continue;
                ++decoded_weak;
                check(encode(std::get<WeakOrder>(d)) == code,
                      "decode/encode round trip broke at " + to_string(code));
            }
    check(decoded_weak == 13, "filtering 27 codes should leave 13 orders");
    for (const auto& w : weak) {
        Decoded d = decode(encode(w));
        check(std::holds_alternative<WeakOrder>(d),
              to_string(w) + " did not decode to an order");
        check(std::get<WeakOrder>(d).tiers == w.tiers,
              to_string(w) + " did not round trip");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> plan = {
        {"surface grid is Annulus / Sphere / KleinBottle / ProjectivePlane",
         criterion_1},
        {"nerve counts, euler characteristics, and boundary circuits",
         criterion_2},
        {"majority cycles on the classic profile and its reverse",
         criterion_3},
        {"orientability matches non-dictatorship for majority and dictator",
         criterion_4},
        {"double cover agrees with orientation verdicts on the whole pool",
         criterion_5},
        {"punctured models classify as MobiusStrip, Annulus, and Disk",
         criterion_6},
        {"rule fleet satisfies the image, dictator, and commutation lemmas",
         criterion_7},
        {"enumeration matches the 27-code oracle with exact round trips",
         criterion_8},
    };
    int failed = 0;
    for (size_t i = 0; i < plan.size(); ++i) {
        const auto& [summary, body] = plan[i];
        try {
            body();
            std::cout << "PASS criterion " << (i + 1) << ": " << summary
                      << "\n";
        } catch (const std::exception& e) {
            ++failed;
            std::cout << "FAIL criterion " << (i + 1) << ": " << summary
                      << " (" << e.what() << ")\n";
        }
    }
    if (failed) {
        std::cout << failed << " of " << plan.size()
                  << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << plan.size() << " criteria satisfied\n";
    return 0;
}
