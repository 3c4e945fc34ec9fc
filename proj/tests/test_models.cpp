#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "preftop/models.hpp"

using namespace preftop;

namespace {

errc kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return errc::domain;
}

const AlternativeSet A3 = AlternativeSet::universe(3);

std::vector<std::string> order_names() {
    std::vector<std::string> out;
    for (const auto& o : enumerate_strict_orders(A3)) out.push_back(to_string(o));
    return out;
}

}  // namespace

TEST_CASE("the four-model grid classifies as expected", "[models]") {
    auto report = model_table_report();
    REQUIRE(report.cells.size() == 4);
    CHECK(report.pass);
    std::map<std::string, SurfaceType> got;
    for (const auto& cell : report.cells) {
        CHECK(cell.match);
        got[model_kind_name(cell.kind)] = cell.computed;
    }
    CHECK(got.at("valid-unrealised") == SurfaceType::Annulus);
    CHECK(got.at("valid-realised") == SurfaceType::Sphere);
    CHECK(got.at("contradictory-unrealised") == SurfaceType::KleinBottle);
    CHECK(got.at("contradictory-realised") == SurfaceType::ProjectivePlane);

    CHECK(model_kind_from_name("contradictory-realised") ==
          kContradictoryRealised);
    CHECK(kind_of([] { model_kind_from_name("bogus"); }) == errc::domain);
}

TEST_CASE("contradictory quotients have the frozen cell counts", "[models]") {
    auto klein = build_model(kContradictoryUnrealised);
    CHECK(klein.complex.vertices.size() == 3);
    CHECK(klein.complex.edges.size() == 9);
    CHECK(klein.complex.faces.size() == 6);
    CHECK(euler_characteristic(klein.complex) == 0);
    CHECK(boundary_components(klein.complex).empty());
    CHECK_FALSE(orient(klein.complex).orientable);

    auto rp = build_model(kContradictoryRealised);
    CHECK(rp.complex.vertices.size() == 3);
    CHECK(rp.complex.edges.size() == 6);
    CHECK(rp.complex.faces.size() == 4);
    CHECK(euler_characteristic(rp.complex) == 1);
    CHECK(boundary_components(rp.complex).empty());
    CHECK_FALSE(orient(rp.complex).orientable);

    // reversal pairs share a face; the face keeps the smaller name
    CHECK(rp.face_of.at("1<2<3") == rp.face_of.at("3<2<1"));
    CHECK(rp.face_of.at("1<2<3<1") == rp.face_of.at("1<3<2<1"));
    CHECK(rp.face_of.at("1<2<3") == "1<2<3");

    // orientability tracks the regime across the grid
    CHECK(orient(build_model(kValidUnrealised).complex).orientable);
    CHECK(orient(build_model(kValidRealised).complex).orientable);
}

TEST_CASE("identifying only the two cycle faces is not a surface",
          "[models]") {
    auto n = nerve(cover_V(A3));
    GluingSpec g;
    FacePair fp;
    fp.face_a = "1<2<3<1";
    fp.face_b = "1<3<2<1";
    fp.a_vertices = n.face_reference.at("1<2<3<1");
    fp.b_vertices = n.face_reference.at("1<3<2<1");
    g.faces.push_back(fp);
    auto q = quotient(n.complex, g);
    CHECK(q.complex.faces.size() == 7);
    CHECK(euler_characteristic(q.complex) == 1);
    auto rep = is_surface(q.complex);
    CHECK_FALSE(rep.ok);
    CHECK(kind_of([&] { classify(q.complex); }) == errc::precondition);
}

TEST_CASE("double cover of the reversal quotient is the sphere", "[models]") {
    auto rp = build_model(kContradictoryRealised);
    auto cover = orientation_double_cover(rp.complex);
    CHECK(component_count(cover.complex) == 1);
    CHECK(euler_characteristic(cover.complex) == 2);
    CHECK(classify(cover.complex).type == SurfaceType::Sphere);
}

TEST_CASE("punctured variants reproduce the named surfaces", "[models]") {
    // any single state punctures the projective plane to a Mobius strip
    for (const auto& name : order_names()) {
        auto m = punctured_variant(kContradictoryRealised, {name});
        CHECK(classify(m.complex).type == SurfaceType::MobiusStrip);
    }
    // both cycles off the sphere leave an annulus
    auto ann = punctured_variant(kValidRealised, {"1<2<3<1", "1<3<2<1"});
    CHECK(classify(ann.complex).type == SurfaceType::Annulus);
    // one cycle off the sphere leaves a disk
    for (const auto& cyc : {"1<2<3<1", "1<3<2<1"}) {
        auto disk = punctured_variant(kValidRealised, {cyc});
        CHECK(classify(disk.complex).type == SurfaceType::Disk);
    }
    // a reversal pair shares its face, so removing both punctures once
    auto both = punctured_variant(kContradictoryRealised, {"1<2<3", "3<2<1"});
    CHECK(classify(both.complex).type == SurfaceType::MobiusStrip);

    CHECK(kind_of([] {
              punctured_variant(kContradictoryRealised, {"1<2<3<1"});
          }) == errc::semantic);
    CHECK(kind_of([] {
              punctured_variant(kContradictoryUnrealised, {"1<2<3<1"});
          }) == errc::semantic);
    CHECK(kind_of([] {
              punctured_variant(kValidUnrealised, {"1<2<3<1"});
          }) == errc::domain);
    CHECK(kind_of([] {
              punctured_variant(kValidUnrealised, {"nonsense"});
          }) == errc::domain);
}

TEST_CASE("puncturing strict-order faces never flips orientability",
          "[models]") {
    auto names = order_names();
    for (ModelKind kind : {kValidUnrealised, kValidRealised,
                           kContradictoryUnrealised, kContradictoryRealised}) {
        auto base = build_model(kind);
        bool base_orientable = orient(base.complex).orientable;
        int base_euler = euler_characteristic(base.complex);
        for (unsigned mask = 0; mask < 64; ++mask) {
            std::vector<std::string> removals;
            std::set<std::string> faces;
            for (size_t b = 0; b < 6; ++b)
                if (mask & (1u << b)) {
                    removals.push_back(names[b]);
                    faces.insert(base.face_of.at(names[b]));
                }
            auto m = punctured_variant(kind, removals);
            CHECK(is_surface(m.complex).ok);
            CHECK(orient(m.complex).orientable == base_orientable);
            CHECK(euler_characteristic(m.complex) ==
                  base_euler - static_cast<int>(faces.size()));

            auto cover = orientation_double_cover(m.complex);
            CHECK(euler_characteristic(cover.complex) ==
                  2 * euler_characteristic(m.complex));
            CHECK((component_count(cover.complex) == 2) == base_orientable);
        }
    }
}

TEST_CASE("model selection from restricted images", "[models]") {
    auto img_dict = image_on_triple(dictator(A3, 2, 0), A3);
    auto chosen = arrovian_model(img_dict);
    CHECK(chosen.model.kind == kValidUnrealised);
    CHECK(classify(chosen.model.complex).type == SurfaceType::Annulus);
    CHECK(chosen.note.empty());

    auto img_maj = image_on_triple(pairwise_majority(A3, 3), A3);
    auto chosen2 = arrovian_model(img_maj);
    CHECK(chosen2.model.kind == kContradictoryRealised);
    CHECK(classify(chosen2.model.complex).type == SurfaceType::ProjectivePlane);

    TripleImage broken = img_dict;
    broken.orders.erase("1<2<3");
    CHECK(kind_of([&] { arrovian_model(broken); }) == errc::lemma);

    TripleImage lone = img_dict;
    lone.cycles.insert("1<2<3<1");
    auto chosen3 = arrovian_model(lone);
    CHECK(chosen3.model.kind == kContradictoryRealised);
    CHECK_FALSE(chosen3.note.empty());
}

TEST_CASE("the orientability verdict matches the dictator search",
          "[models]") {
    auto maj = arrow_check(pairwise_majority(A3, 3));
    CHECK(maj.non_dictatorship);
    CHECK(maj.surface == SurfaceType::ProjectivePlane);
    CHECK_FALSE(maj.orientable);
    CHECK(maj.theorem_holds);

    auto king = arrow_check(dictator(A3, 2, 0));
    CHECK_FALSE(king.non_dictatorship);
    CHECK(king.surface == SurfaceType::Annulus);
    CHECK(king.orientable);
    CHECK(king.theorem_holds);

    CHECK(kind_of([&] { arrow_check(borda_table(A3, 2)); }) ==
          errc::precondition);
    CHECK(kind_of([&] {
              arrow_check(
                  constant_table(A3, 2, encode(parse_weak_order("1<2<3", A3))));
          }) == errc::precondition);

    for (unsigned seed : {7u, 99u}) {
        auto verdict = arrow_check(random_pairwise_table(A3, 2, seed));
        CHECK(verdict.theorem_holds);
    }
}
