#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "preftop/cli.hpp"

using namespace preftop;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

size_t line_count(const std::string& text) {
    size_t n = 0;
    for (char ch : text)
        if (ch == '\n') ++n;
    return n;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("table1 verb renders the surface grid", "[cli]") {
    CliResult text = run_cli({"table1"});
    CHECK(text.code == 0);
    for (const char* name :
         {"Annulus", "Sphere", "KleinBottle", "ProjectivePlane"})
        CHECK(text.out.find(name) != std::string::npos);
    CHECK(text.out.find("result: PASS") != std::string::npos);

    CliResult json = run_cli({"table1", "--format", "json"});
    CHECK(json.code == 0);
    ordered_json j = parse_json_text(json.out);
    CHECK(j["pass"] == true);
    CHECK(j["cells"].size() == 4);
}

TEST_CASE("model verb classifies and exports", "[cli]") {
    CliResult named =
        run_cli({"model", "--kind", "contradictory-realised", "--classify"});
    CHECK(named.code == 0);
    CHECK(named.out == "ProjectivePlane\n");

    const std::pair<const char*, const char*> expected[] = {
        {"valid-unrealised", "Annulus"},
        {"valid-realised", "Sphere"},
        {"contradictory-unrealised", "KleinBottle"},
        {"contradictory-realised", "ProjectivePlane"},
    };
    for (const auto& [kind, surface] : expected) {
        CliResult r = run_cli({"model", "--kind", kind, "--classify"});
        CHECK(r.code == 0);
        CHECK(r.out == std::string(surface) + "\n");
    }

    CliResult bogus = run_cli({"model", "--kind", "bogus"});
    CHECK(bogus.code == 2);
    CHECK(bogus.out.empty());
    CHECK_FALSE(bogus.err.empty());

    CliResult text = run_cli({"model", "--kind", "contradictory-realised"});
    CHECK(text.code == 0);
    CHECK(text.out.find("surface: ProjectivePlane") != std::string::npos);
    CHECK(text.out.find("orientable: false") != std::string::npos);

    CliResult json = run_cli(
        {"model", "--kind", "contradictory-realised", "--format", "json"});
    REQUIRE(json.code == 0);
    ordered_json j = parse_json_text(json.out);
    DeltaComplex back = complex_from_json(j);
    CHECK(classify(back).type == SurfaceType::ProjectivePlane);
    REQUIRE(j.contains("face_of"));
    CHECK(j["face_of"]["1<2<3"] == j["face_of"]["3<2<1"]);
}

TEST_CASE("arrow-check verb emits deterministic verdicts", "[cli]") {
    CliResult majority = run_cli(
        {"arrow-check", "--swf", "pairwise-majority", "--individuals", "3"});
    REQUIRE(majority.code == 0);
    ordered_json j = parse_json_text(majority.out);
    CHECK(j["surface"] == "ProjectivePlane");
    CHECK(j["orientable"] == false);
    CHECK(j["non_dictatorship"] == true);
    CHECK(j["theorem_holds"] == true);

    CliResult again = run_cli(
        {"arrow-check", "--swf", "pairwise-majority", "--individuals", "3"});
    CHECK(again.out == majority.out);

    CliResult dict = run_cli(
        {"arrow-check", "--swf", "dictator:0", "--individuals", "2"});
    REQUIRE(dict.code == 0);
    ordered_json d = parse_json_text(dict.out);
    CHECK(d["surface"] == "Annulus");
    CHECK(d["orientable"] == true);
    CHECK(d["non_dictatorship"] == false);
    CHECK(d["theorem_holds"] == true);

    CliResult text = run_cli({"arrow-check", "--swf", "dictator:0",
                              "--individuals", "2", "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("theorem_holds: true") != std::string::npos);
    CHECK(text.out.find("surface: Annulus") != std::string::npos);

    CliResult triple =
        run_cli({"arrow-check", "--swf", "pairwise-majority",
                 "--individuals", "2", "--alternatives", "4", "--triple",
                 "2,3,4"});
    REQUIRE(triple.code == 0);
    ordered_json t = parse_json_text(triple.out);
    CHECK(t["triple"] == ordered_json::array({"2", "3", "4"}));
    CHECK(t["surface"] == "ProjectivePlane");

    CliResult bad_spec = run_cli({"arrow-check", "--swf", "bogus"});
    CHECK(bad_spec.code == 2);
}

TEST_CASE("arrow-check verb loads rule tables from files", "[cli]") {
    AlternativeSet a3 = AlternativeSet::universe(3);
    auto path = temp_file("preftop_cli_borda.json");
    write_text_file(path.string(),
                    swf_table_to_json(borda_table(a3, 2)).dump(2) + "\n");
    CliResult borda =
        run_cli({"arrow-check", "--swf", "table:" + path.string()});
    CHECK(borda.code == 1);
    CHECK(borda.err.find("pairwise-locality audit failed") !=
          std::string::npos);

    CliResult borda_json = run_cli({"--json-errors", "arrow-check", "--swf",
                                    "table:" + path.string()});
    CHECK(borda_json.code == 1);
    ordered_json e = parse_json_text(borda_json.err);
    CHECK(e["error"]["kind"] == "precondition");

    auto dict_path = temp_file("preftop_cli_dictator.json");
    write_text_file(
        dict_path.string(),
        swf_table_to_json(dictator(a3, 2, 1)).dump(2) + "\n");
    CliResult dict =
        run_cli({"arrow-check", "--swf", "table:" + dict_path.string()});
    REQUIRE(dict.code == 0);
    ordered_json d = parse_json_text(dict.out);
    CHECK(d["surface"] == "Annulus");
    CHECK(d["non_dictatorship"] == false);

    CliResult missing =
        run_cli({"arrow-check", "--swf", "table:/no/such/file.json"});
    CHECK(missing.code == 1);
    std::filesystem::remove(path);
    std::filesystem::remove(dict_path);
}

TEST_CASE("enumerate verb lists preference states", "[cli]") {
    CliResult weak = run_cli({"enumerate", "weak"});
    CHECK(weak.code == 0);
    CHECK(line_count(weak.out) == 13);

    CliResult strict = run_cli({"enumerate", "strict", "--alternatives", "4"});
    CHECK(strict.code == 0);
    CHECK(line_count(strict.out) == 24);

    CliResult cycles = run_cli({"enumerate", "cycles"});
    CHECK(cycles.code == 0);
    CHECK(cycles.out == "1<2<3<1\n1<3<2<1\n");

    CliResult unsupported =
        run_cli({"enumerate", "cycles", "--alternatives", "4"});
    CHECK(unsupported.code == 1);

    CliResult bogus = run_cli({"enumerate", "bogus"});
    CHECK(bogus.code == 2);
}

TEST_CASE("nerve verb reports counts and boundaries", "[cli]") {
    CliResult u = run_cli({"nerve", "--kind", "u"});
    CHECK(u.code == 0);
    CHECK(u.out.find("surface: Annulus") != std::string::npos);
    CHECK(u.out.find("boundary: (12,23,31) (13,21,32)") != std::string::npos);

    CliResult v = run_cli({"nerve", "--kind", "v"});
    CHECK(v.code == 0);
    CHECK(v.out.find("surface: Sphere") != std::string::npos);
    CHECK(v.out.find("boundary: none") != std::string::npos);

    CliResult json = run_cli({"nerve", "--kind", "u", "--format", "json"});
    REQUIRE(json.code == 0);
    ordered_json j = parse_json_text(json.out);
    CHECK(j["vertices"].size() == 6);
    CHECK(j["edges"].size() == 12);
    CHECK(j["faces"].size() == 6);
    CHECK(j["boundary_reference"].size() == 2);

    CliResult repeat = run_cli({"nerve", "--kind", "u", "--format", "json"});
    CHECK(repeat.out == json.out);
}

TEST_CASE("puncture verb removes faces by preference state", "[cli]") {
    CliResult mobius = run_cli({"puncture", "--kind", "contradictory-realised",
                                "--remove", "1<2<3", "--classify"});
    CHECK(mobius.code == 0);
    CHECK(mobius.out == "MobiusStrip\n");

    CliResult annulus =
        run_cli({"puncture", "--kind", "valid-realised", "--remove",
                 "1<2<3<1,1<3<2<1", "--classify"});
    CHECK(annulus.code == 0);
    CHECK(annulus.out == "Annulus\n");

    CliResult disk = run_cli({"puncture", "--kind", "valid-realised",
                              "--remove", "1<2<3<1", "--classify"});
    CHECK(disk.code == 0);
    CHECK(disk.out == "Disk\n");

    CliResult forbidden =
        run_cli({"puncture", "--kind", "contradictory-realised", "--remove",
                 "1<2<3<1"});
    CHECK(forbidden.code == 1);
    CHECK(forbidden.err.find("error (semantic)") == 0);

    CliResult forbidden_json =
        run_cli({"--json-errors", "puncture", "--kind",
                 "contradictory-realised", "--remove", "1<2<3<1"});
    CHECK(forbidden_json.code == 1);
    CHECK(parse_json_text(forbidden_json.err)["error"]["kind"] == "semantic");
}

TEST_CASE("classify verb accepts kinds or complex files", "[cli]") {
    CliResult from_kind = run_cli({"classify", "--kind", "valid-realised"});
    CHECK(from_kind.code == 0);
    CHECK(from_kind.out.find("surface: Sphere") != std::string::npos);
    CHECK(from_kind.out.find("boundary_circles: 0") != std::string::npos);

    auto path = temp_file("preftop_cli_complex.json");
    CliResult exported = run_cli({"export", "--kind", "valid-realised",
                                  "--format", "json", "--out", path.string()});
    CHECK(exported.code == 0);
    CHECK(exported.out.empty());

    CliResult from_file =
        run_cli({"classify", path.string(), "--format", "json"});
    REQUIRE(from_file.code == 0);
    ordered_json j = parse_json_text(from_file.out);
    CHECK(j["surface"] == "Sphere");
    CHECK(j["euler"] == 2);
    std::filesystem::remove(path);

    CliResult both =
        run_cli({"classify", path.string(), "--kind", "valid-realised"});
    CHECK(both.code == 2);
    CliResult neither = run_cli({"classify"});
    CHECK(neither.code == 2);
    CliResult missing = run_cli({"classify", "/no/such/complex.json"});
    CHECK(missing.code == 1);
}

TEST_CASE("export verb writes exchange formats", "[cli]") {
    CliResult dot = run_cli(
        {"export", "--kind", "contradictory-unrealised", "--format", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("graph face_adjacency {", 0) == 0);

    CliResult off =
        run_cli({"export", "--kind", "valid-unrealised", "--format", "off"});
    CHECK(off.code == 0);
    CHECK(off.out.rfind("OFF\n", 0) == 0);
    CHECK(off.out.find("6 6 12") != std::string::npos);

    CliResult json =
        run_cli({"export", "--kind", "valid-realised", "--format", "json"});
    REQUIRE(json.code == 0);
    CHECK(parse_json_text(json.out)["faces"].size() == 8);

    CliResult no_format = run_cli({"export", "--kind", "valid-realised"});
    CHECK(no_format.code == 2);

    CliResult no_verb = run_cli({});
    CHECK(no_verb.code == 2);
    CliResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("enumerate") != std::string::npos);

    CliResult usage_json = run_cli({"--json-errors", "model", "--kind",
                                    "bogus"});
    CHECK(usage_json.code == 2);
    CHECK(parse_json_text(usage_json.err)["error"]["kind"] == "usage");
}
