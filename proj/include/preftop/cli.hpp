#pragma once

// Command-line front end. All verb logic lives here so tests can drive it
// in process; tools/preftop/main.cpp only forwards argv.
//
// Exit codes: 0 success, 1 domain or semantic failure, 2 usage error.
// Output for a fixed argument list is byte-identical across runs.

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "preftop/io.hpp"

namespace preftop::cli {

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline AlternativeSet parse_triple(const std::string& text,
                                   const AlternativeSet& alts) {
    std::vector<Alt> ids;
    for (const std::string& name : split(text, ',')) {
        bool found = false;
        for (Alt a : alts.ids)
            if (alt_name(a) == name) {
                ids.push_back(a);
                found = true;
                break;
            }
        if (!found) fail(errc::domain, "unknown alternative name " + name);
    }
    return AlternativeSet::of(ids);
}

inline SocialWelfareFunction make_swf(const std::string& descriptor,
                                      int alternatives, int individuals) {
    AlternativeSet alts = AlternativeSet::universe(alternatives);
    if (descriptor == "pairwise-majority")
        return pairwise_majority(alts, individuals);
    if (descriptor.rfind("dictator:", 0) == 0)
        return dictator(alts, individuals, std::stoi(descriptor.substr(9)));
    return swf_table_from_json(
        parse_json_text(read_text_file(descriptor.substr(6))));
}

inline std::string complex_text(const DeltaComplex& c,
                                const std::string& kind_name) {
    Classification k = classify(c);
    std::string s;
    if (!kind_name.empty()) s += "kind: " + kind_name + "\n";
    s += "vertices: " + std::to_string(c.vertices.size()) + "\n";
    s += "edges: " + std::to_string(c.edges.size()) + "\n";
    s += "faces: " + std::to_string(c.faces.size()) + "\n";
    s += "euler: " + std::to_string(k.euler) + "\n";
    s += "surface: " + std::string(surface_name(k.type)) + "\n";
    s += "orientable: " + std::string(k.orientable ? "true" : "false") + "\n";
    s += "boundary_circles: " + std::to_string(k.boundary_circles) + "\n";
    return s;
}

inline std::string render_complex(const DeltaComplex& c,
                                  const std::map<std::string, std::string>&
                                      face_of,
                                  const std::string& format,
                                  const std::string& kind_name) {
    if (format == "json") {
        ordered_json j = complex_to_json(c);
        if (!face_of.empty()) {
            ordered_json fo = ordered_json::object();
            for (const auto& [state, face] : face_of) fo[state] = face;
            j["face_of"] = std::move(fo);
        }
        return j.dump(2) + "\n";
    }
    if (format == "off") return complex_to_off(c);
    if (format == "dot") return complex_to_dot(c);
    return complex_text(c, kind_name);
}

inline std::string verdict_text(const ArrovianVerdict& v) {
    std::string s;
    s += "swf: " + v.swf_name + "\n";
    std::string triple;
    for (Alt a : v.triple.ids) {
        if (!triple.empty()) triple += ",";
        triple += alt_name(a);
    }
    s += "triple: " + triple + "\n";
    s += "orders_in_image: " + std::to_string(v.image.orders.size()) + "\n";
    s += "cycles_in_image: " + std::to_string(v.image.cycles.size()) + "\n";
    s += "model_kind: " + std::string(model_kind_name(v.model_kind)) + "\n";
    s += "surface: " + std::string(surface_name(v.surface)) + "\n";
    s += "orientable: " + std::string(v.orientable ? "true" : "false") + "\n";
    s += "non_dictatorship: " +
         std::string(v.non_dictatorship ? "true" : "false") + "\n";
    s += "theorem_holds: " +
         std::string(v.theorem_holds ? "true" : "false") + "\n";
    if (!v.note.empty()) s += "note: " + v.note + "\n";
    return s;
}

inline std::string nerve_text(const OrientedNerve& n,
                              const std::string& kind_name) {
    std::string s = complex_text(n.complex, kind_name);
    auto circuits = boundary_components(n.complex);
    if (circuits.empty()) {
        s += "boundary: none\n";
    } else {
        s += "boundary:";
        for (const auto& circuit : circuits) {
            std::string joined;
            for (const auto& v : circuit) {
                if (!joined.empty()) joined += ",";
                joined += v;
            }
            s += " (" + joined + ")";
        }
        s += "\n";
    }
    return s;
}

inline const std::vector<std::string>& model_kind_names() {
    static const std::vector<std::string> names = {
        "valid-unrealised", "valid-realised", "contradictory-unrealised",
        "contradictory-realised"};
    return names;
}

inline CLI::Validator swf_descriptor_validator() {
    return CLI::Validator(
        [](std::string& value) -> std::string {
            if (value == "pairwise-majority") return {};
            if (value.rfind("dictator:", 0) == 0) {
                std::string idx = value.substr(9);
                bool numeric =
                    !idx.empty() &&
                    std::all_of(idx.begin(), idx.end(), [](unsigned char ch) {
                        return std::isdigit(ch) != 0;
                    });
                if (numeric) return {};
                return std::string(
                    "dictator index must be a non-negative integer");
            }
            if (value.rfind("table:", 0) == 0 && value.size() > 6) return {};
            return std::string(
                "expected pairwise-majority, dictator:<i>, or table:<path>");
        },
        "SWF");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"Preference topology toolkit", "preftop"};
    app.require_subcommand(1);
    // Scanned up front so usage errors thrown mid-parse still honour it.
    bool json_errors =
        std::find(args.begin(), args.end(), "--json-errors") != args.end();
    app.add_flag("--json-errors", json_errors,
                 "report errors as JSON on stderr");

    std::string enum_what;
    int enum_alts = 3;
    auto* enum_cmd =
        app.add_subcommand("enumerate", "list preference states");
    enum_cmd->fallthrough();
    enum_cmd->add_option("what", enum_what, "strict, weak, or cycles")
        ->required()
        ->check(CLI::IsMember({"strict", "weak", "cycles"}));
    enum_cmd->add_option("--alternatives", enum_alts, "ground set size")
        ->check(CLI::Range(1, 6));

    std::string nerve_kind, nerve_format = "text", nerve_out;
    auto* nerve_cmd = app.add_subcommand(
        "nerve", "nerve of a cover of the preference states");
    nerve_cmd->fallthrough();
    nerve_cmd
        ->add_option("--kind", nerve_kind,
                     "u (strict orders) or v (orders plus cycles)")
        ->required()
        ->check(CLI::IsMember({"u", "v"}));
    nerve_cmd->add_option("--format", nerve_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    nerve_cmd->add_option("--out", nerve_out, "write to file");

    std::string model_kind_str, model_format = "text", model_out;
    bool model_classify = false;
    auto* model_cmd =
        app.add_subcommand("model", "assemble one of the four models");
    model_cmd->fallthrough();
    model_cmd->add_option("--kind", model_kind_str, "model kind")
        ->required()
        ->check(CLI::IsMember(detail::model_kind_names()));
    model_cmd->add_flag("--classify", model_classify,
                        "print only the surface type");
    model_cmd->add_option("--format", model_format, "text, json, off, dot")
        ->check(CLI::IsMember({"text", "json", "off", "dot"}));
    model_cmd->add_option("--out", model_out, "write to file");

    std::string classify_path, classify_kind, classify_format = "text",
                               classify_out;
    auto* classify_cmd =
        app.add_subcommand("classify", "surface classification record");
    classify_cmd->fallthrough();
    classify_cmd->add_option("complex", classify_path,
                             "path to a complex JSON file");
    classify_cmd->add_option("--kind", classify_kind, "model kind")
        ->check(CLI::IsMember(detail::model_kind_names()));
    classify_cmd->add_option("--format", classify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    classify_cmd->add_option("--out", classify_out, "write to file");

    std::string punct_kind, punct_remove, punct_format = "text", punct_out;
    bool punct_classify = false;
    auto* punct_cmd = app.add_subcommand(
        "puncture", "remove faces of a model by preference state");
    punct_cmd->fallthrough();
    punct_cmd->add_option("--kind", punct_kind, "model kind")
        ->required()
        ->check(CLI::IsMember(detail::model_kind_names()));
    punct_cmd
        ->add_option("--remove", punct_remove,
                     "comma-separated preference states")
        ->required();
    punct_cmd->add_flag("--classify", punct_classify,
                        "print only the surface type");
    punct_cmd->add_option("--format", punct_format, "text, json, off, dot")
        ->check(CLI::IsMember({"text", "json", "off", "dot"}));
    punct_cmd->add_option("--out", punct_out, "write to file");

    std::string ac_swf, ac_triple, ac_format = "json", ac_out;
    int ac_individuals = 2, ac_alternatives = 3;
    auto* ac_cmd = app.add_subcommand(
        "arrow-check", "audit a rule and classify its model");
    ac_cmd->fallthrough();
    ac_cmd
        ->add_option("--swf", ac_swf,
                     "pairwise-majority, dictator:<i>, or table:<path>")
        ->required()
        ->check(detail::swf_descriptor_validator());
    ac_cmd->add_option("--individuals", ac_individuals, "number of voters")
        ->check(CLI::Range(1, 16));
    ac_cmd->add_option("--alternatives", ac_alternatives, "ground set size")
        ->check(CLI::Range(3, 8));
    ac_cmd->add_option("--triple", ac_triple,
                       "comma-separated alternative names");
    ac_cmd->add_option("--format", ac_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    ac_cmd->add_option("--out", ac_out, "write to file");

    std::string t1_format = "text", t1_out;
    auto* t1_cmd = app.add_subcommand(
        "table1", "surface grid for the four models");
    t1_cmd->fallthrough();
    t1_cmd->add_option("--format", t1_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    t1_cmd->add_option("--out", t1_out, "write to file");

    std::string ex_kind, ex_format, ex_out;
    auto* ex_cmd =
        app.add_subcommand("export", "write a model in an exchange format");
    ex_cmd->fallthrough();
    ex_cmd->add_option("--kind", ex_kind, "model kind")
        ->required()
        ->check(CLI::IsMember(detail::model_kind_names()));
    ex_cmd->add_option("--format", ex_format, "json, off, dot")
        ->required()
        ->check(CLI::IsMember({"json", "off", "dot"}));
    ex_cmd->add_option("--out", ex_out, "write to file");

    std::vector<const char*> argv;
    argv.push_back("preftop");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (json_errors) {
            ordered_json j;
            j["error"]["kind"] = "usage";
            j["error"]["message"] = e.what();
            err << j.dump(2) << "\n";
        } else {
            err << "usage error: " << e.what() << "\n";
        }
        return 2;
    }

    auto report = [&](const std::string& kind, const std::string& message) {
        if (json_errors) {
            ordered_json j;
            j["error"]["kind"] = kind;
            j["error"]["message"] = message;
            err << j.dump(2) << "\n";
        } else {
            err << "error (" << kind << "): " << message << "\n";
        }
    };
    auto emit = [&](const std::string& text, const std::string& path) {
        if (path.empty())
            out << text;
        else
            write_text_file(path, text);
    };

    try {
        if (*enum_cmd) {
            AlternativeSet alts = AlternativeSet::universe(enum_alts);
            std::string text;
            if (enum_what == "strict")
                for (const auto& o : enumerate_strict_orders(alts))
                    text += to_string(o) + "\n";
            else if (enum_what == "weak")
                for (const auto& w : enumerate_weak_orders(alts))
                    text += to_string(w) + "\n";
            else
                for (const auto& y : valid_cycles(alts))
                    text += to_string(y) + "\n";
            out << text;
        } else if (*nerve_cmd) {
            AlternativeSet alts = AlternativeSet::universe(3);
            OrientedNerve n =
                nerve(nerve_kind == "u" ? cover_U(alts) : cover_V(alts));
            emit(nerve_format == "json" ? nerve_to_json(n).dump(2) + "\n"
                                        : detail::nerve_text(n, nerve_kind),
                 nerve_out);
        } else if (*model_cmd) {
            Model m = build_model(model_kind_from_name(model_kind_str));
            if (model_classify)
                emit(std::string(surface_name(classify(m.complex).type)) +
                         "\n",
                     model_out);
            else
                emit(detail::render_complex(m.complex, m.face_of,
                                            model_format, model_kind_str),
                     model_out);
        } else if (*classify_cmd) {
            if (classify_path.empty() == classify_kind.empty()) {
                report("usage",
                       "pass either a complex JSON path or --kind, not both");
                return 2;
            }
            DeltaComplex c =
                classify_path.empty()
                    ? build_model(model_kind_from_name(classify_kind)).complex
                    : complex_from_json(
                          parse_json_text(read_text_file(classify_path)));
            Classification k = classify(c);
            emit(classify_format == "json"
                     ? classification_to_json(k).dump(2) + "\n"
                     : classification_to_text(k),
                 classify_out);
        } else if (*punct_cmd) {
            Model m = punctured_variant(model_kind_from_name(punct_kind),
                                        detail::split(punct_remove, ','));
            if (punct_classify)
                emit(std::string(surface_name(classify(m.complex).type)) +
                         "\n",
                     punct_out);
            else
                emit(detail::render_complex(m.complex, m.face_of,
                                            punct_format, punct_kind),
                     punct_out);
        } else if (*ac_cmd) {
            SocialWelfareFunction swf =
                detail::make_swf(ac_swf, ac_alternatives, ac_individuals);
            ArrovianVerdict v =
                ac_triple.empty()
                    ? arrow_check(swf)
                    : arrow_check(swf,
                                  detail::parse_triple(ac_triple, swf.alts));
            emit(ac_format == "text" ? detail::verdict_text(v)
                                     : verdict_to_json(v).dump(2) + "\n",
                 ac_out);
        } else if (*t1_cmd) {
            ModelTableReport r = model_table_report();
            emit(t1_format == "json" ? table_report_to_json(r).dump(2) + "\n"
                                     : table_report_to_text(r),
                 t1_out);
            if (!r.pass) return 1;
        } else if (*ex_cmd) {
            Model m = build_model(model_kind_from_name(ex_kind));
            emit(detail::render_complex(m.complex, m.face_of, ex_format, ""),
                 ex_out);
        }
        return 0;
    } catch (const Error& e) {
        report(errc_name(e.kind()), e.what());
        return 1;
    } catch (const std::exception& e) {
        report("internal", e.what());
        return 1;
    }
}

}  // namespace preftop::cli
