#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kcam/model.hpp"
#include "kcam/parser.hpp"
#include "kcam/principles.hpp"
#include "kcam/validate.hpp"

// Model file format (JSON):
//
//   {
//     "actions":      ["rescue", "refrain"],
//     "background":   ["accident"],
//     "consequences": ["drown"],
//     "patients":     ["Alice", "Bob"],
//     "mechanisms":   {"drown": "accident & !rescue"},
//     "affects":      {"drown": [["Alice", "-"]], "!drown": [["Alice", "+"]]},
//     "goals":        {"rescue": ["!drown"], "refrain": []}
//   }
//
// Affect and goal entries use literal strings: a variable name with an
// optional '!' prefix. Plain files that only key affects by variable
// names remain valid; the '!' prefix is the extension needed to express
// entries about negated consequences.

namespace kcam {

struct LoadedModel {
    Model model;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

// Thrown by load_model when the document or the model is bad; carries
// every diagnostic, not just the first.
class load_error : public error {
public:
    load_error(const std::string& source, std::vector<Diagnostic> diags)
        : error(join(source, diags)), diagnostics_(std::move(diags)) {}

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    static std::string join(const std::string& source, const std::vector<Diagnostic>& diags) {
        std::string out = source + ": invalid model";
        for (const auto& d : diags) out += "\n  " + to_string(d);
        return out;
    }

    std::vector<Diagnostic> diagnostics_;
};

namespace detail {

inline std::vector<std::string> string_list(const nlohmann::json& j, const std::string& key,
                                            std::vector<Diagnostic>& diags) {
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    const auto& v = j.at(key);
    if (!v.is_array()) {
        diags.push_back({Severity::Error, key, "expected an array of strings"});
        return out;
    }
    for (const auto& item : v) {
        if (!item.is_string()) {
            diags.push_back({Severity::Error, key, "expected an array of strings"});
            return out;
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

inline void parse_literal_into(const std::string& text, const std::string& element,
                               std::vector<Diagnostic>& diags, std::vector<Literal>& out) {
    try {
        out.push_back(parse_literal(text));
    } catch (const parse_error& e) {
        diags.push_back({Severity::Error, element, std::string("bad literal '") + text + "': " + e.what()});
    }
}

}  // namespace detail

// Builds a model from a parsed JSON document. Collects document-shape
// problems and, when the document itself is sound, the full validator
// output. Never throws on bad content; inspect `diagnostics`.
inline LoadedModel read_model_document(const nlohmann::json& doc, const std::string& source) {
    LoadedModel loaded;
    loaded.model.source = source;
    auto& diags = loaded.diagnostics;
    Model& m = loaded.model;

    if (!doc.is_object()) {
        diags.push_back({Severity::Error, "document", "expected a JSON object"});
        return loaded;
    }
    static const std::vector<std::string> known = {
        "actions", "background", "consequences", "patients", "mechanisms", "affects", "goals"};
    for (const auto& [key, _] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            diags.push_back({Severity::Error, key, "unknown key"});

    m.actions = detail::string_list(doc, "actions", diags);
    m.background = detail::string_list(doc, "background", diags);
    m.consequences = detail::string_list(doc, "consequences", diags);
    m.patients = detail::string_list(doc, "patients", diags);

    if (doc.contains("mechanisms")) {
        if (!doc.at("mechanisms").is_object()) {
            diags.push_back({Severity::Error, "mechanisms", "expected an object"});
        } else {
            for (const auto& [name, value] : doc.at("mechanisms").items()) {
                std::string element = "mechanisms." + name;
                if (!value.is_string()) {
                    diags.push_back({Severity::Error, element, "expected a mechanism string"});
                    continue;
                }
                try {
                    m.mechanisms[name] = parse_mechanism(value.get<std::string>());
                } catch (const parse_error& e) {
                    diags.push_back({Severity::Error, element, e.what()});
                }
            }
        }
    }

    if (doc.contains("affects")) {
        if (!doc.at("affects").is_object()) {
            diags.push_back({Severity::Error, "affects", "expected an object"});
        } else {
            for (const auto& [key, value] : doc.at("affects").items()) {
                std::string element = "affects." + key;
                std::vector<Literal> lit;
                detail::parse_literal_into(key, element, diags, lit);
                if (lit.empty()) continue;
                if (!value.is_array()) {
                    diags.push_back({Severity::Error, element, "expected an array of [patient, sign] pairs"});
                    continue;
                }
                for (const auto& pair : value) {
                    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
                        !pair[1].is_string()) {
                        diags.push_back({Severity::Error, element, "expected [patient, sign] pairs"});
                        continue;
                    }
                    std::string sign = pair[1].get<std::string>();
                    if (sign != "+" && sign != "-") {
                        diags.push_back({Severity::Error, element, "sign must be '+' or '-'"});
                        continue;
                    }
                    AffectEntry entry{lit.front(), pair[0].get<std::string>(),
                                      sign == "+" ? Sign::Plus : Sign::Minus};
                    if (std::find(m.affects.begin(), m.affects.end(), entry) == m.affects.end())
                        m.affects.push_back(std::move(entry));
                }
            }
        }
    }

    if (doc.contains("goals")) {
        if (!doc.at("goals").is_object()) {
            diags.push_back({Severity::Error, "goals", "expected an object"});
        } else {
            for (const auto& [action, value] : doc.at("goals").items()) {
                std::string element = "goals." + action;
                auto& list = m.goals[action];
                if (!value.is_array()) {
                    diags.push_back({Severity::Error, element, "expected an array of literal strings"});
                    continue;
                }
                for (const auto& item : value) {
                    if (!item.is_string()) {
                        diags.push_back({Severity::Error, element, "expected an array of literal strings"});
                        continue;
                    }
                    std::vector<Literal> lit;
                    detail::parse_literal_into(item.get<std::string>(), element, diags, lit);
                    if (!lit.empty() &&
                        std::find(list.begin(), list.end(), lit.front()) == list.end())
                        list.push_back(lit.front());
                }
            }
        }
    }

    if (!has_errors(diags)) {
        auto validation = validate_model(m);
        diags.insert(diags.end(), validation.begin(), validation.end());
        std::sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::tie(a.element, a.severity, a.message) <
                   std::tie(b.element, b.severity, b.message);
        });
        diags.erase(std::unique(diags.begin(), diags.end()), diags.end());
    }
    return loaded;
}

// Reads a model file. Unreadable files and JSON syntax errors become
// error diagnostics; the result is usable iff `ok()`.
inline LoadedModel read_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        LoadedModel loaded;
        loaded.model.source = path;
        loaded.diagnostics.push_back({Severity::Error, path, "cannot read file"});
        return loaded;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        LoadedModel loaded;
        loaded.model.source = path;
        loaded.diagnostics.push_back({Severity::Error, path, std::string("not valid JSON: ") + e.what()});
        return loaded;
    }
    return read_model_document(doc, path);
}

// Loads and validates; throws load_error carrying every diagnostic on
// failure. Warnings do not block loading.
inline Model load_model(const std::string& path) {
    LoadedModel loaded = read_model_file(path);
    if (!loaded.ok()) throw load_error(path, std::move(loaded.diagnostics));
    return std::move(loaded.model);
}

inline Model parse_model(const std::string& text, const std::string& source = "<string>") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw load_error(source, {{Severity::Error, source, std::string("not valid JSON: ") + e.what()}});
    }
    LoadedModel loaded = read_model_document(doc, source);
    if (!loaded.ok()) throw load_error(source, std::move(loaded.diagnostics));
    return std::move(loaded.model);
}

// Canonical document: fixed key order, mechanisms and goals keyed in
// declaration order, affect keys sorted, expressions rendered in
// canonical text. Serializing a just-loaded model is idempotent.
inline std::string serialize_model(const Model& model) {
    nlohmann::ordered_json j;
    j["actions"] = model.actions;
    j["background"] = model.background;
    j["consequences"] = model.consequences;
    j["patients"] = model.patients;

    auto mechanisms = nlohmann::ordered_json::object();
    for (const auto& c : model.consequences) {
        auto it = model.mechanisms.find(c);
        if (it != model.mechanisms.end()) mechanisms[c] = render(it->second);
    }
    j["mechanisms"] = std::move(mechanisms);

    auto affects = nlohmann::ordered_json::object();
    std::vector<std::string> keys;
    for (const auto& e : model.affects) {
        std::string key = to_string(e.literal);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& key : keys) {
        auto list = nlohmann::ordered_json::array();
        for (const auto& e : model.affects)
            if (to_string(e.literal) == key)
                list.push_back({e.patient, std::string(1, to_char(e.sign))});
        affects[key] = std::move(list);
    }
    j["affects"] = std::move(affects);

    auto goals = nlohmann::ordered_json::object();
    for (const auto& a : model.actions) {
        auto strings = nlohmann::ordered_json::array();
        for (const auto& l : model.goals_of(a)) strings.push_back(to_string(l));
        goals[a] = std::move(strings);
    }
    j["goals"] = std::move(goals);

    return j.dump(2) + "\n";
}

// --- verdict reports ---

// Machine-readable verdict. For every patient the report carries the
// Means (both readings) and End booleans alongside the verdict under
// the requested reading.
inline nlohmann::ordered_json verdict_report(const Checker& checker, const Situation& situation,
                                             const Verdict& verdict) {
    nlohmann::ordered_json j;
    j["schema_version"] = "1";
    if (!checker.model().source.empty()) j["model"] = checker.model().source;
    j["action"] = situation.chosen_action;
    j["background"] = situation.background_values;
    j["reading"] = to_int(verdict.reading);
    j["permissible"] = verdict.permissible;

    auto patients = nlohmann::ordered_json::object();
    for (const auto& p : checker.model().patients) {
        nlohmann::ordered_json entry;
        entry["means1"] = checker.treated_as_means(situation, p, Reading::One).holds;
        entry["means2"] = checker.treated_as_means(situation, p, Reading::Two).holds;
        entry["end"] = checker.treated_as_end(situation, p);
        patients[p] = std::move(entry);
    }
    j["patients"] = std::move(patients);

    auto violations = nlohmann::ordered_json::array();
    for (const auto& v : verdict.violations) {
        nlohmann::ordered_json entry;
        entry["patient"] = v.patient;
        entry["means_witness"] = to_string(v.means_witness);
        nlohmann::ordered_json failure;
        failure["no_positive_goal"] = v.no_positive_goal;
        auto negative = nlohmann::ordered_json::array();
        for (const auto& g : v.negative_goals) negative.push_back(to_string(g));
        failure["negative_goals"] = std::move(negative);
        entry["end_failure"] = std::move(failure);
        violations.push_back(std::move(entry));
    }
    j["violations"] = std::move(violations);
    return j;
}

inline std::string verdict_text(const Verdict& verdict) {
    std::string out = verdict.permissible ? "permissible" : "impermissible";
    out += " (reading " + std::to_string(to_int(verdict.reading)) + ")\n";
    for (const auto& v : verdict.violations) {
        out += "  " + v.patient + " is treated as a means (witness: " +
               to_string(v.means_witness) + ") but not as an end:\n";
        if (v.no_positive_goal)
            out += "    - no goal affects " + v.patient + " positively\n";
        for (const auto& g : v.negative_goals)
            out += "    - goal " + to_string(g) + " affects " + v.patient + " negatively\n";
    }
    return out;
}

}  // namespace kcam
