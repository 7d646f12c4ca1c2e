#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kcam/engine.hpp"
#include "kcam/model.hpp"

namespace kcam {

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity;
    std::string element;  // the offending variable, patient, or map entry
    std::string message;

    friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
};

inline std::string to_string(const Diagnostic& d) {
    return std::string(d.severity == Severity::Error ? "error" : "warning") + ": " + d.element +
           ": " + d.message;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

// Structural well-formedness. Returns an empty list iff the model
// invariants hold: the three variable sets partition the names, every
// consequence has exactly one mechanism over declared variables without
// direct self-reference, goals and affect entries are well typed, and
// the semantic dependence graph is acyclic. A patient affected both
// positively and negatively by the same literal is only a warning.
//
// Affect keys must lie in the action or consequence sets; entries are
// read as (literal, patient, sign) with the patient second, and the
// literal may be negated.
inline std::vector<Diagnostic> validate_model(const Model& model) {
    std::vector<Diagnostic> diags;
    auto error = [&](std::string element, std::string message) {
        diags.push_back({Severity::Error, std::move(element), std::move(message)});
    };
    auto warning = [&](std::string element, std::string message) {
        diags.push_back({Severity::Warning, std::move(element), std::move(message)});
    };

    // Name partition over A, B, C.
    bool names_ok = true;
    std::map<std::string, int> seen;
    for (const auto& v : model.actions) ++seen[v];
    for (const auto& v : model.background) ++seen[v];
    for (const auto& v : model.consequences) ++seen[v];
    for (const auto& [name, count] : seen) {
        if (count > 1) {
            error(name, "variable declared more than once");
            names_ok = false;
        }
    }

    if (model.actions.empty()) error("actions", "model declares no actions");

    std::set<std::string> patient_set;
    for (const auto& p : model.patients)
        if (!patient_set.insert(p).second) warning(p, "patient declared more than once");

    // Mechanisms: exactly one per consequence, over declared variables,
    // no direct self-reference.
    bool mechanisms_ok = true;
    for (const auto& c : model.consequences) {
        if (!model.mechanisms.count(c)) {
            error(c, "consequence has no mechanism");
            mechanisms_ok = false;
        }
    }
    for (const auto& [name, expr] : model.mechanisms) {
        auto kind = model.kind_of(name);
        if (!kind) {
            error(name, "mechanism attached to undeclared variable");
            mechanisms_ok = false;
            continue;
        }
        if (*kind != VarKind::Consequence) {
            error(name, "mechanism attached to a non-consequence variable");
            mechanisms_ok = false;
            continue;
        }
        auto vars = variables_of(expr);
        if (vars.size() > kMaxMechanismVariables) {
            error(name, "mechanism mentions more than " +
                            std::to_string(kMaxMechanismVariables) + " variables");
            mechanisms_ok = false;
        }
        for (const auto& v : vars) {
            if (v == name) {
                error(name, "mechanism refers to its own variable");
                mechanisms_ok = false;
            } else if (!model.kind_of(v)) {
                error(name, "mechanism mentions undeclared variable '" + v + "'");
                mechanisms_ok = false;
            }
        }
    }

    // Goals: keyed by actions, literals over declared variables.
    for (const auto& [action, literals] : model.goals) {
        auto kind = model.kind_of(action);
        if (kind != VarKind::Action) {
            error(action, "goal set attached to a non-action");
            continue;
        }
        for (const auto& l : literals)
            if (!model.kind_of(l.var))
                error(action, "goal literal mentions undeclared variable '" + l.var + "'");
    }

    // Affect relation: keys over actions and consequences, patients declared.
    for (const auto& e : model.affects) {
        auto kind = model.kind_of(e.literal.var);
        if (!kind) {
            error(e.literal.var, "affect key mentions undeclared variable");
        } else if (*kind == VarKind::Background) {
            error(e.literal.var, "affect key must be in A ∪ C");
        }
        if (!model.has_patient(e.patient))
            error(e.patient, "affect entry names undeclared patient");
    }
    for (const auto& e : model.affects) {
        if (e.sign == Sign::Plus &&
            model.affects_contains(e.literal, e.patient, Sign::Minus))
            warning(to_string(e.literal),
                    "affects patient '" + e.patient + "' both positively and negatively");
    }

    // Acyclicity, once the mechanisms themselves are sound. Goal and
    // affect problems do not block the check.
    if (mechanisms_ok && names_ok) {
        try {
            DependenceGraph::build(model);
        } catch (const cycle_error& cycle) {
            error(cycle.cycle().front(), cycle.what());
        } catch (const model_error& e) {
            error("mechanisms", e.what());
        }
    }

    std::sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.element, a.severity, a.message) <
               std::tie(b.element, b.severity, b.message);
    });
    return diags;
}

}  // namespace kcam
