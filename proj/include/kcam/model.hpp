#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcam/error.hpp"
#include "kcam/expr.hpp"
#include "kcam/literal.hpp"

namespace kcam {

// One entry of the affect relation K: `literal` knowingly affects
// `patient` with the given valence. Keys are literals, not bare
// variables, so negated consequences can carry their own entries
// (e.g. not drowning affects Alice positively while drowning affects
// her negatively; the two entries are independent).
struct AffectEntry {
    Literal literal;
    std::string patient;
    Sign sign;

    friend auto operator<=>(const AffectEntry&, const AffectEntry&) = default;
};

// A causal agency model: action, background and consequence variables,
// one mechanism per consequence, per-action goal sets, moral patients
// and the affect relation. Vectors keep declaration order; the struct
// is plain data and is treated as immutable once validated.
struct Model {
    std::vector<std::string> actions;
    std::vector<std::string> background;
    std::vector<std::string> consequences;
    std::vector<std::string> patients;
    std::map<std::string, BoolExprPtr> mechanisms;      // consequence -> expression
    std::map<std::string, std::vector<Literal>> goals;  // action -> goal literals
    std::vector<AffectEntry> affects;
    std::string source;  // where the model was loaded from, if anywhere

    std::optional<VarKind> kind_of(std::string_view name) const {
        auto in = [&](const std::vector<std::string>& v) {
            return std::find(v.begin(), v.end(), name) != v.end();
        };
        if (in(actions)) return VarKind::Action;
        if (in(background)) return VarKind::Background;
        if (in(consequences)) return VarKind::Consequence;
        return std::nullopt;
    }

    bool has_patient(std::string_view p) const {
        return std::find(patients.begin(), patients.end(), p) != patients.end();
    }

    // Goal set of an action; absent entries mean the empty set.
    const std::vector<Literal>& goals_of(const std::string& action) const {
        static const std::vector<Literal> none;
        auto it = goals.find(action);
        return it == goals.end() ? none : it->second;
    }

    bool affects_contains(const Literal& l, std::string_view patient, Sign sign) const {
        for (const auto& e : affects)
            if (e.literal == l && e.patient == patient && e.sign == sign) return true;
        return false;
    }

    // True if (l, patient, +) or (l, patient, -) is in K.
    bool affects_either_sign(const Literal& l, std::string_view patient) const {
        return affects_contains(l, patient, Sign::Plus) ||
               affects_contains(l, patient, Sign::Minus);
    }
};

// A concrete choice point: the chosen action plus a total assignment of
// the background variables. Induces the interpretation that sets the
// chosen action true and every other action false.
struct Situation {
    std::string chosen_action;
    std::map<std::string, bool> background_values;
};

inline Situation make_situation(const Model& model, const std::string& action,
                                const std::map<std::string, bool>& background) {
    if (model.kind_of(action) != VarKind::Action)
        throw model_error("unknown action '" + action + "'");
    for (const auto& [name, _] : background)
        if (model.kind_of(name) != VarKind::Background)
            throw model_error("'" + name + "' is not a background variable");
    for (const auto& b : model.background)
        if (!background.count(b))
            throw model_error("background variable '" + b + "' has no value");
    return Situation{action, background};
}

// A consistent set of literals that overrides both mechanisms and
// situation values for the variables it mentions.
class Intervention {
public:
    Intervention() = default;
    Intervention(std::initializer_list<Literal> lits) {
        for (const auto& l : lits) add(l);
    }

    void add(const Literal& l) {
        auto [it, inserted] = forced_.emplace(l.var, l.positive);
        if (!inserted && it->second != l.positive)
            throw model_error("inconsistent intervention: both " + l.var + " and !" + l.var);
    }

    std::optional<bool> forced_value(const std::string& var) const {
        auto it = forced_.find(var);
        if (it == forced_.end()) return std::nullopt;
        return it->second;
    }

    bool empty() const { return forced_.empty(); }

    const std::map<std::string, bool>& forced() const { return forced_; }

    // (X \ {y}) with {!y} added: the counterfactual intervention used by
    // the second condition of the but-for test.
    Intervention negating(const Literal& y) const {
        Intervention out = *this;
        out.forced_[y.var] = !y.positive;
        return out;
    }

private:
    std::map<std::string, bool> forced_;
};

}  // namespace kcam
