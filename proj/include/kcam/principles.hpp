#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcam/engine.hpp"
#include "kcam/formula.hpp"
#include "kcam/model.hpp"

namespace kcam {

// Result of the means test, with the literal that witnesses it.
struct MeansResult {
    bool holds = false;
    std::optional<Literal> witness;
};

// Why a patient fails the end test: no goal affects them positively,
// and/or some goals affect them negatively (listed).
struct EndAnalysis {
    bool positively_affected = false;
    std::vector<Literal> negative_goals;

    bool holds() const { return positively_affected && negative_goals.empty(); }
};

// One patient treated as a means but not as an end.
struct Violation {
    std::string patient;
    Literal means_witness;
    bool no_positive_goal = false;
    std::vector<Literal> negative_goals;
};

struct Verdict {
    bool permissible = true;
    Reading reading = Reading::One;
    std::vector<Violation> violations;
};

struct MeritOptions {
    bool permitted_only = true;     // keep only actions the categorical imperative permits
    bool tiebreak_negative = false; // then prefer fewer negatively affected patients
};

// The ethical layer on top of the counterfactual engine: treated as an
// end, both readings of treated as a means, the categorical imperative
// verdict, and the meritorious choice rule. Also completes the query
// language by answering Means/End predicates inside formulas.
class Checker : public Engine, private MeansEndSemantics {
public:
    explicit Checker(Model model) : Engine(std::move(model)) {
        // Means candidates: action and consequence variables, nearest
        // to the action first. Witness reporting picks the first hit.
        for (const auto& a : this->model().actions) candidates_.push_back(a);
        for (const auto& c : this->model().consequences) candidates_.push_back(c);
        std::stable_sort(candidates_.begin(), candidates_.end(),
                         [this](const std::string& l, const std::string& r) {
                             return std::pair(graph().level_of(l), l) <
                                    std::pair(graph().level_of(r), r);
                         });
    }

    // Both end conditions: some goal of the chosen action affects the
    // patient positively, and no goal affects them negatively. Affect
    // entries only count when the goal literal actually holds.
    EndAnalysis analyze_end(const Situation& situation, const Intervention& x,
                            const std::string& patient) const {
        require_patient(patient);
        EndAnalysis result;
        Assignment w = evaluate(situation, x);
        for (const Literal& g : model().goals_of(situation.chosen_action)) {
            if (!truth(w, g)) continue;
            if (model().affects_contains(g, patient, Sign::Plus)) result.positively_affected = true;
            if (model().affects_contains(g, patient, Sign::Minus)) result.negative_goals.push_back(g);
        }
        return result;
    }

    bool treated_as_end(const Situation& situation, const Intervention& x,
                        const std::string& patient) const {
        return analyze_end(situation, x, patient).holds();
    }

    bool treated_as_end(const Situation& situation, const std::string& patient) const {
        return treated_as_end(situation, Intervention{}, patient);
    }

    // A candidate literal v (true as things stand, over actions and
    // consequences) is a witness when the chosen action is a but-for
    // cause of v and v affects the patient; Reading 1 additionally
    // requires v to be a but-for cause of some goal of the action.
    MeansResult treated_as_means(const Situation& situation, const Intervention& x,
                                 const std::string& patient, Reading reading) const {
        require_patient(patient);
        Assignment w = evaluate(situation, x);
        Literal action{situation.chosen_action, true};
        for (const auto& var : candidates_) {
            Literal v{var, w.at(var)};
            if (!model().affects_either_sign(v, patient)) continue;
            if (!butfor_cause(situation, x, action, Formula::atom(v))) continue;
            if (reading == Reading::Two) return {true, v};
            for (const Literal& g : model().goals_of(situation.chosen_action))
                if (butfor_cause(situation, x, v, Formula::atom(g))) return {true, v};
        }
        return {false, std::nullopt};
    }

    MeansResult treated_as_means(const Situation& situation, const std::string& patient,
                                 Reading reading) const {
        return treated_as_means(situation, Intervention{}, patient, reading);
    }

    // Permissibility under the categorical imperative: every patient
    // treated as a means must also be treated as an end. Violations
    // carry the means witness and the failed end conditions.
    Verdict ci_permissible(const Situation& situation, Reading reading,
                           const Intervention& x = {}) const {
        Verdict verdict{true, reading, {}};
        for (const auto& patient : model().patients) {
            MeansResult means = treated_as_means(situation, x, patient, reading);
            if (!means.holds) continue;
            EndAnalysis end = analyze_end(situation, x, patient);
            if (end.holds()) continue;
            verdict.permissible = false;
            verdict.violations.push_back(Violation{patient, *means.witness,
                                                   !end.positively_affected,
                                                   end.negative_goals});
        }
        return verdict;
    }

    // Among the actions the categorical imperative permits, those whose
    // goals positively affect the most patients. Ties are all returned;
    // the caller may choose freely among them. With tiebreak_negative
    // the maximizers are further narrowed to those leaving the fewest
    // patients negatively affected by a true consequence literal. An
    // empty result means no action was permitted.
    std::vector<std::string> meritorious(const std::map<std::string, bool>& background,
                                         Reading reading, MeritOptions options = {}) const {
        struct Scored {
            std::string action;
            int positive;
            int negative;
        };
        std::vector<Scored> scored;
        for (const auto& action : model().actions) {
            Situation situation = make_situation(model(), action, background);
            if (options.permitted_only && !ci_permissible(situation, reading).permissible)
                continue;
            Assignment w = evaluate(situation);
            int positive = 0;
            int negative = 0;
            for (const auto& patient : model().patients) {
                bool advanced = false;
                for (const Literal& g : model().goals_of(action))
                    if (truth(w, g) && model().affects_contains(g, patient, Sign::Plus))
                        advanced = true;
                if (advanced) ++positive;
                bool harmed = false;
                for (const auto& c : model().consequences) {
                    Literal actual{c, w.at(c)};
                    if (model().affects_contains(actual, patient, Sign::Minus)) harmed = true;
                }
                if (harmed) ++negative;
            }
            scored.push_back({action, positive, negative});
        }
        if (scored.empty()) return {};

        int best = std::max_element(scored.begin(), scored.end(),
                                    [](const Scored& a, const Scored& b) {
                                        return a.positive < b.positive;
                                    })->positive;
        std::erase_if(scored, [&](const Scored& s) { return s.positive != best; });
        if (options.tiebreak_negative) {
            int least = std::min_element(scored.begin(), scored.end(),
                                         [](const Scored& a, const Scored& b) {
                                             return a.negative < b.negative;
                                         })->negative;
            std::erase_if(scored, [&](const Scored& s) { return s.negative != least; });
        }
        std::vector<std::string> out;
        for (auto& s : scored) out.push_back(std::move(s.action));
        std::sort(out.begin(), out.end());
        return out;
    }

    // Full query satisfaction, Means/End included.
    bool satisfies(const Situation& situation, const Intervention& x, const FormulaPtr& f) const {
        return Engine::satisfies(situation, x, f, this);
    }

    bool satisfies(const Situation& situation, const FormulaPtr& f) const {
        return satisfies(situation, Intervention{}, f);
    }

private:
    bool means_holds(const Situation& situation, const Intervention& x,
                     const std::string& patient, Reading reading) const override {
        return treated_as_means(situation, x, patient, reading).holds;
    }

    bool end_holds(const Situation& situation, const Intervention& x,
                   const std::string& patient) const override {
        return treated_as_end(situation, x, patient);
    }

    void require_patient(const std::string& patient) const {
        if (!model().has_patient(patient)) throw eval_error("unknown patient '" + patient + "'");
    }

    std::vector<std::string> candidates_;  // A then C, by (level, name)
};

}  // namespace kcam
