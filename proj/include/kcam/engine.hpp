#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kcam/error.hpp"
#include "kcam/expr.hpp"
#include "kcam/formula.hpp"
#include "kcam/model.hpp"

namespace kcam {

// Total truth assignment over all model variables.
using Assignment = std::map<std::string, bool>;

inline bool truth(const Assignment& w, const Literal& l) {
    auto it = w.find(l.var);
    if (it == w.end()) throw eval_error("unknown variable '" + l.var + "'");
    return it->second == l.positive;
}

inline bool eval_expr(const BoolExprPtr& e, const Assignment& w) {
    switch (e->kind()) {
        case BoolExpr::Kind::Var: {
            auto it = w.find(e->name());
            if (it == w.end()) throw eval_error("unknown variable '" + e->name() + "'");
            return it->second;
        }
        case BoolExpr::Kind::Not: return !eval_expr(e->lhs(), w);
        case BoolExpr::Kind::And: return eval_expr(e->lhs(), w) && eval_expr(e->rhs(), w);
        case BoolExpr::Kind::Or: return eval_expr(e->lhs(), w) || eval_expr(e->rhs(), w);
    }
    return false;
}

// Enumeration guard: a mechanism mentioning more than this many distinct
// variables is rejected rather than enumerated.
inline constexpr std::size_t kMaxMechanismVariables = 20;

// Semantic dependence of a mechanism on one of its inputs: flipping
// `var` changes the value under some assignment of the other variables
// occurring in the expression. Variables that do not occur cannot
// matter, so only occurring ones are enumerated; the result equals full
// truth-table dependence.
inline bool expr_depends_on(const BoolExprPtr& mech, const std::string& var) {
    std::set<std::string> vars = variables_of(mech);
    if (vars.size() > kMaxMechanismVariables)
        throw model_error("mechanism mentions more than " +
                          std::to_string(kMaxMechanismVariables) + " variables");
    if (!vars.count(var)) return false;
    vars.erase(var);
    std::vector<std::string> others(vars.begin(), vars.end());
    Assignment w;
    for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
        for (std::size_t i = 0; i < others.size(); ++i) w[others[i]] = (mask >> i) & 1;
        w[var] = false;
        bool low = eval_expr(mech, w);
        w[var] = true;
        if (low != eval_expr(mech, w)) return true;
    }
    return false;
}

// Whether the consequence's value can change when `var` flips.
inline bool depends(const Model& model, const std::string& consequence, const std::string& var) {
    if (model.kind_of(consequence) != VarKind::Consequence)
        throw eval_error("'" + consequence + "' is not a consequence variable");
    if (consequence == var) return false;
    auto it = model.mechanisms.find(consequence);
    if (it == model.mechanisms.end())
        throw model_error("no mechanism for consequence '" + consequence + "'");
    return expr_depends_on(it->second, var);
}

// Semantic dependence graph with a cached topological order. Edges run
// from a mechanism input to its consequence; action and background
// nodes have no incoming edges. Construction fails with a cycle witness
// when no topological order exists.
class DependenceGraph {
public:
    static DependenceGraph build(const Model& model) {
        DependenceGraph g;
        for (const auto& a : model.actions) g.level_[a] = 0;
        for (const auto& b : model.background) g.level_[b] = 0;

        for (const auto& c : model.consequences) {
            auto it = model.mechanisms.find(c);
            if (it == model.mechanisms.end())
                throw model_error("no mechanism for consequence '" + c + "'");
            std::vector<std::string> inputs;
            for (const auto& v : variables_of(it->second)) {
                if (!model.kind_of(v))
                    throw model_error("mechanism for '" + c + "' mentions undeclared variable '" +
                                      v + "'");
                if (v != c && expr_depends_on(it->second, v)) inputs.push_back(v);
            }
            g.deps_.emplace(c, std::move(inputs));
        }

        g.order_.insert(g.order_.end(), model.actions.begin(), model.actions.end());
        g.order_.insert(g.order_.end(), model.background.begin(), model.background.end());

        // Place consequences in declaration order as their inputs resolve.
        std::set<std::string> placed(g.order_.begin(), g.order_.end());
        std::vector<std::string> pending = model.consequences;
        while (!pending.empty()) {
            bool progress = false;
            for (auto it = pending.begin(); it != pending.end();) {
                const auto& inputs = g.deps_.at(*it);
                bool ready = std::all_of(inputs.begin(), inputs.end(),
                                         [&](const std::string& v) { return placed.count(v) > 0; });
                if (ready) {
                    int lvl = 0;
                    for (const auto& v : inputs) lvl = std::max(lvl, g.level_.at(v));
                    g.level_[*it] = lvl + 1;
                    placed.insert(*it);
                    g.order_.push_back(*it);
                    it = pending.erase(it);
                    progress = true;
                } else {
                    ++it;
                }
            }
            if (!progress) throw cycle_error(find_cycle(g.deps_, placed, pending));
        }
        return g;
    }

    // All variables, dependencies before dependents.
    const std::vector<std::string>& topological_order() const { return order_; }

    // 0 for actions and background, 1 + max input level for consequences.
    int level_of(const std::string& var) const {
        auto it = level_.find(var);
        if (it == level_.end()) throw eval_error("unknown variable '" + var + "'");
        return it->second;
    }

    // Semantic inputs of a consequence, sorted by name.
    const std::vector<std::string>& dependencies_of(const std::string& consequence) const {
        auto it = deps_.find(consequence);
        if (it == deps_.end()) throw eval_error("'" + consequence + "' is not a consequence variable");
        return it->second;
    }

    bool has_edge(const std::string& from, const std::string& to) const {
        auto it = deps_.find(to);
        if (it == deps_.end()) return false;
        return std::find(it->second.begin(), it->second.end(), from) != it->second.end();
    }

private:
    static std::vector<std::string> find_cycle(
        const std::map<std::string, std::vector<std::string>>& deps,
        const std::set<std::string>& placed, const std::vector<std::string>& pending) {
        // Walk unplaced inputs from the first stuck node until one repeats.
        std::vector<std::string> path{pending.front()};
        std::set<std::string> on_path{pending.front()};
        for (;;) {
            const auto& inputs = deps.at(path.back());
            const std::string* next = nullptr;
            for (const auto& v : inputs) {
                if (!placed.count(v) && deps.count(v)) {
                    next = &v;
                    break;
                }
            }
            // Every stuck node has at least one unplaced consequence input.
            if (!next) throw model_error("dependence cycle detected but no witness found");
            if (on_path.count(*next)) {
                auto start = std::find(path.begin(), path.end(), *next);
                std::vector<std::string> cycle(start, path.end());
                cycle.push_back(*next);
                return cycle;
            }
            path.push_back(*next);
            on_path.insert(*next);
        }
    }

    std::vector<std::string> order_;
    std::map<std::string, std::vector<std::string>> deps_;
    std::map<std::string, int> level_;
};

// Extends the situation to a total assignment. Intervened variables take
// their forced polarity, non-intervened actions and background come from
// the situation, and non-intervened consequences follow their mechanisms
// in topological order.
inline Assignment evaluate(const Model& model, const DependenceGraph& graph,
                           const Situation& situation, const Intervention& x = {}) {
    if (model.kind_of(situation.chosen_action) != VarKind::Action)
        throw eval_error("situation chooses unknown action '" + situation.chosen_action + "'");
    Assignment w;
    for (const auto& a : model.actions) w[a] = (a == situation.chosen_action);
    for (const auto& b : model.background) {
        auto it = situation.background_values.find(b);
        if (it == situation.background_values.end())
            throw eval_error("situation assigns no value to background variable '" + b + "'");
        w[b] = it->second;
    }
    for (const auto& [var, value] : x.forced()) {
        auto kind = model.kind_of(var);
        if (!kind) throw eval_error("intervention mentions unknown variable '" + var + "'");
        if (*kind != VarKind::Consequence) w[var] = value;
    }
    for (const auto& v : graph.topological_order()) {
        if (model.kind_of(v) != VarKind::Consequence) continue;
        if (auto forced = x.forced_value(v)) {
            w[v] = *forced;
        } else {
            w[v] = eval_expr(model.mechanisms.at(v), w);
        }
    }
    return w;
}

// Supplied by the principles layer so that Means/End predicates can be
// evaluated inside query formulas.
class MeansEndSemantics {
public:
    virtual ~MeansEndSemantics() = default;
    virtual bool means_holds(const Situation&, const Intervention&, const std::string& patient,
                             Reading) const = 0;
    virtual bool end_holds(const Situation&, const Intervention&,
                           const std::string& patient) const = 0;
};

// Owns a model together with its dependence graph and implements the
// counterfactual layer: evaluation under interventions, but-for
// causation, direct consequences and formula satisfaction.
class Engine {
public:
    explicit Engine(Model model)
        : model_(std::move(model)), graph_(DependenceGraph::build(model_)) {}

    const Model& model() const { return model_; }
    const DependenceGraph& graph() const { return graph_; }

    Assignment evaluate(const Situation& situation, const Intervention& x = {}) const {
        return kcam::evaluate(model_, graph_, situation, x);
    }

    // y is an actual but-for cause of phi: y and phi hold as things
    // stand, and forcing !y (on top of x, with y's own forcing removed)
    // makes phi fail. phi may use atoms, Goal, Affects and connectives.
    bool butfor_cause(const Situation& situation, const Intervention& x, const Literal& y,
                      const FormulaPtr& phi) const {
        if (contains_causal_predicate(phi))
            throw eval_error("but-for effect may not contain Causes, Means or End");
        Assignment w = evaluate(situation, x);
        if (!truth(w, y)) return false;
        if (!holds(w, situation, x, phi, nullptr)) return false;
        Intervention counterfactual = x.negating(y);
        Assignment w2 = evaluate(situation, counterfactual);
        return !holds(w2, situation, counterfactual, phi, nullptr);
    }

    // Consequence literals true as things stand that v is a but-for
    // cause of, in declaration order.
    std::vector<Literal> direct_consequences(const Situation& situation, const Intervention& x,
                                             const Literal& v) const {
        Assignment w = evaluate(situation, x);
        std::vector<Literal> out;
        for (const auto& c : model_.consequences) {
            Literal actual{c, w.at(c)};
            if (butfor_cause(situation, x, v, Formula::atom(actual))) out.push_back(actual);
        }
        return out;
    }

    // Satisfaction of a query formula. Atoms read the evaluated
    // assignment; Goal checks membership in the chosen action's goal
    // set; Affects requires both membership in the affect relation and
    // the literal actually holding; Causes runs the but-for test.
    // Means/End are answered by `ethics` and rejected when it is null.
    bool satisfies(const Situation& situation, const Intervention& x, const FormulaPtr& f,
                   const MeansEndSemantics* ethics = nullptr) const {
        Assignment w = evaluate(situation, x);
        return holds(w, situation, x, f, ethics);
    }

protected:
    bool holds(const Assignment& w, const Situation& situation, const Intervention& x,
               const FormulaPtr& f, const MeansEndSemantics* ethics) const {
        using K = Formula::Kind;
        switch (f->kind()) {
            case K::Atom: return truth(w, f->lit());
            case K::Not: return !holds(w, situation, x, f->lhs(), ethics);
            case K::And:
                return holds(w, situation, x, f->lhs(), ethics) &&
                       holds(w, situation, x, f->rhs(), ethics);
            case K::Or:
                return holds(w, situation, x, f->lhs(), ethics) ||
                       holds(w, situation, x, f->rhs(), ethics);
            case K::Implies:
                return !holds(w, situation, x, f->lhs(), ethics) ||
                       holds(w, situation, x, f->rhs(), ethics);
            case K::Goal: {
                const auto& goals = model_.goals_of(situation.chosen_action);
                return std::find(goals.begin(), goals.end(), f->lit()) != goals.end();
            }
            case K::Affects: {
                if (!model_.has_patient(f->patient()))
                    throw eval_error("unknown patient '" + f->patient() + "'");
                return model_.affects_contains(f->lit(), f->patient(), f->sign()) &&
                       truth(w, f->lit());
            }
            case K::Causes: return butfor_cause(situation, x, f->lit(), f->rhs());
            case K::Means:
                if (!ethics) throw eval_error("Means predicate requires the principles layer");
                return ethics->means_holds(situation, x, f->patient(), f->reading());
            case K::End:
                if (!ethics) throw eval_error("End predicate requires the principles layer");
                return ethics->end_holds(situation, x, f->patient());
        }
        return false;
    }

private:
    Model model_;
    DependenceGraph graph_;
};

}  // namespace kcam
