// Command line front-end: load a scenario file, pick an action, and ask
// for verdicts, meritorious choices, raw queries or validation.
//
// Exit codes: 0 permissible / query true / no problems,
//             1 impermissible / query false / validation errors,
//             2 usage, file, parse or evaluation errors.

#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kcam/kcam.hpp"

namespace {

std::map<std::string, bool> parse_sets(const std::vector<std::string>& pairs) {
    std::map<std::string, bool> out;
    for (const auto& pair : pairs) {
        auto eq = pair.find('=');
        std::string value = eq == std::string::npos ? "" : pair.substr(eq + 1);
        if (eq == std::string::npos || eq == 0 || (value != "true" && value != "false"))
            throw kcam::error("malformed --set '" + pair + "', expected var=true or var=false");
        out[pair.substr(0, eq)] = (value == "true");
    }
    return out;
}

kcam::Reading to_reading(int n) {
    return n == 2 ? kcam::Reading::Two : kcam::Reading::One;
}

int run_check(const std::string& path, const std::string& action,
              const std::vector<std::string>& sets, int reading, const std::string& format) {
    kcam::Checker checker(kcam::load_model(path));
    kcam::Situation situation = kcam::make_situation(checker.model(), action, parse_sets(sets));
    kcam::Verdict verdict = checker.ci_permissible(situation, to_reading(reading));
    if (format == "machine")
        std::cout << kcam::verdict_report(checker, situation, verdict).dump(2) << "\n";
    else
        std::cout << kcam::verdict_text(verdict);
    return verdict.permissible ? 0 : 1;
}

int run_permissible(const std::string& path, const std::vector<std::string>& sets, int reading) {
    kcam::Checker checker(kcam::load_model(path));
    auto background = parse_sets(sets);
    std::vector<std::string> actions = checker.model().actions;
    std::sort(actions.begin(), actions.end());
    for (const auto& action : actions) {
        kcam::Situation situation = kcam::make_situation(checker.model(), action, background);
        kcam::Verdict verdict = checker.ci_permissible(situation, to_reading(reading));
        std::cout << action << ": " << (verdict.permissible ? "permissible" : "impermissible")
                  << "\n";
    }
    return 0;
}

int run_meritorious(const std::string& path, const std::vector<std::string>& sets, int reading,
                    bool tiebreak_negative) {
    kcam::Checker checker(kcam::load_model(path));
    kcam::MeritOptions options;
    options.tiebreak_negative = tiebreak_negative;
    auto winners = checker.meritorious(parse_sets(sets), to_reading(reading), options);
    for (const auto& action : winners) std::cout << action << "\n";
    return 0;
}

int run_query(const std::string& path, const std::string& action,
              const std::vector<std::string>& sets, const std::string& formula_text) {
    kcam::Checker checker(kcam::load_model(path));
    kcam::FormulaPtr formula = kcam::parse_query(formula_text);
    kcam::Situation situation = kcam::make_situation(checker.model(), action, parse_sets(sets));
    bool result = checker.satisfies(situation, formula);
    std::cout << (result ? "true" : "false") << "\n";
    return result ? 0 : 1;
}

int run_validate(const std::string& path) {
    kcam::LoadedModel loaded = kcam::read_model_file(path);
    for (const auto& d : loaded.diagnostics) std::cout << kcam::to_string(d) << "\n";
    if (loaded.diagnostics.empty()) std::cout << "ok\n";
    return loaded.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model checker for causal agency scenarios"};
    app.require_subcommand(1);

    std::string model_path;
    std::string action;
    std::string formula;
    std::string format = "text";
    std::vector<std::string> sets;
    int reading = 1;
    bool tiebreak_negative = false;

    auto add_common = [&](CLI::App* cmd, bool with_action) {
        cmd->add_option("model", model_path, "model file")->required();
        if (with_action) cmd->add_option("--action", action, "action to take")->required();
        cmd->add_option("--set", sets, "background value, var=true or var=false");
        cmd->add_option("--reading", reading, "means reading (1 or 2)")
            ->check(CLI::IsMember({1, 2}));
    };

    CLI::App* check = app.add_subcommand("check", "verdict for one action");
    add_common(check, true);
    check->add_option("--format", format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));

    CLI::App* permissible = app.add_subcommand("permissible", "verdict for every action");
    add_common(permissible, false);

    CLI::App* meritorious = app.add_subcommand("meritorious", "best permitted actions");
    add_common(meritorious, false);
    meritorious->add_flag("--tiebreak-negative", tiebreak_negative,
                          "prefer fewer negatively affected patients among ties");

    CLI::App* query = app.add_subcommand("query", "evaluate a formula");
    add_common(query, true);
    query->add_option("formula", formula, "query formula")->required();

    CLI::App* validate = app.add_subcommand("validate", "report model diagnostics");
    validate->add_option("model", model_path, "model file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(check)) return run_check(model_path, action, sets, reading, format);
        if (app.got_subcommand(permissible)) return run_permissible(model_path, sets, reading);
        if (app.got_subcommand(meritorious))
            return run_meritorious(model_path, sets, reading, tiebreak_negative);
        if (app.got_subcommand(query)) return run_query(model_path, action, sets, formula);
        if (app.got_subcommand(validate)) return run_validate(model_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
