#pragma once

#include <compare>
#include <string>

namespace kcam {

// Which of the three variable sets a name belongs to.
enum class VarKind { Action, Background, Consequence };

inline const char* to_string(VarKind k) {
    switch (k) {
        case VarKind::Action: return "action";
        case VarKind::Background: return "background";
        case VarKind::Consequence: return "consequence";
    }
    return "?";
}

// Valence of an affect entry.
enum class Sign { Plus, Minus };

inline char to_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

// A possibly negated variable.
struct Literal {
    std::string var;
    bool positive = true;

    Literal negated() const { return Literal{var, !positive}; }

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline std::string to_string(const Literal& l) {
    return l.positive ? l.var : "!" + l.var;
}

}  // namespace kcam
