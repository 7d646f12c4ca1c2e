#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kcam {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error in a mechanism or query string. `offset` is the byte
// position in the input where parsing failed.
class parse_error : public error {
public:
    parse_error(std::size_t offset, const std::string& message)
        : error(message + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset),
          message_(message) {}

    std::size_t offset() const { return offset_; }
    const std::string& message() const { return message_; }

private:
    std::size_t offset_;
    std::string message_;
};

// Structural problem with a model, situation or intervention.
class model_error : public error {
public:
    using error::error;
};

// The semantic dependence relation admits a cycle. `cycle` lists the
// variables on one witnessing cycle, first variable repeated at the end.
class cycle_error : public model_error {
public:
    explicit cycle_error(std::vector<std::string> cycle)
        : model_error(format(cycle)), cycle_(std::move(cycle)) {}

    const std::vector<std::string>& cycle() const { return cycle_; }

    static std::string format(const std::vector<std::string>& cycle) {
        std::string out = "dependence cycle ";
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i > 0) out += " ≺ ";
            out += cycle[i];
        }
        return out;
    }

private:
    std::vector<std::string> cycle_;
};

// Raised while evaluating formulas or assignments, e.g. a query that
// mentions a variable or patient the model does not declare.
class eval_error : public error {
public:
    using error::error;
};

}  // namespace kcam
