#pragma once

#include "tracecalc/events.hpp"
#include "tracecalc/term.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tracecalc {

struct Diagnostic {
    std::string origin;
    int line = 1;
    int column = 1;
    std::string message;

    /// `origin:line:col: message`
    std::string render() const;
};

class SpecParseError : public std::runtime_error {
public:
    explicit SpecParseError(std::vector<Diagnostic> diags);
    std::vector<Diagnostic> diagnostics;
};

/// A parsed specification: declarations, equations in source order, and the
/// compiled system rooted at the main equation ("Main" if present, else the
/// first equation).
struct ParsedSpec {
    EventTypes types;
    std::vector<std::pair<std::string, TermExprPtr>> equations;
    std::string main;
    TermSystem system;
};

/// Throws SpecParseError carrying every diagnostic found.
ParsedSpec parse_spec(const std::string& text, const std::string& origin = "<input>");

/// Canonical text that parses back to a structurally equal specification.
std::string pretty(const ParsedSpec& spec);
std::string pretty_term(const TermExprPtr& t);

/// Same declarations, same equations (ignoring source positions), same main.
bool same_spec(const ParsedSpec& a, const ParsedSpec& b);

} // namespace tracecalc
