#pragma once

#include "tracecalc/events.hpp"
#include "tracecalc/value.hpp"

#include <stdexcept>
#include <string>

namespace tracecalc {

class JsonInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses strict JSON text into a value. Throws JsonInputError.
Value parse_json_value(const std::string& text);

/// One JSON-lines record that must hold an object. Throws JsonInputError.
Event parse_event_line(const std::string& line);

} // namespace tracecalc
