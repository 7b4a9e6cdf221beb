#include "tracecalc/json_io.hpp"

#include <json.hpp>

namespace tracecalc {

namespace {

Value from_json(const nlohmann::json& j) {
    switch (j.type()) {
    case nlohmann::json::value_t::null: return Value();
    case nlohmann::json::value_t::boolean: return Value(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return Value(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: {
        auto u = j.get<std::uint64_t>();
        if (u <= static_cast<std::uint64_t>(INT64_MAX))
            return Value(static_cast<std::int64_t>(u));
        return Value(static_cast<double>(u));
    }
    case nlohmann::json::value_t::number_float: return Value(j.get<double>());
    case nlohmann::json::value_t::string: return Value(j.get<std::string>());
    case nlohmann::json::value_t::array: {
        Value::Array items;
        for (const auto& e : j)
            items.push_back(from_json(e));
        return Value::array(std::move(items));
    }
    case nlohmann::json::value_t::object: {
        Value::Object members;
        for (auto it = j.begin(); it != j.end(); ++it)
            members.emplace_back(it.key(), from_json(it.value()));
        return Value::object(std::move(members));
    }
    default: throw JsonInputError("unsupported JSON value");
    }
}

} // namespace

Value parse_json_value(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonInputError(std::string("malformed JSON: ") + e.what());
    }
    return from_json(j);
}

Event parse_event_line(const std::string& line) {
    Value v = parse_json_value(line);
    if (!v.is_object())
        throw JsonInputError("event must be a JSON object, got " + v.to_json());
    return Event(std::move(v));
}

} // namespace tracecalc
