#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tracecalc {

/// Numeric literal. Integral values are normalized to the integer
/// representation so that 42 and 42.0 compare equal.
class Number {
public:
    Number() = default;
    Number(std::int64_t value) : is_int_(true), int_(value) {}
    Number(int value) : Number(static_cast<std::int64_t>(value)) {}
    Number(double value);

    bool is_integer() const { return is_int_; }
    std::int64_t as_integer() const { return int_; }
    double as_double() const { return is_int_ ? static_cast<double>(int_) : dbl_; }

    friend bool operator==(const Number& a, const Number& b);
    friend int compare(const Number& a, const Number& b);

    std::string render() const;

private:
    bool is_int_ = true;
    std::int64_t int_ = 0;
    double dbl_ = 0.0;
};

/// Ground structured data: null, booleans, numbers, strings, arrays and
/// objects. Object members are kept sorted by key; keys are unique.
class Value {
public:
    enum class Kind : std::uint8_t { Null, Bool, Number, String, Array, Object };

    using Array = std::vector<Value>;
    using Member = std::pair<std::string, Value>;
    using Object = std::vector<Member>;

    Value() = default;
    Value(std::nullptr_t) {}
    Value(bool b) : data_(b) {}
    Value(int n) : data_(Number(n)) {}
    Value(std::int64_t n) : data_(Number(n)) {}
    Value(double d) : data_(Number(d)) {}
    Value(Number n) : data_(n) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(std::string s) : data_(std::move(s)) {}

    static Value array(Array items);
    /// Builds an object; throws std::invalid_argument on duplicate keys.
    static Value object(Object members);

    Kind kind() const { return static_cast<Kind>(data_.index()); }
    bool is_object() const { return kind() == Kind::Object; }

    bool as_bool() const { return std::get<bool>(data_); }
    const Number& as_number() const { return std::get<Number>(data_); }
    const std::string& as_string() const { return std::get<std::string>(data_); }
    const Array& as_array() const { return std::get<Array>(data_); }
    const Object& as_object() const { return std::get<Object>(data_); }

    /// Member lookup on objects; nullptr when absent or not an object.
    const Value* find(std::string_view key) const;

    /// Strict JSON text.
    std::string to_json() const;

    friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Value& a, const Value& b) { return compare(a, b) != 0; }
    friend bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }
    friend int compare(const Value& a, const Value& b);

private:
    std::variant<std::monostate, bool, Number, std::string, Array, Object> data_;
};

std::string json_quote(std::string_view s);

} // namespace tracecalc
