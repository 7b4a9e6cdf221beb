#include "tracecalc/value.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace tracecalc {

Number::Number(double value) {
    constexpr double lo = static_cast<double>(std::numeric_limits<std::int64_t>::min());
    constexpr double hi = 9223372036854775808.0; // 2^63, exclusive
    if (std::isfinite(value) && std::trunc(value) == value && value >= lo && value < hi) {
        is_int_ = true;
        int_ = static_cast<std::int64_t>(value);
    } else {
        is_int_ = false;
        dbl_ = value;
    }
}

bool operator==(const Number& a, const Number& b) { return compare(a, b) == 0; }

int compare(const Number& a, const Number& b) {
    if (a.is_int_ && b.is_int_)
        return a.int_ < b.int_ ? -1 : (a.int_ > b.int_ ? 1 : 0);
    long double x = a.is_int_ ? static_cast<long double>(a.int_) : a.dbl_;
    long double y = b.is_int_ ? static_cast<long double>(b.int_) : b.dbl_;
    // NaN sorts after everything and equals itself, keeping the order total.
    bool nx = std::isnan(x), ny = std::isnan(y);
    if (nx || ny)
        return nx == ny ? 0 : (nx ? 1 : -1);
    return x < y ? -1 : (x > y ? 1 : 0);
}

std::string Number::render() const {
    if (is_int_)
        return std::to_string(int_);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", dbl_);
    return buf;
}

Value Value::array(Array items) {
    Value v;
    v.data_ = std::move(items);
    return v;
}

Value Value::object(Object members) {
    std::sort(members.begin(), members.end(),
              [](const Member& a, const Member& b) { return a.first < b.first; });
    auto dup = std::adjacent_find(members.begin(), members.end(),
                                  [](const Member& a, const Member& b) { return a.first == b.first; });
    if (dup != members.end())
        throw std::invalid_argument("duplicate object key '" + dup->first + "'");
    Value v;
    v.data_ = std::move(members);
    return v;
}

const Value* Value::find(std::string_view key) const {
    if (!is_object())
        return nullptr;
    const auto& obj = as_object();
    auto it = std::lower_bound(obj.begin(), obj.end(), key,
                               [](const Member& m, std::string_view k) { return m.first < k; });
    if (it == obj.end() || it->first != key)
        return nullptr;
    return &it->second;
}

std::string json_quote(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out.push_back(static_cast<char>(c));
            }
        }
    }
    out.push_back('"');
    return out;
}

std::string Value::to_json() const {
    switch (kind()) {
    case Kind::Null: return "null";
    case Kind::Bool: return as_bool() ? "true" : "false";
    case Kind::Number: return as_number().render();
    case Kind::String: return json_quote(as_string());
    case Kind::Array: {
        std::string out = "[";
        bool first = true;
        for (const auto& item : as_array()) {
            if (!first)
                out += ",";
            first = false;
            out += item.to_json();
        }
        return out + "]";
    }
    case Kind::Object: {
        std::string out = "{";
        bool first = true;
        for (const auto& [k, v] : as_object()) {
            if (!first)
                out += ",";
            first = false;
            out += json_quote(k) + ":" + v.to_json();
        }
        return out + "}";
    }
    }
    return {};
}

int compare(const Value& a, const Value& b) {
    if (a.kind() != b.kind())
        return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
    case Value::Kind::Null: return 0;
    case Value::Kind::Bool: return static_cast<int>(a.as_bool()) - static_cast<int>(b.as_bool());
    case Value::Kind::Number: return compare(a.as_number(), b.as_number());
    case Value::Kind::String: {
        int c = a.as_string().compare(b.as_string());
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Value::Kind::Array: {
        const auto& x = a.as_array();
        const auto& y = b.as_array();
        for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
            if (int c = compare(x[i], y[i]))
                return c;
        return x.size() < y.size() ? -1 : (x.size() > y.size() ? 1 : 0);
    }
    case Value::Kind::Object: {
        const auto& x = a.as_object();
        const auto& y = b.as_object();
        for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
            if (int c = x[i].first.compare(y[i].first))
                return c < 0 ? -1 : 1;
            if (int c = compare(x[i].second, y[i].second))
                return c;
        }
        return x.size() < y.size() ? -1 : (x.size() > y.size() ? 1 : 0);
    }
    }
    return 0;
}

} // namespace tracecalc
