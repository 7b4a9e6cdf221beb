#include "tracecalc/substitution.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracecalc {

bool is_identifier(std::string_view s) {
    if (s.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s[0]))
        return false;
    return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c); });
}

Substitution::Substitution(std::initializer_list<Binding> bindings)
    : Substitution(std::vector<Binding>(bindings)) {}

Substitution::Substitution(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
    std::sort(bindings_.begin(), bindings_.end(),
              [](const Binding& a, const Binding& b) { return a.first < b.first; });
    auto dup = std::adjacent_find(bindings_.begin(), bindings_.end(),
                                  [](const Binding& a, const Binding& b) { return a.first == b.first; });
    if (dup != bindings_.end())
        throw std::invalid_argument("variable '" + dup->first + "' bound twice");
}

const Value* Substitution::find(std::string_view var) const {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                               [](const Binding& b, std::string_view v) { return b.first < v; });
    if (it == bindings_.end() || it->first != var)
        return nullptr;
    return &it->second;
}

VarSet Substitution::domain() const {
    VarSet out;
    for (const auto& [x, v] : bindings_)
        out.insert(out.end(), x);
    return out;
}

bool Substitution::bind(const VarName& var, const Value& value) {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(), var,
                               [](const Binding& b, const VarName& v) { return b.first < v; });
    if (it != bindings_.end() && it->first == var)
        return it->second == value;
    bindings_.insert(it, Binding{var, value});
    return true;
}

Substitution Substitution::restricted_to(const VarSet& vars) const {
    Substitution out;
    for (const auto& b : bindings_)
        if (vars.count(b.first))
            out.bindings_.push_back(b);
    return out;
}

Substitution Substitution::only(std::string_view var) const {
    Substitution out;
    if (const Value* v = find(var))
        out.bindings_.emplace_back(VarName(var), *v);
    return out;
}

Substitution Substitution::without(std::string_view var) const {
    Substitution out;
    out.bindings_.reserve(bindings_.size());
    for (const auto& b : bindings_)
        if (b.first != var)
            out.bindings_.push_back(b);
    return out;
}

bool Substitution::disjoint_from(const Substitution& other) const {
    auto i = bindings_.begin();
    auto j = other.bindings_.begin();
    while (i != bindings_.end() && j != other.bindings_.end()) {
        if (i->first == j->first)
            return false;
        if (i->first < j->first)
            ++i;
        else
            ++j;
    }
    return true;
}

std::string Substitution::render() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, v] : bindings_) {
        if (!first)
            out += ", ";
        first = false;
        out += x + "=" + v.to_json();
    }
    return out + "}";
}

std::optional<Substitution> merge(const Substitution& a, const Substitution& b) {
    std::vector<Substitution::Binding> out;
    out.reserve(a.size() + b.size());
    auto i = a.bindings().begin();
    auto j = b.bindings().begin();
    while (i != a.bindings().end() && j != b.bindings().end()) {
        if (i->first == j->first) {
            if (i->second != j->second)
                return std::nullopt;
            out.push_back(*i);
            ++i;
            ++j;
        } else if (i->first < j->first) {
            out.push_back(*i++);
        } else {
            out.push_back(*j++);
        }
    }
    out.insert(out.end(), i, a.bindings().end());
    out.insert(out.end(), j, b.bindings().end());
    return Substitution(std::move(out));
}

} // namespace tracecalc
