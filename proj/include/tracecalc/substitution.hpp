#pragma once

#include "tracecalc/value.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tracecalc {

using VarName = std::string;
using VarSet = std::set<VarName>;

/// True iff `s` matches `[a-zA-Z_][a-zA-Z0-9_]*`.
bool is_identifier(std::string_view s);

/// Finite partial map from variables to data values, kept sorted by name.
class Substitution {
public:
    using Binding = std::pair<VarName, Value>;

    Substitution() = default;
    /// Throws std::invalid_argument if a variable is bound twice.
    Substitution(std::initializer_list<Binding> bindings);
    explicit Substitution(std::vector<Binding> bindings);

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    const std::vector<Binding>& bindings() const { return bindings_; }

    const Value* find(std::string_view var) const;
    bool contains(std::string_view var) const { return find(var) != nullptr; }
    VarSet domain() const;

    /// Binds `var`; returns false (leaving the map unchanged) if it is
    /// already bound to a different value.
    bool bind(const VarName& var, const Value& value);

    /// σ restricted to `vars`.
    Substitution restricted_to(const VarSet& vars) const;
    /// σ|ₓ
    Substitution only(std::string_view var) const;
    /// σ\ₓ
    Substitution without(std::string_view var) const;

    bool disjoint_from(const Substitution& other) const;

    /// `{x=1, y="a"}`; `{}` for the empty substitution.
    std::string render() const;

    friend bool operator==(const Substitution& a, const Substitution& b) { return a.bindings_ == b.bindings_; }
    friend bool operator!=(const Substitution& a, const Substitution& b) { return !(a == b); }
    friend bool operator<(const Substitution& a, const Substitution& b) { return a.bindings_ < b.bindings_; }

private:
    std::vector<Binding> bindings_;
};

/// σ₁ ⊔ σ₂: the union when both agree on shared variables, nullopt otherwise.
std::optional<Substitution> merge(const Substitution& a, const Substitution& b);

} // namespace tracecalc
