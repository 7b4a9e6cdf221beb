#pragma once

#include "tracecalc/pattern.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracecalc {

/// A ground event: an object value.
class Event {
public:
    /// Throws std::invalid_argument unless `payload` is an object.
    explicit Event(Value payload);

    const Value& payload() const { return payload_; }
    std::string to_json() const { return payload_.to_json(); }

    friend bool operator==(const Event& a, const Event& b) { return a.payload_ == b.payload_; }
    friend bool operator!=(const Event& a, const Event& b) { return a.payload_ != b.payload_; }
    friend bool operator<(const Event& a, const Event& b) { return a.payload_ < b.payload_; }

private:
    Value payload_;
};

/// `eventtype name(params) matches template`
struct EventTypeDecl {
    std::string type_name;
    std::vector<VarName> params;
    DataExpr templ;

    /// Throws std::invalid_argument when params repeat, the template is not
    /// an object, or the template mentions an undeclared variable.
    void validate() const;
};

class UndeclaredEventType : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Event-type declarations keyed by name.
class EventTypes {
public:
    EventTypes() = default;
    explicit EventTypes(std::vector<EventTypeDecl> decls);

    /// Throws std::invalid_argument on duplicates or invalid declarations.
    void declare(EventTypeDecl decl);

    const EventTypeDecl* find(const std::string& name) const;
    /// Throws UndeclaredEventType on unknown names or arity mismatch.
    const EventTypeDecl& lookup(const EventPattern& p) const;

    const std::vector<EventTypeDecl>& decls() const { return decls_; }
    bool empty() const { return decls_.empty(); }

private:
    std::vector<EventTypeDecl> decls_;
    std::map<std::string, std::size_t> index_;
};

/// match(e, θ): the most general σ with dom(σ) ⊆ pfv(θ) such that e matches
/// σθ, or nullopt. Object patterns are open-world: extra event keys are ignored.
std::optional<Substitution> match_event(const EventTypes& types, const Event& e, const EventPattern& p);

/// The event denoted by a declaration with its parameters bound to values.
Event instantiate(const EventTypeDecl& decl, const std::vector<Value>& args);

/// One ground event per declaration and per assignment of pool values to
/// its parameters, with a short label like `open(42)`.
struct AlphabetEntry {
    Event event;
    std::string label;
};
std::vector<AlphabetEntry> build_alphabet(const EventTypes& types, const std::vector<Value>& pool);

} // namespace tracecalc
