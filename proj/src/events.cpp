#include "tracecalc/events.hpp"

#include <set>

namespace tracecalc {

Event::Event(Value payload) : payload_(std::move(payload)) {
    if (!payload_.is_object())
        throw std::invalid_argument("event payload must be an object, got " + payload_.to_json());
}

void EventTypeDecl::validate() const {
    if (!is_identifier(type_name))
        throw std::invalid_argument("invalid event type name '" + type_name + "'");
    std::set<VarName> seen;
    for (const auto& p : params)
        if (!seen.insert(p).second)
            throw std::invalid_argument("parameter '" + p + "' repeated in event type '" + type_name + "'");
    if (templ.kind() != DataExpr::Kind::Object)
        throw std::invalid_argument("template of event type '" + type_name + "' must be an object");
    for (const auto& v : pfv(templ))
        if (!seen.count(v))
            throw std::invalid_argument("template of event type '" + type_name + "' uses undeclared variable '" +
                                        v + "'");
}

EventTypes::EventTypes(std::vector<EventTypeDecl> decls) {
    for (auto& d : decls)
        declare(std::move(d));
}

void EventTypes::declare(EventTypeDecl decl) {
    decl.validate();
    if (index_.count(decl.type_name))
        throw std::invalid_argument("event type '" + decl.type_name + "' declared twice");
    index_.emplace(decl.type_name, decls_.size());
    decls_.push_back(std::move(decl));
}

const EventTypeDecl* EventTypes::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &decls_[it->second];
}

const EventTypeDecl& EventTypes::lookup(const EventPattern& p) const {
    const EventTypeDecl* d = find(p.type_name);
    if (!d)
        throw UndeclaredEventType("undeclared event type '" + p.type_name + "'");
    if (d->params.size() != p.args.size())
        throw UndeclaredEventType("event type '" + p.type_name + "' expects " + std::to_string(d->params.size()) +
                                  " argument(s), got " + std::to_string(p.args.size()));
    return *d;
}

namespace {

// Matches a pattern argument expression (no template parameters left).
bool match_arg(const DataExpr& arg, const Value& v, Substitution& s) {
    switch (arg.kind()) {
    case DataExpr::Kind::Var: return s.bind(arg.var_name(), v);
    case DataExpr::Kind::Literal: return arg.literal_value() == v;
    case DataExpr::Kind::Object:
        if (!v.is_object())
            return false;
        for (const auto& [k, sub] : arg.members()) {
            const Value* field = v.find(k);
            if (!field || !match_arg(sub, *field, s))
                return false;
        }
        return true;
    case DataExpr::Kind::Array: {
        if (v.kind() != Value::Kind::Array || v.as_array().size() != arg.items().size())
            return false;
        for (std::size_t i = 0; i < arg.items().size(); ++i)
            if (!match_arg(arg.items()[i], v.as_array()[i], s))
                return false;
        return true;
    }
    }
    return false;
}

struct TemplateMatcher {
    const EventTypeDecl& decl;
    const EventPattern& pattern;

    const DataExpr& argument_for(const VarName& param) const {
        for (std::size_t i = 0; i < decl.params.size(); ++i)
            if (decl.params[i] == param)
                return pattern.args[i];
        throw std::logic_error("template parameter '" + param + "' not declared");
    }

    bool match(const DataExpr& templ, const Value& v, Substitution& s) const {
        switch (templ.kind()) {
        case DataExpr::Kind::Var: return match_arg(argument_for(templ.var_name()), v, s);
        case DataExpr::Kind::Literal: return templ.literal_value() == v;
        case DataExpr::Kind::Object:
            if (!v.is_object())
                return false;
            for (const auto& [k, sub] : templ.members()) {
                const Value* field = v.find(k);
                if (!field || !match(sub, *field, s))
                    return false;
            }
            return true;
        case DataExpr::Kind::Array: {
            if (v.kind() != Value::Kind::Array || v.as_array().size() != templ.items().size())
                return false;
            for (std::size_t i = 0; i < templ.items().size(); ++i)
                if (!match(templ.items()[i], v.as_array()[i], s))
                    return false;
            return true;
        }
        }
        return false;
    }
};

} // namespace

std::optional<Substitution> match_event(const EventTypes& types, const Event& e, const EventPattern& p) {
    const EventTypeDecl& decl = types.lookup(p);
    Substitution s;
    if (!TemplateMatcher{decl, p}.match(decl.templ, e.payload(), s))
        return std::nullopt;
    return s;
}

Event instantiate(const EventTypeDecl& decl, const std::vector<Value>& args) {
    if (args.size() != decl.params.size())
        throw UndeclaredEventType("event type '" + decl.type_name + "' arity mismatch");
    std::vector<Substitution::Binding> b;
    for (std::size_t i = 0; i < args.size(); ++i)
        b.emplace_back(decl.params[i], args[i]);
    return Event(apply_subst(decl.templ, Substitution(std::move(b))).to_value());
}

std::vector<AlphabetEntry> build_alphabet(const EventTypes& types, const std::vector<Value>& pool) {
    std::vector<AlphabetEntry> out;
    for (const auto& d : types.decls()) {
        const std::size_t n = d.params.size();
        if (n > 0 && pool.empty())
            continue;
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            std::vector<Value> args;
            std::string label = d.type_name;
            if (n > 0)
                label += "(";
            for (std::size_t i = 0; i < n; ++i) {
                args.push_back(pool[idx[i]]);
                if (i)
                    label += ",";
                label += pool[idx[i]].to_json();
            }
            if (n > 0)
                label += ")";
            Event ev = instantiate(d, args);
            bool dup = false;
            for (const auto& a : out)
                dup = dup || a.event == ev;
            if (!dup)
                out.push_back({std::move(ev), std::move(label)});
            std::size_t i = n;
            while (i > 0 && ++idx[i - 1] == pool.size())
                idx[--i] = 0;
            if (i == 0)
                break;
        }
    }
    return out;
}

} // namespace tracecalc
