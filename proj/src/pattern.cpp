#include "tracecalc/pattern.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tracecalc {

DataExpr DataExpr::var(VarName name) {
    if (!is_identifier(name))
        throw std::invalid_argument("invalid variable name '" + name + "'");
    DataExpr e;
    e.kind_ = Kind::Var;
    e.var_ = std::move(name);
    return e;
}

DataExpr DataExpr::literal(Value v) {
    DataExpr e;
    e.kind_ = Kind::Literal;
    e.literal_ = std::move(v);
    return e;
}

DataExpr DataExpr::object(std::vector<Member> members) {
    std::set<std::string> seen;
    for (const auto& m : members)
        if (!seen.insert(m.first).second)
            throw std::invalid_argument("duplicate object key '" + m.first + "'");
    DataExpr e;
    e.kind_ = Kind::Object;
    e.members_ = std::make_shared<const std::vector<Member>>(std::move(members));
    return e;
}

DataExpr DataExpr::array(std::vector<DataExpr> items) {
    DataExpr e;
    e.kind_ = Kind::Array;
    e.items_ = std::make_shared<const std::vector<DataExpr>>(std::move(items));
    return e;
}

bool DataExpr::ground() const {
    switch (kind_) {
    case Kind::Var: return false;
    case Kind::Literal: return true;
    case Kind::Object:
        return std::all_of(members().begin(), members().end(), [](const Member& m) { return m.second.ground(); });
    case Kind::Array:
        return std::all_of(items().begin(), items().end(), [](const DataExpr& d) { return d.ground(); });
    }
    return true;
}

Value DataExpr::to_value() const {
    switch (kind_) {
    case Kind::Var: throw std::logic_error("unbound variable '" + var_ + "'");
    case Kind::Literal: return literal_;
    case Kind::Object: {
        Value::Object obj;
        for (const auto& [k, v] : members())
            obj.emplace_back(k, v.to_value());
        return Value::object(std::move(obj));
    }
    case Kind::Array: {
        Value::Array arr;
        for (const auto& d : items())
            arr.push_back(d.to_value());
        return Value::array(std::move(arr));
    }
    }
    return {};
}

static std::string render_key(const std::string& k) { return is_identifier(k) ? k : json_quote(k); }

std::string DataExpr::render() const {
    switch (kind_) {
    case Kind::Var: return var_;
    case Kind::Literal: return literal_.to_json();
    case Kind::Object: {
        std::string out = "{";
        for (std::size_t i = 0; i < members().size(); ++i) {
            if (i)
                out += ", ";
            out += render_key(members()[i].first) + ":" + members()[i].second.render();
        }
        return out + "}";
    }
    case Kind::Array: {
        std::string out = "[";
        for (std::size_t i = 0; i < items().size(); ++i) {
            if (i)
                out += ", ";
            out += items()[i].render();
        }
        return out + "]";
    }
    }
    return {};
}

bool operator==(const DataExpr& a, const DataExpr& b) {
    if (a.kind_ != b.kind_)
        return false;
    switch (a.kind_) {
    case DataExpr::Kind::Var: return a.var_ == b.var_;
    case DataExpr::Kind::Literal: return a.literal_ == b.literal_;
    case DataExpr::Kind::Object: return a.members() == b.members();
    case DataExpr::Kind::Array: return a.items() == b.items();
    }
    return false;
}

std::string EventPattern::render() const {
    std::string out = type_name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            out += ", ";
        out += args[i].render();
    }
    return out + ")";
}

void collect_pfv(const DataExpr& e, VarSet& out) {
    switch (e.kind()) {
    case DataExpr::Kind::Var: out.insert(e.var_name()); break;
    case DataExpr::Kind::Literal: break;
    case DataExpr::Kind::Object:
        for (const auto& m : e.members())
            collect_pfv(m.second, out);
        break;
    case DataExpr::Kind::Array:
        for (const auto& d : e.items())
            collect_pfv(d, out);
        break;
    }
}

VarSet pfv(const DataExpr& e) {
    VarSet out;
    collect_pfv(e, out);
    return out;
}

VarSet pfv(const EventPattern& p) {
    VarSet out;
    for (const auto& a : p.args)
        collect_pfv(a, out);
    return out;
}

DataExpr apply_subst(const DataExpr& e, const Substitution& s) {
    if (s.empty())
        return e;
    switch (e.kind()) {
    case DataExpr::Kind::Var:
        if (const Value* v = s.find(e.var_name()))
            return DataExpr::literal(*v);
        return e;
    case DataExpr::Kind::Literal: return e;
    case DataExpr::Kind::Object: {
        std::vector<DataExpr::Member> out;
        out.reserve(e.members().size());
        for (const auto& [k, v] : e.members())
            out.emplace_back(k, apply_subst(v, s));
        return DataExpr::object(std::move(out));
    }
    case DataExpr::Kind::Array: {
        std::vector<DataExpr> out;
        out.reserve(e.items().size());
        for (const auto& d : e.items())
            out.push_back(apply_subst(d, s));
        return DataExpr::array(std::move(out));
    }
    }
    return e;
}

EventPattern apply_subst(const EventPattern& p, const Substitution& s) {
    EventPattern out{p.type_name, {}};
    out.args.reserve(p.args.size());
    for (const auto& a : p.args)
        out.args.push_back(apply_subst(a, s));
    return out;
}

} // namespace tracecalc
