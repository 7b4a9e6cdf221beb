#pragma once

#include "tracecalc/substitution.hpp"
#include "tracecalc/value.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace tracecalc {

/// Basic data expression: a variable, a literal, or an object/array whose
/// leaves are basic data expressions.
class DataExpr {
public:
    enum class Kind : std::uint8_t { Var, Literal, Object, Array };
    using Member = std::pair<std::string, DataExpr>;

    DataExpr() = default;

    static DataExpr var(VarName name);
    static DataExpr literal(Value v);
    /// Throws std::invalid_argument on duplicate keys. Member order is kept.
    static DataExpr object(std::vector<Member> members);
    static DataExpr array(std::vector<DataExpr> items);

    Kind kind() const { return kind_; }
    const VarName& var_name() const { return var_; }
    const Value& literal_value() const { return literal_; }
    const std::vector<Member>& members() const { return *members_; }
    const std::vector<DataExpr>& items() const { return *items_; }

    /// True when no variable occurs in the expression.
    bool ground() const;
    /// Converts a ground expression to a value; throws std::logic_error otherwise.
    Value to_value() const;

    std::string render() const;

    friend bool operator==(const DataExpr& a, const DataExpr& b);
    friend bool operator!=(const DataExpr& a, const DataExpr& b) { return !(a == b); }

private:
    Kind kind_ = Kind::Literal;
    VarName var_;
    Value literal_;
    std::shared_ptr<const std::vector<Member>> members_;
    std::shared_ptr<const std::vector<DataExpr>> items_;
};

/// θ = τ(b₁,…,bₙ)
struct EventPattern {
    std::string type_name;
    std::vector<DataExpr> args;

    std::string render() const;
    friend bool operator==(const EventPattern& a, const EventPattern& b) {
        return a.type_name == b.type_name && a.args == b.args;
    }
    friend bool operator!=(const EventPattern& a, const EventPattern& b) { return !(a == b); }
};

VarSet pfv(const DataExpr& e);
VarSet pfv(const EventPattern& p);
void collect_pfv(const DataExpr& e, VarSet& out);

/// σb: bound variables are replaced by literals, the rest left in place.
DataExpr apply_subst(const DataExpr& e, const Substitution& s);
EventPattern apply_subst(const EventPattern& p, const Substitution& s);

} // namespace tracecalc
