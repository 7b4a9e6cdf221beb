#pragma once

#include "tracecalc/pattern.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tracecalc {

// ---------------------------------------------------------------------------
// Runtime terms

enum class TermKind : std::uint8_t { Empty, Pattern, Cat, And, Or, Shuffle, Let, Ref };

class TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Immutable term node. Cycles only go through Ref nodes, which name an
/// equation of a TermSystem together with a pending substitution (already
/// restricted to the equation's free variables). Every node caches its free
/// variables and whether it accepts the empty trace.
class TermNode {
public:
    TermKind kind() const { return kind_; }

    const EventPattern& pattern() const { return pattern_; }
    const Term& left() const { return left_; }
    const Term& right() const { return right_; }
    const Term& body() const { return left_; }
    const VarName& var() const { return var_; }

    std::size_t equation() const { return eq_; }
    const std::string& equation_name() const { return var_; }
    const Substitution& ref_subst() const { return subst_; }

    const VarSet& free_vars() const { return fv_; }
    bool nullable() const { return nullable_; }
    /// Node count of the term as a tree (Refs count 1), saturating.
    std::size_t size() const { return size_; }

    friend Term mk_empty();
    friend Term mk_pattern(EventPattern p);
    friend Term mk_binary(TermKind k, Term l, Term r);
    friend Term mk_let(VarName x, Term body);
    friend Term mk_ref(std::size_t eq, std::string name, VarSet eq_fv, bool eq_nullable, Substitution s);
    friend Term apply_subst(const Term& t, const Substitution& s);

private:
    TermKind kind_ = TermKind::Empty;
    EventPattern pattern_;
    Term left_, right_;
    VarName var_;
    std::size_t eq_ = 0;
    Substitution subst_;
    VarSet fv_;
    bool nullable_ = false;
    std::size_t size_ = 1;
};

Term mk_empty();
Term mk_pattern(EventPattern p);
/// `k` must be one of Cat, And, Or, Shuffle.
Term mk_binary(TermKind k, Term l, Term r);
inline Term mk_cat(Term l, Term r) { return mk_binary(TermKind::Cat, std::move(l), std::move(r)); }
inline Term mk_and(Term l, Term r) { return mk_binary(TermKind::And, std::move(l), std::move(r)); }
inline Term mk_or(Term l, Term r) { return mk_binary(TermKind::Or, std::move(l), std::move(r)); }
inline Term mk_shuffle(Term l, Term r) { return mk_binary(TermKind::Shuffle, std::move(l), std::move(r)); }
Term mk_let(VarName x, Term body);
/// Reference to equation `eq` whose body has free variables `eq_fv`; `s` is
/// restricted to `eq_fv` before being stored.
Term mk_ref(std::size_t eq, std::string name, VarSet eq_fv, bool eq_nullable, Substitution s = {});

bool is_binary(TermKind k);

/// σt. Only the part of σ over fv(t) matters; when that part is empty the
/// argument is returned unchanged (same node).
Term apply_subst(const Term& t, const Substitution& s);

/// Structural equality. Ref nodes compare by equation and pending substitution.
bool same_term(const Term& a, const Term& b);
/// Rendering in the specification language; Ref nodes with a pending
/// substitution render as `Name[x=1]`. Distinct terms render differently, so
/// the result doubles as a canonical key.
std::string render(const Term& t);
std::size_t term_size(const Term& t);

// ---------------------------------------------------------------------------
// Syntax trees (what the parser produces and the builder consumes)

struct SourcePos {
    int line = 0;
    int column = 0;
};

struct TermExpr;
using TermExprPtr = std::shared_ptr<const TermExpr>;

struct TermExpr {
    enum class Kind : std::uint8_t { Empty, Pattern, Cat, And, Or, Shuffle, Let, Name };

    Kind kind = Kind::Empty;
    EventPattern pattern;
    TermExprPtr a, b;
    /// Let variable or referenced equation name.
    std::string name;
    SourcePos pos;

    static TermExprPtr empty(SourcePos p = {});
    static TermExprPtr pat(EventPattern pattern, SourcePos p = {});
    static TermExprPtr binary(Kind k, TermExprPtr l, TermExprPtr r, SourcePos p = {});
    static TermExprPtr let(std::string var, TermExprPtr body, SourcePos p = {});
    static TermExprPtr ref(std::string name, SourcePos p = {});
};

/// Structural equality, ignoring source positions.
bool same_syntax(const TermExprPtr& a, const TermExprPtr& b);

// ---------------------------------------------------------------------------
// Equation systems

class SystemError : public std::invalid_argument {
public:
    SystemError(const std::string& msg, SourcePos pos = {}) : std::invalid_argument(msg), pos(pos) {}
    SourcePos pos;
};

/// A closed finite set of named equations with a designated root.
class TermSystem {
public:
    struct Equation {
        std::string name;
        TermExprPtr syntax;
        Term body;
        VarSet fv;
        bool nullable = false;
    };

    std::size_t size() const { return equations_.size(); }
    const Equation& equation(std::size_t i) const { return equations_.at(i); }
    const std::vector<Equation>& equations() const { return equations_; }
    std::optional<std::size_t> find(const std::string& name) const;

    std::size_t root() const { return root_; }
    const std::string& root_name() const { return equations_.at(root_).name; }
    /// Reference to the root equation.
    Term root_term() const { return ref(root_); }
    Term ref(std::size_t eq, const Substitution& s = {}) const;
    /// Throws SystemError when the name is not defined.
    Term ref(const std::string& name) const;

    /// Body of a Ref node with its pending substitution applied.
    Term unfold(const Term& ref_node) const;

private:
    friend class SystemBuilder;
    std::vector<Equation> equations_;
    std::size_t root_ = 0;
};

/// Collects equations, resolves names and computes the per-equation fixpoints
/// (least free-variable sets, empty-trace acceptance).
class SystemBuilder {
public:
    /// Throws SystemError on duplicate names.
    SystemBuilder& add(std::string name, TermExprPtr body);
    /// Throws SystemError on undefined names or an undefined root.
    TermSystem build(const std::string& root) const;
    /// Root is "Main" if defined, else the first equation.
    TermSystem build() const;

    bool empty() const { return eqs_.empty(); }

private:
    std::vector<std::pair<std::string, TermExprPtr>> eqs_;
};

/// Converts a runtime term back to syntax; Ref nodes become name references
/// using the derived names of `render`.
TermExprPtr to_syntax(const Term& t);

/// An explicit system containing `sys`, one derived equation per reachable
/// instantiated reference (named `Name[x=v]`) and an equation `name` for `t`.
/// Returns the system whose root is that equation.
TermSystem materialize(const TermSystem& sys, const Term& t, const std::string& name = "Residual");

} // namespace tracecalc
