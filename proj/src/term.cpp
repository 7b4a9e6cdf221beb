#include "tracecalc/term.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace tracecalc {

bool is_binary(TermKind k) {
    return k == TermKind::Cat || k == TermKind::And || k == TermKind::Or || k == TermKind::Shuffle;
}

Term mk_empty() {
    static const Term eps = [] {
        auto n = std::make_shared<TermNode>();
        n->kind_ = TermKind::Empty;
        n->nullable_ = true;
        return Term(n);
    }();
    return eps;
}

Term mk_pattern(EventPattern p) {
    auto n = std::make_shared<TermNode>();
    n->kind_ = TermKind::Pattern;
    n->fv_ = pfv(p);
    n->pattern_ = std::move(p);
    n->nullable_ = false;
    return n;
}

Term mk_binary(TermKind k, Term l, Term r) {
    if (!is_binary(k))
        throw std::invalid_argument("mk_binary: not a binary operator");
    auto n = std::make_shared<TermNode>();
    n->kind_ = k;
    n->fv_ = l->fv_;
    n->fv_.insert(r->fv_.begin(), r->fv_.end());
    n->nullable_ = k == TermKind::Or ? (l->nullable_ || r->nullable_) : (l->nullable_ && r->nullable_);
    n->size_ = 1 + l->size_ + r->size_;
    n->left_ = std::move(l);
    n->right_ = std::move(r);
    return n;
}

Term mk_let(VarName x, Term body) {
    auto n = std::make_shared<TermNode>();
    n->kind_ = TermKind::Let;
    n->fv_ = body->fv_;
    n->fv_.erase(x);
    n->nullable_ = body->nullable_;
    n->size_ = 1 + body->size_;
    n->var_ = std::move(x);
    n->left_ = std::move(body);
    return n;
}

Term mk_ref(std::size_t eq, std::string name, VarSet eq_fv, bool eq_nullable, Substitution s) {
    auto n = std::make_shared<TermNode>();
    n->kind_ = TermKind::Ref;
    n->eq_ = eq;
    n->var_ = std::move(name);
    n->subst_ = s.restricted_to(eq_fv);
    for (const auto& [x, v] : n->subst_.bindings())
        eq_fv.erase(x);
    n->fv_ = std::move(eq_fv);
    n->nullable_ = eq_nullable;
    return n;
}

Term apply_subst(const Term& t, const Substitution& s) {
    if (s.empty() || t->fv_.empty())
        return t;
    Substitution r = s.restricted_to(t->fv_);
    if (r.empty())
        return t;
    switch (t->kind_) {
    case TermKind::Empty: return t;
    case TermKind::Pattern: return mk_pattern(apply_subst(t->pattern_, r));
    case TermKind::Cat:
    case TermKind::And:
    case TermKind::Or:
    case TermKind::Shuffle: {
        Term l = apply_subst(t->left_, r);
        Term rr = apply_subst(t->right_, r);
        if (l == t->left_ && rr == t->right_)
            return t;
        return mk_binary(t->kind_, std::move(l), std::move(rr));
    }
    case TermKind::Let: {
        Term b = apply_subst(t->left_, r.without(t->var_));
        if (b == t->left_)
            return t;
        return mk_let(t->var_, std::move(b));
    }
    case TermKind::Ref: {
        auto n = std::make_shared<TermNode>(*t);
        // r is restricted to the reference's free variables, which exclude
        // the pending substitution's domain, so the merge cannot conflict.
        n->subst_ = *merge(t->subst_, r);
        for (const auto& [x, v] : r.bindings())
            n->fv_.erase(x);
        return n;
    }
    }
    return t;
}

bool same_term(const Term& a, const Term& b) {
    if (a == b)
        return true;
    if (a->kind() != b->kind())
        return false;
    switch (a->kind()) {
    case TermKind::Empty: return true;
    case TermKind::Pattern: return a->pattern() == b->pattern();
    case TermKind::Cat:
    case TermKind::And:
    case TermKind::Or:
    case TermKind::Shuffle: return same_term(a->left(), b->left()) && same_term(a->right(), b->right());
    case TermKind::Let: return a->var() == b->var() && same_term(a->body(), b->body());
    case TermKind::Ref: return a->equation() == b->equation() && a->ref_subst() == b->ref_subst();
    }
    return false;
}

namespace {

int level(TermKind k) {
    switch (k) {
    case TermKind::Or: return 1;
    case TermKind::And: return 2;
    case TermKind::Shuffle: return 3;
    case TermKind::Cat: return 4;
    default: return 5;
    }
}

const char* op_text(TermKind k) {
    switch (k) {
    case TermKind::Or: return " \\/ ";
    case TermKind::And: return " /\\ ";
    case TermKind::Shuffle: return " | ";
    case TermKind::Cat: return " ";
    default: return "";
    }
}

std::string ref_name(const TermNode& n) {
    if (n.ref_subst().empty())
        return n.equation_name();
    std::string out = n.equation_name() + "[";
    bool first = true;
    for (const auto& [x, v] : n.ref_subst().bindings()) {
        if (!first)
            out += ",";
        first = false;
        out += x + "=" + v.to_json();
    }
    return out + "]";
}

void render_into(const Term& t, std::string& out) {
    switch (t->kind()) {
    case TermKind::Empty: out += "empty"; return;
    case TermKind::Pattern: out += t->pattern().render(); return;
    case TermKind::Let:
        out += "{let " + t->var() + "; ";
        render_into(t->body(), out);
        out += "}";
        return;
    case TermKind::Ref: out += ref_name(*t); return;
    default: break;
    }
    const int lv = level(t->kind());
    bool pl = level(t->left()->kind()) < lv;
    bool pr = level(t->right()->kind()) <= lv;
    if (pl)
        out += "(";
    render_into(t->left(), out);
    if (pl)
        out += ")";
    out += op_text(t->kind());
    if (pr)
        out += "(";
    render_into(t->right(), out);
    if (pr)
        out += ")";
}

} // namespace

std::string render(const Term& t) {
    std::string out;
    render_into(t, out);
    return out;
}

std::size_t term_size(const Term& t) { return t->size(); }

// ---------------------------------------------------------------------------

TermExprPtr TermExpr::empty(SourcePos p) {
    auto e = std::make_shared<TermExpr>();
    e->kind = Kind::Empty;
    e->pos = p;
    return e;
}

TermExprPtr TermExpr::pat(EventPattern pattern, SourcePos p) {
    auto e = std::make_shared<TermExpr>();
    e->kind = Kind::Pattern;
    e->pattern = std::move(pattern);
    e->pos = p;
    return e;
}

TermExprPtr TermExpr::binary(Kind k, TermExprPtr l, TermExprPtr r, SourcePos p) {
    auto e = std::make_shared<TermExpr>();
    e->kind = k;
    e->a = std::move(l);
    e->b = std::move(r);
    e->pos = p;
    return e;
}

TermExprPtr TermExpr::let(std::string var, TermExprPtr body, SourcePos p) {
    auto e = std::make_shared<TermExpr>();
    e->kind = Kind::Let;
    e->name = std::move(var);
    e->a = std::move(body);
    e->pos = p;
    return e;
}

TermExprPtr TermExpr::ref(std::string name, SourcePos p) {
    auto e = std::make_shared<TermExpr>();
    e->kind = Kind::Name;
    e->name = std::move(name);
    e->pos = p;
    return e;
}

bool same_syntax(const TermExprPtr& a, const TermExprPtr& b) {
    if (a == b)
        return true;
    if (!a || !b || a->kind != b->kind)
        return false;
    switch (a->kind) {
    case TermExpr::Kind::Empty: return true;
    case TermExpr::Kind::Pattern: return a->pattern == b->pattern;
    case TermExpr::Kind::Name: return a->name == b->name;
    case TermExpr::Kind::Let: return a->name == b->name && same_syntax(a->a, b->a);
    default: return same_syntax(a->a, b->a) && same_syntax(a->b, b->b);
    }
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> TermSystem::find(const std::string& name) const {
    for (std::size_t i = 0; i < equations_.size(); ++i)
        if (equations_[i].name == name)
            return i;
    return std::nullopt;
}

Term TermSystem::ref(std::size_t eq, const Substitution& s) const {
    const Equation& e = equations_.at(eq);
    return mk_ref(eq, e.name, e.fv, e.nullable, s);
}

Term TermSystem::ref(const std::string& name) const {
    auto i = find(name);
    if (!i)
        throw SystemError("undefined equation '" + name + "'");
    return ref(*i);
}

Term TermSystem::unfold(const Term& r) const {
    if (r->kind() != TermKind::Ref)
        throw std::invalid_argument("unfold: not a reference");
    return apply_subst(equations_.at(r->equation()).body, r->ref_subst());
}

SystemBuilder& SystemBuilder::add(std::string name, TermExprPtr body) {
    for (const auto& [n, b] : eqs_)
        if (n == name)
            throw SystemError("equation '" + name + "' defined twice", body ? body->pos : SourcePos{});
    eqs_.emplace_back(std::move(name), std::move(body));
    return *this;
}

TermSystem SystemBuilder::build() const {
    if (eqs_.empty())
        throw SystemError("no equations");
    for (const auto& [n, b] : eqs_)
        if (n == "Main")
            return build(n);
    return build(eqs_.front().first);
}

namespace {

using Kind = TermExpr::Kind;

void resolve_names(const TermExprPtr& e, const std::map<std::string, std::size_t>& index) {
    switch (e->kind) {
    case Kind::Empty:
    case Kind::Pattern: return;
    case Kind::Name:
        if (!index.count(e->name))
            throw SystemError("undefined equation '" + e->name + "'", e->pos);
        return;
    case Kind::Let: resolve_names(e->a, index); return;
    default:
        resolve_names(e->a, index);
        resolve_names(e->b, index);
    }
}

VarSet expr_fv(const TermExprPtr& e, const std::map<std::string, std::size_t>& index, const std::vector<VarSet>& tab) {
    switch (e->kind) {
    case Kind::Empty: return {};
    case Kind::Pattern: return pfv(e->pattern);
    case Kind::Name: return tab[index.at(e->name)];
    case Kind::Let: {
        VarSet s = expr_fv(e->a, index, tab);
        s.erase(e->name);
        return s;
    }
    default: {
        VarSet s = expr_fv(e->a, index, tab);
        VarSet r = expr_fv(e->b, index, tab);
        s.insert(r.begin(), r.end());
        return s;
    }
    }
}

bool expr_nullable(const TermExprPtr& e, const std::map<std::string, std::size_t>& index,
                   const std::vector<bool>& tab) {
    switch (e->kind) {
    case Kind::Empty: return true;
    case Kind::Pattern: return false;
    case Kind::Name: return tab[index.at(e->name)];
    case Kind::Let: return expr_nullable(e->a, index, tab);
    case Kind::Or: return expr_nullable(e->a, index, tab) || expr_nullable(e->b, index, tab);
    default: return expr_nullable(e->a, index, tab) && expr_nullable(e->b, index, tab);
    }
}

TermKind runtime_kind(Kind k) {
    switch (k) {
    case Kind::Cat: return TermKind::Cat;
    case Kind::And: return TermKind::And;
    case Kind::Or: return TermKind::Or;
    case Kind::Shuffle: return TermKind::Shuffle;
    default: throw std::logic_error("not a binary syntax node");
    }
}

} // namespace

TermSystem SystemBuilder::build(const std::string& root) const {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < eqs_.size(); ++i)
        index.emplace(eqs_[i].first, i);
    auto rit = index.find(root);
    if (rit == index.end())
        throw SystemError("root equation '" + root + "' is not defined");
    for (const auto& [n, b] : eqs_) {
        if (!b)
            throw SystemError("equation '" + n + "' has no body");
        resolve_names(b, index);
    }

    const std::size_t n = eqs_.size();
    // Least fixpoints by Kleene iteration from the bottom element.
    std::vector<VarSet> fv(n);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            VarSet s = expr_fv(eqs_[i].second, index, fv);
            if (s != fv[i]) {
                fv[i] = std::move(s);
                changed = true;
            }
        }
    }
    std::vector<bool> nullable(n, false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            bool b = expr_nullable(eqs_[i].second, index, nullable);
            if (b != nullable[i]) {
                nullable[i] = b;
                changed = true;
            }
        }
    }

    TermSystem sys;
    sys.root_ = rit->second;
    for (std::size_t i = 0; i < n; ++i)
        sys.equations_.push_back({eqs_[i].first, eqs_[i].second, nullptr, fv[i], nullable[i]});

    auto convert = [&](auto&& self, const TermExprPtr& e) -> Term {
        switch (e->kind) {
        case Kind::Empty: return mk_empty();
        case Kind::Pattern: return mk_pattern(e->pattern);
        case Kind::Name: return sys.ref(index.at(e->name));
        case Kind::Let: return mk_let(e->name, self(self, e->a));
        default: return mk_binary(runtime_kind(e->kind), self(self, e->a), self(self, e->b));
        }
    };
    for (std::size_t i = 0; i < n; ++i)
        sys.equations_[i].body = convert(convert, eqs_[i].second);
    return sys;
}

TermExprPtr to_syntax(const Term& t) {
    switch (t->kind()) {
    case TermKind::Empty: return TermExpr::empty();
    case TermKind::Pattern: return TermExpr::pat(t->pattern());
    case TermKind::Let: return TermExpr::let(t->var(), to_syntax(t->body()));
    case TermKind::Ref: return TermExpr::ref(ref_name(*t));
    case TermKind::Cat: return TermExpr::binary(Kind::Cat, to_syntax(t->left()), to_syntax(t->right()));
    case TermKind::And: return TermExpr::binary(Kind::And, to_syntax(t->left()), to_syntax(t->right()));
    case TermKind::Or: return TermExpr::binary(Kind::Or, to_syntax(t->left()), to_syntax(t->right()));
    case TermKind::Shuffle: return TermExpr::binary(Kind::Shuffle, to_syntax(t->left()), to_syntax(t->right()));
    }
    return nullptr;
}

namespace {

void collect_refs(const Term& t, std::vector<Term>& out) {
    switch (t->kind()) {
    case TermKind::Ref: out.push_back(t); return;
    case TermKind::Let: collect_refs(t->body(), out); return;
    case TermKind::Empty:
    case TermKind::Pattern: return;
    default:
        collect_refs(t->left(), out);
        collect_refs(t->right(), out);
    }
}

} // namespace

TermSystem materialize(const TermSystem& sys, const Term& t, const std::string& name) {
    SystemBuilder b;
    for (const auto& e : sys.equations())
        b.add(e.name, to_syntax(e.body));
    std::set<std::string> done;
    std::deque<Term> todo;
    std::vector<Term> refs;
    collect_refs(t, refs);
    todo.insert(todo.end(), refs.begin(), refs.end());
    while (!todo.empty()) {
        Term r = todo.front();
        todo.pop_front();
        if (r->ref_subst().empty())
            continue;
        std::string derived = ref_name(*r);
        if (!done.insert(derived).second)
            continue;
        Term body = sys.unfold(r);
        b.add(derived, to_syntax(body));
        refs.clear();
        collect_refs(body, refs);
        todo.insert(todo.end(), refs.begin(), refs.end());
    }
    b.add(name, to_syntax(t));
    return b.build(name);
}

} // namespace tracecalc
