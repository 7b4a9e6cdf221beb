#include "tracecalc/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace tracecalc {

TermGraph::TermGraph(const TermSystem& sys, const Term& root) {
    std::unordered_map<const TermNode*, std::size_t> by_ptr;
    std::map<std::string, std::size_t> by_ref;

    auto intern = [&](const Term& t, std::vector<std::size_t>& work) -> std::size_t {
        if (t->kind() == TermKind::Ref) {
            std::string key = std::to_string(t->equation()) + "|" + t->ref_subst().render();
            auto [it, fresh] = by_ref.emplace(key, vertices_.size());
            if (fresh) {
                vertices_.push_back({t, {}});
                work.push_back(it->second);
            }
            return it->second;
        }
        auto [it, fresh] = by_ptr.emplace(t.get(), vertices_.size());
        if (fresh) {
            vertices_.push_back({t, {}});
            work.push_back(it->second);
        }
        return it->second;
    };

    std::vector<std::size_t> work;
    intern(root, work);
    while (!work.empty()) {
        std::size_t v = work.back();
        work.pop_back();
        Term t = vertices_[v].term;
        std::vector<Edge> out;
        switch (t->kind()) {
        case TermKind::Empty:
        case TermKind::Pattern: break;
        case TermKind::Ref: out.push_back({intern(sys.unfold(t), work), false}); break;
        case TermKind::Let: out.push_back({intern(t->body(), work), false}); break;
        default:
            out.push_back({intern(t->left(), work), false});
            out.push_back({intern(t->right(), work), false});
        }
        vertices_[v].out = std::move(out);
    }

    // Guard classification needs E on the left operand of each concatenation.
    std::vector<bool> nullable(vertices_.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            const auto& vx = vertices_[v];
            bool b = false;
            switch (vx.term->kind()) {
            case TermKind::Empty: b = true; break;
            case TermKind::Pattern: b = false; break;
            case TermKind::Ref:
            case TermKind::Let: b = nullable[vx.out[0].to]; break;
            case TermKind::Or: b = nullable[vx.out[0].to] || nullable[vx.out[1].to]; break;
            default: b = nullable[vx.out[0].to] && nullable[vx.out[1].to];
            }
            if (b && !nullable[v]) {
                nullable[v] = true;
                changed = true;
            }
        }
    }
    for (auto& vx : vertices_)
        if (vx.term->kind() == TermKind::Cat)
            vx.out[1].guarded = !nullable[vx.out[0].to];
}

VarSet fv(const TermSystem& sys, const Term& t) {
    TermGraph g(sys, t);
    std::vector<VarSet> s(g.size());
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < g.size(); ++v) {
            const auto& vx = g.vertex(v);
            VarSet n;
            switch (vx.term->kind()) {
            case TermKind::Empty: break;
            case TermKind::Pattern: n = pfv(vx.term->pattern()); break;
            case TermKind::Let:
                n = s[vx.out[0].to];
                n.erase(vx.term->var());
                break;
            default:
                for (const auto& e : vx.out)
                    n.insert(s[e.to].begin(), s[e.to].end());
            }
            if (n != s[v]) {
                s[v] = std::move(n);
                changed = true;
            }
        }
    }
    return s[g.root()];
}

bool accepts_empty(const TermSystem& sys, const Term& t) {
    TermGraph g(sys, t);
    std::vector<bool> e(g.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < g.size(); ++v) {
            const auto& vx = g.vertex(v);
            bool b = false;
            switch (vx.term->kind()) {
            case TermKind::Empty: b = true; break;
            case TermKind::Pattern: b = false; break;
            case TermKind::Ref:
            case TermKind::Let: b = e[vx.out[0].to]; break;
            case TermKind::Or: b = e[vx.out[0].to] || e[vx.out[1].to]; break;
            default: b = e[vx.out[0].to] && e[vx.out[1].to];
            }
            if (b != e[v]) {
                e[v] = b;
                changed = true;
            }
        }
    }
    return e[g.root()];
}

namespace {

// Vertices reachable from `from` through at least one edge.
std::vector<bool> reach_strict(const TermGraph& g, std::size_t from) {
    std::vector<bool> seen(g.size(), false);
    std::vector<std::size_t> stack;
    for (const auto& e : g.vertex(from).out)
        stack.push_back(e.to);
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        if (seen[v])
            continue;
        seen[v] = true;
        for (const auto& e : g.vertex(v).out)
            stack.push_back(e.to);
    }
    return seen;
}

} // namespace

std::vector<Term> partof(const TermSystem& sys, const Term& t) {
    TermGraph g(sys, t);
    auto seen = reach_strict(g, g.root());
    std::vector<Term> out;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (seen[v] && g.vertex(v).term->kind() != TermKind::Ref)
            out.push_back(g.vertex(v).term);
    return out;
}

bool is_cyclic(const TermSystem& sys, const Term& t) {
    TermGraph g(sys, t);
    auto seen = reach_strict(g, g.root());
    for (std::size_t v = 0; v < g.size(); ++v)
        if (seen[v] && g.vertex(v).term->kind() != TermKind::Ref && reach_strict(g, v)[v])
            return true;
    return false;
}

ContractivityResult check_contractive(const TermSystem& sys, const Term& t) {
    TermGraph g(sys, t);
    enum Color : std::uint8_t { White, Grey, Black };
    std::vector<Color> color(g.size(), White);
    std::vector<std::size_t> parent(g.size(), SIZE_MAX);

    // Iterative DFS restricted to unguarded edges.
    struct Frame {
        std::size_t v;
        std::size_t next;
    };
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (color[start] != White)
            continue;
        std::vector<Frame> stack{{start, 0}};
        color[start] = Grey;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& out = g.vertex(f.v).out;
            if (f.next == out.size()) {
                color[f.v] = Black;
                stack.pop_back();
                continue;
            }
            const auto& e = out[f.next++];
            if (e.guarded)
                continue;
            if (color[e.to] == Grey) {
                ContractivityResult r;
                r.contractive = false;
                std::vector<std::size_t> cyc;
                auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& fr) { return fr.v == e.to; });
                for (; it != stack.end(); ++it)
                    cyc.push_back(it->v);
                for (std::size_t v : cyc) {
                    const Term& n = g.vertex(v).term;
                    if (n->kind() == TermKind::Ref &&
                        std::find(r.cycle.begin(), r.cycle.end(), n->equation_name()) == r.cycle.end())
                        r.cycle.push_back(n->equation_name());
                }
                std::string path;
                for (const auto& name : r.cycle)
                    path += name + " -> ";
                if (!r.cycle.empty())
                    path += r.cycle.front();
                r.diagnostic = "unguarded cycle through " + path +
                               ": every recursive occurrence must follow a concatenation whose left operand "
                               "does not accept the empty trace";
                return r;
            }
            if (color[e.to] == White) {
                color[e.to] = Grey;
                stack.push_back({e.to, 0});
            }
        }
    }
    return {};
}

} // namespace tracecalc
