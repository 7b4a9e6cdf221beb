#pragma once

// Ground acyclic terms over two zero-arity event types a and b, and a
// behavioural signature used to group terms that step identically.

#include "tracecalc/events.hpp"
#include "tracecalc/interpreter.hpp"
#include "tracecalc/term.hpp"

#include <map>
#include <string>
#include <vector>

namespace tcsupport {

using namespace tracecalc;

inline EventTypes ab_types() {
    EventTypes t;
    t.declare({"a", {}, DataExpr::object({{"e", DataExpr::literal(Value("a"))}})});
    t.declare({"b", {}, DataExpr::object({{"e", DataExpr::literal(Value("b"))}})});
    return t;
}

inline std::vector<Event> ab_alphabet() {
    return {Event(Value::object({{"e", Value("a")}})), Event(Value::object({{"e", Value("b")}}))};
}

inline Term pa() { return mk_pattern({"a", {}}); }
inline Term pb() { return mk_pattern({"b", {}}); }

/// All terms of height ≤ depth built from ε, a, b and the four binary
/// operators. Depth 0 gives the 3 leaves, 1 gives 39, 2 gives 6087.
inline std::vector<Term> acyclic_terms(int depth) {
    std::vector<Term> cur{mk_empty(), pa(), pb()};
    for (int d = 0; d < depth; ++d) {
        std::vector<Term> next{mk_empty(), pa(), pb()};
        for (TermKind k : {TermKind::Cat, TermKind::And, TermKind::Or, TermKind::Shuffle})
            for (const auto& l : cur)
                for (const auto& r : cur)
                    next.push_back(mk_binary(k, l, r));
        cur = std::move(next);
    }
    return cur;
}

/// Two bits per word of length ≤ k (in length-lexicographic order): can the
/// term consume it, and does the residual accept λ.
inline std::string step_signature(const TermSystem& sys, const EventTypes& types, const std::vector<Event>& alpha,
                                  const Term& t, std::size_t k) {
    std::string sig;
    std::vector<Term> level{t};
    sig += t->nullable() ? 'N' : 'S';
    for (std::size_t d = 0; d < k; ++d) {
        std::vector<Term> next;
        for (const auto& r : level) {
            for (const auto& e : alpha) {
                if (!r) {
                    sig += '-';
                    next.push_back(nullptr);
                    continue;
                }
                auto s = step(sys, types, r, e);
                if (!s) {
                    sig += '-';
                    next.push_back(nullptr);
                } else {
                    Term n = apply_subst(s->next, s->sigma);
                    sig += n->nullable() ? 'N' : 'S';
                    next.push_back(n);
                }
            }
        }
        level = std::move(next);
    }
    return sig;
}

/// Groups terms by signature; returns one representative per class in order
/// of first appearance.
inline std::vector<Term> class_representatives(const std::vector<Term>& terms, const TermSystem& sys,
                                               const EventTypes& types, const std::vector<Event>& alpha,
                                               std::size_t k) {
    std::map<std::string, std::size_t> seen;
    std::vector<Term> reps;
    for (const auto& t : terms)
        if (seen.emplace(step_signature(sys, types, alpha, t, k), reps.size()).second)
            reps.push_back(t);
    return reps;
}

} // namespace tcsupport
