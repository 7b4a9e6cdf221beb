#pragma once

#include "tracecalc/term.hpp"

#include <string>
#include <vector>

namespace tracecalc {

/// The finite graph of sub-terms reachable from a term, with references
/// unfolded once per (equation, pending substitution) key.
class TermGraph {
public:
    struct Edge {
        std::size_t to;
        bool guarded;
    };
    struct Vertex {
        Term term;
        std::vector<Edge> out;
    };

    TermGraph(const TermSystem& sys, const Term& root);

    std::size_t root() const { return 0; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
    std::size_t size() const { return vertices_.size(); }

private:
    std::vector<Vertex> vertices_;
};

/// Least solution of the free-variable equations.
VarSet fv(const TermSystem& sys, const Term& t);
/// Least fixpoint of the empty-trace judgement E(t).
bool accepts_empty(const TermSystem& sys, const Term& t);
/// The least set of proper sub-terms reached through the structural clauses.
/// References are transparent: they stand for their unfolded bodies.
std::vector<Term> partof(const TermSystem& sys, const Term& t);
/// True iff some term in partof(t) is in its own partof set.
bool is_cyclic(const TermSystem& sys, const Term& t);

struct ContractivityResult {
    bool contractive = true;
    /// Equation names along one cycle made only of unguarded edges.
    std::vector<std::string> cycle;
    std::string diagnostic;
};

/// Every cycle must pass through the right operand of a concatenation whose
/// left operand does not accept the empty trace.
ContractivityResult check_contractive(const TermSystem& sys, const Term& t);
inline ContractivityResult check_contractive(const TermSystem& sys) { return check_contractive(sys, sys.root_term()); }

} // namespace tracecalc
