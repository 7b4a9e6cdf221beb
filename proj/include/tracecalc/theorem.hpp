#pragma once

#include "tracecalc/comp_semantics.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tracecalc {

/// The five compositionality claims: ⟦t₁ op t₂⟧ against ⟦t₁⟧ op ⟦t₂⟧ and
/// ⟦{let x; t}⟧ against ⟦t⟧\ₓ.
enum class Claim { Union, Concat, Inter, Shuffle, Let };
const char* claim_name(Claim c);
inline constexpr Claim kBinaryClaims[] = {Claim::Union, Claim::Concat, Claim::Inter, Claim::Shuffle};

enum class Mutation { None, PlainUnion };

struct HarnessOptions {
    std::size_t horizon = 4;
    Reading reading = Reading::Prefix;
    Mutation mutation = Mutation::None;
    std::size_t fuel = 0;
    std::size_t productivity_budget = 2048;
    std::size_t productivity_depth = 48;
    std::size_t productivity_size = 512;
};

struct ClaimResult {
    Claim claim;
    bool equal = true;
    /// Shortest member of the symmetric difference, when unequal.
    std::optional<InstTrace> counterexample;
    /// True when the counterexample belongs to the operational side only.
    bool only_operational = false;
    std::size_t operational_size = 0;
    std::size_t compositional_size = 0;
    std::size_t undetermined = 0;
};

/// Compares one claim. For Claim::Let, `t2` is ignored and `var` names the
/// bound variable.
ClaimResult check_claim(const TermSystem& sys, const EventTypes& types, const std::vector<Event>& alphabet, Claim c,
                        const Term& t1, const Term& t2, const VarName& var, const HarnessOptions& opts);

struct EquivReport {
    bool precondition_ok = true;
    std::string precondition_error;
    std::vector<ClaimResult> claims;
    bool all_equal() const;
};

/// Checks the four binary claims on (t₁, t₂) and the let claim for every
/// free variable of t₁. Non-contractive operands are reported, not compared.
EquivReport check_compositional(const TermSystem& sys, const EventTypes& types, const std::vector<Event>& alphabet,
                                const Term& t1, const Term& t2, const HarnessOptions& opts);

// ---------------------------------------------------------------------------
// Random corpus

struct GeneratorOptions {
    std::size_t max_equations = 4;
    std::size_t max_depth = 3;
    std::vector<Value> pool{Value(0), Value(1)};
};

/// Event types `p(x) matches {kind:"p", v:x}` and `q(x)` likewise.
EventTypes corpus_event_types();

struct GeneratedCase {
    TermSystem sys;
    /// Operands of the binary claims: T0 and T1 with their free variables let-bound.
    Term t1, t2;
    /// Operand of the let claim (T0 as is) and the variable to bind.
    Term open;
    std::optional<VarName> let_var;
    std::size_t attempts = 0;
};

/// Draws a cyclic contractive system of at most `max_equations` equations.
GeneratedCase generate_case(std::mt19937_64& rng, const GeneratorOptions& opts);

/// Let-binds every free variable of t.
Term close_term(const Term& t);

struct CorpusFailure {
    std::size_t case_index = 0;
    std::string system_text;
    std::string t1, t2;
    ClaimResult result;
};

struct CorpusSummary {
    std::size_t cases = 0;
    std::size_t comparisons = 0;
    std::size_t inequalities = 0;
    std::size_t undetermined = 0;
    std::size_t per_claim_failures[5] = {0, 0, 0, 0, 0};
    std::optional<CorpusFailure> first_failure;
    std::vector<std::string> labels;
};

/// Runs the claims over `count` generated cases: the four binary claims on
/// (t1, t2) and the let claim on the open root.
CorpusSummary run_corpus(std::uint64_t seed, std::size_t count, const GeneratorOptions& gen,
                         const HarnessOptions& opts);

} // namespace tracecalc
