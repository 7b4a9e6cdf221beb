#pragma once

#include "tracecalc/analysis.hpp"
#include "tracecalc/events.hpp"
#include "tracecalc/term.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tracecalc {

class FuelExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotContractive : public std::runtime_error {
public:
    explicit NotContractive(ContractivityResult r) : std::runtime_error(r.diagnostic), result(std::move(r)) {}
    ContractivityResult result;
};

class FeedAfterViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An internal law (disjoint step domains, step domains within the root's
/// free variables) failed during a run.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Stepped {
    Term next;
    Substitution sigma;
};
/// nullopt encodes "cannot step".
using StepOutcome = std::optional<Stepped>;

/// Default bound on nested reference unfoldings per step.
std::size_t default_fuel(const TermSystem& sys);

/// One transition t →ᵉ t′;σ of the deterministic rule set. Throws
/// FuelExhausted when more than `fuel` nested unfoldings are needed, which
/// only happens on non-contractive terms. fuel 0 selects the default.
StepOutcome step(const TermSystem& sys, const EventTypes& types, const Term& t, const Event& e, std::size_t fuel = 0);

struct RunResult {
    bool rejected = false;
    /// Index of the first event that could not be consumed.
    std::size_t rejected_at = 0;
    std::size_t consumed = 0;
    /// Residual after the consumed prefix (σt′ at each step).
    Term residual;
    /// Union of the per-step substitutions.
    Substitution accumulated;
    std::vector<Substitution> steps;
    /// E(residual); false when rejected.
    bool accepted = false;
};

RunResult run(const TermSystem& sys, const EventTypes& types, const Term& t, const std::vector<Event>& events,
              std::size_t fuel = 0);

/// Running monitor: a value advanced one event at a time.
struct MonitorState {
    std::shared_ptr<const TermSystem> sys;
    std::shared_ptr<const EventTypes> types;
    Term root;
    Term current;
    std::size_t consumed = 0;
    Substitution accumulated;
    bool violated = false;
    std::size_t fuel = 0;
};

enum class FeedStatus { Ok, Violation };

struct FeedResult {
    MonitorState state;
    FeedStatus status;
};

struct SessionStatus {
    std::size_t consumed;
    bool accepting;
    bool violated;
    Substitution accumulated;
};

/// Throws NotContractive when the root is not contractive.
MonitorState session_new(std::shared_ptr<const TermSystem> sys, std::shared_ptr<const EventTypes> types,
                         std::size_t fuel = 0);
/// Throws FeedAfterViolation on a state that has already been violated.
FeedResult session_feed(const MonitorState& state, const Event& e);
SessionStatus session_status(const MonitorState& state);

} // namespace tracecalc
