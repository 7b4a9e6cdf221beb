#include "tracecalc/interpreter.hpp"

#include <algorithm>

namespace tracecalc {

std::size_t default_fuel(const TermSystem& sys) { return 10 * std::max<std::size_t>(sys.size(), 1); }

namespace {

struct Stepper {
    const TermSystem& sys;
    const EventTypes& types;
    const Event& e;
    std::size_t fuel;

    StepOutcome go(const Term& t, std::size_t depth) const {
        switch (t->kind()) {
        case TermKind::Empty: return std::nullopt;
        case TermKind::Pattern: {
            auto s = match_event(types, e, t->pattern());
            if (!s)
                return std::nullopt;
            return Stepped{mk_empty(), std::move(*s)};
        }
        case TermKind::Or: {
            if (auto l = go(t->left(), depth))
                return l;
            return go(t->right(), depth);
        }
        case TermKind::And: {
            auto l = go(t->left(), depth);
            if (!l)
                return std::nullopt;
            auto r = go(t->right(), depth);
            if (!r)
                return std::nullopt;
            auto m = merge(l->sigma, r->sigma);
            if (!m)
                return std::nullopt;
            return Stepped{mk_and(std::move(l->next), std::move(r->next)), std::move(*m)};
        }
        case TermKind::Shuffle: {
            if (auto l = go(t->left(), depth))
                return Stepped{mk_shuffle(std::move(l->next), t->right()), std::move(l->sigma)};
            if (auto r = go(t->right(), depth))
                return Stepped{mk_shuffle(t->left(), std::move(r->next)), std::move(r->sigma)};
            return std::nullopt;
        }
        case TermKind::Cat: {
            if (auto l = go(t->left(), depth))
                return Stepped{mk_cat(std::move(l->next), t->right()), std::move(l->sigma)};
            if (!t->left()->nullable())
                return std::nullopt;
            return go(t->right(), depth);
        }
        case TermKind::Let: {
            auto b = go(t->body(), depth);
            if (!b)
                return std::nullopt;
            if (b->sigma.contains(t->var()))
                return Stepped{apply_subst(b->next, b->sigma.only(t->var())), b->sigma.without(t->var())};
            return Stepped{mk_let(t->var(), std::move(b->next)), std::move(b->sigma)};
        }
        case TermKind::Ref: {
            if (depth >= fuel)
                throw FuelExhausted("step needed more than " + std::to_string(fuel) +
                                    " nested unfoldings (through '" + t->equation_name() + "')");
            return go(sys.unfold(t), depth + 1);
        }
        }
        return std::nullopt;
    }
};

} // namespace

StepOutcome step(const TermSystem& sys, const EventTypes& types, const Term& t, const Event& e, std::size_t fuel) {
    return Stepper{sys, types, e, fuel ? fuel : default_fuel(sys)}.go(t, 0);
}

RunResult run(const TermSystem& sys, const EventTypes& types, const Term& t, const std::vector<Event>& events,
              std::size_t fuel) {
    RunResult r;
    r.residual = t;
    for (std::size_t i = 0; i < events.size(); ++i) {
        auto s = step(sys, types, r.residual, events[i], fuel);
        if (!s) {
            r.rejected = true;
            r.rejected_at = i;
            r.accepted = false;
            return r;
        }
        if (!s->sigma.disjoint_from(r.accumulated))
            throw InvariantViolation("step " + std::to_string(i) + " rebinds a variable: " + s->sigma.render());
        for (const auto& [x, v] : s->sigma.bindings())
            if (!t->free_vars().count(x))
                throw InvariantViolation("step " + std::to_string(i) + " binds '" + x +
                                         "', which is not free in the monitored term");
        r.residual = apply_subst(s->next, s->sigma);
        r.accumulated = *merge(r.accumulated, s->sigma);
        r.steps.push_back(std::move(s->sigma));
        ++r.consumed;
    }
    r.accepted = r.residual->nullable();
    return r;
}

MonitorState session_new(std::shared_ptr<const TermSystem> sys, std::shared_ptr<const EventTypes> types,
                         std::size_t fuel) {
    Term root = sys->root_term();
    auto c = check_contractive(*sys, root);
    if (!c.contractive)
        throw NotContractive(std::move(c));
    MonitorState m;
    m.root = root;
    m.current = root;
    m.sys = std::move(sys);
    m.types = std::move(types);
    m.fuel = fuel;
    return m;
}

FeedResult session_feed(const MonitorState& state, const Event& e) {
    if (state.violated)
        throw FeedAfterViolation("monitor already reported a violation");
    FeedResult out{state, FeedStatus::Ok};
    auto s = step(*state.sys, *state.types, state.current, e, state.fuel);
    if (!s) {
        out.state.violated = true;
        out.status = FeedStatus::Violation;
        return out;
    }
    if (!s->sigma.disjoint_from(state.accumulated))
        throw InvariantViolation("step rebinds a variable: " + s->sigma.render());
    out.state.current = apply_subst(s->next, s->sigma);
    out.state.accumulated = *merge(state.accumulated, s->sigma);
    ++out.state.consumed;
    return out;
}

SessionStatus session_status(const MonitorState& state) {
    return {state.consumed, !state.violated && state.current->nullable(), state.violated, state.accumulated};
}

} // namespace tracecalc
