#include "doctest.h"

#include "support/acyclic.hpp"
#include "support/fixtures.hpp"
#include "tracecalc/analysis.hpp"
#include "tracecalc/comp_semantics.hpp"
#include "tracecalc/theorem.hpp"

#include <random>

using namespace tracecalc;
using namespace tcsupport;

namespace {

struct Corpus {
    EventTypes types = corpus_event_types();
    std::vector<Event> alpha;
    Corpus() {
        for (auto& a : build_alphabet(types, {Value(0), Value(1)}))
            alpha.push_back(a.event);
    }
};

ParsedSpec ab(const std::string& body) { return parse_spec(ab_decls() + body); }

} // namespace

TEST_CASE("step on the fd spec drops the let and keeps the cycle") {
    auto s = parse_spec(fd_spec());
    auto r = step(s.system, s.types, s.system.root_term(), open_ev(42));
    REQUIRE(r);
    CHECK(r->sigma.empty());
    // residuals are kept verbatim, no simplification of ε
    CHECK(render(r->next) == "empty close(42) Main");
    CHECK_FALSE(step(s.system, s.types, r->next, close_ev(43)));
    auto r2 = step(s.system, s.types, r->next, close_ev(42));
    REQUIRE(r2);
    CHECK(render(r2->next) == "empty Main");
}

TEST_CASE("empty never steps") {
    auto s = parse_spec(fd_spec());
    CHECK_FALSE(step(s.system, s.types, mk_empty(), open_ev(1)));
}

TEST_CASE("concatenation prefers its left operand") {
    TermSystem sys;
    auto types = ab_types();
    auto alpha = ab_alphabet();
    Term t = mk_cat(mk_or(pa(), mk_empty()), mk_or(mk_cat(pa(), pb()), mk_empty()));
    auto r = step(sys, types, t, alpha[0]);
    REQUIRE(r);
    CHECK(render(r->next) == "empty (a() b() \\/ empty)");
    CHECK_FALSE(step(sys, types, t, alpha[1]));
}

TEST_CASE("union prefers its left operand") {
    auto s = ab("Main = a() b() \\/ a() a();");
    auto types = s.types;
    auto r = step(s.system, types, s.system.root_term(), ab_alphabet()[0]);
    REQUIRE(r);
    CHECK(render(r->next) == "empty b()");
    // and falls back to the right one
    auto u = ab("Main = b() \\/ a() a();");
    auto r2 = step(u.system, u.types, u.system.root_term(), ab_alphabet()[0]);
    REQUIRE(r2);
    CHECK(render(r2->next) == "empty a()");
}

TEST_CASE("shuffle tries left first, intersection merges") {
    auto s = parse_spec(std::string(kFdTypes) + "Main = open(x) | open(y);");
    auto r = step(s.system, s.types, s.system.root_term(), open_ev(3));
    REQUIRE(r);
    CHECK(r->sigma == Substitution{{"x", Value(3)}});
    CHECK(render(r->next) == "empty | open(y)");

    auto i = parse_spec(std::string(kFdTypes) + "Main = open(x) /\\ open(y);");
    auto r2 = step(i.system, i.types, i.system.root_term(), open_ev(3));
    REQUIRE(r2);
    CHECK(r2->sigma == Substitution{{"x", Value(3)}, {"y", Value(3)}});
    CHECK(render(r2->next) == "empty /\\ empty");

    // conflicting bindings block the step
    auto c = parse_spec(std::string(kFdTypes) + "Main = {let x; open(x) close(x)} /\\ open(x) close(5);");
    auto t = c.system.root_term();
    auto r3 = step(c.system, c.types, t, open_ev(4));
    REQUIRE(r3);
    Term n = apply_subst(r3->next, r3->sigma);
    CHECK_FALSE(step(c.system, c.types, n, close_ev(4)));
    CHECK_FALSE(step(c.system, c.types, n, close_ev(5)));
}

TEST_CASE("non-contractive terms exhaust the fuel") {
    auto s = ab("T = T a();");
    CHECK_THROWS_AS(step(s.system, s.types, s.system.root_term(), ab_alphabet()[0]), FuelExhausted);
    CHECK_THROWS_AS(step(s.system, s.types, s.system.root_term(), ab_alphabet()[0], 3), FuelExhausted);
}

TEST_CASE("run") {
    auto s = parse_spec(fd_spec());
    auto ok = run(s.system, s.types, s.system.root_term(), {open_ev(42), close_ev(42), open_ev(17), close_ev(17)});
    CHECK_FALSE(ok.rejected);
    CHECK(ok.consumed == 4);
    // the recursion has no way out, so the trace is a prefix only
    CHECK_FALSE(ok.accepted);

    auto nul = parse_spec(fd_spec_nullable());
    auto acc = run(nul.system, nul.types, nul.system.root_term(), {open_ev(42), close_ev(42), open_ev(17), close_ev(17)});
    CHECK_FALSE(acc.rejected);
    CHECK(acc.accepted);

    auto bad = run(s.system, s.types, s.system.root_term(), {open_ev(42), close_ev(43)});
    CHECK(bad.rejected);
    CHECK(bad.rejected_at == 1);
    CHECK(bad.consumed == 1);

    auto e = parse_spec("Main = empty;");
    auto r = run(e.system, e.types, e.system.root_term(), {});
    CHECK(r.accepted);
}

TEST_CASE("sessions") {
    auto s = parse_spec(fd_spec());
    auto sys = std::make_shared<const TermSystem>(s.system);
    auto types = std::make_shared<const EventTypes>(s.types);
    auto m = session_new(sys, types);
    auto f = session_feed(m, open_ev(42));
    CHECK(f.status == FeedStatus::Ok);
    CHECK_FALSE(session_status(f.state).accepting);
    CHECK(session_status(f.state).consumed == 1);
    auto g = session_feed(f.state, close_ev(1));
    CHECK(g.status == FeedStatus::Violation);
    CHECK_THROWS_AS(session_feed(g.state, close_ev(42)), FeedAfterViolation);

    auto e = parse_spec(ab_decls() + "Main = empty;");
    auto es = session_new(std::make_shared<const TermSystem>(e.system), std::make_shared<const EventTypes>(e.types));
    auto st = session_status(es);
    CHECK(st.consumed == 0);
    CHECK(st.accepting);
    CHECK(session_feed(es, ab_alphabet()[0]).status == FeedStatus::Violation);

    auto nc = ab("T = T \\/ T;");
    CHECK_THROWS_AS(session_new(std::make_shared<const TermSystem>(nc.system), std::make_shared<const EventTypes>(nc.types)),
                    NotContractive);
}

TEST_CASE("step laws over the generated corpus") {
    Corpus c;
    std::mt19937_64 rng(21);
    GeneratorOptions go;
    std::size_t steps = 0;
    for (int i = 0; i < 200; ++i) {
        auto g = generate_case(rng, go);
        const VarSet root_fv = g.open->free_vars();
        // random walks from the open root
        for (int w = 0; w < 4; ++w) {
            Term t = g.open;
            Substitution acc;
            for (int n = 0; n < 8; ++n) {
                const Event& e = c.alpha[rng() % c.alpha.size()];
                StepOutcome s1, s2;
                REQUIRE_NOTHROW(s1 = step(g.sys, c.types, t, e)); // totality
                s2 = step(g.sys, c.types, t, e);
                REQUIRE(s1.has_value() == s2.has_value()); // determinism
                if (!s1)
                    break;
                CHECK(render(s1->next) == render(s2->next));
                CHECK(s1->sigma == s2->sigma);
                ++steps;
                // dom(σ) ∪ fv(t′) ⊆ fv(t)
                const VarSet& before = t->free_vars();
                for (const auto& x : s1->sigma.domain())
                    CHECK(before.count(x));
                for (const auto& x : s1->next->free_vars())
                    CHECK(before.count(x));
                // disjoint domains along the run, all within fv(root)
                CHECK(s1->sigma.disjoint_from(acc));
                for (const auto& x : s1->sigma.domain())
                    CHECK(root_fv.count(x));
                acc = *merge(acc, s1->sigma);
                t = apply_subst(s1->next, s1->sigma);
            }
        }
    }
    CHECK(steps > 500);
}

TEST_CASE("cannot step implies no trace starts with the event") {
    Corpus c;
    std::mt19937_64 rng(8);
    GeneratorOptions go;
    EnumerateOptions eo;
    eo.horizon = 4;
    std::size_t positive = 0;
    for (int i = 0; i < 200; ++i) {
        auto g = generate_case(rng, go);
        auto set = enumerate(g.sys, c.types, g.t1, c.alpha, eo);
        for (Letter l = 0; l < c.alpha.size(); ++l) {
            bool steps = step(g.sys, c.types, g.t1, c.alpha[l]).has_value();
            bool starts = std::any_of(set.members.begin(), set.members.end(),
                                      [&](const InstTrace& m) { return !m.trace.empty() && m.trace[0] == l; });
            if (!steps)
                CHECK_FALSE(starts);
            CHECK(steps == (set.steppable.count(Word{l}) > 0));
            positive += starts;
        }
    }
    CHECK(positive > 0);
}

TEST_CASE("a step into a dead residual: the converse needs live residuals") {
    // a·(a∧b) consumes a, but nothing completes afterwards
    TermSystem sys;
    auto types = ab_types();
    auto alpha = ab_alphabet();
    Term t = mk_cat(pa(), mk_and(pa(), pb()));
    CHECK(step(sys, types, t, alpha[0]));
    EnumerateOptions eo;
    auto set = enumerate(sys, types, t, alpha, eo);
    CHECK(set.members.empty());
    CHECK_FALSE(set.prefixes.count(Word{0}));
}
