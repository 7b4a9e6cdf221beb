#include "tracecalc/theorem.hpp"

#include "tracecalc/analysis.hpp"

#include <algorithm>

namespace tracecalc {

const char* claim_name(Claim c) {
    switch (c) {
    case Claim::Union: return "union";
    case Claim::Concat: return "concat";
    case Claim::Inter: return "inter";
    case Claim::Shuffle: return "shuffle";
    case Claim::Let: return "let";
    }
    return "?";
}

bool EquivReport::all_equal() const {
    return precondition_ok && std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.equal; });
}

namespace {

bool shorter(const InstTrace& a, const InstTrace& b) {
    if (a.trace.size() != b.trace.size())
        return a.trace.size() < b.trace.size();
    return a < b;
}

} // namespace

ClaimResult check_claim(const TermSystem& sys, const EventTypes& types, const std::vector<Event>& alphabet, Claim c,
                        const Term& t1, const Term& t2, const VarName& var, const HarnessOptions& opts) {
    EnumerateOptions eo;
    eo.horizon = opts.horizon;
    eo.fuel = opts.fuel;
    eo.productivity_budget = opts.productivity_budget;
    eo.productivity_depth = opts.productivity_depth;
    eo.productivity_size = opts.productivity_size;

    Term combined;
    switch (c) {
    case Claim::Union: combined = mk_or(t1, t2); break;
    case Claim::Concat: combined = mk_cat(t1, t2); break;
    case Claim::Inter: combined = mk_and(t1, t2); break;
    case Claim::Shuffle: combined = mk_shuffle(t1, t2); break;
    case Claim::Let: combined = mk_let(var, t1); break;
    }

    InstTraceSet lhs = enumerate(sys, types, combined, alphabet, eo);
    InstTraceSet s1 = enumerate(sys, types, t1, alphabet, eo);
    InstTraceSet rhs;
    std::size_t undetermined = lhs.undetermined + s1.undetermined;
    if (c == Claim::Let) {
        rhs = del_var(s1, var);
    } else {
        InstTraceSet s2 = enumerate(sys, types, t2, alphabet, eo);
        undetermined += s2.undetermined;
        switch (c) {
        case Claim::Union:
            rhs = opts.mutation == Mutation::PlainUnion ? plain_union(s1, s2) : lp_union(s1, s2, opts.reading);
            break;
        case Claim::Concat: rhs = lp_concat(s1, s2, opts.reading); break;
        case Claim::Inter: rhs = inter(s1, s2); break;
        case Claim::Shuffle: rhs = lp_shuffle_sets(s1, s2, opts.reading); break;
        case Claim::Let: break;
        }
    }

    ClaimResult r;
    r.claim = c;
    r.operational_size = lhs.members.size();
    r.compositional_size = rhs.members.size();
    r.undetermined = undetermined;
    r.equal = lhs.members == rhs.members;
    if (!r.equal) {
        std::vector<std::pair<InstTrace, bool>> diff;
        for (const auto& m : lhs.members)
            if (!rhs.members.count(m))
                diff.emplace_back(m, true);
        for (const auto& m : rhs.members)
            if (!lhs.members.count(m))
                diff.emplace_back(m, false);
        auto it = std::min_element(diff.begin(), diff.end(),
                                   [](const auto& a, const auto& b) { return shorter(a.first, b.first); });
        r.counterexample = it->first;
        r.only_operational = it->second;
    }
    return r;
}

EquivReport check_compositional(const TermSystem& sys, const EventTypes& types, const std::vector<Event>& alphabet,
                                const Term& t1, const Term& t2, const HarnessOptions& opts) {
    EquivReport rep;
    for (const Term* t : {&t1, &t2}) {
        auto cr = check_contractive(sys, *t);
        if (!cr.contractive) {
            rep.precondition_ok = false;
            rep.precondition_error = "operand " + render(*t) + " is not contractive: " + cr.diagnostic;
            return rep;
        }
    }
    for (Claim c : kBinaryClaims)
        rep.claims.push_back(check_claim(sys, types, alphabet, c, t1, t2, {}, opts));
    for (const auto& x : t1->free_vars())
        rep.claims.push_back(check_claim(sys, types, alphabet, Claim::Let, t1, t1, x, opts));
    return rep;
}

// ---------------------------------------------------------------------------

EventTypes corpus_event_types() {
    EventTypes types;
    for (const char* name : {"p", "q"}) {
        types.declare({name,
                       {"x"},
                       DataExpr::object({{"kind", DataExpr::literal(Value(name))}, {"v", DataExpr::var("x")}})});
    }
    return types;
}

Term close_term(const Term& t) {
    Term out = t;
    const VarSet vars = t->free_vars();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        out = mk_let(*it, out);
    return out;
}

namespace {

struct TreeGen {
    std::mt19937_64& rng;
    const GeneratorOptions& opts;
    std::size_t equations;

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

    DataExpr arg() {
        std::size_t r = pick(4);
        if (r < 2 || opts.pool.empty())
            return DataExpr::var(r == 0 || opts.pool.empty() ? "x" : "y");
        return DataExpr::literal(opts.pool[pick(opts.pool.size())]);
    }

    TermExprPtr leaf() {
        std::size_t r = pick(6);
        if (r == 0)
            return TermExpr::empty();
        if (r <= 2)
            return TermExpr::ref("T" + std::to_string(pick(equations)));
        return TermExpr::pat({pick(2) ? "p" : "q", {arg()}});
    }

    TermExprPtr tree(std::size_t depth) {
        if (depth >= opts.max_depth || pick(3) == 0)
            return leaf();
        std::size_t r = pick(9);
        using K = TermExpr::Kind;
        if (r < 3)
            return TermExpr::binary(K::Cat, tree(depth + 1), tree(depth + 1));
        if (r < 5)
            return TermExpr::binary(K::Or, tree(depth + 1), tree(depth + 1));
        if (r < 6)
            return TermExpr::binary(K::And, tree(depth + 1), tree(depth + 1));
        if (r < 7)
            return TermExpr::binary(K::Shuffle, tree(depth + 1), tree(depth + 1));
        return TermExpr::let(pick(2) ? "x" : "y", tree(depth + 1));
    }
};

} // namespace

GeneratedCase generate_case(std::mt19937_64& rng, const GeneratorOptions& opts) {
    for (std::size_t attempt = 1;; ++attempt) {
        std::size_t n = 1 + std::uniform_int_distribution<std::size_t>(0, std::max<std::size_t>(opts.max_equations, 1) - 1)(rng);
        TreeGen g{rng, opts, n};
        SystemBuilder b;
        for (std::size_t i = 0; i < n; ++i)
            b.add("T" + std::to_string(i), g.tree(0));
        TermSystem sys = b.build("T0");
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = check_contractive(sys, sys.ref(i)).contractive;
        if (!ok || !is_cyclic(sys, sys.ref(std::size_t{0})))
            continue;
        GeneratedCase c{std::move(sys), nullptr, nullptr, nullptr, std::nullopt, attempt};
        Term r0 = c.sys.ref(std::size_t{0});
        Term r1 = c.sys.ref(n >= 2 ? std::size_t{1} : std::size_t{0});
        c.t1 = close_term(r0);
        c.t2 = close_term(r1);
        c.open = r0;
        if (!r0->free_vars().empty())
            c.let_var = *r0->free_vars().begin();
        return c;
    }
}

CorpusSummary run_corpus(std::uint64_t seed, std::size_t count, const GeneratorOptions& gen,
                         const HarnessOptions& opts) {
    CorpusSummary sum;
    EventTypes types = corpus_event_types();
    std::vector<Event> alphabet;
    for (auto& a : build_alphabet(types, gen.pool)) {
        alphabet.push_back(a.event);
        sum.labels.push_back(a.label);
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        GeneratedCase c = generate_case(rng, gen);
        ++sum.cases;
        std::vector<ClaimResult> results;
        for (Claim cl : kBinaryClaims)
            results.push_back(check_claim(c.sys, types, alphabet, cl, c.t1, c.t2, {}, opts));
        results.push_back(check_claim(c.sys, types, alphabet, Claim::Let, c.open, c.open, c.let_var.value_or("x"), opts));
        for (auto& r : results) {
            ++sum.comparisons;
            sum.undetermined += r.undetermined;
            if (r.equal)
                continue;
            ++sum.inequalities;
            ++sum.per_claim_failures[static_cast<int>(r.claim)];
            if (!sum.first_failure) {
                CorpusFailure f;
                f.case_index = i;
                for (const auto& e : c.sys.equations())
                    f.system_text += e.name + " = " + render(e.body) + ";\n";
                f.t1 = render(r.claim == Claim::Let ? c.open : c.t1);
                f.t2 = r.claim == Claim::Let ? c.let_var.value_or("x") : render(c.t2);
                f.result = r;
                sum.first_failure = std::move(f);
            }
        }
    }
    return sum;
}

} // namespace tracecalc
