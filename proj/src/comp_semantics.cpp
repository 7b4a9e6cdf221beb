#include "tracecalc/comp_semantics.hpp"

#include "tracecalc/trace_ops.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tracecalc {

const char* reading_name(Reading r) { return r == Reading::Prefix ? "prefix" : "operational"; }

InstTraceSet InstTraceSet::from_members(std::set<InstTrace> members, std::size_t horizon) {
    InstTraceSet s;
    s.horizon = horizon;
    for (const auto& m : members) {
        if (m.trace.size() > horizon)
            throw std::invalid_argument("member longer than the horizon");
        for (std::size_t n = 0; n <= m.trace.size(); ++n)
            s.prefixes.insert(Word(m.trace.begin(), m.trace.begin() + n));
    }
    s.steppable = s.prefixes;
    s.members = std::move(members);
    return s;
}

std::set<Word> InstTraceSet::traces() const {
    std::set<Word> out;
    for (const auto& m : members)
        out.insert(m.trace);
    return out;
}

namespace {

class Explorer {
public:
    Explorer(const TermSystem& sys, const EventTypes& types, const std::vector<Event>& alphabet,
             const EnumerateOptions& opts)
        : sys_(sys), types_(types), alphabet_(alphabet), opts_(opts) {}

    // t can reach a state accepting λ, or can step forever.
    bool productive(const Term& t, std::size_t& undetermined) {
        if (t->nullable())
            return true;
        std::string key = render(t);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        budget_ = opts_.productivity_budget;
        overflow_ = false;
        on_stack_.clear();
        bool r = visit(t, key, 0);
        if (overflow_)
            ++undetermined;
        return r;
    }

    StepOutcome step_letter(const Term& t, Letter l) const {
        return step(sys_, types_, t, alphabet_[l], opts_.fuel);
    }

private:
    // Unknown outcomes (budget or depth exhausted) count as productive and
    // are memoized as such.
    bool visit(const Term& t, const std::string& key, std::size_t depth) {
        if (t->nullable())
            return memo_[key] = true;
        if (budget_ == 0 || depth >= opts_.productivity_depth || t->size() > opts_.productivity_size) {
            overflow_ = true;
            return memo_[key] = true;
        }
        --budget_;
        on_stack_.insert(key);
        for (Letter l = 0; l < alphabet_.size(); ++l) {
            auto s = step_letter(t, l);
            if (!s)
                continue;
            Term next = apply_subst(s->next, s->sigma);
            std::string k = render(next);
            bool r;
            if (auto it = memo_.find(k); it != memo_.end())
                r = it->second;
            else if (on_stack_.count(k))
                r = true; // a cycle of steps: an infinite trace
            else
                r = visit(next, k, depth + 1);
            if (r) {
                on_stack_.erase(key);
                memo_[key] = true;
                return true;
            }
        }
        on_stack_.erase(key);
        memo_[key] = false;
        return false;
    }

    const TermSystem& sys_;
    const EventTypes& types_;
    const std::vector<Event>& alphabet_;
    const EnumerateOptions& opts_;
    std::unordered_map<std::string, bool> memo_;
    std::unordered_set<std::string> on_stack_;
    std::size_t budget_ = 0;
    bool overflow_ = false;
};

void check_horizons(const InstTraceSet& a, const InstTraceSet& b) {
    if (a.horizon != b.horizon)
        throw std::invalid_argument("operand horizons differ (" + std::to_string(a.horizon) + " vs " +
                                    std::to_string(b.horizon) + ")");
}

// e ⋪ 𝒮 for a word e (of any length up to the horizon).
bool continues(const InstTraceSet& s, const Word& w, Reading r) {
    return r == Reading::Prefix ? s.prefixes.count(w) > 0 : s.steppable.count(w) > 0;
}

} // namespace

InstTraceSet enumerate(const TermSystem& sys, const EventTypes& types, const Term& t,
                       const std::vector<Event>& alphabet, const EnumerateOptions& opts) {
    InstTraceSet out;
    out.horizon = opts.horizon;
    Explorer ex(sys, types, alphabet, opts);

    struct Node {
        Word word;
        Term residual;
        Substitution acc;
    };
    std::vector<Node> frontier{{{}, t, {}}};
    out.steppable.insert(Word{});
    if (ex.productive(t, out.undetermined))
        out.prefixes.insert(Word{});
    if (t->nullable())
        out.members.insert({{}, {}});

    for (std::size_t depth = 0; depth < opts.horizon; ++depth) {
        std::vector<Node> next;
        for (const auto& n : frontier) {
            for (Letter l = 0; l < alphabet.size(); ++l) {
                auto s = ex.step_letter(n.residual, l);
                if (!s)
                    continue;
                if (!s->sigma.disjoint_from(n.acc))
                    throw InvariantViolation("enumeration step rebinds a variable: " + s->sigma.render());
                Node m{n.word, apply_subst(s->next, s->sigma), *merge(n.acc, s->sigma)};
                m.word.push_back(l);
                out.steppable.insert(m.word);
                if (ex.productive(m.residual, out.undetermined))
                    out.prefixes.insert(m.word);
                if (m.residual->nullable())
                    out.members.insert({m.word, m.acc});
                next.push_back(std::move(m));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

InstTraceSet lp_union(const InstTraceSet& s1, const InstTraceSet& s2, Reading r) {
    check_horizons(s1, s2);
    std::set<InstTrace> m = s1.members;
    for (const auto& x : s2.members)
        if (x.trace.empty() || !continues(s1, Word{x.trace.front()}, r))
            m.insert(x);
    return InstTraceSet::from_members(std::move(m), s1.horizon);
}

InstTraceSet plain_union(const InstTraceSet& s1, const InstTraceSet& s2) {
    check_horizons(s1, s2);
    std::set<InstTrace> m = s1.members;
    m.insert(s2.members.begin(), s2.members.end());
    return InstTraceSet::from_members(std::move(m), s1.horizon);
}

InstTraceSet lp_concat(const InstTraceSet& s1, const InstTraceSet& s2, Reading r) {
    check_horizons(s1, s2);
    const std::size_t k = s1.horizon;
    std::set<InstTrace> m;
    for (const auto& a : s1.members) {
        for (const auto& b : s2.members) {
            if (a.trace.size() + b.trace.size() > k)
                continue;
            if (!b.trace.empty()) {
                Word w = a.trace;
                w.push_back(b.trace.front());
                if (continues(s1, w, r))
                    continue;
            }
            auto s = merge(a.sigma, b.sigma);
            if (!s)
                continue;
            m.insert({concat(a.trace, b.trace), std::move(*s)});
        }
    }
    return InstTraceSet::from_members(std::move(m), k);
}

InstTraceSet inter(const InstTraceSet& s1, const InstTraceSet& s2) {
    check_horizons(s1, s2);
    std::map<Word, std::vector<const Substitution*>> right;
    for (const auto& b : s2.members)
        right[b.trace].push_back(&b.sigma);
    std::set<InstTrace> m;
    for (const auto& a : s1.members) {
        auto it = right.find(a.trace);
        if (it == right.end())
            continue;
        for (const Substitution* sb : it->second)
            if (auto s = merge(a.sigma, *sb))
                m.insert({a.trace, std::move(*s)});
    }
    return InstTraceSet::from_members(std::move(m), s1.horizon);
}

InstTraceSet lp_shuffle_sets(const InstTraceSet& s1, const InstTraceSet& s2, Reading r) {
    check_horizons(s1, s2);
    const std::size_t k = s1.horizon;
    // Letters at position i of the words of 𝒮₁↓₁ defined there.
    std::vector<std::set<Letter>> at(k);
    for (const auto& p : s1.prefixes)
        if (!p.empty())
            at[p.size() - 1].insert(p.back());
    std::set<InstTrace> m;
    for (const auto& a : s1.members) {
        for (const auto& b : s2.members) {
            if (a.trace.size() + b.trace.size() > k)
                continue;
            auto s = merge(a.sigma, b.sigma);
            if (!s)
                continue;
            TraceSetOf<Letter> ts;
            if (r == Reading::Prefix) {
                ts = detail::interleave_if(a.trace, b.trace, [&](std::size_t i, std::size_t j) {
                    return i == a.trace.size() || !at[i].count(b.trace[j]);
                });
            } else {
                ts = detail::interleave_if(a.trace, b.trace, [&](std::size_t i, std::size_t j) {
                    Word w(a.trace.begin(), a.trace.begin() + i);
                    w.push_back(b.trace[j]);
                    return !s1.steppable.count(w);
                });
            }
            for (auto& w : ts)
                m.insert({w, *s});
        }
    }
    return InstTraceSet::from_members(std::move(m), k);
}

InstTraceSet del_var(const InstTraceSet& s, const VarName& x) {
    std::set<InstTrace> m;
    for (const auto& a : s.members)
        m.insert({a.trace, a.sigma.without(x)});
    InstTraceSet out = s;
    out.members = std::move(m);
    return out;
}

std::string render_word(const Word& w, const std::vector<std::string>& labels) {
    if (w.empty())
        return "λ";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += " ";
        out += w[i] < labels.size() ? labels[w[i]] : "#" + std::to_string(w[i]);
    }
    return out;
}

std::string render_inst(const InstTrace& t, const std::vector<std::string>& labels) {
    return render_word(t.trace, labels) + "  " + t.sigma.render();
}

} // namespace tracecalc
