#pragma once

#include "tracecalc/events.hpp"
#include "tracecalc/interpreter.hpp"
#include "tracecalc/term.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace tracecalc {

/// Events of an enumeration are indices into its alphabet.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// (ē, σ)
struct InstTrace {
    Word trace;
    Substitution sigma;

    friend bool operator<(const InstTrace& a, const InstTrace& b) {
        return a.trace != b.trace ? a.trace < b.trace : a.sigma < b.sigma;
    }
    friend bool operator==(const InstTrace& a, const InstTrace& b) {
        return a.trace == b.trace && a.sigma == b.sigma;
    }
};

/// A set of instantiated traces complete up to `horizon` events, together
/// with two prefix-closed word sets of length ≤ horizon:
///  - `prefixes`: words that are prefixes of some (finite or infinite) trace
///    of the set;
///  - `steppable`: words the generating term can consume, whether or not the
///    residual still accepts anything.
/// Sets built from members alone use the prefix closure of the members for
/// both.
struct InstTraceSet {
    std::size_t horizon = 0;
    std::set<InstTrace> members;
    std::set<Word> prefixes;
    std::set<Word> steppable;
    /// Residuals whose productivity was assumed after the exploration budget
    /// or depth ran out.
    std::size_t undetermined = 0;

    static InstTraceSet from_members(std::set<InstTrace> members, std::size_t horizon);
    std::set<Word> traces() const;
    bool contains(const Word& w, const Substitution& s = {}) const { return members.count({w, s}) > 0; }
};

/// How `e ⋪ 𝒮` (and the T parameter of the generalized shuffle) is read.
///  - Prefix: prefixes of the traces of 𝒮, taken literally.
///  - Operational: words the left operand can consume.
enum class Reading { Prefix, Operational };

const char* reading_name(Reading r);

struct EnumerateOptions {
    std::size_t horizon = 4;
    std::size_t fuel = 0;
    /// Residual states explored per productivity query before giving up.
    std::size_t productivity_budget = 2048;
    /// Steps beyond which a residual that is still alive counts as productive.
    std::size_t productivity_depth = 48;
    /// Residuals larger than this (in nodes) count as productive, unexplored.
    std::size_t productivity_size = 512;
};

/// Bounded ⟦t⟧ by breadth-first exploration of `step` over the alphabet.
InstTraceSet enumerate(const TermSystem& sys, const EventTypes& types, const Term& t,
                       const std::vector<Event>& alphabet, const EnumerateOptions& opts);

/// Throws std::invalid_argument on differing horizons.
InstTraceSet lp_union(const InstTraceSet& s1, const InstTraceSet& s2, Reading r = Reading::Prefix);
InstTraceSet plain_union(const InstTraceSet& s1, const InstTraceSet& s2);
InstTraceSet lp_concat(const InstTraceSet& s1, const InstTraceSet& s2, Reading r = Reading::Prefix);
InstTraceSet inter(const InstTraceSet& s1, const InstTraceSet& s2);
InstTraceSet lp_shuffle_sets(const InstTraceSet& s1, const InstTraceSet& s2, Reading r = Reading::Prefix);
InstTraceSet del_var(const InstTraceSet& s, const VarName& x);

std::string render_word(const Word& w, const std::vector<std::string>& labels);
std::string render_inst(const InstTrace& t, const std::vector<std::string>& labels);

} // namespace tracecalc
