#pragma once

// Operators on finite event traces and finite sets of traces. Everything is
// generic in the event type E, which only needs a strict weak order.

#include <algorithm>
#include <set>
#include <vector>

namespace tracecalc {

template <class E>
using TraceOf = std::vector<E>;
template <class E>
using TraceSetOf = std::set<TraceOf<E>>;

template <class E>
TraceOf<E> concat(const TraceOf<E>& a, const TraceOf<E>& b) {
    TraceOf<E> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// a ◁ b
template <class E>
bool is_prefix(const TraceOf<E>& a, const TraceOf<E>& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

/// a ◁ T
template <class E>
bool is_prefix_of_set(const TraceOf<E>& a, const TraceSetOf<E>& ts) {
    // Traces extending `a` sort at or after `a`, contiguously.
    auto it = ts.lower_bound(a);
    return it != ts.end() && is_prefix(a, *it);
}

namespace detail {

/// Recursive interleaving. `allow_right(i, j)` decides whether b[j] may be
/// emitted when i events of `a` have been emitted so far.
template <class E, class AllowRight>
void interleave(const TraceOf<E>& a, const TraceOf<E>& b, std::size_t i, std::size_t j, TraceOf<E>& cur,
                AllowRight& allow_right, TraceSetOf<E>& out) {
    if (i == a.size() && j == b.size()) {
        out.insert(cur);
        return;
    }
    if (i < a.size()) {
        cur.push_back(a[i]);
        interleave(a, b, i + 1, j, cur, allow_right, out);
        cur.pop_back();
    }
    if (j < b.size() && allow_right(i, j)) {
        cur.push_back(b[j]);
        interleave(a, b, i, j + 1, cur, allow_right, out);
        cur.pop_back();
    }
}

template <class E, class AllowRight>
TraceSetOf<E> interleave_if(const TraceOf<E>& a, const TraceOf<E>& b, AllowRight allow_right) {
    TraceSetOf<E> out;
    TraceOf<E> cur;
    cur.reserve(a.size() + b.size());
    interleave(a, b, 0, 0, cur, allow_right, out);
    return out;
}

} // namespace detail

/// a | b: every interleaving that keeps the internal order of both traces.
template <class E>
TraceSetOf<E> shuffle(const TraceOf<E>& a, const TraceOf<E>& b) {
    return detail::interleave_if(a, b, [](std::size_t, std::size_t) { return true; });
}

/// Left-preferential shuffle: b[j] may be taken only if `a` is exhausted or
/// its next pending event differs from b[j].
template <class E>
TraceSetOf<E> lp_shuffle(const TraceOf<E>& a, const TraceOf<E>& b) {
    return detail::interleave_if(a, b, [&](std::size_t i, std::size_t j) { return i == a.size() || !(a[i] == b[j]); });
}

/// Generalized left-preferential shuffle a ←|_T b: b[j] may be taken at
/// pending index i < |a| only if no trace of T defined at i has b[j] there.
template <class E>
TraceSetOf<E> glp_shuffle(const TraceOf<E>& a, const TraceOf<E>& b, const TraceSetOf<E>& ts) {
    return detail::interleave_if(a, b, [&](std::size_t i, std::size_t j) {
        if (i == a.size())
            return true;
        for (const auto& t : ts)
            if (i < t.size() && t[i] == b[j])
                return false;
        return true;
    });
}

} // namespace tracecalc
