#include "doctest.h"

#include "support/index_oracle.hpp"
#include "tracecalc/trace_ops.hpp"

#include <random>

using namespace tracecalc;
using namespace tcsupport;

namespace {

using T = TraceOf<int>;
using TS = TraceSetOf<int>;

// e1..e5 as 1..5
constexpr int e1 = 1, e2 = 2, e3 = 3, e4 = 4, e5 = 5;

TS random_set(std::mt19937_64& rng, int letters) {
    TS s;
    int n = static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
        T t;
        int len = static_cast<int>(rng() % 4);
        for (int j = 0; j < len; ++j)
            t.push_back(static_cast<int>(rng() % letters));
        s.insert(t);
    }
    return s;
}

} // namespace

TEST_CASE("concat and prefix") {
    CHECK(concat(T{}, T{e1, e2}) == T{e1, e2});
    CHECK(concat(T{e1}, T{e2}).size() == 2);
    CHECK(concat(T{e1, e2}, T{e3}) == T{e1, e2, e3});
    CHECK(is_prefix(T{}, T{e1}));
    CHECK_FALSE(is_prefix(T{e1, e2}, T{e1}));
    CHECK(is_prefix_of_set(T{e1}, TS{{e1, e2}, {e3}}));
    CHECK_FALSE(is_prefix_of_set(T{e2}, TS{{e1, e2}, {e3}}));
    CHECK_FALSE(is_prefix_of_set(T{e1}, TS{}));
}

TEST_CASE("shuffle examples") {
    CHECK(shuffle(T{}, T{e1, e2}) == TS{{e1, e2}});
    CHECK(shuffle(T{e1}, T{e2}) == TS{{e1, e2}, {e2, e1}});
    auto s = shuffle(T{e1, e2}, T{e2, e3});
    CHECK(s.size() == 5);
    CHECK(s.count(T{e1, e2, e3, e2}));
}

TEST_CASE("left-preferential shuffle examples") {
    CHECK(lp_shuffle(T{e1, e2}, T{e2, e3}) ==
          TS{{e1, e2, e2, e3}, {e2, e3, e1, e2}, {e2, e1, e3, e2}, {e2, e1, e2, e3}});
    CHECK(lp_shuffle(T{}, T{e1, e2}) == TS{{e1, e2}});
    CHECK(lp_shuffle(T{e1}, T{e2}) == TS{{e1, e2}, {e2, e1}});
}

TEST_CASE("generalized shuffle examples") {
    T a{e1, e2}, b{e2, e3};
    CHECK(glp_shuffle(a, b, TS{}) == shuffle(a, b));
    CHECK(glp_shuffle(a, b, TS{a}) == lp_shuffle(a, b));

    TS t1{{e1, e2}, {e3, e4}}, t2{{e1, e5}};
    TS naive, correct;
    for (const auto& x : t1)
        for (const auto& y : t2) {
            auto n = lp_shuffle(x, y);
            naive.insert(n.begin(), n.end());
            auto c = glp_shuffle(x, y, t1);
            correct.insert(c.begin(), c.end());
        }
    TS listed{{e1, e2, e1, e5}, {e1, e1, e2, e5}, {e1, e1, e5, e2}, {e3, e4, e1, e5}, {e3, e1, e4, e5},
              {e3, e1, e5, e4}, {e1, e5, e3, e4}, {e1, e3, e4, e5}, {e1, e3, e5, e4}};
    CHECK(naive == listed);
    TS six(listed.begin(), listed.end());
    for (const T& x : {T{e1, e5, e3, e4}, T{e1, e3, e4, e5}, T{e1, e3, e5, e4}})
        six.erase(x);
    CHECK(correct == six);
}

TEST_CASE("interleavers agree with the index-function definitions") {
    auto traces = all_traces(3, 3);
    std::mt19937_64 rng(4);
    for (const auto& a : traces)
        for (const auto& b : traces) {
            REQUIRE(shuffle(a, b) == index_plain(a, b));
            REQUIRE(lp_shuffle(a, b) == index_lp(a, b));
            TS t = random_set(rng, 3);
            REQUIRE(glp_shuffle(a, b, t) == index_glp(a, b, t));
            t.insert(a);
            REQUIRE(glp_shuffle(a, b, t) == index_glp(a, b, t));
        }
}

TEST_CASE("shuffle laws") {
    auto traces = all_traces(3, 3);
    std::mt19937_64 rng(9);
    for (std::size_t i = 0; i < traces.size(); ++i)
        for (std::size_t j = 0; j < traces.size(); j += 3) {
            const T& a = traces[i];
            const T& b = traces[j];
            auto s = shuffle(a, b);
            auto lp = lp_shuffle(a, b);
            TS t = random_set(rng, 3);
            t.insert(a);
            auto g = glp_shuffle(a, b, t);
            for (const auto& x : s)
                CHECK(x.size() == a.size() + b.size());
            for (const auto& x : lp)
                CHECK(s.count(x));
            for (const auto& x : g)
                CHECK(lp.count(x));
            // members starting with e: a starts with e, or b does and e is not a prefix of a
            for (const auto& x : g) {
                if (x.empty())
                    continue;
                bool from_left = !a.empty() && a[0] == x[0];
                bool from_right = !b.empty() && b[0] == x[0] && !is_prefix(T{x[0]}, a);
                CHECK((from_left || from_right));
            }
        }
}

TEST_CASE("disjoint alphabets never exclude") {
    auto left = all_traces(2, 3);
    for (const auto& a : left)
        for (const auto& b0 : left) {
            T b = b0;
            for (auto& x : b)
                x += 10;
            CHECK(lp_shuffle(a, b) == shuffle(a, b));
        }
}

TEST_CASE("the oracle checks its own maps") {
    IndexFunction f{{0, 2, 5}};
    CHECK(f.strictly_increasing());
    CHECK_NOTHROW(assert_prop_2_1(f));
    CHECK_NOTHROW(assert_prop_2_2(IndexFunction{{0, 1, 2}}));
    CHECK_FALSE(IndexFunction{{1, 1}}.strictly_increasing());
}
