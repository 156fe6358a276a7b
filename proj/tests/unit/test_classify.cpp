#include <doctest.h>

#include "../support/corpus.hpp"
#include "algapprox/classify.hpp"
#include "algapprox/error.hpp"

#include <map>

using namespace algapprox;
using algapprox::testing::invariants;

namespace {

std::map<std::string, FieldInvariants>& cache() {
    static std::map<std::string, FieldInvariants> c;
    return c;
}

const FieldInvariants& inv(const std::string& name) {
    auto it = cache().find(name);
    if (it == cache().end()) it = cache().emplace(name, invariants(name)).first;
    return it->second;
}

Rat w(const std::string& name, int n) { return classify_w(inv(name), n).value.value(); }
Rat wt(const std::string& name, int n) { return classify_wtilde(inv(name), n).value.value(); }

std::string fired(const ExponentVerdict& v) { return v.provenance.back().rule; }

}  // namespace

TEST_CASE("classification table") {
    for (int n = 1; n <= 4; ++n) {
        CHECK(w("A", n) == 0);
        CHECK(wt("A", n) == 0);
    }
    CHECK(w("B", 2) == 1);
    CHECK(wt("B", 2) == 0);
    CHECK(w("B", 4) == 1);
    CHECK(w("C", 1) == 0);
    CHECK(w("D", 2) == make_rat(1, 2));
    CHECK(wt("D", 2) == make_rat(1, 2));
    CHECK(w("E", 2) == 1);
    CHECK(w("E", 3) == 1);
    CHECK(w("E", 4) == 2);
    CHECK(wt("E", 4) == 1);
    CHECK(w("F", 4) == make_rat(3, 2));

    auto f6 = classify_w(inv("F"), 6);
    CHECK(f6.status == VerdictStatus::Gap);
    CHECK(f6.value.candidates == std::vector<Rat>{make_rat(5, 2), Rat(3)});
    auto ft6 = classify_wtilde(inv("F"), 6);
    CHECK(ft6.status == VerdictStatus::Gap);
    CHECK(ft6.value.candidates == std::vector<Rat>{Rat(2), make_rat(5, 2)});
}

TEST_CASE("provenance names the rule that fired") {
    CHECK(fired(classify_w(inv("A"), 3)) == "degree_at_most_n_plus_1");
    CHECK(fired(classify_w(inv("B"), 2)) == "trace_norm_dependent");
    CHECK(fired(classify_w(inv("C"), 1)) == "odd_n");
    CHECK(fired(classify_w(inv("D"), 2)) == "index_at_least_three");
    CHECK(fired(classify_w(inv("F"), 4)) == "large_degree");
    CHECK(fired(classify_w(inv("F"), 6)) == "tn_formula");
    for (const auto& name : {"A", "B", "D", "E", "F"}) {
        auto v = classify_w(inv(name), 2);
        for (std::size_t i = 0; i + 1 < v.provenance.size(); ++i) CHECK_FALSE(v.provenance[i].met);
        CHECK(v.provenance.back().met);
    }
    CHECK(classify_wtilde(inv("E"), 4).provenance.back().rule == "dual_of_w");
}

TEST_CASE("real numbers use min{d-1, n}") {
    auto r = analyze(select_root(IntPoly{-2, 0, 0, 1}, RootHint{"1.26", "0"}));
    CHECK(classify_w(r, 1).value.value() == 1);
    CHECK(classify_w(r, 2).value.value() == 2);
    CHECK(classify_w(r, 5).value.value() == 2);
    CHECK(classify_wtilde(r, 1).value.value() == 1);
    CHECK(classify_wtilde(r, 4).value.value() == 2);
}

TEST_CASE("liouville exponent") {
    CHECK(liouville_exponent(inv("A").xi, 2) == 0);
    CHECK(liouville_exponent(inv("B").xi, 4) == 1);
    CHECK(liouville_exponent(inv("E").xi, 6) == 2);
    CHECK_THROWS_AS(liouville_exponent(inv("B").xi, 2), Error);
}

TEST_CASE("agreement with the t_n formula, ranges, and the integer dual") {
    for (const auto& e : algapprox::testing::corpus()) {
        const auto& I = inv(e.name);
        const int d = I.xi.degree();
        Rat prev(-1);
        for (int n = 1; n <= 6; ++n) {
            auto v = classify_w(I, n);
            auto vt = classify_wtilde(I, n);
            CHECK(v.status == vt.status);
            const bool gap_config = n % 2 == 0 && n >= 6 && n + 2 < d && d <= 2 * n - 2 &&
                                    I.conjugation.present() && !I.dependence.dependent;
            CHECK((v.status == VerdictStatus::Gap) == gap_config);
            if (v.status == VerdictStatus::Gap) {
                CHECK(vt.value.candidates == std::vector<Rat>{make_rat(n - 2, 2), make_rat(n - 1, 2)});
                continue;
            }
            const Rat wn = v.value.value(), wtn = vt.value.value();
            // monotone in n
            CHECK(wn >= prev);
            prev = wn;
            if (d >= n + 2) {
                CHECK((wn == make_rat(n - 1, 2) || wn == make_rat(n, 2)));
                CHECK((wtn == make_rat(n - 2, 2) || wtn == make_rat(n - 1, 2)));
                CHECK((wtn == make_rat(n - 2, 2)) == (wn == make_rat(n, 2)));
            }
            if (d > n) {
                auto uv = u_v_values(n, tn_from_theorems(I, n));
                REQUIRE(uv.u.determined());
                CHECK(uv.u.value() == wn);
                CHECK(uv.v.value() == Rat(n - 1) - wn);
            }
        }
    }
}
