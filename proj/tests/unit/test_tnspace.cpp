#include <doctest.h>

#include "algapprox/error.hpp"
#include "algapprox/tnspace.hpp"

using namespace algapprox;

namespace {

const IntPoly kZeta7{1, 1, 1, 1, 1, 1, 1};
const IntPoly kDeg10{5, -20, 5, 40, 10, -4, 10, 0, 5, 0, 1};

FieldInvariants quartic() { return analyze(select_root(IntPoly{-2, 0, 0, 0, 1}, RootHint{"0", "1.19"})); }
FieldInvariants zeta7() { return analyze(select_root(kZeta7, RootHint{"0.6235", "0.7818"})); }
FieldInvariants generic() { return analyze(select_root(IntPoly{1, 1, 0, 0, 1}, std::size_t{3})); }
FieldInvariants deg10() { return analyze(select_root(kDeg10, RootHint{"1.1487", "1"})); }

RatPoly rp(std::initializer_list<long> c) { return to_rat(IntPoly(c)); }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("dim_V on the reference numbers") {
    auto q = quartic();
    auto s = dim_V(q, q.field->one(), 2);
    CHECK(s.dim() == 2);
    CHECK(s.basis == std::vector<RatPoly>{rp({1}), rp({0, 0, 1})});
    CHECK(verify_reality(q, s));

    auto z = zeta7();
    auto s1 = dim_V(z, z.field->one(), 2);
    CHECK(s1.basis == std::vector<RatPoly>{rp({1})});
    auto s2 = dim_V(z, z.field->gen().inverse(), 2);
    CHECK(s2.basis == std::vector<RatPoly>{rp({0, 1}), rp({1, 0, 1})});
    CHECK(verify_reality(z, s2));

    auto g = generic();
    CHECK(code_of([&] { dim_V(g, g.field->one(), 2); }) == ErrorCode::IndexNotTwo);
    CHECK(code_of([&] { dim_V(q, q.field->from_rat(0), 2); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("direct sum check") {
    auto q = quartic();
    CHECK(direct_sum_check(dim_V(q, q.field->one(), 2)));
    auto z = zeta7();
    CHECK(direct_sum_check(dim_V(z, z.field->gen().inverse(), 2)));
    IsotropicSpace fake{2, q.field->one(), {rp({1}), rp({0, 1})}};
    CHECK_FALSE(direct_sum_check(fake));
    IsotropicSpace small{2, q.field->one(), {rp({1})}};
    CHECK(code_of([&] { direct_sum_check(small); }) == ErrorCode::WrongDimension);
}

TEST_CASE("uniqueness of the maximal space under a second mu") {
    auto q = quartic();
    // 1 + X^2 lies in V, so mu = 1/(1 + xi^2) gives the same space
    auto a = dim_V(q, q.field->one(), 2);
    auto b = dim_V(q, q.field->elem(rp({1, 0, 1})).inverse(), 2);
    CHECK(a.basis == b.basis);
    auto z = zeta7();
    auto c = dim_V(z, z.field->gen().inverse(), 2);
    auto e = dim_V(z, z.field->elem(rp({1, 0, 1})).inverse(), 2);
    CHECK(c.basis == e.basis);
}

TEST_CASE("lower bound search") {
    TnSearchOptions h1;
    h1.height_bound = 1;
    auto r = tn_lower_bound_search(quartic(), 2, h1);
    CHECK(r.dim == 2);
    CHECK(r.f == IntPoly{1});

    auto rz = tn_lower_bound_search(zeta7(), 2, h1);
    CHECK(rz.dim == 2);
    CHECK(rz.f == IntPoly{0, 1});
    CHECK(rz.space.basis == std::vector<RatPoly>{rp({0, 1}), rp({1, 0, 1})});

    CHECK(code_of([&] { tn_lower_bound_search(generic(), 2, h1); }) == ErrorCode::IndexNotTwo);
}

TEST_CASE("lower bound search regression in the exceptional configuration") {
    auto f = deg10();
    TnSearchOptions o;
    o.height_bound = 3;
    auto r = tn_lower_bound_search(f, 6, o);
    CHECK(r.dim == 3);
    CHECK(r.f == IntPoly{1, -2, 0, 0, 0, 2});
    CHECK(r.examined == 409585);
    CHECK_FALSE(r.exhausted);
    CHECK(verify_reality(f, r.space));

    o.workers = 3;
    auto r3 = tn_lower_bound_search(f, 6, o);
    CHECK(r3.dim == r.dim);
    CHECK(r3.f == r.f);
    CHECK(r3.space.basis == r.space.basis);

    o.workers = 1;
    o.budget = 1000;
    auto rb = tn_lower_bound_search(f, 6, o);
    CHECK(rb.exhausted);
    CHECK(rb.examined == 1000);
}

TEST_CASE("t_n verdicts") {
    auto q = tn_from_theorems(quartic(), 2);
    REQUIRE(q.value);
    CHECK(*q.value == 2);
    CHECK(q.provenance.back().first == "trace_norm_dependent");

    auto g = tn_from_theorems(generic(), 2);
    REQUIRE(g.value);
    CHECK(*g.value == 1);
    CHECK(g.provenance.back().first == "index_at_least_three");

    auto z4 = tn_from_theorems(zeta7(), 4);
    REQUIRE(z4.value);
    CHECK(*z4.value == 3);

    auto f = deg10();
    auto f6 = tn_from_theorems(f, 6);
    CHECK_FALSE(f6.value);
    CHECK(f6.upper_bound == 4);
    CHECK(f6.lower_bound >= 1);
    CHECK(f6.lower_bound <= 4);
    CHECK_FALSE(f6.u_fixed);
    bool exceptional = false;
    for (const auto& p : f6.provenance) exceptional = exceptional || p.first == "exceptional_configuration";
    CHECK(exceptional);

    auto f4 = tn_from_theorems(f, 4);
    CHECK(f4.u_fixed);
    CHECK(f4.upper_bound == 2);

    auto odd = tn_from_theorems(zeta7(), 3);
    CHECK(odd.u_fixed);
    CHECK(odd.upper_bound == 2);

    CHECK(code_of([&] { tn_from_theorems(quartic(), 4); }) == ErrorCode::OutOfRegime);
}

TEST_CASE("u and v values") {
    TnVerdict t;
    t.n = 2;
    t.value = 2;
    auto uv = u_v_values(2, t);
    CHECK(uv.u.value() == 1);
    CHECK(uv.v.value() == 0);

    t.value = 1;
    uv = u_v_values(2, t);
    CHECK(uv.u.value() == Rat(1, 2));
    CHECK(uv.v.value() == Rat(1, 2));

    auto f6 = tn_from_theorems(deg10(), 6);
    uv = u_v_values(6, f6);
    CHECK(uv.u.candidates == std::vector<Rat>{Rat(5, 2), Rat(3)});
    CHECK(uv.v.candidates == std::vector<Rat>{Rat(2), Rat(5, 2)});
    CHECK_THROWS_AS(uv.u.value(), Error);
}
