#include <doctest.h>

#include "algapprox/ball.hpp"
#include "algapprox/error.hpp"
#include "algapprox/linalg.hpp"
#include "algapprox/poly.hpp"

using namespace algapprox;

namespace {

// Sylvester matrix determinant, independent of the PRS code path
Rat sylvester_resultant(const RatPoly& a, const RatPoly& b) {
    const int m = a.degree(), n = b.degree();
    RatMatrix s(m + n, m + n);
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s(r, r + i) = a[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s(n + r, r + i) = b[n - i];
    return determinant(s);
}

RatPoly rp(std::initializer_list<long> c) { return to_rat(IntPoly(c)); }

}  // namespace

TEST_CASE("gcd is monic and exact") {
    CHECK(poly_gcd(rp({-1, 0, 1}), rp({-1, 0, 0, 1})) == rp({-1, 1}));
    CHECK(poly_gcd(rp({-2, 0, 0, 0, 1}), rp({1, 0, 1})) == rp({1}));
    CHECK(poly_gcd(rp({0, 2, 2}), rp({0, 4})) == rp({0, 1}));
    CHECK_THROWS_AS(poly_gcd(RatPoly(), RatPoly()), Error);
}

TEST_CASE("resultant values") {
    CHECK(resultant(rp({-1, 1}), rp({1, 0, 1})) == 2);
    CHECK(resultant(rp({1, 0, 1}), rp({-2, 0, 1})) == 9);
    CHECK(resultant(rp({1, 0, 1}), rp({0, 2})) == 4);
    CHECK(sylvester_resultant(rp({1, 0, 1}), rp({0, 2})) == 4);
    CHECK(sylvester_resultant(rp({1, 0, 1}), rp({-2, 0, 1})) == 9);
    CHECK_THROWS_AS(resultant(RatPoly(), rp({1, 1})), Error);
}

TEST_CASE("resultant matches the Sylvester determinant") {
    const std::vector<std::pair<RatPoly, RatPoly>> cases = {
        {rp({3, -1, 4, 1}), rp({-5, 9, 2})},
        {rp({1, 1, 1, 1, 1, 1, 1}), rp({0, 0, 1, 0, 1})},
        {rp({2, 0, -3}), rp({7, 1, 0, 0, 5})},
        {rp({-2, 0, 0, 1}), rp({1, 1, 0, 0, 1})},
    };
    for (const auto& [a, b] : cases) {
        CHECK(resultant(a, b) == sylvester_resultant(a, b));
        Rat sign = (a.degree() * b.degree()) % 2 ? -1 : 1;
        CHECK(resultant(a, b) == sign * resultant(b, a));
    }
    RatPoly half = rp({1, 2, 3}) * Rat(1, 2);
    CHECK(resultant(half, rp({-1, 0, 2})) == sylvester_resultant(half, rp({-1, 0, 2})));
}

TEST_CASE("discriminants") {
    CHECK(discriminant(IntPoly{1, 1, 0, 0, 1}) == 229);
    CHECK(discriminant(IntPoly{5, -20, 5, 40, 10, -4, 10, 0, 5, 0, 1}) ==
          BigInt("-5467545875906560000000000"));
}

TEST_CASE("squarefree part and height") {
    RatPoly a = rp({-1, 1}) * rp({-1, 1}) * rp({2, 1});
    CHECK(squarefree_part(a) == rp({-2, 1, 1}));
    CHECK(squarefree_part(rp({-2, 0, 0, 0, 1})) == rp({-2, 0, 0, 0, 1}));
    RatPoly c = rp({1, 0, 1});
    CHECK(squarefree_part(c * c * c) == c);
    CHECK(poly_height(IntPoly{1, -5, 3}) == 5);
    CHECK(poly_height(IntPoly{-2, 0, 0, 0, 1}) == 2);
    CHECK(poly_height(IntPoly()) == 0);
    CHECK(IntPoly().degree() == kZeroDegree);
}

TEST_CASE("primitive normalization") {
    CHECK(primitive_part(IntPoly{-4, 0, -6}) == IntPoly{2, 0, 3});
    RatPoly r(std::vector<Rat>{Rat(1, 2), Rat(-1, 3)});
    CHECK(primitive_part(r) == IntPoly{-3, 2});
    CHECK(taylor_shift(IntPoly{1, 1, 1, 1, 1, 1, 1}, 1) == IntPoly{7, 21, 35, 35, 21, 7, 1});
}

TEST_CASE("ball evaluation") {
    ComplexBall z = ComplexBall::from_strings("0", "1", "1e-10", 128);
    ComplexBall v = eval_ball(rp({1, 0, 1}), z);
    CHECK(v.contains_zero());
    CHECK(v.rad() <= Real::from_string("3e-10", 64));

    ComplexBall two = ComplexBall::exact(Rat(2), Rat(0), 128);
    ComplexBall id = eval_ball(rp({0, 1}), two);
    CHECK(id.re() == Real::from_int(2, 128));
    CHECK(id.rad().is_zero());

    ComplexBall s = ComplexBall::from_strings("1.41421356", "0", "1e-8", 128);
    ComplexBall w = eval_ball(rp({-2, 0, 1}), s);
    CHECK(abs(w.re()) <= Real::from_string("1e-7", 64));
    // the exact value 1.41421356^2 - 2 lies in the ball
    Rat x(BigInt(141421356), BigInt(100000000));
    Rat exact = x * x - 2;
    CHECK(w.real_part().contains(exact));
}

TEST_CASE("LLL on a small lattice") {
    std::vector<IntVec> b = {{1, 0, 0, 1345}, {0, 1, 0, 35}, {0, 0, 1, 154}};
    LllResult r = lll_reduce(b);
    auto norms = gram_schmidt_norms(r.basis);
    for (std::size_t i = 0; i < norms.size(); ++i) CHECK(norms[i] == r.gso_norms[i]);
    // transform reproduces the basis
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b[0].size(); ++j) {
            BigInt s = 0;
            for (std::size_t k = 0; k < b.size(); ++k) s += r.transform[i][k] * b[k][j];
            CHECK(s == r.basis[i][j]);
        }
    // determinant of the Gram matrix is preserved
    Rat prod_in = 1, prod_out = 1;
    for (const auto& v : gram_schmidt_norms(b)) prod_in *= v;
    for (const auto& v : norms) prod_out *= v;
    CHECK(prod_in == prod_out);
}
