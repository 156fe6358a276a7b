#include <doctest.h>

#include "algapprox/algebraic.hpp"
#include "algapprox/error.hpp"

using namespace algapprox;

namespace {

bool near(const ComplexBall& b, const char* re, const char* im, const char* tol = "1e-15") {
    ComplexBall t = ComplexBall::from_strings(re, im, tol, b.prec());
    return t.overlaps(b);
}

const IntPoly kZeta7{1, 1, 1, 1, 1, 1, 1};
const IntPoly kDeg10{5, -20, 5, 40, 10, -4, 10, 0, 5, 0, 1};

AlgebraicComplex hint(const IntPoly& p, const char* re, const char* im) {
    return select_root(p, RootHint{re, im});
}

}  // namespace

TEST_CASE("irreducibility certificates") {
    auto c1 = certify_irreducible(IntPoly{-2, 0, 0, 0, 1});
    REQUIRE(c1);
    CHECK(c1->method == IrreducibilityCertificate::Method::Eisenstein);
    CHECK(c1->prime == 2);
    auto c2 = certify_irreducible(kZeta7);
    REQUIRE(c2);
    CHECK(c2->method == IrreducibilityCertificate::Method::Eisenstein);
    CHECK(c2->prime == 7);
    CHECK(c2->shift == 1);
    CHECK_THROWS_AS(certify_irreducible(IntPoly{-1, 0, 1}), Error);
    try {
        certify_irreducible(IntPoly{-1, 0, 1});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ReducibleInput);
    }
    auto c3 = certify_irreducible(IntPoly{1, 1, 0, 0, 1});
    REQUIRE(c3);
    CHECK(c3->method == IrreducibilityCertificate::Method::ModPrime);
    CHECK(c3->prime == 2);
    CHECK(certify_irreducible(kDeg10).has_value());
    // (x^2+1)(x^2+2) has no rational root and no certificate
    CHECK_FALSE(certify_irreducible(IntPoly{2, 0, 3, 0, 1}).has_value());
}

TEST_CASE("sturm counts") {
    auto s = sturm_sequence(to_rat(IntPoly{-2, 0, 0, 1}));
    CHECK(sturm_count_all(s) == 1);
    CHECK(sturm_count(s, Rat(1), Rat(2)) == 1);
    CHECK(sturm_count(s, Rat(-5), Rat(1)) == 0);
    CHECK(sturm_count_all(sturm_sequence(to_rat(IntPoly{1, 1, 0, 0, 1}))) == 0);
}

TEST_CASE("root isolation against the oracle table") {
    auto r2 = isolate_roots(IntPoly{1, 0, 1});
    REQUIRE(r2.size() == 2);
    CHECK(near(r2[0].ball, "0", "-1"));
    CHECK(near(r2[1].ball, "0", "1"));

    auto r3 = isolate_roots(IntPoly{-2, 0, 0, 1});
    REQUIRE(r3.size() == 3);
    CHECK(near(r3[0].ball, "-0.62996052494743658238", "-1.09112363597172140356"));
    CHECK(near(r3[1].ball, "-0.62996052494743658238", "1.09112363597172140356"));
    CHECK(near(r3[2].ball, "1.25992104989487316476", "0"));
    CHECK(r3[2].real);
    CHECK(r3[2].ball.im().is_zero());
    CHECK_FALSE(r3[0].real);

    auto r4 = isolate_roots(IntPoly{1, 1, 0, 0, 1});
    REQUIRE(r4.size() == 4);
    CHECK(near(r4[0].ball, "-0.727136084491196839976675658674961369", "-0.430014288329715776416519858396023127"));
    CHECK(near(r4[3].ball, "0.727136084491196839976675658674961369", "0.934099289460529439639030287105823296"));

    // degree 10: roots sharing real parts are ordered by imaginary part
    auto r10 = isolate_roots(kDeg10);
    REQUIRE(r10.size() == 10);
    CHECK(near(r10[0].ball, "-0.929316490603147629", "-1.675187952", "1e-8"));
    CHECK(near(r10[3].ball, "-0.929316490603147629", "1.675187952", "1e-8"));
    CHECK(near(r10[9].ball, "1.148698354997035007", "1", "1e-15"));
    for (std::size_t i = 0; i < r10.size(); ++i)
        for (std::size_t j = i + 1; j < r10.size(); ++j) CHECK_FALSE(r10[i].ball.overlaps(r10[j].ball));
}

TEST_CASE("ordering is stable across precisions") {
    auto a = isolate_roots(kDeg10, 128);
    auto b = isolate_roots(kDeg10, 512);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].ball.overlaps(b[i].ball));
}

TEST_CASE("root selection") {
    auto i = hint(IntPoly{1, 0, 1}, "0", "1");
    CHECK(near(i.box(), "0", "1"));
    CHECK_FALSE(is_real(i));
    auto b = hint(IntPoly{-2, 0, 0, 0, 1}, "0", "1.19");
    CHECK(near(b.box(), "0", "1.18920711500272106671749997056"));
    auto d = select_root(IntPoly{1, 1, 0, 0, 1}, std::size_t{3});
    CHECK(near(d.box(), "0.727136084491196839976675658674961369", "0.934099289460529439639030287105823296"));
    auto c = hint(IntPoly{-2, 0, 0, 1}, "1.26", "0");
    CHECK(is_real(c));
    CHECK_THROWS_AS(select_root(IntPoly{1, 1, 0, 0, 1}, std::size_t{4}), Error);
    // 0 is equidistant from i and -i
    try {
        hint(IntPoly{1, 0, 1}, "0", "0");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AmbiguousHint);
    }
    // refinement nests
    auto r = b.refined(1024);
    CHECK(b.box().contains(r.box()));
}

TEST_CASE("conjugation maps") {
    auto b = hint(IntPoly{-2, 0, 0, 0, 1}, "0", "1.19");
    auto cb = find_conjugation(b);
    REQUIRE(cb.present());
    CHECK(*cb.g == to_rat(IntPoly{0, -1}));

    auto c = hint(IntPoly{-2, 0, 0, 1}, "-0.63", "1.09");
    CHECK_FALSE(find_conjugation(c).present());

    auto z = hint(kZeta7, "0.6235", "0.7818");
    auto cz = find_conjugation(z);
    REQUIRE(cz.present());
    CHECK(*cz.g == to_rat(IntPoly{-1, -1, -1, -1, -1, -1}));

    auto d = select_root(IntPoly{1, 1, 0, 0, 1}, std::size_t{3});
    auto cd = find_conjugation(d);
    CHECK_FALSE(cd.present());
    CHECK_FALSE(real_subfield_index(d, cd).index_two);

    auto f = hint(kDeg10, "1.1487", "1");
    auto cf = find_conjugation(f);
    REQUIRE(cf.present());
    std::vector<long> num = {-459019, 848949, 1531435, 254880, 54695, 338072, 90225, 168320, 17600, 33340};
    for (std::size_t k = 0; k < num.size(); ++k) CHECK((*cf.g)[k] == Rat(num[k], 91339));
}

TEST_CASE("subfield index, beta and gamma, dependence") {
    auto b = hint(IntPoly{-2, 0, 0, 0, 1}, "0", "1.19");
    auto inv = analyze(b);
    CHECK(inv.index.index_two);
    CHECK(inv.index.real_subfield_degree == 2);
    REQUIRE(inv.bg);
    CHECK(inv.bg->beta.is_zero());
    CHECK(inv.bg->gamma == -inv.field->gen().pow(2));
    CHECK(inv.dependence.dependent);
    CHECK(*inv.dependence.witness == IntVec{0, 1, 0});

    auto z = analyze(hint(kZeta7, "0.6235", "0.7818"));
    CHECK(z.index.real_subfield_degree == 3);
    CHECK(z.bg->gamma == z.field->one());
    CHECK(*z.dependence.witness == IntVec{1, 0, -1});

    auto f = analyze(hint(kDeg10, "1.1487", "1"));
    CHECK(f.index.real_subfield_degree == 5);
    CHECK_FALSE(f.dependence.dependent);
    std::vector<long> beta = {-459019, 940288, 1531435, 254880, 54695, 338072, 90225, 168320, 17600, 33340};
    std::vector<long> gamma = {-166700, 207781, 682249, 197835, -78520, 188055, 4672, 90225, 1620, 17600};
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(f.bg->beta.coords()[k] == Rat(beta[k], 91339));
        CHECK(f.bg->gamma.coords()[k] == Rat(gamma[k], 91339));
    }
    // xi^2 - beta xi + gamma = 0
    for (const auto* inv2 : {&inv, &z, &f}) {
        FieldElem x = inv2->field->gen();
        CHECK((x * x - inv2->bg->beta * x + inv2->bg->gamma).is_zero());
    }

    auto d = analyze(select_root(IntPoly{1, 1, 0, 0, 1}, std::size_t{3}));
    CHECK_FALSE(d.dependence.dependent);
    CHECK_FALSE(d.bg.has_value());
}
