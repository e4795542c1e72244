#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kharmonic/polynomial.hpp"

using namespace kharmonic;

namespace {

Polynomial from_longs(std::initializer_list<long> ascending) {
    std::vector<Rational> c;
    for (long v : ascending) c.emplace_back(v);
    return Polynomial(std::move(c));
}

}  // namespace

TEST_SUITE("polynomial") {

TEST_CASE("arithmetic and evaluation") {
    Polynomial p = from_longs({-1, 4, -4, 1});  // q^3 - 4q^2 + 4q - 1
    CHECK(p.degree() == 3);
    CHECK(p.eval(Rational(1)) == 0);
    CHECK(p.eval(Rational(0)) == -1);
    CHECK(p.eval(2.0) == doctest::Approx(-1.0));

    Polynomial lin = from_longs({-1, 1});  // x - 1
    Polynomial sq = lin * lin;
    CHECK(sq == from_longs({1, -2, 1}));
    CHECK((sq - sq).is_zero());
    CHECK((sq + sq) == sq * Rational(2));
    CHECK(sq.derivative() == from_longs({-2, 2}));
}

TEST_CASE("division and gcd") {
    Polynomial p = from_longs({-1, 4, -4, 1});
    Polynomial lin = from_longs({-1, 1});
    auto [q, r] = p.divmod(lin);
    CHECK(r.is_zero());
    CHECK(q == from_longs({1, -3, 1}));

    Polynomial a = lin * lin * from_longs({-2, 1});
    Polynomial b = lin * from_longs({-3, 1});
    CHECK(Polynomial::gcd(a, b) == lin.monic());
}

TEST_CASE("square-free decomposition finds multiplicities") {
    Polynomial lin1 = from_longs({-1, 1});
    Polynomial lin2 = from_longs({-2, 1});
    Polynomial p = lin1 * lin1 * lin1 * lin2;  // (x-1)^3 (x-2)
    auto facs = square_free_decomposition(p);
    REQUIRE(facs.size() == 2);
    CHECK(facs[0].multiplicity == 1);
    CHECK(facs[0].factor == lin2);
    CHECK(facs[1].multiplicity == 3);
    CHECK(facs[1].factor == lin1);

    // gcd with the derivative certifies the triple root: deg gcd = 2.
    CHECK(Polynomial::gcd(p, p.derivative()).degree() == 2);
}

TEST_CASE("triple root isolated exactly with multiplicity 3") {
    Polynomial p = from_longs({-1, 3, -3, 1});  // (q-1)^3
    auto roots = isolate_real_roots(p, Rational(0), std::nullopt);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].is_exact());
    CHECK(*roots[0].exact == 1);
    CHECK(roots[0].multiplicity == 3);
}

TEST_CASE("mixed rational and irrational roots are separated") {
    // q^3 - 4q^2 + 4q - 1 has roots 1 and (3 +- sqrt 5)/2.
    Polynomial p = from_longs({-1, 4, -4, 1});
    auto roots = isolate_real_roots(p, Rational(0), std::nullopt);
    REQUIRE(roots.size() == 3);
    CHECK(roots[1].is_exact());
    CHECK(*roots[1].exact == 1);
    CHECK_FALSE(roots[0].is_exact());
    CHECK_FALSE(roots[2].is_exact());
    // Pairwise disjoint and ordered.
    CHECK(roots[0].hi <= roots[1].lo);
    CHECK(roots[1].hi <= roots[2].lo);

    Rational tol(1, 1000000000000L);  // 1e-12
    IsolatedRoot hi = refine_interval(p, roots[2], tol);
    CHECK(hi.hi - hi.lo <= tol);
    double golden = (3.0 + std::sqrt(5.0)) / 2.0;  // 2.618033988749895
    CHECK(std::abs(root_value(hi) - golden) < 1e-12);

    IsolatedRoot lo = refine_interval(p, roots[0], tol);
    CHECK(std::abs(root_value(lo) - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-12);
}

TEST_CASE("unique real root of a cubic with negative discriminant") {
    // q^3 - 2q^2 + 4q - 2: one real root at 0.6388969194713526.
    Polynomial p = from_longs({-2, 4, -2, 1});
    auto roots = isolate_real_roots(p, Rational(0), std::nullopt);
    REQUIRE(roots.size() == 1);
    auto r = refine_interval(p, roots[0], Rational(1, 1000000000000L));
    CHECK(std::abs(root_value(r) - 0.6388969194713526) < 1e-12);
    CHECK(std::abs(p.eval(root_value(r))) < 1e-10);
}

TEST_CASE("bounded domain and linear polynomials") {
    Polynomial p = from_longs({-1, 3});  // 3x - 1
    auto roots = isolate_real_roots(p, Rational(0), Rational(1));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].is_exact());
    CHECK(*roots[0].exact == rat(1, 3));

    // The same root is excluded once the domain moves past it.
    CHECK(isolate_real_roots(p, rat(1, 2), Rational(1)).empty());
}

TEST_CASE("domain endpoints are strict") {
    Polynomial p = from_longs({0, 1});  // x
    CHECK(isolate_real_roots(p, Rational(0), Rational(1)).empty());
    CHECK(isolate_real_roots(p, Rational(-1), Rational(1)).size() == 1);
}

TEST_CASE("quartic with double rational root and irrational pair") {
    // (2t-1)^2 (5t^2 - 5t + 1): the balanced product-sphere condition shape.
    Polynomial dbl = from_longs({1, -4, 4});
    Polynomial quad = from_longs({1, -5, 5});
    Polynomial p = dbl * quad;
    auto roots = isolate_real_roots(p, Rational(0), Rational(1));
    REQUIRE(roots.size() == 3);
    CHECK(roots[1].is_exact());
    CHECK(*roots[1].exact == rat(1, 2));
    CHECK(roots[1].multiplicity == 2);
    CHECK(roots[0].multiplicity == 1);
    CHECK(roots[2].multiplicity == 1);

    Rational tol(1, 1000000000000L);
    double t_lo = root_value(refine_interval(p, roots[0], tol));
    double t_hi = root_value(refine_interval(p, roots[2], tol));
    CHECK(std::abs(t_lo - (1.0 - std::sqrt(0.2)) / 2.0) < 1e-12);
    CHECK(std::abs(t_hi - (1.0 + std::sqrt(0.2)) / 2.0) < 1e-12);
}

TEST_CASE("refinement rejects a non-bracketing interval") {
    Polynomial p = from_longs({-1, 4, -4, 1});
    IsolatedRoot bogus{rat(5, 1), rat(6, 1), 1, std::nullopt};
    CHECK_THROWS_AS(refine_interval(p, bogus, rat(1, 1000)), std::invalid_argument);
}

TEST_CASE("exact rational helpers") {
    CHECK(rat_from_double(0.5) == rat(1, 2));
    CHECK(rat_from_double(0.1) != rat(1, 10));  // binary doubles are not decimal
    CHECK(pow_rat(rat(3, 2), 4) == rat(81, 16));
    CHECK(to_double(rat(1, 4)) == 0.25);
}

}  // TEST_SUITE
