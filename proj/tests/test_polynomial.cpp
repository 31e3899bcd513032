#include <doctest.h>

#include "ndsos/parser.hpp"
#include "ndsos/polynomial.hpp"
#include "test_util.hpp"

using namespace ndsos;
using test::E;
using test::P;

TEST_CASE("parsing basic polynomials") {
    Polynomial f = P("x^2 + y^2", {"x", "y"});
    CHECK(f.term_count() == 2);
    CHECK(f.coeff(E({2, 0})) == 1);
    CHECK(f.coeff(E({0, 2})) == 1);

    Polynomial g = P("x^16 + y^10 - x^13*y^2", {"x", "y"});
    CHECK(g.coeff(E({16, 0})) == 1);
    CHECK(g.coeff(E({0, 10})) == 1);
    CHECK(g.coeff(E({13, 2})) == -1);

    CHECK(P("1/2*x - 1/2*x", {"x"}).is_zero());
}

TEST_CASE("parsing errors carry a position") {
    CHECK_THROWS_AS(P("x + ", {"x"}), ParseError);
    CHECK_THROWS_AS(P("x + q", {"x"}), ParseError);
    CHECK_THROWS_AS(P("x^-2", {"x"}), ParseError);
    CHECK_THROWS_AS(P("1/0", {"x"}), ParseError);
    try {
        P("x + q^2", {"x"});
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.pos == 4);
    }
}

TEST_CASE("variable inference follows first appearance") {
    CHECK(infer_variables("3*x + z^2 - y") == std::vector<std::string>{"x", "z", "y"});
    CHECK(infer_variables("x1 + x2^2") == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE("shift to a point reproduces the worked translations") {
    std::vector<std::string> v{"x", "y", "z", "w"};
    std::vector<Rational> a{-1, -1, 0, 0};

    Polynomial f = P("x^3 + y^3 + z^2 + w^4 + 2", v);
    Polynomial fa = f.shift_to_point(a);
    CHECK(fa == P("3*x + 3*y - 3*x^2 - 3*y^2 + z^2 + x^3 + y^3 + w^4", v));

    Polynomial g = P("2 - x^4 - y^4 - z^4 - w^4", v);
    Polynomial ga = g.shift_to_point(a);
    CHECK(ga ==
          P("4*x + 4*y - 6*x^2 - 6*y^2 + 4*x^3 + 4*y^3 - x^4 - y^4 - z^4 - w^4", v));

    // Zero shift just drops the constant term.
    Polynomial h = P("x^2 + 3*x + 7", {"x"});
    CHECK(h.shift_to_point({Rational(0)}) == P("x^2 + 3*x", {"x"}));
}

TEST_CASE("shift composition") {
    test::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        Polynomial f = rng.polynomial(2, 4, 5);
        std::vector<Rational> z{rng.coefficient(), rng.coefficient()};
        std::vector<Rational> mz{-z[0], -z[1]};
        Polynomial back = f.shift_to_point(z).shift_to_point(mz);
        // Round trip recovers f up to its value at 0.
        Polynomial expect = f - Polynomial::constant(2, f.coeff(Exponent(2)));
        CHECK(back == expect);
    }
}

TEST_CASE("weighted components") {
    Polynomial f = P("x^2 + x^3", {"x"});
    auto parts = f.weighted_components(WeightVector{{1}, 0});
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == 2);
    CHECK(parts[0].second == P("x^2", {"x"}));
    CHECK(parts[1].first == 3);
    CHECK(parts[1].second == P("x^3", {"x"}));

    // Independent oracle: bucket the support by the dot product directly.
    Polynomial g = P("x^6 + x^4*y + x^3*y^3 + x^2*y^2 + y^4", {"x", "y"});
    WeightVector a{{1, 2}, 0};
    auto comps = g.weighted_components(a);
    CHECK(comps.front().first == 6);
    CHECK(comps.front().second == P("x^6 + x^4*y + x^2*y^2", {"x", "y"}));
    Polynomial sum(2);
    long prev = -1;
    for (const auto& [w, part] : comps) {
        CHECK(w > prev);
        prev = w;
        for (const auto& [e, c] : part.terms()) CHECK(a.dot(e) == w);
        sum = sum + part;
    }
    CHECK(sum == g);

    Polynomial h = P("x^2*y^2 + y^4", {"x", "y"});
    auto single = h.weighted_components(WeightVector{{1, 1}, 0});
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == 4);
    CHECK(single[0].second == h);

    CHECK_THROWS_AS(Polynomial(1).weighted_components(WeightVector{{1}, 0}), std::invalid_argument);
}

TEST_CASE("weighted components sum to f with disjoint supports") {
    test::Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        Polynomial f = rng.polynomial(3, 6, 6);
        WeightVector a{{rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(1, 3)}, 0};
        auto comps = f.weighted_components(a);
        Polynomial sum(3);
        std::size_t total_terms = 0;
        for (const auto& [w, part] : comps) {
            sum = sum + part;
            total_terms += part.term_count();
        }
        CHECK(sum == f);
        CHECK(total_terms == f.term_count());
    }
}

TEST_CASE("expand combination") {
    std::vector<std::string> v{"x", "y"};
    CHECK(expand_combination({{Rational(1), P("x + y", v), true}}) ==
          P("x^2 + 2*x*y + y^2", v));
    CHECK(expand_combination({{Rational(1), P("x^2 + 1/2*y", v), true},
                              {Rational(3, 4), P("y", v), true}}) ==
          P("x^4 + x^2*y + y^2", v));
    CHECK(expand_combination({}, 2).is_zero());
    // Plain (unsquared) parts enter linearly.
    CHECK(expand_combination({{Rational(2), P("x", v), false},
                              {Rational(1), P("y", v), true}}) == P("2*x + y^2", v));
}

TEST_CASE("ring axioms on random polynomials") {
    test::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Polynomial f = rng.polynomial(2, 4, 4);
        Polynomial g = rng.polynomial(2, 4, 4);
        Polynomial h = rng.polynomial(2, 4, 4);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f * g == g * f);
        CHECK((f - f).is_zero());
    }
}

TEST_CASE("print and parse round trip") {
    auto vars = std::vector<std::string>{"x", "y", "z"};
    test::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        Polynomial f = rng.polynomial(3, 5, 6, false);
        Polynomial back = parse_polynomial(to_string(f, vars), vars);
        CHECK(back == f);
    }
    CHECK(to_string(Polynomial(3), vars) == "0");
}

TEST_CASE("evaluation and derivatives are exact") {
    Polynomial f = P("x^3 + y^3 + z^2 + w^4 + 2", {"x", "y", "z", "w"});
    CHECK(f.evaluate({-1, -1, 0, 0}) == 0);
    CHECK(f.derivative(0) == P("3*x^2", {"x", "y", "z", "w"}));
    Polynomial g = P("2 - x^4", {"x", "y", "z", "w"});
    CHECK(g.derivative(0).evaluate({-1, 0, 0, 0}) == 4);
}
