#include <doctest.h>

#include "ndsos/mora.hpp"
#include "test_util.hpp"

using namespace ndsos;
using test::E;
using test::P;

namespace {

const std::vector<std::string> kXYZW{"x", "y", "z", "w"};

Polynomial paper_f_a() {
    return P("3*x + 3*y - 3*x^2 - 3*y^2 + z^2 + x^3 + y^3 + w^4", kXYZW);
}
Polynomial paper_g_a() {
    return P("4*x + 4*y - 6*x^2 - 6*y^2 + 4*x^3 + 4*y^3 - x^4 - y^4 - z^4 - w^4", kXYZW);
}
Polynomial paper_remainder() {
    return P("3*y^2 + z^2 + 1/4*x^3 - 9/4*x^2*y + 9/4*x*y^2 - 17/4*y^3"
             " - 3/4*x^4 + 3/2*x^3*y - 3/2*x*y^3 + 9/4*y^4 + 3/4*z^4 + 7/4*w^4"
             " + 3/8*x^5 - 3/8*x^4*y + 3/8*x*y^4 + 3/8*x*z^4 + 3/8*x*w^4"
             " - 3/8*y^5 - 3/8*y*z^4 - 3/8*y*w^4",
             kXYZW);
}

void check_identity(const Polynomial& f, const std::vector<Polynomial>& gs,
                    const DivisionResult& d) {
    Polynomial lhs = (Polynomial::constant(f.nvars(), Rational(1)) + d.unit) * f;
    Polynomial rhs = d.remainder;
    for (std::size_t i = 0; i < gs.size(); ++i) rhs = rhs + d.quotients[i] * gs[i];
    CHECK(lhs == rhs);
    CHECK(d.unit.coeff(Exponent(f.nvars())) == 0);
}

}  // namespace

TEST_CASE("local order comparisons") {
    LocalOrder lex = LocalOrder::anti_graded_lex();
    CHECK(lex.compare(E({0, 0}), E({1, 0})) > 0);  // 1 > x
    CHECK(lex.compare(E({1, 0}), E({0, 1})) > 0);  // x > y
    CHECK(lex.compare(E({2, 0}), E({1, 1})) > 0);  // x^2 > xy
    CHECK(lex.compare(E({1, 1}), E({0, 2})) > 0);  // xy > y^2
    CHECK(lex.compare(E({0, 1}), E({2, 0})) > 0);  // y > x^2 (degree first)

    LocalOrder rev = LocalOrder::anti_graded_revlex();
    CHECK(rev.compare(E({0, 0}), E({1, 0})) > 0);
    CHECK(rev.compare(E({1, 0}), E({0, 1})) > 0);
    CHECK(rev.compare(E({2, 0}), E({1, 1})) > 0);
    // The kinds differ in >= 3 variables at equal degree.
    CHECK(lex.compare(E({1, 0, 1}), E({0, 2, 0})) > 0);
    CHECK(rev.compare(E({0, 2, 0}), E({1, 0, 1})) > 0);
}

TEST_CASE("order is a strict total order") {
    test::Rng rng(17);
    LocalOrder order = LocalOrder::anti_graded_lex();
    for (int i = 0; i < 200; ++i) {
        Exponent a = rng.exponent(3, 6), b = rng.exponent(3, 6), c = rng.exponent(3, 6);
        int ab = order.compare(a, b);
        CHECK((ab == 0) == (a == b));
        CHECK(order.compare(b, a) == -ab);
        if (ab > 0 && order.compare(b, c) > 0) CHECK(order.compare(a, c) > 0);
    }
}

TEST_CASE("division reproduces the constrained worked example") {
    DivisionResult d = mora_divide(paper_f_a(), {paper_g_a()}, LocalOrder::anti_graded_lex());
    CHECK(d.remainder == paper_remainder());
    CHECK(d.unit.is_zero());
    CHECK(d.quotients[0] == P("3/4 + 3/8*x - 3/8*y", kXYZW));
    check_identity(paper_f_a(), {paper_g_a()}, d);
}

TEST_CASE("dividing a polynomial by itself") {
    Polynomial f = P("x^2 + 3*x*y + y^5", {"x", "y"});
    DivisionResult d = mora_divide(f, {f}, LocalOrder::anti_graded_lex());
    CHECK(d.remainder.is_zero());
    CHECK(d.unit.is_zero());
    CHECK(d.quotients[0] == Polynomial::constant(2, Rational(1)));
}

TEST_CASE("local division needs the unit") {
    // x^2 lies in <x + x^2> only after multiplying by a unit.
    Polynomial f = P("x^2", {"x"});
    Polynomial g = P("x + x^2", {"x"});
    DivisionResult d = mora_divide(f, {g}, LocalOrder::anti_graded_lex());
    CHECK(d.remainder.is_zero());
    CHECK(d.unit == P("x", {"x"}));
    check_identity(f, {g}, d);
}

TEST_CASE("division identity and leading-term bound on random inputs") {
    test::Rng rng(29);
    LocalOrder order = LocalOrder::anti_graded_lex();
    int done = 0;
    for (int i = 0; done < 120; ++i) {
        REQUIRE(i < 2000);
        Polynomial f = rng.polynomial(2, 5, 5);
        std::vector<Polynomial> gs{rng.polynomial(2, 4, 3), rng.polynomial(2, 4, 3)};
        DivisionResult d = mora_divide(f, gs, order);
        check_identity(f, gs, d);
        Exponent lt_f = leading_monomial(f, order);
        for (std::size_t j = 0; j < gs.size(); ++j) {
            if (d.quotients[j].is_zero()) continue;
            Polynomial prod = d.quotients[j] * gs[j];
            if (!prod.is_zero())
                CHECK(order.compare(lt_f, leading_monomial(prod, order)) >= 0);
        }
        if (!d.remainder.is_zero()) {
            Exponent lt_r = leading_monomial(d.remainder, order);
            for (const auto& g : gs) CHECK_FALSE(lt_r.dominates(leading_monomial(g, order)));
        }
        ++done;
    }
}

TEST_CASE("univariate remainders agree with naive local reduction") {
    // One divisor, one variable: repeatedly cancel the lowest-degree term of
    // h using the lowest-degree term of g while possible; the first stuck
    // leading term is the weak normal form seen by any correct division.
    test::Rng rng(43);
    LocalOrder order = LocalOrder::anti_graded_lex();
    for (int i = 0; i < 60; ++i) {
        Polynomial f = rng.polynomial(1, 6, 4);
        Polynomial g = rng.polynomial(1, 5, 3);
        DivisionResult d = mora_divide(f, {g}, order);
        long lt_g = leading_monomial(g, order).total_degree();
        if (d.remainder.is_zero()) continue;
        CHECK(leading_monomial(d.remainder, order).total_degree() < lt_g);
    }
}

TEST_CASE("modified division on the constrained worked example") {
    ModifiedDivisionResult m =
        modified_mora(paper_f_a(), {paper_g_a()}, LocalOrder::anti_graded_lex());
    Polynomial r0 = P("3*y^2 + z^2 - 17/4*y^3 + 9/4*y^4 + 3/4*z^4 + 7/4*w^4"
                      " - 3/8*y^5 - 3/8*y*z^4 - 3/8*y*w^4",
                      kXYZW);
    CHECK(m.r0 == r0);
    CHECK(m.diagram_degree == 4);
    CHECK(m.essential == r0);
}

TEST_CASE("modified division leaves r untouched without linear parts") {
    Polynomial f = P("x^2 + x^3*y + y^4", {"x", "y"});
    Polynomial g = P("x^2*y^2 + x^5", {"x", "y"});
    ModifiedDivisionResult m = modified_mora(f, {g}, LocalOrder::anti_graded_lex());
    CHECK(m.r0 == m.base.remainder);
}

TEST_CASE("already reduced input is its own essential remainder") {
    Polynomial f = P("y^2 + y^3", {"x", "y"});
    Polynomial g = P("x + x^2", {"x", "y"});
    ModifiedDivisionResult m = modified_mora(f, {g}, LocalOrder::anti_graded_lex());
    CHECK(m.base.remainder == f);
    CHECK(m.r0 == f);
    CHECK(m.diagram_degree == 2);
    CHECK(m.essential == f);
}

TEST_CASE("degenerate modified division is reported") {
    Polynomial f = P("x^2", {"x", "y"});
    Polynomial g = P("x", {"x", "y"});
    CHECK_THROWS_AS(modified_mora(f, {g}, LocalOrder::anti_graded_lex()), std::runtime_error);
}
