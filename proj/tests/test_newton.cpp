#include <doctest.h>

#include <algorithm>
#include <set>

#include "ndsos/linalg.hpp"
#include "ndsos/newton.hpp"
#include "test_util.hpp"

using namespace ndsos;
using test::E;
using test::P;

namespace {

const Face& face_with_points(const NewtonComplex& c, const std::vector<Exponent>& pts) {
    for (const auto& f : c.faces())
        if (f.lattice_points == pts) return f;
    REQUIRE(false);
    return c.faces().front();
}

// Independent oracle: beta is a vertex of conv(S + R_+^n) iff it cannot be
// written as a convex combination of the other points plus a nonnegative
// shift. Checked over basic solutions (affinely independent supports), which
// is exhaustive by Caratheodory.
bool oracle_is_vertex(const std::vector<Exponent>& support, std::size_t which) {
    const std::size_t n = support[which].nvars();
    std::vector<Exponent> others;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (i != which) others.push_back(support[i]);
    if (others.empty()) return true;

    std::vector<std::vector<Rational>> columns;
    for (const auto& p : others) {
        std::vector<Rational> col(n + 1);
        for (std::size_t i = 0; i < n; ++i) col[i] = p[i];
        col[n] = 1;  // convex weight row
        columns.push_back(col);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> ray(n + 1, Rational(0));
        ray[i] = 1;
        columns.push_back(ray);
    }
    QVec target(n + 1);
    for (std::size_t i = 0; i < n; ++i) target[i] = support[which][i];
    target[n] = 1;

    std::vector<std::size_t> idx(columns.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    // All subsets of size <= n+1.
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
        if (!pick.empty()) {
            QMat a = qmat(n + 1, pick.size());
            for (std::size_t j = 0; j < pick.size(); ++j)
                for (std::size_t i = 0; i < n + 1; ++i) a[i][j] = columns[pick[j]][i];
            auto sol = solve(a, target);
            if (sol) {
                bool ok = true;
                for (const auto& v : *sol)
                    if (v < 0) ok = false;
                if (ok) return true;
            }
        }
        if (pick.size() == n + 1) return false;
        for (std::size_t i = start; i < columns.size(); ++i) {
            pick.push_back(i);
            if (rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return !rec(0);
}

}  // namespace

TEST_CASE("diagram of the two-edge example") {
    Polynomial f = P("x^6 + x^4*y + x^3*y^3 + x^2*y^2 + y^4", {"x", "y"});
    NewtonComplex c = newton_diagram(f);

    CHECK(c.vertices() == std::vector<Exponent>{E({0, 4}), E({2, 2}), E({6, 0})});

    auto maximal = c.maximal_faces();
    REQUIRE(maximal.size() == 2);
    std::vector<std::vector<Exponent>> maximal_points;
    for (auto i : maximal) maximal_points.push_back(c.faces()[i].lattice_points);
    std::sort(maximal_points.begin(), maximal_points.end());
    CHECK(maximal_points[0] == std::vector<Exponent>{E({0, 4}), E({2, 2})});
    CHECK(maximal_points[1] == std::vector<Exponent>{E({2, 2}), E({4, 1}), E({6, 0})});

    const Face& g1 = face_with_points(c, {E({0, 4}), E({2, 2})});
    const Face& g2 = face_with_points(c, {E({2, 2}), E({4, 1}), E({6, 0})});
    CHECK(face_restriction(f, c, g1) == P("x^2*y^2 + y^4", {"x", "y"}));
    CHECK(face_restriction(f, c, g2) == P("x^6 + x^4*y + x^2*y^2", {"x", "y"}));
    CHECK(g1.dim == 1);
    CHECK(g2.dim == 1);
}

TEST_CASE("diagram of a single monomial in one variable") {
    Polynomial f = P("x^2", {"x"});
    NewtonComplex c = newton_diagram(f);
    REQUIRE(c.faces().size() == 1);
    CHECK(c.faces()[0].dim == 0);
    CHECK(c.faces()[0].lattice_points == std::vector<Exponent>{E({2})});
    CHECK(c.faces()[0].maximal);
}

TEST_CASE("diagram with a single two-dimensional face") {
    Polynomial f = P("x^2 + y^2 + x*y*z + y*z^6 + z^10", {"x", "y", "z"});
    NewtonComplex c = newton_diagram(f);
    auto maximal = c.maximal_faces();
    REQUIRE(maximal.size() == 1);
    const Face& top = c.faces()[maximal[0]];
    CHECK(top.dim == 2);
    CHECK(top.support_hyperplane.weights == std::vector<long>{5, 5, 1});
    CHECK(top.support_hyperplane.offset == 10);
    CHECK(top.lattice_points == std::vector<Exponent>{E({0, 0, 10}), E({0, 2, 0}), E({2, 0, 0})});
    CHECK(c.meets_all_axes());
}

TEST_CASE("degenerate diagram inputs are rejected") {
    CHECK_THROWS_AS(newton_diagram(Polynomial(2)), std::invalid_argument);
    CHECK_THROWS_AS(newton_diagram(P("5", {"x", "y"})), std::invalid_argument);
}

TEST_CASE("face restriction of a vertex") {
    Polynomial f = P("x^6 + x^4*y + x^3*y^3 + x^2*y^2 + y^4", {"x", "y"});
    NewtonComplex c = newton_diagram(f);
    const Face& v = face_with_points(c, {E({0, 4})});
    CHECK(face_restriction(f, c, v) == P("y^4", {"x", "y"}));
    Face foreign;
    foreign.lattice_points = {E({1, 1})};
    foreign.support_hyperplane = WeightVector{{1, 1}, 2};
    CHECK_THROWS_AS(face_restriction(f, c, foreign), std::invalid_argument);
}

TEST_CASE("principal polynomials enumerate even face points") {
    Polynomial f = P("x^6 + x^4*y + x^3*y^3 + x^2*y^2 + y^4", {"x", "y"});
    NewtonComplex c = newton_diagram(f);
    const Face& g1 = face_with_points(c, {E({0, 4}), E({2, 2})});
    CHECK(principal_polynomial(c, g1) == P("y^4 + x^2*y^2", {"x", "y"}));

    const Face& v = face_with_points(c, {E({6, 0})});
    CHECK(principal_polynomial(c, v) == P("x^6", {"x", "y"}));

    Polynomial g = P("x^16 + y^10 - x^13*y^2", {"x", "y"});
    NewtonComplex cg = newton_diagram(g);
    auto maximal = cg.maximal_faces();
    REQUIRE(maximal.size() == 1);
    const Face& edge = cg.faces()[maximal[0]];
    CHECK(edge.lattice_points == std::vector<Exponent>{E({0, 10}), E({16, 0})});
    // Brute-force oracle: even integer points on the segment (16,0)-(0,10).
    Polynomial expected(2);
    for (int x = 0; x <= 16; ++x)
        for (int y = 0; y <= 10; ++y)
            if (x % 2 == 0 && y % 2 == 0 && 5 * x + 8 * y == 80)
                expected.add_term(E({x, y}), Rational(1));
    CHECK(principal_polynomial(cg, edge) == expected);
    CHECK(principal_polynomial(cg, edge) == P("x^16 + y^10", {"x", "y"}));
}

TEST_CASE("even region closures") {
    Polynomial g = P("x^16 + y^10 - x^13*y^2", {"x", "y"});
    EvenRegion region = even_region(g);
    CHECK(region.bases() == std::vector<Exponent>{E({0, 10}), E({16, 0})});
    CHECK(region.contains(E({0, 12})));
    CHECK_FALSE(region.contains(E({15, 0})));
    CHECK(region.contains(E({18, 4})));
    // The two closures differ exactly on odd translates.
    CHECK(region.contains(E({17, 0})));
    CHECK_FALSE(region.contains_even_translate(E({17, 0})));
    CHECK(region.contains_even_translate(E({18, 0})));
}

TEST_CASE("support lies above every face hyperplane") {
    test::Rng rng(23);
    for (int i = 0; i < 60; ++i) {
        Polynomial f = rng.polynomial(rng.uniform(1, 3), 8, 6);
        if (f.is_zero() || (f.term_count() == 1 && f.support()[0].is_zero())) continue;
        NewtonComplex c = newton_diagram(f);
        for (const auto& face : c.faces()) {
            CHECK(face.support_hyperplane.strictly_positive());
            for (const auto& beta : c.generators()) {
                CHECK(face.support_hyperplane.dot(beta) >= face.support_hyperplane.offset);
            }
            for (const auto& p : face.lattice_points)
                CHECK(face.support_hyperplane.dot(p) == face.support_hyperplane.offset);
            // Separation: exactly the face points meet the hyperplane.
            for (const auto& beta : c.generators()) {
                bool onplane =
                    face.support_hyperplane.dot(beta) == face.support_hyperplane.offset;
                bool listed = std::find(face.lattice_points.begin(), face.lattice_points.end(),
                                        beta) != face.lattice_points.end();
                CHECK(onplane == listed);
            }
        }
    }
}

TEST_CASE("face intersections are common subfaces") {
    Polynomial f = P("x^6 + x^4*y + x^3*y^3 + x^2*y^2 + y^4", {"x", "y"});
    NewtonComplex c = newton_diagram(f);
    for (const auto& a : c.faces())
        for (const auto& b : c.faces()) {
            std::vector<Exponent> meet;
            std::set_intersection(a.lattice_points.begin(), a.lattice_points.end(),
                                  b.lattice_points.begin(), b.lattice_points.end(),
                                  std::back_inserter(meet));
            if (meet.empty() || meet == a.lattice_points || meet == b.lattice_points) continue;
            bool found = false;
            for (const auto& s : c.faces())
                if (s.lattice_points == meet) found = true;
            CHECK(found);
        }
}

TEST_CASE("vertices agree with the convex-combination oracle") {
    test::Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        std::size_t n = rng.uniform(1, 3);
        Polynomial f = rng.polynomial(n, 12, 5);
        if (f.is_zero() || (f.term_count() == 1 && f.support()[0].is_zero())) continue;
        NewtonComplex c = newton_diagram(f);
        auto support = f.support();
        for (std::size_t k = 0; k < support.size(); ++k) {
            bool is_vertex = std::binary_search(c.vertices().begin(), c.vertices().end(),
                                                support[k]);
            CHECK(is_vertex == oracle_is_vertex(support, k));
        }
    }
}
