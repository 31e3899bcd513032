#pragma once

#include <optional>
#include <vector>

#include "ndsos/polynomial.hpp"

namespace ndsos {

// A compact face of the Newton polyhedron conv(supp f + R_+^n). The stored
// hyperplane has strictly positive integer normal and cuts the polyhedron
// exactly along this face: supp f intersected with {A.x = v} equals
// lattice_points.
struct Face {
    int dim = 0;
    std::vector<Exponent> vertexset;
    WeightVector support_hyperplane;
    std::vector<Exponent> lattice_points;  // supp f on the face
    bool maximal = false;
};

// Newton polyhedron data of a polynomial: vertices, all compact faces (the
// Newton diagram is their union), and the full facet-inequality description
// used for exact membership tests.
class NewtonComplex {
  public:
    static NewtonComplex of(const Polynomial& f);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Exponent>& generators() const { return generators_; }
    const std::vector<Exponent>& vertices() const { return vertices_; }
    const std::vector<Face>& faces() const { return faces_; }
    std::vector<std::size_t> maximal_faces() const;
    const std::vector<WeightVector>& inequalities() const { return inequalities_; }

    // Exact membership in conv Delta(f), rational coordinates allowed.
    bool polyhedron_contains(const std::vector<Rational>& p) const;
    bool polyhedron_contains(const Exponent& p) const;

    // Point lies on the given face (which must belong to this complex).
    bool face_contains(const Face& face, const Exponent& p) const;

    // All integer points of conv(face.vertexset), i.e. the lattice points of
    // the face itself (not only those in supp f).
    std::vector<Exponent> face_integer_points(const Face& face) const;

    // True when for every axis i some generator is supported on axis i only.
    bool meets_all_axes() const;

    long diagram_degree() const;  // max |alpha| over lattice points of all faces

    bool owns(const Face& face) const;

  private:
    std::size_t nvars_ = 0;
    std::vector<Exponent> generators_;
    std::vector<Exponent> vertices_;
    std::vector<Face> faces_;
    std::vector<WeightVector> inequalities_;
};

NewtonComplex newton_diagram(const Polynomial& f);

// Terms of f supported on the face.
Polynomial face_restriction(const Polynomial& f, const NewtonComplex& complex, const Face& face);

// Sum of x^alpha over all even lattice points of the face; throws when the
// face carries no even lattice point.
Polynomial principal_polynomial(const NewtonComplex& complex, const Face& face);

// Upward closure of the even support points of a polynomial.
class EvenRegion {
  public:
    static EvenRegion of_support(const Polynomial& f);
    static EvenRegion from_bases(std::size_t nvars, std::vector<Exponent> bases);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Exponent>& bases() const { return bases_; }
    bool empty() const { return bases_.empty(); }

    // Membership under R_+^n translates: some base dominated componentwise.
    bool contains(const Exponent& p) const;

    // Membership under (2 Z_+)^n translates: some base with even nonnegative
    // difference. Coincides with contains() for even query points.
    bool contains_even_translate(const Exponent& p) const;

  private:
    std::size_t nvars_ = 0;
    std::vector<Exponent> bases_;  // minimal even generators
};

EvenRegion even_region(const Polynomial& f);

}  // namespace ndsos
