#include "ndsos/newton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ndsos/linalg.hpp"

namespace ndsos {

namespace {

constexpr std::size_t kMaxVars = 6;

long vec_gcd(const std::vector<long>& v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, std::abs(x));
    return g;
}

// Primitive integer vector spanning the 1-dimensional nullspace of the
// rational row space, or nullopt when the nullspace dimension differs.
std::optional<std::vector<long>> primitive_normal(const QMat& rows, std::size_t n) {
    QMat m = rows;
    if (m.empty()) m.push_back(QVec(n, Rational(0)));
    auto basis = nullspace(std::move(m));
    if (basis.size() != 1) return std::nullopt;
    // Clear denominators, then divide by the gcd.
    mpz_class lcm_den(1);
    for (const auto& q : basis[0]) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<long> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class z = basis[0][i].get_num() * (lcm_den / basis[0][i].get_den());
        if (!z.fits_slong_p()) return std::nullopt;
        out[i] = z.get_si();
    }
    long g = vec_gcd(out);
    if (g == 0) return std::nullopt;
    for (auto& x : out) x /= g;
    return out;
}

struct NormalLess {
    bool operator()(const WeightVector& a, const WeightVector& b) const {
        if (a.offset != b.offset) return a.offset < b.offset;
        return a.weights < b.weights;
    }
};

// Enumerates subsets of {0..pool-1} of the given size.
void for_each_subset(std::size_t pool, std::size_t size,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(size);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t k) {
        if (k == size) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i + (size - k) <= pool; ++i) {
            idx[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

NewtonComplex NewtonComplex::of(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("Newton diagram of the zero polynomial");
    const std::size_t n = f.nvars();
    if (n == 0 || n > kMaxVars)
        throw std::invalid_argument("Newton diagram supports 1 to 6 variables");
    std::vector<Exponent> support = f.support();
    if (support.size() == 1 && support[0].is_zero())
        throw std::invalid_argument("Newton diagram of a constant polynomial");

    NewtonComplex out;
    out.nvars_ = n;
    out.generators_ = support;
    const std::size_t s = support.size();

    // Supporting inequalities A.x >= v of conv(supp f + R_+^n): candidate
    // normals from affinely independent generator subsets padded with
    // coordinate directions. Over-generation is harmless; completeness needs
    // every facet's affine hull to be spanned this way, which holds because
    // facet recession cones are coordinate cones.
    std::set<WeightVector, NormalLess> normals;
    for (std::size_t t = 1; t <= std::min(n, s); ++t) {
        std::size_t axes_needed = n - t;  // (t-1) point directions + axes = n-1
        if (axes_needed > n) continue;
        for_each_subset(s, t, [&](const std::vector<std::size_t>& pts) {
            QMat rows;
            for (std::size_t k = 1; k < t; ++k) {
                QVec row(n);
                for (std::size_t i = 0; i < n; ++i)
                    row[i] = Rational(support[pts[k]][i] - support[pts[0]][i]);
                rows.push_back(std::move(row));
            }
            if (rank(rows) != t - 1) return;  // affinely dependent
            for_each_subset(n, axes_needed, [&](const std::vector<std::size_t>& axes) {
                QMat sys = rows;
                for (std::size_t a : axes) {
                    QVec row(n, Rational(0));
                    row[a] = 1;
                    sys.push_back(std::move(row));
                }
                auto normal = primitive_normal(sys, n);
                if (!normal) return;
                for (int orient = 0; orient < 2; ++orient) {
                    std::vector<long> a = *normal;
                    if (orient) for (auto& x : a) x = -x;
                    bool nonneg = std::all_of(a.begin(), a.end(), [](long x) { return x >= 0; });
                    if (!nonneg) continue;
                    WeightVector h{a, 0};
                    long v = h.dot(support[pts[0]]);
                    bool supports = true;
                    for (const auto& beta : support)
                        if (h.dot(beta) < v) {
                            supports = false;
                            break;
                        }
                    if (!supports) continue;
                    h.offset = v;
                    normals.insert(std::move(h));
                }
            });
        });
    }
    out.inequalities_.assign(normals.begin(), normals.end());

    // Active inequality set per generator; faces arise as intersection
    // closures of these sets.
    const std::size_t m = out.inequalities_.size();
    std::vector<std::vector<bool>> active(s, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < m; ++j)
            active[i][j] = out.inequalities_[j].dot(support[i]) == out.inequalities_[j].offset;

    std::set<std::vector<bool>> family;
    for (const auto& a : active) family.insert(a);
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<std::vector<bool>> snapshot(family.begin(), family.end());
        for (std::size_t i = 0; i < snapshot.size(); ++i)
            for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
                std::vector<bool> meet(m);
                bool nonempty = false;
                for (std::size_t k = 0; k < m; ++k) {
                    meet[k] = snapshot[i][k] && snapshot[j][k];
                    nonempty |= meet[k];
                }
                if (nonempty && family.insert(meet).second) grew = true;
            }
    }

    // Canonicalize each candidate active set to the face it generates.
    std::map<std::vector<std::size_t>, Face> by_points;
    for (const auto& j_set : family) {
        std::vector<std::size_t> pts;
        for (std::size_t i = 0; i < s; ++i) {
            bool on = true;
            for (std::size_t k = 0; k < m && on; ++k)
                if (j_set[k] && !active[i][k]) on = false;
            if (on) pts.push_back(i);
        }
        if (pts.empty()) continue;
        // Maximal active set of the point set = facets containing all points.
        std::vector<std::size_t> full;
        for (std::size_t k = 0; k < m; ++k) {
            bool all = true;
            for (std::size_t i : pts)
                if (!active[i][k]) {
                    all = false;
                    break;
                }
            if (all) full.push_back(k);
        }
        WeightVector star{std::vector<long>(n, 0), 0};
        for (std::size_t k : full) {
            for (std::size_t i = 0; i < n; ++i) star.weights[i] += out.inequalities_[k].weights[i];
            star.offset += out.inequalities_[k].offset;
        }
        if (!star.strictly_positive()) continue;  // non-compact face
        if (by_points.count(pts)) continue;
        Face face;
        face.support_hyperplane = star;
        for (std::size_t i : pts) face.lattice_points.push_back(support[i]);
        QMat dirs;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            QVec row(n);
            for (std::size_t c = 0; c < n; ++c)
                row[c] = Rational(support[pts[i]][c] - support[pts[0]][c]);
            dirs.push_back(std::move(row));
        }
        face.dim = static_cast<int>(rank(std::move(dirs)));
        by_points.emplace(pts, std::move(face));
    }

    // Vertices are the 0-dimensional compact faces.
    for (const auto& [pts, face] : by_points)
        if (face.dim == 0) out.vertices_.push_back(face.lattice_points.front());
    std::sort(out.vertices_.begin(), out.vertices_.end());

    for (auto& [pts, face] : by_points) {
        for (const auto& v : out.vertices_)
            if (std::binary_search(face.lattice_points.begin(), face.lattice_points.end(), v))
                face.vertexset.push_back(v);
        out.faces_.push_back(std::move(face));
    }

    // Maximality by lattice-point containment among compact faces.
    for (std::size_t i = 0; i < out.faces_.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < out.faces_.size() && maximal; ++j) {
            if (i == j) continue;
            const auto& a = out.faces_[i].lattice_points;
            const auto& b = out.faces_[j].lattice_points;
            if (a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end()))
                maximal = false;
        }
        out.faces_[i].maximal = maximal;
    }
    return out;
}

std::vector<std::size_t> NewtonComplex::maximal_faces() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].maximal) idx.push_back(i);
    return idx;
}

bool NewtonComplex::polyhedron_contains(const std::vector<Rational>& p) const {
    if (p.size() != nvars_) throw std::invalid_argument("membership dimension mismatch");
    for (const auto& q : p)
        if (q < 0) return false;
    for (const auto& h : inequalities_) {
        Rational dot(0);
        for (std::size_t i = 0; i < nvars_; ++i) dot += Rational(h.weights[i]) * p[i];
        if (dot < h.offset) return false;
    }
    return true;
}

bool NewtonComplex::polyhedron_contains(const Exponent& p) const {
    std::vector<Rational> q(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) q[i] = p[i];
    return polyhedron_contains(q);
}

bool NewtonComplex::owns(const Face& face) const {
    for (const auto& f : faces_)
        if (f.lattice_points == face.lattice_points &&
            f.support_hyperplane.weights == face.support_hyperplane.weights &&
            f.support_hyperplane.offset == face.support_hyperplane.offset)
            return true;
    return false;
}

bool NewtonComplex::face_contains(const Face& face, const Exponent& p) const {
    if (face.support_hyperplane.dot(p) != face.support_hyperplane.offset) return false;
    return polyhedron_contains(p);
}

std::vector<Exponent> NewtonComplex::face_integer_points(const Face& face) const {
    if (face.vertexset.empty()) throw std::invalid_argument("face without vertices");
    const std::size_t n = nvars_;
    std::vector<int> lo(n, INT32_MAX), hi(n, 0);
    for (const auto& v : face.vertexset)
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    double volume = 1;
    for (std::size_t i = 0; i < n; ++i) volume *= hi[i] - lo[i] + 1;
    if (volume > 5e6) throw std::runtime_error("face lattice enumeration too large");

    std::vector<Exponent> points;
    Exponent cur(n);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            if (face_contains(face, cur)) points.push_back(cur);
            return;
        }
        for (int v = lo[i]; v <= hi[i]; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return points;
}

bool NewtonComplex::meets_all_axes() const {
    for (std::size_t axis = 0; axis < nvars_; ++axis) {
        bool hit = false;
        for (const auto& g : generators_) {
            bool on_axis = true;
            for (std::size_t i = 0; i < nvars_ && on_axis; ++i)
                if (i != axis && g[i] != 0) on_axis = false;
            if (on_axis && g[axis] > 0) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

long NewtonComplex::diagram_degree() const {
    long d = 0;
    for (const auto& face : faces_)
        for (const auto& p : face.lattice_points) d = std::max(d, p.total_degree());
    return d;
}

NewtonComplex newton_diagram(const Polynomial& f) { return NewtonComplex::of(f); }

Polynomial face_restriction(const Polynomial& f, const NewtonComplex& complex, const Face& face) {
    if (!complex.owns(face)) throw std::invalid_argument("face does not belong to this complex");
    Polynomial out(f.nvars());
    for (const auto& p : face.lattice_points) out.add_term(p, f.coeff(p));
    return out;
}

Polynomial principal_polynomial(const NewtonComplex& complex, const Face& face) {
    Polynomial out(complex.nvars());
    for (const auto& p : complex.face_integer_points(face))
        if (p.is_even()) out.add_term(p, Rational(1));
    if (out.is_zero())
        throw std::invalid_argument("face has no even lattice point");
    return out;
}

EvenRegion EvenRegion::of_support(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("even region of the zero polynomial");
    std::vector<Exponent> bases;
    for (const auto& [e, c] : f.terms())
        if (e.is_even()) bases.push_back(e);
    return from_bases(f.nvars(), std::move(bases));
}

EvenRegion EvenRegion::from_bases(std::size_t nvars, std::vector<Exponent> bases) {
    for (const auto& b : bases) {
        if (b.nvars() != nvars) throw std::invalid_argument("region base dimension mismatch");
        if (!b.is_even()) throw std::invalid_argument("region base must be even");
    }
    // Keep the minimal elements; domination by an even base preserves even
    // differences, so both closure flavours agree on the reduction.
    std::vector<Exponent> minimal;
    for (const auto& b : bases) {
        bool dominated = false;
        for (const auto& other : bases)
            if (other != b && b.dominates(other) && !(other.dominates(b) && other < b)) {
                if (other == b) continue;
                dominated = true;
                break;
            }
        if (!dominated) minimal.push_back(b);
    }
    std::sort(minimal.begin(), minimal.end());
    minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
    EvenRegion out;
    out.nvars_ = nvars;
    out.bases_ = std::move(minimal);
    return out;
}

bool EvenRegion::contains(const Exponent& p) const {
    for (const auto& b : bases_)
        if (p.dominates(b)) return true;
    return false;
}

bool EvenRegion::contains_even_translate(const Exponent& p) const {
    for (const auto& b : bases_) {
        if (!p.dominates(b)) continue;
        bool even = true;
        for (std::size_t i = 0; i < nvars_ && even; ++i)
            if ((p[i] - b[i]) % 2 != 0) even = false;
        if (even) return true;
    }
    return false;
}

EvenRegion even_region(const Polynomial& f) { return EvenRegion::of_support(f); }

}  // namespace ndsos
