#include "ndsos/mora.hpp"

#include <optional>
#include <stdexcept>

#include "ndsos/newton.hpp"

namespace ndsos {

namespace {

constexpr std::size_t kStepCap = 200000;

bool divides(const Exponent& a, const Exponent& b) {  // x^a | x^b
    return b.dominates(a);
}

// A reducer together with its representation a*f = sum q*_i g_i + poly, so
// reductions by intermediate results keep the global identity exact.
struct Reducer {
    Polynomial poly;
    Exponent lead;
    long ecart_val;
    Polynomial rep_a;
    std::vector<Polynomial> rep_q;
    bool original;
    std::size_t index;  // divisor index for originals, insertion order otherwise
};

}  // namespace

DivisionResult mora_divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                           const LocalOrder& order) {
    if (f.is_zero()) throw std::invalid_argument("division of the zero polynomial");
    const std::size_t n = f.nvars();
    const std::size_t l = divisors.size();
    for (const auto& g : divisors) {
        if (g.is_zero()) throw std::invalid_argument("zero divisor");
        if (g.nvars() != n) throw std::invalid_argument("divisor dimension mismatch");
    }

    std::vector<Reducer> reducers;
    reducers.reserve(l);
    for (std::size_t i = 0; i < l; ++i) {
        Reducer red;
        red.poly = divisors[i];
        red.lead = leading_monomial(divisors[i], order);
        red.ecart_val = ecart(divisors[i], order);
        red.rep_a = Polynomial(n);
        red.rep_q.assign(l, Polynomial(n));
        red.rep_q[i] = Polynomial::constant(n, Rational(1));
        red.original = true;
        red.index = i;
        reducers.push_back(std::move(red));
    }

    Polynomial h = f;
    Polynomial a = Polynomial::constant(n, Rational(1));
    std::vector<Polynomial> q(l, Polynomial(n));
    const Exponent lt_f = leading_monomial(f, order);

    // Reducers are stored originals-first; scanning in order and replacing
    // only on strictly smaller ecart realizes the tie-breaking rule (lowest
    // divisor index, then earliest recorded intermediate).
    auto select = [&](const Exponent& lt_h) -> std::optional<std::size_t> {
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k < reducers.size(); ++k) {
            if (!divides(reducers[k].lead, lt_h)) continue;
            if (!best || reducers[k].ecart_val < reducers[*best].ecart_val) best = k;
        }
        return best;
    };

    for (std::size_t step = 0;; ++step) {
        if (step > kStepCap) throw std::runtime_error("division step cap exceeded");
        if (h.is_zero()) break;
        Exponent lt_h = leading_monomial(h, order);
        long ecart_h = h.degree() - lt_h.total_degree();

        auto sel = select(lt_h);
        if (!sel) break;  // weak normal form reached

        if (reducers[*sel].ecart_val > ecart_h) {
            // The intermediate result may serve as a reducer later; using it
            // is what introduces the unit factor.
            Reducer rec;
            rec.poly = h;
            rec.lead = lt_h;
            rec.ecart_val = ecart_h;
            rec.rep_a = a;
            rec.rep_q = q;
            rec.original = false;
            rec.index = reducers.size();
            reducers.push_back(std::move(rec));
        }

        const Reducer& red = reducers[*sel];
        Rational c = h.coeff(lt_h) / red.poly.coeff(red.lead);
        Polynomial mono = Polynomial::monomial(lt_h - red.lead, c);
        h = h - mono * red.poly;
        if (red.original) {
            q[red.index] = q[red.index] + mono;
        } else {
            a = a - mono * red.rep_a;
            for (std::size_t i = 0; i < l; ++i) q[i] = q[i] - mono * red.rep_q[i];
        }
    }

    DivisionResult out;
    out.unit = a - Polynomial::constant(n, Rational(1));
    out.quotients = std::move(q);
    out.remainder = h;

    if (out.unit.coeff(Exponent(n)) != 0) throw std::logic_error("division unit has constant term");
    Polynomial check = (Polynomial::constant(n, Rational(1)) + out.unit) * f;
    for (std::size_t i = 0; i < l; ++i) check = check - out.quotients[i] * divisors[i];
    check = check - out.remainder;
    if (!check.is_zero()) throw std::logic_error("division identity failed");
    for (std::size_t i = 0; i < l; ++i) {
        if (out.quotients[i].is_zero()) continue;
        Polynomial prod = out.quotients[i] * divisors[i];
        if (!prod.is_zero() && order.greater(leading_monomial(prod, order), lt_f))
            throw std::logic_error("division leading-term bound failed");
    }
    return out;
}

ModifiedDivisionResult modified_mora(const Polynomial& f, const std::vector<Polynomial>& divisors,
                                     const LocalOrder& order) {
    ModifiedDivisionResult out;
    out.base = mora_divide(f, divisors, order);
    const std::size_t n = f.nvars();

    // Leading monomials of the divisors' degree-1 parts.
    std::vector<Exponent> linear_leads;
    for (const auto& g : divisors) {
        Polynomial lin = g.homogeneous_part(1);
        if (!lin.is_zero()) linear_leads.push_back(leading_monomial(lin, order));
    }
    out.r0 = out.base.remainder.filter([&](const Exponent& e) {
        for (const auto& lm : linear_leads)
            if (divides(lm, e)) return false;
        return true;
    });
    if (out.r0.is_zero())
        throw std::runtime_error("degenerate modified division: r0 = 0 has no Newton diagram");

    NewtonComplex complex = newton_diagram(out.r0);
    Polynomial diagram_part(n);
    for (const auto& face : complex.faces())
        for (const auto& e : face.lattice_points)
            if (diagram_part.coeff(e) == 0) diagram_part.add_term(e, out.r0.coeff(e));
    out.diagram_degree = diagram_part.degree();
    const long bound = out.diagram_degree + 1;

    // Working truncation at d+1: under a local order, reducing a term only
    // produces terms of the same or higher degree, so discarded tails never
    // feed back.
    Polynomial h = out.r0.truncate_degree(bound);
    std::vector<Exponent> lead(divisors.size());
    for (std::size_t i = 0; i < divisors.size(); ++i) lead[i] = leading_monomial(divisors[i], order);

    for (std::size_t step = 0;; ++step) {
        if (step > kStepCap) throw std::runtime_error("essential remainder step cap exceeded");
        std::optional<Exponent> target;
        std::size_t which = 0;
        for (const auto& [e, c] : h.terms()) {
            for (std::size_t i = 0; i < divisors.size(); ++i) {
                if (!divides(lead[i], e)) continue;
                if (!target || order.greater(e, *target)) {
                    target = e;
                    which = i;
                }
                break;
            }
        }
        if (!target) break;
        Rational c = h.coeff(*target) / divisors[which].coeff(lead[which]);
        Polynomial mono = Polynomial::monomial(*target - lead[which], c);
        h = (h - mono * divisors[which]).truncate_degree(bound);
    }
    out.essential = h;
    return out;
}

}  // namespace ndsos
