#pragma once

// Shared test fixtures. The oracle functions here work from a plain table of
// (world, pi, p) rows and never call into the library's probability code, so
// they can derive expected values independently.

#include <cfprob/cfprob.hpp>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace cfprob::testing {

struct Row {
    const char* world;
    double pi;
    double p;
};

// The running three-atom example: ~A and B believed, C open.
inline const std::vector<Row>& fig1_rows()
{
    static const std::vector<Row> rows = {
        {"~A B C", 1.0, 0.5},  {"~A B ~C", 1.0, 0.3}, {"A B C", 0.6, 0.08},
        {"A B ~C", 0.6, 0.04}, {"A ~B C", 0.4, 0.05}, {"~A ~B C", 0.4, 0.03},
    };
    return rows;
}

inline const Vocabulary& abc()
{
    static const Vocabulary v({"A", "B", "C"});
    return v;
}

inline World w(const char* literals) { return parse_world_literals(literals, abc()); }

inline WorldSet worlds(std::initializer_list<const char*> lits)
{
    WorldSet s = abc().no_worlds();
    for (const char* l : lits) s.insert(w(l));
    return s;
}

inline CpmModel fig1()
{
    std::vector<double> pi(8, 0.0);
    std::vector<double> p(8, 0.0);
    for (const auto& r : fig1_rows()) {
        pi[w(r.world).index] = r.pi;
        p[w(r.world).index] = r.p;
    }
    return CpmModel(PossibilityModel(abc(), pi), p);
}

inline Formula f(const std::string& text) { return parse_formula(text, abc()); }

namespace oracle {

using Pred = std::function<bool(const Row&)>;

// Row predicate from a formula, evaluated through the literal string only.
inline Pred holds(const std::string& formula)
{
    const Formula parsed = f(formula);
    return [parsed](const Row& r) { return parsed.eval(w(r.world)); };
}

// Max pi over rows satisfying `a` (rows absent from the table have pi 0).
inline double possibility(const std::vector<Row>& rows, const Pred& a)
{
    double best = 0.0;
    for (const auto& r : rows)
        if (a(r) && r.pi > best) best = r.pi;
    return best;
}

// Sum of p over the top-pi rows satisfying `a` that also satisfy `b`, divided
// by the sum over those top rows. NaN when no row satisfies `a` with pi > 0.
inline double counterfactual(const std::vector<Row>& rows, const Pred& b, const Pred& a)
{
    const double top = possibility(rows, a);
    double num = 0.0, den = 0.0;
    for (const auto& r : rows) {
        if (!a(r) || r.pi != top || top == 0.0) continue;
        den += r.p;
        if (b(r)) num += r.p;
    }
    return den == 0.0 ? std::nan("") : num / den;
}

}  // namespace oracle
}  // namespace cfprob::testing
