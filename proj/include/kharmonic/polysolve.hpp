#pragma once

#include <optional>
#include <vector>

#include "kharmonic/models.hpp"
#include "kharmonic/polynomial.hpp"

namespace kharmonic {

// Master polynomials live in the squared parameter:
//   q = lambda^2 on (0, inf), t = r1^2 on (0, 1), x = a^2 on (0, 1).
enum class Variable { Q, T, X };

const char* variable_name(Variable v);

struct MasterPolynomial {
    Variable variable;
    Polynomial poly;  // exact rational coefficients, ascending degree
    Rational domain_lo;
    std::optional<Rational> domain_hi;    // absent: unbounded above
    std::vector<Rational> excluded_roots;  // harmonic loci (exact rationals)
};

// Torus family condition. k >= 3: the cubic
//   q^3 - (k-1) q^2 + (k-1) a q - a,  a = (m-p)/p,
// k == 2: the second-order condition p q^2 - m q + (m-p).
// The harmonic locus q = a is excluded either way.
MasterPolynomial master_clifford(int m, int p, int k);

// Product-of-spheres submersion condition: the quartic in t from clearing
// t^2 (1-t)^2 out of T1^2 - n T1 - (k-2) T2^2 with
//   T1 = (n1 (1-t)^2 + n2 t^2) / (t (1-t)),
//   T2^2 = (n2 t - n1 (1-t))^2 / (t (1-t)).
// The harmonic locus t = n1/(n1+n2) is excluded (it is always a root).
MasterPolynomial master_product_sphere(int n1, int n2, int k);

// Hypersurface (and small-sphere immersion) condition: k x - 1 on (0, 1);
// this family is never harmonic, so nothing is excluded.
MasterPolynomial master_hypersurface(int n, int k);

// The k-harmonicity condition for the torus family assembled directly from
// the invariant templates and cleared of denominators:
//   q^2 (beta^2 - m beta - (k-2) tau2)  as a polynomial in q.
// Equals p^2 (q - a) * cubic(q) exactly; exposed for the factorization check.
Polynomial clifford_condition_polynomial(int m, int p, int k);

// All real roots of the master polynomial inside its open domain, rational
// ones exact, the rest in certified disjoint intervals with multiplicities.
std::vector<IsolatedRoot> isolate_roots(const MasterPolynomial& mp);

// Bisection refinement of one isolated root down to interval width <= tol;
// returns the refined parameter in the squared variable.
double refine_root(const MasterPolynomial& mp, const IsolatedRoot& root, double tol);

struct ProperRoot {
    Rational lo, hi;                       // certified interval (squared variable)
    std::optional<Rational> exact_square;  // set when the root is rational
    double value_squared = 0;
    double value = 0;  // back-mapped parameter: sqrt of the squared variable
    int multiplicity = 1;
    double residual = 0;  // normalized tension residual at this parameter
};

struct ExcludedRootReport {
    Rational value_squared;
    int multiplicity = 1;
};

struct RootReport {
    Family family = Family::CliffordTorus;
    int d1 = 0, d2 = 0;  // (m,p), (n,0), or (n1,n2)
    int k = 0;
    std::vector<ProperRoot> proper_roots;
    std::vector<ExcludedRootReport> excluded;
};

// Classification pipeline: build the master polynomial, isolate and refine
// its domain roots, split off the harmonic loci, back-map the squared
// variable, and gate every survivor through the tension oracle
// (normalized residual <= residual_tol; exactly zero for rational roots).
RootReport classify(Family family, int d1, int d2, int k, double root_tol = 1e-12,
                    double residual_tol = 1e-9);

// The master polynomial classify() uses for a family instance.
MasterPolynomial master_for(Family family, int d1, int d2, int k);

}  // namespace kharmonic
