#pragma once

#include <string>
#include <vector>

#include "kharmonic/polysolve.hpp"

namespace kharmonic {

// A printed closed-form solution evaluated in floating point, together with
// the certificate data needed to audit it against the master polynomials.
struct ClosedFormResult {
    std::vector<double> values;  // parameters; consecutive (r1, r2) pairs when paired
    bool paired = false;
    double residual = 0;  // max scaled |master at value^2| over the values
    std::string source;   // which algebraic reading / branch produced the values
    bool applicable = true;
    std::string diagnostic;  // names the failing expression when !applicable
};

// Balanced torus (m = 2p): lambda = sqrt((k-2 ± sqrt(k(k-4)))/2).
// Empty value list for k <= 4: no proper parameters exist there.
ClosedFormResult balanced_clifford(int k);

// General torus ratio a = (m-p)/p, k >= 3: cube-root formula for lambda^2.
// A negative inner radicand goes through the principal complex cube root and
// the imaginary part of the assembled value must vanish to 1e-8. A vanishing
// cube-root base, a non-positive lambda^2, or a master residual beyond 1e-9
// flags the formula as inapplicable instead of coercing a value.
ClosedFormResult cardano_clifford(double a, int k);

// Balanced product submersion (n1 = n2): r1^2 = (1 ± sqrt((k-4)/k))/2, both
// orderings of the (r1, r2) pair. Empty for k <= 4.
ClosedFormResult balanced_product(int k);

// Hypersurface scale at every order: a = 1/sqrt(k).
double hypersurface_radius(int k);

// Printed radical solutions for the unbalanced product submersion with
// integer radius-dimension ratio c = n2/n1. k = 3 requires c = 2; k = 4
// accepts any c >= 2. The k = 3 numerals contain ambiguous juxtapositions;
// the reading that minimizes the master residual is used and recorded in
// `source`. Residuals beyond 1e-6 flag the reading as inapplicable.
ClosedFormResult product_radicals(int c, int k);

// |p(x)| scaled by max(1, largest |coefficient|): the audit residual.
double scaled_residual(const Polynomial& p, double x);

}  // namespace kharmonic
