#pragma once

#include <optional>
#include <stdexcept>
#include <variant>

#include "kharmonic/exact.hpp"

namespace kharmonic {

// The four model families. Parameters are validated on construction through
// the factory functions below. The squared scale (a^2, lambda^2, r1^2) is the
// canonical internal variable; it is carried exactly when the model was built
// from rational input, and only as a double otherwise (e.g. for irrational
// closed-form values).

struct SmallSphere {  // S^m(a) -> S^{m+1}, 0 < a < 1
    int m = 0;
    double a = 0;
    std::optional<Rational> a2{};
};

struct CliffordTorus {  // S^p(1/sqrt(1+lambda^2)) x S^{m-p}(lambda/sqrt(1+lambda^2)) -> S^{m+1}
    int m = 0;
    int p = 0;
    double lambda = 0;
    std::optional<Rational> q{};  // lambda^2
};

struct HypersurfaceSubmersion {  // composite through S^n(a) c S^{n+1}, 0 < a < 1
    int n = 0;
    double a = 0;
    std::optional<Rational> x{};  // a^2
};

struct ProductSphereSubmersion {  // through S^{n1}(r1) x S^{n2}(r2), r2 = sqrt(1 - r1^2)
    int n1 = 0;
    int n2 = 0;
    double r1 = 0;
    std::optional<Rational> t{};  // r1^2
};

using ModelGeometry =
    std::variant<SmallSphere, CliffordTorus, HypersurfaceSubmersion, ProductSphereSubmersion>;

enum class Family { SmallSphere, CliffordTorus, HypersurfaceSubmersion, ProductSphereSubmersion };

const char* family_name(Family f);

// Factories from floating-point parameters (no exactness claimed).
SmallSphere make_small_sphere(int m, double a);
CliffordTorus make_clifford_torus(int m, int p, double lambda);
HypersurfaceSubmersion make_hypersurface(int n, double a);
ProductSphereSubmersion make_product_sphere(int n1, int n2, double r1);

// Factories from an exact rational squared parameter.
SmallSphere small_sphere_from_square(int m, const Rational& a2);
CliffordTorus clifford_torus_from_square(int m, int p, const Rational& q);
HypersurfaceSubmersion hypersurface_from_square(int n, const Rational& x);
ProductSphereSubmersion product_sphere_from_square(int n1, int n2, const Rational& t);

// The scalar data driving every tau_k evaluation. `c` is the normal curvature
// scale of the two hypersurface-in-sphere families and is absent otherwise.
// Exact counterparts are present when the model carried an exact square.
struct ScalarInvariants {
    int m_eff = 0;
    double beta = 0;   // |B|^2
    double tau2 = 0;   // |tau(phi)|^2
    std::optional<double> c{};
    std::optional<Rational> beta_exact{};
    std::optional<Rational> tau2_exact{};
    std::optional<Rational> c2_exact{};
};

ScalarInvariants invariants(const ModelGeometry& model);

// True iff tau2 < tol^2 (the map is harmonic at this tolerance).
bool is_harmonic(const ModelGeometry& model, double tol = 1e-10);

// Thrown when a family has no harmonic parameter (tau never vanishes there).
struct NotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The parameter value at which the family is harmonic: lambda = sqrt((m-p)/p)
// for the torus family (d1 = m, d2 = p), r1 = sqrt(n1/(n1+n2)) for the product
// family (d1 = n1, d2 = n2). Throws NotApplicable for the two hypersurface
// families, which are never harmonic on their parameter range.
double harmonic_parameter(Family family, int d1, int d2);

}  // namespace kharmonic
