#include "kharmonic/models.hpp"

#include <cmath>
#include <string>

namespace kharmonic {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_open_unit(double v, const char* name) {
    require(v > 0.0 && v < 1.0, std::string(name) + " must lie strictly in (0,1)");
}

void check_open_unit(const Rational& v, const char* name) {
    require(v > 0 && v < 1, std::string(name) + " must lie strictly in (0,1)");
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::SmallSphere: return "smallsphere";
        case Family::CliffordTorus: return "clifford";
        case Family::HypersurfaceSubmersion: return "hypersurface";
        case Family::ProductSphereSubmersion: return "product";
    }
    return "?";
}

SmallSphere make_small_sphere(int m, double a) {
    require(m >= 1, "m must be a positive integer");
    check_open_unit(a, "a");
    return {m, a, std::nullopt};
}

CliffordTorus make_clifford_torus(int m, int p, double lambda) {
    require(m >= 2, "m must be >= 2");
    // p = 0 and p = m degenerate the product structure; those cases are the
    // small sphere, not a torus.
    require(p >= 1 && p <= m - 1, "p must satisfy 1 <= p <= m-1");
    require(lambda > 0.0, "lambda must be positive");
    return {m, p, lambda, std::nullopt};
}

HypersurfaceSubmersion make_hypersurface(int n, double a) {
    require(n >= 1, "n must be a positive integer");
    check_open_unit(a, "a");
    return {n, a, std::nullopt};
}

ProductSphereSubmersion make_product_sphere(int n1, int n2, double r1) {
    require(n1 >= 1 && n2 >= 1, "n1, n2 must be positive integers");
    check_open_unit(r1, "r1");
    return {n1, n2, r1, std::nullopt};
}

SmallSphere small_sphere_from_square(int m, const Rational& a2) {
    require(m >= 1, "m must be a positive integer");
    check_open_unit(a2, "a^2");
    return {m, std::sqrt(to_double(a2)), a2};
}

CliffordTorus clifford_torus_from_square(int m, int p, const Rational& q) {
    require(m >= 2, "m must be >= 2");
    require(p >= 1 && p <= m - 1, "p must satisfy 1 <= p <= m-1");
    require(q > 0, "lambda^2 must be positive");
    return {m, p, std::sqrt(to_double(q)), q};
}

HypersurfaceSubmersion hypersurface_from_square(int n, const Rational& x) {
    require(n >= 1, "n must be a positive integer");
    check_open_unit(x, "a^2");
    return {n, std::sqrt(to_double(x)), x};
}

ProductSphereSubmersion product_sphere_from_square(int n1, int n2, const Rational& t) {
    require(n1 >= 1 && n2 >= 1, "n1, n2 must be positive integers");
    check_open_unit(t, "r1^2");
    return {n1, n2, std::sqrt(to_double(t)), t};
}

namespace {

// Shared by the two umbilic families: c = a/sqrt(1-a^2), beta = m/c^2,
// tau2 = m^2/c^2.
ScalarInvariants umbilic_invariants(int m, double a, const std::optional<Rational>& a2) {
    ScalarInvariants inv;
    inv.m_eff = m;
    if (a2) {
        Rational c2 = *a2 / (1 - *a2);
        inv.c2_exact = c2;
        inv.beta_exact = Rational(m) / c2;
        inv.tau2_exact = Rational(m) * Rational(m) / c2;
        inv.beta = to_double(*inv.beta_exact);
        inv.tau2 = to_double(*inv.tau2_exact);
        inv.c = std::sqrt(to_double(c2));
    } else {
        double c2 = a * a / (1.0 - a * a);
        inv.beta = m / c2;
        inv.tau2 = double(m) * double(m) / c2;
        inv.c = std::sqrt(c2);
    }
    return inv;
}

}  // namespace

ScalarInvariants invariants(const ModelGeometry& model) {
    return std::visit(
        [](const auto& g) -> ScalarInvariants {
            using T = std::decay_t<decltype(g)>;
            ScalarInvariants inv;
            if constexpr (std::is_same_v<T, SmallSphere>) {
                return umbilic_invariants(g.m, g.a, g.a2);
            } else if constexpr (std::is_same_v<T, HypersurfaceSubmersion>) {
                return umbilic_invariants(g.n, g.a, g.x);
            } else if constexpr (std::is_same_v<T, CliffordTorus>) {
                inv.m_eff = g.m;
                if (g.q) {
                    const Rational& q = *g.q;
                    // beta = p q + (m-p)/q, tau2 = (p q - (m-p))^2 / q.
                    inv.beta_exact = (Rational(g.p) * q * q + Rational(g.m - g.p)) / q;
                    Rational w = Rational(g.p) * q - Rational(g.m - g.p);
                    inv.tau2_exact = w * w / q;
                    inv.beta = to_double(*inv.beta_exact);
                    inv.tau2 = to_double(*inv.tau2_exact);
                } else {
                    double l = g.lambda;
                    inv.beta = g.p * l * l + (g.m - g.p) / (l * l);
                    double w = g.p * l - (g.m - g.p) / l;
                    inv.tau2 = w * w;
                }
                return inv;
            } else {
                inv.m_eff = g.n1 + g.n2;
                if (g.t) {
                    const Rational& t = *g.t;
                    Rational s = 1 - t;  // r2^2, exact by construction
                    inv.beta_exact = (Rational(g.n1) * s * s + Rational(g.n2) * t * t) / (t * s);
                    Rational w = Rational(g.n2) * t - Rational(g.n1) * s;
                    inv.tau2_exact = w * w / (t * s);
                    inv.beta = to_double(*inv.beta_exact);
                    inv.tau2 = to_double(*inv.tau2_exact);
                } else {
                    double t = g.r1 * g.r1;
                    double s = 1.0 - t;
                    inv.beta = g.n1 * s / t + g.n2 * t / s;
                    double w = g.n2 * t - g.n1 * s;
                    inv.tau2 = w * w / (t * s);
                }
                return inv;
            }
        },
        model);
}

bool is_harmonic(const ModelGeometry& model, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    return invariants(model).tau2 < tol * tol;
}

double harmonic_parameter(Family family, int d1, int d2) {
    switch (family) {
        case Family::CliffordTorus: {
            CliffordTorus probe = make_clifford_torus(d1, d2, 1.0);  // validates dims
            (void)probe;
            return std::sqrt(double(d1 - d2) / double(d2));
        }
        case Family::ProductSphereSubmersion: {
            ProductSphereSubmersion probe = make_product_sphere(d1, d2, 0.5);
            (void)probe;
            return std::sqrt(double(d1) / double(d1 + d2));
        }
        case Family::SmallSphere:
        case Family::HypersurfaceSubmersion:
            throw NotApplicable("tau never vanishes for a in (0,1); no harmonic parameter");
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace kharmonic
