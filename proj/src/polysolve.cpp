#include "kharmonic/polysolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kharmonic/tension.hpp"

namespace kharmonic {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

Polynomial from_rationals(std::vector<Rational> cs) { return Polynomial(std::move(cs)); }

int multiplicity_at(const Polynomial& p, const Rational& r) {
    int mult = 0;
    Polynomial cur = p;
    Polynomial lin = from_rationals({-r, rat(1)});
    while (cur.degree() >= 1 && cur.eval(r) == 0) {
        cur = cur.divmod(lin).first;
        ++mult;
    }
    return mult;
}

}  // namespace

const char* variable_name(Variable v) {
    switch (v) {
        case Variable::Q: return "q";
        case Variable::T: return "t";
        case Variable::X: return "x";
    }
    return "?";
}

MasterPolynomial master_clifford(int m, int p, int k) {
    require(m >= 2, "clifford: m must be >= 2");
    require(p >= 1 && p <= m - 1, "clifford: p must lie in [1, m-1]");
    require(k >= 2, "clifford: order k must be >= 2");
    Rational a = rat(m - p, p);
    MasterPolynomial mp;
    mp.variable = Variable::Q;
    mp.domain_lo = rat(0);
    mp.domain_hi = std::nullopt;
    mp.excluded_roots = {a};
    if (k == 2) {
        // p q^2 - m q + (m - p); roots q = 1 and q = a.
        mp.poly = from_rationals({rat(m - p), rat(-m), rat(p)});
    } else {
        mp.poly = from_rationals({-a, Rational(k - 1) * a, rat(-(k - 1)), rat(1)});
    }
    return mp;
}

MasterPolynomial master_product_sphere(int n1, int n2, int k) {
    require(n1 >= 1 && n2 >= 1, "product: sphere dimensions must be >= 1");
    require(k >= 2, "product: order k must be >= 2");
    int n = n1 + n2;
    // A(t) = n1 (1-t)^2 + n2 t^2, W(t) = n2 t - n1 (1-t), s(t) = t (1-t).
    Polynomial t = from_rationals({rat(0), rat(1)});
    Polynomial one_minus_t = from_rationals({rat(1), rat(-1)});
    Polynomial A = (one_minus_t * one_minus_t) * rat(n1) + (t * t) * rat(n2);
    Polynomial W = t * rat(n2) - one_minus_t * rat(n1);
    Polynomial s = t * one_minus_t;
    Polynomial Q = A * A - (s * A) * rat(n) - (s * (W * W)) * rat(k - 2);
    MasterPolynomial mp;
    mp.variable = Variable::T;
    mp.poly = Q;
    mp.domain_lo = rat(0);
    mp.domain_hi = rat(1);
    mp.excluded_roots = {rat(n1, n)};
    return mp;
}

MasterPolynomial master_hypersurface(int n, int k) {
    require(n >= 1, "hypersurface: dimension must be >= 1");
    require(k >= 2, "hypersurface: order k must be >= 2");
    MasterPolynomial mp;
    mp.variable = Variable::X;
    mp.poly = from_rationals({rat(-1), rat(k)});
    mp.domain_lo = rat(0);
    mp.domain_hi = rat(1);
    mp.excluded_roots = {};
    return mp;
}

Polynomial clifford_condition_polynomial(int m, int p, int k) {
    require(m >= 2 && p >= 1 && p <= m - 1, "clifford: invalid dimensions");
    require(k >= 2, "clifford: order k must be >= 2");
    // beta = (p q^2 + (m-p)) / q, tau2 = (p q - (m-p))^2 / q; clear q^2.
    Polynomial q = from_rationals({rat(0), rat(1)});
    Polynomial B = (q * q) * rat(p) + from_rationals({rat(m - p)});  // q * beta
    Polynomial W = q * rat(p) - from_rationals({rat(m - p)});        // q * tau2 = W^2
    return B * B - (q * B) * rat(m) - (q * (W * W)) * rat(k - 2);
}

std::vector<IsolatedRoot> isolate_roots(const MasterPolynomial& mp) {
    auto roots = isolate_real_roots(mp.poly, mp.domain_lo, mp.domain_hi);
    // Shrink every interval clear of the excluded rationals so that interval
    // membership alone decides whether a root is a harmonic locus.
    for (auto& r : roots) {
        if (r.exact) continue;
        for (const auto& ex : mp.excluded_roots) {
            while (r.lo < ex && ex < r.hi) {
                Rational mid = (r.lo + r.hi) / 2;
                int sm = mp.poly.sign_at(mid);
                if (sm == 0) {  // landed exactly on the root (only if rational)
                    r.lo = r.hi = mid;
                    r.exact = mid;
                    break;
                }
                int slo = mp.poly.sign_at(r.lo);
                if (slo != 0 && slo != sm)
                    r.hi = mid;
                else
                    r.lo = mid;
            }
        }
    }
    return roots;
}

double refine_root(const MasterPolynomial& mp, const IsolatedRoot& root, double tol) {
    if (root.exact) return to_double(*root.exact);
    return root_value(refine_interval(mp.poly, root, rat_from_double(tol)));
}

MasterPolynomial master_for(Family family, int d1, int d2, int k) {
    switch (family) {
        case Family::CliffordTorus: return master_clifford(d1, d2, k);
        case Family::ProductSphereSubmersion: return master_product_sphere(d1, d2, k);
        case Family::HypersurfaceSubmersion: return master_hypersurface(d1, k);
        case Family::SmallSphere: return master_hypersurface(d1, k);
    }
    throw std::invalid_argument("unknown family");
}

namespace {

ModelGeometry model_from_square(Family family, int d1, int d2, const Rational& sq) {
    switch (family) {
        case Family::CliffordTorus: return clifford_torus_from_square(d1, d2, sq);
        case Family::ProductSphereSubmersion: return product_sphere_from_square(d1, d2, sq);
        case Family::HypersurfaceSubmersion: return hypersurface_from_square(d1, sq);
        case Family::SmallSphere: return small_sphere_from_square(d1, sq);
    }
    throw std::invalid_argument("unknown family");
}

ModelGeometry model_from_double(Family family, int d1, int d2, double param) {
    switch (family) {
        case Family::CliffordTorus: return make_clifford_torus(d1, d2, param);
        case Family::ProductSphereSubmersion: return make_product_sphere(d1, d2, param);
        case Family::HypersurfaceSubmersion: return make_hypersurface(d1, param);
        case Family::SmallSphere: return make_small_sphere(d1, param);
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace

RootReport classify(Family family, int d1, int d2, int k, double root_tol,
                    double residual_tol) {
    require(root_tol > 0 && residual_tol > 0, "classify: tolerances must be positive");
    MasterPolynomial mp = master_for(family, d1, d2, k);

    RootReport report;
    report.family = family;
    report.d1 = d1;
    report.d2 = d2;
    report.k = k;

    // Excluded (harmonic) roots are tested exactly against the polynomial:
    // a locus only appears in the report when it actually is a root.
    for (const auto& ex : mp.excluded_roots) {
        bool inside = mp.domain_lo < ex && (!mp.domain_hi || ex < *mp.domain_hi);
        if (!inside) continue;
        int mult = multiplicity_at(mp.poly, ex);
        if (mult > 0) report.excluded.push_back({ex, mult});
    }

    for (const auto& iso : isolate_roots(mp)) {
        if (iso.exact) {
            bool harmonic = std::any_of(mp.excluded_roots.begin(), mp.excluded_roots.end(),
                                        [&](const Rational& ex) { return ex == *iso.exact; });
            if (harmonic) continue;  // already reported as excluded
            ProperRoot pr;
            pr.lo = pr.hi = *iso.exact;
            pr.exact_square = *iso.exact;
            pr.value_squared = to_double(*iso.exact);
            pr.value = std::sqrt(pr.value_squared);
            pr.multiplicity = iso.multiplicity;
            // Exact roots are certified through the exact tension reduction.
            ScalarInvariants inv = invariants(model_from_square(family, d1, d2, *iso.exact));
            ReducedTension red = tau_k_reduced(*inv.beta_exact, *inv.tau2_exact, inv.m_eff, k);
            if (red.total != 0)
                throw std::logic_error("exact master root fails the exact tension condition");
            pr.residual = 0.0;
            report.proper_roots.push_back(std::move(pr));
            continue;
        }
        // Irrational root: refine and gate through the floating tension oracle.
        IsolatedRoot refined = refine_interval(mp.poly, iso, rat_from_double(root_tol));
        ProperRoot pr;
        pr.lo = refined.lo;
        pr.hi = refined.hi;
        if (refined.exact) pr.exact_square = *refined.exact;
        pr.value_squared = root_value(refined);
        pr.value = std::sqrt(pr.value_squared);
        pr.multiplicity = iso.multiplicity;
        ScalarInvariants inv = invariants(model_from_double(family, d1, d2, pr.value));
        TensionEvaluation ev = tau_k(inv, k);
        pr.residual = normalized_total(ev);
        if (!(pr.residual <= residual_tol))
            throw std::logic_error("refined master root fails the tension residual gate");
        report.proper_roots.push_back(std::move(pr));
    }

    std::sort(report.proper_roots.begin(), report.proper_roots.end(),
              [](const ProperRoot& a, const ProperRoot& b) {
                  return a.value_squared < b.value_squared;
              });
    return report;
}

}  // namespace kharmonic
