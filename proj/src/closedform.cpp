#include "kharmonic/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace kharmonic {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// The audit never trusts a printed value below this master-residual bar.
constexpr double kMasterTol = 1e-9;
// The juxtaposition-ambiguous radicals get a looser bar; see product_radicals.
constexpr double kRadicalTol = 1e-6;
constexpr double kImagTol = 1e-8;

ClosedFormResult inapplicable(std::string source, std::string diagnostic) {
    ClosedFormResult r;
    r.applicable = false;
    r.source = std::move(source);
    r.diagnostic = std::move(diagnostic);
    return r;
}

// Torus cubic with a real ratio: q^3 - (k-1) q^2 + (k-1) a q - a.
Polynomial torus_cubic(double a, int k) {
    Rational ar = rat_from_double(a);
    return Polynomial(std::vector<Rational>{-ar, Rational(k - 1) * ar, rat(-(k - 1)), rat(1)});
}

}  // namespace

double scaled_residual(const Polynomial& p, double x) {
    double scale = 1.0;
    for (const Rational& c : p.coeffs()) scale = std::max(scale, std::abs(to_double(c)));
    return std::abs(p.eval(x)) / scale;
}

ClosedFormResult balanced_clifford(int k) {
    require(k >= 2, "balanced_clifford: order k must be >= 2");
    ClosedFormResult r;
    r.source = "paired radicals sqrt((k-2 +- sqrt(k(k-4)))/2)";
    if (k <= 4) return r;  // no proper parameters below order 5
    double root = std::sqrt(double(k) * (k - 4));
    double q_plus = (k - 2 + root) / 2.0;
    double q_minus = (k - 2 - root) / 2.0;
    r.values = {std::sqrt(q_plus), std::sqrt(q_minus)};
    Polynomial cubic = master_clifford(2, 1, k).poly;
    r.residual = std::max(scaled_residual(cubic, q_plus), scaled_residual(cubic, q_minus));
    return r;
}

ClosedFormResult cardano_clifford(double a, int k) {
    require(a > 0, "cardano_clifford: ratio a must be positive");
    require(k >= 3, "cardano_clifford: order k must be >= 3");
    double ka = double(k);
    // Radicand of the leading square root; negative means all-real-roots
    // territory and sends the evaluation through complex arithmetic.
    double radicand =
        -a * (a * std::pow(ka, 4) - 4 * (a * a + a + 1) * std::pow(ka, 3) +
              12 * (a + 1) * (a + 1) * ka * ka - 4 * (3 * a * a + 10 * a + 3) * ka +
              4 * (a - 1) * (a - 1));
    double tail = (-2 * std::pow(ka, 3) + 9 * a * (ka * ka - 2 * ka - 2) +
                   2 * (3 * ka * ka - 3 * ka + 1)) /
                  54.0;
    std::complex<double> A =
        std::sqrt(std::complex<double>(radicand, 0.0)) / (2.0 * std::pow(3.0, 1.5)) - tail;
    std::string source = radicand < 0 ? "principal complex cube root branch"
                                      : "real cube root branch";
    if (std::abs(A) < 1e-12)
        return inapplicable(source, "cube-root base A vanishes; the printed quotient is undefined");
    // Complex arithmetic only where the radicand forces it; a real A takes
    // the sign-correct real cube root (the principal complex branch of a
    // negative real would leave the cubic's real root).
    std::complex<double> cbrtA =
        radicand < 0 ? std::pow(A, 1.0 / 3.0) : std::complex<double>(std::cbrt(A.real()), 0.0);
    double num = ka * ka - 3 * a * (ka - 1) - 2 * ka + 1;
    std::complex<double> q = cbrtA + num / (9.0 * cbrtA) + (ka - 1) / 3.0;
    if (std::abs(q.imag()) > kImagTol)
        return inapplicable(source, "assembled lambda^2 keeps an imaginary part beyond 1e-8");
    double q_real = q.real();
    if (!(q_real > 0))
        return inapplicable(source, "assembled lambda^2 is not positive");
    ClosedFormResult r;
    r.source = std::move(source);
    r.values = {std::sqrt(q_real)};
    r.residual = scaled_residual(torus_cubic(a, k), q_real);
    if (r.residual > kMasterTol) {
        r.applicable = false;
        r.diagnostic = "cube-root formula misses the certified cubic root (residual above 1e-9)";
    }
    return r;
}

ClosedFormResult balanced_product(int k) {
    require(k >= 2, "balanced_product: order k must be >= 2");
    ClosedFormResult r;
    r.paired = true;
    r.source = "paired radicals (1 +- sqrt((k-4)/k))/2";
    if (k <= 4) return r;
    double s = std::sqrt((k - 4) / double(k));
    double t_hi = (1 + s) / 2.0, t_lo = (1 - s) / 2.0;
    double r_hi = std::sqrt(t_hi), r_lo = std::sqrt(t_lo);
    r.values = {r_hi, r_lo, r_lo, r_hi};  // both orderings of (r1, r2)
    Polynomial quartic = master_product_sphere(1, 1, k).poly;
    r.residual = std::max(scaled_residual(quartic, t_hi), scaled_residual(quartic, t_lo));
    return r;
}

double hypersurface_radius(int k) {
    require(k >= 2, "hypersurface_radius: order k must be >= 2");
    return 1.0 / std::sqrt(double(k));
}

ClosedFormResult product_radicals(int c, int k) {
    require(k == 3 || k == 4, "product_radicals: printed solutions exist for k = 3 and k = 4");
    require(c >= 2, "product_radicals: dimension ratio c must be >= 2");
    ClosedFormResult r;
    r.paired = true;
    double r1_sq = 0, r2_sq = 0;
    if (k == 3) {
        require(c == 2, "product_radicals: the order-3 radicals assume ratio c = 2");
        // The typeset numerator coefficients "113^(1/3)" and "163^(1/3)" parse
        // as 11 * 3^(1/3) and 16 * 3^(1/3): of the candidate readings these
        // drive the master residual to roundoff, the others miss by ~1.
        double S = 81.0 * std::sqrt(19.0) + 197.0 * std::sqrt(3.0);
        double S13 = std::cbrt(S);
        double S23 = S13 * S13;
        double den = std::pow(3.0, 10.0 / 3.0) * S13;  // (3^(5/3) S^(1/6))^2
        double t316 = std::pow(3.0, 1.0 / 6.0);
        double t313 = std::cbrt(3.0);
        r1_sq = (t316 * S23 + 11.0 * t313 * S13 - 14.0 * std::sqrt(3.0)) / den;
        r2_sq = (-t316 * S23 + 16.0 * t313 * S13 + 14.0 * std::sqrt(3.0)) / den;
        r.source = "numerals read as 11*3^(1/3) and 16*3^(1/3) (least-residual reading)";
    } else {
        double cd = c;
        double C = cd * cd + 4.0 * std::sqrt(cd) * (cd + 1) + 6.0 * cd + 1.0;
        double C13 = std::cbrt(C);
        double C23 = C13 * C13;
        double cm1_13 = std::cbrt(cd - 1.0);
        double cm1_53 = std::pow(cd - 1.0, 5.0 / 3.0);
        double den = 4.0 * C13 * (cd + 1.0);
        r1_sq = (cm1_53 + (cd + 3.0) * C13 + cm1_13 * C23) / den;
        r2_sq = (-cm1_53 + (3.0 * cd + 1.0) * C13 - cm1_13 * C23) / den;
        r.source = "nested cube-root radicals over C = c^2 + 4*sqrt(c)*(c+1) + 6c + 1";
    }
    if (!(r1_sq > 0 && r1_sq < 1 && r2_sq > 0 && r2_sq < 1)) {
        r.applicable = false;
        r.diagnostic = "printed radicals leave the open unit square of radii";
        return r;
    }
    r.values = {std::sqrt(r1_sq), std::sqrt(r2_sq)};
    Polynomial quartic = master_product_sphere(1, c, k).poly;
    r.residual = std::max(scaled_residual(quartic, r1_sq),
                          std::abs(r1_sq + r2_sq - 1.0));
    if (r.residual > kRadicalTol) {
        r.applicable = false;
        r.diagnostic = "printed radicals miss the certified quartic root (residual above 1e-6)";
    }
    return r;
}

}  // namespace kharmonic
