#include "kharmonic/tension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kharmonic {

double laplacian_power(const ScalarInvariants& inv, int l) {
    if (l < 0) throw std::invalid_argument("laplacian power needs l >= 0");
    double out = 1.0;
    for (int i = 0; i < l; ++i) out *= inv.beta;
    return out;
}

double curvature_trace(const ScalarInvariants& inv, double v_coeff) {
    return inv.m_eff * v_coeff;
}

double cross_contraction(const ScalarInvariants& inv, double w_coeff, double u_coeff) {
    const double tau_coeff = -std::sqrt(inv.tau2);
    return (tau_coeff * w_coeff) * u_coeff;
}

TensionEvaluation tau_k(const ScalarInvariants& inv, int k) {
    if (k < 2) throw std::invalid_argument("tau_k requires k >= 2");
    const double tau_coeff = -std::sqrt(inv.tau2);
    const int s = k / 2;  // k = 2s or k = 2s+1

    TensionEvaluation ev;
    ev.k = k;
    ev.leading_term = laplacian_power(inv, k - 1) * tau_coeff;
    ev.curvature_term = curvature_trace(inv, laplacian_power(inv, k - 2) * tau_coeff);

    // Summand l pairs Lap^{hi} tau with Lap^{lo} tau; the even and odd cases
    // shift hi by one so that hi + lo = k - 3 either way.
    for (int l = 1; l <= s - 1; ++l) {
        const int hi = (k % 2 == 0) ? s + l - 2 : s + l - 1;
        const int lo = s - l - 1;
        const double w = laplacian_power(inv, hi) * tau_coeff;
        const double u = laplacian_power(inv, lo) * tau_coeff;
        const double direct = cross_contraction(inv, w, u);
        const double mirrored = -cross_contraction(inv, u, w);
        ev.cross_terms.push_back(direct - mirrored);
    }
    if (k % 2 == 1) {
        // The extra final term of the odd case, with W = U = Lap^{s-1} tau.
        const double w = laplacian_power(inv, s - 1) * tau_coeff;
        ev.cross_terms.push_back(cross_contraction(inv, w, w));
    }

    double cross_sum = 0.0;
    for (double t : ev.cross_terms) cross_sum += t;
    ev.total = ev.leading_term - ev.curvature_term - cross_sum;

    if (k == 2) {
        ev.factored_total = tau_coeff * (inv.beta - inv.m_eff);
    } else {
        double scale = 1.0;
        for (int i = 0; i < k - 3; ++i) scale *= inv.beta;
        ev.factored_total =
            tau_coeff * scale *
            (inv.beta * inv.beta - inv.m_eff * inv.beta - (k - 2) * inv.tau2);
    }
    return ev;
}

double identity_residual(const TensionEvaluation& ev) {
    return std::abs(ev.total - ev.factored_total) / std::max(1.0, std::abs(ev.factored_total));
}

double normalized_total(const TensionEvaluation& ev) {
    double scale = std::max(std::abs(ev.leading_term), std::abs(ev.curvature_term));
    for (double t : ev.cross_terms) scale = std::max(scale, std::abs(t));
    return std::abs(ev.total) / std::max(1.0, scale);
}

ReducedTension tau_k_reduced(const Rational& beta, const Rational& tau2, int m_eff, int k) {
    if (k < 2) throw std::invalid_argument("tau_k requires k >= 2");
    const int s = k / 2;

    auto beta_pow = [&beta](int l) { return pow_rat(beta, static_cast<unsigned long>(l)); };

    ReducedTension ev;
    ev.leading = beta_pow(k - 1);
    ev.curvature = Rational(m_eff) * beta_pow(k - 2);
    for (int l = 1; l <= s - 1; ++l) {
        const int hi = (k % 2 == 0) ? s + l - 2 : s + l - 1;
        const int lo = s - l - 1;
        // (tau . Lap^hi tau) Lap^lo tau and its mirror contribute
        // tau2 * beta^{hi+lo} each once tau's coefficient is factored out.
        ev.cross.push_back(2 * tau2 * beta_pow(hi) * beta_pow(lo));
    }
    if (k % 2 == 1) ev.cross.push_back(tau2 * beta_pow(s - 1) * beta_pow(s - 1));

    Rational cross_sum(0);
    for (const auto& t : ev.cross) cross_sum += t;
    ev.total = ev.leading - ev.curvature - cross_sum;
    if (k == 2) {
        ev.factored = beta - m_eff;
    } else {
        ev.factored = beta_pow(k - 3) * (beta * beta - m_eff * beta - (k - 2) * tau2);
    }
    return ev;
}

}  // namespace kharmonic
