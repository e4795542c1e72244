#pragma once

#include <vector>

#include "kharmonic/exact.hpp"
#include "kharmonic/models.hpp"

namespace kharmonic {

// For the model geometries every field entering the tau_k computation is a
// real multiple of one distinguished unit normal, so the whole evaluation
// reduces to scalar bookkeeping with three rewrite rules:
//   1. iterated rough Laplacian:  Lap^l tau = beta^l tau
//   2. curvature trace:           sum_j R(V, dphi e_j) dphi e_j = m_eff V
//   3. cross contraction:         sum_j R(grad_j W, U) dphi e_j = <tau, W> U
// tau's own coefficient along the unit normal is -sqrt(tau2) (sign fixed by
// the outward-normal convention; only |total| and zero sets are contractual).

struct NormalExpression {
    double coeff = 0;  // multiple of the unit normal
};

struct TensionEvaluation {
    int k = 0;
    double leading_term = 0;            // coefficient of Lap^{k-1} tau
    double curvature_term = 0;          // subtracted curvature-trace term
    std::vector<double> cross_terms;    // one entry per summand l = 1..s-1,
                                        // plus the extra odd-k term
    double total = 0;                   // leading - curvature - sum(cross)
    double factored_total = 0;          // closed-form counterpart
};

// Rule 1: the scalar with Lap^l tau = beta^l tau; l = -1 never reaches this
// (callers drop that term entirely, encoding Lap^{-1} = 0).
double laplacian_power(const ScalarInvariants& inv, int l);

// Rule 2 applied to V = v_coeff * (unit normal).
double curvature_trace(const ScalarInvariants& inv, double v_coeff);

// Rule 3 applied to W = w_coeff * (unit normal), U = u_coeff * (unit normal):
// returns (tau_coeff * w_coeff) * u_coeff. The mirrored contraction
// sum_j R(W, grad_j U) dphi e_j is obtained by negating a call with swapped
// arguments.
double cross_contraction(const ScalarInvariants& inv, double w_coeff, double u_coeff);

// Literal term-by-term assembly of tau_k (k >= 2) through the three rules,
// never through the pre-summed shortcut; that shortcut appears only in
// factored_total:
//   k >= 3: tau_coeff * beta^{k-3} * (beta^2 - m_eff beta - (k-2) tau2)
//   k == 2: tau_coeff * (beta - m_eff)
// Throws std::invalid_argument for k < 2.
TensionEvaluation tau_k(const ScalarInvariants& inv, int k);

// |total - factored_total| / max(1, |factored_total|): the module's central
// identity is identity_residual <= 1e-9 over desk-scale magnitudes.
double identity_residual(const TensionEvaluation& ev);

// Scale-free root residual: |total| relative to the largest assembled term
// (floored at 1). Certified roots drive this to ~1e-12; non-roots sit at
// order 1 regardless of beta^{k-1} growth.
double normalized_total(const TensionEvaluation& ev);

// Exact-arithmetic twin with tau's own (generally irrational) coefficient
// factored out: total = tau_coeff * total_reduced. Assembled literally with
// the same three rules, so total_reduced == 0 certifies tau_k = 0.
struct ReducedTension {
    Rational leading;
    Rational curvature;
    std::vector<Rational> cross;
    Rational total;
    Rational factored;
};

ReducedTension tau_k_reduced(const Rational& beta, const Rational& tau2, int m_eff, int k);

}  // namespace kharmonic
