// Acceptance harness: one line per criterion, every tolerance pinned below.
// Exit status 0 only if all criteria pass inside their runtime budgets.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kharmonic/cli.hpp"
#include "kharmonic/exact.hpp"
#include "kharmonic/hopf.hpp"
#include "kharmonic/models.hpp"
#include "kharmonic/polynomial.hpp"
#include "kharmonic/polysolve.hpp"
#include "kharmonic/tension.hpp"

namespace {

using namespace kharmonic;

constexpr double kRootTol = 1e-10;         // classified vs radical parameters
constexpr double kExactTensionTol = 1e-10; // tension total at exact roots
constexpr double kIdentityTol = 1e-9;      // relative term-by-term vs factored
constexpr double kSeparationTol = 1e-8;    // k=2 vs k>=3 proper-root distance
constexpr double kFiberNormTol = 1e-12;    // image-norm deviation from 1/sqrt(k)
constexpr double kFiberCollapseTol = 1e-12;
constexpr double kDilationSpreadTol = 1e-5;
constexpr double kVerticalKernelTol = 1e-7;
constexpr double kEquivalenceTol = 1e-10;  // product vs torus root sets

// 1. Every hypersurface instance has the single proper parameter a = 1/sqrt(k),
//    held exactly as the rational square 1/k, and the term-by-term tension
//    total vanishes there (evaluated in exact arithmetic, so the 1e-10 bound
//    is met with zero).
bool hypersurface_scale_law(std::ostream&) {
    for (int k = 2; k <= 10; ++k) {
        for (int n = 1; n <= 5; ++n) {
            RootReport rep = classify(Family::HypersurfaceSubmersion, n, 0, k);
            if (rep.proper_roots.size() != 1 || !rep.excluded.empty()) return false;
            const ProperRoot& pr = rep.proper_roots[0];
            if (std::abs(pr.value - 1.0 / std::sqrt(double(k))) > kRootTol) return false;
            if (!pr.exact_square || *pr.exact_square != rat(1, k)) return false;
            ScalarInvariants inv = invariants(hypersurface_from_square(n, rat(1, k)));
            ReducedTension rt = tau_k_reduced(*inv.beta_exact, *inv.tau2_exact, inv.m_eff, k);
            if (to_double(abs_rat(rt.total)) > kExactTensionTol) return false;
        }
    }
    return true;
}

// 2. Balanced torus: nothing proper through k = 4 (the k = 4 collapse is the
//    excluded triple root q = 1), then exactly the radical pair
//    sqrt((k-2 +- sqrt(k(k-4)))/2) for k >= 5.
bool balanced_torus_radicals(std::ostream&) {
    for (int p = 1; p <= 5; ++p) {
        for (int k = 2; k <= 4; ++k) {
            RootReport rep = classify(Family::CliffordTorus, 2 * p, p, k);
            if (!rep.proper_roots.empty()) return false;
            if (k == 4 && !(rep.excluded.size() == 1 && rep.excluded[0].value_squared == 1 &&
                            rep.excluded[0].multiplicity == 3))
                return false;
        }
        for (int k = 5; k <= 10; ++k) {
            RootReport rep = classify(Family::CliffordTorus, 2 * p, p, k);
            if (rep.proper_roots.size() != 2) return false;
            double disc = std::sqrt(double(k) * (k - 4));
            if (std::abs(rep.proper_roots[0].value - std::sqrt((k - 2 - disc) / 2)) > kRootTol)
                return false;
            if (std::abs(rep.proper_roots[1].value - std::sqrt((k - 2 + disc) / 2)) > kRootTol)
                return false;
        }
    }
    return true;
}

// 3. Balanced product: same collapse/pair pattern, radii
//    r1 = sqrt((1 +- sqrt((k-4)/k))/2), and every proper t satisfies
//    t(1-t) = 1/k.
bool balanced_product_radicals(std::ostream&) {
    for (int n = 1; n <= 5; ++n) {
        for (int k = 2; k <= 4; ++k)
            if (!classify(Family::ProductSphereSubmersion, n, n, k).proper_roots.empty())
                return false;
        for (int k = 5; k <= 10; ++k) {
            RootReport rep = classify(Family::ProductSphereSubmersion, n, n, k);
            if (rep.proper_roots.size() != 2) return false;
            double inner = std::sqrt((k - 4.0) / k);
            if (std::abs(rep.proper_roots[0].value - std::sqrt((1 - inner) / 2)) > kRootTol)
                return false;
            if (std::abs(rep.proper_roots[1].value - std::sqrt((1 + inner) / 2)) > kRootTol)
                return false;
            for (const ProperRoot& pr : rep.proper_roots) {
                double t = pr.value_squared;
                if (std::abs(t * (1 - t) - 1.0 / k) > kRootTol) return false;
            }
        }
    }
    return true;
}

// 4. The assembled torus condition polynomial factors exactly (rational
//    coefficient by coefficient, no tolerance) as p^2 (q - a) times the monic
//    reduced cubic, across the full dimension grid.
bool factorization_identity(std::ostream& detail) {
    int checked = 0;
    for (int m = 2; m <= 10; ++m) {
        for (int p = 1; p <= m - 1; ++p) {
            Polynomial q_minus_a({rat(-(m - p), p), rat(1)});
            for (int k = 3; k <= 10; ++k) {
                Polynomial lhs = clifford_condition_polynomial(m, p, k);
                Polynomial rhs = (q_minus_a * master_clifford(m, p, k).poly) * rat(long(p) * p);
                if (!(lhs == rhs)) return false;
                ++checked;
            }
        }
    }
    detail << checked << " exact coefficient identities\n";
    return true;
}

// 5. Property check: over random invariant triples with 0 <= tau2 <= m*beta,
//    the term-by-term tension total agrees with the factored form for every
//    order k in 2..12 within relative 1e-9.
bool tension_identity_random(std::ostream& detail) {
    std::mt19937 rng(20260814);
    std::uniform_int_distribution<int> mdist(1, 8);
    std::uniform_real_distribution<double> bdist(0.05, 40.0);
    std::uniform_real_distribution<double> udist(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        ScalarInvariants inv{};
        inv.m_eff = mdist(rng);
        inv.beta = bdist(rng);
        inv.tau2 = udist(rng) * inv.m_eff * inv.beta;
        for (int k = 2; k <= 12; ++k)
            worst = std::max(worst, identity_residual(tau_k(inv, k)));
    }
    detail << "worst relative deviation " << format_double(worst) << '\n';
    return worst <= kIdentityTol;
}

// 6. Within every model instance, no parameter is a proper root for k = 2 and
//    for any k in 3..10 at once. The balanced grids have empty k = 2 sets, so
//    unbalanced instances are swept as well to keep the check non-vacuous.
bool k2_separation(std::ostream& detail) {
    double min_sep = std::numeric_limits<double>::infinity();
    auto scan = [&min_sep](Family f, int d1, int d2) {
        RootReport two = classify(f, d1, d2, 2);
        if (two.proper_roots.empty()) return;
        for (int k = 3; k <= 10; ++k) {
            RootReport rep = classify(f, d1, d2, k);
            for (const ProperRoot& a : two.proper_roots)
                for (const ProperRoot& b : rep.proper_roots)
                    min_sep = std::min(min_sep, std::abs(a.value_squared - b.value_squared));
        }
    };
    for (int m = 2; m <= 10; ++m)
        for (int p = 1; p <= m - 1; ++p) scan(Family::CliffordTorus, m, p);
    for (int n1 = 1; n1 <= 5; ++n1)
        for (int n2 = 1; n2 <= 5; ++n2) scan(Family::ProductSphereSubmersion, n1, n2);
    for (int n = 1; n <= 5; ++n) scan(Family::HypersurfaceSubmersion, n, 0);
    detail << "smallest squared-parameter separation " << format_double(min_sep) << '\n';
    return min_sep >= kSeparationTol;
}

// 7. Closed-form audit, consumed through the CLI artifact: every printed
//    formula instance either matches a certified root (the audit certifies at
//    1e-9 or tighter) or carries an inapplicability diagnostic naming the
//    failing expression. The report itself is the artifact, so the flagged
//    instances are listed, not hidden.
bool closed_form_audit(std::ostream& detail) {
    RunConfig cfg;
    cfg.command = Command::VerifyClosedForms;
    cfg.format = OutputFormat::Json;
    std::ostringstream out, err;
    if (run(cfg, out, err) != 0) {
        detail << err.str();
        return false;
    }
    nlohmann::json doc = nlohmann::json::parse(out.str());
    bool ok = doc["passed"].get<bool>();
    int matched = 0, flagged = 0;
    for (const auto& rec : doc["results"]) {
        if (!rec["audit_pass"].get<bool>()) ok = false;
        if (rec["applicable"].get<bool>()) {
            ++matched;
            if (!rec["certified"].get<bool>()) ok = false;
        } else {
            ++flagged;
            std::string diag = rec["diagnostic"].get<std::string>();
            if (diag.empty()) ok = false;
            detail << rec["formula"].get<std::string>() << ' '
                   << rec["params"].get<std::string>() << ": inapplicable -- " << diag << '\n';
        }
    }
    detail << matched << " instances matched certified roots, " << flagged
           << " declared inapplicable\n";
    return ok;
}

// 8. Fiber map sweep: spherical image radius, fiber collapse, two horizontal
//    singular values sharing one constant (reported per k), and the fiber
//    direction inside the kernel.
bool fiber_map_checks(std::ostream& detail) {
    std::mt19937 rng(20260814);
    bool ok = true;
    for (int k = 2; k <= 8; ++k) {
        double expect = 1.0 / std::sqrt(double(k));
        double worst_norm = 0, worst_fiber = 0, worst_spread = 0, worst_vertical = 0;
        double dilation_sum = 0;
        for (int i = 0; i < 1000; ++i) {
            HopfPoint p = random_hopf_point(k, rng);
            std::array<double, 3> img = hopf_map(p);
            double norm = std::sqrt(img[0] * img[0] + img[1] * img[1] + img[2] * img[2]);
            worst_norm = std::max(worst_norm, std::abs(norm - expect));
            worst_fiber = std::max(worst_fiber, fiber_invariance_check(p, 16));
            SubmersionReport rep = submersion_check(p);
            for (double sv : rep.singular_values)
                worst_spread = std::max(worst_spread, std::abs(sv - rep.dilation));
            worst_vertical = std::max(worst_vertical, rep.vertical_image_norm);
            dilation_sum += rep.dilation;
        }
        detail << "k=" << k << " dilation " << format_double(dilation_sum / 1000)
               << " (2/k = " << format_double(2.0 / k) << ")\n";
        ok = ok && worst_norm <= kFiberNormTol && worst_fiber <= kFiberCollapseTol &&
             worst_spread <= kDilationSpreadTol && worst_vertical <= kVerticalKernelTol;
    }
    return ok;
}

// 9. The two submersion encodings classify identically: proper-root sets of
//    the product quartic and the torus cubic correspond under t = 1/(1+q),
//    multiplicities included.
bool family_equivalence(std::ostream& detail) {
    int configs = 0;
    for (int n1 = 1; n1 <= 5; ++n1) {
        for (int n2 = 1; n2 <= 5; ++n2) {
            for (int k = 2; k <= 10; ++k) {
                RootReport prod = classify(Family::ProductSphereSubmersion, n1, n2, k);
                RootReport clif = classify(Family::CliffordTorus, n1 + n2, n1, k);
                if (prod.proper_roots.size() != clif.proper_roots.size()) return false;
                std::vector<std::pair<double, int>> mapped;
                for (const ProperRoot& pr : clif.proper_roots)
                    mapped.emplace_back(1.0 / (1.0 + pr.value_squared), pr.multiplicity);
                std::sort(mapped.begin(), mapped.end());
                for (size_t i = 0; i < mapped.size(); ++i) {
                    if (std::abs(prod.proper_roots[i].value_squared - mapped[i].first) >
                        kEquivalenceTol)
                        return false;
                    if (prod.proper_roots[i].multiplicity != mapped[i].second) return false;
                }
                ++configs;
            }
        }
    }
    detail << configs << " family pairs compared\n";
    return true;
}

struct Criterion {
    const char* name;
    double budget_seconds;
    bool (*fn)(std::ostream&);
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"hypersurface family classifies to radius 1/sqrt(k) with vanishing tension", 1.0,
         hypersurface_scale_law},
        {"balanced torus: empty through k=4, paired radicals for k>=5", 1.0,
         balanced_torus_radicals},
        {"balanced product: empty through k=4, radical pair with t(1-t)=1/k", 1.0,
         balanced_product_radicals},
        {"condition polynomial equals p^2 (q-a) times the reduced cubic, exactly", 1.0,
         factorization_identity},
        {"term-by-term tension matches the factored form on random invariants", 2.0,
         tension_identity_random},
        {"no parameter is proper for k=2 and any k in 3..10 simultaneously", 1.0, k2_separation},
        {"printed closed forms match certified roots or are flagged with diagnostics", 2.0,
         closed_form_audit},
        {"fiber map: spherical image, fiber collapse, constant dilation, kernel", 5.0,
         fiber_map_checks},
        {"product and torus proper roots correspond under t = 1/(1+q)", 2.0, family_equivalence},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::ostringstream detail;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what() << '\n';
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ok = ok && secs < c.budget_seconds;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.name << " (" << std::fixed
                  << std::setprecision(3) << secs << " s, budget " << std::setprecision(0)
                  << c.budget_seconds << " s)\n";
        std::istringstream lines(detail.str());
        for (std::string line; std::getline(lines, line);) std::cout << "       " << line << '\n';
        failures += ok ? 0 : 1;
    }
    std::cout << (9 - failures) << "/9 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
