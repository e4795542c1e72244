#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kharmonic/exact.hpp"

namespace kharmonic {

// Univariate polynomial with exact rational coefficients, stored in ascending
// degree with no trailing zeros (the zero polynomial has an empty vector).
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const Rational& v) { return Polynomial({v}); }
    // c * x^deg
    static Polynomial monomial(const Rational& c, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    // Coefficient of x^i; zero outside the stored range.
    Rational coeff(int i) const;
    const Rational& leading() const { return c_.back(); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Rational& s);
    friend Polynomial operator-(const Polynomial& a);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    Rational eval(const Rational& x) const;  // exact Horner
    double eval(double x) const;             // double Horner
    int sign_at(const Rational& x) const { return sign(eval(x)); }

    Polynomial derivative() const;
    // Euclidean division over the rationals: *this = q * d + r, deg r < deg d.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
    Polynomial monic() const;

    // Monic greatest common divisor.
    static Polynomial gcd(Polynomial a, Polynomial b);

    std::string str(const std::string& var) const;  // diagnostics only

  private:
    std::vector<Rational> c_;
    void trim();
};

// One square-free factor together with its multiplicity in the input.
struct SquareFreeFactor {
    Polynomial factor;  // monic, square-free, degree >= 1
    int multiplicity;
};

// Yun decomposition via repeated exact gcds with the derivative:
// p = lead * prod factor_i ^ multiplicity_i.
std::vector<SquareFreeFactor> square_free_decomposition(const Polynomial& p);

// A certified real root. Rational roots are exact (lo == hi == *exact);
// irrational roots carry an open isolating interval with non-root endpoints.
struct IsolatedRoot {
    Rational lo, hi;
    int multiplicity = 1;
    std::optional<Rational> exact;

    bool is_exact() const { return exact.has_value(); }
};

// All real roots of p in the open interval (lo, hi); unbounded above when
// hi is not given (a Cauchy bound caps the search). Rational roots are
// extracted exactly; the remaining roots are isolated by Sturm bisection.
// Returned roots are sorted and their intervals are pairwise disjoint.
std::vector<IsolatedRoot> isolate_real_roots(const Polynomial& p, const Rational& lo,
                                             const std::optional<Rational>& hi);

// Shrinks an isolating interval by exact bisection until hi - lo <= tol.
// Exact roots are returned unchanged.
IsolatedRoot refine_interval(const Polynomial& p, IsolatedRoot root, const Rational& tol);

// Midpoint of the certified interval as a double (the exact value when known).
double root_value(const IsolatedRoot& root);

}  // namespace kharmonic
