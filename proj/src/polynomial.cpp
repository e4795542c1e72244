#include "kharmonic/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace kharmonic {

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::monomial(const Rational& c, int deg) {
    std::vector<Rational> v(static_cast<size_t>(deg) + 1, Rational(0));
    v.back() = c;
    return Polynomial(std::move(v));
}

Rational Polynomial::coeff(int i) const {
    if (i < 0 || i > degree()) return Rational(0);
    return c_[static_cast<size_t>(i)];
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Rational& s) {
    std::vector<Rational> v = a.c_;
    for (auto& c : v) c *= s;
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a) { return a * Rational(-1); }

Rational Polynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() <= 0) return Polynomial();
    std::vector<Rational> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
    Polynomial rem = *this;
    if (rem.degree() < d.degree()) return {Polynomial(), rem};
    std::vector<Rational> q(static_cast<size_t>(rem.degree() - d.degree()) + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        int shift = rem.degree() - d.degree();
        Rational factor = rem.leading() / d.leading();
        q[static_cast<size_t>(shift)] = factor;
        rem = rem - Polynomial::monomial(factor, shift) * d;
    }
    return {Polynomial(std::move(q)), rem};
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeff(i);
        if (c == 0) continue;
        if (!first) out << (sign(c) > 0 ? " + " : " - ");
        else if (sign(c) < 0) out << "-";
        first = false;
        Rational a = abs_rat(c);
        if (i == 0 || a != 1) out << rat_str(a);
        if (i > 0) {
            if (a != 1) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

std::vector<SquareFreeFactor> square_free_decomposition(const Polynomial& p) {
    std::vector<SquareFreeFactor> out;
    if (p.degree() < 1) return out;
    Polynomial f = p.monic();
    Polynomial g = Polynomial::gcd(f, f.derivative());
    if (g.degree() == 0) {
        out.push_back({f, 1});
        return out;
    }
    // Yun's algorithm.
    Polynomial w = f.divmod(g).first;
    Polynomial y = f.derivative().divmod(g).first;
    Polynomial z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        Polynomial gi = Polynomial::gcd(w, z);
        if (gi.degree() > 0) out.push_back({gi.monic(), i});
        w = w.divmod(gi).first;
        y = z.divmod(gi).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

namespace {

// Divisors of a (small) nonnegative integer.
std::vector<mpz_class> divisors(const mpz_class& n) {
    std::vector<mpz_class> low, high;
    mpz_class d(1);
    while (d * d <= n) {
        if (n % d == 0) {
            low.push_back(d);
            if (d * d != n) high.push_back(n / d);
        }
        ++d;
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

// All rational roots of the square-free polynomial f, found by the rational
// root theorem on the integer form, each deflated out. On return f has no
// rational roots left.
std::vector<Rational> extract_rational_roots(Polynomial& f) {
    std::vector<Rational> roots;
    if (f.degree() < 1) return roots;

    while (f.coeff(0) == 0) {
        roots.push_back(Rational(0));
        std::vector<Rational> shifted(f.coeffs().begin() + 1, f.coeffs().end());
        f = Polynomial(std::move(shifted));
        if (f.degree() < 1) return roots;
    }

    // Clear denominators to integer coefficients.
    mpz_class scale(1);
    for (const auto& c : f.coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    mpz_class a0 = abs(mpz_class(f.coeff(0).get_num() * (scale / f.coeff(0).get_den())));
    mpz_class an = abs(mpz_class(f.leading().get_num() * (scale / f.leading().get_den())));

    for (const auto& num : divisors(a0)) {
        for (const auto& den : divisors(an)) {
            for (int s : {1, -1}) {
                if (f.degree() < 1) return roots;
                Rational cand(s * num, den);
                cand.canonicalize();
                if (f.eval(cand) == 0) {
                    roots.push_back(cand);
                    Polynomial lin({-cand, Rational(1)});
                    auto [q, r] = f.divmod(lin);
                    assert(r.is_zero());
                    f = q;
                }
            }
        }
    }
    return roots;
}

// Sturm chain of a square-free polynomial.
std::vector<Polynomial> sturm_chain(const Polynomial& f) {
    std::vector<Polynomial> chain{f, f.derivative()};
    while (chain.back().degree() > 0) {
        Polynomial r = chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero()) break;  // cannot happen for square-free input
        chain.push_back(-r);
    }
    return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
    int count = 0, prev = 0;
    for (const auto& p : chain) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

// Number of roots in (a, b]; endpoints are never roots where this is used.
int roots_between(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
}

struct PendingInterval {
    IsolatedRoot iv;
    size_t chain_index;
};

void isolate_rec(const std::vector<Polynomial>& chain, size_t chain_index, const Rational& a,
                 const Rational& b, int count, int multiplicity, std::vector<PendingInterval>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.push_back({{a, b, multiplicity, std::nullopt}, chain_index});
        return;
    }
    Rational mid = (a + b) / 2;
    // The factor has no rational roots (all were deflated), so mid is safe.
    int left = roots_between(chain, a, mid);
    isolate_rec(chain, chain_index, a, mid, left, multiplicity, out);
    isolate_rec(chain, chain_index, mid, b, count - left, multiplicity, out);
}

// Halve an isolating interval, keeping the side certified to hold the root.
void bisect_once(IsolatedRoot& iv, const std::vector<Polynomial>& chain) {
    Rational mid = (iv.lo + iv.hi) / 2;
    if (roots_between(chain, iv.lo, mid) == 1) iv.hi = mid;
    else iv.lo = mid;
}

// Cauchy bound: all real roots lie in (-B, B).
Rational cauchy_bound(const Polynomial& p) {
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs_rat(p.coeff(i)) / abs_rat(p.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const Polynomial& p, const Rational& lo,
                                             const std::optional<Rational>& hi) {
    std::vector<IsolatedRoot> out;
    if (p.degree() < 1) return out;

    struct Pending { Polynomial g; int mult; };
    std::vector<Pending> pending;
    std::vector<Rational> exacts;  // every rational root, for interval separation

    for (const auto& [factor, mult] : square_free_decomposition(p)) {
        Polynomial g = factor;
        for (const Rational& r : extract_rational_roots(g)) {
            exacts.push_back(r);
            if (r > lo && (!hi || r < *hi)) out.push_back({r, r, mult, r});
        }
        if (g.degree() >= 1) pending.push_back({std::move(g), mult});
    }

    std::vector<std::vector<Polynomial>> chains;
    std::vector<PendingInterval> intervals;
    for (auto& [g, mult] : pending) {
        Rational upper = hi ? *hi : cauchy_bound(g);
        if (upper <= lo) continue;
        chains.push_back(sturm_chain(g));
        const auto& chain = chains.back();
        isolate_rec(chain, chains.size() - 1, lo, upper, roots_between(chain, lo, upper), mult,
                    intervals);
    }

    // Keep intervals clear of the exact rational roots (the deflated factors
    // do not vanish at rationals, so bisection terminates).
    for (auto& pi : intervals) {
        for (const Rational& ex : exacts) {
            while (pi.iv.lo < ex && ex < pi.iv.hi) bisect_once(pi.iv, chains[pi.chain_index]);
        }
    }

    // Disjointness across square-free factors: narrow overlapping pairs (their
    // roots are distinct, so this terminates).
    auto mid_less = [](const PendingInterval& a, const PendingInterval& b) {
        return a.iv.lo + a.iv.hi < b.iv.lo + b.iv.hi;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(intervals.begin(), intervals.end(), mid_less);
        for (size_t i = 0; i + 1 < intervals.size(); ++i) {
            IsolatedRoot& a = intervals[i].iv;
            IsolatedRoot& b = intervals[i + 1].iv;
            if (a.hi <= b.lo) continue;
            if (a.hi - a.lo >= b.hi - b.lo) bisect_once(a, chains[intervals[i].chain_index]);
            else bisect_once(b, chains[intervals[i + 1].chain_index]);
            changed = true;
        }
    }

    for (const auto& pi : intervals) out.push_back(pi.iv);
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo + a.hi < b.lo + b.hi; });
    return out;
}

IsolatedRoot refine_interval(const Polynomial& p, IsolatedRoot root, const Rational& tol) {
    if (root.is_exact()) return root;
    // Bisect on the square-free factor carrying this root, with its rational
    // roots deflated out (so endpoints shared with rational roots of p stay
    // sign-safe); the remaining roots are simple, so a strict sign change
    // brackets the root.
    auto factors = square_free_decomposition(p);
    std::vector<Polynomial> deflated;
    for (auto& [factor, mult] : factors) {
        extract_rational_roots(factor);
        deflated.push_back(factor);
    }
    Polynomial g;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].multiplicity == root.multiplicity && deflated[i].degree() >= 1 &&
            deflated[i].sign_at(root.lo) * deflated[i].sign_at(root.hi) < 0) {
            g = deflated[i];
            break;
        }
    }
    if (g.is_zero()) {
        for (const auto& d : deflated) {
            if (d.degree() >= 1 && d.sign_at(root.lo) * d.sign_at(root.hi) < 0) {
                g = d;
                break;
            }
        }
    }
    if (g.is_zero()) throw std::invalid_argument("interval does not bracket a sign change");
    int slo = g.sign_at(root.lo);
    while (root.hi - root.lo > tol) {
        Rational mid = (root.lo + root.hi) / 2;
        int sm = g.sign_at(mid);
        if (sm == 0) {  // landed exactly on the root
            root.lo = root.hi = mid;
            root.exact = mid;
            return root;
        }
        if (sm == slo) root.lo = mid;
        else root.hi = mid;
    }
    return root;
}

double root_value(const IsolatedRoot& root) {
    if (root.is_exact()) return to_double(*root.exact);
    return to_double((root.lo + root.hi) / 2);
}

}  // namespace kharmonic
