#include "kharmonic/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kharmonic {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

constexpr double kSphereTol = 1e-12;

double sphere_defect(const HopfPoint& p) {
    return std::norm(p.z1) + std::norm(p.z2) - double(p.k_scale);
}

// The map on raw coordinates, defined on all of C^2; finite differencing
// needs evaluations slightly off the sphere.
std::array<double, 3> image_raw(std::complex<double> z1, std::complex<double> z2, int k) {
    double scale = double(k) * std::sqrt(double(k));
    std::complex<double> w = 2.0 * z1 * std::conj(z2);
    return {w.real() / scale, w.imag() / scale, (std::norm(z1) - std::norm(z2)) / scale};
}

using Vec4 = std::array<double, 4>;

Vec4 coords(const HopfPoint& p) {
    return {p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()};
}

double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double norm4(const Vec4& a) { return std::sqrt(dot(a, a)); }

void axpy(Vec4& y, double c, const Vec4& x) {
    for (int i = 0; i < 4; ++i) y[i] += c * x[i];
}

}  // namespace

HopfPoint make_hopf_point(std::complex<double> z1, std::complex<double> z2, int k_scale) {
    require(k_scale >= 2, "hopf: k_scale must be an integer >= 2");
    HopfPoint p{z1, z2, k_scale};
    require(std::abs(sphere_defect(p)) <= kSphereTol,
            "hopf: |z1|^2 + |z2|^2 must equal k_scale within 1e-12");
    return p;
}

HopfPoint project_to_sphere(std::complex<double> z1, std::complex<double> z2, int k_scale) {
    require(k_scale >= 2, "hopf: k_scale must be an integer >= 2");
    double n2 = std::norm(z1) + std::norm(z2);
    require(n2 > 1e-16, "hopf: cannot project the origin onto the sphere");
    double s = std::sqrt(double(k_scale) / n2);
    HopfPoint p{z1 * s, z2 * s, k_scale};
    // One multiplicative correction pass keeps the defect at roundoff even
    // when the input norm is far from 1.
    double d = std::norm(p.z1) + std::norm(p.z2);
    double fix = std::sqrt(double(k_scale) / d);
    p.z1 *= fix;
    p.z2 *= fix;
    return p;
}

HopfPoint random_hopf_point(int k_scale, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        std::complex<double> z1(gauss(rng), gauss(rng));
        std::complex<double> z2(gauss(rng), gauss(rng));
        if (std::norm(z1) + std::norm(z2) > 1e-8)
            return project_to_sphere(z1, z2, k_scale);
    }
}

std::array<double, 3> hopf_map(const HopfPoint& p) {
    require(p.k_scale >= 2 && std::abs(sphere_defect(p)) <= kSphereTol,
            "hopf: point violates its sphere invariant");
    return image_raw(p.z1, p.z2, p.k_scale);
}

double fiber_invariance_check(const HopfPoint& p, int samples) {
    require(samples >= 2, "hopf: need at least two fiber samples");
    require(std::abs(sphere_defect(p)) <= kSphereTol,
            "hopf: point violates its sphere invariant");
    std::vector<std::array<double, 3>> images;
    images.reserve(size_t(samples));
    for (int i = 0; i < samples; ++i) {
        double theta = 2.0 * std::numbers::pi * i / samples;
        std::complex<double> rot(std::cos(theta), std::sin(theta));
        images.push_back(image_raw(rot * p.z1, rot * p.z2, p.k_scale));
    }
    double worst = 0;
    for (size_t i = 0; i < images.size(); ++i) {
        for (size_t j = i + 1; j < images.size(); ++j) {
            double d2 = 0;
            for (int c = 0; c < 3; ++c) {
                double d = images[i][c] - images[j][c];
                d2 += d * d;
            }
            worst = std::max(worst, std::sqrt(d2));
        }
    }
    return worst;
}

SubmersionReport submersion_check(const HopfPoint& p, double h) {
    require(h >= 1e-8 && h <= 1e-4, "hopf: difference step must lie in [1e-8, 1e-4]");
    require(std::abs(sphere_defect(p)) <= kSphereTol,
            "hopf: point violates its sphere invariant");

    Vec4 x = coords(p);
    // 3x4 Jacobian by central differences.
    double J[3][4];
    for (int j = 0; j < 4; ++j) {
        Vec4 fwd = x, bwd = x;
        fwd[j] += h;
        bwd[j] -= h;
        auto fp = image_raw({fwd[0], fwd[1]}, {fwd[2], fwd[3]}, p.k_scale);
        auto fm = image_raw({bwd[0], bwd[1]}, {bwd[2], bwd[3]}, p.k_scale);
        for (int i = 0; i < 3; ++i) J[i][j] = (fp[i] - fm[i]) / (2 * h);
    }

    // Radial and fiber directions; the horizontal space is their complement.
    double inv_r = 1.0 / norm4(x);
    Vec4 radial = x;
    for (double& c : radial) c *= inv_r;
    Vec4 fiber = {-x[1], x[0], -x[3], x[2]};  // (i z1, i z2), unnormalized
    Vec4 fiber_unit = fiber;
    for (double& c : fiber_unit) c *= inv_r;

    // Gram-Schmidt with pivoting: orthonormalize the standard basis against
    // {radial, fiber_unit} and keep the two largest survivors.
    Vec4 horiz[2];
    int found = 0;
    for (int pass = 0; pass < 2; ++pass) {
        double best = -1;
        Vec4 best_v{};
        for (int e = 0; e < 4; ++e) {
            Vec4 v{};
            v[e] = 1.0;
            axpy(v, -dot(v, radial), radial);
            axpy(v, -dot(v, fiber_unit), fiber_unit);
            for (int f = 0; f < found; ++f) axpy(v, -dot(v, horiz[f]), horiz[f]);
            double n = norm4(v);
            if (n > best) {
                best = n;
                best_v = v;
            }
        }
        double inv = 1.0 / best;
        for (double& c : best_v) c *= inv;
        horiz[found++] = best_v;
    }

    // Horizontal differential H = J * [h1 h2]; singular values from the 2x2
    // Gram matrix H^T H.
    double H[3][2];
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 2; ++c)
            H[i][c] = J[i][0] * horiz[c][0] + J[i][1] * horiz[c][1] + J[i][2] * horiz[c][2] +
                      J[i][3] * horiz[c][3];
    double g00 = 0, g01 = 0, g11 = 0;
    for (int i = 0; i < 3; ++i) {
        g00 += H[i][0] * H[i][0];
        g01 += H[i][0] * H[i][1];
        g11 += H[i][1] * H[i][1];
    }
    double mean = (g00 + g11) / 2;
    double disc = std::sqrt(std::max(0.0, (g00 - g11) * (g00 - g11) / 4 + g01 * g01));
    SubmersionReport rep;
    rep.singular_values = {std::sqrt(std::max(0.0, mean + disc)),
                           std::sqrt(std::max(0.0, mean - disc))};
    rep.dilation = (rep.singular_values[0] + rep.singular_values[1]) / 2;

    double v2 = 0;
    for (int i = 0; i < 3; ++i) {
        double vi = J[i][0] * fiber[0] + J[i][1] * fiber[1] + J[i][2] * fiber[2] +
                    J[i][3] * fiber[3];
        v2 += vi * vi;
    }
    rep.vertical_image_norm = std::sqrt(v2);
    return rep;
}

}  // namespace kharmonic
