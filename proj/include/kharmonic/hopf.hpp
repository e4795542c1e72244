#pragma once

#include <array>
#include <complex>
#include <random>

namespace kharmonic {

// A point of the 3-sphere of radius sqrt(k): |z1|^2 + |z2|^2 = k_scale
// within 1e-12. Build through make_hopf_point / random_hopf_point /
// project_to_sphere, which validate or establish the invariant.
struct HopfPoint {
    std::complex<double> z1{}, z2{};
    int k_scale = 2;
};

HopfPoint make_hopf_point(std::complex<double> z1, std::complex<double> z2, int k_scale);

// Scales a nonzero (z1, z2) onto the radius-sqrt(k) sphere.
HopfPoint project_to_sphere(std::complex<double> z1, std::complex<double> z2, int k_scale);

// Uniform point on the radius-sqrt(k) sphere (normalized 4-d Gaussian).
HopfPoint random_hopf_point(int k_scale, std::mt19937& rng);

// The scaled fiber map (2 z1 conj(z2), |z1|^2 - |z2|^2) / (k sqrt k), with the
// complex first slot split into two real coordinates. Images of on-sphere
// points land on the 2-sphere of radius 1/sqrt(k). Throws when the point
// violates its sphere invariant.
std::array<double, 3> hopf_map(const HopfPoint& p);

// Sweeps the circle fiber (e^{i theta} z1, e^{i theta} z2) with `samples`
// equally spaced angles and returns the largest distance between any two
// images; fibers collapse to points, so this is roundoff-sized. samples >= 2.
double fiber_invariance_check(const HopfPoint& p, int samples);

struct SubmersionReport {
    std::array<double, 2> singular_values{};  // of the horizontal differential
    double vertical_image_norm = 0;  // |J (i z1, i z2)|: fiber-direction kernel
    double dilation = 0;             // the common constant the two values share
};

// Central-difference Jacobian of the map at p, restricted to the horizontal
// space (orthogonal complement of the radial and fiber directions in real
// 4-space). The two singular values agree with each other; their common
// value is the constant dilation of the map, reported, not normalized away.
// Step h is clamped to [1e-8, 1e-4] by precondition.
SubmersionReport submersion_check(const HopfPoint& p, double h = 1e-5);

}  // namespace kharmonic
