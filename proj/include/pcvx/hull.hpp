#pragma once

#include "pcvx/certify.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace pcvx {

/// Floating-point discretization of a compact set in C^n, stored as 2n real
/// coordinates per point, with recorded provenance.
struct SampleSet {
    int ambient_dim = 0;  // complex dimension n
    std::string provenance;
    std::vector<std::vector<double>> points;  // each of size 2n (re, im pairs)

    std::vector<std::complex<double>> complex_point(int i) const;

    std::string to_csv() const;
    static SampleSet from_csv(const std::string& text);
};

/// Images of a parameter grid under an exact chart, evaluated in floating
/// point. The grid is the cartesian product of the per-parameter value lists.
SampleSet sample_chart(const ManifoldChart& chart,
                       const std::vector<std::vector<double>>& per_param_values);

/// Evenly spaced values on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

/// Monomial exponent basis of all nonconstant monomials of total degree <= d
/// in n complex variables.
std::vector<std::vector<int>> monomial_basis(int n, int d);

/// Certificate that a query point lies outside the hull of the sampled set:
/// an explicit polynomial P with P(p) = 1 and sup_X |P| < 1.
struct ExclusionCertificate {
    std::vector<std::complex<double>> query;
    int degree = 0;
    int mgon = 16;
    std::vector<std::vector<int>> basis;            // exponents, parallel to coeffs
    std::vector<std::complex<double>> coeffs;       // P = 1 + sum c_b (z^b - p^b)
    double sup_on_samples = 0.0;                    // rechecked true modulus
    double margin = 0.0;                            // 1 - sup_on_samples

    std::complex<double> eval(const std::vector<std::complex<double>>& z) const;

    /// Re-evaluates P on the sample set and at the query point; true when
    /// the stored margin is reproduced within the relative tolerance.
    bool recheck(const SampleSet& X, double rel_tol = 1e-9) const;

    std::string to_text() const;
};

/// One-sided hull-exclusion query via the Chebyshev linear program
/// (minimize sup_X |P| subject to P(p) = 1, modulus approximated by an
/// m-gon). No certificate does NOT prove membership.
std::optional<ExclusionCertificate> hull_excludes(const SampleSet& X,
                                                  const std::vector<std::complex<double>>& p,
                                                  int degree, int mgon = 16,
                                                  int lp_subsample = 150);

/// Escalates the degree from 1 to max_degree, returning the first
/// certificate found.
std::optional<ExclusionCertificate> hull_excludes_up_to(
    const SampleSet& X, const std::vector<std::complex<double>>& p, int max_degree,
    int mgon = 16, int lp_subsample = 150);

/// Least-squares error of approximating zbar on a disk grid from the span
/// of monomials z^a (zbar^2)^b with a + 2b <= d, per degree.
struct FiberDensityRow {
    int degree;
    int basis_size;
    double error;  // mean squared residual (least-squares objective)
};
std::vector<FiberDensityRow> fiber_density_experiment(const std::vector<int>& degrees,
                                                      int grid = 64);

/// The Kallin-lemma separation demonstration: a degree-1 polynomial mapping
/// two disjoint closed balls into disjoint disks, plus an exclusion
/// certificate for the midpoint between the balls.
CertReport kallin_separation_demo(const std::vector<std::complex<double>>& center1,
                                  const std::vector<std::complex<double>>& center2,
                                  double radius1, double radius2, int samples_per_ball = 200,
                                  unsigned seed = 7);

}  // namespace pcvx
