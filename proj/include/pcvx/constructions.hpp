#pragma once

#include "pcvx/wirtinger.hpp"

#include <string>
#include <vector>

namespace pcvx {

/// Coordinate spaces and registries for one value of k (k >= 2):
/// a source space C^{3k-1} with coordinates (z, w_1..w_{2k-2}, zeta_1..zeta_k),
/// a target space C^{2k} with coordinates (z, w_1..w_{2k-2}, w), and the
/// sheared real registry (x, y, u_1, v_1, ..., u, v) on the target in which
/// the model surface becomes the coordinate plane {u = v_j = v = 0}.
struct Spaces {
    int k;
    ComplexCoordSpace source;
    ComplexCoordSpace target;
    RegistryPtr sheared;

    static Spaces make(int k);
};

/// Parameter set (alpha, c, A, A', B) of the quartic positivity profile.
/// A, A' and B are determined by alpha and c through three equalities; the
/// remaining freedom is constrained by four strict inequalities plus
/// positivity of all three and the admissible range of (alpha, c).
struct CoefficientSystem {
    Rational alpha;
    Rational c;
    Rational A;
    Rational Aprime;
    Rational B;

    /// Builds and fully validates the system; throws Error naming the first
    /// violated constraint otherwise.
    static CoefficientSystem solve(const Rational& alpha, const Rational& c);

    /// Computes A, A', B from the equalities without validating the
    /// inequality constraints (used to exercise failure paths).
    static CoefficientSystem make_unchecked(const Rational& alpha, const Rational& c);

    /// Exact margins of inequalities (4)-(7), in that order; all must be
    /// strictly positive for a valid system.
    std::vector<Rational> inequality_margins() const;

    /// Index (4..7) of the first violated inequality, or 0 if all hold.
    int first_violated_inequality() const;
};

/// The largest admissible c for a given alpha: the exact minimum of four
/// rational expressions. Throws on a pole of any expression.
Rational c_upper_bound(const Rational& alpha);

/// Numerator whose sign change bounds the admissible alpha range from above.
Rational feasibility_binding_numerator(const Rational& alpha);

constexpr const char* kAlphaThresholdNote = "alpha must be < 46/100";
inline Rational alpha_threshold() { return Rational(46, 100); }

/// Exact parametrized chart of an embedded manifold: one complex-valued
/// polynomial per ambient complex coordinate, over a real parameter
/// registry.
struct ManifoldChart {
    std::string name;
    ComplexCoordSpace ambient;
    RegistryPtr params;
    std::vector<SparsePoly> comps;

    /// Ambient complex point at a rational parameter value.
    std::vector<GaussianRational> eval_params(std::span<const Rational> p) const;

    /// Substitutes the chart into a polynomial over the ambient real
    /// registry, producing a polynomial in the chart parameters. A zero
    /// result proves the ambient polynomial vanishes on the chart.
    SparsePoly substitute(const SparsePoly& ambient_poly) const;
};

/// Real algebraic set given by a list of real-valued defining polynomials
/// over the ambient real registry.
struct AlgebraicSet {
    std::string name;
    ComplexCoordSpace ambient;
    std::vector<SparsePoly> defs;

    bool contains(std::span<const GaussianRational> point) const;
};

// --- model manifolds -------------------------------------------------------

/// The 2k-dimensional model manifold in C^{3k-1} with an isolated
/// CR-singularity at the origin, parametrized by (x, y, u_1..u_{2k-2}).
ManifoldChart build_normal_form(const Spaces& sp);

/// The family of 2k-manifolds in C^{2k} whose z-slices carry a flat
/// hyperbolic complex point at the origin; parametrized by
/// (x, y, s_1..s_{2k-2}).
ManifoldChart build_S_alpha(const Spaces& sp, const Rational& alpha);

// --- defining polynomials --------------------------------------------------

/// Homogeneous quartic in (x^2, y^2, u) over the sheared registry:
/// u^4 + ((4a+c)x^2 - cy^2)u^3 + (Ax^4 + Bx^2y^2 + A'y^4)u^2.
SparsePoly build_P_alpha(const CoefficientSystem& sys, const Spaces& sp);

/// P + (x^2+y^2)u^4 + (1/2)(sum v_j^2 + v^2), over the sheared registry.
SparsePoly build_Q_alpha(const CoefficientSystem& sys, const Spaces& sp);

/// (1/2 + x^2 + y^2)(sum v_j^2 + v^2), over the sheared registry.
SparsePoly build_eta(const Spaces& sp);

/// Rewrites a sheared-registry polynomial over the raw real coordinates of
/// C^{2k}, substituting u -> Re w - (a/2)|z|^2 - (1/4)(z^2+zbar^2).
SparsePoly coordinate_change_to_sheared(const SparsePoly& f, const Rational& alpha,
                                        const Spaces& sp);

/// Q + eta, expressed over the raw real registry of C^{2k}. Nonnegative
/// defining polynomial of S_alpha near the origin.
SparsePoly build_rho_alpha(const CoefficientSystem& sys, const Spaces& sp);

// --- holomorphic maps ------------------------------------------------------

/// The quadratic holomorphic map C^{3k-1} -> C^{2k} sending the model
/// manifold into S_alpha. Requires alpha != +-1.
HoloPolyMap build_f_alpha(const Rational& alpha, const Spaces& sp);

/// Linear automorphism of C^{3k-1} folding slot sigma onto slot 1:
/// identity for sigma = 1; for sigma >= 2 it maps w_1 -> w_1 + w_{2s-1},
/// w_2 -> w_2 + w_{2s}, zeta_1 -> zeta_1 + zeta_sigma, fixing the rest.
HoloPolyMap build_F_sigma(int sigma, const Spaces& sp);

/// f_alpha ∘ F_sigma.
HoloPolyMap build_f_alpha_sigma(const Rational& alpha, int sigma, const Spaces& sp);

// --- pulled-back sets ------------------------------------------------------

struct MSigmaResult {
    AlgebraicSet set;
    ManifoldChart chart;
};

/// The preimage of S_alpha under f_alpha_sigma: defining equations and an
/// exact chart (parametrized by z, the real w-parameters and the free
/// zeta_1..zeta_{k-1}).
MSigmaResult build_M_alpha_sigma(const Rational& alpha, int sigma, const Spaces& sp);

/// Preimage of Y under f_alpha_sigma (X), and the degenerate target set Y.
AlgebraicSet build_X_alpha_sigma(const Rational& alpha, int sigma, const Spaces& sp);
AlgebraicSet build_Y(const Spaces& sp);

/// Correction term |zeta_k - zbar^2|^2 + sum |zeta_s - zbar conj(w-pair)|^2;
/// real-valued and nonnegative, vanishing exactly on the zeta-relations.
SparsePoly build_g(const Spaces& sp);

/// Expected kernel of the complex Jacobian of f_alpha_sigma, as a canonical
/// (RREF) basis: span of (0,...,0, t_1..t_{k-1}, -2a L(t)) with L(t) = t_1
/// for sigma = 1 and t_1 + t_sigma for sigma >= 2.
std::vector<std::vector<GaussianRational>> expected_jacobian_kernel(
    const Rational& alpha, int sigma, const Spaces& sp);

/// Canonicalizes a spanning set to its RREF row basis for comparison.
std::vector<std::vector<GaussianRational>> canonical_span(
    std::vector<std::vector<GaussianRational>> vectors);

/// Image of a chart under a holomorphic map: the composed chart of
/// f(chart(params)) over the same parameter registry.
ManifoldChart push_forward(const HoloPolyMap& f, const ManifoldChart& chart);

// --- sheared-coordinate derivative operators -------------------------------

/// The mixed second-order complex derivatives in sheared coordinates, as
/// exact operators on polynomials over the sheared registry:
///   4 d_{z,zbar} = Laplacian_{x,y}
///                  - 2((a+1)x d_x + (a-1)y d_y + a) d_u
///                  + ((a+1)^2 x^2 + (a-1)^2 y^2) d_{u,u}
///   4 d_{z,wbar} = d_{x,u} + d_{y,v} + i(d_{x,v} - d_{y,u})
///                  - ((a+1)x - i(a-1)y) d_{u,u} - ((a-1)y + i(a+1)x) d_{u,v}
///   4 d_{w,wbar} = Laplacian_{u,v}
SparsePoly sheared_4d_zzbar(const SparsePoly& f, const Rational& alpha, const Spaces& sp);
SparsePoly sheared_4d_zwbar(const SparsePoly& f, const Rational& alpha, const Spaces& sp);
SparsePoly sheared_4d_wwbar(const SparsePoly& f, const Spaces& sp);

/// The closed-form expansion of 4 d^2 P_alpha / dz dzbar in terms of
/// (alpha, c, A, A', B), for comparison against the operator computation.
SparsePoly paper_P_zzbar_expansion(const CoefficientSystem& sys, const Spaces& sp);

// --- the glued local defining polynomial ----------------------------------

struct PsiSummand {
    Rational alpha;
    int sigma;
    HoloPolyMap map;       // f_alpha_sigma
    SparsePoly rho;        // over target real registry
    SparsePoly pulled;     // rho ∘ map, over source real registry
};

struct PsiTilde {
    SparsePoly g;
    std::vector<PsiSummand> summands;
    SparsePoly total;      // g + sum of pulled summands
};

/// g + sum over sigma of (rho_{1/4} + rho_{1/3}) pulled back through the
/// corresponding maps, with c = c_upper_bound(alpha)/2 for each alpha.
PsiTilde build_psi_tilde(const Spaces& sp);

/// Default c policy: midpoint of the admissible interval.
inline Rational default_c(const Rational& alpha) { return c_upper_bound(alpha) / 2; }

// --- point helpers ---------------------------------------------------------

std::vector<GaussianRational> origin(const ComplexCoordSpace& space);

}  // namespace pcvx
