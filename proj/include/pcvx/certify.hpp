#pragma once

#include "pcvx/constructions.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcvx {

enum class Verdict { ProvedExact, VerifiedOnSamples, Failed };

const char* verdict_name(Verdict v);

/// Structured outcome of one certification run. Failed verdicts always carry
/// a concrete witness with exact coordinates.
struct CertReport {
    std::string claim_id;
    Verdict verdict = Verdict::Failed;
    std::string witness;                          // empty unless failed
    std::map<std::string, std::string> params;    // settings, exact strings
    std::vector<std::string> notes;
    int samples_checked = 0;
    bool has_min_minor = false;
    Rational min_minor;
    double wall_time_sec = 0.0;

    bool passed() const { return verdict != Verdict::Failed; }

    /// Full text form. The wall_time line is the only nondeterministic part
    /// and always starts with "wall_time"; strip such lines to compare runs.
    std::string to_text() const;
};

enum class SampleScheme { FullGrid, LowDiscrepancy, RandomSeeded };

const char* scheme_name(SampleScheme s);

/// Deterministic rational sample generator on a closed ball. The random
/// scheme requires a seed; the low-discrepancy scheme is a Halton sequence
/// with coordinates rounded to denominator 4096. An optional exclusion
/// predicate (squared distance to a set) marks samples inside the tube of
/// width eps, where strictness claims are not enforced.
struct SampleSpec {
    std::vector<Rational> center;
    Rational radius = Rational(1, 10);
    int count = 100;
    SampleScheme scheme = SampleScheme::LowDiscrepancy;
    unsigned seed = 0;
    std::function<Rational(std::span<const Rational>)> exclusion_dist2;  // optional
    Rational tube_eps = 0;

    bool in_tube(std::span<const Rational> p) const {
        return exclusion_dist2 && exclusion_dist2(p) <= tube_eps * tube_eps;
    }
};

std::vector<std::vector<Rational>> generate_samples(const SampleSpec& spec);

/// Exact zero test of lhs - rhs; proved-exact or failed with a monomial
/// witness.
CertReport verify_polynomial_identity(const std::string& claim_id, const SparsePoly& lhs,
                                      const SparsePoly& rhs);

/// Exact PSD test at a rational point: Sylvester's leading-minor criterion
/// for strict, all principal minors for non-strict.
Verdict psd_certificate_at(const HermitianPolyMatrix& H, std::span<const Rational> p,
                           bool strict, Rational* min_minor = nullptr);

/// Sign claim over samples: f >= 0 at every sample, and f > 0 at samples
/// outside the exclusion tube (if an exclusion is present).
CertReport certify_nonneg_on_samples(const std::string& claim_id, const SparsePoly& f,
                                     const SampleSpec& spec);

/// Numeric Hermitian-matrix source for sampled PSD claims; the point is a
/// real point of the relevant registry.
using HessianAt = std::function<Mat<GaussianRational>(std::span<const Rational>)>;

/// PSD claim over samples: PSD at every sample, strictly PD at samples
/// outside the exclusion tube.
CertReport certify_psd_on_samples(const std::string& claim_id, const HessianAt& hessian_at,
                                  const SampleSpec& spec);
CertReport certify_psd_on_samples(const std::string& claim_id, const HermitianPolyMatrix& H,
                                  const SampleSpec& spec);

/// Exact ray reduction of the Lemma 6.2 criterion for P_alpha: with s = x^2
/// scaled to the segment s + t = 1, checks the quadratic
/// D(s) = ((4a+c)s - c(1-s))^2 - 4(As^2 + Bs(1-s) + A'(1-s)^2) < 0 on [0,1]
/// by exact endpoint and vertex sign analysis. Proved-exact or failed with a
/// witness ray.
CertReport discriminant_ray_check(const std::string& claim_id, const CoefficientSystem& sys);

/// General sampled b1^2 < 4 b0 check off the origin; b1, b0 must involve
/// only the first two registry variables (x, y) and vanish at the origin.
CertReport discriminant_check(const std::string& claim_id, const SparsePoly& b1,
                              const SparsePoly& b0, const SampleSpec& spec);

/// One row of the feasibility table.
struct FeasibilityRow {
    Rational alpha;
    bool pole = false;
    Rational bound;                 // c_upper_bound(alpha) when no pole
    std::vector<Rational> margins;  // inequalities (4)-(7) at c = bound/2, if bound > 0
};

std::vector<FeasibilityRow> feasibility_scan(const Rational& alpha_min,
                                             const Rational& alpha_max, const Rational& step);

/// Bisection interval of width <= tolerance containing the supremum of
/// feasible alpha, using the exact sign of c_upper_bound.
std::pair<Rational, Rational> threshold_root(const Rational& tolerance);

/// Exact rank certificate that the X-sets of the two parameter values
/// jointly cut out only the origin: the combined linear parts force z = 0,
/// and with z = 0 the remaining quadratic relation forces zeta_k = 0,
/// yielding full rank 2(3k-1).
CertReport certify_intersection_origin(const std::string& claim_id, const Rational& alpha,
                                       const Rational& beta, const Spaces& sp);

/// Evaluates Hess_C(psi~) at exact points through the holomorphic chain
/// rule, H_g(p) + sum_s J_s(p)^* H_rho(f_s(p)) J_s(p), avoiding expansion of
/// the pulled-back Hessian entries. Keeps a reference to the PsiTilde.
class PsiHessianEvaluator {
  public:
    PsiHessianEvaluator(const PsiTilde& psi, const Spaces& sp);

    /// Hessian at a complex point of the source space.
    Mat<GaussianRational> at(std::span<const GaussianRational> z) const;

    /// Same, from the realified point (size = source registry size).
    Mat<GaussianRational> at_real(std::span<const Rational> p) const;

  private:
    const PsiTilde& psi_;
    ComplexCoordSpace source_, target_;
    HermitianPolyMatrix hg_;
    std::vector<HermitianPolyMatrix> hrho_;  // one per summand
};

/// Worker count for sample-parallel certification: PCVX_WORKERS if set,
/// else hardware concurrency (at least 1).
int worker_count();

}  // namespace pcvx
