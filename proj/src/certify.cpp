#include "pcvx/certify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace pcvx {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ProvedExact: return "proved-exact";
        case Verdict::VerifiedOnSamples: return "verified-on-samples";
        case Verdict::Failed: return "failed";
    }
    return "?";
}

const char* scheme_name(SampleScheme s) {
    switch (s) {
        case SampleScheme::FullGrid: return "full-grid";
        case SampleScheme::LowDiscrepancy: return "low-discrepancy";
        case SampleScheme::RandomSeeded: return "random-with-seed";
    }
    return "?";
}

std::string CertReport::to_text() const {
    std::ostringstream os;
    os << "claim: " << claim_id << "\n";
    os << "verdict: " << verdict_name(verdict) << "\n";
    for (const auto& [k, v] : params) os << "param " << k << ": " << v << "\n";
    for (const auto& n : notes) os << "note: " << n << "\n";
    if (samples_checked > 0) os << "samples_checked: " << samples_checked << "\n";
    if (has_min_minor) os << "min_minor: " << to_string(min_minor) << "\n";
    if (!witness.empty()) os << "witness: " << witness << "\n";
    os << "wall_time: " << wall_time_sec << "\n";
    return os.str();
}

int worker_count() {
    if (const char* env = std::getenv("PCVX_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

namespace {

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void parallel_for(int count, const std::function<void(int)>& fn) {
    int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> next{0};
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

constexpr long kDenominator = 4096;

double halton(unsigned long index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

Rational snap(double t) {  // t in [-1, 1] -> rational with denominator 4096
    long num = std::lround(t * kDenominator);
    if (num > kDenominator) num = kDenominator;
    if (num < -kDenominator) num = -kDenominator;
    return Rational(num, kDenominator);
}

bool in_ball(const std::vector<Rational>& p, const SampleSpec& spec) {
    Rational d2(0);
    for (size_t i = 0; i < p.size(); ++i) {
        Rational d = p[i] - spec.center[i];
        d2 += d * d;
    }
    return d2 <= spec.radius * spec.radius;
}

std::string point_string(std::span<const Rational> p) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << ", ";
        os << p[i];
    }
    os << ")";
    return os.str();
}

}  // namespace

std::vector<std::vector<Rational>> generate_samples(const SampleSpec& spec) {
    static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                 23, 29, 31, 37, 41, 43, 47, 53};
    const int dim = static_cast<int>(spec.center.size());
    if (dim < 1) throw Error("empty sample center");
    if (spec.count < 1) throw Error("sample count must be positive");
    std::vector<std::vector<Rational>> out;
    out.reserve(spec.count);

    auto push_if_inside = [&](std::vector<Rational> p) {
        if (in_ball(p, spec)) out.push_back(std::move(p));
    };

    switch (spec.scheme) {
        case SampleScheme::LowDiscrepancy: {
            if (dim > 16) throw Error("low-discrepancy sampling supports at most 16 dimensions");
            for (unsigned long idx = 1; static_cast<int>(out.size()) < spec.count; ++idx) {
                std::vector<Rational> p(dim);
                for (int i = 0; i < dim; ++i)
                    p[i] = spec.center[i] +
                           spec.radius * snap(2.0 * halton(idx, primes[i]) - 1.0);
                push_if_inside(std::move(p));
                if (idx > 100000ul * static_cast<unsigned long>(spec.count) + 1000000ul)
                    throw Error("sampling did not converge (radius/dimension too extreme)");
            }
            break;
        }
        case SampleScheme::RandomSeeded: {
            std::mt19937 rng(spec.seed);
            std::uniform_int_distribution<long> dist(-kDenominator, kDenominator);
            unsigned long tries = 0;
            while (static_cast<int>(out.size()) < spec.count) {
                std::vector<Rational> p(dim);
                for (int i = 0; i < dim; ++i)
                    p[i] = spec.center[i] + spec.radius * Rational(dist(rng), kDenominator);
                push_if_inside(std::move(p));
                if (++tries > 100000ul * static_cast<unsigned long>(spec.count) + 1000000ul)
                    throw Error("sampling did not converge (radius/dimension too extreme)");
            }
            break;
        }
        case SampleScheme::FullGrid: {
            int m = 1;
            while (std::pow(static_cast<double>(m), dim) < spec.count && m < 64) ++m;
            std::vector<int> idx(dim, 0);
            while (static_cast<int>(out.size()) < spec.count) {
                std::vector<Rational> p(dim);
                for (int i = 0; i < dim; ++i) {
                    Rational t = (m == 1) ? Rational(0)
                                          : Rational(2 * idx[i] - (m - 1), m - 1);
                    p[i] = spec.center[i] + spec.radius * t;
                }
                push_if_inside(std::move(p));
                int i = 0;
                for (; i < dim; ++i) {
                    if (++idx[i] < m) break;
                    idx[i] = 0;
                }
                if (i == dim) break;  // grid exhausted
            }
            break;
        }
    }
    return out;
}

CertReport verify_polynomial_identity(const std::string& claim_id, const SparsePoly& lhs,
                                      const SparsePoly& rhs) {
    Timer timer;
    CertReport rep;
    rep.claim_id = claim_id;
    SparsePoly diff = lhs - rhs;
    if (diff.is_zero()) {
        rep.verdict = Verdict::ProvedExact;
    } else {
        rep.verdict = Verdict::Failed;
        SparsePoly head(diff.registry());
        head.add_term(diff.terms().begin()->first, diff.terms().begin()->second);
        rep.witness = "nonzero difference, leading term " + head.to_string();
    }
    rep.wall_time_sec = timer.seconds();
    return rep;
}

Verdict psd_certificate_at(const HermitianPolyMatrix& H, std::span<const Rational> p,
                           bool strict, Rational* min_minor) {
    Mat<GaussianRational> h = H.eval_at(p);
    bool ok = strict ? is_positive_definite(h, min_minor)
                     : is_positive_semidefinite(h, min_minor);
    return ok ? Verdict::ProvedExact : Verdict::Failed;
}

CertReport certify_nonneg_on_samples(const std::string& claim_id, const SparsePoly& f,
                                     const SampleSpec& spec) {
    Timer timer;
    CertReport rep;
    rep.claim_id = claim_id;
    rep.params["scheme"] = scheme_name(spec.scheme);
    rep.params["radius"] = to_string(spec.radius);
    rep.params["count"] = std::to_string(spec.count);
    if (spec.scheme == SampleScheme::RandomSeeded) rep.params["seed"] = std::to_string(spec.seed);
    if (spec.exclusion_dist2) rep.params["tube_eps"] = to_string(spec.tube_eps);

    auto samples = generate_samples(spec);
    const int n = static_cast<int>(samples.size());
    std::vector<int> bad(n, 0);
    std::vector<std::string> why(n);
    parallel_for(n, [&](int i) {
        GaussianRational v = f.eval_real(samples[i]);
        if (v.im != 0) {
            bad[i] = 1;
            why[i] = "non-real value at " + point_string(samples[i]);
            return;
        }
        bool strict = spec.exclusion_dist2 && !spec.in_tube(samples[i]);
        if (v.re < 0 || (strict && v.re == 0)) {
            bad[i] = 1;
            why[i] = "value " + to_string(v.re) + " at " + point_string(samples[i]);
        }
    });
    rep.samples_checked = n;
    rep.verdict = Verdict::VerifiedOnSamples;
    for (int i = 0; i < n; ++i) {
        if (bad[i]) {
            rep.verdict = Verdict::Failed;
            rep.witness = why[i];
            break;
        }
    }
    rep.wall_time_sec = timer.seconds();
    return rep;
}

CertReport certify_psd_on_samples(const std::string& claim_id, const HessianAt& hessian_at,
                                  const SampleSpec& spec) {
    Timer timer;
    CertReport rep;
    rep.claim_id = claim_id;
    rep.params["scheme"] = scheme_name(spec.scheme);
    rep.params["radius"] = to_string(spec.radius);
    rep.params["count"] = std::to_string(spec.count);
    if (spec.scheme == SampleScheme::RandomSeeded) rep.params["seed"] = std::to_string(spec.seed);
    if (spec.exclusion_dist2) rep.params["tube_eps"] = to_string(spec.tube_eps);

    auto samples = generate_samples(spec);
    const int n = static_cast<int>(samples.size());
    std::vector<int> bad(n, 0);
    std::vector<std::string> why(n);
    std::vector<std::optional<Rational>> minors(n);
    parallel_for(n, [&](int i) {
        bool strict = !spec.exclusion_dist2 || !spec.in_tube(samples[i]);
        Mat<GaussianRational> h = hessian_at(samples[i]);
        Rational mm;
        bool ok = strict ? is_positive_definite(h, &mm) : is_positive_semidefinite(h, &mm);
        minors[i] = mm;
        if (!ok) {
            bad[i] = 1;
            why[i] = std::string(strict ? "not strictly PD" : "not PSD") + " at " +
                     point_string(samples[i]) + ", offending minor " + to_string(mm);
        }
    });
    rep.samples_checked = n;
    rep.verdict = Verdict::VerifiedOnSamples;
    for (int i = 0; i < n; ++i) {
        if (minors[i] && (!rep.has_min_minor || *minors[i] < rep.min_minor)) {
            rep.min_minor = *minors[i];
            rep.has_min_minor = true;
        }
        if (bad[i] && rep.verdict != Verdict::Failed) {
            rep.verdict = Verdict::Failed;
            rep.witness = why[i];
        }
    }
    rep.wall_time_sec = timer.seconds();
    return rep;
}

CertReport certify_psd_on_samples(const std::string& claim_id, const HermitianPolyMatrix& H,
                                  const SampleSpec& spec) {
    return certify_psd_on_samples(
        claim_id, [&H](std::span<const Rational> p) { return H.eval_at(p); }, spec);
}

CertReport discriminant_ray_check(const std::string& claim_id, const CoefficientSystem& sys) {
    Timer timer;
    CertReport rep;
    rep.claim_id = claim_id;
    rep.params["alpha"] = to_string(sys.alpha);
    rep.params["c"] = to_string(sys.c);

    // D(s) = ((4a+2c)s - c)^2 - 4(A s^2 + B s(1-s) + A'(1-s)^2), s in [0,1].
    const Rational &a = sys.alpha, &c = sys.c;
    Rational b = 4 * a + 2 * c;
    Rational d2 = b * b - 4 * (sys.A - sys.B + sys.Aprime);
    Rational d1 = -2 * c * b - 4 * (sys.B - 2 * sys.Aprime);
    Rational d0 = c * c - 4 * sys.Aprime;
    auto D = [&](const Rational& s) { return d2 * s * s + d1 * s + d0; };

    auto fail_at = [&](const Rational& s) {
        rep.verdict = Verdict::Failed;
        rep.witness = "D(s) = " + to_string(D(s)) + " >= 0 at s = " + to_string(s) +
                      " (ray x^2 : y^2 = " + to_string(s) + " : " + to_string(1 - s) + ")";
    };

    rep.verdict = Verdict::ProvedExact;
    if (D(Rational(0)) >= 0) {
        fail_at(Rational(0));
    } else if (D(Rational(1)) >= 0) {
        fail_at(Rational(1));
    } else if (d2 < 0) {
        Rational vertex = -d1 / (2 * d2);
        if (vertex > 0 && vertex < 1 && D(vertex) >= 0) fail_at(vertex);
    }
    rep.notes.push_back("endpoints: D(0) = " + to_string(d0) + ", D(1) = " +
                        to_string(d2 + d1 + d0));
    rep.wall_time_sec = timer.seconds();
    return rep;
}

CertReport discriminant_check(const std::string& claim_id, const SparsePoly& b1,
                              const SparsePoly& b0, const SampleSpec& spec) {
    Timer timer;
    CertReport rep;
    rep.claim_id = claim_id;
    if (b1.registry() != b0.registry()) throw Error("registry mismatch");
    const auto& reg = b1.registry();
    for (const SparsePoly* f : {&b1, &b0}) {
        for (const auto& [m, coef] : f->terms()) {
            if (total_degree(m) == 0) throw Error("b-polynomial does not vanish at the origin");
            for (int i = 2; i < reg->size(); ++i)
                if (m[i]) throw Error("b-polynomial involves a variable beyond (x, y)");
        }
    }
    if (spec.center.size() != 2) throw Error("discriminant sampling is over (x, y)");

    auto samples = generate_samples(spec);
    rep.params["scheme"] = scheme_name(spec.scheme);
    rep.params["radius"] = to_string(spec.radius);
    if (spec.scheme == SampleScheme::RandomSeeded) rep.params["seed"] = std::to_string(spec.seed);
    rep.verdict = Verdict::VerifiedOnSamples;
    int checked = 0;
    for (const auto& s : samples) {
        if (s[0] == 0 && s[1] == 0) continue;
        std::vector<Rational> p(reg->size(), Rational(0));
        p[0] = s[0];
        p[1] = s[1];
        Rational v1 = b1.eval_real(p).re;
        Rational v0 = b0.eval_real(p).re;
        ++checked;
        if (v1 * v1 >= 4 * v0) {
            rep.verdict = Verdict::Failed;
            rep.witness = "b1^2 - 4 b0 = " + to_string(v1 * v1 - 4 * v0) + " at (x, y) = (" +
                          to_string(s[0]) + ", " + to_string(s[1]) + ")";
            break;
        }
    }
    rep.samples_checked = checked;
    rep.wall_time_sec = timer.seconds();
    return rep;
}

std::vector<FeasibilityRow> feasibility_scan(const Rational& alpha_min,
                                             const Rational& alpha_max, const Rational& step) {
    if (step <= 0) throw Error("step must be positive");
    std::vector<FeasibilityRow> rows;
    for (Rational a = alpha_min; a <= alpha_max; a += step) {
        FeasibilityRow row;
        row.alpha = a;
        try {
            row.bound = c_upper_bound(a);
        } catch (const Error&) {
            row.pole = true;
            rows.push_back(std::move(row));
            continue;
        }
        if (row.bound > 0)
            row.margins = CoefficientSystem::make_unchecked(a, row.bound / 2).inequality_margins();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::pair<Rational, Rational> threshold_root(const Rational& tolerance) {
    if (tolerance <= 0) throw Error("tolerance must be positive");
    Rational lo(0), hi(3, 5);
    if (c_upper_bound(lo) <= 0 || c_upper_bound(hi) > 0)
        throw Error("bisection bracket invalid");
    while (hi - lo > tolerance) {
        Rational mid = (lo + hi) / 2;
        (c_upper_bound(mid) > 0 ? lo : hi) = mid;
    }
    return {lo, hi};
}

namespace {

// Coefficient row of a polynomial that is linear homogeneous with real
// coefficients; throws otherwise.
std::vector<Rational> linear_row(const SparsePoly& f) {
    const int n = f.registry()->size();
    std::vector<Rational> row(n, Rational(0));
    for (const auto& [m, coef] : f.terms()) {
        if (total_degree(m) != 1) throw Error("polynomial is not linear homogeneous");
        if (coef.im != 0) throw Error("linear row with non-real coefficient");
        for (int i = 0; i < n; ++i)
            if (m[i]) row[i] += coef.re;
    }
    return row;
}

int rank_with(Mat<Rational> rows, const std::vector<Rational>& extra) {
    rows.push_back(extra);
    return rank(std::move(rows));
}

}  // namespace

CertReport certify_intersection_origin(const std::string& claim_id, const Rational& alpha,
                                       const Rational& beta, const Spaces& sp) {
    Timer timer;
    CertReport rep;
    rep.claim_id = claim_id;
    rep.params["alpha"] = to_string(alpha);
    rep.params["beta"] = to_string(beta);
    rep.params["k"] = std::to_string(sp.k);
    if (alpha == beta) throw Error("the two parameter values must differ");

    const int n = sp.source.reg->size();  // 2(3k-1)
    Mat<Rational> rows;
    for (int sigma = 1; sigma <= sp.k - 1; ++sigma) {
        AlgebraicSet xa = build_X_alpha_sigma(alpha, sigma, sp);
        AlgebraicSet xb = build_X_alpha_sigma(beta, sigma, sp);
        // Linear defining equations: the z-equation (defs 0, 1) of both sets
        // and the Im w_tau equations.
        rows.push_back(linear_row(xa.defs[0]));
        rows.push_back(linear_row(xa.defs[1]));
        rows.push_back(linear_row(xb.defs[0]));
        rows.push_back(linear_row(xb.defs[1]));
        for (size_t j = 4; j < xa.defs.size(); ++j) rows.push_back(linear_row(xa.defs[j]));
        // Difference trick: the quadratic zeta-equations of the two sets
        // share the zbar^2 term, so their difference 2(alpha-beta)L_sigma is
        // linear.
        rows.push_back(linear_row(xa.defs[2] - xb.defs[2]));
        rows.push_back(linear_row(xa.defs[3] - xb.defs[3]));
    }

    int r1 = rank(rows);
    rep.notes.push_back("linear system rank: " + std::to_string(r1) + " of " +
                        std::to_string(n) + " variables");

    // z = 0 must already follow from the linear system.
    std::vector<Rational> ex(n, Rational(0)), ey(n, Rational(0));
    ex[sp.source.coord(0).re_idx] = 1;
    ey[sp.source.coord(0).im_idx] = 1;
    bool z_forced = rank_with(rows, ex) == r1 && rank_with(rows, ey) == r1;
    rep.notes.push_back(std::string("z-vanishing forced by linear part: ") +
                        (z_forced ? "yes" : "no"));

    // With z = 0, the remaining relation of each X-set reduces to a linear
    // equation in zeta_k alone.
    const auto& zk = sp.source.coord(sp.source.dim() - 1);
    std::vector<Rational> exk(n, Rational(0)), eyk(n, Rational(0));
    exk[zk.re_idx] = 1;
    eyk[zk.im_idx] = 1;
    rows.push_back(exk);
    rows.push_back(eyk);
    int full = rank(rows);
    rep.notes.push_back("rank with zeta_k relation: " + std::to_string(full));

    if (z_forced && full == n) {
        rep.verdict = Verdict::ProvedExact;
    } else {
        rep.verdict = Verdict::Failed;
        rep.witness = "rank deficiency: combined system has rank " + std::to_string(full) +
                      " < " + std::to_string(n);
    }
    rep.wall_time_sec = timer.seconds();
    return rep;
}

PsiHessianEvaluator::PsiHessianEvaluator(const PsiTilde& psi, const Spaces& sp)
    : psi_(psi),
      source_(sp.source),
      target_(sp.target),
      hg_(complex_hessian(psi.g, sp.source)) {
    hrho_.reserve(psi.summands.size());
    for (const auto& s : psi.summands) hrho_.push_back(complex_hessian(s.rho, sp.target));
}

Mat<GaussianRational> PsiHessianEvaluator::at(std::span<const GaussianRational> z) const {
    const int n = source_.dim();
    Mat<GaussianRational> h = hg_.eval_at(source_.realify_point(z));
    for (size_t s = 0; s < psi_.summands.size(); ++s) {
        const auto& map = psi_.summands[s].map;
        auto w = map.eval(z);
        Mat<GaussianRational> hr = hrho_[s].eval_at(target_.realify_point(w));
        Mat<GaussianRational> j = map.jacobian_at(z);
        const int m = target_.dim();
        // h[i][k] += sum_{a,b} J[a][i] * hr[a][b] * conj(J[b][k])
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (hr[a][b].is_zero()) continue;
                for (int i = 0; i < n; ++i) {
                    if (j[a][i].is_zero()) continue;
                    GaussianRational left = j[a][i] * hr[a][b];
                    for (int kk = 0; kk < n; ++kk) {
                        if (j[b][kk].is_zero()) continue;
                        h[i][kk] += left * j[b][kk].conj();
                    }
                }
            }
    }
    return h;
}

Mat<GaussianRational> PsiHessianEvaluator::at_real(std::span<const Rational> p) const {
    if (static_cast<int>(p.size()) != source_.reg->size()) throw Error("dimension mismatch");
    std::vector<GaussianRational> z(source_.dim());
    for (int i = 0; i < source_.dim(); ++i) {
        const auto& cc = source_.coord(i);
        z[i] = GaussianRational(p[cc.re_idx], p[cc.im_idx]);
    }
    return at(z);
}

}  // namespace pcvx
