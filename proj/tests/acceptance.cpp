// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.

#include "pcvx/hull.hpp"
#include "pcvx/report.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace pcvx;

namespace {

int g_failures = 0;

class Criterion {
  public:
    Criterion(int number, std::string what)
        : number_(number), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}

    void finish(bool ok, const std::string& detail = "") {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ostringstream os;
        os << (ok ? "PASS" : "FAIL") << " criterion " << number_ << ": " << what_;
        if (!detail.empty()) os << " — " << detail;
        os << " (" << secs << " s)";
        std::cout << os.str() << std::endl;
        if (!ok) ++g_failures;
    }

  private:
    int number_;
    std::string what_;
    std::chrono::steady_clock::time_point start_;
};

SparsePoly raw_4d(const SparsePoly& raw, const ComplexCoordSpace& tgt, int ci, int cj) {
    return d_z(d_zbar(raw, tgt, cj), tgt, ci) * GaussianRational(Rational(4));
}

// Monomial basis of degree <= 6 in the sheared variables the operators touch.
std::vector<SparsePoly> operator_basis(const Spaces& sp) {
    const auto& reg = sp.sheared;
    int ix = reg->index_of("x"), iy = reg->index_of("y");
    int iu = reg->index_of("u"), iv = reg->index_of("v");
    std::vector<SparsePoly> basis;
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b)
            for (int c = 0; a + b + c <= 6; ++c)
                for (int d = 0; a + b + c + d <= 6; ++d)
                    basis.push_back(SparsePoly::var(reg, ix, a) * SparsePoly::var(reg, iy, b) *
                                    SparsePoly::var(reg, iu, c) * SparsePoly::var(reg, iv, d));
    return basis;
}

void criterion_1() {
    Criterion cr(1, "sheared operator identities on the degree-6 monomial basis");
    Spaces sp = Spaces::make(2);
    const auto& tgt = sp.target;
    const int iw = tgt.dim() - 1;
    int checked = 0;
    for (const Rational& alpha : {Rational(1, 4), Rational(1, 3)}) {
        for (const auto& mono : operator_basis(sp)) {
            SparsePoly raw = coordinate_change_to_sheared(mono, alpha, sp);
            bool ok =
                coordinate_change_to_sheared(sheared_4d_zzbar(mono, alpha, sp), alpha, sp) ==
                    raw_4d(raw, tgt, 0, 0) &&
                coordinate_change_to_sheared(sheared_4d_zwbar(mono, alpha, sp), alpha, sp) ==
                    raw_4d(raw, tgt, 0, iw) &&
                coordinate_change_to_sheared(sheared_4d_wwbar(mono, sp), alpha, sp) ==
                    raw_4d(raw, tgt, iw, iw);
            if (!ok) {
                cr.finish(false, "mismatch on monomial " + mono.to_string());
                return;
            }
            ++checked;
        }
    }
    cr.finish(true, std::to_string(checked) + " monomial/alpha pairs, three operators each");
}

void criterion_2() {
    Criterion cr(2, "coefficient systems and the d^2P/dzdzbar expansion identity");
    Spaces sp = Spaces::make(2);
    try {
        CoefficientSystem s4 = CoefficientSystem::solve(Rational(1, 4), Rational(9, 32));
        if (s4.A != Rational(1025, 1792)) {
            cr.finish(false, "A spot value mismatch");
            return;
        }
        CoefficientSystem s3 =
            CoefficientSystem::solve(Rational(1, 3), c_upper_bound(Rational(1, 3)) / 2);
        for (const auto& sys : {s4, s3}) {
            for (const auto& m : sys.inequality_margins())
                if (m <= 0) {
                    cr.finish(false, "nonpositive inequality margin");
                    return;
                }
            if (!verify_polynomial_identity("exp",
                                            sheared_4d_zzbar(build_P_alpha(sys, sp),
                                                             sys.alpha, sp),
                                            paper_P_zzbar_expansion(sys, sp))
                     .passed()) {
                cr.finish(false, "expansion identity failed");
                return;
            }
        }
        cr.finish(true, "A = 1025/1792 at (1/4, 9/32); margins positive; expansion exact");
    } catch (const Error& e) {
        cr.finish(false, e.what());
    }
}

void criterion_3() {
    Criterion cr(3, "feasibility threshold sign change in (0.46, 0.47)");
    bool ok = feasibility_binding_numerator(Rational(46, 100)) > 0 &&
              feasibility_binding_numerator(Rational(47, 100)) < 0;
    auto interval = threshold_root(Rational(1, 1000));
    ok = ok && interval.first >= Rational(46, 100) && interval.second <= Rational(47, 100);
    cr.finish(ok, "numerator " + to_string(feasibility_binding_numerator(Rational(46, 100))) +
                      " at 0.46, " +
                      to_string(feasibility_binding_numerator(Rational(47, 100))) + " at 0.47");
}

void criterion_4() {
    Criterion cr(4, "discriminant ray criterion, plus infeasible-c negative control");
    CertReport r4 = discriminant_ray_check(
        "d", CoefficientSystem::solve(Rational(1, 4), Rational(9, 32)));
    CertReport r3 = discriminant_ray_check(
        "d", CoefficientSystem::solve(Rational(1, 3), c_upper_bound(Rational(1, 3)) / 2));
    CertReport bad = discriminant_ray_check(
        "d", CoefficientSystem::make_unchecked(Rational(0), Rational(8, 5)));
    bool ok = r4.verdict == Verdict::ProvedExact && r3.verdict == Verdict::ProvedExact &&
              bad.verdict == Verdict::Failed && !bad.witness.empty();
    cr.finish(ok, ok ? "both systems proved; c = 8/5 at alpha = 0 fails with witness: " +
                           bad.witness
                     : "unexpected verdict");
}

void criterion_5() {
    Criterion cr(5, "zero-set identities for g and every psi summand, k = 2 and 3");
    for (int k : {2, 3}) {
        Spaces sp = Spaces::make(k);
        ManifoldChart nf = build_normal_form(sp);
        if (!nf.substitute(build_g(sp)).is_zero()) {
            cr.finish(false, "g does not vanish on the chart, k = " + std::to_string(k));
            return;
        }
        for (const Rational& alpha : {Rational(1, 4), Rational(1, 3)}) {
            CoefficientSystem sys = CoefficientSystem::solve(alpha, default_c(alpha));
            SparsePoly rho = build_rho_alpha(sys, sp);
            for (int sigma = 1; sigma <= k - 1; ++sigma) {
                ManifoldChart image = push_forward(build_f_alpha_sigma(alpha, sigma, sp), nf);
                if (!image.substitute(rho).is_zero()) {
                    cr.finish(false, "psi summand nonzero at k = " + std::to_string(k) +
                                         ", alpha = " + to_string(alpha) + ", sigma = " +
                                         std::to_string(sigma));
                    return;
                }
            }
        }
    }
    cr.finish(true, "all summands vanish exactly on the model chart");
}

void criterion_6() {
    Criterion cr(6, "Jacobian kernel formula at 5 random rational points");
    std::mt19937 rng(2718);
    std::uniform_int_distribution<int> d(-15, 15);
    int checked = 0;
    for (int k : {2, 3}) {
        Spaces sp = Spaces::make(k);
        for (const Rational& alpha : {Rational(1, 4), Rational(1, 3)}) {
            for (int sigma = 1; sigma <= k - 1; ++sigma) {
                HoloPolyMap f = build_f_alpha_sigma(alpha, sigma, sp);
                auto expected = expected_jacobian_kernel(alpha, sigma, sp);
                for (int t = 0; t < 5; ++t) {
                    std::vector<GaussianRational> p(sp.source.dim());
                    for (auto& z : p)
                        z = GaussianRational(Rational(d(rng), 8), Rational(d(rng), 8));
                    if (canonical_span(f.jacobian_kernel_at(p)) != expected) {
                        cr.finish(false, "kernel mismatch");
                        return;
                    }
                    ++checked;
                }
            }
        }
    }
    cr.finish(true, std::to_string(checked) + " kernel evaluations matched the closed form");
}

void criterion_7() {
    Criterion cr(7, "plurisubharmonicity sampling for rho_{1/4} and psi~ (k = 2)");
    Spaces sp = Spaces::make(2);
    CoefficientSystem sys = CoefficientSystem::solve(Rational(1, 4), default_c(Rational(1, 4)));
    HermitianPolyMatrix hrho = complex_hessian(build_rho_alpha(sys, sp), sp.target);

    AlgebraicSet Y = build_Y(sp);
    SampleSpec spec;
    spec.center.assign(sp.target.reg->size(), Rational(0));
    spec.radius = Rational(1, 10);
    spec.count = 1000;
    spec.scheme = SampleScheme::LowDiscrepancy;
    spec.tube_eps = Rational(1, 100);
    spec.exclusion_dist2 = [&Y](std::span<const Rational> p) {
        Rational d2(0);
        for (const auto& def : Y.defs) {
            Rational v = def.eval_real(p).re;
            d2 += v * v;
        }
        return d2;
    };
    CertReport rrho = certify_psd_on_samples("rho", hrho, spec);
    if (rrho.verdict != Verdict::VerifiedOnSamples) {
        cr.finish(false, "rho Hessian: " + rrho.witness);
        return;
    }

    PsiTilde psi = build_psi_tilde(sp);
    PsiHessianEvaluator hess(psi, sp);
    SampleSpec pspec;
    pspec.center.assign(sp.source.reg->size(), Rational(0));
    pspec.radius = Rational(1, 10);
    pspec.count = 1000;
    pspec.scheme = SampleScheme::LowDiscrepancy;
    pspec.tube_eps = Rational(1, 100);
    pspec.exclusion_dist2 = [](std::span<const Rational> p) {
        Rational d2(0);
        for (const auto& x : p) d2 += x * x;
        return d2;
    };
    CertReport rpsi = certify_psd_on_samples(
        "psi", [&hess](std::span<const Rational> p) { return hess.at_real(p); }, pspec);
    if (rpsi.verdict != Verdict::VerifiedOnSamples) {
        cr.finish(false, "psi~ Hessian: " + rpsi.witness);
        return;
    }
    cr.finish(true, "2000 samples, zero violations; min minors " + to_string(rrho.min_minor) +
                        " and " + to_string(rpsi.min_minor));
}

void criterion_8() {
    Criterion cr(8, "intersection-equals-origin rank certificates, k = 2 and 3");
    for (int k : {2, 3}) {
        Spaces sp = Spaces::make(k);
        CertReport rep =
            certify_intersection_origin("x", Rational(1, 4), Rational(1, 3), sp);
        if (rep.verdict != Verdict::ProvedExact) {
            cr.finish(false, "k = " + std::to_string(k) + ": " + rep.witness);
            return;
        }
    }
    cr.finish(true, "full rank 2(3k-1) reached for both k");
}

void criterion_9() {
    Criterion cr(9, "hull lab: Kallin demo, fiber density, probe exclusions");
    std::vector<std::complex<double>> c1{{0, 0}, {0, 0}}, c2{{1, 0}, {0, 0}};
    CertReport kallin = kallin_separation_demo(c1, c2, 0.25, 0.25, 200, 7);
    if (!kallin.passed()) {
        cr.finish(false, "Kallin demo failed");
        return;
    }

    auto rows = fiber_density_experiment({0, 2, 4, 8, 12}, 64);
    if (!(rows.back().error < 0.1 * rows.front().error)) {
        cr.finish(false, "fiber density ratio too large");
        return;
    }

    Spaces sp = Spaces::make(2);
    ManifoldChart nf = build_normal_form(sp);
    auto axis = linspace(-0.05, 0.05, 5);
    SampleSet X = sample_chart(nf, {axis, axis, axis, axis});
    auto base_axis = linspace(-0.04, 0.04, 5);
    SampleSet base = sample_chart(nf, {base_axis, {0.02}, base_axis, {0.01}});
    int excluded = 0, total = 0;
    for (size_t i = 0; i < base.points.size() && total < 100; ++i) {
        for (int dir = 0; dir < 4 && total < 100; ++dir) {
            auto p = base.complex_point(static_cast<int>(i));
            if (dir == 0) p[4] += std::complex<double>(0, 0.05);
            if (dir == 1) p[3] += std::complex<double>(0, 0.05);
            if (dir == 2) p[1] += std::complex<double>(0, 0.05);
            if (dir == 3) p[4] += std::complex<double>(0.05, 0);
            ++total;
            if (hull_excludes_up_to(X, p, 6, 16, 120)) ++excluded;
        }
    }
    bool ok = excluded * 100 >= total * 95;
    cr.finish(ok, std::to_string(excluded) + "/" + std::to_string(total) +
                      " probes excluded at degree <= 6; fiber ratio " +
                      std::to_string(rows.back().error / rows.front().error));
}

void criterion_10() {
    Criterion cr(10, "byte-identical reports across identical runs (modulo timing)");
#ifdef PCVX_CLI_PATH
    std::string cli = PCVX_CLI_PATH;
    fs::path tmp = fs::temp_directory_path() / "pcvx_acceptance_repro";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    std::string base = "\"" + cli + "\" certify --k 2 --samples 40 --seed 17 --out ";
    std::string out_a = (tmp / "a").string(), out_b = (tmp / "b").string();
    if (std::system((base + "\"" + out_a + "\" > /dev/null").c_str()) != 0 ||
        std::system((base + "\"" + out_b + "\" > /dev/null").c_str()) != 0) {
        cr.finish(false, "CLI run failed");
        return;
    }
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(out_a)) {
        fs::path other = fs::path(out_b) / entry.path().filename();
        if (!fs::exists(other)) {
            cr.finish(false, "missing report " + entry.path().filename().string());
            return;
        }
        if (strip_timing_lines(read_file(entry.path().string())) !=
            strip_timing_lines(read_file(other.string()))) {
            cr.finish(false, "report differs: " + entry.path().filename().string());
            return;
        }
        ++compared;
    }
    cr.finish(compared > 0, std::to_string(compared) + " report files identical");
#else
    cr.finish(false, "CLI path not configured");
#endif
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0)
        std::cout << "all 10 acceptance criteria passed" << std::endl;
    else
        std::cout << g_failures << " acceptance criteria FAILED" << std::endl;
    return g_failures;
}
