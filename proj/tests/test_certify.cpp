#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcvx/report.hpp"

using namespace pcvx;

namespace {

SampleSpec ball_spec(int dim, int count, SampleScheme scheme = SampleScheme::LowDiscrepancy,
                     unsigned seed = 0) {
    SampleSpec spec;
    spec.center.assign(dim, Rational(0));
    spec.radius = Rational(1, 10);
    spec.count = count;
    spec.scheme = scheme;
    spec.seed = seed;
    return spec;
}

Rational dist2_to_origin(std::span<const Rational> p) {
    Rational d2(0);
    for (const auto& x : p) d2 += x * x;
    return d2;
}

}  // namespace

TEST_CASE("sample generation is deterministic and stays in the ball") {
    for (auto scheme : {SampleScheme::LowDiscrepancy, SampleScheme::RandomSeeded,
                        SampleScheme::FullGrid}) {
        SampleSpec spec = ball_spec(4, 50, scheme, 42);
        auto a = generate_samples(spec);
        auto b = generate_samples(spec);
        CHECK(a == b);
        CHECK(static_cast<int>(a.size()) <= 50);
        if (scheme != SampleScheme::FullGrid) CHECK(static_cast<int>(a.size()) == 50);
        for (const auto& p : a) {
            Rational d2(0);
            for (const auto& x : p) d2 += x * x;
            CHECK(d2 <= spec.radius * spec.radius);
        }
    }
    // Different seeds give different random samples.
    auto s1 = generate_samples(ball_spec(3, 20, SampleScheme::RandomSeeded, 1));
    auto s2 = generate_samples(ball_spec(3, 20, SampleScheme::RandomSeeded, 2));
    CHECK(s1 != s2);
    CHECK_THROWS_AS((void)generate_samples(ball_spec(17, 5)), Error);
    CHECK_THROWS_AS((void)generate_samples(ball_spec(0, 5)), Error);
}

TEST_CASE("polynomial identity verification") {
    auto reg = VarRegistry::make_real({"x", "y"});
    SparsePoly x = SparsePoly::var(reg, "x"), y = SparsePoly::var(reg, "y");
    CHECK(verify_polynomial_identity("id", (x + y) * (x - y), x * x - y * y).passed());
    CertReport bad = verify_polynomial_identity("id", x * x, y * y);
    CHECK(!bad.passed());
    CHECK(bad.witness.find("leading term") != std::string::npos);
}

TEST_CASE("pointwise PSD certificates") {
    auto sp = make_space({"z"}, {{"x", "y"}});
    SparsePoly x = SparsePoly::var(sp.reg, "x"), y = SparsePoly::var(sp.reg, "y");
    HermitianPolyMatrix pos = complex_hessian(x * x + y * y, sp);
    std::vector<Rational> p(2, Rational(0));
    Rational mm;
    CHECK(psd_certificate_at(pos, p, true, &mm) == Verdict::ProvedExact);
    CHECK(mm == 1);
    HermitianPolyMatrix neg = complex_hessian(-(x * x + y * y), sp);
    CHECK(psd_certificate_at(neg, p, false) == Verdict::Failed);
    HermitianPolyMatrix semi = complex_hessian(SparsePoly::zero(sp.reg), sp);
    CHECK(psd_certificate_at(semi, p, false) == Verdict::ProvedExact);
    CHECK(psd_certificate_at(semi, p, true) == Verdict::Failed);
}

TEST_CASE("sampled nonnegativity") {
    Spaces sp = Spaces::make(2);
    CoefficientSystem sys = CoefficientSystem::solve(Rational(1, 4), default_c(Rational(1, 4)));
    SparsePoly rho = build_rho_alpha(sys, sp);
    CertReport ok = certify_nonneg_on_samples("rho-nonneg", rho,
                                              ball_spec(sp.target.reg->size(), 60));
    CHECK(ok.verdict == Verdict::VerifiedOnSamples);
    CHECK(ok.samples_checked == 60);

    CertReport bad = certify_nonneg_on_samples("neg-eta", -build_eta(sp),
                                               ball_spec(sp.sheared->size(), 60));
    CHECK(bad.verdict == Verdict::Failed);
    CHECK(bad.witness.find("value") != std::string::npos);

    // With an exclusion set, strictness is demanded off the tube: x^2 + y^2
    // with exclusion = distance to origin passes, without it x^2 alone fails
    // strictly on the x = 0 slice only if such a sample exists; use a poly
    // vanishing on a whole hyperplane and no tube to provoke failure.
    SampleSpec strict = ball_spec(2, 60);
    strict.exclusion_dist2 = dist2_to_origin;
    strict.tube_eps = Rational(1, 100);
    auto reg2 = VarRegistry::make_real({"x", "y"});
    SparsePoly q = SparsePoly::var(reg2, "x", 2) + SparsePoly::var(reg2, "y", 2);
    CHECK(certify_nonneg_on_samples("strict", q, strict).passed());
}

TEST_CASE("sampled PSD with exclusion tube") {
    Spaces sp = Spaces::make(2);
    CoefficientSystem sys = CoefficientSystem::solve(Rational(1, 4), default_c(Rational(1, 4)));
    HermitianPolyMatrix h = complex_hessian(build_rho_alpha(sys, sp), sp.target);
    AlgebraicSet Y = build_Y(sp);
    SampleSpec spec = ball_spec(sp.target.reg->size(), 80);
    spec.tube_eps = Rational(1, 100);
    spec.exclusion_dist2 = [Y](std::span<const Rational> p) {
        Rational d2(0);
        for (const auto& def : Y.defs) {
            Rational v = def.eval_real(p).re;
            d2 += v * v;
        }
        return d2;
    };
    CertReport rep = certify_psd_on_samples("psd-rho", h, spec);
    CHECK(rep.verdict == Verdict::VerifiedOnSamples);
    CHECK(rep.has_min_minor);
    CHECK(rep.min_minor >= 0);

    // A negative-definite matrix fails with a pointed witness.
    auto sp1 = make_space({"z"}, {{"x", "y"}});
    SparsePoly m = SparsePoly::var(sp1.reg, "x", 2) + SparsePoly::var(sp1.reg, "y", 2);
    CertReport bad = certify_psd_on_samples("psd-neg", complex_hessian(-m, sp1), ball_spec(2, 10));
    CHECK(!bad.passed());
    CHECK(bad.witness.find("at (") != std::string::npos);
}

TEST_CASE("discriminant ray reduction") {
    CertReport r4 = discriminant_ray_check(
        "d4", CoefficientSystem::solve(Rational(1, 4), Rational(9, 32)));
    CHECK(r4.verdict == Verdict::ProvedExact);
    REQUIRE(!r4.notes.empty());
    CHECK(r4.notes[0].find("-2997/11264") != std::string::npos);  // D(0) = c^2 - 4A'

    CertReport r3 = discriminant_ray_check(
        "d3", CoefficientSystem::solve(Rational(1, 3), Rational(42, 209)));
    CHECK(r3.verdict == Verdict::ProvedExact);

    // Negative control: alpha = 0, c = 8/5 breaks the segment criterion.
    CertReport bad = discriminant_ray_check(
        "dbad", CoefficientSystem::make_unchecked(Rational(0), Rational(8, 5)));
    CHECK(!bad.passed());
    CHECK(bad.witness.find("ray") != std::string::npos);
}

TEST_CASE("sampled discriminant check") {
    Spaces sp = Spaces::make(2);
    CoefficientSystem sys = CoefficientSystem::solve(Rational(1, 4), Rational(9, 32));
    const auto& reg = sp.sheared;
    SparsePoly x2 = SparsePoly::var(reg, "x", 2), y2 = SparsePoly::var(reg, "y", 2);
    SparsePoly b1 = x2 * GaussianRational(4 * sys.alpha + sys.c) - y2 * GaussianRational(sys.c);
    SparsePoly b0 = x2 * x2 * GaussianRational(sys.A) + x2 * y2 * GaussianRational(sys.B) +
                    y2 * y2 * GaussianRational(sys.Aprime);
    SampleSpec spec = ball_spec(2, 60);
    CertReport rep = discriminant_check("disc", b1, b0, spec);
    CHECK(rep.verdict == Verdict::VerifiedOnSamples);
    CHECK(rep.samples_checked > 0);

    CHECK_THROWS_AS((void)discriminant_check(
                        "bad", b1 + SparsePoly::constant(reg, GaussianRational(1)), b0, spec),
                    Error);
    SparsePoly with_u = b1 + SparsePoly::var(reg, "u");
    CHECK_THROWS_AS((void)discriminant_check("bad", with_u, b0, spec), Error);
    SampleSpec wrong = ball_spec(3, 10);
    CHECK_THROWS_AS((void)discriminant_check("bad", b1, b0, wrong), Error);
}

TEST_CASE("feasibility scan and the alpha threshold bisection") {
    auto rows = feasibility_scan(Rational(0), Rational(1, 2), Rational(1, 10));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].bound == 1);
    CHECK(rows[0].margins.size() == 4);
    for (const auto& m : rows[0].margins) CHECK(m > 0);
    CHECK(rows[5].bound < 0);
    CHECK(rows[5].margins.empty());

    auto pole = feasibility_scan(Rational(-4, 5), Rational(-4, 5), Rational(1));
    REQUIRE(pole.size() == 1);
    CHECK(pole[0].pole);

    auto coarse = threshold_root(Rational(1, 10));
    CHECK(coarse.second - coarse.first <= Rational(1, 10));
    CHECK(coarse.first >= Rational(2, 5));
    CHECK(coarse.second <= Rational(21, 40));
    auto fine = threshold_root(Rational(1, 1000));
    CHECK(fine.first >= Rational(46, 100));
    CHECK(fine.second <= Rational(47, 100));
    CHECK(c_upper_bound(fine.first) > 0);
    CHECK(c_upper_bound(fine.second) <= 0);
    CHECK_THROWS_AS((void)threshold_root(Rational(0)), Error);
}

TEST_CASE("intersection-equals-origin rank certificate") {
    for (int k : {2, 3}) {
        Spaces sp = Spaces::make(k);
        CertReport rep = certify_intersection_origin("x-origin", Rational(1, 4), Rational(1, 3),
                                                     sp);
        CHECK(rep.verdict == Verdict::ProvedExact);
    }
    Spaces sp = Spaces::make(2);
    CHECK_THROWS_AS(
        (void)certify_intersection_origin("same", Rational(1, 4), Rational(1, 4), sp), Error);
}

TEST_CASE("psi~ Hessian evaluator agrees with the expanded polynomial Hessian") {
    Spaces sp = Spaces::make(2);
    PsiTilde psi = build_psi_tilde(sp);
    PsiHessianEvaluator eval(psi, sp);
    HermitianPolyMatrix full = complex_hessian(psi.total, sp.source);

    std::vector<std::vector<Rational>> pts = {
        std::vector<Rational>(sp.source.reg->size(), Rational(0)),
        generate_samples(ball_spec(sp.source.reg->size(), 3))[1],
    };
    for (const auto& p : pts) {
        Mat<GaussianRational> a = eval.at_real(p);
        Mat<GaussianRational> b = full.eval_at(p);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < a.size(); ++j) CHECK(a[i][j] == b[i][j]);
    }
}

TEST_CASE("reports are reproducible modulo the timing line") {
    Spaces sp = Spaces::make(2);
    CoefficientSystem sys = CoefficientSystem::solve(Rational(1, 4), default_c(Rational(1, 4)));
    HermitianPolyMatrix h = complex_hessian(build_rho_alpha(sys, sp), sp.target);
    SampleSpec spec = ball_spec(sp.target.reg->size(), 30, SampleScheme::RandomSeeded, 9);
    CertReport a = certify_psd_on_samples("rep", h, spec);
    CertReport b = certify_psd_on_samples("rep", h, spec);
    CHECK(strip_timing_lines(a.to_text()) == strip_timing_lines(b.to_text()));
    CHECK(a.to_text().find("wall_time") != std::string::npos);
    CHECK(strip_timing_lines(a.to_text()).find("wall_time") == std::string::npos);
}

TEST_CASE("report utilities") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK_THROWS_AS((void)parse_rational("1/0"), Error);
    CHECK_THROWS_AS((void)parse_rational(""), Error);

    Manifest m;
    m.add("k", "2");
    m.add("c", Rational(9, 32));
    std::string h1 = m.hash();
    m.add("extra", "1");
    CHECK(h1 != m.hash());
    CHECK(m.to_text().find("c = 9/32") != std::string::npos);

    CertReport rep;
    rep.claim_id = "a,b";
    rep.verdict = Verdict::ProvedExact;
    std::string csv = reports_csv({rep});
    CHECK(csv.find("a;b,proved-exact") != std::string::npos);
}
