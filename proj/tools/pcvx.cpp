// pcvx: exact construction and certification runs for the Beloshapka-Coffman
// normal form toolkit, plus desk-scale polynomial-hull experiments.

#include "pcvx/hull.hpp"
#include "pcvx/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace pcvx;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitInvalidConfig = 2;

struct CertifyConfig {
    int k = 2;
    std::string alphas = "1/4,1/3";
    std::string c_policy = "half-bound";
    std::string radius = "1/10";
    std::string eps = "1/100";
    int samples = 60;
    unsigned seed = 17;
    std::string out = "reports";
};

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(parse_rational(item));
    if (out.empty()) throw Error("empty rational list");
    return out;
}

std::string config_block(const std::vector<std::pair<std::string, std::string>>& kv,
                         const std::string& manifest_hash) {
    std::ostringstream os;
    for (const auto& [k, v] : kv) os << "config " << k << ": " << v << "\n";
    os << "config manifest_hash: " << manifest_hash << "\n";
    return os.str();
}

// Degree <= 6 monomial basis of the sheared registry variables that the
// operator identities involve (x, y, u, v); identity on this basis extends
// to the span containing P_alpha, Q_alpha, rho_alpha.
std::vector<SparsePoly> operator_test_basis(const Spaces& sp) {
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

// The raw-coordinate counterparts of the sheared operators, through the
// wirtinger module; used as the independent second route.
SparsePoly raw_4d(const SparsePoly& raw, const ComplexCoordSpace& tgt, int ci, int cj) {
    return d_z(d_zbar(raw, tgt, cj), tgt, ci) * GaussianRational(Rational(4));
}

CertReport check_operator_identities(const std::string& claim_id, const Rational& alpha,
                                     const Spaces& sp) {
    CertReport rep;
    rep.claim_id = claim_id;
    rep.params["alpha"] = to_string(alpha);
    const auto& tgt = sp.target;
    const int iz = 0, iw = tgt.dim() - 1;
    rep.verdict = Verdict::ProvedExact;
    for (const auto& mono : operator_test_basis(sp)) {
        SparsePoly raw = coordinate_change_to_sheared(mono, alpha, sp);
        struct Case {
            SparsePoly lhs, rhs;
            const char* name;
        } cases[] = {
            {coordinate_change_to_sheared(sheared_4d_zzbar(mono, alpha, sp), alpha, sp),
             raw_4d(raw, tgt, iz, iz), "4d_zzbar"},
            {coordinate_change_to_sheared(sheared_4d_zwbar(mono, alpha, sp), alpha, sp),
             raw_4d(raw, tgt, iz, iw), "4d_zwbar"},
            {coordinate_change_to_sheared(sheared_4d_wwbar(mono, sp), alpha, sp),
             raw_4d(raw, tgt, iw, iw), "4d_wwbar"},
        };
        for (auto& cs : cases) {
            if (!(cs.lhs == cs.rhs)) {
                rep.verdict = Verdict::Failed;
                rep.witness = std::string(cs.name) + " mismatch on monomial " + mono.to_string();
                return rep;
            }
        }
    }
    rep.notes.push_back("monomial basis of degree <= 6 in (x, y, u, v), three operators");
    return rep;
}

int run_certify(const CertifyConfig& cfg) {
    Rational radius = parse_rational(cfg.radius);
    Rational eps = parse_rational(cfg.eps);
    auto alphas = parse_rational_list(cfg.alphas);
    for (const auto& a : alphas)
        if (a >= alpha_threshold())
            throw Error("invalid alpha = " + to_string(a) + ": " + kAlphaThresholdNote);
    if (cfg.k < 2) throw Error("k must be at least 2");
    if (cfg.samples < 1) throw Error("samples must be positive");
    if (radius <= 0 || eps < 0) throw Error("radius must be positive and eps nonnegative");

    Spaces sp = Spaces::make(cfg.k);
    std::vector<CertReport> reports;
    Manifest manifest;
    manifest.add("k", std::to_string(cfg.k));

    ManifoldChart normal_form = build_normal_form(sp);
    SparsePoly g = build_g(sp);
    manifest.add("g", g);

    // Claim: g vanishes identically on the normal-form chart.
    reports.push_back(
        verify_polynomial_identity("zero-set-g", normal_form.substitute(g),
                                   SparsePoly::zero(normal_form.params)));

    for (const auto& alpha : alphas) {
        const std::string tag = to_string(alpha);
        Rational c = cfg.c_policy == "half-bound" ? default_c(alpha) : parse_rational(cfg.c_policy);

        // Coefficient invariants: equalities (1)-(3) are constructive;
        // positivity and inequalities (4)-(7) are certified exactly.
        CertReport coeff;
        coeff.claim_id = "coefficient-invariants-" + tag;
        coeff.params["alpha"] = tag;
        coeff.params["c"] = to_string(c);
        CoefficientSystem sys = CoefficientSystem::make_unchecked(alpha, c);
        try {
            sys = CoefficientSystem::solve(alpha, c);
            coeff.verdict = Verdict::ProvedExact;
            auto margins = sys.inequality_margins();
            for (int i = 0; i < 4; ++i)
                coeff.notes.push_back("margin (" + std::to_string(i + 4) +
                                      ") = " + to_string(margins[i]));
        } catch (const Error& e) {
            coeff.verdict = Verdict::Failed;
            coeff.witness = e.what();
        }
        reports.push_back(coeff);
        manifest.add("A(" + tag + ")", sys.A);
        manifest.add("Aprime(" + tag + ")", sys.Aprime);
        manifest.add("B(" + tag + ")", sys.B);

        CertReport op = check_operator_identities("operator-identities-" + tag, alpha, sp);
        reports.push_back(op);

        SparsePoly P = build_P_alpha(sys, sp);
        manifest.add("P(" + tag + ")", P);
        reports.push_back(verify_polynomial_identity(
            "P-expansion-" + tag, sheared_4d_zzbar(P, alpha, sp),
            paper_P_zzbar_expansion(sys, sp)));

        reports.push_back(discriminant_ray_check("discriminant-" + tag, sys));

        SparsePoly rho = build_rho_alpha(sys, sp);
        manifest.add("rho(" + tag + ")", rho);

        // Zero-set identities: rho o f_alpha^sigma vanishes on the chart.
        for (int sigma = 1; sigma <= cfg.k - 1; ++sigma) {
            HoloPolyMap f = build_f_alpha_sigma(alpha, sigma, sp);
            ManifoldChart image = push_forward(f, normal_form);
            reports.push_back(verify_polynomial_identity(
                "zero-set-psi-" + tag + "-sigma" + std::to_string(sigma),
                image.substitute(rho), SparsePoly::zero(normal_form.params)));

            // Kernel formula at seeded random rational points.
            CertReport ker;
            ker.claim_id = "kernel-" + tag + "-sigma" + std::to_string(sigma);
            ker.params["alpha"] = tag;
            ker.verdict = Verdict::ProvedExact;
            auto expected = expected_jacobian_kernel(alpha, sigma, sp);
            std::mt19937 rng(cfg.seed + sigma);
            std::uniform_int_distribution<int> dist(-20, 20);
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<GaussianRational> z(sp.source.dim());
                for (auto& zi : z)
                    zi = GaussianRational(Rational(dist(rng), 7), Rational(dist(rng), 7));
                auto got = canonical_span(f.jacobian_kernel_at(z));
                if (got != expected) {
                    ker.verdict = Verdict::Failed;
                    ker.witness = "kernel mismatch at trial " + std::to_string(trial);
                    break;
                }
            }
            ker.samples_checked = 5;
            reports.push_back(ker);
        }

        // PSD sampling for Hess rho off the Y-tube.
        HermitianPolyMatrix hrho = complex_hessian(rho, sp.target);
        SampleSpec spec;
        spec.center.assign(sp.target.reg->size(), Rational(0));
        spec.radius = radius;
        spec.count = cfg.samples;
        spec.scheme = SampleScheme::LowDiscrepancy;
        spec.tube_eps = eps;
        AlgebraicSet Y = build_Y(sp);
        spec.exclusion_dist2 = [Y](std::span<const Rational> p) {
            // Y is linear: exact squared Euclidean distance.
            Rational d2(0);
            for (const auto& def : Y.defs) {
                Rational v = def.eval_real(p).re;
                d2 += v * v;
            }
            return d2;
        };
        CertReport psd = certify_psd_on_samples("psd-rho-" + tag, hrho, spec);
        psd.params["alpha"] = tag;
        psd.notes.push_back("tube distance: exact, Y is linear");
        reports.push_back(psd);
    }

    // Glued object: strict plurisubharmonicity off the origin and
    // nonnegativity, sampled; zero set on the chart, exact.
    if (alphas.size() == 2 && !(alphas[0] == alphas[1])) {
        reports.push_back(certify_intersection_origin("intersection-origin", alphas[0],
                                                      alphas[1], sp));
    }
    if (cfg.k == 2) {
        PsiTilde psi = build_psi_tilde(sp);
        manifest.add("psi_tilde", psi.total);
        reports.push_back(verify_polynomial_identity(
            "zero-set-psi-tilde", normal_form.substitute(psi.total),
            SparsePoly::zero(normal_form.params)));

        SampleSpec spec;
        spec.center.assign(sp.source.reg->size(), Rational(0));
        spec.radius = parse_rational(cfg.radius);
        spec.count = cfg.samples;
        spec.scheme = SampleScheme::LowDiscrepancy;
        spec.tube_eps = parse_rational(cfg.eps);
        spec.exclusion_dist2 = [](std::span<const Rational> p) {
            Rational d2(0);
            for (const auto& x : p) d2 += x * x;
            return d2;
        };
        PsiHessianEvaluator hess(psi, sp);
        CertReport psd = certify_psd_on_samples(
            "psd-psi-tilde", [&hess](std::span<const Rational> p) { return hess.at_real(p); },
            spec);
        psd.notes.push_back("exclusion: ball around the origin");
        reports.push_back(psd);

        // psi~ >= 0, strictly off the normal-form zero set; tube via the
        // defining-polynomial residual (vanishes exactly on the chart).
        MSigmaResult m1 = build_M_alpha_sigma(alphas[0], 1, sp);
        SparsePoly residual = psi.g;
        for (const auto& def : m1.set.defs) residual = residual + def * def;
        SampleSpec pspec = spec;
        pspec.exclusion_dist2 = [residual](std::span<const Rational> p) {
            return residual.eval_real(p).re;
        };
        CertReport pos = certify_nonneg_on_samples("positivity-psi-tilde", psi.total, pspec);
        pos.notes.push_back("tube method: defining-polynomial residual");
        reports.push_back(pos);
    }

    // Emit reports.
    fs::create_directories(cfg.out);
    std::vector<std::pair<std::string, std::string>> kv = {
        {"k", std::to_string(cfg.k)},     {"alpha", cfg.alphas}, {"c", cfg.c_policy},
        {"radius", cfg.radius},           {"eps", cfg.eps},
        {"samples", std::to_string(cfg.samples)},
        {"seed", std::to_string(cfg.seed)},
    };
    std::string block = config_block(kv, manifest.hash());
    write_file(cfg.out + "/manifest.txt", manifest.to_text());
    for (const auto& rep : reports) {
        std::string fname = rep.claim_id;
        for (auto& ch : fname)
            if (ch == '/') ch = '_';
        write_file(cfg.out + "/claim-" + fname + ".txt", block + rep.to_text());
    }
    write_file(cfg.out + "/summary.csv", reports_csv(reports));

    bool all_ok = true;
    for (const auto& rep : reports) {
        std::cout << rep.claim_id << ": " << verdict_name(rep.verdict) << "\n";
        all_ok = all_ok && rep.passed();
    }
    return all_ok ? kExitOk : kExitClaimFailure;
}

int run_feasibility(const std::string& range, const std::string& step_s,
                    const std::string& tol_s, const std::string& out) {
    auto colon = range.find(':');
    if (colon == std::string::npos) throw Error("range must be RAT:RAT");
    Rational lo = parse_rational(range.substr(0, colon));
    Rational hi = parse_rational(range.substr(colon + 1));
    if (hi < lo) throw Error("invalid range");
    Rational step = parse_rational(step_s);
    Rational tol = parse_rational(tol_s);

    auto rows = feasibility_scan(lo, hi, step);
    std::ostringstream csv;
    csv << "alpha,pole,c_upper_bound,margin4,margin5,margin6,margin7\n";
    for (const auto& row : rows) {
        csv << to_string(row.alpha) << "," << (row.pole ? 1 : 0) << ",";
        if (!row.pole) csv << to_string(row.bound);
        for (int i = 0; i < 4; ++i) {
            csv << ",";
            if (static_cast<int>(row.margins.size()) == 4) csv << to_string(row.margins[i]);
        }
        csv << "\n";
    }
    auto interval = threshold_root(tol);
    std::ostringstream os;
    os << csv.str();
    os << "# threshold interval: (" << to_string(interval.first) << ", "
       << to_string(interval.second) << ")\n";
    std::cout << os.str();
    if (!out.empty()) {
        fs::create_directories(out);
        write_file(out + "/feasibility.csv", os.str());
    }
    return kExitOk;
}

int run_hull(const std::string& experiment, int degree, int grid, unsigned seed,
             const std::string& out) {
    bool ok = true;
    std::ostringstream summary;
    summary << "experiment,query,verdict,degree,margin\n";

    if (experiment == "kallin" || experiment == "all") {
        std::vector<std::complex<double>> c1{{0, 0}, {0, 0}}, c2{{1, 0}, {0, 0}};
        CertReport rep = kallin_separation_demo(c1, c2, 0.25, 0.25, 200, seed);
        std::cout << rep.claim_id << ": " << verdict_name(rep.verdict) << "\n";
        summary << "kallin,midpoint," << verdict_name(rep.verdict) << ",1,\n";
        ok = ok && rep.passed();
    }

    if (experiment == "fiber" || experiment == "all") {
        auto rows = fiber_density_experiment({0, 2, 4, 8, 12}, grid);
        double prev = -1;
        bool monotone = true;
        for (const auto& row : rows) {
            std::cout << "fiber degree " << row.degree << ": error " << row.error << "\n";
            summary << "fiber,degree" << row.degree << ",," << row.degree << "," << row.error
                    << "\n";
            if (prev >= 0 && row.error > prev + 1e-12) monotone = false;
            prev = row.error;
        }
        ok = ok && monotone && rows.back().error < 0.1 * rows.front().error;
    }

    if (experiment == "probe" || experiment == "all") {
        Spaces sp = Spaces::make(2);
        ManifoldChart chart = build_normal_form(sp);
        auto axis = linspace(-0.05, 0.05, 5);
        SampleSet X = sample_chart(chart, {axis, axis, axis, axis});
        // Probe set: chart points pushed off the manifold in the zeta- and
        // Im w-directions.
        auto base_axis = linspace(-0.04, 0.04, 5);
        SampleSet base = sample_chart(chart, {base_axis, {0.02}, base_axis, {0.01}});
        int excluded = 0, totalq = 0;
        for (size_t i = 0; i < base.points.size() && totalq < 100; ++i) {
            for (int dir = 0; dir < 4 && totalq < 100; ++dir) {
                auto p = base.complex_point(static_cast<int>(i));
                if (dir == 0) p[4] += std::complex<double>(0, 0.05);   // zeta_2
                if (dir == 1) p[3] += std::complex<double>(0, 0.05);   // zeta_1
                if (dir == 2) p[1] += std::complex<double>(0, 0.05);   // w_1 off Im = 0
                if (dir == 3) p[4] += std::complex<double>(0.05, 0);   // zeta_2 real push
                ++totalq;
                auto cert = hull_excludes_up_to(X, p, degree, 16, 120);
                if (cert) {
                    ++excluded;
                    summary << "probe,q" << totalq << ",excluded," << cert->degree << ","
                            << cert->margin << "\n";
                } else {
                    summary << "probe,q" << totalq << ",one-sided-unknown,,\n";
                }
            }
        }
        std::cout << "probe exclusions: " << excluded << "/" << totalq << "\n";
        ok = ok && excluded * 100 >= totalq * 95;
    }

    if (!out.empty()) {
        fs::create_directories(out);
        write_file(out + "/hull_summary.csv", summary.str());
    }
    return ok ? kExitOk : kExitClaimFailure;
}

int run_report(const std::string& dir) {
    std::string csv = read_file(dir + "/summary.csv");
    std::cout << csv;
    int failed = 0;
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line))
        if (line.find(",failed,") != std::string::npos) ++failed;
    std::cout << "# failed claims: " << failed << "\n";
    return failed == 0 ? kExitOk : kExitClaimFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification toolkit for CR-singular model manifolds"};
    app.set_config("--config");
    app.require_subcommand(1);

    CertifyConfig cfg;
    auto* certify = app.add_subcommand("certify", "run the certification claim suite");
    certify->add_option("--k", cfg.k, "ambient parameter k (C^{3k-1})");
    certify->add_option("--alpha", cfg.alphas, "comma-separated alpha values");
    certify->add_option("--c", cfg.c_policy, "c value or 'half-bound'");
    certify->add_option("--radius", cfg.radius, "sampling ball radius");
    certify->add_option("--eps", cfg.eps, "exclusion tube width");
    certify->add_option("--samples", cfg.samples, "sample count per sampled claim");
    certify->add_option("--seed", cfg.seed, "random seed");
    certify->add_option("--out", cfg.out, "report output directory");

    std::string range = "0:1/2", step = "1/100", tol = "1/1000", fout;
    auto* feas = app.add_subcommand("feasibility", "emit the (alpha, c) feasibility table");
    feas->add_option("--range", range, "alpha range RAT:RAT");
    feas->add_option("--step", step, "scan step");
    feas->add_option("--tol", tol, "threshold bisection tolerance");
    feas->add_option("--out", fout, "output directory (optional)");

    std::string experiment = "all", hout;
    int degree = 6, grid = 64;
    unsigned hseed = 7;
    auto* hull = app.add_subcommand("hull", "run hull-lab experiments");
    hull->add_option("--experiment", experiment, "kallin | fiber | probe | all");
    hull->add_option("--degree", degree, "maximum certificate degree");
    hull->add_option("--grid", grid, "disk grid resolution");
    hull->add_option("--seed", hseed, "sampling seed");
    hull->add_option("--out", hout, "output directory (optional)");

    std::string rdir = "reports";
    auto* report = app.add_subcommand("report", "summarize a previous run's report directory");
    report->add_option("--dir", rdir, "report directory to summarize");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidConfig;
    }

    try {
        if (certify->parsed()) return run_certify(cfg);
        if (feas->parsed()) return run_feasibility(range, step, tol, fout);
        if (hull->parsed()) return run_hull(experiment, degree, grid, hseed, hout);
        if (report->parsed()) return run_report(rdir);
    } catch (const Error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitInvalidConfig;
    }
    return kExitInvalidConfig;
}
