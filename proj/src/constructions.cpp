#include "pcvx/constructions.hpp"

#include <utility>

namespace pcvx {

namespace {

std::string idx_name(const std::string& base, int i) {
    return base + "_" + std::to_string(i);
}

// Complex coordinate value of `space` as a complex-coefficient polynomial in
// the space's real variables: coord -> re + i*im.
SparsePoly realified_coord(const ComplexCoordSpace& space, const std::string& name) {
    const auto& cc = space.reg->coord(name);
    return SparsePoly::var(space.reg, cc.re_idx) +
           SparsePoly::var(space.reg, cc.im_idx) * GaussianRational::i();
}

SparsePoly conj_coord(const ComplexCoordSpace& space, const std::string& name) {
    const auto& cc = space.reg->coord(name);
    return SparsePoly::var(space.reg, cc.re_idx) -
           SparsePoly::var(space.reg, cc.im_idx) * GaussianRational::i();
}

SparsePoly cpoly(const RegistryPtr& reg, const Rational& c) {
    return SparsePoly::constant(reg, GaussianRational(c));
}

}  // namespace

Spaces Spaces::make(int k) {
    if (k < 2) throw Error("k must be at least 2");
    std::vector<std::string> src_coords{"z"};
    std::vector<std::pair<std::string, std::string>> src_pairs{{"x", "y"}};
    for (int j = 1; j <= 2 * k - 2; ++j) {
        src_coords.push_back(idx_name("w", j));
        src_pairs.emplace_back(idx_name("u", j), idx_name("v", j));
    }
    for (int s = 1; s <= k; ++s) {
        src_coords.push_back(idx_name("zeta", s));
        src_pairs.emplace_back(idx_name("xi", s), idx_name("eta", s));
    }

    std::vector<std::string> tgt_coords{"z"};
    std::vector<std::pair<std::string, std::string>> tgt_pairs{{"x", "y"}};
    for (int j = 1; j <= 2 * k - 2; ++j) {
        tgt_coords.push_back(idx_name("w", j));
        tgt_pairs.emplace_back(idx_name("u", j), idx_name("v", j));
    }
    tgt_coords.push_back("w");
    tgt_pairs.emplace_back("rw", "iw");

    std::vector<std::string> sheared_names{"x", "y"};
    for (int j = 1; j <= 2 * k - 2; ++j) {
        sheared_names.push_back(idx_name("u", j));
        sheared_names.push_back(idx_name("v", j));
    }
    sheared_names.push_back("u");
    sheared_names.push_back("v");

    Spaces sp;
    sp.k = k;
    sp.source = make_space(std::move(src_coords), std::move(src_pairs));
    sp.target = make_space(std::move(tgt_coords), std::move(tgt_pairs));
    sp.sheared = VarRegistry::make_real(std::move(sheared_names));
    return sp;
}

Rational c_upper_bound(const Rational& alpha) {
    const Rational a = alpha;
    std::vector<std::pair<Rational, Rational>> exprs = {
        {(a - 1) * (a - 1), Rational(1)},
        {16 + 8 * a - 64 * a * a - 60 * a * a * a, 11 + 30 * a + 20 * a * a},
        {4 * (a - 1) * (a - 1) * (4 - 5 * a), 20 * a * a - 30 * a + 11},
        {6 - 4 * a - 14 * a * a, 4 + 5 * a},
    };
    bool have = false;
    Rational best;
    for (const auto& [num, den] : exprs) {
        if (den == 0) throw Error("pole in c_upper_bound at alpha = " + to_string(alpha));
        Rational v = num / den;
        if (!have || v < best) { best = v; have = true; }
    }
    return best;
}

Rational feasibility_binding_numerator(const Rational& alpha) {
    const Rational a = alpha;
    return 16 + 8 * a - 64 * a * a - 60 * a * a * a;
}

CoefficientSystem CoefficientSystem::make_unchecked(const Rational& alpha, const Rational& c) {
    const Rational a = alpha;
    CoefficientSystem sys;
    sys.alpha = a;
    sys.c = c;
    sys.A = 3 * (a + 1) * (a + 1) * (4 * a + c) / (2 * (5 * a + 4));
    sys.Aprime = 3 * (a - 1) * (a - 1) * c / (2 * (4 - 5 * a));
    sys.B = Rational(6, 5) * ((a - 1) * (a - 1) - c);
    return sys;
}

std::vector<Rational> CoefficientSystem::inequality_margins() const {
    const Rational& a = alpha;
    return {
        6 * A + B + 6 * (a + 1) * (a + 1) - 3 * (4 * a + c) * (3 * a + 2),
        6 * Aprime + B + 6 * (a - 1) * (a - 1) - (6 - 9 * a) * c,
        4 * A - (4 * a + c) * (4 * a + c),
        4 * Aprime - c * c,
    };
}

int CoefficientSystem::first_violated_inequality() const {
    auto margins = inequality_margins();
    for (int i = 0; i < 4; ++i)
        if (margins[i] <= 0) return i + 4;
    return 0;
}

CoefficientSystem CoefficientSystem::solve(const Rational& alpha, const Rational& c) {
    if (alpha >= alpha_threshold())
        throw Error(std::string("invalid alpha = ") + to_string(alpha) + ": " +
                    kAlphaThresholdNote);
    if (c <= 0) throw Error("c must be positive");
    if (c >= c_upper_bound(alpha))
        throw Error("c = " + to_string(c) + " is not below c_upper_bound(alpha) = " +
                    to_string(c_upper_bound(alpha)));
    CoefficientSystem sys = make_unchecked(alpha, c);
    if (sys.A <= 0) throw Error("A is not positive");
    if (sys.Aprime <= 0) throw Error("A' is not positive");
    if (sys.B <= 0) throw Error("B is not positive");
    if (int idx = sys.first_violated_inequality())
        throw Error("inequality (" + std::to_string(idx) + ") violated");
    return sys;
}

std::vector<GaussianRational> ManifoldChart::eval_params(std::span<const Rational> p) const {
    if (static_cast<int>(p.size()) != params->size()) throw Error("parameter count mismatch");
    std::vector<GaussianRational> q(p.begin(), p.end());
    std::vector<GaussianRational> out;
    out.reserve(comps.size());
    for (const auto& comp : comps) out.push_back(comp.eval(q));
    return out;
}

SparsePoly ManifoldChart::substitute(const SparsePoly& ambient_poly) const {
    if (ambient_poly.registry() != ambient.reg)
        throw Error("polynomial not over the chart's ambient registry");
    std::vector<std::optional<SparsePoly>> subst(ambient.reg->size());
    for (int i = 0; i < ambient.dim(); ++i) {
        const auto& cc = ambient.coord(i);
        subst[cc.re_idx] = comps.at(i).real_part();
        subst[cc.im_idx] = comps.at(i).imag_part();
    }
    return ambient_poly.compose(subst);
}

bool AlgebraicSet::contains(std::span<const GaussianRational> point) const {
    auto p = ambient.realify_point(point);
    for (const auto& d : defs)
        if (!d.eval_real(p).is_zero()) return false;
    return true;
}

ManifoldChart build_normal_form(const Spaces& sp) {
    const int k = sp.k;
    std::vector<std::string> names{"x", "y"};
    for (int j = 1; j <= 2 * k - 2; ++j) names.push_back(idx_name("u", j));
    auto reg = VarRegistry::make_real(std::move(names));

    SparsePoly x = SparsePoly::var(reg, "x"), y = SparsePoly::var(reg, "y");
    SparsePoly z = x + y * GaussianRational::i();
    SparsePoly zbar = x - y * GaussianRational::i();

    ManifoldChart chart;
    chart.name = "M_" + std::to_string(k);
    chart.ambient = sp.source;
    chart.params = reg;
    chart.comps.push_back(z);
    for (int j = 1; j <= 2 * k - 2; ++j)
        chart.comps.push_back(SparsePoly::var(reg, idx_name("u", j)));
    // zeta_1 = |z|^2 + zbar (u_1 + i u_2)
    chart.comps.push_back(x * x + y * y +
                          zbar * (SparsePoly::var(reg, "u_1") +
                                  SparsePoly::var(reg, "u_2") * GaussianRational::i()));
    // zeta_s = zbar (u_{2s-1} + i u_{2s}), 2 <= s <= k-1
    for (int s = 2; s <= k - 1; ++s)
        chart.comps.push_back(zbar * (SparsePoly::var(reg, idx_name("u", 2 * s - 1)) +
                                      SparsePoly::var(reg, idx_name("u", 2 * s)) *
                                          GaussianRational::i()));
    // zeta_k = zbar^2
    chart.comps.push_back(zbar * zbar);
    return chart;
}

ManifoldChart build_S_alpha(const Spaces& sp, const Rational& alpha) {
    const int k = sp.k;
    std::vector<std::string> names{"x", "y"};
    for (int j = 1; j <= 2 * k - 2; ++j) names.push_back(idx_name("s", j));
    auto reg = VarRegistry::make_real(std::move(names));

    SparsePoly x = SparsePoly::var(reg, "x"), y = SparsePoly::var(reg, "y");

    ManifoldChart chart;
    chart.name = "S_" + to_string(alpha);
    chart.ambient = sp.target;
    chart.params = reg;
    chart.comps.push_back(x + y * GaussianRational::i());
    for (int j = 1; j <= 2 * k - 2; ++j)
        chart.comps.push_back(SparsePoly::var(reg, idx_name("s", j)));
    // w = (alpha/2)|z|^2 + (1/4)(z^2 + zbar^2) = (alpha/2)(x^2+y^2) + (x^2-y^2)/2
    chart.comps.push_back((x * x + y * y) * GaussianRational(alpha / 2) +
                          (x * x - y * y) * GaussianRational(Rational(1, 2)));
    return chart;
}

SparsePoly build_P_alpha(const CoefficientSystem& sys, const Spaces& sp) {
    const auto& reg = sp.sheared;
    SparsePoly x2 = SparsePoly::var(reg, "x", 2);
    SparsePoly y2 = SparsePoly::var(reg, "y", 2);
    SparsePoly u = SparsePoly::var(reg, "u");
    return u.pow(4) +
           (x2 * GaussianRational(4 * sys.alpha + sys.c) - y2 * GaussianRational(sys.c)) *
               u.pow(3) +
           (x2 * x2 * GaussianRational(sys.A) + x2 * y2 * GaussianRational(sys.B) +
            y2 * y2 * GaussianRational(sys.Aprime)) *
               u.pow(2);
}

SparsePoly build_Q_alpha(const CoefficientSystem& sys, const Spaces& sp) {
    const auto& reg = sp.sheared;
    SparsePoly x2 = SparsePoly::var(reg, "x", 2);
    SparsePoly y2 = SparsePoly::var(reg, "y", 2);
    SparsePoly u = SparsePoly::var(reg, "u");
    SparsePoly vsq = SparsePoly::var(reg, "v", 2);
    for (int j = 1; j <= 2 * sp.k - 2; ++j)
        vsq = vsq + SparsePoly::var(reg, idx_name("v", j), 2);
    return build_P_alpha(sys, sp) + (x2 + y2) * u.pow(4) +
           vsq * GaussianRational(Rational(1, 2));
}

SparsePoly build_eta(const Spaces& sp) {
    const auto& reg = sp.sheared;
    SparsePoly vsq = SparsePoly::var(reg, "v", 2);
    for (int j = 1; j <= 2 * sp.k - 2; ++j)
        vsq = vsq + SparsePoly::var(reg, idx_name("v", j), 2);
    return (cpoly(reg, Rational(1, 2)) + SparsePoly::var(reg, "x", 2) +
            SparsePoly::var(reg, "y", 2)) *
           vsq;
}

SparsePoly coordinate_change_to_sheared(const SparsePoly& f, const Rational& alpha,
                                        const Spaces& sp) {
    if (f.registry() != sp.sheared) throw Error("polynomial not over the sheared registry");
    const auto& raw = sp.target.reg;
    std::vector<std::optional<SparsePoly>> subst(sp.sheared->size());
    for (int i = 0; i < sp.sheared->size(); ++i) {
        const std::string& n = sp.sheared->name(i);
        if (n == "u") {
            SparsePoly x2 = SparsePoly::var(raw, "x", 2);
            SparsePoly y2 = SparsePoly::var(raw, "y", 2);
            subst[i] = SparsePoly::var(raw, "rw") - (x2 + y2) * GaussianRational(alpha / 2) -
                       (x2 - y2) * GaussianRational(Rational(1, 2));
        } else if (n == "v") {
            subst[i] = SparsePoly::var(raw, "iw");
        } else {
            subst[i] = SparsePoly::var(raw, n);
        }
    }
    return f.compose(subst);
}

SparsePoly build_rho_alpha(const CoefficientSystem& sys, const Spaces& sp) {
    return coordinate_change_to_sheared(build_Q_alpha(sys, sp) + build_eta(sp), sys.alpha, sp);
}

HoloPolyMap build_f_alpha(const Rational& alpha, const Spaces& sp) {
    if (alpha == 1 || alpha == -1) throw Error("f_alpha has a pole at alpha = +-1");
    const int k = sp.k;
    HoloPolyMap f(sp.source, sp.target);
    SparsePoly z = f.z(0);
    SparsePoly w1 = f.z(1), w2 = f.z(2);
    SparsePoly zeta1 = f.z(2 * k - 1), zetak = f.z(3 * k - 2);

    f.set_component(0, z + w1 * GaussianRational(alpha / (alpha + 1)) -
                           w2 * GaussianRational(Rational(0), alpha / (1 - alpha)));
    for (int j = 1; j <= 2 * k - 2; ++j) f.set_component(j, f.z(j));
    f.set_component(2 * k - 1,
                    zeta1 * GaussianRational(alpha / 2) +
                        zetak * GaussianRational(Rational(1, 4)) +
                        z * z * GaussianRational(Rational(1, 4)) +
                        z * (w1 - w2 * GaussianRational::i()) * GaussianRational(alpha / 2) +
                        w1 * w1 * GaussianRational(alpha * alpha / (2 * alpha + 2)) -
                        w2 * w2 * GaussianRational(alpha * alpha / (2 - 2 * alpha)));
    return f;
}

HoloPolyMap build_F_sigma(int sigma, const Spaces& sp) {
    const int k = sp.k;
    if (sigma < 1 || sigma > k - 1) throw Error("sigma out of range");
    HoloPolyMap F = HoloPolyMap::identity(sp.source);
    if (sigma >= 2) {
        F.set_component(1, F.z(1) + F.z(2 * sigma - 1));
        F.set_component(2, F.z(2) + F.z(2 * sigma));
        F.set_component(2 * k - 1, F.z(2 * k - 1) + F.z(2 * k - 2 + sigma));
    }
    return F;
}

HoloPolyMap build_f_alpha_sigma(const Rational& alpha, int sigma, const Spaces& sp) {
    return build_f_alpha(alpha, sp).compose_with(build_F_sigma(sigma, sp));
}

namespace {

// W1hat + i*W2hat and L_sigma = zeta_1 (+ zeta_sigma) over the source reals.
struct FoldedCoords {
    SparsePoly W1, W2, L;
};

FoldedCoords folded(const ComplexCoordSpace& src, int sigma, int k) {
    FoldedCoords fc{realified_coord(src, "w_1"), realified_coord(src, "w_2"),
                    realified_coord(src, "zeta_1")};
    if (sigma >= 2) {
        fc.W1 = fc.W1 + realified_coord(src, idx_name("w", 2 * sigma - 1));
        fc.W2 = fc.W2 + realified_coord(src, idx_name("w", 2 * sigma));
        fc.L = fc.L + realified_coord(src, idx_name("zeta", sigma));
    }
    (void)k;
    return fc;
}

}  // namespace

MSigmaResult build_M_alpha_sigma(const Rational& alpha, int sigma, const Spaces& sp) {
    const int k = sp.k;
    if (sigma < 1 || sigma > k - 1) throw Error("sigma out of range");
    const auto& src = sp.source;

    SparsePoly z = realified_coord(src, "z");
    SparsePoly zbar = conj_coord(src, "z");
    auto fc = folded(src, sigma, k);
    SparsePoly E =
        (fc.L - zbar * (z + fc.W1 + fc.W2 * GaussianRational::i())) * GaussianRational(2 * alpha) +
        realified_coord(src, idx_name("zeta", k)) - zbar * zbar;

    AlgebraicSet set;
    set.name = "M_" + to_string(alpha) + "^" + std::to_string(sigma);
    set.ambient = src;
    set.defs.push_back(E.real_part());
    set.defs.push_back(E.imag_part());
    for (int j = 1; j <= 2 * k - 2; ++j)
        set.defs.push_back(SparsePoly::var(src.reg, idx_name("v", j)));

    // Chart: z and real w-parameters free, zeta_1..zeta_{k-1} free, zeta_k solved.
    std::vector<std::string> names{"x", "y"};
    for (int j = 1; j <= 2 * k - 2; ++j) names.push_back(idx_name("t", j));
    for (int s = 1; s <= k - 1; ++s) {
        names.push_back(idx_name("xi", s));
        names.push_back(idx_name("eta", s));
    }
    auto reg = VarRegistry::make_real(std::move(names));

    SparsePoly px = SparsePoly::var(reg, "x"), py = SparsePoly::var(reg, "y");
    SparsePoly pz = px + py * GaussianRational::i();
    SparsePoly pzbar = px - py * GaussianRational::i();
    auto pzeta = [&](int s) {
        return SparsePoly::var(reg, idx_name("xi", s)) +
               SparsePoly::var(reg, idx_name("eta", s)) * GaussianRational::i();
    };
    auto pw = [&](int j) { return SparsePoly::var(reg, idx_name("t", j)); };

    SparsePoly pW1 = pw(1), pW2 = pw(2), pL = pzeta(1);
    if (sigma >= 2) {
        pW1 = pW1 + pw(2 * sigma - 1);
        pW2 = pW2 + pw(2 * sigma);
        pL = pL + pzeta(sigma);
    }

    ManifoldChart chart;
    chart.name = set.name + " chart";
    chart.ambient = src;
    chart.params = reg;
    chart.comps.push_back(pz);
    for (int j = 1; j <= 2 * k - 2; ++j) chart.comps.push_back(pw(j));
    for (int s = 1; s <= k - 1; ++s) chart.comps.push_back(pzeta(s));
    chart.comps.push_back(pzbar * pzbar -
                          (pL - pzbar * (pz + pW1 + pW2 * GaussianRational::i())) *
                              GaussianRational(2 * alpha));
    return {std::move(set), std::move(chart)};
}

AlgebraicSet build_X_alpha_sigma(const Rational& alpha, int sigma, const Spaces& sp) {
    const int k = sp.k;
    if (sigma < 1 || sigma > k - 1) throw Error("sigma out of range");
    if (alpha == 1 || alpha == -1) throw Error("pole at alpha = +-1");
    const auto& src = sp.source;

    SparsePoly z = realified_coord(src, "z");
    SparsePoly zbar = conj_coord(src, "z");
    auto fc = folded(src, sigma, k);

    SparsePoly eq1 = z + fc.W1 * GaussianRational(alpha / (alpha + 1)) -
                     fc.W2 * GaussianRational(Rational(0), alpha / (1 - alpha));
    SparsePoly eq2 = fc.L * GaussianRational(2 * alpha) +
                     realified_coord(src, idx_name("zeta", k)) + zbar * zbar;

    AlgebraicSet set;
    set.name = "X_" + to_string(alpha) + "^" + std::to_string(sigma);
    set.ambient = src;
    set.defs.push_back(eq1.real_part());
    set.defs.push_back(eq1.imag_part());
    set.defs.push_back(eq2.real_part());
    set.defs.push_back(eq2.imag_part());
    for (int j = 1; j <= 2 * k - 2; ++j)
        set.defs.push_back(SparsePoly::var(src.reg, idx_name("v", j)));
    return set;
}

AlgebraicSet build_Y(const Spaces& sp) {
    const auto& tgt = sp.target;
    AlgebraicSet set;
    set.name = "Y";
    set.ambient = tgt;
    set.defs.push_back(SparsePoly::var(tgt.reg, "x"));
    set.defs.push_back(SparsePoly::var(tgt.reg, "y"));
    for (int j = 1; j <= 2 * sp.k - 2; ++j)
        set.defs.push_back(SparsePoly::var(tgt.reg, idx_name("v", j)));
    set.defs.push_back(SparsePoly::var(tgt.reg, "rw"));
    set.defs.push_back(SparsePoly::var(tgt.reg, "iw"));
    return set;
}

SparsePoly build_g(const Spaces& sp) {
    const int k = sp.k;
    const auto& src = sp.source;
    SparsePoly zbar = conj_coord(src, "z");
    SparsePoly e = realified_coord(src, idx_name("zeta", k)) - zbar * zbar;
    SparsePoly g = e * e.conj_coeffs();
    for (int s = 2; s <= k - 1; ++s) {
        SparsePoly wpair = conj_coord(src, idx_name("w", 2 * s - 1)) +
                           conj_coord(src, idx_name("w", 2 * s)) * GaussianRational::i();
        SparsePoly es = realified_coord(src, idx_name("zeta", s)) - zbar * wpair;
        g = g + es * es.conj_coeffs();
    }
    return g;
}

std::vector<std::vector<GaussianRational>> canonical_span(
    std::vector<std::vector<GaussianRational>> vectors) {
    Mat<GaussianRational> m = std::move(vectors);
    rref(m);
    std::vector<std::vector<GaussianRational>> out;
    for (auto& row : m) {
        bool nonzero = false;
        for (const auto& x : row)
            if (!x.is_zero()) { nonzero = true; break; }
        if (nonzero) out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::vector<GaussianRational>> expected_jacobian_kernel(
    const Rational& alpha, int sigma, const Spaces& sp) {
    const int k = sp.k;
    if (sigma < 1 || sigma > k - 1) throw Error("sigma out of range");
    const int n = 3 * k - 1;
    std::vector<std::vector<GaussianRational>> basis;
    for (int s = 1; s <= k - 1; ++s) {
        std::vector<GaussianRational> v(n, GaussianRational(0));
        v[2 * k - 2 + s] = GaussianRational(1);
        Rational l = (s == 1) ? Rational(1) : Rational(0);
        if (sigma >= 2 && s == sigma) l += 1;
        v[n - 1] = GaussianRational(-2 * alpha * l);
        basis.push_back(std::move(v));
    }
    return canonical_span(std::move(basis));
}

ManifoldChart push_forward(const HoloPolyMap& f, const ManifoldChart& chart) {
    if (chart.ambient.reg != f.source().reg)
        throw Error("chart ambient does not match map source");
    std::vector<std::optional<SparsePoly>> subst;
    subst.reserve(chart.comps.size());
    for (const auto& comp : chart.comps) subst.emplace_back(comp);
    ManifoldChart out;
    out.name = chart.name + " mapped";
    out.ambient = f.target();
    out.params = chart.params;
    for (int i = 0; i < f.num_components(); ++i)
        out.comps.push_back(f.component(i).compose(subst));
    return out;
}

PsiTilde build_psi_tilde(const Spaces& sp) {
    SparsePoly g = build_g(sp);
    SparsePoly total = g;
    std::vector<PsiSummand> summands;
    for (const Rational& alpha : {Rational(1, 4), Rational(1, 3)}) {
        CoefficientSystem sys = CoefficientSystem::solve(alpha, default_c(alpha));
        SparsePoly rho = build_rho_alpha(sys, sp);
        for (int sigma = 1; sigma <= sp.k - 1; ++sigma) {
            HoloPolyMap map = build_f_alpha_sigma(alpha, sigma, sp);
            SparsePoly pulled = pullback(rho, map);
            total = total + pulled;
            summands.push_back(PsiSummand{alpha, sigma, std::move(map), rho, std::move(pulled)});
        }
    }
    return PsiTilde{std::move(g), std::move(summands), std::move(total)};
}

std::vector<GaussianRational> origin(const ComplexCoordSpace& space) {
    return std::vector<GaussianRational>(space.dim(), GaussianRational(0));
}

SparsePoly sheared_4d_zzbar(const SparsePoly& f, const Rational& alpha, const Spaces& sp) {
    if (f.registry() != sp.sheared) throw Error("polynomial not over the sheared registry");
    const auto& reg = sp.sheared;
    const int ix = reg->index_of("x"), iy = reg->index_of("y"), iu = reg->index_of("u");
    SparsePoly x = SparsePoly::var(reg, ix), y = SparsePoly::var(reg, iy);
    SparsePoly fu = f.partial(iu);
    return f.partial(ix).partial(ix) + f.partial(iy).partial(iy) -
           (x * fu.partial(ix) * GaussianRational(alpha + 1) +
            y * fu.partial(iy) * GaussianRational(alpha - 1) + fu * GaussianRational(alpha)) *
               GaussianRational(Rational(2)) +
           (x * x * GaussianRational((alpha + 1) * (alpha + 1)) +
            y * y * GaussianRational((alpha - 1) * (alpha - 1))) *
               fu.partial(iu);
}

SparsePoly sheared_4d_zwbar(const SparsePoly& f, const Rational& alpha, const Spaces& sp) {
    if (f.registry() != sp.sheared) throw Error("polynomial not over the sheared registry");
    const auto& reg = sp.sheared;
    const int ix = reg->index_of("x"), iy = reg->index_of("y");
    const int iu = reg->index_of("u"), iv = reg->index_of("v");
    SparsePoly x = SparsePoly::var(reg, ix), y = SparsePoly::var(reg, iy);
    SparsePoly fu = f.partial(iu);
    GaussianRational i = GaussianRational::i();
    return f.partial(ix).partial(iu) + f.partial(iy).partial(iv) +
           (f.partial(ix).partial(iv) - f.partial(iy).partial(iu)) * i -
           (x * GaussianRational(alpha + 1) - y * GaussianRational(alpha - 1) * i) *
               fu.partial(iu) -
           (y * GaussianRational(alpha - 1) + x * GaussianRational(alpha + 1) * i) *
               fu.partial(iv);
}

SparsePoly sheared_4d_wwbar(const SparsePoly& f, const Spaces& sp) {
    if (f.registry() != sp.sheared) throw Error("polynomial not over the sheared registry");
    const auto& reg = sp.sheared;
    const int iu = reg->index_of("u"), iv = reg->index_of("v");
    return f.partial(iu).partial(iu) + f.partial(iv).partial(iv);
}

SparsePoly paper_P_zzbar_expansion(const CoefficientSystem& sys, const Spaces& sp) {
    const auto& reg = sp.sheared;
    const Rational &a = sys.alpha, &c = sys.c, &A = sys.A, &Ap = sys.Aprime, &B = sys.B;
    SparsePoly x2 = SparsePoly::var(reg, "x", 2);
    SparsePoly y2 = SparsePoly::var(reg, "y", 2);
    SparsePoly u = SparsePoly::var(reg, "u");

    Rational cx2 = 6 * (a + 1) * (a + 1) - 3 * (4 * a + c) * (3 * a + 2) + 6 * A + B;
    Rational cy2 = 6 * (a - 1) * (a - 1) + (9 * a - 6) * c + B + 6 * Ap;
    Rational cx4 = 6 * (a + 1) * (a + 1) * (4 * a + c) - 4 * A * (5 * a + 4);
    Rational cy4 = 4 * Ap * (4 - 5 * a) - 6 * (a - 1) * (a - 1) * c;
    Rational cx2y2 = 24 * a * ((a - 1) * (a - 1) - c) - 20 * a * B;

    return (x2 * GaussianRational(cx2) + y2 * GaussianRational(cy2)) * u.pow(2) *
               GaussianRational(Rational(2)) +
           (x2 * x2 * GaussianRational(cx4) + y2 * y2 * GaussianRational(cy4) +
            x2 * y2 * GaussianRational(cx2y2)) *
               u +
           (x2 * GaussianRational((a + 1) * (a + 1)) +
            y2 * GaussianRational((a - 1) * (a - 1))) *
               (x2 * x2 * GaussianRational(A) + x2 * y2 * GaussianRational(B) +
                y2 * y2 * GaussianRational(Ap)) *
               GaussianRational(Rational(2));
}

}  // namespace pcvx
