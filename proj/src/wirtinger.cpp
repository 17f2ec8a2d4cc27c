#include "pcvx/wirtinger.hpp"

#include <sstream>

namespace pcvx {

std::vector<Rational> ComplexCoordSpace::realify_point(
    std::span<const GaussianRational> z) const {
    if (static_cast<int>(z.size()) != dim()) throw Error("dimension mismatch");
    std::vector<Rational> p(reg->size(), Rational(0));
    for (int i = 0; i < dim(); ++i) {
        p[coord(i).re_idx] = z[i].re;
        p[coord(i).im_idx] = z[i].im;
    }
    return p;
}

ComplexCoordSpace make_space(std::vector<std::string> coord_names,
                             std::vector<std::pair<std::string, std::string>> pair_names) {
    return {VarRegistry::make_complex(std::move(coord_names), std::move(pair_names))};
}

HoloPolyMap::HoloPolyMap(ComplexCoordSpace source, ComplexCoordSpace target)
    : source_(std::move(source)), target_(std::move(target)) {
    std::vector<std::string> names;
    for (int i = 0; i < source_.dim(); ++i) names.push_back(source_.coord(i).name);
    holo_reg_ = VarRegistry::make_real(std::move(names));
    comps_.assign(target_.dim(), SparsePoly::zero(holo_reg_));
}

void HoloPolyMap::set_component(int i, SparsePoly p) {
    if (p.registry() != holo_reg_) throw Error("component over wrong registry");
    comps_.at(i) = std::move(p);
}

HoloPolyMap HoloPolyMap::identity(const ComplexCoordSpace& space) {
    HoloPolyMap f(space, space);
    for (int i = 0; i < space.dim(); ++i) f.set_component(i, f.z(i));
    return f;
}

HoloPolyMap HoloPolyMap::compose_with(const HoloPolyMap& inner) const {
    if (inner.target_.reg != source_.reg) throw Error("space mismatch in composition");
    HoloPolyMap out(inner.source_, target_);
    std::vector<std::optional<SparsePoly>> subst;
    for (int i = 0; i < source_.dim(); ++i) {
        SparsePoly c = inner.comps_[i];
        // inner components already live over a registry with the same
        // variable set as out.holo_reg_; rebuild over out's registry.
        SparsePoly rebuilt(out.holo_reg_);
        for (const auto& [m, coef] : c.terms()) rebuilt.add_term(m, coef);
        subst.emplace_back(std::move(rebuilt));
    }
    for (int i = 0; i < target_.dim(); ++i) out.set_component(i, comps_[i].compose(subst));
    return out;
}

SparsePoly HoloPolyMap::realified(int i) const {
    std::vector<std::optional<SparsePoly>> subst;
    for (int c = 0; c < source_.dim(); ++c) {
        const auto& cc = source_.coord(c);
        subst.emplace_back(SparsePoly::var(source_.reg, cc.re_idx) +
                           SparsePoly::var(source_.reg, cc.im_idx) * GaussianRational::i());
    }
    return comps_.at(i).compose(subst);
}

std::vector<GaussianRational> HoloPolyMap::eval(std::span<const GaussianRational> z) const {
    std::vector<GaussianRational> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.eval(z));
    return out;
}

Mat<SparsePoly> HoloPolyMap::complex_jacobian() const {
    Mat<SparsePoly> j;
    for (const auto& c : comps_) {
        std::vector<SparsePoly> row;
        for (int v = 0; v < source_.dim(); ++v) row.push_back(c.partial(v));
        j.push_back(std::move(row));
    }
    return j;
}

Mat<GaussianRational> HoloPolyMap::jacobian_at(std::span<const GaussianRational> z) const {
    auto jp = complex_jacobian();
    Mat<GaussianRational> j = make_mat<GaussianRational>(num_components(), source_.dim());
    for (int i = 0; i < num_components(); ++i)
        for (int k = 0; k < source_.dim(); ++k) j[i][k] = jp[i][k].eval(z);
    return j;
}

std::vector<std::vector<GaussianRational>> HoloPolyMap::jacobian_kernel_at(
    std::span<const GaussianRational> z) const {
    return nullspace(jacobian_at(z));
}

HermitianPolyMatrix::HermitianPolyMatrix(ComplexCoordSpace space, Mat<SparsePoly> entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
    const int n = static_cast<int>(entries_.size());
    if (n != space_.dim()) throw Error("Hessian dimension mismatch");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(entries_[i].size()) != n) throw Error("non-square matrix");
        for (int j = 0; j <= i; ++j)
            if (!(entries_[i][j] == entries_[j][i].conj_coeffs()))
                throw Error("matrix is not Hermitian");
    }
}

Mat<GaussianRational> HermitianPolyMatrix::eval_at(std::span<const Rational> point) const {
    const int n = dim();
    std::vector<GaussianRational> p(point.begin(), point.end());
    Mat<GaussianRational> h = make_mat<GaussianRational>(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            h[i][j] = entries_[i][j].eval(p);
            if (j != i) h[j][i] = h[i][j].conj();
        }
    }
    return h;
}

std::string HermitianPolyMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            os << "H[" << i << "][" << j << "] = " << entries_[i][j].to_string() << "\n";
    return os.str();
}

SparsePoly d_z(const SparsePoly& f, const ComplexCoord& coord) {
    GaussianRational half(Rational(1, 2));
    GaussianRational minus_half_i(Rational(0), Rational(-1, 2));
    return f.partial(coord.re_idx) * half + f.partial(coord.im_idx) * minus_half_i;
}

SparsePoly d_zbar(const SparsePoly& f, const ComplexCoord& coord) {
    GaussianRational half(Rational(1, 2));
    GaussianRational half_i(Rational(0), Rational(1, 2));
    return f.partial(coord.re_idx) * half + f.partial(coord.im_idx) * half_i;
}

SparsePoly d_z(const SparsePoly& f, const ComplexCoordSpace& space, int coord_idx) {
    return d_z(f, space.coord(coord_idx));
}

SparsePoly d_zbar(const SparsePoly& f, const ComplexCoordSpace& space, int coord_idx) {
    return d_zbar(f, space.coord(coord_idx));
}

HermitianPolyMatrix complex_hessian(const SparsePoly& f, const ComplexCoordSpace& space) {
    if (f.registry() != space.reg) throw Error("polynomial not over the space's registry");
    if (!f.is_real_valued()) throw Error("complex_hessian requires a real-valued polynomial");
    const int n = space.dim();
    // First all dzbar_j, then dz_i of each.
    std::vector<SparsePoly> cols;
    for (int j = 0; j < n; ++j) cols.push_back(d_zbar(f, space, j));
    Mat<SparsePoly> h;
    for (int i = 0; i < n; ++i) {
        std::vector<SparsePoly> row;
        for (int j = 0; j < n; ++j) row.push_back(d_z(cols[j], space, i));
        h.push_back(std::move(row));
    }
    return HermitianPolyMatrix(space, std::move(h));
}

SparsePoly pullback(const SparsePoly& rho, const HoloPolyMap& F) {
    if (rho.registry() != F.target().reg) throw Error("space mismatch in pullback");
    std::vector<std::optional<SparsePoly>> subst(F.target().reg->size());
    for (int c = 0; c < F.target().dim(); ++c) {
        SparsePoly comp = F.realified(c);
        const auto& cc = F.target().coord(c);
        subst[cc.re_idx] = comp.real_part();
        subst[cc.im_idx] = comp.imag_part();
    }
    return rho.compose(subst);
}

HermitianPolyMatrix pullback_hessian(const SparsePoly& rho, const HoloPolyMap& F) {
    return complex_hessian(pullback(rho, F), F.source());
}

Mat<SparsePoly> chain_rule_hessian(const SparsePoly& rho, const HoloPolyMap& F) {
    const int m = F.target().dim();
    const int n = F.source().dim();
    HermitianPolyMatrix hrho = complex_hessian(rho, F.target());

    // (Hess rho) ∘ F, entry-wise, over the source's real registry.
    std::vector<std::optional<SparsePoly>> subst(F.target().reg->size());
    for (int c = 0; c < m; ++c) {
        SparsePoly comp = F.realified(c);
        const auto& cc = F.target().coord(c);
        subst[cc.re_idx] = comp.real_part();
        subst[cc.im_idx] = comp.imag_part();
    }
    Mat<SparsePoly> hF;
    for (int a = 0; a < m; ++a) {
        std::vector<SparsePoly> row;
        for (int b = 0; b < m; ++b) row.push_back(hrho.entry(a, b).compose(subst));
        hF.push_back(std::move(row));
    }

    // J realified over source reals; J* = conjugated transpose.
    Mat<SparsePoly> j;
    auto jp = F.complex_jacobian();
    std::vector<std::optional<SparsePoly>> real_subst;
    for (int c = 0; c < n; ++c) {
        const auto& cc = F.source().coord(c);
        real_subst.emplace_back(SparsePoly::var(F.source().reg, cc.re_idx) +
                                SparsePoly::var(F.source().reg, cc.im_idx) * GaussianRational::i());
    }
    for (int a = 0; a < m; ++a) {
        std::vector<SparsePoly> row;
        for (int c = 0; c < n; ++c) row.push_back(jp[a][c].compose(real_subst));
        j.push_back(std::move(row));
    }

    // result[i][k] = sum_{a,b} J[a][i] * hF[a][b] * conj(J[b][k])
    Mat<SparsePoly> out(n, std::vector<SparsePoly>(n, SparsePoly::zero(F.source().reg)));
    std::vector<std::vector<SparsePoly>> jbar;
    for (int b = 0; b < m; ++b) {
        std::vector<SparsePoly> row;
        for (int k = 0; k < n; ++k) row.push_back(j[b][k].conj_coeffs());
        jbar.push_back(std::move(row));
    }
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            if (hF[a][b].is_zero()) continue;
            for (int i = 0; i < n; ++i) {
                if (j[a][i].is_zero()) continue;
                SparsePoly left = j[a][i] * hF[a][b];
                for (int k = 0; k < n; ++k) {
                    if (jbar[b][k].is_zero()) continue;
                    out[i][k] = out[i][k] + left * jbar[b][k];
                }
            }
        }
    }
    return out;
}

}  // namespace pcvx
