#pragma once

#include "pcvx/linalg.hpp"
#include "pcvx/poly.hpp"

#include <string>
#include <vector>

namespace pcvx {

/// An n-dimensional complex coordinate space backed by a registry of 2n real
/// variables (one (re, im) pair per complex coordinate).
struct ComplexCoordSpace {
    RegistryPtr reg;

    int dim() const { return reg->num_complex(); }
    const ComplexCoord& coord(int i) const { return reg->coord(i); }

    /// Point conversion: n complex values -> 2n real values.
    std::vector<Rational> realify_point(std::span<const GaussianRational> z) const;
};

ComplexCoordSpace make_space(std::vector<std::string> coord_names,
                             std::vector<std::pair<std::string, std::string>> pair_names);

/// Tuple of holomorphic polynomials between complex coordinate spaces.
/// Components live over a registry whose variables are the source complex
/// coordinates themselves, so holomorphy is structural: there is no way to
/// write a conjugated variable.
class HoloPolyMap {
  public:
    HoloPolyMap(ComplexCoordSpace source, ComplexCoordSpace target);

    const ComplexCoordSpace& source() const { return source_; }
    const ComplexCoordSpace& target() const { return target_; }
    const RegistryPtr& holo_registry() const { return holo_reg_; }

    void set_component(int i, SparsePoly p);
    const SparsePoly& component(int i) const { return comps_.at(i); }
    int num_components() const { return static_cast<int>(comps_.size()); }

    /// Variable of the holomorphic registry, for building components.
    SparsePoly z(int source_coord) const { return SparsePoly::var(holo_reg_, source_coord); }

    static HoloPolyMap identity(const ComplexCoordSpace& space);

    /// this ∘ inner (inner maps its source into this->source).
    HoloPolyMap compose_with(const HoloPolyMap& inner) const;

    /// Component i as a complex-valued polynomial in the source's real
    /// variables (substitutes coord -> x + i y).
    SparsePoly realified(int i) const;

    std::vector<GaussianRational> eval(std::span<const GaussianRational> z) const;

    /// m x n matrix of holomorphic partials dF_i/dz_j over the holo registry.
    Mat<SparsePoly> complex_jacobian() const;

    Mat<GaussianRational> jacobian_at(std::span<const GaussianRational> z) const;

    /// Exact kernel basis of the complex Jacobian at a point, in the
    /// canonical RREF-derived form.
    std::vector<std::vector<GaussianRational>> jacobian_kernel_at(
        std::span<const GaussianRational> z) const;

  private:
    ComplexCoordSpace source_, target_;
    RegistryPtr holo_reg_;
    std::vector<SparsePoly> comps_;
};

/// Square matrix of complex-coefficient polynomials with H = H* enforced at
/// construction, entry-wise as exact polynomial identities.
class HermitianPolyMatrix {
  public:
    HermitianPolyMatrix(ComplexCoordSpace space, Mat<SparsePoly> entries);

    const ComplexCoordSpace& space() const { return space_; }
    int dim() const { return static_cast<int>(entries_.size()); }
    const SparsePoly& entry(int i, int j) const { return entries_.at(i).at(j); }
    const Mat<SparsePoly>& entries() const { return entries_; }

    /// Hermitian numeric matrix at a real point of the space's registry.
    Mat<GaussianRational> eval_at(std::span<const Rational> point) const;

    std::string to_string() const;  // row-major, canonical entry format

  private:
    ComplexCoordSpace space_;
    Mat<SparsePoly> entries_;
};

/// Wirtinger derivative d/dz = (d/dx - i d/dy)/2 for the (x, y) pair of the
/// given complex coordinate of the polynomial's registry.
SparsePoly d_z(const SparsePoly& f, const ComplexCoord& coord);
SparsePoly d_zbar(const SparsePoly& f, const ComplexCoord& coord);

SparsePoly d_z(const SparsePoly& f, const ComplexCoordSpace& space, int coord_idx);
SparsePoly d_zbar(const SparsePoly& f, const ComplexCoordSpace& space, int coord_idx);

/// Complex Hessian (d^2 f / dz_i dzbar_j) of a real-valued polynomial.
HermitianPolyMatrix complex_hessian(const SparsePoly& f, const ComplexCoordSpace& space);

/// rho ∘ F as a polynomial over the source's real registry; rho lives over
/// the target's real registry.
SparsePoly pullback(const SparsePoly& rho, const HoloPolyMap& F);

/// Hess_C(rho ∘ F), computed by composing first and differentiating after.
HermitianPolyMatrix pullback_hessian(const SparsePoly& rho, const HoloPolyMap& F);

/// The chain-rule right-hand side J* (Hess_C rho ∘ F) J as a polynomial
/// matrix over the source's real registry. Used as the independent route in
/// identity checks against pullback_hessian.
Mat<SparsePoly> chain_rule_hessian(const SparsePoly& rho, const HoloPolyMap& F);

}  // namespace pcvx
