#pragma once

#include "pcvx/rational.hpp"
#include "pcvx/registry.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace pcvx {

/// Dense exponent vector, one entry per registry variable.
using Monomial = std::vector<unsigned char>;

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

/// Graded-lex order, highest degree first; canonical for serialization.
struct GradedLexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

/// Sparse multivariate polynomial with Gaussian-rational coefficients over a
/// shared variable registry. Immutable in spirit: all operations return new
/// polynomials; no stored coefficient is ever zero.
class SparsePoly {
  public:
    using TermMap = std::map<Monomial, GaussianRational, GradedLexDesc>;

    static constexpr int kDegreeCap = 64;

    explicit SparsePoly(RegistryPtr reg) : reg_(std::move(reg)) {}

    static SparsePoly zero(RegistryPtr reg) { return SparsePoly(std::move(reg)); }
    static SparsePoly constant(RegistryPtr reg, GaussianRational c);
    static SparsePoly var(RegistryPtr reg, int idx, int exponent = 1);
    static SparsePoly var(RegistryPtr reg, const std::string& name, int exponent = 1);

    const RegistryPtr& registry() const { return reg_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for the zero polynomial
    int num_terms() const { return static_cast<int>(terms_.size()); }

    /// Adds c * m, dropping the term if the sum cancels.
    void add_term(const Monomial& m, const GaussianRational& c);

    SparsePoly operator-() const;
    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator*(const SparsePoly& o) const;
    SparsePoly operator*(const GaussianRational& c) const;
    SparsePoly pow(int e) const;

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.reg_ == b.reg_ && a.terms_ == b.terms_;
    }

    /// Formal partial derivative with respect to variable idx.
    SparsePoly partial(int idx) const;

    /// Coefficient-wise complex conjugation. For polynomials in real
    /// variables this is the conjugate function.
    SparsePoly conj_coeffs() const;

    /// True when every coefficient is real, i.e. the polynomial is
    /// real-valued on real points.
    bool is_real_valued() const;

    /// Splits into (Re, Im) under the convention that all variables are real.
    SparsePoly real_part() const;
    SparsePoly imag_part() const;

    GaussianRational eval(std::span<const GaussianRational> point) const;
    GaussianRational eval_real(std::span<const Rational> point) const;
    double eval_double(std::span<const double> point) const;

    /// Exact composition: variable i of this polynomial is replaced by
    /// subst[i]. All substitutes must share one target registry; a variable
    /// that actually occurs must have a substitute.
    SparsePoly compose(const std::vector<std::optional<SparsePoly>>& subst) const;

    /// Identity substitution vector for in-registry rewrites.
    static std::vector<std::optional<SparsePoly>> identity_subst(const RegistryPtr& reg);

    /// Canonical text form: graded-lex sorted terms, rational coefficients.
    std::string to_string() const;

  private:
    void check_same_registry(const SparsePoly& o) const {
        if (reg_ != o.reg_) throw Error("registry mismatch");
    }
    RegistryPtr reg_;
    TermMap terms_;
};

inline SparsePoly operator*(const GaussianRational& c, const SparsePoly& p) { return p * c; }

}  // namespace pcvx
