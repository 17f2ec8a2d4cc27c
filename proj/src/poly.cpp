#include "pcvx/poly.hpp"

#include <sstream>

namespace pcvx {

std::string to_string(const GaussianRational& z) {
    if (z.im == 0) return to_string(z.re);
    std::ostringstream os;
    if (z.re == 0) {
        os << z.im << "*i";
    } else {
        os << "(" << z.re << (z.im > 0 ? "+" : "-")
           << boost::multiprecision::abs(z.im) << "*i)";
    }
    return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

SparsePoly SparsePoly::constant(RegistryPtr reg, GaussianRational c) {
    SparsePoly p(reg);
    if (!c.is_zero()) p.terms_.emplace(Monomial(reg->size(), 0), std::move(c));
    return p;
}

SparsePoly SparsePoly::var(RegistryPtr reg, int idx, int exponent) {
    if (idx < 0 || idx >= reg->size()) throw Error("variable index out of range");
    if (exponent < 0 || exponent > kDegreeCap) throw Error("degree overflow");
    SparsePoly p(reg);
    if (exponent == 0) return constant(reg, GaussianRational(1));
    Monomial m(reg->size(), 0);
    m[idx] = static_cast<unsigned char>(exponent);
    p.terms_.emplace(std::move(m), GaussianRational(1));
    return p;
}

SparsePoly SparsePoly::var(RegistryPtr reg, const std::string& name, int exponent) {
    int idx = reg->index_of(name);
    return var(std::move(reg), idx, exponent);
}

int SparsePoly::degree() const {
    if (terms_.empty()) return -1;
    return total_degree(terms_.begin()->first);  // map is sorted degree-descending
}

void SparsePoly::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r(reg_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    check_same_registry(o);
    SparsePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
    check_same_registry(o);
    SparsePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    check_same_registry(o);
    SparsePoly r(reg_);
    const int n = reg_->size();
    Monomial m(n);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            int d = 0;
            for (int i = 0; i < n; ++i) {
                int e = ma[i] + mb[i];
                d += e;
                m[i] = static_cast<unsigned char>(e);
            }
            if (d > kDegreeCap) throw Error("degree overflow");
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

SparsePoly SparsePoly::operator*(const GaussianRational& c) const {
    SparsePoly r(reg_);
    if (c.is_zero()) return r;
    for (const auto& [m, t] : terms_) r.terms_.emplace(m, t * c);
    return r;
}

SparsePoly SparsePoly::pow(int e) const {
    if (e < 0) throw Error("negative exponent");
    SparsePoly r = constant(reg_, GaussianRational(1));
    SparsePoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

SparsePoly SparsePoly::partial(int idx) const {
    if (idx < 0 || idx >= reg_->size()) throw Error("variable index out of range");
    SparsePoly r(reg_);
    for (const auto& [m, c] : terms_) {
        if (m[idx] == 0) continue;
        Monomial d = m;
        int e = d[idx]--;
        r.add_term(d, c * GaussianRational(e));
    }
    return r;
}

SparsePoly SparsePoly::conj_coeffs() const {
    SparsePoly r(reg_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.conj());
    return r;
}

bool SparsePoly::is_real_valued() const {
    for (const auto& [m, c] : terms_)
        if (c.im != 0) return false;
    return true;
}

SparsePoly SparsePoly::real_part() const {
    SparsePoly r(reg_);
    for (const auto& [m, c] : terms_)
        if (c.re != 0) r.terms_.emplace(m, GaussianRational(c.re));
    return r;
}

SparsePoly SparsePoly::imag_part() const {
    SparsePoly r(reg_);
    for (const auto& [m, c] : terms_)
        if (c.im != 0) r.terms_.emplace(m, GaussianRational(c.im));
    return r;
}

GaussianRational SparsePoly::eval(std::span<const GaussianRational> point) const {
    if (static_cast<int>(point.size()) != reg_->size()) throw Error("dimension mismatch");
    const int n = reg_->size();
    // Per-variable power cache keyed by exponent.
    std::vector<std::vector<GaussianRational>> powers(n);
    for (int i = 0; i < n; ++i) powers[i].push_back(GaussianRational(1));
    auto power = [&](int i, int e) -> const GaussianRational& {
        auto& cache = powers[i];
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * point[i]);
        return cache[e];
    };
    GaussianRational acc(0);
    for (const auto& [m, c] : terms_) {
        GaussianRational t = c;
        for (int i = 0; i < n; ++i)
            if (m[i]) t *= power(i, m[i]);
        acc += t;
    }
    return acc;
}

GaussianRational SparsePoly::eval_real(std::span<const Rational> point) const {
    std::vector<GaussianRational> p(point.begin(), point.end());
    return eval(p);
}

double SparsePoly::eval_double(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != reg_->size()) throw Error("dimension mismatch");
    double acc = 0;
    for (const auto& [m, c] : terms_) {
        if (c.im != 0) throw Error("eval_double requires real coefficients");
        double t = to_double(c.re);
        for (int i = 0; i < reg_->size(); ++i)
            for (int e = 0; e < m[i]; ++e) t *= point[i];
        acc += t;
    }
    return acc;
}

std::vector<std::optional<SparsePoly>> SparsePoly::identity_subst(const RegistryPtr& reg) {
    std::vector<std::optional<SparsePoly>> s;
    s.reserve(reg->size());
    for (int i = 0; i < reg->size(); ++i) s.emplace_back(SparsePoly::var(reg, i));
    return s;
}

SparsePoly SparsePoly::compose(const std::vector<std::optional<SparsePoly>>& subst) const {
    if (static_cast<int>(subst.size()) != reg_->size()) throw Error("substitution size mismatch");
    RegistryPtr target;
    for (const auto& s : subst) {
        if (!s) continue;
        if (!target) target = s->registry();
        else if (target != s->registry()) throw Error("substitutes over mixed registries");
    }
    if (!target) target = reg_;

    const int n = reg_->size();
    std::vector<std::vector<SparsePoly>> powers(n);  // powers[i][e] = subst[i]^e
    auto power = [&](int i, int e) -> const SparsePoly& {
        if (!subst[i]) throw Error("missing substitute for variable " + reg_->name(i));
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(SparsePoly::constant(target, GaussianRational(1)));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * *subst[i]);
        return cache[e];
    };
    SparsePoly acc = SparsePoly::zero(target);
    for (const auto& [m, c] : terms_) {
        SparsePoly t = SparsePoly::constant(target, c);
        for (int i = 0; i < n; ++i)
            if (m[i]) t = t * power(i, m[i]);
        acc = acc + t;
    }
    return acc;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << pcvx::to_string(c);
        for (int i = 0; i < reg_->size(); ++i) {
            if (!m[i]) continue;
            os << "*" << reg_->name(i);
            if (m[i] > 1) os << "^" << static_cast<int>(m[i]);
        }
    }
    return os.str();
}

std::shared_ptr<const VarRegistry> VarRegistry::make_real(std::vector<std::string> names) {
    auto reg = std::make_shared<VarRegistry>();
    for (auto& n : names) {
        if (reg->has(n)) throw Error("duplicate variable name: " + n);
        reg->names_.push_back(std::move(n));
        reg->roles_.push_back(VarRole::AbstractReal);
    }
    return reg;
}

std::shared_ptr<const VarRegistry> VarRegistry::make_complex(
    std::vector<std::string> coord_names,
    std::vector<std::pair<std::string, std::string>> pair_names) {
    if (coord_names.size() != pair_names.size()) throw Error("coordinate/pair count mismatch");
    auto reg = std::make_shared<VarRegistry>();
    for (size_t i = 0; i < coord_names.size(); ++i) {
        auto& [re_name, im_name] = pair_names[i];
        if (re_name == im_name || reg->has(re_name) || reg->has(im_name))
            throw Error("duplicate variable name");
        int re_idx = static_cast<int>(reg->names_.size());
        reg->names_.push_back(re_name);
        reg->roles_.push_back(VarRole::RealPart);
        reg->names_.push_back(im_name);
        reg->roles_.push_back(VarRole::ImagPart);
        reg->coords_.push_back({coord_names[i], re_idx, re_idx + 1});
    }
    return reg;
}

}  // namespace pcvx
