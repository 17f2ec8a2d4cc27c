#include "pcvx/linalg.hpp"

namespace pcvx {

Rational hermitian_minor(const Mat<GaussianRational>& h, const std::vector<int>& idx) {
    GaussianRational d = principal_minor(h, idx);
    if (d.im != 0) throw Error("non-Hermitian matrix fed to hermitian_minor");
    return d.re;
}

bool is_positive_definite(const Mat<GaussianRational>& h, Rational* min_minor) {
    const int n = static_cast<int>(h.size());
    bool ok = true;
    Rational least;
    bool have = false;
    std::vector<int> idx;
    for (int m = 1; m <= n; ++m) {
        idx.push_back(m - 1);
        Rational d = hermitian_minor(h, idx);
        if (!have || d < least) { least = d; have = true; }
        if (d <= 0) { ok = false; break; }
    }
    if (min_minor && have) *min_minor = least;
    return ok;
}

bool is_positive_semidefinite(const Mat<GaussianRational>& h, Rational* min_minor) {
    const int n = static_cast<int>(h.size());
    bool ok = true;
    Rational least;
    bool have = false;
    // Every nonempty subset of indices.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        Rational d = hermitian_minor(h, idx);
        if (!have || d < least) { least = d; have = true; }
        if (d < 0) { ok = false; break; }
    }
    if (min_minor && have) *min_minor = least;
    return ok;
}

}  // namespace pcvx
