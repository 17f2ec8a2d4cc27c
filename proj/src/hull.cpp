#include "pcvx/hull.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace pcvx {

std::vector<std::complex<double>> SampleSet::complex_point(int i) const {
    const auto& row = points.at(i);
    std::vector<std::complex<double>> z(ambient_dim);
    for (int c = 0; c < ambient_dim; ++c) z[c] = {row[2 * c], row[2 * c + 1]};
    return z;
}

std::string SampleSet::to_csv() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "# ambient_dim=" << ambient_dim << " provenance=" << provenance << "\n";
    for (const auto& row : points) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << row[i];
        }
        os << "\n";
    }
    return os.str();
}

SampleSet SampleSet::from_csv(const std::string& text) {
    SampleSet set;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto dpos = line.find("ambient_dim=");
            if (dpos != std::string::npos) set.ambient_dim = std::stoi(line.substr(dpos + 12));
            auto ppos = line.find("provenance=");
            if (ppos != std::string::npos) set.provenance = line.substr(ppos + 11);
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (set.ambient_dim && static_cast<int>(row.size()) != 2 * set.ambient_dim)
            throw Error("CSV row width does not match ambient dimension");
        set.points.push_back(std::move(row));
    }
    if (set.points.empty()) throw Error("empty sample set");
    return set;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    if (n <= 1) {
        v.push_back((lo + hi) / 2);
        return v;
    }
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

SampleSet sample_chart(const ManifoldChart& chart,
                       const std::vector<std::vector<double>>& per_param_values) {
    const int np = chart.params->size();
    if (static_cast<int>(per_param_values.size()) != np)
        throw Error("grid spec does not match parameter count");
    for (const auto& vals : per_param_values)
        if (vals.empty()) throw Error("empty grid axis");

    std::vector<SparsePoly> re, im;
    for (const auto& comp : chart.comps) {
        re.push_back(comp.real_part());
        im.push_back(comp.imag_part());
    }

    SampleSet set;
    set.ambient_dim = static_cast<int>(chart.comps.size());
    set.provenance = chart.name + " grid";
    std::vector<int> idx(np, 0);
    std::vector<double> p(np);
    while (true) {
        for (int i = 0; i < np; ++i) p[i] = per_param_values[i][idx[i]];
        std::vector<double> row;
        row.reserve(2 * set.ambient_dim);
        for (int c = 0; c < set.ambient_dim; ++c) {
            row.push_back(re[c].eval_double(p));
            row.push_back(im[c].eval_double(p));
        }
        set.points.push_back(std::move(row));
        int i = 0;
        for (; i < np; ++i) {
            if (++idx[i] < static_cast<int>(per_param_values[i].size())) break;
            idx[i] = 0;
        }
        if (i == np) break;
    }
    return set;
}

std::vector<std::vector<int>> monomial_basis(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == n) {
            int deg = 0;
            for (int e : cur) deg += e;
            if (deg) out.push_back(cur);
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            cur[pos] = e;
            rec(pos + 1, rem - e);
        }
        cur[pos] = 0;
    };
    rec(0, d);
    return out;
}

namespace {

std::complex<double> eval_monomial(const std::vector<std::complex<double>>& z,
                                   const std::vector<int>& expo) {
    std::complex<double> r{1.0, 0.0};
    for (size_t i = 0; i < expo.size(); ++i)
        for (int e = 0; e < expo[i]; ++e) r *= z[i];
    return r;
}

// Dense simplex for: maximize c^T x subject to Ax <= b, x >= 0.
// Standard two-phase tableau method with Bland-style anti-cycling.
struct LPSolver {
    static constexpr double eps = 1e-8, inf = std::numeric_limits<double>::infinity();
    int m, n;
    std::vector<int> N, B;
    std::vector<std::vector<double>> D;

    LPSolver(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
             const std::vector<double>& c)
        : m(static_cast<int>(b.size())),
          n(static_cast<int>(c.size())),
          N(n + 1),
          B(m),
          D(m + 2, std::vector<double>(n + 2)) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) D[i][j] = A[i][j];
        for (int i = 0; i < m; ++i) {
            B[i] = n + i;
            D[i][n] = -1;
            D[i][n + 1] = b[i];
        }
        for (int j = 0; j < n; ++j) {
            N[j] = j;
            D[m][j] = -c[j];
        }
        N[n] = -1;
        D[m + 1][n] = 1;
    }

    void pivot(int r, int s) {
        double* a = D[r].data();
        double inv = 1 / a[s];
        for (int i = 0; i < m + 2; ++i)
            if (i != r && std::abs(D[i][s]) > eps) {
                double* bi = D[i].data();
                double inv2 = bi[s] * inv;
                for (int j = 0; j < n + 2; ++j) bi[j] -= a[j] * inv2;
                bi[s] = a[s] * inv2;
            }
        for (int j = 0; j < n + 2; ++j)
            if (j != s) D[r][j] *= inv;
        for (int i = 0; i < m + 2; ++i)
            if (i != r) D[i][s] *= -inv;
        D[r][s] = inv;
        std::swap(B[r], N[s]);
    }

    bool simplex(int phase) {
        int x = m + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j < n + 1; ++j) {
                if (N[j] == -phase) continue;
                if (s == -1 || std::pair(D[x][j], N[j]) < std::pair(D[x][s], N[s])) s = j;
            }
            if (D[x][s] >= -eps) return true;
            int r = -1;
            for (int i = 0; i < m; ++i) {
                if (D[i][s] <= eps) continue;
                if (r == -1 || std::pair(D[i][n + 1] / D[i][s], B[i]) <
                                   std::pair(D[r][n + 1] / D[r][s], B[r]))
                    r = i;
            }
            if (r == -1) return false;
            pivot(r, s);
        }
    }

    double solve(std::vector<double>& x) {
        int r = 0;
        for (int i = 1; i < m; ++i)
            if (D[i][n + 1] < D[r][n + 1]) r = i;
        if (D[r][n + 1] < -eps) {
            pivot(r, n);
            if (!simplex(2) || D[m + 1][n + 1] < -eps) return -inf;
            for (int i = 0; i < m; ++i)
                if (B[i] == -1) {
                    int s = 0;
                    for (int j = 1; j < n + 1; ++j)
                        if (s == -1 || std::pair(D[i][j], N[j]) < std::pair(D[i][s], N[s]))
                            s = j;
                    pivot(i, s);
                }
        }
        bool ok = simplex(1);
        x.assign(n, 0);
        for (int i = 0; i < m; ++i)
            if (B[i] < n) x[B[i]] = D[i][n + 1];
        return ok ? D[m][n + 1] : inf;
    }
};

}  // namespace

std::complex<double> ExclusionCertificate::eval(
    const std::vector<std::complex<double>>& z) const {
    std::complex<double> v{1.0, 0.0};
    for (size_t b = 0; b < basis.size(); ++b)
        v += coeffs[b] * (eval_monomial(z, basis[b]) - eval_monomial(query, basis[b]));
    return v;
}

bool ExclusionCertificate::recheck(const SampleSet& X, double rel_tol) const {
    double sup = 0.0;
    for (size_t i = 0; i < X.points.size(); ++i)
        sup = std::max(sup, std::abs(eval(X.complex_point(static_cast<int>(i)))));
    double at_p = std::abs(eval(query));
    double new_margin = at_p - sup;
    if (new_margin <= 0) return false;
    return std::abs(new_margin - margin) <= rel_tol * std::max(1.0, std::abs(margin));
}

std::string ExclusionCertificate::to_text() const {
    std::ostringstream os;
    os << "exclusion certificate (one-sided)\n";
    os << "degree: " << degree << "\n";
    os << "mgon: " << mgon << "\n";
    os << "sup_on_samples: " << sup_on_samples << "\n";
    os << "margin: " << margin << "\n";
    os << "query:";
    for (const auto& q : query) os << " (" << q.real() << "," << q.imag() << ")";
    os << "\n";
    for (size_t b = 0; b < basis.size(); ++b) {
        if (std::abs(coeffs[b]) < 1e-12) continue;
        os << "coeff";
        for (int e : basis[b]) os << " " << e;
        os << " : (" << coeffs[b].real() << "," << coeffs[b].imag() << ")\n";
    }
    return os.str();
}

std::optional<ExclusionCertificate> hull_excludes(const SampleSet& X,
                                                  const std::vector<std::complex<double>>& p,
                                                  int degree, int mgon, int lp_subsample) {
    if (degree < 1) throw Error("degree must be at least 1");
    if (static_cast<int>(p.size()) != X.ambient_dim) throw Error("query dimension mismatch");
    auto basis = monomial_basis(X.ambient_dim, degree);
    if (basis.empty()) throw Error("empty monomial basis");
    const int nb = static_cast<int>(basis.size());

    // Subsample for the LP search; the certificate is rechecked on all of X.
    std::vector<int> sel;
    const int total_pts = static_cast<int>(X.points.size());
    int stride = std::max(1, (total_pts + lp_subsample - 1) / lp_subsample);
    for (int i = 0; i < total_pts; i += stride) sel.push_back(i);

    // Variables: [re+ re- im+ im-] per basis monomial, then t.
    const int nv = 4 * nb + 1;
    const int t_var = 4 * nb;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    A.reserve(sel.size() * mgon);

    std::vector<std::complex<double>> pval(nb);
    for (int j = 0; j < nb; ++j) pval[j] = eval_monomial(p, basis[j]);

    for (int i : sel) {
        auto z = X.complex_point(i);
        std::vector<std::complex<double>> psi(nb);
        for (int j = 0; j < nb; ++j) psi[j] = eval_monomial(z, basis[j]) - pval[j];
        for (int g = 0; g < mgon; ++g) {
            double theta = 2 * M_PI * g / mgon;
            std::complex<double> rot{std::cos(theta), -std::sin(theta)};
            std::vector<double> row(nv, 0.0);
            for (int j = 0; j < nb; ++j) {
                std::complex<double> w = rot * psi[j];
                row[4 * j + 0] = w.real();
                row[4 * j + 1] = -w.real();
                row[4 * j + 2] = -w.imag();
                row[4 * j + 3] = w.imag();
            }
            row[t_var] = -1.0;
            A.push_back(std::move(row));
            b.push_back(-std::cos(theta));
        }
    }
    std::vector<double> c(nv, 0.0);
    c[t_var] = -1.0;  // maximize -t

    LPSolver lp(A, b, c);
    std::vector<double> x;
    double val = lp.solve(x);
    if (!std::isfinite(val)) return std::nullopt;
    double t = x[t_var];
    if (t >= std::cos(M_PI / mgon) - 1e-7) return std::nullopt;

    ExclusionCertificate cert;
    cert.query = p;
    cert.degree = degree;
    cert.mgon = mgon;
    cert.basis = basis;
    cert.coeffs.resize(nb);
    for (int j = 0; j < nb; ++j)
        cert.coeffs[j] = {x[4 * j] - x[4 * j + 1], x[4 * j + 2] - x[4 * j + 3]};

    // Full recheck on every sample with true moduli.
    double sup = 0.0;
    for (int i = 0; i < total_pts; ++i)
        sup = std::max(sup, std::abs(cert.eval(X.complex_point(i))));
    cert.sup_on_samples = sup;
    cert.margin = std::abs(cert.eval(p)) - sup;
    if (cert.margin <= 1e-9 * std::max(1.0, sup)) return std::nullopt;
    return cert;
}

std::optional<ExclusionCertificate> hull_excludes_up_to(
    const SampleSet& X, const std::vector<std::complex<double>>& p, int max_degree, int mgon,
    int lp_subsample) {
    for (int d = 1; d <= max_degree; ++d)
        if (auto cert = hull_excludes(X, p, d, mgon, lp_subsample)) return cert;
    return std::nullopt;
}

std::vector<FiberDensityRow> fiber_density_experiment(const std::vector<int>& degrees,
                                                      int grid) {
    if (degrees.empty()) throw Error("degrees list is empty");
    // Disk grid: midpoints of a grid x grid partition of [-1,1]^2, |z| <= 1.
    std::vector<std::complex<double>> pts;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double x = -1.0 + (2.0 * i + 1.0) / grid;
            double y = -1.0 + (2.0 * j + 1.0) / grid;
            if (x * x + y * y <= 1.0) pts.emplace_back(x, y);
        }
    const int npts = static_cast<int>(pts.size());

    std::vector<FiberDensityRow> rows;
    for (int d : degrees) {
        // Basis z^a (zbar^2)^b with a + 2b <= d.
        std::vector<std::pair<int, int>> basis;
        for (int b = 0; 2 * b <= d; ++b)
            for (int a = 0; a + 2 * b <= d; ++a) basis.emplace_back(a, b);
        const int nb = static_cast<int>(basis.size());
        Eigen::MatrixXcd M(npts, nb);
        Eigen::VectorXcd rhs(npts);
        for (int i = 0; i < npts; ++i) {
            std::complex<double> z = pts[i], zb = std::conj(z);
            rhs(i) = zb;
            for (int jb = 0; jb < nb; ++jb)
                M(i, jb) = std::pow(z, basis[jb].first) * std::pow(zb * zb, basis[jb].second);
        }
        Eigen::VectorXcd sol = M.colPivHouseholderQr().solve(rhs);
        double err = (M * sol - rhs).squaredNorm() / npts;
        rows.push_back({d, nb, err});
    }
    return rows;
}

CertReport kallin_separation_demo(const std::vector<std::complex<double>>& center1,
                                  const std::vector<std::complex<double>>& center2,
                                  double radius1, double radius2, int samples_per_ball,
                                  unsigned seed) {
    auto start = std::chrono::steady_clock::now();
    CertReport rep;
    rep.claim_id = "kallin-separation";
    if (center1.size() != center2.size()) throw Error("center dimension mismatch");
    const int n = static_cast<int>(center1.size());

    double dist2 = 0;
    std::vector<std::complex<double>> d(n);
    for (int i = 0; i < n; ++i) {
        d[i] = center2[i] - center1[i];
        dist2 += std::norm(d[i]);
    }
    double dist = std::sqrt(dist2);
    if (dist <= radius1 + radius2) throw Error("balls intersect");
    rep.params["distance"] = std::to_string(dist);
    rep.params["radii"] = std::to_string(radius1) + ", " + std::to_string(radius2);
    rep.params["seed"] = std::to_string(seed);

    // Degree-1 separator Q(z) = sum conj(d_i)/|d|^2 (z_i - c1_i):
    // Q(c1) = 0, Q(c2) = 1, and Q maps B(c_j, r_j) into a disk of radius
    // r_j/|d| around Q(c_j).
    auto Q = [&](const std::vector<std::complex<double>>& z) {
        std::complex<double> v{0.0, 0.0};
        for (int i = 0; i < n; ++i) v += std::conj(d[i]) / dist2 * (z[i] - center1[i]);
        return v;
    };

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sample_ball = [&](const std::vector<std::complex<double>>& c, double r) {
        SampleSet set;
        set.ambient_dim = n;
        set.provenance = "ball samples";
        for (int s = 0; s < samples_per_ball; ++s) {
            std::vector<double> dir(2 * n);
            double norm2 = 0;
            for (auto& v : dir) {
                v = gauss(rng);
                norm2 += v * v;
            }
            double rho = r * std::pow(unif(rng), 1.0 / (2 * n)) / std::sqrt(norm2);
            std::vector<double> row(2 * n);
            for (int i = 0; i < n; ++i) {
                row[2 * i] = c[i].real() + rho * dir[2 * i];
                row[2 * i + 1] = c[i].imag() + rho * dir[2 * i + 1];
            }
            set.points.push_back(std::move(row));
        }
        return set;
    };

    SampleSet ball1 = sample_ball(center1, radius1);
    SampleSet ball2 = sample_ball(center2, radius2);

    double sup1 = 0, sup2 = 0;
    for (int i = 0; i < samples_per_ball; ++i) {
        sup1 = std::max(sup1, std::abs(Q(ball1.complex_point(i))));
        sup2 = std::max(sup2, std::abs(Q(ball2.complex_point(i)) - std::complex<double>(1, 0)));
    }
    double disk_r = std::max(radius1, radius2) / dist;
    bool disks_disjoint = 2 * disk_r < 1.0 && sup1 <= disk_r + 1e-9 && sup2 <= disk_r + 1e-9;
    rep.notes.push_back("image disks: D_0(" + std::to_string(disk_r) + "), D_1(" +
                        std::to_string(disk_r) + "), sampled sups " + std::to_string(sup1) +
                        ", " + std::to_string(sup2));

    // Midpoint exclusion over the union of the ball samples. Degree 1 cannot
    // separate the midpoint of two equal balls, so the degree escalates.
    SampleSet uni;
    uni.ambient_dim = n;
    uni.provenance = "union of ball samples";
    uni.points = ball1.points;
    uni.points.insert(uni.points.end(), ball2.points.begin(), ball2.points.end());
    std::vector<std::complex<double>> mid(n);
    for (int i = 0; i < n; ++i) mid[i] = (center1[i] + center2[i]) / 2.0;
    auto cert = hull_excludes_up_to(uni, mid, 4);
    if (cert)
        rep.notes.push_back("midpoint excluded at degree " + std::to_string(cert->degree) +
                            ", margin " + std::to_string(cert->margin));
    rep.samples_checked = 2 * samples_per_ball;
    rep.verdict = (disks_disjoint && cert) ? Verdict::VerifiedOnSamples : Verdict::Failed;
    if (!rep.passed()) rep.witness = "separation demonstration failed";
    rep.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace pcvx
