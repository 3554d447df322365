#include "spinmirror/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "spinmirror/error.hpp"
#include "spinmirror/rng.hpp"

namespace spinmirror {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Number of eigenvalues of T strictly below x, by the sign count of the
// LDL^T pivots (Sturm sequence).
int sturm_count(const std::vector<double>& d, const std::vector<double>& e2, double x) {
  int count = 0;
  double q = d[0] - x;
  // A zero pivot must be perturbed *and* counted with a consistent sign, or
  // the count is off by one exactly at that x and bisection can converge to
  // a non-eigenvalue (symmetric spectra put midpoints right on such points).
  if (q == 0.0) q = -std::numeric_limits<double>::min();
  if (q < 0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    q = d[i] - x - e2[i - 1] / q;
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0) ++count;
  }
  return count;
}

// Solve (T - lambda I) x = b with partial-pivot LU on the tridiagonal band.
// Returns false if the shifted matrix is numerically singular beyond rescue.
class ShiftedTridiagSolver {
public:
  ShiftedTridiagSolver(const std::vector<double>& diag, const std::vector<double>& off,
                       double shift) {
    n_ = diag.size();
    du1_.assign(n_, 0.0);
    du2_.assign(n_, 0.0);
    du3_.assign(n_, 0.0);
    piv_.assign(n_, false);
    mult_.reserve(n_);
    std::vector<double> a(n_), b(n_, 0.0), c(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) a[i] = diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n_; ++i) b[i] = off[i], c[i] = off[i];
    // b[i]: super-diagonal of row i, c[i]: sub-diagonal entry T(i+1, i).
    const double tiny = std::numeric_limits<double>::min() * 4.0;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(a[i]) >= std::abs(c[i])) {
        piv_[i] = false;
        if (std::abs(a[i]) < tiny) a[i] = (a[i] < 0 ? -tiny : tiny);
        double m = c[i] / a[i];
        du1_[i] = a[i];
        du2_[i] = b[i];
        a[i + 1] -= m * b[i];
        mult_.push_back(m);
      } else {
        piv_[i] = true;  // swap rows i and i+1
        double m = a[i] / c[i];
        du1_[i] = c[i];
        du2_[i] = a[i + 1];
        du3_[i] = (i + 2 < n_) ? b[i + 1] : 0.0;
        a[i + 1] = b[i] - m * a[i + 1];
        if (i + 2 < n_) {
          b[i + 1] = -m * b[i + 1];
        }
        mult_.push_back(m);
      }
    }
    if (std::abs(a[n_ - 1]) < tiny) a[n_ - 1] = (a[n_ - 1] < 0 ? -tiny : tiny);
    du1_[n_ - 1] = a[n_ - 1];
  }

  void solve(std::vector<double>& x) const {
    // forward elimination with recorded pivoting
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (piv_[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= mult_[i] * x[i];
    }
    // back substitution (upper triangular with 3 bands)
    for (std::size_t k = n_; k-- > 0;) {
      double s = x[k];
      if (k + 1 < n_) s -= du2_[k] * x[k + 1];
      if (k + 2 < n_) s -= du3_[k] * x[k + 2];
      x[k] = s / du1_[k];
    }
  }

private:
  std::size_t n_;
  std::vector<double> du1_, du2_, du3_, mult_;
  std::vector<bool> piv_;
};

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  if (v[arg] < 0)
    for (double& x : v) x = -x;
}

}  // namespace

std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (offdiag.size() + 1 != n)
    throw Error(Errc::InvalidSpec, "tridiagonal size mismatch");
  if (n == 1) return {diag[0]};

  std::vector<double> e2(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) e2[i] = offdiag[i] * offdiag[i];

  // Gershgorin enclosure
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  const double pad = 16 * std::numeric_limits<double>::epsilon() * scale;
  lo -= pad;
  hi += pad;
  const double tol = 4 * std::numeric_limits<double>::epsilon() * scale;

  std::vector<double> eigs(n);
  for (std::size_t k = 0; k < n; ++k) {
    double a = lo, b = hi;
    // invariant: count(a) <= k < count(b)
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
      double m = 0.5 * (a + b);
      if (sturm_count(diag, e2, m) > static_cast<int>(k))
        b = m;
      else
        a = m;
    }
    if ((b - a) > 64 * tol + 1e-280)
      throw Error(Errc::NumericalFailure, "bisection failed to isolate eigenvalue");
    eigs[k] = 0.5 * (a + b);
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

SpectralData tridiag_eigensystem(const std::vector<double>& diag,
                                 const std::vector<double>& offdiag) {
  SpectralData sd;
  sd.eigenvalues = tridiag_eigenvalues(diag, offdiag);
  const std::size_t n = diag.size();
  sd.eigenvectors.assign(n, std::vector<double>(n, 0.0));
  if (n == 0) return sd;
  if (n == 1) {
    sd.eigenvectors[0][0] = 1.0;
    return sd;
  }

  const double spread =
      std::max(sd.eigenvalues.back() - sd.eigenvalues.front(),
               std::numeric_limits<double>::min());
  const double scale = std::max(std::abs(sd.eigenvalues.back()), std::abs(sd.eigenvalues.front()));
  // Clusters: re-orthogonalize whenever the gap is small enough for inverse
  // iteration to mix directions noticeably.
  const double cluster_gap = std::max(1e-8 * spread, 1e3 * std::numeric_limits<double>::epsilon() * scale);

  std::size_t cluster_begin = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && sd.eigenvalues[k] - sd.eigenvalues[k - 1] > cluster_gap) cluster_begin = k;

    // Split exactly coincident shifts apart by a few ulps so LU stays sane.
    double shift = sd.eigenvalues[k];
    if (k > cluster_begin)
      shift += (k - cluster_begin) * 2.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);

    ShiftedTridiagSolver lu(diag, offdiag, shift);
    SplitMix64 rng(0x5eed0000u + static_cast<std::uint64_t>(k));
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform() - 0.5;
    double nv = norm2(v);
    for (auto& x : v) x /= nv;

    // Growth of ||(T-sI)^{-1} v|| ~ 1/|lambda - s|; once it reaches ~1/eps
    // relative to the spread the iterate is the eigenvector to roundoff.
    const double growth_goal = 0.1 / (std::numeric_limits<double>::epsilon() *
                                      std::max(spread, 1e-300));
    bool converged = false;
    for (int it = 0; it < 10; ++it) {
      lu.solve(v);
      auto restart = [&] {
        for (auto& x : v) x = rng.uniform() - 0.5;
        double nv2 = norm2(v);
        for (auto& x : v) x /= nv2;
      };
      // Max-scale before taking norms: a dead-on shift produces ~1/tiny
      // components whose squared sum overflows.
      double mx = 0.0;
      for (double x : v) mx = std::max(mx, std::abs(x));
      if (mx == 0.0 || !std::isfinite(mx)) {
        restart();
        continue;
      }
      for (auto& x : v) x /= mx;
      // orthogonalize against earlier members of the same cluster
      for (std::size_t j = cluster_begin; j < k; ++j) {
        double dot = std::inner_product(v.begin(), v.end(), sd.eigenvectors[j].begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * sd.eigenvectors[j][i];
      }
      double rest = norm2(v);
      if (rest == 0.0 || !std::isfinite(rest)) {
        // the start vector was (numerically) orthogonal to the target; retry
        restart();
        continue;
      }
      for (auto& x : v) x /= rest;
      const double growth = mx * rest;  // inf is fine: that is certain convergence
      if (growth >= growth_goal || it >= 4) {
        converged = true;
        break;
      }
    }
    if (!converged) throw Error(Errc::NumericalFailure, "inverse iteration failed to converge");
    fix_sign(v);
    sd.eigenvectors[k] = std::move(v);
  }

  // Safety sweep: adjacent vectors with modest gaps can retain small
  // cross-talk; one Gram-Schmidt pass keeps the basis orthonormal to ~1e-12.
  for (std::size_t k = 1; k < n; ++k) {
    if (sd.eigenvalues[k] - sd.eigenvalues[k - 1] < 1e-4 * spread) {
      auto& v = sd.eigenvectors[k];
      for (std::size_t j = k; j-- > 0;) {
        if (sd.eigenvalues[k] - sd.eigenvalues[j] >= 1e-4 * spread) break;
        double dot = std::inner_product(v.begin(), v.end(), sd.eigenvectors[j].begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * sd.eigenvectors[j][i];
      }
      double nv = norm2(v);
      if (nv == 0.0) throw Error(Errc::NumericalFailure, "degenerate cluster collapse");
      for (double& x : v) x /= nv;
      fix_sign(v);
    }
  }
  return sd;
}

SpectralData eigensystem(const OneExcHamiltonian& h) {
  return tridiag_eigensystem(h.diag, h.offdiag);
}

namespace {

// Recognize x as p/q by continued fractions. A rational observed through
// floating-point noise shows up as a terminating expansion: either the
// remainder vanishes or a partial quotient explodes. Structured irrationals
// (sqrt(2), the golden ratio) keep bounded quotients and are rejected even
// though some large-denominator convergent would sit within tol.
bool rationalize(double x, double tol, std::int64_t q_max, std::int64_t& p_out,
                 std::int64_t& q_out) {
  constexpr double kHugeQuotient = 1e7;
  double p_prev = 1, q_prev = 0;
  double p_cur, q_cur;
  double value = x;
  double a = std::floor(value);
  p_cur = a;
  q_cur = 1;
  double frac = value - a;
  for (int it = 0; it < 64; ++it) {
    double residual = std::abs(x - p_cur / q_cur);
    bool huge_tail = (frac == 0.0) || (1.0 / frac >= kHugeQuotient);
    if (huge_tail && residual <= tol * std::max(1.0, std::abs(x))) {
      if (std::abs(q_cur) > static_cast<double>(q_max)) return false;
      p_out = static_cast<std::int64_t>(std::llround(p_cur));
      q_out = static_cast<std::int64_t>(std::llround(q_cur));
      return true;
    }
    if (frac == 0.0) return false;
    value = 1.0 / frac;
    a = std::floor(value);
    frac = value - a;
    double p_next = a * p_cur + p_prev;
    double q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    if (q_cur > static_cast<double>(q_max)) return false;
  }
  return false;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

CommensurabilityResult commensurability(const std::vector<double>& eigenvalues, double tol,
                                        std::int64_t q_max) {
  std::vector<double> e = eigenvalues;
  std::sort(e.begin(), e.end());
  if (e.size() < 2) throw Error(Errc::DegenerateInput, "need at least 2 eigenvalues");

  const double spread = e.back() - e.front();
  if (spread <= tol * std::max(1.0, std::abs(e.back())))
    throw Error(Errc::DegenerateInput, "degenerate spectrum: all eigenvalues coincide");

  // base gap: first gap clearly above noise
  double base_gap = 0.0;
  for (std::size_t k = 1; k < e.size(); ++k) {
    double g = e[k] - e.front();
    if (g > tol * std::max(1.0, spread)) {
      base_gap = g;
      break;
    }
  }

  CommensurabilityResult res;
  // gap ratios r_k = (E_k - E_1)/base_gap as rationals p_k/q_k
  std::vector<std::int64_t> ps(e.size()), qs(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    double r = (e[k] - e.front()) / base_gap;
    if (!rationalize(r, tol, q_max, ps[k], qs[k])) return res;  // not commensurate
  }
  // common denominator
  std::int64_t q_lcm = 1;
  for (std::size_t k = 0; k < e.size(); ++k) {
    std::int64_t g = gcd64(q_lcm, qs[k]);
    double trial = static_cast<double>(q_lcm) / g * static_cast<double>(qs[k]);
    if (trial > static_cast<double>(q_max)) return res;
    q_lcm = q_lcm / g * qs[k];
  }
  std::vector<std::int64_t> m(e.size());
  std::int64_t g_all = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    m[k] = ps[k] * (q_lcm / qs[k]);
    g_all = gcd64(g_all, m[k]);
  }
  if (g_all > 1)
    for (auto& mk : m) mk /= g_all;

  // largest frequency fitting all gaps; least-squares polish
  double num = 0, den = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    num += static_cast<double>(m[k]) * (e[k] - e.front());
    den += static_cast<double>(m[k]) * static_cast<double>(m[k]);
  }
  if (den == 0) return res;
  double omega = num / den;
  if (!(omega > 0)) return res;

  // validation on the actual eigenvalues
  for (std::size_t k = 0; k < e.size(); ++k) {
    double pred = e.front() + static_cast<double>(m[k]) * omega;
    if (std::abs(e[k] - pred) > tol * std::max(1.0, spread)) return res;
  }

  res.commensurate = true;
  res.base = omega;
  res.period = 2.0 * kPi / omega;
  res.integers = std::move(m);
  return res;
}

OverlapReport endpoint_overlap_check(const SpectralData& sd, double tol) {
  OverlapReport rep;
  rep.first_components.reserve(sd.eigenvectors.size());
  rep.min_abs = std::numeric_limits<double>::infinity();
  for (const auto& v : sd.eigenvectors) {
    double c = v.empty() ? 0.0 : v.front();
    rep.first_components.push_back(c);
    rep.min_abs = std::min(rep.min_abs, std::abs(c));
  }
  rep.all_nonzero = !sd.eigenvectors.empty() && rep.min_abs > tol;
  return rep;
}

}  // namespace spinmirror
