#include "spinmirror/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinmirror/dynamics.hpp"
#include "spinmirror/error.hpp"
#include "spinmirror/rng.hpp"
#include "spinmirror/spectral.hpp"

namespace spinmirror {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<Rat> field_cancellation(const std::vector<Rat>& couplings, const Rat& offset) {
  const int n = static_cast<int>(couplings.size()) + 1;
  if (couplings.empty()) throw Error(Errc::InvalidSpec, "need at least one coupling");
  for (std::size_t i = 0; i < couplings.size(); ++i)
    if (couplings[i] <= 0)
      throw Error(Errc::InvalidSpec,
                  "coupling " + std::to_string(i + 1) + " must be strictly positive");
  std::vector<Rat> b(n);
  for (int j = 0; j < n; ++j) {
    Rat sum = 0;
    if (j > 0) sum += couplings[j - 1];
    if (j < n - 1) sum += couplings[j];
    b[j] = offset - sum;
  }
  return b;
}

std::vector<double> field_cancellation(const std::vector<double>& couplings, double offset) {
  std::vector<Rat> cr;
  cr.reserve(couplings.size());
  for (double j : couplings) cr.push_back(rat_from_double(j));
  std::vector<Rat> br = field_cancellation(cr, rat_from_double(offset));
  std::vector<double> b;
  b.reserve(br.size());
  for (const Rat& x : br) b.push_back(to_double(x));
  return b;
}

namespace {

// Horizon rules: a commensurate spectrum is fully explored over one period;
// otherwise allow a few beats of the slowest gap.  Both are capped at
// kHorizonCap phase units (t * spread).  The cap is the contrast knob and is
// frozen from calibration runs at n=4, budget 5000: a zero-field symmetric
// chain can fake a mirror by near-dimerizing and tunneling end to end, with
// infidelity falling off as ~13/cap^2 (measured 3.2e-6 at cap 2000, 1.4e-3 at
// 100, 6.2e-3 at 50, identical across seeds).  cap = 50 keeps that floor a
// factor ~6 above 1e-3 while real mirror chains, whose period is
// 2*pi*(n-1) phase units, still fit whole for n <= 8 and to well past the
// mirror time beyond that.
constexpr double kHorizonBeats = 8.0;
constexpr double kHorizonCap = 50.0;
constexpr double kHorizonCommTol = 1e-7;
constexpr std::int64_t kHorizonCommQmax = 10000;

struct Objective {
  int n;
  bool allow_fields;
  int nf;  // free coupling count
  int hf;  // free field count (0 when fields are off)

  long long evaluations = 0;
  long long budget = 0;

  double best_abs_f = -1.0;
  double best_time = 0.0;
  std::vector<double> best_x;

  bool budget_left() const { return evaluations < budget; }

  void decode(const std::vector<double>& x, std::vector<double>& couplings,
              std::vector<double>& fields) const {
    const int bonds = n - 1;
    couplings.assign(bonds, 0.0);
    double logsum = 0.0;
    for (int i = 0; i < nf; ++i) {
      double j = std::exp(x[i]);
      couplings[i] = j;
      couplings[bonds - 1 - i] = j;
      logsum += x[i];
    }
    fields.assign(n, 0.0);
    if (allow_fields) {
      const double gm = std::exp(logsum / nf);
      for (int i = 0; i < hf; ++i) {
        double b = x[nf + i] * gm;
        fields[i] = b;
        fields[n - 1 - i] = b;
      }
    }
  }

  // negative peak |f|; Nelder-Mead minimizes
  double operator()(const std::vector<double>& x) {
    ++evaluations;
    try {
      return score(x);
    } catch (const Error&) {
      return 0.0;  // degenerate vertex: no transfer, worst possible score
    }
  }

  double score(const std::vector<double>& x) {
    std::vector<double> couplings, fields;
    decode(x, couplings, fields);
    ChainSpec spec = make_chain(n, 1.0, couplings, fields);
    OneExcHamiltonian h = one_excitation(spec, Normalization::Physical);
    SpectralData sd = tridiag_eigensystem(h.diag, h.offdiag);

    const double spread =
        std::max(sd.eigenvalues.back() - sd.eigenvalues.front(), 1e-12);
    double gap_min = spread;
    for (std::size_t k = 1; k < sd.eigenvalues.size(); ++k)
      gap_min = std::min(gap_min, sd.eigenvalues[k] - sd.eigenvalues[k - 1]);
    gap_min = std::max(gap_min, 1e-9 * spread);

    double t_h;
    CommensurabilityResult com;
    try {
      com = commensurability(sd.eigenvalues, kHorizonCommTol, kHorizonCommQmax);
    } catch (const Error&) {
      com.commensurate = false;  // collapsed spectrum: fall through to the cap
    }
    if (com.commensurate && com.period * spread <= kHorizonCap) {
      t_h = com.period;
    } else {
      t_h = std::min(kHorizonBeats * 2.0 * kPi / gap_min, kHorizonCap / spread);
      t_h = std::max(t_h, 8.0 * kPi / spread);
    }

    std::vector<double> w(sd.eigenvalues.size());
    for (std::size_t k = 0; k < w.size(); ++k)
      w[k] = sd.eigenvectors[k].front() * sd.eigenvectors[k].back();

    int points = std::max(1024, static_cast<int>(8.0 * std::ceil(t_h * spread / kPi)));
    AmplitudePeak peak = amplitude_peak(sd.eigenvalues, w, t_h, points);

    if (peak.abs_f > best_abs_f) {
      best_abs_f = peak.abs_f;
      best_time = peak.t;
      best_x = x;
    }
    return -peak.abs_f;
  }
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2), stopping on simplex collapse or budget exhaustion.
void nelder_mead(Objective& obj, std::vector<double> x0, double step, int max_iters) {
  const int d = static_cast<int>(x0.size());
  std::vector<std::vector<double>> xs;
  std::vector<double> fs;
  xs.push_back(x0);
  if (!obj.budget_left()) return;
  fs.push_back(obj(x0));
  for (int i = 0; i < d; ++i) {
    std::vector<double> v = x0;
    v[i] += step;
    if (!obj.budget_left()) return;
    xs.push_back(v);
    fs.push_back(obj(v));
  }

  std::vector<int> order(d + 1);
  for (int it = 0; it < max_iters; ++it) {
    for (int i = 0; i <= d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int lo = order[0], hi = order[d], second_hi = order[d - 1];

    if (fs[hi] - fs[lo] < 1e-12) break;

    std::vector<double> centroid(d, 0.0);
    for (int i = 0; i <= d; ++i)
      if (i != hi)
        for (int k = 0; k < d; ++k) centroid[k] += xs[i][k];
    for (int k = 0; k < d; ++k) centroid[k] /= d;

    double diam = 0.0;
    for (int k = 0; k < d; ++k) diam = std::max(diam, std::abs(xs[hi][k] - centroid[k]));
    if (diam < 1e-9) break;

    auto blend = [&](double coef) {
      std::vector<double> v(d);
      for (int k = 0; k < d; ++k) v[k] = centroid[k] + coef * (xs[hi][k] - centroid[k]);
      return v;
    };

    if (!obj.budget_left()) return;
    std::vector<double> xr = blend(-1.0);
    double fr = obj(xr);

    if (fr < fs[lo]) {
      if (!obj.budget_left()) return;
      std::vector<double> xe = blend(-2.0);
      double fe = obj(xe);
      if (fe < fr) {
        xs[hi] = std::move(xe);
        fs[hi] = fe;
      } else {
        xs[hi] = std::move(xr);
        fs[hi] = fr;
      }
    } else if (fr < fs[second_hi]) {
      xs[hi] = std::move(xr);
      fs[hi] = fr;
    } else {
      if (!obj.budget_left()) return;
      std::vector<double> xc = blend(fr < fs[hi] ? -0.5 : 0.5);
      double fc = obj(xc);
      if (fc < std::min(fr, fs[hi])) {
        xs[hi] = std::move(xc);
        fs[hi] = fc;
      } else {
        // shrink toward the best vertex
        for (int i = 0; i <= d; ++i) {
          if (i == lo) continue;
          for (int k = 0; k < d; ++k) xs[i][k] = xs[lo][k] + 0.5 * (xs[i][k] - xs[lo][k]);
          if (!obj.budget_left()) return;
          fs[i] = obj(xs[i]);
        }
      }
    }
  }
}

}  // namespace

DesignResult optimize_mirror_fidelity(int n, bool allow_fields, int budget, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::InvalidSpec, "optimizer needs n >= 2");
  if (budget < 1) throw Error(Errc::InvalidSpec, "optimizer needs budget >= 1");

  Objective obj;
  obj.n = n;
  obj.allow_fields = allow_fields;
  obj.nf = n / 2;  // ceil((n-1)/2)
  obj.hf = allow_fields ? (n + 1) / 2 : 0;
  obj.budget = budget;

  // analytic start: engineered couplings; cancelling fields when allowed
  const int dim = obj.nf + obj.hf;
  std::vector<double> x_analytic(dim, 0.0);
  {
    std::vector<double> couplings(n - 1);
    for (int i = 1; i < n; ++i)
      couplings[i - 1] = 0.25 * std::sqrt(static_cast<double>(i) * (n - i));
    double logsum = 0.0;
    for (int i = 0; i < obj.nf; ++i) {
      x_analytic[i] = std::log(couplings[i]);
      logsum += x_analytic[i];
    }
    if (allow_fields) {
      const double gm = std::exp(logsum / obj.nf);
      std::vector<double> b = field_cancellation(couplings, 0.0);
      for (int i = 0; i < obj.hf; ++i) x_analytic[obj.nf + i] = b[i] / gm;
    }
  }

  const int max_iters = 200 * dim;
  for (std::uint64_t restart = 0; obj.budget_left(); ++restart) {
    std::vector<double> x0 = x_analytic;
    if (restart > 0) {
      SplitMix64 rng(sub_seed(seed, restart));
      for (int k = 0; k < dim; ++k) x0[k] += (rng.uniform() - 0.5) * 3.0;
    }
    nelder_mead(obj, std::move(x0), 0.35, max_iters);
  }

  DesignResult res;
  res.seed = seed;
  res.evaluations = obj.evaluations;
  if (obj.best_x.empty()) throw Error(Errc::NumericalFailure, "optimizer made no evaluations");
  std::vector<double> couplings, fields;
  obj.decode(obj.best_x, couplings, fields);
  res.spec = make_chain(n, 1.0, couplings, fields);
  res.best_abs_f = obj.best_abs_f;
  res.best_time = obj.best_time;
  return res;
}

}  // namespace spinmirror
