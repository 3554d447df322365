#include "spinmirror/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spinmirror/error.hpp"

namespace spinmirror {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_site(const ChainSpec& spec, int site, const char* which) {
  if (site < 1 || site > spec.n)
    throw Error(Errc::InvalidSite, std::string(which) + " site " + std::to_string(site) +
                                       " out of range 1.." + std::to_string(spec.n));
}

// spectral weights w_k = v_k[target] * v_k[source]
std::vector<double> transfer_weights(const SpectralData& sd, int source, int target) {
  std::vector<double> w(sd.eigenvalues.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = sd.eigenvectors[k][static_cast<std::size_t>(target - 1)] *
           sd.eigenvectors[k][static_cast<std::size_t>(source - 1)];
  return w;
}

Complex amplitude_at(const std::vector<double>& eigs, const std::vector<double>& w, double e0,
                     double t) {
  Complex f(0.0, 0.0);
  for (std::size_t k = 0; k < eigs.size(); ++k) {
    double phase = (e0 - eigs[k]) * t;
    f += w[k] * Complex(std::cos(phase), std::sin(phase));
  }
  return f;
}

double abs_amplitude_at(const std::vector<double>& eigs, const std::vector<double>& w, double t) {
  return std::abs(amplitude_at(eigs, w, 0.0, t));
}

double spectrum_spread(const std::vector<double>& eigs) {
  auto [lo, hi] = std::minmax_element(eigs.begin(), eigs.end());
  return *hi - *lo;
}

int default_points(double t_max, double spread) {
  double cycles = t_max * spread / kPi;
  double want = 16.0 * std::ceil(cycles);
  if (want > 4e7) throw Error(Errc::InvalidArgs, "scan grid would exceed 4e7 points");
  return std::max(2048, static_cast<int>(want));
}

}  // namespace

Complex transition_amplitude(const ChainSpec& spec, int source, int target, double t) {
  check_site(spec, source, "source");
  check_site(spec, target, "target");
  OneExcHamiltonian h = one_excitation(spec, Normalization::Physical);
  SpectralData sd = eigensystem(h);
  std::vector<double> w = transfer_weights(sd, source, target);
  return amplitude_at(sd.eigenvalues, w, h.vacuum_energy, t);
}

double haar_average_fidelity(Complex f, bool phase_compensated) {
  double a = std::abs(f);
  if (a > 1.0 + 1e-9)
    throw Error(Errc::InvalidAmplitude, "|f| = " + std::to_string(a) + " exceeds 1");
  a = std::min(a, 1.0);
  double cosg = phase_compensated ? 1.0 : (a == 0.0 ? 1.0 : std::cos(std::arg(f)));
  return 0.5 + a * cosg / 3.0 + a * a / 6.0;
}

AmplitudePeak amplitude_peak(const std::vector<double>& eigs, const std::vector<double>& w,
                             double t_max, int points) {
  if (points < 2) throw Error(Errc::InvalidArgs, "peak scan needs points >= 2");
  const double dt = t_max / (points - 1);
  AmplitudePeak best;
  for (int i = 0; i < points; ++i) {
    double t = i * dt;
    double a = abs_amplitude_at(eigs, w, t);
    if (a > best.abs_f) {
      best.abs_f = a;
      best.t = t;
    }
  }
  // golden-section refinement inside the bracketing cells
  double lo = std::max(0.0, best.t - dt);
  double hi = std::min(t_max, best.t + dt);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = abs_amplitude_at(eigs, w, c);
  double fd = abs_amplitude_at(eigs, w, d);
  while (hi - lo > 1e-10) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = abs_amplitude_at(eigs, w, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = abs_amplitude_at(eigs, w, d);
    }
  }
  double tm = 0.5 * (lo + hi);
  double fm = abs_amplitude_at(eigs, w, tm);
  if (fm > best.abs_f) {
    best.abs_f = fm;
    best.t = tm;
  }
  return best;
}

TransferReport fidelity_scan(const ChainSpec& spec, int source, int target, double t_max,
                             int points, bool refine, bool phase_compensated) {
  check_site(spec, source, "source");
  check_site(spec, target, "target");
  if (!(t_max > 0)) throw Error(Errc::InvalidArgs, "t_max must be positive");

  OneExcHamiltonian h = one_excitation(spec, Normalization::Physical);
  SpectralData sd = eigensystem(h);
  std::vector<double> w = transfer_weights(sd, source, target);
  const double spread = spectrum_spread(sd.eigenvalues);

  if (points == 0)
    points = default_points(t_max, spread);
  else if (points < 2)
    throw Error(Errc::InvalidArgs, "scan needs points >= 2");

  TransferReport rep;
  rep.times.reserve(points);
  rep.amplitude.reserve(points);
  rep.abs_f.reserve(points);
  rep.fidelity.reserve(points);

  const double dt = t_max / (points - 1);
  int best_i = 0;
  for (int i = 0; i < points; ++i) {
    double t = i * dt;
    Complex f = amplitude_at(sd.eigenvalues, w, h.vacuum_energy, t);
    double fid = haar_average_fidelity(f, phase_compensated);
    rep.times.push_back(t);
    rep.amplitude.push_back(f);
    rep.abs_f.push_back(std::abs(f));
    rep.fidelity.push_back(fid);
    if (fid > rep.fidelity[best_i]) best_i = i;
  }
  rep.peak_time = rep.times[best_i];
  rep.peak_fidelity = rep.fidelity[best_i];
  rep.peak_abs_f = rep.abs_f[best_i];

  if (refine) {
    // fidelity is monotone in |f| only in compensated mode; refine the
    // actual objective
    double lo = std::max(0.0, rep.peak_time - dt);
    double hi = std::min(t_max, rep.peak_time + dt);
    auto fid_at = [&](double t) {
      return haar_average_fidelity(amplitude_at(sd.eigenvalues, w, h.vacuum_energy, t),
                                   phase_compensated);
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = fid_at(c);
    double fd = fid_at(d);
    while (hi - lo > 1e-10) {
      if (fc > fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = fid_at(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = fid_at(d);
      }
    }
    double tm = 0.5 * (lo + hi);
    double fm = fid_at(tm);
    if (fm > rep.peak_fidelity) {
      rep.peak_time = tm;
      rep.peak_fidelity = fm;
      rep.peak_abs_f = std::abs(amplitude_at(sd.eigenvalues, w, h.vacuum_energy, tm));
    }
  }
  return rep;
}

std::optional<double> mirror_time(const ChainSpec& spec) {
  if (!spec.is_symmetric())
    throw Error(Errc::NotMirrorSymmetric, "mirror time is defined for symmetric chains");
  OneExcHamiltonian h = one_excitation(spec, Normalization::Physical);
  SpectralData sd = eigensystem(h);
  CommensurabilityResult com = commensurability(sd.eigenvalues);
  if (!com.commensurate) return std::nullopt;
  const double t_star = com.period / 2.0;
  std::vector<double> w = transfer_weights(sd, 1, spec.n);
  double a = std::abs(amplitude_at(sd.eigenvalues, w, 0.0, t_star));
  if (a >= 1.0 - 1e-8) return t_star;
  return std::nullopt;
}

void write_transfer_csv(const TransferReport& rep, std::ostream& out) {
  out << "t,re_f,im_f,abs_f,avg_fidelity\n";
  char buf[160];
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", rep.times[i],
                  rep.amplitude[i].real(), rep.amplitude[i].imag(), rep.abs_f[i],
                  rep.fidelity[i]);
    out << buf;
  }
}

}  // namespace spinmirror
