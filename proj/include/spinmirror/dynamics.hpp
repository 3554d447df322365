#ifndef SPINMIRROR_DYNAMICS_HPP
#define SPINMIRROR_DYNAMICS_HPP

#include <complex>
#include <optional>
#include <ostream>
#include <vector>

#include "spinmirror/chain.hpp"
#include "spinmirror/spectral.hpp"

namespace spinmirror {

using Complex = std::complex<double>;

// Grid scan of the transfer amplitude and Haar-averaged fidelity.
// peak_time/peak_fidelity hold the refined maximum, which need not lie on
// the grid.
struct TransferReport {
  std::vector<double> times;
  std::vector<Complex> amplitude;
  std::vector<double> abs_f;
  std::vector<double> fidelity;
  double peak_time = 0.0;
  double peak_fidelity = 0.0;
  double peak_abs_f = 0.0;
};

// f(t) = e^{+i E0 t} <target| exp(-i H t) |source>, sites 1-based. The
// vacuum phase e^{+i E0 t} makes f the amplitude seen by the qubit encoding
// (|0...0> carries energy E0 too), so arg f feeds the fidelity formula.
Complex transition_amplitude(const ChainSpec& spec, int source, int target, double t);

// F = 1/2 + |f| cos(gamma)/3 + |f|^2/6, gamma = arg f. phase_compensated
// replaces cos(gamma) by 1 (a uniform field can rotate the phase away).
double haar_average_fidelity(Complex f, bool phase_compensated);

// points == 0 picks the default max(2048, 16*ceil(t_max*spread/pi)), enough
// to resolve the fastest phase oscillation; explicit values must be >= 2.
TransferReport fidelity_scan(const ChainSpec& spec, int source, int target, double t_max,
                             int points = 0, bool refine = true, bool phase_compensated = true);

// Peak of |sum_k w_k e^{-i E_k t}| over [0, t_max]: grid scan plus
// golden-section refinement of the best bracket (1e-10 resolution in t).
struct AmplitudePeak {
  double t = 0.0;
  double abs_f = 0.0;
};
AmplitudePeak amplitude_peak(const std::vector<double>& eigenvalues,
                             const std::vector<double>& weights, double t_max, int points);

// Mirror test for a symmetric chain: if the one-excitation spectrum is
// commensurate with period T and |f(T/2)| for 1 -> n reaches 1 - 1e-8, the
// half period is the mirror time; otherwise there is none.
std::optional<double> mirror_time(const ChainSpec& spec);

// CSV rows of the grid (not the refined peak): t,re_f,im_f,abs_f,avg_fidelity
void write_transfer_csv(const TransferReport& rep, std::ostream& out);

}  // namespace spinmirror

#endif
