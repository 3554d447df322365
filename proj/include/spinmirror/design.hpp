#ifndef SPINMIRROR_DESIGN_HPP
#define SPINMIRROR_DESIGN_HPP

#include <cstdint>
#include <vector>

#include "spinmirror/chain.hpp"
#include "spinmirror/rational.hpp"

namespace spinmirror {

// Local fields B_j = -(J_{j-1} + J_j) + offset (J_0 = J_n = 0). They cancel
// the coupling-induced diagonal of the one-excitation block relative to the
// vacuum, leaving a constant -2*offset: combined with couplings
// ~ sqrt(i(n-i)) this realizes perfect transfer on an isotropic chain.
std::vector<Rat> field_cancellation(const std::vector<Rat>& couplings, const Rat& offset);
std::vector<double> field_cancellation(const std::vector<double>& couplings, double offset);

struct DesignResult {
  ChainSpec spec;                // best chain found
  double best_abs_f = 0.0;      // peak |f| for 1 -> n within the horizon
  double best_time = 0.0;       // time of that peak
  long long evaluations = 0;    // objective calls actually spent
  std::uint64_t seed = 0;
};

// Multi-start Nelder-Mead over symmetric log-couplings (and, if allowed,
// symmetric fields in units of the coupling geometric mean), maximizing the
// peak transfer amplitude on a period-aware horizon. Deterministic per
// (n, allow_fields, budget, seed); restart 0 starts from the engineered
// couplings (plus cancelling fields when fields are allowed).
DesignResult optimize_mirror_fidelity(int n, bool allow_fields, int budget, std::uint64_t seed);

}  // namespace spinmirror

#endif
