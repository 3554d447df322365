#ifndef SPINMIRROR_SPECTRAL_HPP
#define SPINMIRROR_SPECTRAL_HPP

#include <cstdint>
#include <vector>

#include "spinmirror/chain.hpp"

namespace spinmirror {

// Full eigen-decomposition of a symmetric tridiagonal operator.
// eigenvalues ascending; eigenvectors[k] is the unit column for
// eigenvalues[k], sign-fixed so the largest-magnitude component is positive.
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;

  int n() const { return static_cast<int>(eigenvalues.size()); }
};

// Eigenvalues-only and full decompositions. Bisection on Sturm sign counts
// for the values, inverse iteration for the vectors, with in-cluster
// re-orthogonalization for (near-)degenerate groups.
std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag);
SpectralData tridiag_eigensystem(const std::vector<double>& diag,
                                 const std::vector<double>& offdiag);
SpectralData eigensystem(const OneExcHamiltonian& h);

struct CommensurabilityResult {
  bool commensurate = false;
  double base = 0.0;    // frequency omega; E_k = E_1 + m_k * omega
  double period = 0.0;  // 2*pi/omega
  std::vector<std::int64_t> integers;
};

inline constexpr double kCommensurabilityTol = 1e-9;
inline constexpr std::int64_t kCommensurabilityQmax = 1000000;

// Detects whether all pairwise gaps share a common frequency. Integer gap
// ratios are recognized through continued fractions: a ratio counts as
// rational only when its expansion terminates (huge partial quotient), not
// merely because some large-denominator convergent lands within tol.
CommensurabilityResult commensurability(const std::vector<double>& eigenvalues,
                                        double tol = kCommensurabilityTol,
                                        std::int64_t q_max = kCommensurabilityQmax);

struct OverlapReport {
  bool all_nonzero = false;
  double min_abs = 0.0;
  std::vector<double> first_components;
};

// Checks the transfer prerequisite: the excitation localized at site 1
// overlaps every eigenstate. Exact for chains with nonzero couplings; the
// tolerance only guards floating-point detection.
OverlapReport endpoint_overlap_check(const SpectralData& sd, double tol = 1e-10);

}  // namespace spinmirror

#endif
