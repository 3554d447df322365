#ifndef SPINMIRROR_CHAIN_HPP
#define SPINMIRROR_CHAIN_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "spinmirror/rational.hpp"

namespace spinmirror {

// A nearest-neighbor spin-1/2 chain:
//   H = sum_i J_i (XX + YY + delta*ZZ)_{i,i+1} + sum_i B_i Z_i
// delta = 1 is the isotropic (Heisenberg) chain, delta = 0 the xx chain.
// Couplings and fields are kept as exact rationals; doubles entering from
// JSON or code are converted exactly (dyadic), so exact identities apply to
// every spec.
struct ChainSpec {
  int n = 0;
  double delta = 1.0;
  std::vector<Rat> couplings;  // n-1 entries, all > 0
  std::vector<Rat> fields;     // n entries

  bool is_symmetric() const;
  bool zero_fields() const;

  std::vector<double> couplings_d() const;
  std::vector<double> fields_d() const;
};

enum class Normalization { Physical, Laplacian };

// Symmetric tridiagonal block of H on the single-flip subspace, stored as
// diagonal/off-diagonal plus the vacuum energy that fixes the reference
// phase of transfer amplitudes. The exact vectors mirror the numeric ones.
struct OneExcHamiltonian {
  int n = 0;
  Normalization normalization = Normalization::Physical;
  std::vector<double> diag;
  std::vector<double> offdiag;
  double vacuum_energy = 0.0;
  std::vector<Rat> diag_exact;
  std::vector<Rat> offdiag_exact;
  Rat vacuum_energy_exact;
};

ChainSpec make_chain(int n, double delta, std::vector<Rat> couplings, std::vector<Rat> fields);
ChainSpec make_chain(int n, double delta, const std::vector<double>& couplings,
                     const std::vector<double>& fields);

// Couplings proportional to sqrt(i(n-i)). With unit_spacing (the default)
// the one-excitation block has off-diagonals sqrt(i(n-i))/2 and spectrum
// -(n-1)/2, ..., (n-1)/2 with unit gaps; without it the couplings are the
// raw sqrt(i(n-i)) values.
ChainSpec make_xx_engineered(int n, bool unit_spacing = true);

// Uniform isotropic chain: all couplings j/2, all fields b.
ChainSpec make_uniform_bose(int n, double j, double b);

OneExcHamiltonian one_excitation(const ChainSpec& spec,
                                 Normalization norm = Normalization::Physical);

const char* normalization_name(Normalization n);
Normalization normalization_from_name(const std::string& name);

}  // namespace spinmirror

#endif
