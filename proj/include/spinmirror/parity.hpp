#ifndef SPINMIRROR_PARITY_HPP
#define SPINMIRROR_PARITY_HPP

#include <vector>

#include "spinmirror/chain.hpp"
#include "spinmirror/rational.hpp"

namespace spinmirror {

// One entry of the parity fold: value = a / sqrt(2) if sqrt2 else a,
// with a in {-1, 0, 1}. Keeping entries symbolic lets U*U^T = I be checked
// exactly instead of to roundoff.
struct FoldEntry {
  int a = 0;
  bool sqrt2 = false;

  double value() const;
};

// Orthogonal change of basis pairing sites i and n+1-i. Rows are ordered
// even (symmetric) sector first, then odd; for odd n the central site sits
// in the last even row with entry 1.
struct FoldMatrix {
  int n = 0;
  int even_dim = 0;
  int odd_dim = 0;
  std::vector<std::vector<FoldEntry>> entries;  // n rows x n columns

  double value(int r, int c) const { return entries[r][c].value(); }
};

FoldMatrix fold_matrix(int n);

// Exact check of U*U^T = I in the symbolic entry algebra.
bool fold_is_orthogonal(const FoldMatrix& u);

// Even/odd parity blocks of a mirror-symmetric one-excitation Hamiltonian.
// The numeric blocks carry signed off-diagonals (the odd-n even block ends
// in a sqrt(2)*h entry); the exact data stores squared off-diagonals so all
// quantities stay rational.
struct ParityBlocks {
  int n = 0;
  Normalization normalization = Normalization::Physical;
  std::vector<double> h_even_diag, h_even_off;  // dim ceil(n/2)
  std::vector<double> h_odd_diag, h_odd_off;    // dim floor(n/2)
  std::vector<Rat> exact_diag_even, exact_offsq_even;
  std::vector<Rat> exact_diag_odd, exact_offsq_odd;

  int even_dim() const { return static_cast<int>(h_even_diag.size()); }
  int odd_dim() const { return static_cast<int>(h_odd_diag.size()); }
};

// Folds h into parity blocks. The spec must be mirror symmetric
// (J_i = J_{n-i} and B_i = B_{n+1-i}), or not-mirror-symmetric is thrown.
ParityBlocks fold(const OneExcHamiltonian& h, const ChainSpec& spec);

// Coefficients (ascending in lambda) of det(H - lambda*I) for a tridiagonal
// H given by its diagonal and *squared* off-diagonals, via
// p_k = (d_k - lambda) p_{k-1} - e2_{k-1} p_{k-2}. Exact.
std::vector<Rat> char_poly_exact(const std::vector<Rat>& diag, const std::vector<Rat>& offsq);

// Trace and determinant identities of the parity blocks, evaluated exactly.
// ratio = pseudo_det_even / det_odd; branch_prediction is n for odd n and
// (n/2)/J_mid for even n. prefactor_* = det / (product of the couplings
// entering it); for valid input these come out as odd-numerator over a pure
// power of two, and pow2_* records that observed exponent.
struct IdentityReport {
  int n = 0;
  Rat trace_even, trace_odd, trace_diff;  // trace_diff = trace_even - trace_odd
  Rat middle_coupling;                    // J_{ceil((n-1)/2)} (1-based), = |trace_diff|
  bool trace_matches = false;
  Rat pseudo_det_even;  // product of nonzero eigenvalues of H_e
  Rat det_odd;          // det(H_o)
  Rat ratio;
  Rat branch_prediction;
  bool ratio_matches = false;
  Rat prefactor_even, prefactor_odd;
  int pow2_even = 0, pow2_odd = 0;
  std::vector<Rat> charpoly_even, charpoly_odd;  // ascending coefficients
};

IdentityReport identities(const ParityBlocks& blocks, const ChainSpec& spec);

}  // namespace spinmirror

#endif
