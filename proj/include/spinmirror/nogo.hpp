#ifndef SPINMIRROR_NOGO_HPP
#define SPINMIRROR_NOGO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spinmirror/parity.hpp"
#include "spinmirror/spectral.hpp"

namespace spinmirror {

enum class SpmcFailure { None, NotCommensurate, ParityMismatch };

// Outcome of the spectrum parity-matching test: after the affine rescale
// E -> a*E + b, all eigenvalues must be integers; the symmetric sector must
// carry one parity class and the antisymmetric sector the other. A global
// parity flip (b shifted by one) counts as satisfied.
struct SpmcVerdict {
  bool satisfied = false;
  double a = 0.0;
  double b = 0.0;
  std::vector<std::int64_t> even_integers;
  std::vector<std::int64_t> odd_integers;
  SpmcFailure failure_reason = SpmcFailure::None;
};

SpmcVerdict spmc_classify(const ParityBlocks& blocks, double tol = kCommensurabilityTol,
                          std::int64_t q_max = kCommensurabilityQmax);

const char* spmc_failure_name(SpmcFailure f);

// The impossibility argument for a symmetric isotropic chain without local
// fields, instantiated for a concrete length. Which contradiction applies
// is a pure function of n: the two-site chain is the exception, odd n and
// the two even residues mod 4 each get their own parity bookkeeping.
enum class CertBranch { ExceptionN2, OddN, Mod4Plus2, Mod4Zero };

struct Certificate {
  int n = 0;
  CertBranch branch = CertBranch::ExceptionN2;
  std::string trace_claim;
  std::vector<std::string> determinant_claims;
  std::string contradiction;
  // Mod4Zero only: n/2 = 2^p * (2q+1)
  int p = 0;
  std::int64_t q = 0;
};

Certificate certificate(int n);

const char* cert_branch_name(CertBranch b);
CertBranch cert_branch_from_name(const std::string& name);

// Empirical backing for the certificate premises: random rational symmetric
// coupling sets, exact identity checks, and SPMC classification per trial.
struct SuiteReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  int identities_exact = 0;       // trials where trace and ratio identities held exactly
  int spmc_satisfied = 0;         // trials classified as parity-matching
  int trace_sign_positive = 0;    // trials with Tr(H_e) - Tr(H_o) > 0
  bool all_identities_exact = false;
};

SuiteReport randomized_identity_suite(int n, int trials, std::uint64_t seed);

}  // namespace spinmirror

#endif
