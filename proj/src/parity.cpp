#include "spinmirror/parity.hpp"

#include <cmath>
#include <cstddef>

#include "spinmirror/error.hpp"

namespace spinmirror {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

double FoldEntry::value() const { return sqrt2 ? a * kInvSqrt2 : static_cast<double>(a); }

FoldMatrix fold_matrix(int n) {
  if (n < 1) throw Error(Errc::InvalidSpec, "fold needs n >= 1");
  FoldMatrix u;
  u.n = n;
  u.even_dim = (n + 1) / 2;
  u.odd_dim = n / 2;
  u.entries.assign(n, std::vector<FoldEntry>(n));
  // even (symmetric) sector rows first
  for (int r = 0; r < u.even_dim; ++r) {
    int partner = n - 1 - r;
    if (partner == r) {
      u.entries[r][r] = {1, false};  // central site, odd n
    } else {
      u.entries[r][r] = {1, true};
      u.entries[r][partner] = {1, true};
    }
  }
  for (int r = 0; r < u.odd_dim; ++r) {
    int partner = n - 1 - r;
    u.entries[u.even_dim + r][r] = {1, true};
    u.entries[u.even_dim + r][partner] = {-1, true};
  }
  return u;
}

bool fold_is_orthogonal(const FoldMatrix& u) {
  const int n = u.n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rat sum = 0;
      for (int k = 0; k < n; ++k) {
        const FoldEntry& a = u.entries[i][k];
        const FoldEntry& b = u.entries[j][k];
        if (a.a == 0 || b.a == 0) continue;
        if (a.sqrt2 != b.sqrt2) return false;  // irrational cross term
        sum += a.sqrt2 ? Rat(a.a * b.a, 2) : Rat(a.a * b.a);
      }
      if (sum != (i == j ? Rat(1) : Rat(0))) return false;
    }
  return true;
}

ParityBlocks fold(const OneExcHamiltonian& h, const ChainSpec& spec) {
  if (!spec.is_symmetric())
    throw Error(Errc::NotMirrorSymmetric, "fold requires a mirror-symmetric chain");
  const int n = h.n;
  const auto& d = h.diag_exact;
  const auto& e = h.offdiag_exact;

  ParityBlocks b;
  b.n = n;
  b.normalization = h.normalization;
  const int me = (n + 1) / 2;
  const int mo = n / 2;

  if (n % 2 == 0) {
    // paired sites throughout; the center bond moves onto the diagonal
    b.exact_diag_even.assign(d.begin(), d.begin() + me);
    b.exact_diag_odd.assign(d.begin(), d.begin() + me);
    b.exact_diag_even.back() += e[me - 1];
    b.exact_diag_odd.back() -= e[me - 1];
    for (int i = 0; i + 1 < me; ++i) {
      b.exact_offsq_even.push_back(e[i] * e[i]);
      b.exact_offsq_odd.push_back(e[i] * e[i]);
    }
    b.h_even_diag.assign(h.diag.begin(), h.diag.begin() + me);
    b.h_odd_diag.assign(h.diag.begin(), h.diag.begin() + me);
    b.h_even_diag.back() += h.offdiag[me - 1];
    b.h_odd_diag.back() -= h.offdiag[me - 1];
    b.h_even_off.assign(h.offdiag.begin(), h.offdiag.begin() + me - 1);
    b.h_odd_off = b.h_even_off;
  } else {
    // central site joins the even sector; its bond picks up sqrt(2)
    b.exact_diag_even.assign(d.begin(), d.begin() + me);
    b.exact_diag_odd.assign(d.begin(), d.begin() + mo);
    for (int i = 0; i + 1 < me; ++i) {
      Rat sq = e[i] * e[i];
      b.exact_offsq_even.push_back(i + 2 == me ? 2 * sq : sq);
      if (i + 2 <= mo) b.exact_offsq_odd.push_back(sq);
    }
    b.h_even_diag.assign(h.diag.begin(), h.diag.begin() + me);
    b.h_odd_diag.assign(h.diag.begin(), h.diag.begin() + mo);
    for (int i = 0; i + 1 < me; ++i)
      b.h_even_off.push_back(i + 2 == me ? std::sqrt(2.0) * h.offdiag[i] : h.offdiag[i]);
    for (int i = 0; i + 1 < mo; ++i) b.h_odd_off.push_back(h.offdiag[i]);
  }
  return b;
}

std::vector<Rat> char_poly_exact(const std::vector<Rat>& diag, const std::vector<Rat>& offsq) {
  if (diag.empty()) return {Rat(1)};
  if (offsq.size() + 1 != diag.size())
    throw Error(Errc::InvalidSpec, "char_poly_exact: off-diagonal length must be diag length - 1");

  std::vector<Rat> prev{Rat(1)};
  std::vector<Rat> cur{diag[0], Rat(-1)};
  for (std::size_t k = 1; k < diag.size(); ++k) {
    std::vector<Rat> next(cur.size() + 1, Rat(0));
    for (std::size_t j = 0; j < cur.size(); ++j) {
      next[j] += diag[k] * cur[j];
      next[j + 1] -= cur[j];
    }
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= offsq[k - 1] * prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

int pow2_in_denominator(const Rat& r) {
  BigInt den = boost::multiprecision::denominator(r);
  int k = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++k;
  }
  return k;
}

}  // namespace

IdentityReport identities(const ParityBlocks& blocks, const ChainSpec& spec) {
  if (blocks.normalization != Normalization::Laplacian)
    throw Error(Errc::UnsupportedNormalization,
                "identities are defined for the laplacian normalization only");
  const int n = blocks.n;

  IdentityReport rep;
  rep.n = n;
  rep.charpoly_even = char_poly_exact(blocks.exact_diag_even, blocks.exact_offsq_even);
  rep.charpoly_odd = char_poly_exact(blocks.exact_diag_odd, blocks.exact_offsq_odd);

  // det(H_o) is the char poly at 0; the even block must carry a zero mode
  // (the uniform superposition), so its pseudo-determinant is the negated
  // linear coefficient.
  rep.det_odd = rep.charpoly_odd[0];
  if (rep.charpoly_even[0] != 0)
    throw Error(Errc::InternalInconsistency, "even block lacks the zero eigenvalue");
  rep.pseudo_det_even = -rep.charpoly_even[1];
  if (rep.det_odd == 0)
    throw Error(Errc::InternalInconsistency, "odd block is singular");

  rep.trace_even = 0;
  for (const Rat& x : blocks.exact_diag_even) rep.trace_even += x;
  rep.trace_odd = 0;
  for (const Rat& x : blocks.exact_diag_odd) rep.trace_odd += x;
  rep.trace_diff = rep.trace_even - rep.trace_odd;

  rep.middle_coupling = spec.couplings[n / 2 - 1];
  rep.trace_matches =
      (n % 2 == 1) ? rep.trace_diff == rep.middle_coupling : rep.trace_diff == -rep.middle_coupling;

  rep.ratio = rep.pseudo_det_even / rep.det_odd;
  rep.branch_prediction = (n % 2 == 1) ? Rat(n) : Rat(n, 2) / rep.middle_coupling;
  rep.ratio_matches = rep.ratio == rep.branch_prediction;

  // Divide out the coupling products to expose the pure power-of-two
  // prefactors (observed, not assumed).
  const int me = (n % 2 == 1) ? (n - 1) / 2 : n / 2 - 1;
  const int mo = (n % 2 == 1) ? (n - 1) / 2 : n / 2;
  Rat mono_even = 1, mono_odd = 1;
  for (int i = 0; i < me; ++i) mono_even *= spec.couplings[i];
  for (int i = 0; i < mo; ++i) mono_odd *= spec.couplings[i];
  rep.prefactor_even = rep.pseudo_det_even / mono_even;
  rep.prefactor_odd = rep.det_odd / mono_odd;
  rep.pow2_even = pow2_in_denominator(rep.prefactor_even);
  rep.pow2_odd = pow2_in_denominator(rep.prefactor_odd);
  return rep;
}

}  // namespace spinmirror
