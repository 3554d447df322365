#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracle_helpers.hpp"
#include "spinmirror/chain.hpp"
#include "spinmirror/dynamics.hpp"
#include "spinmirror/parity.hpp"
#include "spinmirror/rng.hpp"
#include "spinmirror/spectral.hpp"

using namespace spinmirror;

namespace {

// Random chain with rational couplings (positive) and fields; deterministic.
ChainSpec random_chain(int n, double delta, SplitMix64& rng, bool with_fields) {
  std::vector<Rat> j;
  for (int i = 0; i + 1 < n; ++i)
    j.push_back(Rat(1 + static_cast<long long>(rng.below(24)),
                    1 + static_cast<long long>(rng.below(12))));
  std::vector<Rat> b(n, Rat(0));
  if (with_fields)
    for (int i = 0; i < n; ++i)
      b[i] = Rat(static_cast<long long>(rng.below(13)) - 6,
                 1 + static_cast<long long>(rng.below(6)));
  return make_chain(n, delta, std::move(j), std::move(b));
}

}  // namespace

TEST_CASE("the single-flip block of the full Pauli Hamiltonian") {
  // Project the dense 2^n x 2^n operator onto the n single-flip states and
  // compare with the tridiagonal construction, entry by entry.
  SplitMix64 rng(2026);
  for (int n = 2; n <= 5; ++n) {
    for (double delta : {0.0, 1.0, 0.5}) {
      ChainSpec spec = random_chain(n, delta, rng, /*with_fields=*/true);
      oracle::PauliProjection proj = oracle::pauli_one_excitation(spec);
      REQUIRE(proj.sector_isolated);

      OneExcHamiltonian h = one_excitation(spec, Normalization::Physical);
      CHECK(std::abs(proj.vacuum_energy - h.vacuum_energy) < 1e-12);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          double want = 0.0;
          if (r == c)
            want = h.diag[static_cast<std::size_t>(r)];
          else if (std::abs(r - c) == 1)
            want = h.offdiag[static_cast<std::size_t>(std::min(r, c))];
          CHECK(std::abs(proj.block[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                         want) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("anisotropy enters only the diagonal") {
  SplitMix64 rng(7);
  ChainSpec a = random_chain(4, 1.0, rng, false);
  ChainSpec b = make_chain(4, 0.0, a.couplings, a.fields);
  oracle::PauliProjection pa = oracle::pauli_one_excitation(a);
  oracle::PauliProjection pb = oracle::pauli_one_excitation(b);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c)
        CHECK(pa.block[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ==
              pb.block[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
}

TEST_CASE("average fidelity equals its Bloch-sphere quadrature") {
  SplitMix64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    double mag = rng.uniform();
    double phase = 2.0 * oracle::kPi * rng.uniform();
    Complex f = std::polar(mag, phase);
    for (bool compensated : {false, true}) {
      double closed = haar_average_fidelity(f, compensated);
      double quad = oracle::bloch_quadrature_fidelity(f, compensated);
      CHECK(std::abs(closed - quad) < 1e-9);
    }
  }
  // edge cases the random magnitudes rarely hit
  for (bool compensated : {false, true}) {
    CHECK(std::abs(haar_average_fidelity(Complex(1, 0), compensated) -
                   oracle::bloch_quadrature_fidelity(Complex(1, 0), compensated)) < 1e-9);
    CHECK(std::abs(haar_average_fidelity(Complex(-1, 0), compensated) -
                   oracle::bloch_quadrature_fidelity(Complex(-1, 0), compensated)) < 1e-9);
  }
}

TEST_CASE("numeric eigenvalues are roots of the exact block polynomials") {
  auto check_spec = [](const ChainSpec& spec, Normalization norm) {
    ParityBlocks blocks = fold(one_excitation(spec, norm), spec);
    std::vector<Rat> pe = char_poly_exact(blocks.exact_diag_even, blocks.exact_offsq_even);
    std::vector<Rat> po = char_poly_exact(blocks.exact_diag_odd, blocks.exact_offsq_odd);
    for (double e : tridiag_eigenvalues(blocks.h_even_diag, blocks.h_even_off))
      CHECK(std::abs(oracle::charpoly_value_at(pe, e)) < 1e-8);
    for (double e : tridiag_eigenvalues(blocks.h_odd_diag, blocks.h_odd_off))
      CHECK(std::abs(oracle::charpoly_value_at(po, e)) < 1e-8);
  };

  for (int n = 2; n <= 12; ++n) check_spec(make_xx_engineered(n), Normalization::Physical);

  SplitMix64 rng(5);
  for (int n : {3, 5, 8}) {
    std::vector<Rat> j = oracle::random_symmetric_couplings(n, rng);
    check_spec(make_chain(n, 1.0, j, {}), Normalization::Laplacian);
  }
}
