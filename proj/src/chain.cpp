#include "spinmirror/chain.hpp"

#include <cmath>

namespace spinmirror {

bool ChainSpec::is_symmetric() const {
  for (std::size_t i = 0; i < couplings.size(); ++i)
    if (couplings[i] != couplings[couplings.size() - 1 - i]) return false;
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i] != fields[fields.size() - 1 - i]) return false;
  return true;
}

bool ChainSpec::zero_fields() const {
  for (const auto& b : fields)
    if (b != 0) return false;
  return true;
}

std::vector<double> ChainSpec::couplings_d() const {
  std::vector<double> v(couplings.size());
  for (std::size_t i = 0; i < couplings.size(); ++i) v[i] = to_double(couplings[i]);
  return v;
}

std::vector<double> ChainSpec::fields_d() const {
  std::vector<double> v(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) v[i] = to_double(fields[i]);
  return v;
}

ChainSpec make_chain(int n, double delta, std::vector<Rat> couplings, std::vector<Rat> fields) {
  if (n < 2) throw Error(Errc::InvalidSpec, "chain needs at least 2 sites, got n=" + std::to_string(n));
  if (static_cast<int>(couplings.size()) != n - 1)
    throw Error(Errc::InvalidSpec, "expected " + std::to_string(n - 1) + " couplings, got " +
                                       std::to_string(couplings.size()));
  if (fields.empty()) fields.assign(static_cast<std::size_t>(n), Rat(0));
  if (static_cast<int>(fields.size()) != n)
    throw Error(Errc::InvalidSpec,
                "expected " + std::to_string(n) + " fields, got " + std::to_string(fields.size()));
  for (std::size_t i = 0; i < couplings.size(); ++i)
    if (couplings[i] <= 0)
      throw Error(Errc::InvalidSpec, "coupling " + std::to_string(i + 1) +
                                         " must be strictly positive, got " + rat_str(couplings[i]));
  ChainSpec spec;
  spec.n = n;
  spec.delta = delta;
  spec.couplings = std::move(couplings);
  spec.fields = std::move(fields);
  return spec;
}

ChainSpec make_chain(int n, double delta, const std::vector<double>& couplings,
                     const std::vector<double>& fields) {
  std::vector<Rat> j(couplings.size()), b(fields.size());
  for (std::size_t i = 0; i < couplings.size(); ++i) j[i] = rat_from_double(couplings[i]);
  for (std::size_t i = 0; i < fields.size(); ++i) b[i] = rat_from_double(fields[i]);
  return make_chain(n, delta, std::move(j), std::move(b));
}

ChainSpec make_xx_engineered(int n, bool unit_spacing) {
  if (n < 2) throw Error(Errc::InvalidSpec, "chain needs at least 2 sites, got n=" + std::to_string(n));
  std::vector<Rat> j(static_cast<std::size_t>(n - 1));
  for (int i = 1; i <= n - 1; ++i) {
    double v = std::sqrt(static_cast<double>(i) * static_cast<double>(n - i));
    if (unit_spacing) v *= 0.25;
    j[static_cast<std::size_t>(i - 1)] = rat_from_double(v);
  }
  return make_chain(n, 0.0, std::move(j), {});
}

ChainSpec make_uniform_bose(int n, double j, double b) {
  if (j <= 0) throw Error(Errc::InvalidSpec, "uniform coupling J must be positive");
  Rat half_j = rat_from_double(j) / 2;
  std::vector<Rat> couplings(static_cast<std::size_t>(n > 0 ? n - 1 : 0), half_j);
  std::vector<Rat> fields(static_cast<std::size_t>(n), rat_from_double(b));
  return make_chain(n, 1.0, std::move(couplings), std::move(fields));
}

OneExcHamiltonian one_excitation(const ChainSpec& spec, Normalization norm) {
  const int n = spec.n;
  OneExcHamiltonian h;
  h.n = n;
  h.normalization = norm;
  h.diag_exact.resize(static_cast<std::size_t>(n));
  h.offdiag_exact.resize(static_cast<std::size_t>(n - 1));

  auto jat = [&](int i) -> Rat {  // 1-based, J_0 = J_n = 0
    if (i < 1 || i > n - 1) return Rat(0);
    return spec.couplings[static_cast<std::size_t>(i - 1)];
  };

  if (norm == Normalization::Laplacian) {
    if (spec.delta != 1.0 || !spec.zero_fields())
      throw Error(Errc::UnsupportedNormalization,
                  "Laplacian normalization is defined only for the isotropic zero-field chain");
    for (int i = 1; i <= n; ++i)
      h.diag_exact[static_cast<std::size_t>(i - 1)] = (jat(i - 1) + jat(i)) / 2;
    for (int i = 1; i <= n - 1; ++i) h.offdiag_exact[static_cast<std::size_t>(i - 1)] = -jat(i) / 2;
    h.vacuum_energy_exact = 0;
  } else {
    Rat delta = rat_from_double(spec.delta);
    Rat sum_j(0), sum_b(0);
    for (const auto& j : spec.couplings) sum_j += j;
    for (const auto& b : spec.fields) sum_b += b;
    h.vacuum_energy_exact = delta * sum_j + sum_b;
    for (int i = 1; i <= n; ++i) {
      const Rat& b_i = spec.fields[static_cast<std::size_t>(i - 1)];
      h.diag_exact[static_cast<std::size_t>(i - 1)] =
          delta * sum_j - 2 * delta * (jat(i - 1) + jat(i)) + sum_b - 2 * b_i;
    }
    for (int i = 1; i <= n - 1; ++i) h.offdiag_exact[static_cast<std::size_t>(i - 1)] = 2 * jat(i);
  }

  h.diag.resize(h.diag_exact.size());
  h.offdiag.resize(h.offdiag_exact.size());
  for (std::size_t i = 0; i < h.diag_exact.size(); ++i) h.diag[i] = to_double(h.diag_exact[i]);
  for (std::size_t i = 0; i < h.offdiag_exact.size(); ++i)
    h.offdiag[i] = to_double(h.offdiag_exact[i]);
  h.vacuum_energy = to_double(h.vacuum_energy_exact);
  return h;
}

const char* normalization_name(Normalization n) {
  return n == Normalization::Physical ? "physical" : "laplacian";
}

Normalization normalization_from_name(const std::string& name) {
  if (name == "physical") return Normalization::Physical;
  if (name == "laplacian") return Normalization::Laplacian;
  throw Error(Errc::InvalidArgs, "unknown normalization '" + name + "'");
}

}  // namespace spinmirror
