#include "spinmirror/io_json.hpp"

#include <fstream>
#include <limits>

#include "spinmirror/error.hpp"

namespace spinmirror {

Json rat_to_json(const Rat& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
      num <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(num);
  if (rat_fits_double(r)) return to_double(r);
  return rat_str(r);
}

Rat rat_from_json(const Json& v) {
  if (v.is_string()) return rat_parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return Rat(v.get<std::uint64_t>());
  if (v.is_number_float()) return rat_from_double(v.get<double>());
  throw Error(Errc::InvalidSpec, "expected a number or \"p/q\" string, got " + v.dump());
}

Json chain_to_json(const ChainSpec& spec) {
  Json j;
  j["n"] = spec.n;
  j["delta"] = spec.delta;
  Json cs = Json::array();
  for (const Rat& c : spec.couplings) cs.push_back(rat_to_json(c));
  j["couplings"] = std::move(cs);
  Json fs = Json::array();
  for (const Rat& f : spec.fields) fs.push_back(rat_to_json(f));
  j["fields"] = std::move(fs);
  return j;
}

ChainSpec chain_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidSpec, "spec must be a JSON object");
  for (auto& [key, val] : j.items()) {
    (void)val;
    if (key != "n" && key != "delta" && key != "couplings" && key != "fields")
      throw Error(Errc::InvalidSpec, "unknown spec key \"" + key + "\"");
  }
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw Error(Errc::InvalidSpec, "spec needs an integer \"n\"");
  const int n = j["n"].get<int>();
  double delta = 1.0;
  if (j.contains("delta")) {
    if (j["delta"].is_string())
      delta = to_double(rat_parse(j["delta"].get<std::string>()));
    else if (j["delta"].is_number())
      delta = j["delta"].get<double>();
    else
      throw Error(Errc::InvalidSpec, "\"delta\" must be a number");
  }
  if (!j.contains("couplings") || !j["couplings"].is_array())
    throw Error(Errc::InvalidSpec, "spec needs a \"couplings\" array");
  std::vector<Rat> couplings;
  for (const Json& v : j["couplings"]) couplings.push_back(rat_from_json(v));
  std::vector<Rat> fields(static_cast<std::size_t>(n > 0 ? n : 0), Rat(0));
  if (j.contains("fields")) {
    if (!j["fields"].is_array()) throw Error(Errc::InvalidSpec, "\"fields\" must be an array");
    fields.clear();
    for (const Json& v : j["fields"]) fields.push_back(rat_from_json(v));
  }
  return make_chain(n, delta, std::move(couplings), std::move(fields));
}

ChainSpec load_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InvalidSpec, path + ": " + e.what());
  }
  return chain_from_json(j);
}

Json identity_report_to_json(const IdentityReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["trace_even"] = rat_str(rep.trace_even);
  j["trace_odd"] = rat_str(rep.trace_odd);
  j["trace_diff"] = rat_str(rep.trace_diff);
  j["middle_coupling"] = rat_str(rep.middle_coupling);
  j["trace_matches"] = rep.trace_matches;
  j["pseudo_det_even"] = rat_str(rep.pseudo_det_even);
  j["det_odd"] = rat_str(rep.det_odd);
  j["ratio"] = rat_str(rep.ratio);
  j["branch_prediction"] = rat_str(rep.branch_prediction);
  j["ratio_matches"] = rep.ratio_matches;
  j["prefactor_even"] = rat_str(rep.prefactor_even);
  j["prefactor_odd"] = rat_str(rep.prefactor_odd);
  j["pow2_even"] = rep.pow2_even;
  j["pow2_odd"] = rep.pow2_odd;
  Json pe = Json::array(), po = Json::array();
  for (const Rat& c : rep.charpoly_even) pe.push_back(rat_str(c));
  for (const Rat& c : rep.charpoly_odd) po.push_back(rat_str(c));
  j["charpoly_even"] = std::move(pe);
  j["charpoly_odd"] = std::move(po);
  return j;
}

Json spmc_to_json(const SpmcVerdict& v) {
  Json j;
  j["satisfied"] = v.satisfied;
  j["a"] = v.a;
  j["b"] = v.b;
  j["even_integers"] = v.even_integers;
  j["odd_integers"] = v.odd_integers;
  j["failure_reason"] = spmc_failure_name(v.failure_reason);
  return j;
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["n"] = c.n;
  j["branch"] = cert_branch_name(c.branch);
  Json ids = Json::array();
  ids.push_back(c.trace_claim);
  for (const std::string& s : c.determinant_claims) ids.push_back(s);
  j["identities"] = std::move(ids);
  j["contradiction"] = c.contradiction;
  if (c.branch == CertBranch::Mod4Zero) {
    j["p"] = c.p;
    j["q"] = c.q;
  }
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.n = j.at("n").get<int>();
  c.branch = cert_branch_from_name(j.at("branch").get<std::string>());
  const Json& ids = j.at("identities");
  if (!ids.is_array() || ids.empty())
    throw Error(Errc::InvalidSpec, "certificate needs a non-empty \"identities\" array");
  c.trace_claim = ids[0].get<std::string>();
  for (std::size_t i = 1; i < ids.size(); ++i)
    c.determinant_claims.push_back(ids[i].get<std::string>());
  c.contradiction = j.at("contradiction").get<std::string>();
  if (c.branch == CertBranch::Mod4Zero) {
    c.p = j.at("p").get<int>();
    c.q = j.at("q").get<std::int64_t>();
  }
  return c;
}

Json suite_to_json(const SuiteReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["identities_exact"] = rep.identities_exact;
  j["spmc_satisfied"] = rep.spmc_satisfied;
  j["trace_sign_positive"] = rep.trace_sign_positive;
  j["all_identities_exact"] = rep.all_identities_exact;
  return j;
}

Json design_to_json(const DesignResult& res) {
  Json j;
  j["spec"] = chain_to_json(res.spec);
  j["best_abs_f"] = res.best_abs_f;
  j["best_time"] = res.best_time;
  j["evaluations"] = res.evaluations;
  j["seed"] = res.seed;
  return j;
}

Json parity_blocks_to_json(const ParityBlocks& blocks) {
  Json j;
  j["n"] = blocks.n;
  j["normalization"] = normalization_name(blocks.normalization);
  auto rats = [](const std::vector<Rat>& xs) {
    Json a = Json::array();
    for (const Rat& x : xs) a.push_back(rat_str(x));
    return a;
  };
  j["even"] = {{"diag", blocks.h_even_diag},
               {"offdiag", blocks.h_even_off},
               {"exact_diag", rats(blocks.exact_diag_even)},
               {"exact_offsq", rats(blocks.exact_offsq_even)}};
  j["odd"] = {{"diag", blocks.h_odd_diag},
              {"offdiag", blocks.h_odd_off},
              {"exact_diag", rats(blocks.exact_diag_odd)},
              {"exact_offsq", rats(blocks.exact_offsq_odd)}};
  return j;
}

}  // namespace spinmirror
