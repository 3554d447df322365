#include "spinmirror/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinmirror/design.hpp"
#include "spinmirror/dynamics.hpp"
#include "spinmirror/error.hpp"
#include "spinmirror/io_json.hpp"
#include "spinmirror/nogo.hpp"

namespace spinmirror {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::NumericalFailure:
    case Errc::InternalInconsistency:
      return 3;
    case Errc::Io:
      return 4;
    default:
      return 2;
  }
}

// Where chain specs come from: a JSON file, a named builder, or inline
// coupling/field lists. Exactly one source must be given.
struct SpecOptions {
  std::string file;
  std::string make;
  int n = 0;
  std::string j = "1";
  std::string b = "0";
  std::string couplings;
  std::string fields;
  std::string delta = "1";

  void add_to(CLI::App* cmd, bool file_alias = false) {
    cmd->add_option("--spec", file, "chain spec JSON file");
    if (file_alias) cmd->add_option("--file", file, "alias for --spec");
    cmd->add_option("--make", make, "builder: uniform | xx | xx-raw")
        ->check(CLI::IsMember({"uniform", "xx", "xx-raw"}));
    cmd->add_option("--n", n, "site count for --make / inline specs");
    cmd->add_option("--j", j, "uniform builder: coupling scale J (couplings J/2), rational ok");
    cmd->add_option("--b", b, "uniform builder: field on every site, rational ok");
    cmd->add_option("--couplings", couplings, "inline comma-separated couplings, rationals ok");
    cmd->add_option("--fields", fields, "inline comma-separated fields, rationals ok");
    cmd->add_option("--delta", delta, "inline anisotropy (1 = isotropic, 0 = xx)");
  }

  std::vector<Rat> parse_list(const std::string& text, const char* what) const {
    std::vector<Rat> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos)
        throw Error(Errc::InvalidSpec, std::string("empty entry in --") + what);
      out.push_back(rat_parse(item));
    }
    if (out.empty()) throw Error(Errc::InvalidSpec, std::string("--") + what + " is empty");
    return out;
  }

  ChainSpec resolve() const {
    const int sources = (!file.empty()) + (!make.empty()) + (!couplings.empty());
    if (sources == 0)
      throw Error(Errc::InvalidSpec, "no chain given: use --spec FILE, --make, or --couplings");
    if (sources > 1)
      throw Error(Errc::InvalidSpec, "--spec, --make, and --couplings are mutually exclusive");

    if (!file.empty()) return load_chain_file(file);

    if (!make.empty()) {
      if (n < 2) throw Error(Errc::InvalidSpec, "--make needs --n >= 2");
      if (make == "xx") return make_xx_engineered(n, true);
      if (make == "xx-raw") return make_xx_engineered(n, false);
      Rat jr = rat_parse(j);
      if (jr <= 0) throw Error(Errc::InvalidSpec, "--j must be positive");
      Rat br = rat_parse(b);
      return make_chain(n, 1.0, std::vector<Rat>(n - 1, jr / 2), std::vector<Rat>(n, br));
    }

    std::vector<Rat> cs = parse_list(couplings, "couplings");
    const int nn = n > 0 ? n : static_cast<int>(cs.size()) + 1;
    std::vector<Rat> fs(nn, Rat(0));
    if (!fields.empty()) fs = parse_list(fields, "fields");
    return make_chain(nn, to_double(rat_parse(delta)), std::move(cs), std::move(fs));
  }
};

// The identities hold in the vacuum-referenced Laplacian form, which exists
// only for isotropic zero-field chains; everything else runs physical.
Normalization auto_normalization(const ChainSpec& s) {
  return (s.delta == 1.0 && s.zero_fields()) ? Normalization::Laplacian
                                             : Normalization::Physical;
}

Normalization pick_normalization(const std::string& flag, const ChainSpec& s) {
  if (flag == "auto") return auto_normalization(s);
  return normalization_from_name(flag);
}

// Resolves --out: returns the file stream when a path is given, else the
// process stream.
class Sink {
public:
  Sink(std::ostream& fallback, std::string path) : fallback_(fallback), path_(std::move(path)) {}

  std::ostream& stream() {
    if (path_.empty()) return fallback_;
    if (!file_.is_open()) {
      file_.open(path_);
      if (!file_) throw Error(Errc::Io, "cannot open " + path_ + " for writing");
    }
    return file_;
  }

private:
  std::ostream& fallback_;
  std::string path_;
  std::ofstream file_;
};

std::string rat_list(const std::vector<Rat>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += rat_str(xs[i]);
  }
  return s;
}

void emit_json(std::ostream& os, const Json& j) { os << j.dump(2) << "\n"; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"spin-chain mirror analysis"};
  app.require_subcommand(1);

  // ---- spec ----
  auto* c_spec = app.add_subcommand("spec", "validate a chain spec and print it");
  SpecOptions o_spec;
  o_spec.add_to(c_spec, /*file_alias=*/true);
  bool canonicalize = false;
  c_spec->add_flag("--canonicalize", canonicalize, "emit canonical JSON");
  std::string spec_format = "text", spec_out;
  c_spec->add_option("--format", spec_format)->check(CLI::IsMember({"text", "json"}));
  c_spec->add_option("--out", spec_out, "write output to file");

  // ---- spectrum ----
  auto* c_spectrum = app.add_subcommand("spectrum", "one-excitation eigenvalues + commensurability");
  SpecOptions o_spectrum;
  o_spectrum.add_to(c_spectrum);
  std::string spectrum_norm = "auto", spectrum_format = "text", spectrum_out;
  double spectrum_tol = kCommensurabilityTol;
  std::int64_t spectrum_qmax = kCommensurabilityQmax;
  c_spectrum->add_option("--normalization", spectrum_norm)
      ->check(CLI::IsMember({"auto", "physical", "laplacian"}));
  c_spectrum->add_option("--tol", spectrum_tol, "commensurability tolerance");
  c_spectrum->add_option("--q-max", spectrum_qmax, "largest admissible denominator");
  c_spectrum->add_option("--format", spectrum_format)->check(CLI::IsMember({"text", "json"}));
  c_spectrum->add_option("--out", spectrum_out);

  // ---- fold ----
  auto* c_fold = app.add_subcommand("fold", "even/odd parity blocks of a symmetric chain");
  SpecOptions o_fold;
  o_fold.add_to(c_fold);
  std::string fold_norm = "auto", fold_format = "text", fold_out;
  c_fold->add_option("--normalization", fold_norm)
      ->check(CLI::IsMember({"auto", "physical", "laplacian"}));
  c_fold->add_option("--format", fold_format)->check(CLI::IsMember({"text", "json"}));
  c_fold->add_option("--out", fold_out);

  // ---- identities ----
  auto* c_ident = app.add_subcommand("identities", "exact trace/determinant identities");
  SpecOptions o_ident;
  o_ident.add_to(c_ident);
  std::string ident_format = "text", ident_out;
  c_ident->add_option("--format", ident_format)->check(CLI::IsMember({"text", "json"}));
  c_ident->add_option("--out", ident_out);

  // ---- spmc ----
  auto* c_spmc = app.add_subcommand("spmc", "spectrum parity-matching verdict");
  SpecOptions o_spmc;
  o_spmc.add_to(c_spmc);
  std::string spmc_format = "text", spmc_out;
  double spmc_tol = kCommensurabilityTol;
  std::int64_t spmc_qmax = kCommensurabilityQmax;
  c_spmc->add_option("--tol", spmc_tol);
  c_spmc->add_option("--q-max", spmc_qmax);
  c_spmc->add_option("--format", spmc_format)->check(CLI::IsMember({"text", "json"}));
  c_spmc->add_option("--out", spmc_out);

  // ---- certificate ----
  auto* c_cert = app.add_subcommand("certificate", "impossibility certificate for a length");
  int cert_n = 0;
  std::string cert_format = "text", cert_out;
  c_cert->add_option("--n", cert_n, "chain length")->required();
  c_cert->add_option("--format", cert_format)->check(CLI::IsMember({"text", "json"}));
  c_cert->add_option("--out", cert_out);

  // ---- scan ----
  auto* c_scan = app.add_subcommand("scan", "amplitude/fidelity scan over time");
  SpecOptions o_scan;
  o_scan.add_to(c_scan);
  int scan_source = 1, scan_target = 0, scan_points = 0;
  double scan_tmax = 0.0;
  bool scan_norefine = false, scan_uncompensated = false;
  std::string scan_format = "", scan_out;
  c_scan->add_option("--source", scan_source, "source site (1-based)");
  c_scan->add_option("--target", scan_target, "target site (default n)");
  c_scan->add_option("--t-max", scan_tmax, "scan horizon")->required();
  c_scan->add_option("--points", scan_points, "grid points (0 = auto)");
  c_scan->add_flag("--no-refine", scan_norefine, "skip golden-section peak refinement");
  c_scan->add_flag("--uncompensated", scan_uncompensated, "keep the transfer phase in F");
  c_scan->add_option("--format", scan_format)->check(CLI::IsMember({"text", "json", "csv"}));
  c_scan->add_option("--out", scan_out, "write output (csv default) to file");

  // ---- mirror ----
  auto* c_mirror = app.add_subcommand("mirror", "mirror time of a symmetric chain, if any");
  SpecOptions o_mirror;
  o_mirror.add_to(c_mirror);
  std::string mirror_format = "text", mirror_out;
  c_mirror->add_option("--format", mirror_format)->check(CLI::IsMember({"text", "json"}));
  c_mirror->add_option("--out", mirror_out);

  // ---- design ----
  auto* c_design = app.add_subcommand("design", "optimize couplings (and fields) for mirroring");
  int design_n = 0, design_budget = 5000;
  std::uint64_t design_seed = 1;
  bool design_no_fields = false;
  std::string design_format = "text", design_out;
  c_design->add_option("--n", design_n, "chain length")->required();
  c_design->add_flag("--no-fields", design_no_fields, "forbid local fields");
  c_design->add_option("--budget", design_budget, "objective evaluation budget");
  c_design->add_option("--seed", design_seed, "optimizer seed");
  c_design->add_option("--format", design_format)->check(CLI::IsMember({"text", "json"}));
  c_design->add_option("--out", design_out);

  // ---- verify ----
  auto* c_verify = app.add_subcommand("verify", "randomized exact-identity suite");
  int verify_n = 0, verify_trials = 100;
  std::uint64_t verify_seed = 42;
  std::string verify_format = "text", verify_out;
  c_verify->add_option("--n", verify_n, "chain length")->required();
  c_verify->add_option("--trials", verify_trials, "random coupling sets to test");
  c_verify->add_option("--seed", verify_seed, "suite seed");
  c_verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
  c_verify->add_option("--out", verify_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c_spec->parsed()) {
      ChainSpec spec = o_spec.resolve();
      Sink sink(out, spec_out);
      if (canonicalize || spec_format == "json") {
        emit_json(sink.stream(), chain_to_json(spec));
      } else {
        std::ostream& os = sink.stream();
        os << "n " << spec.n << "\n";
        os << "delta " << fmt17(spec.delta) << "\n";
        os << "couplings " << rat_list(spec.couplings) << "\n";
        os << "fields " << rat_list(spec.fields) << "\n";
        os << "symmetric " << (spec.is_symmetric() ? "yes" : "no") << "\n";
      }
      return 0;
    }

    if (c_spectrum->parsed()) {
      ChainSpec spec = o_spectrum.resolve();
      Normalization norm = pick_normalization(spectrum_norm, spec);
      OneExcHamiltonian h = one_excitation(spec, norm);
      std::vector<double> eigs = tridiag_eigenvalues(h.diag, h.offdiag);
      CommensurabilityResult com = commensurability(eigs, spectrum_tol, spectrum_qmax);
      Sink sink(out, spectrum_out);
      std::ostream& os = sink.stream();
      if (spectrum_format == "json") {
        Json j;
        j["params"] = {{"normalization", normalization_name(norm)},
                       {"tol", spectrum_tol},
                       {"q_max", spectrum_qmax}};
        j["eigenvalues"] = eigs;
        j["vacuum_energy"] = h.vacuum_energy;
        j["commensurate"] = com.commensurate;
        if (com.commensurate) {
          j["base"] = com.base;
          j["period"] = com.period;
          j["integers"] = com.integers;
        }
        emit_json(os, j);
      } else {
        os << "# normalization " << normalization_name(norm) << ", tol " << fmt17(spectrum_tol)
           << ", q-max " << spectrum_qmax << "\n";
        for (double e : eigs) os << fmt17(e) << "\n";
        if (com.commensurate) {
          os << "commensurate: base " << fmt17(com.base) << ", period " << fmt17(com.period)
             << ", integers";
          for (auto m : com.integers) os << " " << m;
          os << "\n";
        } else {
          os << "not commensurate\n";
        }
      }
      return 0;
    }

    if (c_fold->parsed()) {
      ChainSpec spec = o_fold.resolve();
      Normalization norm = pick_normalization(fold_norm, spec);
      ParityBlocks blocks = fold(one_excitation(spec, norm), spec);
      Sink sink(out, fold_out);
      std::ostream& os = sink.stream();
      if (fold_format == "json") {
        emit_json(os, parity_blocks_to_json(blocks));
      } else {
        os << "# normalization " << normalization_name(norm) << "\n";
        os << "even diag   " << rat_list(blocks.exact_diag_even) << "\n";
        os << "even offsq  " << rat_list(blocks.exact_offsq_even) << "\n";
        os << "odd  diag   " << rat_list(blocks.exact_diag_odd) << "\n";
        os << "odd  offsq  " << rat_list(blocks.exact_offsq_odd) << "\n";
      }
      return 0;
    }

    if (c_ident->parsed()) {
      ChainSpec spec = o_ident.resolve();
      OneExcHamiltonian h = one_excitation(spec, Normalization::Laplacian);
      ParityBlocks blocks = fold(h, spec);
      IdentityReport rep = identities(blocks, spec);
      Sink sink(out, ident_out);
      std::ostream& os = sink.stream();
      if (ident_format == "json") {
        emit_json(os, identity_report_to_json(rep));
      } else {
        os << "n " << rep.n << "\n";
        os << "trace even " << rat_str(rep.trace_even) << ", odd " << rat_str(rep.trace_odd)
           << ", diff " << rat_str(rep.trace_diff) << " (middle coupling "
           << rat_str(rep.middle_coupling) << ") " << (rep.trace_matches ? "ok" : "MISMATCH")
           << "\n";
        os << "pseudo-det even " << rat_str(rep.pseudo_det_even) << ", det odd "
           << rat_str(rep.det_odd) << "\n";
        os << "ratio " << rat_str(rep.ratio) << " vs predicted " << rat_str(rep.branch_prediction)
           << " " << (rep.ratio_matches ? "ok" : "MISMATCH") << "\n";
        os << "prefactors even " << rat_str(rep.prefactor_even) << " (2^-" << rep.pow2_even
           << "), odd " << rat_str(rep.prefactor_odd) << " (2^-" << rep.pow2_odd << ")\n";
      }
      return 0;
    }

    if (c_spmc->parsed()) {
      ChainSpec spec = o_spmc.resolve();
      Normalization norm = auto_normalization(spec);
      ParityBlocks blocks = fold(one_excitation(spec, norm), spec);
      SpmcVerdict v = spmc_classify(blocks, spmc_tol, spmc_qmax);
      Sink sink(out, spmc_out);
      std::ostream& os = sink.stream();
      if (spmc_format == "json") {
        Json j = spmc_to_json(v);
        j["params"] = {{"tol", spmc_tol}, {"q_max", spmc_qmax}};
        emit_json(os, j);
      } else {
        os << "# tol " << fmt17(spmc_tol) << ", q-max " << spmc_qmax << "\n";
        os << "satisfied " << (v.satisfied ? "yes" : "no");
        if (!v.satisfied) os << " (" << spmc_failure_name(v.failure_reason) << ")";
        os << "\n";
        if (v.failure_reason != SpmcFailure::NotCommensurate) {
          os << "a " << fmt17(v.a) << ", b " << fmt17(v.b) << "\n";
          os << "even integers";
          for (auto m : v.even_integers) os << " " << m;
          os << "\nodd integers";
          for (auto m : v.odd_integers) os << " " << m;
          os << "\n";
        }
      }
      return 0;
    }

    if (c_cert->parsed()) {
      Certificate cert = certificate(cert_n);
      Sink sink(out, cert_out);
      std::ostream& os = sink.stream();
      if (cert_format == "json") {
        emit_json(os, certificate_to_json(cert));
      } else {
        os << "n " << cert.n << ", branch " << cert_branch_name(cert.branch) << "\n";
        os << "trace: " << cert.trace_claim << "\n";
        for (const auto& s : cert.determinant_claims) os << "det:   " << s << "\n";
        os << "contradiction: " << cert.contradiction << "\n";
      }
      return 0;
    }

    if (c_scan->parsed()) {
      ChainSpec spec = o_scan.resolve();
      if (scan_target == 0) scan_target = spec.n;
      if (scan_format.empty()) scan_format = scan_out.empty() ? "text" : "csv";
      TransferReport rep = fidelity_scan(spec, scan_source, scan_target, scan_tmax, scan_points,
                                         !scan_norefine, !scan_uncompensated);
      const std::string params = "source " + std::to_string(scan_source) + ", target " +
                                 std::to_string(scan_target) + ", t-max " + fmt17(scan_tmax) +
                                 ", points " + std::to_string(rep.times.size()) + ", refine " +
                                 (scan_norefine ? "off" : "on") + ", compensated " +
                                 (scan_uncompensated ? "off" : "on");
      Sink sink(out, scan_out);
      if (scan_format == "csv") {
        err << "# scan " << params << "\n";
        write_transfer_csv(rep, sink.stream());
      } else if (scan_format == "json") {
        Json j;
        j["params"] = {{"source", scan_source},   {"target", scan_target},
                       {"t_max", scan_tmax},      {"points", rep.times.size()},
                       {"refine", !scan_norefine}, {"compensated", !scan_uncompensated}};
        j["peak_time"] = rep.peak_time;
        j["peak_fidelity"] = rep.peak_fidelity;
        j["peak_abs_f"] = rep.peak_abs_f;
        emit_json(sink.stream(), j);
      } else {
        std::ostream& os = sink.stream();
        os << "# scan " << params << "\n";
        os << "peak time " << fmt17(rep.peak_time) << "\n";
        os << "peak |f| " << fmt17(rep.peak_abs_f) << "\n";
        os << "peak fidelity " << fmt17(rep.peak_fidelity) << "\n";
      }
      return 0;
    }

    if (c_mirror->parsed()) {
      ChainSpec spec = o_mirror.resolve();
      std::optional<double> t = mirror_time(spec);
      Sink sink(out, mirror_out);
      std::ostream& os = sink.stream();
      if (mirror_format == "json") {
        Json j;
        j["params"] = {{"tol", kCommensurabilityTol}, {"q_max", kCommensurabilityQmax}};
        j["mirror_time"] = t ? Json(*t) : Json(nullptr);
        emit_json(os, j);
      } else {
        os << "# tol " << fmt17(kCommensurabilityTol) << ", q-max " << kCommensurabilityQmax
           << "\n";
        if (t)
          os << "mirror time " << fmt17(*t) << "\n";
        else
          os << "no mirror time\n";
      }
      return 0;
    }

    if (c_design->parsed()) {
      DesignResult res = optimize_mirror_fidelity(design_n, !design_no_fields, design_budget,
                                                  design_seed);
      Sink sink(out, design_out);
      std::ostream& os = sink.stream();
      if (design_format == "json") {
        emit_json(os, design_to_json(res));
      } else {
        os << "# n " << design_n << ", fields " << (design_no_fields ? "off" : "on")
           << ", budget " << design_budget << ", seed " << design_seed << "\n";
        os << "best |f| " << fmt17(res.best_abs_f) << " at t " << fmt17(res.best_time) << " ("
           << res.evaluations << " evaluations)\n";
        os << "couplings " << rat_list(res.spec.couplings) << "\n";
        os << "fields " << rat_list(res.spec.fields) << "\n";
      }
      return 0;
    }

    if (c_verify->parsed()) {
      SuiteReport rep = randomized_identity_suite(verify_n, verify_trials, verify_seed);
      Sink sink(out, verify_out);
      std::ostream& os = sink.stream();
      if (verify_format == "json") {
        emit_json(os, suite_to_json(rep));
      } else {
        os << "# n " << rep.n << ", trials " << rep.trials << ", seed " << rep.seed << "\n";
        os << "identities exact " << rep.identities_exact << "/" << rep.trials << "\n";
        os << "spmc satisfied " << rep.spmc_satisfied << "/" << rep.trials << "\n";
        os << "trace sign positive " << rep.trace_sign_positive << "/" << rep.trials << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace spinmirror
