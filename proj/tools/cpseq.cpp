// cpseq: construct, verify, search, scan and simulate composite pulse
// sequences for broadband two-level population inversion.
//
// Units on the command line: angles in degrees, frequencies in kHz (cycles/s),
// durations in microseconds. Everything is converted to radians and angular
// frequencies internally.
//
// Exit codes: 0 ok, 1 usage, 2 verification failure, 3 numeric
// non-convergence, 4 I/O.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cpseq/echo.hpp"
#include "cpseq/io.hpp"
#include "cpseq/scanner.hpp"
#include "cpseq/search.hpp"
#include "cpseq/series.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

constexpr double kDegToRad = cpseq::kPi / 180.0;

struct SequenceArgs {
  std::string name;      // catalog name, e.g. "U5"
  std::string law;       // comma-separated Phi list, rational multiples of pi
  std::string seq_file;  // path to a sequence file
  int n = 0;
  double phi2_deg = 0.0;
};

void add_sequence_flags(CLI::App* cmd, SequenceArgs& args, bool positional_name) {
  if (positional_name)
    cmd->add_option("name", args.name, "catalog sequence name (U3, U5, U7, U13, U25)");
  else
    cmd->add_option("--seq", args.name, "catalog sequence name (U3, U5, U7, U13, U25)");
  cmd->add_option("--law", args.law,
                  "comma-separated second differences Phi_1..Phi_{n-2} as rational multiples "
                  "of pi, e.g. \"2pi/3, pi, 2pi/3\"");
  cmd->add_option("--n", args.n, "pulse count when --law is given");
  cmd->add_option("--seq-file", args.seq_file, "path to a sequence file (overrides name/law)");
  cmd->add_option("--phi2-deg", args.phi2_deg, "free phase phi2 in degrees")
      ->default_val("0");
}

cpseq::CompositeSequence resolve_sequence(const SequenceArgs& args,
                                          std::vector<std::string>* warnings = nullptr) {
  if (!args.seq_file.empty()) {
    cpseq::SequenceFile f = cpseq::read_sequence_file_path(args.seq_file);
    if (warnings) *warnings = f.warnings;
    return f.sequence;
  }
  if (!args.law.empty()) {
    if (args.n < 3) throw CLI::ValidationError("--law requires --n >= 3");
    cpseq::RationalPhaseLaw law;
    law.n = args.n;
    for (const auto& tok : [&] {
           std::vector<std::string> toks;
           std::stringstream ss(args.law);
           std::string t;
           while (std::getline(ss, t, ',')) toks.push_back(t);
           return toks;
         }()) {
      auto r = cpseq::parse_rational_angle(tok);
      if (!r) throw CLI::ValidationError("bad Phi token in --law: '" + tok + "'");
      law.big_phi.push_back(*r);
    }
    auto phi2 = cpseq::snap_to_rational(args.phi2_deg * kDegToRad, 360, 1e-9);
    if (phi2) {
      law.phi2 = *phi2;
      return cpseq::sequence_from_rational_law(law);
    }
    cpseq::PhaseLaw fl;
    fl.n = law.n;
    for (const auto& r : law.big_phi) fl.big_phi.push_back(r.radians());
    fl.phi2 = args.phi2_deg * kDegToRad;
    return cpseq::phases_from_law(fl);
  }
  if (args.name.empty())
    throw CLI::ValidationError("give a catalog name, --law with --n, or --seq-file");
  return cpseq::catalog_lookup(args.name, args.phi2_deg * kDegToRad);
}

// "(0,5,2,5,0)pi/6" when all phases share a rational form, else empty
std::string tuple_form(const cpseq::CompositeSequence& seq) {
  std::vector<cpseq::RationalAngle> rats;
  if (seq.exact) {
    rats = *seq.exact;
  } else {
    for (double p : seq.phases) {
      auto r = cpseq::snap_to_rational(p, 360);
      if (!r) return "";
      rats.push_back(r->mod_two_pi());
    }
  }
  std::int64_t den = 1;
  for (const auto& r : rats) den = std::lcm(den, r.den);
  std::string out = "(";
  for (std::size_t i = 0; i < rats.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(rats[i].num * (den / rats[i].den));
  }
  out += ")pi";
  if (den != 1) out += "/" + std::to_string(den);
  return out;
}

std::string provenance_line(const std::string& config) {
  return "config: " + config;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw cpseq::IoError("cannot open output file: " + path);
  return out;
}

struct GridArgs {
  double det_min_khz = -60.0, det_max_khz = 60.0;
  int det_count = 121;
  double dur_min_us = 2.0, dur_max_us = 18.0;
  int dur_count = 81;
  double rabi_khz = 50.0;
};

void add_grid_flags(CLI::App* cmd, GridArgs& g) {
  cmd->add_option("--det-min-khz", g.det_min_khz, "detuning axis start in kHz")->capture_default_str();
  cmd->add_option("--det-max-khz", g.det_max_khz, "detuning axis end in kHz")->capture_default_str();
  cmd->add_option("--det-count", g.det_count, "detuning axis point count")->capture_default_str();
  cmd->add_option("--dur-min-us", g.dur_min_us, "pulse duration axis start in microseconds")
      ->capture_default_str();
  cmd->add_option("--dur-max-us", g.dur_max_us, "pulse duration axis end in microseconds")
      ->capture_default_str();
  cmd->add_option("--dur-count", g.dur_count, "duration axis point count")->capture_default_str();
  cmd->add_option("--rabi-khz", g.rabi_khz, "peak Rabi frequency in kHz (cycles/s)")
      ->capture_default_str();
}

cpseq::GridSpec to_grid(const GridArgs& g) {
  cpseq::GridSpec grid;
  grid.detuning = {cpseq::kTwoPi * g.det_min_khz * 1e3, cpseq::kTwoPi * g.det_max_khz * 1e3,
                   g.det_count};
  grid.duration = {g.dur_min_us * 1e-6, g.dur_max_us * 1e-6, g.dur_count};
  grid.base_pulse.omega_peak = cpseq::kTwoPi * g.rabi_khz * 1e3;
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"composite pulse sequence engine"};
  app.require_subcommand(1);

  int workers = 0;
  app.add_option("--workers", workers,
                 "worker thread count for data-parallel kernels (0 = all available; "
                 "results are independent of this)")
      ->capture_default_str();

  // ---- phases ----
  SequenceArgs phases_args;
  auto* cmd_phases = app.add_subcommand("phases", "print the realized pulse phases of a sequence");
  add_sequence_flags(cmd_phases, phases_args, /*positional_name=*/true);
  std::string phases_out;
  cmd_phases->add_option("-o,--output", phases_out, "write a sequence file here as well");

  // ---- verify ----
  SequenceArgs verify_args;
  int verify_j0 = 0;
  auto* cmd_verify = app.add_subcommand(
      "verify", "check the nullification order of a phase law (exit 2 when it fails)");
  add_sequence_flags(cmd_verify, verify_args, /*positional_name=*/true);
  cmd_verify->add_option("--j0", verify_j0, "claimed nullification order")->required();

  // ---- search ----
  cpseq::SearchOptions search_opts;
  auto* cmd_search = app.add_subcommand("search", "search for universal phase laws");
  cmd_search->add_option("--n", search_opts.n, "pulse count (odd, >= 3)")->capture_default_str();
  cmd_search->add_option("--j0", search_opts.target_j0, "target nullification order")
      ->capture_default_str();
  cmd_search->add_flag("--anagram", search_opts.anagram,
                       "constrain the second differences to a palindrome");
  cmd_search->add_option("--restarts", search_opts.restarts, "number of random restarts")
      ->capture_default_str();
  cmd_search->add_option("--seed", search_opts.seed, "rng seed (deterministic results)")
      ->capture_default_str();

  // ---- scan ----
  SequenceArgs scan_args;
  GridArgs scan_grid;
  std::string scan_out, scan_json;
  bool scan_serial = false;
  auto* cmd_scan =
      app.add_subcommand("scan", "transition-probability map over detuning and pulse duration");
  add_sequence_flags(cmd_scan, scan_args, /*positional_name=*/true);
  add_grid_flags(cmd_scan, scan_grid);
  cmd_scan->add_option("-o,--output", scan_out, "output CSV path")->required();
  cmd_scan->add_option("--json", scan_json, "also write a JSON copy here");
  cmd_scan->add_flag("--serial", scan_serial, "use the serial reference kernel");

  // ---- correlated ----
  SequenceArgs corr_args;
  double corr_kappa = 0.5, corr_span = 0.1, corr_rabi_khz = 50.0, corr_dur_us = 10.0;
  int corr_count = 201;
  std::string corr_out;
  auto* cmd_corr = app.add_subcommand(
      "correlated", "scan along a correlated Rabi/detuning error line: Omega -> Omega(1+e), "
                    "Delta -> kappa * Omega * e");
  add_sequence_flags(cmd_corr, corr_args, /*positional_name=*/true);
  cmd_corr->add_option("--kappa", corr_kappa, "detuning/Rabi correlation slope (dimensionless)")
      ->capture_default_str();
  cmd_corr->add_option("--span", corr_span, "half-width of the relative Rabi error e")
      ->capture_default_str();
  cmd_corr->add_option("--count", corr_count, "number of points")->capture_default_str();
  cmd_corr->add_option("--rabi-khz", corr_rabi_khz, "peak Rabi frequency in kHz (cycles/s)")
      ->capture_default_str();
  cmd_corr->add_option("--dur-us", corr_dur_us, "constituent pulse duration in microseconds")
      ->capture_default_str();
  cmd_corr->add_option("-o,--output", corr_out, "output CSV path")->required();

  // ---- echo ----
  SequenceArgs echo_args;
  double echo_storage_us = 400.0, echo_dur_us = 10.0;
  double echo_det_sigma_khz = 8.0, echo_rabi_sigma = 0.05, echo_t2_us = 0.0;
  int echo_inversions = 2, echo_members = 256;
  unsigned long long echo_seed = 1;
  std::string echo_out, echo_json;
  bool echo_map = false, echo_normalized = false, echo_serial = false;
  GridArgs echo_grid;
  auto* cmd_echo = app.add_subcommand(
      "echo", "CPMG rephasing efficiency of an inhomogeneously broadened ensemble");
  add_sequence_flags(cmd_echo, echo_args, /*positional_name=*/false);
  cmd_echo->add_option("--storage-us", echo_storage_us, "storage time in microseconds")
      ->capture_default_str();
  cmd_echo->add_option("--inversions", echo_inversions, "number of inversion blocks (even)")
      ->capture_default_str();
  cmd_echo->add_option("--dur-us", echo_dur_us, "constituent pulse duration in microseconds")
      ->capture_default_str();
  cmd_echo
      ->add_option("--det-sigma-khz", echo_det_sigma_khz,
                   "ensemble detuning spread sigma in kHz (fitting knob, not a measured value)")
      ->capture_default_str();
  cmd_echo
      ->add_option("--rabi-sigma", echo_rabi_sigma,
                   "relative Rabi amplitude spread sigma (fitting knob)")
      ->capture_default_str();
  cmd_echo->add_option("--t2-us", echo_t2_us, "exponential decoherence time in microseconds (0 = off)")
      ->capture_default_str();
  cmd_echo->add_option("--members", echo_members, "ensemble member count")->capture_default_str();
  cmd_echo->add_option("--seed", echo_seed, "ensemble sampling seed")->capture_default_str();
  cmd_echo->add_flag("--map", echo_map, "scan the full detuning/duration grid instead of one point");
  cmd_echo->add_flag("--normalized", echo_normalized, "divide the map by its global maximum");
  cmd_echo->add_flag("--serial", echo_serial, "use the serial reference kernel");
  cmd_echo->add_option("-o,--output", echo_out, "output CSV path (required with --map)");
  cmd_echo->add_option("--json", echo_json, "also write a JSON copy of the map here");
  add_grid_flags(cmd_echo, echo_grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

#ifdef _OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#endif

  std::ostringstream config;
  for (int i = 0; i < argc; ++i) config << (i ? " " : "") << argv[i];

  try {
    if (cmd_phases->parsed()) {
      std::vector<std::string> warnings;
      const cpseq::CompositeSequence seq = resolve_sequence(phases_args, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      std::cout << provenance_line(config.str()) << "\n";
      if (!seq.name.empty()) std::cout << "sequence: " << seq.name << "\n";
      const std::string tuple = tuple_form(seq);
      if (!tuple.empty()) std::cout << "phases: " << tuple << "\n";
      std::cout << "k  phase_rational  phase_deg\n";
      for (int k = 0; k < seq.size(); ++k) {
        std::string rat = "-";
        if (seq.exact)
          rat = (*seq.exact)[k].str();
        else if (auto r = cpseq::snap_to_rational(seq.phases[k], 360))
          rat = r->mod_two_pi().str();
        std::cout << k + 1 << "  " << rat << "  "
                  << cpseq::format_sig12(seq.phases[k] / kDegToRad) << "\n";
      }
      if (!phases_out.empty()) {
        auto out = open_output(phases_out);
        out << "# " << provenance_line(config.str()) << "\n";
        cpseq::write_sequence_file(out, seq);
      }
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      const cpseq::CompositeSequence seq = resolve_sequence(verify_args);
      // recover the second differences from the realized phases
      std::vector<double> big_phi;
      for (int k = 2; k < seq.size(); ++k)
        big_phi.push_back(seq.phases[k] - 2.0 * seq.phases[k - 1] + seq.phases[k - 2]);
      const cpseq::UniversalityReport rep = cpseq::verify_universal(big_phi, verify_j0);
      std::cout << provenance_line(config.str()) << "\n" << rep.to_text();
      return rep.passed ? kExitOk : kExitVerify;
    }

    if (cmd_search->parsed()) {
      const cpseq::SearchResult res = cpseq::search_phases(search_opts);
      std::cout << provenance_line(config.str()) << "\n";
      std::cout << "candidates: " << res.candidates.size() << "\n";
      std::cout << "best_residual: " << cpseq::format_sig12(res.best_residual) << "\n";
      for (const auto& c : res.candidates) std::cout << c.format() << "\n";
      return kExitOk;
    }

    if (cmd_scan->parsed()) {
      const cpseq::CompositeSequence seq = resolve_sequence(scan_args);
      const cpseq::GridSpec grid = to_grid(scan_grid);
      const cpseq::ProfileGrid result = cpseq::scan_profile(seq, grid, !scan_serial);
      auto out = open_output(scan_out);
      cpseq::write_profile_csv(out, result, provenance_line(config.str()));
      if (!scan_json.empty()) {
        auto jout = open_output(scan_json);
        jout << cpseq::profile_json(result, provenance_line(config.str())) << "\n";
      }
      std::cout << "wrote " << scan_out << " (" << result.values.size() << " cells)\n";
      return kExitOk;
    }

    if (cmd_corr->parsed()) {
      const cpseq::CompositeSequence seq = resolve_sequence(corr_args);
      cpseq::PulseSpec base;
      base.omega_peak = cpseq::kTwoPi * corr_rabi_khz * 1e3;
      base.duration = corr_dur_us * 1e-6;
      cpseq::CorrelationPath path;
      path.kappa = corr_kappa;
      path.span_min = -corr_span;
      path.span_max = corr_span;
      path.count = corr_count;
      const auto scan = cpseq::scan_correlated(seq, path, base);
      auto out = open_output(corr_out);
      cpseq::write_correlated_csv(out, scan,
                                  "seq=" + (seq.name.empty() ? std::string("custom") : seq.name) +
                                      " kappa=" + cpseq::format_sig12(corr_kappa) + " " +
                                      provenance_line(config.str()));
      std::cout << "wrote " << corr_out << " (" << scan.size() << " points)\n";
      return kExitOk;
    }

    if (cmd_echo->parsed()) {
      cpseq::EchoProtocol protocol;
      protocol.storage_time = echo_storage_us * 1e-6;
      protocol.inversion_count = echo_inversions;
      if (echo_args.name.empty() && echo_args.law.empty() && echo_args.seq_file.empty()) {
        protocol.inversion_sequence.phases = {0.0};
        protocol.inversion_sequence.name = "single";
      } else {
        protocol.inversion_sequence = resolve_sequence(echo_args);
      }
      protocol.base_pulse.omega_peak = cpseq::kTwoPi * echo_grid.rabi_khz * 1e3;
      protocol.base_pulse.duration = echo_dur_us * 1e-6;
      if (echo_t2_us > 0.0) protocol.decoherence_time = echo_t2_us * 1e-6;

      cpseq::EnsembleSpec ensemble;
      ensemble.detuning_sigma = cpseq::kTwoPi * echo_det_sigma_khz * 1e3;
      ensemble.rabi_scale_sigma = echo_rabi_sigma;
      ensemble.member_count = echo_members;
      ensemble.rng_seed = echo_seed;

      if (echo_map) {
        if (echo_out.empty()) throw CLI::ValidationError("--map needs -o <csv>");
        cpseq::GridSpec grid = to_grid(echo_grid);
        grid.base_pulse = protocol.base_pulse;
        const cpseq::ProfileGrid result =
            cpseq::efficiency_map(protocol, ensemble, grid, echo_normalized, !echo_serial);
        auto out = open_output(echo_out);
        cpseq::write_profile_csv(out, result, provenance_line(config.str()));
        if (!echo_json.empty()) {
          auto jout = open_output(echo_json);
          jout << cpseq::profile_json(result, provenance_line(config.str())) << "\n";
        }
        std::cout << "wrote " << echo_out << " (" << result.values.size() << " cells)\n";
      } else {
        const double eff = cpseq::rephasing_efficiency(protocol, ensemble);
        std::cout << provenance_line(config.str()) << "\n";
        std::cout << "efficiency: " << cpseq::format_sig12(eff) << "\n";
      }
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cpseq::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (residual " << e.residual << ")\n";
    return kExitNumeric;
  } catch (const cpseq::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    // scan kernels report non-convergence through a flattened runtime error
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }

  return kExitUsage;
}
