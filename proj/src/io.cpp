#include "cpseq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cpseq {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  return out;
}

std::vector<RationalAngle> parse_angle_list(const std::string& s, const char* what) {
  std::vector<RationalAngle> out;
  for (const auto& tok : split(s, ',')) {
    auto r = parse_rational_angle(tok);
    if (!r) throw IoError(std::string("bad ") + what + " token: '" + tok + "'");
    out.push_back(*r);
  }
  return out;
}

}  // namespace

SequenceFile read_sequence_file(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (!line.empty()) return line;
    }
    return "";
  };

  const std::string header = next_line();
  if (header.rfind("n=", 0) != 0) throw IoError("sequence file: expected 'n=<int>' header");
  int n = 0;
  try {
    n = std::stoi(header.substr(2));
  } catch (const std::exception&) {
    throw IoError("sequence file: bad pulse count '" + header + "'");
  }
  if (n < 1) throw IoError("sequence file: pulse count must be >= 1");

  SequenceFile out;
  const std::string body = next_line();
  if (body.rfind("law:", 0) == 0) {
    RationalPhaseLaw law;
    law.n = n;
    bool have_phi2 = false, have_phi = false;
    for (const auto& part : split(body.substr(4), ';')) {
      if (part.rfind("phi2=", 0) == 0) {
        auto r = parse_rational_angle(part.substr(5));
        if (!r) throw IoError("sequence file: bad phi2 value");
        law.phi2 = *r;
        have_phi2 = true;
      } else if (part.rfind("Phi=", 0) == 0) {
        law.big_phi = parse_angle_list(part.substr(4), "Phi");
        have_phi = true;
      }
    }
    if (!have_phi2 || !have_phi) throw IoError("sequence file: law needs phi2= and Phi=");
    if (static_cast<int>(law.big_phi.size()) != n - 2)
      throw IoError("sequence file: law needs exactly n-2 Phi values");
    out.sequence = sequence_from_rational_law(law);
  } else if (body.rfind("phases:", 0) == 0) {
    auto phases = parse_angle_list(body.substr(7), "phase");
    if (static_cast<int>(phases.size()) != n)
      throw IoError("sequence file: need exactly n phases");
    if (phases.front().num != 0) {
      out.warnings.push_back("phi_1 != 0 in input; re-gauged to phi_1 = 0");
      const RationalAngle gauge = phases.front();
      for (auto& p : phases) p = (p - gauge).mod_two_pi();
    } else {
      for (auto& p : phases) p = p.mod_two_pi();
    }
    out.sequence.exact = phases;
    for (const auto& p : phases) out.sequence.phases.push_back(p.radians());
  } else {
    throw IoError("sequence file: expected 'law:' or 'phases:' line");
  }
  return out;
}

SequenceFile read_sequence_file_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sequence file: " + path);
  return read_sequence_file(in);
}

void write_sequence_file(std::ostream& out, const CompositeSequence& seq) {
  out << "n=" << seq.size() << "\n";
  out << "phases: ";
  for (int i = 0; i < seq.size(); ++i) {
    if (i) out << ", ";
    if (seq.exact)
      out << (*seq.exact)[i].str();
    else if (auto r = snap_to_rational(seq.phases[i], 360))
      out << r->mod_two_pi().str();
    else
      out << format_sig12(seq.phases[i]);
  }
  out << "\n";
}

std::vector<std::pair<double, double>> read_envelope_file(std::istream& in) {
  std::vector<std::pair<double, double>> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    double t, a;
    if (!(ls >> t >> a)) throw IoError("envelope file: bad line '" + line + "'");
    out.emplace_back(t, a);
  }
  if (out.empty()) throw IoError("envelope file: no samples");
  return out;
}

std::vector<std::pair<double, double>> read_envelope_file_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open envelope file: " + path);
  return read_envelope_file(in);
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_profile_csv(std::ostream& out, const ProfileGrid& grid,
                       const std::string& extra_provenance) {
  out << "# seq=" << (grid.sequence_name.empty() ? "custom" : grid.sequence_name);
  if (!grid.provenance.empty()) out << " " << grid.provenance;
  if (!extra_provenance.empty()) out << " " << extra_provenance;
  out << "\n";
  out << "detuning_hz,duration_s,p12\n";
  for (int ti = 0; ti < grid.duration.count; ++ti)
    for (int di = 0; di < grid.detuning.count; ++di)
      out << format_sig12(grid.detuning.at(di) / kTwoPi) << "," << format_sig12(grid.duration.at(ti))
          << "," << format_sig12(grid.at(ti, di)) << "\n";
}

void write_correlated_csv(std::ostream& out, const std::vector<std::pair<double, double>>& scan,
                          const std::string& header) {
  if (!header.empty()) out << "# " << header << "\n";
  out << "rabi_error,p12\n";
  for (const auto& [e, p] : scan) out << format_sig12(e) << "," << format_sig12(p) << "\n";
}

std::string profile_json(const ProfileGrid& grid, const std::string& extra_provenance) {
  nlohmann::ordered_json j;
  j["sequence"] = grid.sequence_name;
  j["provenance"]["engine"] = grid.provenance;
  if (!extra_provenance.empty()) j["provenance"]["run"] = extra_provenance;
  j["detuning_hz"] = {{"min", grid.detuning.min / kTwoPi},
                      {"max", grid.detuning.max / kTwoPi},
                      {"count", grid.detuning.count}};
  j["duration_s"] = {{"min", grid.duration.min}, {"max", grid.duration.max},
                     {"count", grid.duration.count}};
  auto& vals = j["p12"] = nlohmann::ordered_json::array();
  for (int ti = 0; ti < grid.duration.count; ++ti) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int di = 0; di < grid.detuning.count; ++di)
      row.push_back(std::stod(format_sig12(grid.at(ti, di))));
    vals.push_back(std::move(row));
  }
  return j.dump(2);
}

}  // namespace cpseq
