#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cpseq/echo.hpp"
#include "cpseq/scanner.hpp"
#include "cpseq/sequences.hpp"

namespace cpseq {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sequence file: one header line "n=<int>", then either
//   law: phi2=<rational pi>; Phi=<comma-separated rational pi>
// or
//   phases: <comma-separated rational pi>
// Loading normalizes phi_1 = 0; a warning is collected (not an error) when
// the input violates the gauge.
struct SequenceFile {
  CompositeSequence sequence;
  std::vector<std::string> warnings;
};

SequenceFile read_sequence_file(std::istream& in);
SequenceFile read_sequence_file_path(const std::string& path);
void write_sequence_file(std::ostream& out, const CompositeSequence& seq);

// Two-column sampled envelope: time_seconds amplitude_fraction_of_peak,
// one pair per line, '#' comments permitted.
std::vector<std::pair<double, double>> read_envelope_file(std::istream& in);
std::vector<std::pair<double, double>> read_envelope_file_path(const std::string& path);

// Round to 12 significant digits; keeps text output diff-stable.
std::string format_sig12(double v);

// CSV: '#'-prefixed provenance header, then detuning_hz,duration_s,p12 rows.
void write_profile_csv(std::ostream& out, const ProfileGrid& grid,
                       const std::string& extra_provenance = "");
void write_correlated_csv(std::ostream& out, const std::vector<std::pair<double, double>>& scan,
                          const std::string& header);
// Full-provenance JSON variant of the grid output.
std::string profile_json(const ProfileGrid& grid, const std::string& extra_provenance = "");

}  // namespace cpseq
