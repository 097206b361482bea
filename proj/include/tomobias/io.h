// Copyright 2026 The tomobias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOMOBIAS_IO_H_
#define TOMOBIAS_IO_H_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tomobias/harness.h"
#include "tomobias/scheme.h"

namespace tomobias {

/// Malformed counts file; the message names the offending field.
class CountsFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CountsFile {
  int num_qubits = 0;
  std::int64_t events_per_setting = 0;
  FrequencyData data;  // canonical setting order
};

/// Parses {"n", "N_s", "settings": [{"bases", "counts"}]}. Settings may come
/// in any order but each of the 3^n must appear exactly once.
CountsFile parse_counts(const std::string& text, const std::string& source = "<input>");
CountsFile load_counts(const std::string& path);

/// Serializes counts in canonical setting order.
std::string counts_to_json(const FrequencyData& data, const TomographyScheme& scheme);
void save_counts(const std::string& path, const FrequencyData& data,
                 const TomographyScheme& scheme);

/// Long-form table: mode,state,n,N_s,trial,estimator,functional,value,converged,cert_residual.
void write_records_csv(std::ostream& out, const ExperimentResult& result);
void write_records_json(std::ostream& out, const ExperimentResult& result);
/// Config echo, version, aggregates and diagnostics. Worker count is left
/// out so the bytes do not depend on it.
void write_summary_json(std::ostream& out, const ExperimentResult& result);

std::string report_to_json(const FileReport& report, const std::string& counts_path);

/// printf "%.17g".
std::string format_double(double v);

}  // namespace tomobias

#endif  // TOMOBIAS_IO_H_
