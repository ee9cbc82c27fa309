// Copyright 2026 The spskit Authors
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

#ifndef SPSKIT_IO_H
#define SPSKIT_IO_H

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spskit/editmap.h"
#include "spskit/models.h"
#include "spskit/sim.h"
#include "spskit/sps.h"

namespace spskit {

const char *version();

nlohmann::json unitary_to_json(const LocalUnitary &u);
/// {label?, window, entries: [[re, im], ...]} with 4^k row-major entries.
LocalUnitary unitary_from_json(const nlohmann::json &j);

/// {label, window, classes: [[pattern ket, ...], ...]}
nlohmann::json editmap_to_json(const EditMap &m);

/// Custom circuit description:
///   {"name": ..., "n": N, "unitaries": [unitary, ...],
///    "steps": [[[gate index, ...] per layer] per step variant]}
Model model_from_json(const nlohmann::json &j, double tol = kDefaultBitTol);

/// One ket per line after '#' header lines.
void write_subspace(std::ostream &out, const Subspace &g, const std::vector<std::string> &header);

/// Measurement file: a JSON header line, then one {p, ket, shot} line per shot.
void write_records(std::ostream &out, const nlohmann::json &header, const std::vector<MeasurementRecord> &records);

struct RecordFile {
    nlohmann::json header;
    std::vector<MeasurementRecord> records;  // grouped by p, ascending
};
RecordFile read_records(std::istream &in);

}  // namespace spskit

#endif
