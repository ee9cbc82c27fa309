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

#include "spskit/io.h"

#include <istream>
#include <map>
#include <memory>
#include <ostream>

namespace spskit {

using nlohmann::json;

const char *version() {
    return SPSKIT_VERSION;
}

json unitary_to_json(const LocalUnitary &u) {
    json entries = json::array();
    for (const auto &z : u.entries) {
        entries.push_back({z.real(), z.imag()});
    }
    return {{"label", u.label}, {"window", u.window.indices()}, {"entries", entries}};
}

LocalUnitary unitary_from_json(const json &j) {
    try {
        std::vector<int> window = j.at("window").get<std::vector<int>>();
        std::vector<Complex> entries;
        for (const auto &e : j.at("entries")) {
            if (e.is_number()) {
                entries.emplace_back(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                entries.emplace_back(e[0].get<double>(), e[1].get<double>());
            } else {
                throw ValidationError("matrix entries must be numbers or [re, im] pairs");
            }
        }
        std::string label = j.value("label", std::string{});
        return LocalUnitary(label, LocalWindow(window), std::move(entries));
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed unitary: ") + e.what());
    }
}

json editmap_to_json(const EditMap &m) {
    const int k = static_cast<int>(m.window().size());
    json classes = json::array();
    for (const auto &cls : m.classes()) {
        json c = json::array();
        for (auto p : cls) {
            c.push_back(format_ket(p, k));
        }
        classes.push_back(c);
    }
    return {{"label", m.label()}, {"window", m.window().indices()}, {"classes", classes}};
}

Model model_from_json(const json &j, double tol) {
    try {
        const int n = j.at("n").get<int>();
        if (n < 1 || n > kMaxQubits) {
            throw ValidationError("n must be in [1, 64]");
        }
        std::vector<GatePtr> gates;
        for (const auto &u : j.at("unitaries")) {
            gates.push_back(std::make_shared<LocalUnitary>(unitary_from_json(u)));
            gates.back()->window.check_fits(n);
        }
        std::vector<std::vector<Layer>> variants;
        for (const auto &step : j.at("steps")) {
            std::vector<Layer> layers;
            for (const auto &layer : step) {
                Layer l;
                for (const auto &idx : layer) {
                    auto i = idx.get<size_t>();
                    if (i >= gates.size()) {
                        throw ValidationError("step references unknown unitary " + std::to_string(i));
                    }
                    l.push_back(gates[i]);
                }
                layers.push_back(std::move(l));
            }
            variants.push_back(std::move(layers));
        }
        if (variants.empty()) {
            throw ValidationError("circuit needs at least one step");
        }
        for (const auto &g : gates) {
            double r = g->unitarity_residual();
            if (r > kDefaultUnitarityTol) {
                throw ValidationError("unitary '" + g->label + "' is not unitary (residual " + std::to_string(r) + ")");
            }
        }
        return model_from_circuit(j.value("name", std::string("custom")), Circuit(n, std::move(variants)), tol);
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed circuit file: ") + e.what());
    }
}

void write_subspace(std::ostream &out, const Subspace &g, const std::vector<std::string> &header) {
    for (const auto &h : header) {
        out << "# " << h << "\n";
    }
    out << "# n=" << g.n() << " seed=" << format_ket(g.seed()) << " size=" << g.size() << "\n";
    for (auto b : g.sorted_members()) {
        out << format_ket(b, g.n()) << "\n";
    }
}

void write_records(std::ostream &out, const json &header, const std::vector<MeasurementRecord> &records) {
    out << header.dump() << "\n";
    for (const auto &rec : records) {
        for (size_t s = 0; s < rec.shots.size(); s++) {
            json line = {{"p", rec.p}, {"ket", format_ket(rec.shots[s], rec.n)}, {"shot", s}};
            out << line.dump() << "\n";
        }
    }
}

RecordFile read_records(std::istream &in) {
    RecordFile f;
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("empty measurement file");
    }
    try {
        f.header = json::parse(line);
        const int n = f.header.at("n").get<int>();
        const auto seed = f.header.value("base_seed", std::uint64_t{0});
        const double eps3 = f.header.value("eps_over_3", 0.0);
        std::map<std::uint64_t, MeasurementRecord> by_p;
        size_t lineno = 1;
        while (std::getline(in, line)) {
            lineno++;
            if (line.empty()) {
                continue;
            }
            json j = json::parse(line);
            auto p = j.at("p").get<std::uint64_t>();
            auto shot = j.at("shot").get<std::uint64_t>();
            BasisState b = parse_ket(j.at("ket").get<std::string>(), n);
            auto &rec = by_p[p];
            if (rec.shots.empty()) {
                rec = MeasurementRecord{n, p, seed, eps3, {}};
            }
            if (shot != rec.shots.size()) {
                throw ValidationError("line " + std::to_string(lineno) + ": shots out of order");
            }
            rec.shots.push_back(b.code);
        }
        for (auto &[p, rec] : by_p) {
            f.records.push_back(std::move(rec));
        }
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed measurement file: ") + e.what());
    }
    return f;
}

}  // namespace spskit
