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

#include <sstream>

#include "gtest/gtest.h"
#include "spskit/models.h"
#include "spskit/sps.h"

using namespace spskit;
using nlohmann::json;

TEST(io, unitary_round_trip) {
    LocalUnitary u = heisenberg_gate(0.3, LocalWindow({2, 5}));
    LocalUnitary back = unitary_from_json(unitary_to_json(u));
    ASSERT_EQ(back.label, u.label);
    ASSERT_EQ(back.window, u.window);
    ASSERT_EQ(back.entries, u.entries);
}

TEST(io, unitary_real_entries) {
    json j = json::parse(R"({"window": [0], "entries": [0, 1, 1, 0]})");
    LocalUnitary x = unitary_from_json(j);
    ASSERT_EQ(x.at(1, 0), Complex(1, 0));
    ASSERT_EQ(build_edit_map(x).classes(), (std::vector<std::vector<std::uint32_t>>{{0, 1}}));
}

TEST(io, unitary_rejects_malformed) {
    ASSERT_THROW(unitary_from_json(json::parse(R"({"entries": [1]})")), ValidationError);
    ASSERT_THROW(unitary_from_json(json::parse(R"({"window": [0], "entries": [1, 0, 0]})")), ValidationError);
    ASSERT_THROW(unitary_from_json(json::parse(R"({"window": [0], "entries": ["a", 0, 0, 1]})")), ValidationError);
    ASSERT_THROW(unitary_from_json(json::parse(R"({"window": [0], "entries": [[1, 0, 0], 0, 0, 1]})")),
                 ValidationError);
}

TEST(io, editmap_json) {
    EditMap m = build_edit_map(iswap_gate(0.2, LocalWindow({0, 1})));
    json j = editmap_to_json(m);
    ASSERT_EQ(j["window"], json::parse("[0, 1]"));
    ASSERT_EQ(j["classes"], json::parse(R"([["00"], ["10", "01"], ["11"]])"));
}

TEST(io, model_from_json_hopping) {
    // Three iSWAPs on a 4-qubit chain, right to left.
    json j;
    j["name"] = "hop4";
    j["n"] = 4;
    j["unitaries"] = json::array();
    for (int i : {2, 1, 0}) {
        j["unitaries"].push_back(unitary_to_json(iswap_gate(0.1, LocalWindow({i, i + 1}))));
    }
    j["steps"] = json::parse("[[[0], [1], [2]]]");
    Model m = model_from_json(j);
    ASSERT_EQ(m.name, "hop4");
    auto sizes = partition_sizes(m.maps);
    std::vector<std::uint64_t> got;
    for (const auto &s : sizes) {
        got.push_back(s.size);
    }
    ASSERT_EQ(got, (std::vector<std::uint64_t>{1, 4, 6, 4, 1}));
}

TEST(io, model_from_json_rejects) {
    json base;
    base["n"] = 2;
    base["unitaries"] = json::array({unitary_to_json(iswap_gate(0.1, LocalWindow({0, 1})))});
    base["steps"] = json::parse("[[[0]]]");
    model_from_json(base);

    json bad_index = base;
    bad_index["steps"] = json::parse("[[[3]]]");
    ASSERT_THROW(model_from_json(bad_index), ValidationError);

    json no_steps = base;
    no_steps["steps"] = json::array();
    ASSERT_THROW(model_from_json(no_steps), ValidationError);

    json too_small = base;
    too_small["n"] = 1;
    ASSERT_THROW(model_from_json(too_small), ValidationError);

    json not_unitary = base;
    not_unitary["unitaries"][0]["entries"][0] = json::array({2.0, 0.0});
    ASSERT_THROW(model_from_json(not_unitary), ValidationError);

    json missing = base;
    missing.erase("n");
    ASSERT_THROW(model_from_json(missing), ValidationError);
}

TEST(io, write_subspace_layout) {
    Model hop = build_hopping(4);
    Subspace g = enumerate_sps(hop.maps, parse_ket("0110"));
    std::ostringstream os;
    write_subspace(os, g, {"spskit test"});
    ASSERT_EQ(os.str(),
              "# spskit test\n"
              "# n=4 seed=0110 size=6\n"
              "1100\n1010\n0110\n1001\n0101\n0011\n");
}

TEST(io, records_round_trip) {
    std::vector<MeasurementRecord> recs{
        {3, 0, 9, 0.01, {1, 1}},
        {3, 1, 9, 0.01, {4, 2, 7}},
    };
    json header = {{"n", 3}, {"base_seed", 9}, {"eps_over_3", 0.01}};
    std::ostringstream os;
    write_records(os, header, recs);
    std::string text = os.str();
    ASSERT_EQ(text.substr(text.find('\n') + 1, text.find('\n', text.find('\n') + 1) - text.find('\n') - 1),
              R"({"ket":"100","p":0,"shot":0})");
    std::istringstream is(text);
    RecordFile f = read_records(is);
    ASSERT_EQ(f.header, header);
    ASSERT_EQ(f.records.size(), 2u);
    ASSERT_EQ(f.records[1].shots, (std::vector<std::uint64_t>{4, 2, 7}));
    ASSERT_EQ(f.records[1].p, 1u);
    ASSERT_EQ(f.records[0].base_seed, 9u);
    ASSERT_DOUBLE_EQ(f.records[0].eps_over_3, 0.01);
}

TEST(io, records_reject_bad_files) {
    std::istringstream empty("");
    ASSERT_THROW(read_records(empty), ValidationError);
    std::istringstream order("{\"n\":2}\n{\"p\":0,\"ket\":\"01\",\"shot\":1}\n");
    ASSERT_THROW(read_records(order), ValidationError);
    std::istringstream ket("{\"n\":2}\n{\"p\":0,\"ket\":\"011\",\"shot\":0}\n");
    ASSERT_THROW(read_records(ket), ValidationError);
    std::istringstream junk("{\"n\":2}\nnot json\n");
    ASSERT_THROW(read_records(junk), ValidationError);
}

TEST(io, version_string) {
    ASSERT_FALSE(std::string(version()).empty());
}
