// Copyright 2026 The camdp Authors
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

#include "camdp/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "camdp/errors.hpp"

namespace camdp {

using nlohmann::json;

namespace {

// Flattens a nested array of the given rank, checking every level's length.
void flatten(const json& node, const std::vector<int>& shape, std::size_t level,
             const std::string& name, std::vector<double>& out) {
  if (!node.is_array() || node.size() != static_cast<std::size_t>(shape[level])) {
    throw ValidationError(
        "model field '" + name + "' has wrong shape at depth " +
            std::to_string(level),
        {name + ": expected " + std::to_string(shape[level]) +
         " entries at depth " + std::to_string(level)});
  }
  for (const auto& child : node) {
    if (level + 1 == shape.size()) {
      if (!child.is_number()) {
        throw ValidationError("model field '" + name + "' has a non-numeric entry",
                              {name + ": non-numeric entry"});
      }
      out.push_back(child.get<double>());
    } else {
      flatten(child, shape, level + 1, name, out);
    }
  }
}

json nest(const std::vector<double>& flat, const std::vector<int>& shape,
          std::size_t level, std::size_t& cursor) {
  json arr = json::array();
  for (int k = 0; k < shape[level]; ++k) {
    if (level + 1 == shape.size()) {
      arr.push_back(flat[cursor++]);
    } else {
      arr.push_back(nest(flat, shape, level + 1, cursor));
    }
  }
  return arr;
}

int read_dim(const json& dims, const char* key) {
  if (!dims.contains(key) || !dims[key].is_number_integer()) {
    throw ValidationError(std::string("dims.") + key + " missing or not an integer",
                          {std::string("dims.") + key + " missing"});
  }
  const int v = dims[key].get<int>();
  if (v < 1) {
    throw ValidationError(std::string("dims.") + key + " must be positive",
                          {std::string("dims.") + key + " = " + std::to_string(v)});
  }
  return v;
}

}  // namespace

FactoredCamdp parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("model document is not valid JSON: ") + e.what(),
                          {"parse error"});
  }
  if (!doc.is_object() || !doc.contains("dims")) {
    throw ValidationError("model document lacks a 'dims' object", {"missing dims"});
  }
  FactoredCamdp m;
  const json& dims = doc["dims"];
  m.dims = Dims{read_dim(dims, "ns0"), read_dim(dims, "nss"), read_dim(dims, "ns1"),
                read_dim(dims, "na0"), read_dim(dims, "na1")};
  const Dims& d = m.dims;

  const std::vector<int> shape0 = {d.na0, d.ns0, d.ns0};
  const std::vector<int> shapes = {d.na0, d.na1, d.nss, d.nss};
  const std::vector<int> shape1 = {d.na1, d.ns1, d.ns1};
  const std::pair<const char*, std::pair<std::vector<double>*, const std::vector<int>*>>
      fields[] = {{"p0", {&m.p0, &shape0}}, {"ps", {&m.ps, &shapes}},
                  {"p1", {&m.p1, &shape1}}, {"r0", {&m.r0, &shape0}},
                  {"rs", {&m.rs, &shapes}}, {"r1", {&m.r1, &shape1}}};
  for (const auto& [key, target] : fields) {
    if (!doc.contains(key)) {
      throw ValidationError(std::string("model document lacks field '") + key + "'",
                            {std::string("missing ") + key});
    }
    flatten(doc[key], *target.second, 0, key, *target.first);
  }

  ValidationReport report = validate(m);
  if (!report.ok()) {
    throw ValidationError("model failed validation (" +
                              std::to_string(report.violations.size()) +
                              " violations)",
                          report.messages());
  }
  renormalize_rows(m);
  return m;
}

FactoredCamdp load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string model_to_json(const FactoredCamdp& m, const std::string& extra_json) {
  const Dims& d = m.dims;
  json doc = json::object();
  if (!extra_json.empty()) {
    json extra = json::parse(extra_json);
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  }
  doc["dims"] = {{"ns0", d.ns0}, {"nss", d.nss}, {"ns1", d.ns1},
                 {"na0", d.na0}, {"na1", d.na1}};
  auto put = [&](const char* key, const std::vector<double>& flat,
                 const std::vector<int>& shape) {
    std::size_t cursor = 0;
    doc[key] = nest(flat, shape, 0, cursor);
  };
  put("p0", m.p0, {d.na0, d.ns0, d.ns0});
  put("ps", m.ps, {d.na0, d.na1, d.nss, d.nss});
  put("p1", m.p1, {d.na1, d.ns1, d.ns1});
  put("r0", m.r0, {d.na0, d.ns0, d.ns0});
  put("rs", m.rs, {d.na0, d.na1, d.nss, d.nss});
  put("r1", m.r1, {d.na1, d.ns1, d.ns1});
  return doc.dump(2);
}

void save_model(const FactoredCamdp& model, const std::filesystem::path& path,
                const std::string& extra_json) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file " + path.string());
  out << model_to_json(model, extra_json) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace camdp
