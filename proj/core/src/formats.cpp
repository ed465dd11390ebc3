// Copyright 2026 The matshare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matshare/formats.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "matshare/error.hpp"

namespace matshare::formats {
namespace {

using json = nlohmann::ordered_json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump() + "\n"; }

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

bool is_decimal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

json scalar_to_json(const Scalar& s) { return s.get_str(); }

Scalar scalar_from_json(const json& j) {
  if (!j.is_string()) throw FormatError("scalar must be a decimal string");
  const std::string text = j.get<std::string>();
  const auto slash = text.find('/');
  const std::string_view whole(text);
  const bool ok = slash == std::string::npos
                      ? is_decimal(whole)
                      : is_decimal(whole.substr(0, slash)) &&
                            is_decimal(whole.substr(slash + 1)) &&
                            whole[slash + 1] != '-';
  if (!ok) throw FormatError("not a decimal scalar: '" + text + "'");
  Scalar s;
  if (s.set_str(text, 10) != 0 || sgn(s.get_den()) == 0) {
    throw FormatError("not a decimal scalar: '" + text + "'");
  }
  s.canonicalize();
  return s;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (const Scalar& s : m.row(i)) row.push_back(scalar_to_json(s));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw FormatError("matrix must be a non-empty array of rows");
  }
  Matrix m(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j.size()) {
      throw FormatError("matrix must be square");
    }
    for (std::size_t c = 0; c < j.size(); ++c) {
      m(i, c) = scalar_from_json(j[i][c]);
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const Scalar& s : v.entries()) out.push_back(scalar_to_json(s));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw FormatError("vector must be a non-empty array");
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_from_json(j[i]);
  return v;
}

json bits_to_json(const BinaryVector& v) {
  json out = json::array();
  for (std::uint8_t b : v.bits()) out.push_back(static_cast<int>(b));
  return out;
}

BinaryVector bits_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw FormatError("binary vector must be a non-empty array");
  }
  std::vector<std::uint8_t> bits;
  for (const json& b : j) {
    if (!b.is_number_unsigned() || b.get<unsigned>() > 1) {
      throw FormatError("binary vector entries must be 0 or 1");
    }
    bits.push_back(static_cast<std::uint8_t>(b.get<unsigned>()));
  }
  return BinaryVector(std::move(bits));
}

json payload_to_json(const Payload& p) {
  return std::visit(
      [](const auto& value) -> json {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, Matrix>) {
          return matrix_to_json(value);
        } else if constexpr (std::is_same_v<T, Vector>) {
          return vector_to_json(value);
        } else if constexpr (std::is_same_v<T, BinaryVector>) {
          return bits_to_json(value);
        } else if constexpr (std::is_same_v<T, Verdict>) {
          return value.accepted;
        } else {
          return value.index;
        }
      },
      p);
}

// The JSON shape identifies the payload type unambiguously.
Payload payload_from_json(const json& j) {
  if (j.is_boolean()) return Verdict{j.get<bool>()};
  if (j.is_number_unsigned()) return IndexPointer{j.get<std::size_t>()};
  if (j.is_array() && !j.empty()) {
    if (j.front().is_array()) return matrix_from_json(j);
    if (j.front().is_string()) return vector_from_json(j);
    if (j.front().is_number()) return bits_from_json(j);
  }
  throw FormatError("unrecognised payload");
}

std::size_t index_field(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number_unsigned()) {
    throw FormatError(std::string("field '") + key +
                      "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> index_list(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_array()) throw FormatError(std::string("'") + key + "' must be an array");
  std::vector<std::size_t> out;
  for (const json& e : v) {
    if (!e.is_number_unsigned()) {
      throw FormatError(std::string("'") + key + "' entries must be indices");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

Integer integer_from_json(const json& j) {
  const Scalar s = scalar_from_json(j);
  if (!is_integer(s)) throw FormatError("expected an integer");
  return s.get_num();
}

}  // namespace

std::string write_bulletin(const Bulletin& bulletin) {
  json j;
  j["version"] = kBulletinVersion;
  j["r"] = bulletin.r;
  j["k"] = bulletin.k;
  j["n"] = bulletin.n;
  json matrices = json::array();
  for (const Matrix& m : bulletin.matrices) matrices.push_back(matrix_to_json(m));
  j["matrices"] = std::move(matrices);
  json u_prime = json::array();
  for (const Vector& v : bulletin.u_prime) u_prime.push_back(vector_to_json(v));
  j["u_prime"] = std::move(u_prime);
  return dump(j);
}

Bulletin read_bulletin(std::string_view text) {
  const json j = parse(text);
  if (field<int>(j, "version") != kBulletinVersion) {
    throw FormatError("unsupported bulletin version");
  }
  Bulletin b;
  b.r = index_field(j, "r");
  b.k = index_field(j, "k");
  b.n = index_field(j, "n");
  for (const json& m : member(j, "matrices")) {
    b.matrices.push_back(matrix_from_json(m));
  }
  for (const json& v : member(j, "u_prime")) {
    b.u_prime.push_back(vector_from_json(v));
  }
  if (b.matrices.size() != b.k) throw FormatError("bulletin must list k matrices");
  if (b.u_prime.size() != b.n) throw FormatError("bulletin must list n check vectors");
  for (const Matrix& m : b.matrices) {
    if (m.dim() != b.r) throw FormatError("bulletin matrix has wrong dimension");
  }
  for (const Vector& v : b.u_prime) {
    if (v.dim() != b.r) throw FormatError("bulletin vector has wrong dimension");
  }
  return b;
}

std::string write_share(const Share& share) {
  json j;
  j["participant"] = share.participant;
  j["matrix_index"] = share.matrix_index;
  j["ring"] = share.ring;
  j["u"] = bits_to_json(share.u);
  return dump(j);
}

Share read_share(std::string_view text) {
  const json j = parse(text);
  Share s;
  s.participant = index_field(j, "participant");
  s.matrix_index = index_field(j, "matrix_index");
  s.ring = index_list(j, "ring");
  s.u = bits_from_json(member(j, "u"));
  return s;
}

std::string write_instance(const Instance& instance) {
  json j;
  j["dealer_private"] = true;
  j["sigma"] = instance.sigma;
  j["secret"] = matrix_to_json(instance.secret);
  return dump(j);
}

Instance read_instance(std::string_view text, const Bulletin& bulletin) {
  const json j = parse(text);
  Instance instance{bulletin.matrices, index_list(j, "sigma"),
                    matrix_from_json(member(j, "secret"))};
  for (std::size_t index : instance.sigma) {
    if (index >= bulletin.matrices.size()) {
      throw FormatError("sigma points outside the public set");
    }
  }
  return instance;
}

std::string write_transcript(const Transcript& transcript) {
  json events = json::array();
  for (const Envelope& e : transcript.envelopes()) {
    json ev;
    ev["step"] = e.step;
    ev["from"] = e.from.label();
    ev["to"] = e.to.label();
    ev["visibility"] = std::string(to_string(e.visibility));
    ev["kind"] = std::string(to_string(e.kind));
    ev["payload"] = payload_to_json(e.payload);
    events.push_back(std::move(ev));
  }
  json j;
  j["events"] = std::move(events);
  return dump(j);
}

Transcript read_transcript(std::string_view text) {
  const json j = parse(text);
  std::vector<Envelope> envelopes;
  for (const json& ev : member(j, "events")) {
    envelopes.push_back(Envelope{
        index_field(ev, "step"),
        Address::parse(field<std::string>(ev, "from")),
        Address::parse(field<std::string>(ev, "to")),
        parse_visibility(field<std::string>(ev, "visibility")),
        parse_message_kind(field<std::string>(ev, "kind")),
        payload_from_json(member(ev, "payload")),
    });
  }
  return Transcript(std::move(envelopes));
}

std::string write_attack_report(const AttackReport& report) {
  json j;
  j["mode"] = report.mode;
  j["space"] = json{{"multiset", report.multiset.get_str()},
                    {"ordered_distinct", report.ordered_distinct.get_str()},
                    {"ordered_rep", report.ordered_rep.get_str()}};
  j["solutions"] = report.solutions;
  json hits = json::array();
  for (const RatioHit& h : report.ratio_hits) {
    hits.push_back(
        json{{"position", h.position}, {"matrix_index", h.matrix_index}});
  }
  j["ratio_hits"] = std::move(hits);
  j["nodes_explored"] = report.nodes_explored;
  j["elapsed_ms"] = report.elapsed_ms;
  return dump(j);
}

AttackReport read_attack_report(std::string_view text) {
  const json j = parse(text);
  AttackReport r;
  r.mode = field<std::string>(j, "mode");
  const json& space = member(j, "space");
  r.multiset = integer_from_json(member(space, "multiset"));
  r.ordered_distinct = integer_from_json(member(space, "ordered_distinct"));
  r.ordered_rep = integer_from_json(member(space, "ordered_rep"));
  r.solutions =
      field<std::vector<std::vector<std::size_t>>>(j, "solutions");
  for (const json& h : member(j, "ratio_hits")) {
    r.ratio_hits.push_back(
        RatioHit{index_field(h, "position"), index_field(h, "matrix_index")});
  }
  if (j.contains("nodes_explored")) {
    r.nodes_explored = field<std::uint64_t>(j, "nodes_explored");
  }
  if (j.contains("elapsed_ms")) r.elapsed_ms = field<double>(j, "elapsed_ms");
  return r;
}

std::string matrix_digest(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : matrix_to_json(m).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw UsageError("failed writing " + path.string());
}

}  // namespace matshare::formats
