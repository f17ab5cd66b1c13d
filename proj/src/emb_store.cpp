// Copyright 2026 The stylegap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stylegap/emb_store.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "stylegap/error.hpp"

namespace stylegap {
namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(const std::string& in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  }
  return v;
}

Error schema(const std::string& message, ErrorContext context = {}) {
  return Error(ErrorCode::kSchemaError, message, std::move(context));
}

// ---------------------------------------------------------------------------
// JSON field helpers
// ---------------------------------------------------------------------------

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw schema("unexpected field '" + key + "' in " + where, {{"field", key}});
    }
  }
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw schema(where + ": field '" + key + "' must be a string", {{"field", key}});
  }
  return it->get<std::string>();
}

std::int64_t get_nonneg_int(const json& value, const std::string& what) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw schema(what + " must be a non-negative integer");
  }
  return value.get<std::int64_t>();
}

int parse_set_index(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw schema(where + ": descriptor set index must be an integer");
  auto k = value.get<std::int64_t>();
  if (k < 1 || k > kDescriptorSets) {
    throw schema(where + ": descriptor set index " + std::to_string(k) + " outside 1..5");
  }
  return static_cast<int>(k);
}

ConditionKey parse_condition(const json& value, const std::string& where) {
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "baseline") return ConditionKey::baseline();
    if (s == "artist_name") return ConditionKey::artist_name();
    throw schema(where + ": unknown condition '" + s + "'");
  }
  if (value.is_object() && value.size() == 1) {
    if (value.contains("styled")) return ConditionKey::styled(parse_set_index(value["styled"], where));
    if (value.contains("cross_styled")) {
      const json& cs = value["cross_styled"];
      if (!cs.is_object()) throw schema(where + ": cross_styled must be an object");
      reject_unknown_keys(cs, {"source", "set"}, where + " cross_styled");
      if (!cs.contains("set")) throw schema(where + ": cross_styled needs 'set'");
      return ConditionKey::cross_styled(get_string(cs, "source", where + " cross_styled"),
                                        parse_set_index(cs["set"], where));
    }
  }
  throw schema(where + ": malformed condition " + value.dump());
}

json condition_to_json(const ConditionKey& c) {
  switch (c.kind) {
    case ConditionKind::kBaseline: return "baseline";
    case ConditionKind::kArtistName: return "artist_name";
    case ConditionKind::kStyled: return json{{"styled", c.set_index}};
    case ConditionKind::kCrossStyled:
      return json{{"cross_styled", {{"source", c.source_artist}, {"set", c.set_index}}}};
  }
  return nullptr;
}

ClipRecord parse_record(const json& value, const std::string& artist, ClipRole expected_role,
                        const std::string& where) {
  if (!value.is_object()) throw schema(where + " must be an object");
  reject_unknown_keys(value,
                      {"clip_id", "artist", "role", "condition", "seed", "space_tag", "path",
                       "n_rows", "metadata"},
                      where);
  ClipRecord rec;
  rec.clip_id = get_string(value, "clip_id", where);
  if (rec.clip_id.empty()) throw schema(where + ": empty clip_id");
  const std::string at = where + " (" + rec.clip_id + ")";
  ErrorContext ctx = {{"artist", artist}, {"clip_id", rec.clip_id}};

  rec.artist = value.contains("artist") ? get_string(value, "artist", at) : artist;
  if (rec.artist != artist) {
    throw schema(at + ": artist '" + rec.artist + "' does not match block '" + artist + "'", ctx);
  }
  const std::string role = get_string(value, "role", at);
  if (role == "generated") {
    rec.role = ClipRole::kGenerated;
  } else if (role == "reference") {
    rec.role = ClipRole::kReference;
  } else {
    throw schema(at + ": role must be 'generated' or 'reference'", ctx);
  }
  if (rec.role != expected_role) throw schema(at + ": role '" + role + "' in the wrong list", ctx);

  if (rec.role == ClipRole::kGenerated) {
    if (!value.contains("condition") || !value.contains("seed")) {
      throw schema(at + ": generated records need 'condition' and 'seed'", ctx);
    }
    try {
      rec.condition = parse_condition(value["condition"], at);
      rec.seed = get_nonneg_int(value["seed"], at + " seed");
    } catch (const Error& e) {
      throw e.with_context(ctx);
    }
  } else if (value.contains("condition") || value.contains("seed")) {
    throw schema(at + ": reference records carry no condition or seed", ctx);
  }

  rec.space_tag = get_string(value, "space_tag", at);
  if (rec.space_tag.empty()) throw schema(at + ": empty space_tag", ctx);
  rec.path = get_string(value, "path", at);
  if (value.contains("n_rows")) {
    rec.n_rows = get_nonneg_int(value["n_rows"], at + " n_rows");
  }
  if (value.contains("metadata")) rec.metadata = value["metadata"].dump();
  return rec;
}

json record_to_json(const ClipRecord& rec) {
  json out = {{"clip_id", rec.clip_id},
              {"artist", rec.artist},
              {"role", rec.role == ClipRole::kGenerated ? "generated" : "reference"},
              {"space_tag", rec.space_tag},
              {"path", rec.path}};
  if (rec.condition) out["condition"] = condition_to_json(*rec.condition);
  if (rec.seed) out["seed"] = *rec.seed;
  if (rec.n_rows) out["n_rows"] = *rec.n_rows;
  if (!rec.metadata.empty()) out["metadata"] = json::parse(rec.metadata);
  return out;
}

std::string seed_str(std::int64_t seed) { return std::to_string(seed); }

}  // namespace

// ---------------------------------------------------------------------------
// EmbeddingMatrix and EMB1
// ---------------------------------------------------------------------------

void EmbeddingMatrix::validate() const {
  if (rows.rows() < 1 || rows.cols() < 1) {
    throw schema("embedding matrix must have at least one row and one column");
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    double norm2 = 0.0;
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      const float v = rows(i, j);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFiniteValue,
                    "non-finite value at row " + std::to_string(i) + ", column " +
                        std::to_string(j),
                    {{"row", std::to_string(i)}});
      }
      norm2 += static_cast<double>(v) * static_cast<double>(v);
    }
    if (!(norm2 > 0.0)) {
      throw Error(ErrorCode::kZeroNormRow, "row " + std::to_string(i) + " has zero norm",
                  {{"row", std::to_string(i)}});
    }
  }
}

Eigen::VectorXd EmbeddingMatrix::mean_row() const {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) sum[j] += static_cast<double>(rows(i, j));
  }
  return sum / static_cast<double>(rows.rows());
}

bool EmbeddingMatrix::operator==(const EmbeddingMatrix& other) const {
  if (space_tag != other.space_tag || rows.rows() != other.rows.rows() ||
      rows.cols() != other.rows.cols()) {
    return false;
  }
  for (Eigen::Index i = 0; i < rows.size(); ++i) {
    if (std::bit_cast<std::uint32_t>(rows.data()[i]) !=
        std::bit_cast<std::uint32_t>(other.rows.data()[i])) {
      return false;
    }
  }
  return true;
}

std::string encode_emb1(const EmbeddingMatrix& matrix) {
  matrix.validate();
  std::string out;
  out.reserve(kEmb1FixedHeaderBytes + matrix.space_tag.size() +
              static_cast<std::size_t>(matrix.rows.size()) * 4);
  out.append(kMagic, 4);
  put_u32(out, kEmb1Version);
  put_u32(out, static_cast<std::uint32_t>(matrix.dim()));
  put_u32(out, static_cast<std::uint32_t>(matrix.count()));
  put_u32(out, static_cast<std::uint32_t>(matrix.space_tag.size()));
  out.append(matrix.space_tag);
  for (Eigen::Index i = 0; i < matrix.rows.size(); ++i) {
    put_u32(out, std::bit_cast<std::uint32_t>(matrix.rows.data()[i]));
  }
  return out;
}

EmbeddingMatrix decode_emb1(const std::string& bytes) {
  if (bytes.size() < 4 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw Error(ErrorCode::kBadMagic, "missing EMB1 magic");
  }
  if (bytes.size() < kEmb1FixedHeaderBytes) {
    throw Error(ErrorCode::kTruncatedPayload, "EMB1 header is truncated");
  }
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kEmb1Version) {
    throw Error(ErrorCode::kVersionUnsupported,
                "EMB1 version " + std::to_string(version) + " is not supported");
  }
  const std::uint64_t dim = get_u32(bytes, 8);
  const std::uint64_t count = get_u32(bytes, 12);
  const std::uint64_t tag_len = get_u32(bytes, 16);
  if (bytes.size() < kEmb1FixedHeaderBytes + tag_len) {
    throw Error(ErrorCode::kTruncatedPayload, "EMB1 space tag is truncated");
  }
  const std::uint64_t payload = count * dim * 4;
  const std::uint64_t expected = kEmb1FixedHeaderBytes + tag_len + payload;
  if (bytes.size() < expected) {
    throw Error(ErrorCode::kTruncatedPayload,
                "EMB1 payload has " + std::to_string(bytes.size() - kEmb1FixedHeaderBytes - tag_len) +
                    " bytes, header declares " + std::to_string(payload));
  }
  if (bytes.size() > expected) {
    throw schema("EMB1 file has " + std::to_string(bytes.size() - expected) + " trailing bytes");
  }

  EmbeddingMatrix m;
  m.space_tag = bytes.substr(kEmb1FixedHeaderBytes, tag_len);
  m.rows.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim));
  std::size_t offset = kEmb1FixedHeaderBytes + tag_len;
  for (Eigen::Index i = 0; i < m.rows.size(); ++i, offset += 4) {
    m.rows.data()[i] = std::bit_cast<float>(get_u32(bytes, offset));
  }
  m.validate();
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string(), {{"path", path.string()}});
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failed for " + path.string(), {{"path", path.string()}});
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIoFailure, "cannot open " + tmp.string() + " for writing",
                  {{"path", path.string()}});
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::kIoFailure, "write failed for " + path.string(), {{"path", path.string()}});
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoFailure, "cannot rename into " + path.string(), {{"path", path.string()}});
  }
}

EmbeddingMatrix read_emb1(const std::filesystem::path& path) {
  try {
    return decode_emb1(read_file(path));
  } catch (const Error& e) {
    throw e.with_context({{"path", path.string()}});
  }
}

void write_emb1(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
  write_file_atomic(path, encode_emb1(matrix));
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

const ArtistBlock& Manifest::artist(std::string_view name) const {
  for (const auto& a : artists) {
    if (a.name == name) return a;
  }
  throw Error(ErrorCode::kMissingCondition, "artist '" + std::string(name) + "' not in manifest",
              {{"artist", std::string(name)}});
}

const EmbeddingMatrix& Manifest::embedding(const ClipRecord& record) const {
  auto it = embeddings.find(record.clip_id);
  if (it == embeddings.end()) {
    throw Error(ErrorCode::kMissingEmbeddingFile, "no embedding loaded for " + record.clip_id,
                {{"clip_id", record.clip_id}});
  }
  return it->second;
}

std::vector<std::string> Manifest::spaces(std::string_view name) const {
  std::set<std::string> tags;
  const ArtistBlock& a = artist(name);
  for (const auto& r : a.references) tags.insert(r.space_tag);
  for (const auto& r : a.generated) tags.insert(r.space_tag);
  return {tags.begin(), tags.end()};
}

std::vector<std::string> Manifest::all_spaces() const {
  std::set<std::string> tags;
  for (const auto& a : artists) {
    for (const auto& s : spaces(a.name)) tags.insert(s);
  }
  return {tags.begin(), tags.end()};
}

std::vector<const ClipRecord*> Manifest::generated(std::string_view name, std::string_view space,
                                                   const ConditionKey& condition) const {
  std::vector<const ClipRecord*> out;
  for (const auto& r : artist(name).generated) {
    if (r.space_tag == space && r.condition == condition) out.push_back(&r);
  }
  std::stable_sort(out.begin(), out.end(), [](const ClipRecord* x, const ClipRecord* y) {
    return *x->seed < *y->seed;
  });
  return out;
}

std::vector<const ClipRecord*> Manifest::references(std::string_view name,
                                                    std::string_view space) const {
  std::vector<const ClipRecord*> out;
  for (const auto& r : artist(name).references) {
    if (r.space_tag == space) out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), [](const ClipRecord* x, const ClipRecord* y) {
    return x->clip_id < y->clip_id;
  });
  return out;
}

bool Manifest::operator==(const Manifest& other) const {
  return version == other.version && seeds == other.seeds &&
         n_references == other.n_references && artists == other.artists &&
         embeddings == other.embeddings;
}

std::vector<SeedRow> check_matched_seeds(const Manifest& manifest, const ArtistBlock& artist,
                                         std::string_view space) {
  // Column 0 baseline, 1 artist-name, 2..6 styled sets.
  std::map<std::int64_t, std::array<std::vector<std::string>, 2 + kDescriptorSets>> cells;
  // source -> seed -> set -> clip ids
  std::map<std::string, std::map<std::int64_t, std::array<std::vector<std::string>, kDescriptorSets>>>
      cross;
  const std::set<std::int64_t> declared(manifest.seeds.begin(), manifest.seeds.end());
  const std::string space_str(space);

  for (const auto& r : artist.generated) {
    if (r.space_tag != space) continue;
    const ErrorContext ctx = {{"artist", artist.name},
                              {"space", space_str},
                              {"seed", seed_str(*r.seed)},
                              {"clip_id", r.clip_id}};
    if (!declared.count(*r.seed)) {
      throw Error(ErrorCode::kMatchedSeedViolation,
                  "clip " + r.clip_id + " uses undeclared seed " + seed_str(*r.seed), ctx);
    }
    const ConditionKey& c = *r.condition;
    switch (c.kind) {
      case ConditionKind::kBaseline: cells[*r.seed][0].push_back(r.clip_id); break;
      case ConditionKind::kArtistName: cells[*r.seed][1].push_back(r.clip_id); break;
      case ConditionKind::kStyled: cells[*r.seed][1 + c.set_index].push_back(r.clip_id); break;
      case ConditionKind::kCrossStyled:
        cross[c.source_artist][*r.seed][c.set_index - 1].push_back(r.clip_id);
        break;
    }
  }

  std::vector<SeedRow> rows;
  for (std::int64_t seed : manifest.seeds) {
    SeedRow row;
    row.seed = seed;
    auto& seed_cells = cells[seed];
    for (std::size_t col = 0; col < seed_cells.size(); ++col) {
      const std::string cond = col == 0   ? "baseline"
                               : col == 1 ? "artist_name"
                                          : "styled_" + std::to_string(col - 1);
      const auto& ids = seed_cells[col];
      if (ids.size() != 1) {
        throw Error(ErrorCode::kMatchedSeedViolation,
                    "artist '" + artist.name + "', space '" + space_str + "': seed " +
                        seed_str(seed) + " has " + std::to_string(ids.size()) + " " + cond +
                        " records, expected 1",
                    {{"artist", artist.name},
                     {"space", space_str},
                     {"seed", seed_str(seed)},
                     {"condition", cond}});
      }
      row.clip_ids[col] = ids.front();
    }
    rows.push_back(std::move(row));
  }

  for (auto& [source, by_seed] : cross) {
    for (std::int64_t seed : manifest.seeds) {
      auto& sets = by_seed[seed];
      for (int k = 0; k < kDescriptorSets; ++k) {
        if (sets[k].size() != 1) {
          const std::string cond = ConditionKey::cross_styled(source, k + 1).label();
          throw Error(ErrorCode::kMatchedSeedViolation,
                      "artist '" + artist.name + "', space '" + space_str + "': seed " +
                          seed_str(seed) + " has " + std::to_string(sets[k].size()) + " " +
                          cond + " records, expected 1",
                      {{"artist", artist.name},
                       {"space", space_str},
                       {"seed", seed_str(seed)},
                       {"condition", cond}});
        }
      }
    }
  }
  return rows;
}

Manifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw schema(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw schema("manifest must be a JSON object");
  reject_unknown_keys(doc, {"version", "seeds", "n_references", "artists"}, "manifest");

  Manifest m;
  m.base_dir = base_dir;
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    throw schema("manifest 'version' must be an integer");
  }
  m.version = doc["version"].get<int>();
  if (m.version != 1) throw schema("manifest version " + std::to_string(m.version) + " unsupported");

  if (!doc.contains("seeds") || !doc["seeds"].is_array() || doc["seeds"].empty()) {
    throw schema("manifest 'seeds' must be a non-empty array");
  }
  std::set<std::int64_t> seen_seeds;
  for (const auto& s : doc["seeds"]) {
    const std::int64_t seed = get_nonneg_int(s, "seed");
    if (!seen_seeds.insert(seed).second) throw schema("seed " + seed_str(seed) + " declared twice");
    m.seeds.push_back(seed);
  }
  if (doc.contains("n_references")) {
    const std::int64_t n = get_nonneg_int(doc["n_references"], "n_references");
    if (n < 1) throw schema("n_references must be positive");
    m.n_references = static_cast<int>(n);
  }

  if (!doc.contains("artists") || !doc["artists"].is_array() || doc["artists"].empty()) {
    throw schema("manifest 'artists' must be a non-empty array");
  }
  std::set<std::string> artist_names;
  for (const auto& a : doc["artists"]) {
    if (!a.is_object()) throw schema("artist entries must be objects");
    reject_unknown_keys(a, {"name", "baseline_prompt", "references", "generated", "descriptors"},
                        "artist block");
    ArtistBlock block;
    block.name = get_string(a, "name", "artist block");
    if (block.name.empty()) throw schema("artist name is empty");
    if (!artist_names.insert(block.name).second) {
      throw schema("artist '" + block.name + "' listed twice", {{"artist", block.name}});
    }
    const std::string where = "artist '" + block.name + "'";
    block.baseline_prompt = get_string(a, "baseline_prompt", where);
    if (a.contains("descriptors")) block.descriptors = get_string(a, "descriptors", where);
    for (const char* list : {"references", "generated"}) {
      if (!a.contains(list) || !a[list].is_array()) {
        throw schema(where + ": '" + list + "' must be an array", {{"artist", block.name}});
      }
    }
    for (std::size_t i = 0; i < a["references"].size(); ++i) {
      block.references.push_back(parse_record(a["references"][i], block.name,
                                              ClipRole::kReference,
                                              where + " references[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < a["generated"].size(); ++i) {
      block.generated.push_back(parse_record(a["generated"][i], block.name, ClipRole::kGenerated,
                                             where + " generated[" + std::to_string(i) + "]"));
    }
    m.artists.push_back(std::move(block));
  }

  // Cross-condition sources must name another artist of this manifest.
  for (const auto& block : m.artists) {
    for (const auto& r : block.generated) {
      if (r.condition->kind != ConditionKind::kCrossStyled) continue;
      const std::string& src = r.condition->source_artist;
      if (src == block.name || !artist_names.count(src)) {
        throw schema("clip " + r.clip_id + ": cross_styled source '" + src +
                         "' must be another artist of the manifest",
                     {{"artist", block.name}, {"clip_id", r.clip_id}});
      }
    }
  }

  std::set<std::string> clip_ids;
  for (const auto& block : m.artists) {
    for (const auto* list : {&block.references, &block.generated}) {
      for (const auto& r : *list) {
        if (!clip_ids.insert(r.clip_id).second) {
          throw Error(ErrorCode::kDuplicateClipId, "clip_id '" + r.clip_id + "' is not unique",
                      {{"artist", block.name}, {"clip_id", r.clip_id}});
        }
      }
    }
  }

  for (const auto& block : m.artists) {
    for (const auto& space : m.spaces(block.name)) {
      const auto refs = m.references(block.name, space);
      if (static_cast<int>(refs.size()) != m.n_references) {
        throw Error(ErrorCode::kReferenceCountMismatch,
                    "artist '" + block.name + "', space '" + space + "': " +
                        std::to_string(refs.size()) + " references, expected " +
                        std::to_string(m.n_references),
                    {{"artist", block.name}, {"space", space}});
      }
      check_matched_seeds(m, block, space);
    }
  }

  for (auto& block : m.artists) {
    if (block.descriptors.empty()) continue;
    try {
      block.bundle = promptkit::load_bundle(base_dir / block.descriptors);
    } catch (const Error& e) {
      throw e.with_context({{"artist", block.name}});
    }
    if (block.bundle->artist_name != block.name) {
      throw schema("descriptor bundle for '" + block.name + "' names artist '" +
                       block.bundle->artist_name + "'",
                   {{"artist", block.name}});
    }
    if (block.bundle->baseline != block.baseline_prompt) {
      throw schema("descriptor bundle baseline differs from baseline_prompt of '" + block.name + "'",
                   {{"artist", block.name}});
    }
  }

  std::map<std::string, Eigen::Index> dims;
  for (const auto& block : m.artists) {
    for (const auto* list : {&block.references, &block.generated}) {
      for (const auto& r : *list) {
        const ErrorContext ctx = {{"artist", block.name}, {"clip_id", r.clip_id}, {"path", r.path}};
        const std::filesystem::path file = base_dir / r.path;
        std::error_code ec;
        if (!std::filesystem::is_regular_file(file, ec)) {
          throw Error(ErrorCode::kMissingEmbeddingFile,
                      "embedding file " + r.path + " for clip " + r.clip_id + " is missing", ctx);
        }
        EmbeddingMatrix emb;
        try {
          emb = read_emb1(file);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kIoFailure) {
            throw Error(ErrorCode::kMissingEmbeddingFile,
                        "embedding file " + r.path + " for clip " + r.clip_id + " is unreadable",
                        ctx);
          }
          throw e.with_context(ctx);
        }
        if (emb.space_tag != r.space_tag) {
          throw schema("clip " + r.clip_id + ": file space tag '" + emb.space_tag +
                           "' differs from record '" + r.space_tag + "'",
                       ctx);
        }
        if (r.n_rows && *r.n_rows != emb.count()) {
          throw schema("clip " + r.clip_id + ": file has " + std::to_string(emb.count()) +
                           " rows, record declares " + std::to_string(*r.n_rows),
                       ctx);
        }
        auto [it, inserted] = dims.emplace(r.space_tag, emb.dim());
        if (!inserted && it->second != emb.dim()) {
          throw schema("clip " + r.clip_id + ": dimension " + std::to_string(emb.dim()) +
                           " differs from " + std::to_string(it->second) + " used in space '" +
                           r.space_tag + "'",
                       ctx);
        }
        m.embeddings.emplace(r.clip_id, std::move(emb));
      }
    }
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kIoFailure, e.what(), e.context());
  }
  return parse_manifest(text, path.parent_path());
}

std::string serialize_manifest(const Manifest& manifest) {
  json artists = json::array();
  for (const auto& block : manifest.artists) {
    json refs = json::array();
    for (const auto& r : block.references) refs.push_back(record_to_json(r));
    json gens = json::array();
    for (const auto& r : block.generated) gens.push_back(record_to_json(r));
    json a = {{"name", block.name},
              {"baseline_prompt", block.baseline_prompt},
              {"references", std::move(refs)},
              {"generated", std::move(gens)}};
    if (!block.descriptors.empty()) a["descriptors"] = block.descriptors;
    artists.push_back(std::move(a));
  }
  json doc = {{"version", manifest.version},
              {"seeds", manifest.seeds},
              {"n_references", manifest.n_references},
              {"artists", std::move(artists)}};
  return doc.dump(2) + "\n";
}

}  // namespace stylegap
