#pragma once
/**
 * @file persist.hpp
 * @brief Scene snapshots, single-object save and restore, profile store.
 *
 * Snapshot grammar:
 *
 *   snapshot := "movekit-scene v1" NL { record NL }
 *   record   := "object" SP tag SP "{" { SP key "=" value } SP "}"
 *
 * Records appear in scene order. Parts of composite objects are stored in
 * the record of their owner under prefixed keys ("h0.", "c2.", ...). Reals
 * carry six decimals; text values are percent-encoded. Groups list their
 * members as scene indices in the "members" field. Every "id" and "parent"
 * field is re-issued on load.
 */

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "movekit/scene.hpp"

namespace movekit {

inline constexpr int kSnapshotVersion = 1;
inline constexpr std::string_view kSnapshotMagic = "movekit-scene";

inline std::string snapshot_header() { return std::string(kSnapshotMagic) + " v" + std::to_string(kSnapshotVersion); }

/// Builds a non-group object from its record.
inline std::unique_ptr<SceneObject> object_from_record(const Record& rec) {
  using Factory = std::function<std::unique_ptr<SceneObject>(const Record&)>;
  static const std::map<std::string, Factory, std::less<>> kFactories = {
      {"rect", [](const Record& r) { return std::unique_ptr<SceneObject>(RectObject::load(r)); }},
      {"onesiderect", [](const Record& r) { return std::unique_ptr<SceneObject>(OneSideRectObject::load(r)); }},
      {"circle", [](const Record& r) { return std::unique_ptr<SceneObject>(CircleObject::load(r)); }},
      {"ring", [](const Record& r) { return std::unique_ptr<SceneObject>(RingObject::load(r)); }},
      {"sector", [](const Record& r) { return std::unique_ptr<SceneObject>(SectorObject::load(r)); }},
      {"text", [](const Record& r) { return std::unique_ptr<SceneObject>(TextObject::load(r)); }},
      {"plot", [](const Record& r) { return std::unique_ptr<SceneObject>(Plot::load(r)); }},
      {"barchart", [](const Record& r) { return std::unique_ptr<SceneObject>(BarChart::load(r)); }},
      {"primitivebars", [](const Record& r) { return std::unique_ptr<SceneObject>(PrimitiveBarChart::load(r)); }},
      {"pie", [](const Record& r) { return std::unique_ptr<SceneObject>(PieChart::load(r)); }},
      {"sectorring", [](const Record& r) { return std::unique_ptr<SceneObject>(SectorRing::load(r)); }},
      {"ringset", [](const Record& r) { return std::unique_ptr<SceneObject>(RingSet::load(r)); }},
      {"segsliders", [](const Record& r) { return std::unique_ptr<SceneObject>(SegmentedSliders::load(r)); }},
      {"boundedslider", [](const Record& r) { return std::unique_ptr<SceneObject>(BoundedSlider::load(r)); }},
      {"vdots", [](const Record& r) { return std::unique_ptr<SceneObject>(VerticalDots::load(r)); }},
      {"graphdots", [](const Record& r) { return std::unique_ptr<SceneObject>(GraphDots::load(r)); }},
      {"dotnest", [](const Record& r) { return std::unique_ptr<SceneObject>(DotNest::load(r)); }},
  };
  auto it = kFactories.find(rec.tag());
  if (it == kFactories.end()) rec.fail("unknown object type");
  try {
    return it->second(rec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    rec.fail(e.what());
  }
}

inline Record scene_record(const Scene& scene, std::size_t i) {
  const SceneObject& o = scene.at(i);
  Record rec = o.to_record();
  if (auto* g = dynamic_cast<const ElasticFrame*>(&o)) {
    std::string list;
    for (SceneObject* m : g->members()) {
      const auto k = scene.index_of(m);
      if (!k) throw Error(ErrorCode::EmptyGroup, "group member outside the scene");
      if (!list.empty()) list += ',';
      list += std::to_string(*k);
    }
    rec.put_raw("members", list);
  }
  return rec;
}

inline std::string save_scene(const Scene& scene) {
  std::string out = snapshot_header() + "\n";
  for (std::size_t i = 0; i < scene.size(); ++i) out += scene_record(scene, i).to_line() + "\n";
  return out;
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

inline void check_header(const std::vector<std::string>& lines) {
  if (lines.empty()) throw Error(ErrorCode::Parse, "line 1: missing header");
  const std::string& h = lines.front();
  const std::string magic = std::string(kSnapshotMagic) + " v";
  if (h.rfind(magic, 0) != 0) throw Error(ErrorCode::Parse, "line 1: expected '" + snapshot_header() + "'");
  if (h != snapshot_header()) throw Error(ErrorCode::UnsupportedVersion, "unsupported snapshot version '" + h + "'");
}

inline std::vector<std::size_t> member_indices(const Record& rec) {
  std::vector<std::size_t> out;
  const std::string& list = rec.raw("members");
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = std::min(list.find(',', start), list.size());
    const std::string item = list.substr(start, comma - start);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) rec.fail("bad member index list");
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Rebuilds a scene; every object gets fresh ids.
inline Scene load_scene(const std::string& text) {
  const auto lines = detail::split_lines(text);
  detail::check_header(lines);
  std::vector<Record> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    records.push_back(Record::parse_line(lines[i], static_cast<int>(i + 1)));
  }
  std::vector<std::unique_ptr<SceneObject>> built(records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].tag() != "group") built[i] = object_from_record(records[i]);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].tag() != "group") continue;
    std::vector<SceneObject*> members;
    for (std::size_t k : detail::member_indices(records[i])) {
      if (k >= built.size() || !built[k] || records[k].tag() == "group") records[i].fail("member index is not an object");
      members.push_back(built[k].get());
    }
    built[i] = ElasticFrame::load(records[i], std::move(members));
  }
  Scene scene;
  for (auto& o : built) scene.insert_raw(scene.size(), std::move(o));
  scene.rebuild_mover();
  return scene;
}

/// Snapshot with every id field replaced by '*'.
inline std::string mask_ids(const std::string& snapshot) {
  std::string out;
  for (const auto& line : detail::split_lines(snapshot)) {
    std::istringstream in(line);
    std::string tok, rebuilt;
    while (in >> tok) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos) {
        const std::string key = tok.substr(0, eq);
        const auto dot = key.rfind('.');
        const std::string leaf = dot == std::string::npos ? key : key.substr(dot + 1);
        if (leaf == "id" || leaf == "parent") tok = key + "=*";
      }
      if (!rebuilt.empty()) rebuilt += ' ';
      rebuilt += tok;
    }
    out += rebuilt + "\n";
  }
  return out;
}

inline bool snapshots_equal_ignoring_ids(const std::string& a, const std::string& b) { return mask_ids(a) == mask_ids(b); }

/// Structural equality: same objects, order, geometry and flags; ids ignored.
inline bool scenes_equivalent(const Scene& a, const Scene& b) {
  return snapshots_equal_ignoring_ids(save_scene(a), save_scene(b));
}

/// Canonical form of a snapshot text.
inline std::string canonicalize(const std::string& text) { return save_scene(load_scene(text)); }

/// All ids carried by an object record, parts included.
inline std::vector<ObjectId> record_ids(const Record& rec) {
  std::vector<ObjectId> out;
  for (const auto& [k, v] : rec.fields()) {
    const auto dot = k.rfind('.');
    if ((dot == std::string::npos ? k : k.substr(dot + 1)) == "id") out.push_back(static_cast<ObjectId>(rec.integer(k)));
  }
  return out;
}

inline std::vector<ObjectId> object_ids(const SceneObject& o) { return record_ids(o.to_record()); }

// ---------------------------------------------------------------------------
// Single objects

inline std::string save_object(const SceneObject& o) {
  if (dynamic_cast<const ElasticFrame*>(&o)) throw Error(ErrorCode::WrongKind, "groups are saved with their scene");
  return snapshot_header() + "\n" + o.to_record().to_line() + "\n";
}

/// Rebuilds a saved object with fresh ids and puts its reference point at anchor.
inline std::unique_ptr<SceneObject> restore_object_at(const std::string& text, std::string_view expected_tag,
                                                      Point2 anchor) {
  const auto lines = detail::split_lines(text);
  detail::check_header(lines);
  std::vector<Record> records;
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (!lines[i].empty()) records.push_back(Record::parse_line(lines[i], static_cast<int>(i + 1)));
  if (records.size() != 1) throw Error(ErrorCode::Parse, "expected exactly one object record");
  if (records.front().tag() != expected_tag)
    throw Error(ErrorCode::WrongKind, "saved object is '" + records.front().tag() + "', not '" +
                                          std::string(expected_tag) + "'");
  if (records.front().tag() == "group") throw Error(ErrorCode::WrongKind, "groups cannot be restored alone");
  auto obj = object_from_record(records.front());
  const Point2 d = anchor - obj->reference_point();
  obj->move(d.x, d.y);
  return obj;
}

// ---------------------------------------------------------------------------
// Profile store: named string lists standing in for per-user settings

class ProfileStore {
 public:
  static constexpr int kVersion = 1;

  void write(const std::string& key, std::vector<std::string> values) { records_[key] = std::move(values); }
  std::optional<std::vector<std::string>> read(const std::string& key) const {
    auto it = records_.find(key);
    if (it == records_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const std::string& key) const { return records_.count(key) != 0; }
  void erase(const std::string& key) { records_.erase(key); }
  std::size_t size() const { return records_.size(); }

  std::string to_text() const {
    nlohmann::json j;
    j["version"] = kVersion;
    j["records"] = nlohmann::json::object();
    for (const auto& [k, v] : records_) j["records"][k] = v;
    return j.dump(2) + "\n";
  }

  static ProfileStore from_text(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("profile store: ") + e.what());
    }
    if (!j.contains("version") || !j["version"].is_number_integer())
      throw Error(ErrorCode::Parse, "profile store: missing version");
    if (j["version"].get<int>() != kVersion) throw Error(ErrorCode::UnsupportedVersion, "profile store version");
    ProfileStore s;
    try {
      for (const auto& [k, v] : j.at("records").items()) s.records_[k] = v.get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("profile store: ") + e.what());
    }
    return s;
  }

 private:
  std::map<std::string, std::vector<std::string>> records_;
};

/// Forgets the stored layout so the next load falls back to the defaults.
inline void default_view_reset(const std::string& form_key, ProfileStore& store) { store.erase(form_key); }

/// Stored layout for form_key, or the result of make_default when there is none.
template <class MakeDefault>
std::string load_layout(const std::string& form_key, const ProfileStore& store, MakeDefault make_default) {
  if (auto rec = store.read(form_key); rec && !rec->empty()) return rec->front();
  return make_default();
}

inline void save_layout(const std::string& form_key, ProfileStore& store, const Scene& scene) {
  store.write(form_key, {save_scene(scene)});
}

}  // namespace movekit
