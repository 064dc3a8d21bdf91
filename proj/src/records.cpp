#include "adeff/records.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace adeff {

using nlohmann::json;

namespace {

void check_range(int value, int lo, int hi, const char* name) {
  if (value < lo || value > hi) {
    std::ostringstream os;
    os << name << " = " << value << " outside [" << lo << ", " << hi << "]";
    throw std::invalid_argument(os.str());
  }
}

json annotation_to_json(const AnnotationSet& a) {
  return json{{"effectiveness", a.effectiveness}, {"topic", a.topic},
              {"sentiment", a.sentiment},         {"exciting", a.exciting},
              {"funny", a.funny},                 {"language", a.language}};
}

AnnotationSet annotation_from_json(const json& j) {
  AnnotationSet a;
  a.effectiveness = j.at("effectiveness").get<int>();
  a.topic = j.at("topic").get<int>();
  a.sentiment = j.at("sentiment").get<int>();
  a.exciting = j.at("exciting").get<int>();
  a.funny = j.at("funny").get<int>();
  a.language = j.at("language").get<int>();
  return a;
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

}  // namespace

void validate(const AnnotationSet& a) {
  check_range(a.effectiveness, 1, 5, "effectiveness");
  check_range(a.topic, 0, kNumTopics - 1, "topic");
  check_range(a.sentiment, 0, kNumSentiments - 1, "sentiment");
  check_range(a.exciting, 0, 1, "exciting");
  check_range(a.funny, 0, 1, "funny");
  check_range(a.language, -1, 1, "language");
}

void validate(const RawVideoRecord& r) {
  if (r.ratings.size() != static_cast<std::size_t>(kAnnotatorsPerVideo)) {
    std::ostringstream os;
    os << "video " << r.video_id << ": expected " << kAnnotatorsPerVideo
       << " annotation sets, got " << r.ratings.size();
    throw std::invalid_argument(os.str());
  }
  if (!(r.duration_seconds > 0.0)) {
    throw std::invalid_argument("video " + r.video_id +
                                ": duration_seconds must be > 0");
  }
  for (const AnnotationSet& a : r.ratings) validate(a);
}

std::vector<RawVideoRecord> read_raw_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<RawVideoRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      RawVideoRecord r;
      r.video_id = j.at("video_id").get<std::string>();
      for (const json& a : j.at("ratings")) {
        r.ratings.push_back(annotation_from_json(a));
      }
      r.duration_seconds = j.at("duration_seconds").get<double>();
      if (j.contains("assets")) {
        const json& as = j.at("assets");
        r.assets.frames = optional_string(as, "frames");
        r.assets.transcript = optional_string(as, "transcript");
        r.assets.detections = optional_string(as, "detections");
        r.assets.memorability = optional_string(as, "memorability");
        r.assets.audio = optional_string(as, "audio");
      }
      if (j.contains("statements")) {
        r.statements = j.at("statements").get<std::vector<std::string>>();
      }
      validate(r);
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << path << ":" << lineno << ": " << e.what();
      throw std::runtime_error(os.str());
    }
  }
  return records;
}

void write_raw_records(const std::string& path,
                       const std::vector<RawVideoRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const RawVideoRecord& r : records) {
    json j;
    j["video_id"] = r.video_id;
    json ratings = json::array();
    for (const AnnotationSet& a : r.ratings) ratings.push_back(annotation_to_json(a));
    j["ratings"] = std::move(ratings);
    j["duration_seconds"] = r.duration_seconds;
    json assets = json::object();
    if (r.assets.frames) assets["frames"] = *r.assets.frames;
    if (r.assets.transcript) assets["transcript"] = *r.assets.transcript;
    if (r.assets.detections) assets["detections"] = *r.assets.detections;
    if (r.assets.memorability) assets["memorability"] = *r.assets.memorability;
    if (r.assets.audio) assets["audio"] = *r.assets.audio;
    j["assets"] = std::move(assets);
    if (!r.statements.empty()) j["statements"] = r.statements;
    out << j.dump() << '\n';
  }
}

std::vector<CleanVideoRecord> read_clean_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<CleanVideoRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      CleanVideoRecord r;
      r.video_id = j.at("video_id").get<std::string>();
      r.effectiveness = j.at("effectiveness").get<int>();
      r.topic = j.at("topic").get<int>();
      r.sentiment = j.at("sentiment").get<int>();
      r.exciting = j.at("exciting").get<int>();
      r.funny = j.at("funny").get<int>();
      r.language = j.at("language").get<int>();
      r.duration_seconds = j.at("duration_seconds").get<double>();
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << path << ":" << lineno << ": " << e.what();
      throw std::runtime_error(os.str());
    }
  }
  return records;
}

void write_clean_records(const std::string& path,
                         const std::vector<CleanVideoRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const CleanVideoRecord& r : records) {
    json j;
    j["video_id"] = r.video_id;
    j["effectiveness"] = r.effectiveness;
    j["topic"] = r.topic;
    j["sentiment"] = r.sentiment;
    j["exciting"] = r.exciting;
    j["funny"] = r.funny;
    j["language"] = r.language;
    j["duration_seconds"] = r.duration_seconds;
    out << j.dump() << '\n';
  }
}

}  // namespace adeff
