#include "adeff/text_features.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "adeff/lexicons.hpp"
#include "adeff/porter.hpp"

namespace adeff {

std::vector<std::string> tokenize(const std::string& raw_text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : raw_text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

namespace {

bool is_alphabetic(const std::string& token) {
  return std::all_of(token.begin(), token.end(), [](unsigned char c) {
    return std::isalpha(c) != 0;
  });
}

}  // namespace

std::vector<std::string> meaningful_words(const std::vector<std::string>& tokens) {
  const auto& stop = stopwords();
  std::vector<std::string> out;
  for (const std::string& t : tokens) {
    if (t.size() < 3 || !is_alphabetic(t) || stop.count(t)) continue;
    out.push_back(porter_stem(t));
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

TextFeatureBlock text_block(const Transcript& transcript) {
  TextFeatureBlock block;

  std::string joined;
  for (const Transcript::Segment& seg : transcript.sampled_frames) {
    block.text_length += seg.text.size();
    if (!joined.empty()) joined.push_back('\n');
    joined += seg.text;
  }

  const std::vector<std::string> tokens = tokenize(joined);
  block.word_count = tokens.size();

  const std::vector<std::string> meaningful = meaningful_words(tokens);
  block.meaningful_word_count = meaningful.size();
  if (!meaningful.empty()) {
    std::uint64_t chars = 0;
    for (const std::string& w : meaningful) chars += w.size();
    block.avg_word_length =
        static_cast<double>(chars) / static_cast<double>(meaningful.size());
  }

  // Sentences are delimited by . ! ? or line breaks; only sentences that
  // contain at least one token count.
  std::uint64_t sentences = 0;
  {
    std::string sentence;
    auto flush = [&] {
      if (!tokenize(sentence).empty()) ++sentences;
      sentence.clear();
    };
    for (char c : joined) {
      if (c == '.' || c == '!' || c == '?' || c == '\n' || c == '\r') {
        flush();
      } else {
        sentence.push_back(c);
      }
    }
    flush();
  }
  if (sentences > 0) {
    block.avg_sentence_length =
        static_cast<double>(block.word_count) / static_cast<double>(sentences);
  }

  std::uint64_t pos = 0, neg = 0;
  for (const std::string& t : tokens) {
    if (positive_words().count(t)) ++pos;
    if (negative_words().count(t)) ++neg;
  }
  if (pos + neg > 0) {
    block.sentiment_polarity = (static_cast<double>(pos) - static_cast<double>(neg)) /
                               static_cast<double>(pos + neg);
  }

  if (!meaningful.empty()) {
    // Most frequent meaningful word; ties go to the lexicographically
    // smallest (std::map iteration order delivers that for free).
    std::map<std::string, std::uint64_t> counts;
    for (const std::string& w : meaningful) ++counts[w];
    const std::string* best = nullptr;
    std::uint64_t best_count = 0;
    for (const auto& [word, count] : counts) {
      if (count > best_count) {
        best = &word;
        best_count = count;
      }
    }
    block.common_word_hash[fnv1a64(*best) % kCommonWordBuckets] = 1.0;
  }
  return block;
}

Transcript read_transcript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (!j.is_array()) throw std::runtime_error(path + ": expected a JSON array");
  Transcript t;
  int prev_frame = -1;
  for (const nlohmann::json& seg : j) {
    Transcript::Segment s;
    s.frame = seg.at("frame").get<int>();
    s.text = seg.at("text").get<std::string>();
    if (s.frame <= prev_frame) {
      throw std::runtime_error(path + ": frame indices must be strictly increasing");
    }
    prev_frame = s.frame;
    t.sampled_frames.push_back(std::move(s));
  }
  return t;
}

}  // namespace adeff
