#ifndef ADEFF_TEXT_FEATURES_HPP
#define ADEFF_TEXT_FEATURES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace adeff {

inline constexpr int kCommonWordBuckets = 32;

/// OCR transcript: (frame index, raw text) pairs with strictly increasing
/// frame indices.
struct Transcript {
  struct Segment {
    int frame = 0;
    std::string text;
  };
  std::vector<Segment> sampled_frames;
};

struct TextFeatureBlock {
  std::uint64_t text_length = 0;          // characters of the raw text
  std::uint64_t word_count = 0;           // tokens before stopword removal
  std::uint64_t meaningful_word_count = 0;
  double avg_word_length = 0.0;           // over meaningful (stemmed) words
  double avg_sentence_length = 0.0;       // tokens per non-empty sentence
  double sentiment_polarity = 0.0;        // (pos - neg) / max(1, pos + neg)
  std::array<double, kCommonWordBuckets> common_word_hash{};  // one-hot
};

/// Lowercases and splits on runs of non-alphanumeric characters.
std::vector<std::string> tokenize(const std::string& raw_text);

/// Raw lowercase tokens that are alphabetic, at least three letters long and
/// not stopwords, each replaced by its Porter stem. The filters run on the
/// raw token (stems like "thi" would slip past a surface-form stopword list).
std::vector<std::string> meaningful_words(const std::vector<std::string>& tokens);

/// FNV-1a. Specified here so the common-word bucket is identical on every
/// platform.
std::uint64_t fnv1a64(const std::string& s);

/// All transcript-derived statistics. Degenerate input produces the zero
/// block.
TextFeatureBlock text_block(const Transcript& transcript);

/// Reads a UTF-8 JSON array of {"frame": int, "text": string}; validates the
/// frame-index ordering.
Transcript read_transcript(const std::string& path);

}  // namespace adeff

#endif
