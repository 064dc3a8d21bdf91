#include "adeff/lexicons.hpp"

namespace adeff {

namespace {

const char* const kStopwords[] = {
#include "stopwords.inc"
};

const char* const kPositive[] = {
#include "positive_words.inc"
};

const char* const kNegative[] = {
#include "negative_words.inc"
};

template <std::size_t N>
std::unordered_set<std::string> to_set(const char* const (&words)[N]) {
  std::unordered_set<std::string> set;
  set.reserve(N);
  for (const char* w : words) set.emplace(w);
  return set;
}

}  // namespace

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> set = to_set(kStopwords);
  return set;
}

const std::unordered_set<std::string>& positive_words() {
  static const std::unordered_set<std::string> set = to_set(kPositive);
  return set;
}

const std::unordered_set<std::string>& negative_words() {
  static const std::unordered_set<std::string> set = to_set(kNegative);
  return set;
}

}  // namespace adeff
