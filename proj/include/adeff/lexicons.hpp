#ifndef ADEFF_LEXICONS_HPP
#define ADEFF_LEXICONS_HPP

#include <string>
#include <unordered_set>

namespace adeff {

// Word lists live in data/*.txt (one word per line, versioned) and are
// embedded into the library at build time.

/// 175-entry English stopword list.
const std::unordered_set<std::string>& stopwords();

/// Positive / negative sentiment lexicons, matched against raw lowercase
/// tokens.
const std::unordered_set<std::string>& positive_words();
const std::unordered_set<std::string>& negative_words();

}  // namespace adeff

#endif
