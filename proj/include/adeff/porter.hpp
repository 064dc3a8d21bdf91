#ifndef ADEFF_PORTER_HPP
#define ADEFF_PORTER_HPP

#include <string>

namespace adeff {

/// Porter stemming algorithm (M.F. Porter, 1980), original rule set.
/// Expects a lowercase token; words shorter than three letters are returned
/// unchanged, as in the reference implementation.
std::string porter_stem(const std::string& word);

}  // namespace adeff

#endif
