#pragma once

#include <string>
#include <string_view>
#include <vector>

// Text normalization shared by query matching, keyword extraction and the
// SDG glossary.
//
// Rule: lowercase, Unicode NFKC, dashes and slashes become spaces, every
// other character that is not a letter, mark or digit is dropped, and the
// result is split on whitespace. Input is UTF-8; invalid sequences are
// replaced before normalization.
namespace scimetrics::text {

std::vector<std::string> tokenize(std::string_view s);

// Tokens joined by a single space. Empty when the input has no word characters.
std::string normalize(std::string_view s);

}  // namespace scimetrics::text
