#include "scimetrics/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>

#include <algorithm>
#include <stdexcept>

namespace scimetrics::text {
namespace {

enum class CharClass { word, separator, dropped };

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

CharClass classify_ascii(char c) {
  if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) return CharClass::word;
  if (c == '-' || c == '/' || c == '\\') return CharClass::separator;
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v')
    return CharClass::separator;
  if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) return CharClass::separator;
  return CharClass::dropped;
}

CharClass classify_code_point(UChar32 c) {
  if (c == '/' || c == '\\' || c == 0x2044 || c == 0x2215 || u_hasBinaryProperty(c, UCHAR_DASH))
    return CharClass::separator;
  if (u_isUWhiteSpace(c) || u_iscntrl(c)) return CharClass::separator;
  const auto mask = U_GET_GC_MASK(c);
  if (mask & (U_GC_L_MASK | U_GC_M_MASK | U_GC_N_MASK)) return CharClass::word;
  return CharClass::dropped;
}

void push_token(std::vector<std::string>& out, std::string& cur) {
  if (!cur.empty()) {
    out.push_back(std::move(cur));
    cur.clear();
  }
}

std::vector<std::string> tokenize_ascii(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char raw : s) {
    char c = (raw >= 'A' && raw <= 'Z') ? static_cast<char>(raw - 'A' + 'a') : raw;
    switch (classify_ascii(c)) {
      case CharClass::word: cur.push_back(c); break;
      case CharClass::separator: push_token(out, cur); break;
      case CharClass::dropped: break;
    }
  }
  push_token(out, cur);
  return out;
}

std::vector<std::string> tokenize_unicode(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFKC normalizer unavailable");

  icu::UnicodeString lowered =
      icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  lowered.toLower(icu::Locale::getRoot());
  icu::UnicodeString normalized = nfkc->normalize(lowered, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");

  std::vector<std::string> out;
  icu::UnicodeString cur;
  auto flush = [&] {
    if (!cur.isEmpty()) {
      std::string utf8;
      cur.toUTF8String(utf8);
      out.push_back(std::move(utf8));
      cur.remove();
    }
  };
  for (int32_t i = 0; i < normalized.length();) {
    const UChar32 c = normalized.char32At(i);
    i += U16_LENGTH(c);
    switch (classify_code_point(c)) {
      case CharClass::word: cur.append(c); break;
      case CharClass::separator: flush(); break;
      case CharClass::dropped: break;
    }
  }
  flush();
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view s) {
  return is_ascii(s) ? tokenize_ascii(s) : tokenize_unicode(s);
}

std::string normalize(std::string_view s) {
  std::string out;
  for (const auto& tok : tokenize(s)) {
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

}  // namespace scimetrics::text
