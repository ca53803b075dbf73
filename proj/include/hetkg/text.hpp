#pragma once

// Text normalization shared by the exact indexes, the title matcher and the
// query analyzers. All functions take and return UTF-8.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>

#include "hetkg/types.hpp"

namespace hetkg {

namespace detail {

inline icu::UnicodeString nfc_lower(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString out = nfc->normalize(src, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  out.toLower(icu::Locale::getRoot());
  // Lowercasing can denormalize (e.g. final sigma contexts); renormalize.
  if (!nfc->isNormalized(out, status)) out = nfc->normalize(out, status);
  return out;
}

// Keeps code points accepted by `keep`, maps whitespace to a single ASCII
// space, trims both ends.
template <typename Keep>
std::string collapse(const icu::UnicodeString& s, Keep keep) {
  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = true;
      continue;
    }
    if (!keep(c)) continue;
    if (pending_space && !out.isEmpty()) out.append(static_cast<UChar>(u' '));
    pending_space = false;
    out.append(c);
  }
  std::string utf8;
  out.toUTF8String(utf8);
  return utf8;
}

}  // namespace detail

/// Lowercase, NFC, trimmed, internal whitespace collapsed to one space.
/// Used for Paper.title_normalized and Keyword.text_normalized.
inline std::string normalize_text(std::string_view text) {
  return detail::collapse(detail::nfc_lower(text), [](UChar32) { return true; });
}

/// Title key: lowercase with every non-alphabetic code point removed.
/// Whitespace survives as single separators so titles can be tokenized.
inline std::string normalize_title(std::string_view text) {
  return detail::collapse(detail::nfc_lower(text),
                          [](UChar32 c) { return u_isalpha(c) != 0; });
}

/// Splits on ASCII spaces; callers pass already-normalized text.
inline std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

/// Decodes UTF-8 into code points (malformed bytes become U+FFFD).
inline std::u32string to_code_points(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  std::u32string out;
  out.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

/// Longest prefix of `text` holding at most `max_code_points` code points.
inline std::string utf8_prefix(std::string_view text, std::size_t max_code_points) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size() && count < max_code_points) {
    auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = lead < 0x80 ? 1 : (lead >> 5) == 0x6 ? 2 : (lead >> 4) == 0xE ? 3
                    : (lead >> 3) == 0x1E ? 4 : 1;
    i = std::min(text.size(), i + len);
    ++count;
  }
  return std::string(text.substr(0, i));
}

inline std::string trim_ascii(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace hetkg
