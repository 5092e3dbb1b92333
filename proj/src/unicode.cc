// Copyright 2026 The subtok Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subtok/unicode.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>

#include <stdexcept>

namespace subtok::unicode {

std::optional<CodePoint> decode_next(std::string_view text, size_t& pos) {
  if (pos >= text.size()) return std::nullopt;
  const auto byte = [&](size_t i) { return static_cast<uint8_t>(text[i]); };
  const uint8_t b0 = byte(pos);

  if (b0 < 0x80) {
    ++pos;
    return CodePoint(b0);
  }

  int len;
  CodePoint cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }

  if (pos + len > text.size()) return std::nullopt;
  for (int i = 1; i < len; ++i) {
    const uint8_t b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }

  static constexpr CodePoint kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinByLen[len]) return std::nullopt;                 // overlong
  if (cp >= 0xD800 && cp <= 0xDFFF) return std::nullopt;        // surrogate
  if (cp > 0x10FFFF) return std::nullopt;

  pos += len;
  return cp;
}

std::optional<size_t> first_invalid_offset(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    if (!decode_next(text, pos)) return pos;
  }
  return std::nullopt;
}

std::vector<CodePoint> to_code_points(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    auto cp = decode_next(text, pos);
    if (!cp) throw std::invalid_argument("invalid UTF-8 at byte " + std::to_string(pos));
    out.push_back(*cp);
  }
  return out;
}

void append_utf8(std::string& out, CodePoint cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string to_utf8(CodePoint cp) {
  std::string out;
  append_utf8(out, cp);
  return out;
}

std::string to_utf8(const std::vector<CodePoint>& cps) {
  std::string out;
  out.reserve(cps.size() * 3);
  for (CodePoint cp : cps) append_utf8(out, cp);
  return out;
}

std::vector<std::string> split_code_points(std::string_view text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t start = pos;
    if (!decode_next(text, pos)) throw std::invalid_argument("invalid UTF-8");
    out.emplace_back(text.substr(start, pos - start));
  }
  return out;
}

size_t code_point_count(std::string_view text) {
  size_t n = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    if (!decode_next(text, pos)) throw std::invalid_argument("invalid UTF-8");
    ++n;
  }
  return n;
}

bool is_white_space(CodePoint cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_punctuation(CodePoint cp) {
  const auto cat = u_charType(static_cast<UChar32>(cp));
  switch (cat) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
      return true;
    default:
      return false;
  }
}

bool is_nonspacing_mark(CodePoint cp) {
  return u_charType(static_cast<UChar32>(cp)) == U_NON_SPACING_MARK;
}

bool is_control_or_format(CodePoint cp) {
  switch (u_charType(static_cast<UChar32>(cp))) {
    case U_CONTROL_CHAR:
    case U_FORMAT_CHAR:
    case U_SURROGATE:
    case U_PRIVATE_USE_CHAR:
    case U_UNASSIGNED:
      return true;
    default:
      return false;
  }
}

bool is_latin(CodePoint cp) {
  UErrorCode status = U_ZERO_ERROR;
  const UScriptCode script = uscript_getScript(static_cast<UChar32>(cp), &status);
  return U_SUCCESS(status) && script == USCRIPT_LATIN;
}

bool is_digit_ascii(CodePoint cp) { return cp >= U'0' && cp <= U'9'; }

CodePoint simple_lowercase(CodePoint cp) {
  return static_cast<CodePoint>(u_tolower(static_cast<UChar32>(cp)));
}

namespace {

const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || norm == nullptr) throw std::runtime_error("ICU NFC unavailable");
  return *norm;
}

const icu::Normalizer2& nfd_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || norm == nullptr) throw std::runtime_error("ICU NFD unavailable");
  return *norm;
}

std::string normalize_with(const icu::Normalizer2& norm, std::string_view text) {
  const icu::UnicodeString input =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = norm.normalize(input, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

}  // namespace

std::string nfc(std::string_view text) { return normalize_with(nfc_instance(), text); }

std::string nfd(std::string_view text) { return normalize_with(nfd_instance(), text); }

std::vector<CodePoint> canonical_decomposition(CodePoint cp) {
  const std::string decomposed = nfd(to_utf8(cp));
  std::vector<CodePoint> cps = to_code_points(decomposed);
  if (cps.size() == 1 && cps[0] == cp) return {};
  return cps;
}

}  // namespace subtok::unicode
