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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace subtok::unicode {

using CodePoint = char32_t;

// Strict UTF-8 decoding. Rejects overlong forms, surrogates and values
// above U+10FFFF.

// Decodes the code point starting at byte `pos`. On success advances `pos`
// past the sequence; on malformed input returns nullopt and leaves `pos`
// unchanged.
std::optional<CodePoint> decode_next(std::string_view text, size_t& pos);

// Byte offset of the first malformed sequence, or nullopt if valid.
std::optional<size_t> first_invalid_offset(std::string_view text);

std::vector<CodePoint> to_code_points(std::string_view text);

void append_utf8(std::string& out, CodePoint cp);
std::string to_utf8(CodePoint cp);
std::string to_utf8(const std::vector<CodePoint>& cps);

// Splits into code point strings, one per element.
std::vector<std::string> split_code_points(std::string_view text);

size_t code_point_count(std::string_view text);

// Property queries (ICU-backed).
bool is_white_space(CodePoint cp);            // Unicode White_Space
bool is_punctuation(CodePoint cp);            // general category P*
bool is_nonspacing_mark(CodePoint cp);        // general category Mn
bool is_control_or_format(CodePoint cp);      // Cc, Cf, Cs, Co, Cn
bool is_latin(CodePoint cp);                  // script = Latin
bool is_digit_ascii(CodePoint cp);

CodePoint simple_lowercase(CodePoint cp);

// Canonical composition (NFC) over the whole string. ICU applies the
// standard composition exclusions, so e.g. U+0958 decomposes to
// U+0915 U+093C and stays decomposed.
std::string nfc(std::string_view text);
std::string nfd(std::string_view text);

// Full canonical decomposition of one code point, empty if none.
std::vector<CodePoint> canonical_decomposition(CodePoint cp);

}  // namespace subtok::unicode
