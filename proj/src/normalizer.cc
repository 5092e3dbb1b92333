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

#include "subtok/normalizer.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "subtok/errors.h"
#include "subtok/unicode.h"

namespace subtok {

namespace uni = subtok::unicode;
using uni::CodePoint;

char32_t digit_zero(ScriptId script) {
  switch (script) {
    case ScriptId::Latin: return U'0';
    case ScriptId::Devanagari: return U'०';
    case ScriptId::Bengali: return U'০';
    case ScriptId::Gurmukhi: return U'੦';
    case ScriptId::Gujarati: return U'૦';
    case ScriptId::Odia: return U'୦';
    case ScriptId::Tamil: return U'௦';
    case ScriptId::Telugu: return U'౦';
    case ScriptId::Kannada: return U'೦';
    case ScriptId::Malayalam: return U'൦';
    case ScriptId::AssameseBengali: return U'০';
  }
  throw std::invalid_argument("unknown script");
}

std::optional<ScriptId> script_from_name(std::string_view name) {
  static const std::unordered_map<std::string_view, ScriptId> kNames = {
      {"latin", ScriptId::Latin},
      {"devanagari", ScriptId::Devanagari},
      {"bengali", ScriptId::Bengali},
      {"gurmukhi", ScriptId::Gurmukhi},
      {"gujarati", ScriptId::Gujarati},
      {"odia", ScriptId::Odia},
      {"tamil", ScriptId::Tamil},
      {"telugu", ScriptId::Telugu},
      {"kannada", ScriptId::Kannada},
      {"malayalam", ScriptId::Malayalam},
      {"assamese-bengali", ScriptId::AssameseBengali},
  };
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto it = kNames.find(lower);
  if (it == kNames.end()) return std::nullopt;
  return it->second;
}

std::string script_name(ScriptId script) {
  switch (script) {
    case ScriptId::Latin: return "latin";
    case ScriptId::Devanagari: return "devanagari";
    case ScriptId::Bengali: return "bengali";
    case ScriptId::Gurmukhi: return "gurmukhi";
    case ScriptId::Gujarati: return "gujarati";
    case ScriptId::Odia: return "odia";
    case ScriptId::Tamil: return "tamil";
    case ScriptId::Telugu: return "telugu";
    case ScriptId::Kannada: return "kannada";
    case ScriptId::Malayalam: return "malayalam";
    case ScriptId::AssameseBengali: return "assamese-bengali";
  }
  throw std::invalid_argument("unknown script");
}

NormalizationConfig NormalizationConfig::all_on(std::optional<ScriptId> numeral) {
  NormalizationConfig config;
  config.lowercase_latin = true;
  config.strip_latin_accents = true;
  config.map_extended_punctuation = true;
  config.numeral_target = numeral;
  config.remove_nonprintable = true;
  config.collapse_whitespace = true;
  config.strip_redundant_quotes = true;
  config.canonicalize_indic = true;
  return config;
}

NormalizationConfig NormalizationConfig::from_json_text(std::string_view json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("normalization config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("normalization config must be a JSON object");

  NormalizationConfig config;
  const auto read_bool = [&](const char* key, bool& field) {
    if (!root.contains(key)) return;
    if (!root[key].is_boolean()) throw ConfigError(std::string(key) + " must be a boolean");
    field = root[key].get<bool>();
  };
  read_bool("lowercase_latin", config.lowercase_latin);
  read_bool("strip_latin_accents", config.strip_latin_accents);
  read_bool("map_extended_punctuation", config.map_extended_punctuation);
  read_bool("remove_nonprintable", config.remove_nonprintable);
  read_bool("collapse_whitespace", config.collapse_whitespace);
  read_bool("strip_redundant_quotes", config.strip_redundant_quotes);
  read_bool("canonicalize_indic", config.canonicalize_indic);
  if (root.contains("numeral_target") && !root["numeral_target"].is_null()) {
    if (!root["numeral_target"].is_string())
      throw ConfigError("numeral_target must be a script name or null");
    const std::string name = root["numeral_target"].get<std::string>();
    if (name != "none" && !name.empty()) {
      const auto script = script_from_name(name);
      if (!script) throw ConfigError("unknown numeral_target script: " + name);
      config.numeral_target = script;
    }
  }
  return config;
}

NormalizationConfig NormalizationConfig::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

namespace {

// Fixed extended-punctuation table. DANDA (U+0964) and DOUBLE DANDA
// (U+0965) are intentionally absent.
const char* map_punct(CodePoint cp) {
  switch (cp) {
    case U'‘':  // left single quotation mark
    case U'’':  // right single quotation mark
    case U'‚':  // single low-9
    case U'‛':  // single high-reversed-9
    case U'‹':  // single left angle
    case U'›':  // single right angle
      return "'";
    case U'“':  // left double quotation mark
    case U'”':  // right double quotation mark
    case U'„':  // double low-9
    case U'‟':  // double high-reversed-9
    case U'«':  // left guillemet
    case U'»':  // right guillemet
      return "\"";
    case U'‐':  // hyphen
    case U'‑':  // non-breaking hyphen
    case U'‒':  // figure dash
    case U'–':  // en dash
    case U'—':  // em dash
    case U'―':  // horizontal bar
    case U'−':  // minus sign
      return "-";
    case U'…':  // horizontal ellipsis
      return "...";
    default:
      return nullptr;
  }
}

std::string remove_nonprintable_step(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (CodePoint cp : uni::to_code_points(text)) {
    if (uni::is_control_or_format(cp) && !uni::is_white_space(cp)) continue;
    uni::append_utf8(out, cp);
  }
  return out;
}

std::string map_extended_punctuation_step(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (CodePoint cp : uni::to_code_points(text)) {
    if (const char* mapped = map_punct(cp)) {
      out += mapped;
    } else {
      uni::append_utf8(out, cp);
    }
  }
  return out;
}

std::string lowercase_latin_step(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (CodePoint cp : uni::to_code_points(text)) {
    uni::append_utf8(out, uni::is_latin(cp) ? uni::simple_lowercase(cp) : cp);
  }
  return out;
}

bool strip_quotes_once(std::vector<CodePoint>& cps) {
  bool changed = false;
  for (const CodePoint quote : {CodePoint(U'"'), CodePoint(U'\'')}) {
    const size_t count = static_cast<size_t>(std::count(cps.begin(), cps.end(), quote));
    if (count % 2 == 0) continue;
    size_t first = 0;
    while (first < cps.size() && uni::is_white_space(cps[first])) ++first;
    size_t last = cps.size();
    while (last > first && uni::is_white_space(cps[last - 1])) --last;
    if (first < cps.size() && cps[first] == quote) {
      cps.erase(cps.begin() + static_cast<ptrdiff_t>(first));
      changed = true;
    } else if (last > first && cps[last - 1] == quote) {
      cps.erase(cps.begin() + static_cast<ptrdiff_t>(last - 1));
      changed = true;
    }
  }
  return changed;
}

// Removes the unpaired quote of each kind when it sits at the start or end
// of the (trimmed) line, repeating while a removal exposes another unpaired
// boundary quote. Interior quotes and balanced pairs are kept.
std::string strip_redundant_quotes_step(std::string_view text) {
  std::vector<CodePoint> cps = uni::to_code_points(text);
  while (strip_quotes_once(cps)) {
  }
  return uni::to_utf8(cps);
}

std::string collapse_whitespace_step(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  bool seen_content = false;
  for (CodePoint cp : uni::to_code_points(text)) {
    if (uni::is_white_space(cp)) {
      pending_space = true;
      continue;
    }
    if (pending_space && seen_content) out.push_back(' ');
    pending_space = false;
    seen_content = true;
    uni::append_utf8(out, cp);
  }
  return out;
}

}  // namespace

std::string convert_numerals(std::string_view text, ScriptId target) {
  const CodePoint zero = digit_zero(target);
  std::string out;
  out.reserve(text.size());
  for (CodePoint cp : uni::to_code_points(text)) {
    if (uni::is_digit_ascii(cp)) {
      uni::append_utf8(out, zero + (cp - U'0'));
    } else {
      uni::append_utf8(out, cp);
    }
  }
  return out;
}

std::string strip_latin_accents(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool prev_base_latin = false;
  for (CodePoint cp : uni::to_code_points(text)) {
    if (uni::is_nonspacing_mark(cp)) {
      if (prev_base_latin) continue;  // drop mark on a Latin base
      uni::append_utf8(out, cp);
      continue;
    }
    if (uni::is_latin(cp)) {
      const auto decomposed = uni::canonical_decomposition(cp);
      if (!decomposed.empty()) {
        for (CodePoint part : decomposed) {
          if (uni::is_nonspacing_mark(part)) continue;
          uni::append_utf8(out, part);
        }
      } else {
        uni::append_utf8(out, cp);
      }
      prev_base_latin = true;
    } else {
      uni::append_utf8(out, cp);
      prev_base_latin = false;
    }
  }
  return out;
}

std::string canonicalize_indic(std::string_view text) { return uni::nfc(text); }

std::string normalize(std::string_view text, const NormalizationConfig& config) {
  std::string current(text);
  if (config.remove_nonprintable) current = remove_nonprintable_step(current);
  if (config.map_extended_punctuation) current = map_extended_punctuation_step(current);
  if (config.strip_latin_accents) current = strip_latin_accents(current);
  if (config.canonicalize_indic) current = canonicalize_indic(current);
  if (config.numeral_target) current = convert_numerals(current, *config.numeral_target);
  if (config.lowercase_latin) current = lowercase_latin_step(current);
  if (config.strip_redundant_quotes) current = strip_redundant_quotes_step(current);
  if (config.collapse_whitespace) current = collapse_whitespace_step(current);
  return current;
}

std::vector<std::string> pretokenize(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (CodePoint cp : uni::to_code_points(text)) {
    if (uni::is_white_space(cp)) {
      if (!current.empty()) {
        words.push_back(std::move(current));
        current.clear();
      }
    } else {
      uni::append_utf8(current, cp);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::string> pretokenize_split_punct(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  for (CodePoint cp : uni::to_code_points(text)) {
    if (uni::is_white_space(cp)) {
      flush();
    } else if (uni::is_punctuation(cp)) {
      flush();
      tokens.push_back(uni::to_utf8(cp));
    } else {
      uni::append_utf8(current, cp);
    }
  }
  flush();
  return tokens;
}

}  // namespace subtok
