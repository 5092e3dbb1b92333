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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subtok {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad experiment/normalization config or CLI usage. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Bad corpus or model data. CLI exit code 3.
class DataError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public DataError {
 public:
  EmptyCorpusError() : DataError("corpus is empty") {}
  using DataError::DataError;
};

class EmptyFileError : public DataError {
 public:
  explicit EmptyFileError(const std::string& path) : DataError("empty file: " + path) {}
};

class NotUtf8Error : public DataError {
 public:
  NotUtf8Error(const std::string& path, size_t offset)
      : DataError("invalid UTF-8 in " + path + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

class LineCountMismatchError : public DataError {
 public:
  LineCountMismatchError(size_t src_lines, size_t tgt_lines)
      : DataError("line count mismatch: source has " + std::to_string(src_lines) +
                  " lines, target has " + std::to_string(tgt_lines)),
        src_lines_(src_lines),
        tgt_lines_(tgt_lines) {}
  size_t src_lines() const { return src_lines_; }
  size_t tgt_lines() const { return tgt_lines_; }

 private:
  size_t src_lines_;
  size_t tgt_lines_;
};

class VocabSizeTooSmallError : public ConfigError {
 public:
  VocabSizeTooSmallError(size_t requested, size_t minimum)
      : ConfigError("vocab size " + std::to_string(requested) +
                    " is smaller than the base inventory of " + std::to_string(minimum)) {}
};

class ZeroFrequencyError : public DataError {
 public:
  ZeroFrequencyError() : DataError("pair score requires all frequencies >= 1") {}
};

class EmptyReferenceError : public DataError {
 public:
  EmptyReferenceError() : DataError("reference has no tokens") {}
};

class IoError : public DataError {
 public:
  explicit IoError(const std::string& what) : DataError("I/O error: " + what) {}
};

}  // namespace subtok
