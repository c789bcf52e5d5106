// Copyright 2026 The Caitlin Authors
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
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/rational.hpp>

namespace caitlin {

/// Musical time measured in quarter-note beats. Exact so that motif
/// durations such as 1/3 accumulate without drift.
using Beat = boost::rational<std::int64_t>;

/// Formats a beat value as "n" or "n/d".
std::string format_beat(const Beat& beat);

/// Parses "n" or "n/d". Throws std::invalid_argument on malformed text or a
/// zero denominator.
Beat parse_beat(const std::string& text);

struct SourcePos {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

std::string to_string(const SourcePos& pos);

/// Base class for every error raised by the toolchain.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An error tied to a location in some text input.
class PositionedError : public Error {
 public:
  PositionedError(SourcePos pos, const std::string& message)
      : Error(to_string(pos) + ": " + message), pos_(pos), detail_(message) {}

  SourcePos pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  SourcePos pos_;
  std::string detail_;
};

/// Reads a whole file. Throws Error naming the path when it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames it into place, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// Owning pointer with value semantics, used for recursive AST nodes.
template <typename T>
class Box {
 public:
  Box() : ptr_(std::make_unique<T>()) {}
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

 private:
  // Never null except after a move.
  std::unique_ptr<T> ptr_;
};

}  // namespace caitlin
