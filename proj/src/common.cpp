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

#include "caitlin/common.hpp"

#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace caitlin {

std::string format_beat(const Beat& beat) {
  if (beat.denominator() == 1) return std::to_string(beat.numerator());
  return std::to_string(beat.numerator()) + "/" +
         std::to_string(beat.denominator());
}

Beat parse_beat(const std::string& text) {
  auto parse_int = [&](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("malformed beat '" + text + "'");
    std::size_t used = 0;
    long long value = std::stoll(part, &used);
    if (used != part.size()) {
      throw std::invalid_argument("malformed beat '" + text + "'");
    }
    return static_cast<std::int64_t>(value);
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Beat(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Beat(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const SourcePos& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string() + ": file not found or unreadable");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto temp = path;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(temp);
      throw Error("cannot write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw Error("cannot write " + path.string() + ": " + ec.message());
  }
}

}  // namespace caitlin
