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

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace caitlin {

/// The eight auralized control constructs.
enum class ConstructKind {
  While,
  Repeat,
  ForTo,
  ForDownto,
  If,
  IfElse,
  Case,
  CaseElse,
};

inline constexpr std::array<ConstructKind, 8> kAllConstructKinds = {
    ConstructKind::While, ConstructKind::Repeat, ConstructKind::ForTo,
    ConstructKind::ForDownto, ConstructKind::If, ConstructKind::IfElse,
    ConstructKind::Case, ConstructKind::CaseElse};

/// Loops share one motif theme, selections another.
enum class ConstructFamily { Iteration, Selection };

ConstructFamily family_of(ConstructKind kind);

/// Upper-case wire names: WHILE, REPEAT, FOR_TO, FOR_DOWNTO, IF, IF_ELSE,
/// CASE, CASE_ELSE.
std::string_view to_string(ConstructKind kind);
std::optional<ConstructKind> construct_kind_from_string(std::string_view name);

std::string_view to_string(ConstructFamily family);

}  // namespace caitlin
