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

#include "caitlin/construct_kind.hpp"

namespace caitlin {

ConstructFamily family_of(ConstructKind kind) {
  switch (kind) {
    case ConstructKind::While:
    case ConstructKind::Repeat:
    case ConstructKind::ForTo:
    case ConstructKind::ForDownto:
      return ConstructFamily::Iteration;
    case ConstructKind::If:
    case ConstructKind::IfElse:
    case ConstructKind::Case:
    case ConstructKind::CaseElse:
      return ConstructFamily::Selection;
  }
  return ConstructFamily::Selection;
}

std::string_view to_string(ConstructKind kind) {
  switch (kind) {
    case ConstructKind::While: return "WHILE";
    case ConstructKind::Repeat: return "REPEAT";
    case ConstructKind::ForTo: return "FOR_TO";
    case ConstructKind::ForDownto: return "FOR_DOWNTO";
    case ConstructKind::If: return "IF";
    case ConstructKind::IfElse: return "IF_ELSE";
    case ConstructKind::Case: return "CASE";
    case ConstructKind::CaseElse: return "CASE_ELSE";
  }
  return "?";
}

std::optional<ConstructKind> construct_kind_from_string(std::string_view name) {
  for (auto kind : kAllConstructKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(ConstructFamily family) {
  return family == ConstructFamily::Iteration ? "iteration" : "selection";
}

}  // namespace caitlin
