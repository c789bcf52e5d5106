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

#include "caitlin/schema.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace caitlin::schema {
namespace {

using motif::MotifNote;
using motif::MotifSpec;

constexpr std::string_view kIterationSignature = "1:0:1/2 3:0:1/2 5:0:1";
constexpr std::string_view kSelectionSignature = "5:0:1 4:0:1/2 3:0:1/2";

struct DefaultMotif {
  ConstructKind kind;
  std::string_view entry_tail;
  std::string_view exit_tail;
};

// Entry motifs span 5 beats and exit motifs 8 beats, each opening with its
// family signature. WHILE and REPEAT carry a second voice.
constexpr DefaultMotif kDefaultMotifs[] = {
    {ConstructKind::While, "4:0:1:2 6:0:1:4 5:0:1:3",
     "6:0:1:4 5:0:1:3 4:0:1:2 2:0:1:7 1:0:2:5"},
    {ConstructKind::Repeat, "5:0:1/2:3 6:0:1/2:4 5:0:1:3 1:1:1:5",
     "1:1:1:5 7:0:1:5 6:0:1:4 5:0:1:3 1:0:2:3"},
    {ConstructKind::ForTo, "6:0:1/2 7:0:1/2 1:1:2", "1:1:1 7:0:1/2 6:0:1/2 5:0:1 3:0:1 1:0:2"},
    {ConstructKind::ForDownto, "4:0:1/2 2:0:1/2 1:0:2", "4:0:1 3:0:1 2:0:1 7:-1:1 1:0:2"},
    {ConstructKind::If, "2:0:1 3:0:1 5:0:1", "2:0:1 1:0:1 2:0:1 3:0:1 1:0:2"},
    {ConstructKind::IfElse, "2:0:1 1:0:1 5:0:1", "4:0:1 3:0:1 2:0:1 7:-1:1 1:0:2"},
    {ConstructKind::Case, "4:0:1 5:0:1 6:0:1", "4:0:1 5:0:1 3:0:1 2:0:1 1:0:2"},
    {ConstructKind::CaseElse, "6:0:1 5:0:1 1:1:1", "6:0:1 5:0:1 3:0:1 2:0:1 1:0:2"},
};

constexpr std::pair<ConstructKind, int> kDefaultTimbres[] = {
    {ConstructKind::While, 48},   // string ensemble
    {ConstructKind::Repeat, 52},  // choir
    {ConstructKind::ForTo, 0},    // acoustic grand piano
    {ConstructKind::ForDownto, 1},
    {ConstructKind::If, 73},  // flute
    {ConstructKind::IfElse, 71},
    {ConstructKind::Case, 56},  // trumpet
    {ConstructKind::CaseElse, 60},
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = s.find(sep, start);
    out.emplace_back(s.substr(start, at == std::string_view::npos ? s.npos : at - start));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("expected an integer, found '" + std::string(text) + "'");
  }
  return value;
}

MotifSpec make_motif(ConstructKind kind, std::vector<MotifNote> notes) {
  return MotifSpec{family_of(kind), kind, std::move(notes)};
}

std::optional<PointOfInterest> point_from_string(std::string_view text) {
  for (auto p : kAllPointsOfInterest) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::string format_note(const MotifNote& n) {
  if (n.rest) return "r:0:" + format_beat(n.duration);
  std::string out = std::to_string(n.degree) + ":" + std::to_string(n.octave) + ":" +
                    format_beat(n.duration);
  if (n.harmony) out += ":" + std::to_string(*n.harmony);
  return out;
}

class Loader {
 public:
  explicit Loader(AuralizationSchema& schema) : s_(schema) {}

  void line(int number, std::string_view raw) {
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') return;
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(number, "expected 'section.key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (!seen_.insert(key).second) fail(number, "duplicate setting '" + key + "'");
    try {
      assign(key, value, number);
    } catch (const std::invalid_argument& e) {
      fail(number, key + ": " + e.what());
    } catch (const std::out_of_range&) {
      fail(number, key + ": value out of range");
    }
  }

 private:
  [[noreturn]] static void fail(int line, const std::string& message) {
    throw SchemaError({line, 1}, message);
  }

  static ConstructKind construct(const std::string& name, int line) {
    const auto kind = construct_kind_from_string(name);
    if (!kind) fail(line, "unknown construct '" + name + "'");
    return *kind;
  }

  void assign(const std::string& key, const std::string& value, int line) {
    const auto parts = split(key, '.');
    const std::string& section = parts[0];
    if (section == "general" && parts.size() == 2) {
      general(parts[1], value, line);
    } else if (section == "timbre" && parts.size() == 2) {
      if (parts[1] == "subexpr") {
        s_.subexpr_timbre = parse_int(value);
      } else {
        s_.timbre[construct(parts[1], line)] = parse_int(value);
      }
    } else if (section == "percussion" && parts.size() == 2) {
      if (parts[1] == "gm1_fallback") {
        s_.gm1_fallback = parse_bool(value);
        return;
      }
      const auto point = point_from_string(parts[1]);
      if (!point) fail(line, "unknown point of interest '" + parts[1] + "'");
      s_.percussion[*point] =
          value == "none" ? std::nullopt : std::optional<int>(parse_int(value));
    } else if (section == "scale" && parts.size() == 2) {
      const auto name = motif::scale_name_from_string(value);
      if (!name) fail(line, "unknown scale '" + value + "'");
      s_.construct_scales[construct(parts[1], line)] = *name;
    } else if (section == "motif" && parts.size() == 3) {
      const auto kind = construct(parts[1], line);
      auto spec = make_motif(kind, parse_motif_notes(value));
      auto& pair = s_.motifs[kind];
      if (parts[2] == "entry") {
        pair.entry = std::move(spec);
      } else if (parts[2] == "exit") {
        pair.exit = std::move(spec);
      } else {
        fail(line, "motif part must be entry or exit");
      }
    } else if (section == "durations" && parts.size() == 2) {
      durations(parts[1], value, line);
    } else {
      fail(line, "unknown setting '" + key + "'");
    }
  }

  static bool parse_bool(const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::invalid_argument("expected true or false");
  }

  void general(const std::string& key, const std::string& value, int line) {
    if (key == "name") {
      s_.name = value;
    } else if (key == "tempo") {
      s_.tempo_bpm = parse_int(value);
    } else if (key == "tonic") {
      s_.tonic = parse_int(value);
    } else if (key == "register") {
      s_.register_key = parse_int(value);
    } else if (key == "scale") {
      const auto name = motif::scale_name_from_string(value);
      if (!name) fail(line, "unknown scale '" + value + "'");
      s_.scale = *name;
    } else if (key == "true_mode" || key == "false_mode") {
      const auto mode = motif::mode_from_string(value);
      if (!mode) fail(line, "mode must be major or minor");
      (key == "true_mode" ? s_.true_mode : s_.false_mode) = *mode;
    } else if (key == "triad_inversion") {
      const auto inv = motif::inversion_from_string(value);
      if (!inv) fail(line, "inversion must be root, first or second");
      s_.triad_inversion = *inv;
    } else if (key == "max_iterations") {
      s_.max_iterations = parse_int(value);
    } else {
      fail(line, "unknown setting 'general." + key + "'");
    }
  }

  void durations(const std::string& key, const std::string& value, int line) {
    Beat* target = nullptr;
    auto& d = s_.durations;
    if (key == "prefix") target = &d.prefix;
    if (key == "iteration") target = &d.iteration;
    if (key == "condition") target = &d.condition;
    if (key == "case_test") target = &d.case_test;
    if (key == "else_chord") target = &d.else_chord;
    if (key == "subexpr") target = &d.subexpr;
    if (key == "elision") target = &d.elision;
    if (key == "hit") target = &d.hit;
    if (target == nullptr) fail(line, "unknown setting 'durations." + key + "'");
    *target = parse_beat(value);
  }

  AuralizationSchema& s_;
  std::set<std::string> seen_;
};

void check_range(std::vector<Diagnostic>& out, const std::string& field, long long value,
                 long long lo, long long hi) {
  if (value < lo || value > hi) {
    out.push_back({field, "value " + std::to_string(value) + " outside " + std::to_string(lo) +
                              ".." + std::to_string(hi)});
  }
}

}  // namespace

std::string_view to_string(PointOfInterest point) {
  switch (point) {
    case PointOfInterest::IterationPrefix: return "iterationPrefix";
    case PointOfInterest::IterationSuffix: return "iterationSuffix";
    case PointOfInterest::CaseTest: return "caseTest";
    case PointOfInterest::FinalIteration: return "finalIteration";
    case PointOfInterest::SelectionPrefix: return "selectionPrefix";
    case PointOfInterest::Elision: return "elision";
    case PointOfInterest::ConditionTest: return "conditionTest";
  }
  return "?";
}

motif::Scale AuralizationSchema::scale_for(ConstructKind kind) const {
  const auto it = construct_scales.find(kind);
  return motif::Scale(it != construct_scales.end() ? it->second : scale, tonic);
}

std::optional<int> AuralizationSchema::percussion_key(PointOfInterest point) const {
  const auto it = percussion.find(point);
  if (it == percussion.end() || !it->second) return std::nullopt;
  if (gm1_fallback && *it->second == kJingleBell) return kTambourine;
  return it->second;
}

AuralizationSchema default_schema() {
  AuralizationSchema s;
  s.name = "CAITLIN classic";
  for (const auto& [kind, program] : kDefaultTimbres) s.timbre[kind] = program;
  s.percussion = {
      {PointOfInterest::IterationPrefix, 81},  // open triangle
      {PointOfInterest::IterationSuffix, 80},  // mute triangle
      {PointOfInterest::CaseTest, 56},         // cowbell
      {PointOfInterest::FinalIteration, kJingleBell},
      {PointOfInterest::SelectionPrefix, 75},  // claves
      {PointOfInterest::Elision, 70},          // maracas
      {PointOfInterest::ConditionTest, std::nullopt},
  };
  for (const auto& m : kDefaultMotifs) {
    const auto signature = family_of(m.kind) == ConstructFamily::Iteration
                               ? kIterationSignature
                               : kSelectionSignature;
    auto notes = [&](std::string_view tail) {
      return parse_motif_notes(std::string(signature) + " " + std::string(tail));
    };
    s.motifs[m.kind] = MotifPair{make_motif(m.kind, notes(m.entry_tail)),
                                 make_motif(m.kind, notes(m.exit_tail))};
  }
  return s;
}

std::vector<MotifNote> parse_motif_notes(std::string_view text) {
  std::vector<MotifNote> notes;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const auto start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) break;
    const auto fields = split(text.substr(start, i - start), ':');
    if (fields.size() != 3 && fields.size() != 4) {
      throw std::invalid_argument("motif note '" + std::string(text.substr(start, i - start)) +
                                  "' needs degree:octave:duration[:harmony]");
    }
    MotifNote note;
    if (fields[0] == "r") {
      if (fields.size() != 3) throw std::invalid_argument("rests take no harmony");
      note.rest = true;
      note.degree = 1;
      note.octave = 0;
    } else {
      note.degree = parse_int(fields[0]);
      note.octave = parse_int(fields[1]);
    }
    note.duration = parse_beat(fields[2]);
    if (fields.size() == 4) note.harmony = parse_int(fields[3]);
    notes.push_back(note);
  }
  return notes;
}

std::string format_motif_notes(const std::vector<MotifNote>& notes) {
  std::string out;
  for (const auto& n : notes) {
    if (!out.empty()) out += ' ';
    out += format_note(n);
  }
  return out;
}

AuralizationSchema load_schema(std::string_view text) {
  AuralizationSchema schema = default_schema();
  Loader loader(schema);
  int number = 0;
  for (const auto& line : split(text, '\n')) loader.line(++number, line);
  return schema;
}

std::string save_schema(const AuralizationSchema& s) {
  std::string out;
  auto put = [&out](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  put("general.name", s.name);
  put("general.tempo", std::to_string(s.tempo_bpm));
  put("general.tonic", std::to_string(s.tonic));
  put("general.register", std::to_string(s.register_key));
  put("general.scale", std::string(motif::to_string(s.scale)));
  put("general.true_mode", std::string(motif::to_string(s.true_mode)));
  put("general.false_mode", std::string(motif::to_string(s.false_mode)));
  put("general.triad_inversion", std::string(motif::to_string(s.triad_inversion)));
  put("general.max_iterations", std::to_string(s.max_iterations));
  for (const auto& [kind, program] : s.timbre) {
    put("timbre." + std::string(to_string(kind)), std::to_string(program));
  }
  put("timbre.subexpr", std::to_string(s.subexpr_timbre));
  for (const auto& [point, key] : s.percussion) {
    put("percussion." + std::string(to_string(point)), key ? std::to_string(*key) : "none");
  }
  put("percussion.gm1_fallback", s.gm1_fallback ? "true" : "false");
  for (const auto& [kind, name] : s.construct_scales) {
    put("scale." + std::string(to_string(kind)), std::string(motif::to_string(name)));
  }
  for (const auto& [kind, pair] : s.motifs) {
    const std::string base = "motif." + std::string(to_string(kind));
    put(base + ".entry", format_motif_notes(pair.entry.notes));
    put(base + ".exit", format_motif_notes(pair.exit.notes));
  }
  const auto& d = s.durations;
  put("durations.prefix", format_beat(d.prefix));
  put("durations.iteration", format_beat(d.iteration));
  put("durations.condition", format_beat(d.condition));
  put("durations.case_test", format_beat(d.case_test));
  put("durations.else_chord", format_beat(d.else_chord));
  put("durations.subexpr", format_beat(d.subexpr));
  put("durations.elision", format_beat(d.elision));
  put("durations.hit", format_beat(d.hit));
  return out;
}

std::string to_string(const Diagnostic& diagnostic) {
  return diagnostic.field + ": " + diagnostic.message;
}

std::vector<Diagnostic> validate_schema(const AuralizationSchema& s) {
  std::vector<Diagnostic> out;
  check_range(out, "general.tempo", s.tempo_bpm, 20, 300);
  check_range(out, "general.tonic", s.tonic, 0, 11);
  // Triads reach 30 semitones above the register and the iteration span 35.
  check_range(out, "general.register", s.register_key, 0, 92);
  check_range(out, "general.max_iterations", s.max_iterations, 1, 1 << 20);
  if (s.scale != motif::ScaleName::Major) {
    out.push_back({"general.scale", "the construct-wide scale must be major so that modes "
                                    "can carry true and false"});
  }
  if (s.true_mode == s.false_mode) {
    out.push_back({"general.false_mode", "true and false must render in different modes"});
  }
  check_range(out, "timbre.subexpr", s.subexpr_timbre, 0, 127);
  for (auto point : kAllPointsOfInterest) {
    const std::string field = "percussion." + std::string(to_string(point));
    const auto it = s.percussion.find(point);
    const bool optional_point = point == PointOfInterest::ConditionTest;
    if (it == s.percussion.end() || !it->second) {
      if (!optional_point) out.push_back({field, "no percussion key bound"});
      continue;
    }
    check_range(out, field, *it->second, 27, 87);
  }
  for (const auto& [kind, name] : s.construct_scales) {
    (void)name;
    if (kind != ConstructKind::ForTo && kind != ConstructKind::ForDownto) {
      out.push_back({"scale." + std::string(to_string(kind)),
                     "per-construct scales are only permitted for FOR loops"});
    }
  }
  const auto& d = s.durations;
  for (const auto& [field, beat] :
       {std::pair{"durations.prefix", d.prefix}, {"durations.iteration", d.iteration},
        {"durations.condition", d.condition}, {"durations.case_test", d.case_test},
        {"durations.else_chord", d.else_chord}, {"durations.subexpr", d.subexpr},
        {"durations.elision", d.elision}, {"durations.hit", d.hit}}) {
    if (beat <= 0) out.push_back({field, "duration must be positive"});
  }

  std::map<ConstructFamily, std::vector<std::pair<std::string, std::vector<MotifNote>>>> prefixes;
  for (auto kind : kAllConstructKinds) {
    const std::string name(to_string(kind));
    if (s.timbre.count(kind) == 0) {
      out.push_back({"timbre." + name, "no timbre bound"});
    } else {
      check_range(out, "timbre." + name, s.timbre.at(kind), 0, 127);
    }
    const auto it = s.motifs.find(kind);
    if (it == s.motifs.end()) {
      out.push_back({"motif." + name, "no motifs bound"});
      continue;
    }
    for (const auto& [part, spec] : {std::pair{"entry", &it->second.entry},
                                     std::pair{"exit", &it->second.exit}}) {
      const std::string field = "motif." + name + "." + part;
      if (spec->total_duration() <= 0) {
        out.push_back({field, "motif must have positive total duration"});
        continue;
      }
      if (!(s.tonic >= 0 && s.tonic <= 11)) continue;
      try {
        for (auto mode : {motif::Mode::Major, motif::Mode::Minor}) {
          motif::realize_motif(*spec, s.scale_for(kind), mode, s.register_key, 0);
        }
      } catch (const motif::MotifError& e) {
        out.push_back({field, e.what()});
        continue;
      }
      if (spec->notes.size() < motif::kFamilySignatureLength) {
        out.push_back({field, "family-prefix: motif shorter than the family signature"});
        continue;
      }
      prefixes[family_of(kind)].emplace_back(
          field, std::vector<MotifNote>(spec->notes.begin(),
                                        spec->notes.begin() + motif::kFamilySignatureLength));
    }
  }

  std::map<ConstructFamily, std::vector<MotifNote>> signatures;
  for (const auto& [family, entries] : prefixes) {
    // The family signature is the prefix most motifs agree on.
    std::size_t best = 0;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto count = static_cast<std::size_t>(
          std::count_if(entries.begin(), entries.end(),
                        [&](const auto& e) { return e.second == entries[i].second; }));
      if (count > best_count) {
        best = i;
        best_count = count;
      }
    }
    signatures[family] = entries[best].second;
    for (const auto& [field, prefix] : entries) {
      if (prefix != entries[best].second) {
        out.push_back({field, "family-prefix: does not open with the " +
                                  std::string(to_string(family)) + " signature " +
                                  format_motif_notes(entries[best].second)});
      }
    }
  }
  if (signatures.size() == 2 &&
      signatures[ConstructFamily::Iteration] == signatures[ConstructFamily::Selection]) {
    out.push_back({"motif", "family-prefix: iteration and selection signatures must differ"});
  }
  return out;
}

InvalidSchema::InvalidSchema(std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? std::string("invalid schema")
                                : "invalid schema: " + to_string(diagnostics.front())),
      diagnostics_(std::move(diagnostics)) {}

AuralizationSchema load_valid_schema(std::string_view text) {
  auto schema = load_schema(text);
  auto diagnostics = validate_schema(schema);
  if (!diagnostics.empty()) throw InvalidSchema(std::move(diagnostics));
  return schema;
}

}  // namespace caitlin::schema
