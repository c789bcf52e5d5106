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

#include "caitlin/score.hpp"

#include <algorithm>

#include "caitlin/digest.hpp"

namespace caitlin::score {
namespace {

using schema::PointOfInterest;
using trace::EventKind;

int channel_for(ConstructKind kind) {
  return family_of(kind) == ConstructFamily::Iteration ? kIterationChannel : kSelectionChannel;
}

class Renderer {
 public:
  Renderer(const trace::Trace& trace, const schema::AuralizationSchema& schema)
      : trace_(trace), s_(schema) {}

  Score run() {
    Score score;
    score.track_plan = {{"iteration", kIterationChannel},
                        {"selection", kSelectionChannel},
                        {"subexpr", kSubexprChannel},
                        {"percussion", kPercussionChannel}};
    prescan();
    ScoreEvent tempo;
    tempo.kind = ScoreEventKind::Tempo;
    tempo.bpm = s_.tempo_bpm;
    out_.push_back(tempo);
    for (const auto& [channel, program] : initial_programs_) {
      program_change(channel, program);
    }
    for (const auto& e : trace_.events) event(e);
    sort_events(out_);
    score.events = std::move(out_);
    return score;
  }

 private:
  struct Open {
    int construct_id;
    ConstructKind kind;
    std::int64_t ticks;
    bool matched = false;
  };

  void prescan() {
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < trace_.events.size(); ++i) {
      const auto& e = trace_.events[i];
      int channel = -1;
      int program = 0;
      if (e.event == EventKind::ConstructEnter) {
        stack.push_back(i);
        tick_counts_[i] = 0;
        channel = channel_for(e.construct);
        program = timbre(e.construct);
      } else if (e.event == EventKind::ConstructExit) {
        if (!stack.empty()) stack.pop_back();
      } else if (e.event == EventKind::IterationTick && !stack.empty()) {
        ++tick_counts_[stack.back()];
      } else if (e.event == EventKind::SubexprOutcome) {
        channel = kSubexprChannel;
        program = s_.subexpr_timbre;
      }
      if (channel >= 0 && initial_programs_.count(channel) == 0) {
        initial_programs_[channel] = program;
      }
    }
  }

  int timbre(ConstructKind kind) const {
    const auto it = s_.timbre.find(kind);
    if (it == s_.timbre.end()) {
      throw RenderError("schema has no timbre for " + std::string(to_string(kind)));
    }
    return it->second;
  }

  const schema::MotifPair& motifs(ConstructKind kind) const {
    const auto it = s_.motifs.find(kind);
    if (it == s_.motifs.end()) {
      throw RenderError("schema has no motifs for " + std::string(to_string(kind)));
    }
    return it->second;
  }

  int required_key(PointOfInterest point) const {
    const auto key = s_.percussion_key(point);
    if (!key) {
      throw RenderError("schema has no percussion key for " + std::string(to_string(point)));
    }
    return *key;
  }

  void program_change(int channel, int program) {
    ScoreEvent e;
    e.kind = ScoreEventKind::ProgramChange;
    e.channel = channel;
    e.start = cursor_;
    e.program = program;
    e.role = seq_ < 0 ? Role::Setup : role_;
    e.seq = seq_;
    out_.push_back(e);
    programs_[channel] = program;
  }

  void use_program(int channel, int program) {
    const auto it = programs_.find(channel);
    if (it == programs_.end() || it->second != program) program_change(channel, program);
  }

  void hit(int key, Beat at) {
    ScoreEvent e;
    e.kind = ScoreEventKind::Percussion;
    e.channel = kPercussionChannel;
    e.start = at;
    e.duration = s_.durations.hit;
    e.key = key;
    e.velocity = kPercussionVelocity;
    e.role = role_;
    e.seq = seq_;
    out_.push_back(e);
  }

  void note(int channel, int key, Beat at, Beat duration, std::optional<motif::Mode> mode) {
    ScoreEvent e;
    e.kind = ScoreEventKind::Note;
    e.channel = channel;
    e.start = at;
    e.duration = duration;
    e.key = key;
    e.velocity = kNoteVelocity;
    e.role = role_;
    e.mode = mode;
    e.seq = seq_;
    out_.push_back(e);
  }

  Beat play_motif(const motif::MotifSpec& spec, ConstructKind kind, motif::Mode mode) {
    const int channel = channel_for(kind);
    use_program(channel, timbre(kind));
    for (const auto& n : motif::realize_motif(spec, s_.scale_for(kind), mode, s_.register_key,
                                              cursor_, kNoteVelocity)) {
      note(channel, n.pitch, n.start, n.duration, mode);
    }
    return spec.total_duration();
  }

  void triad(ConstructKind kind, motif::Mode quality, Beat duration) {
    const int channel = channel_for(kind);
    use_program(channel, timbre(kind));
    const auto chord = motif::build_triad(s_.scale_for(kind).tonic(), quality,
                                          s_.triad_inversion, s_.register_key);
    for (int key : chord.keys()) note(channel, key, cursor_, duration, quality);
  }

  Open& top() {
    if (open_.empty()) throw RenderError("trace event outside any construct");
    return open_.back();
  }

  void event(const trace::TraceEvent& e) {
    seq_ = static_cast<std::int64_t>(e.seq);
    const bool iteration = family_of(e.construct) == ConstructFamily::Iteration;
    switch (e.event) {
      case EventKind::ConstructEnter: {
        const auto index = static_cast<std::size_t>(&e - trace_.events.data());
        open_.push_back({e.construct_id, e.construct, tick_counts_[index]});
        role_ = Role::Prefix;
        use_program(channel_for(e.construct), timbre(e.construct));
        hit(required_key(iteration ? PointOfInterest::IterationPrefix
                                   : PointOfInterest::SelectionPrefix),
            cursor_);
        cursor_ += s_.durations.prefix;
        role_ = Role::Entry;
        cursor_ += play_motif(motifs(e.construct).entry, e.construct, s_.true_mode);
        break;
      }
      case EventKind::ConditionOutcome: {
        auto& o = top();
        o.matched = *e.outcome;
        role_ = Role::Condition;
        triad(e.construct, *e.outcome ? s_.true_mode : s_.false_mode, s_.durations.condition);
        if (const auto key = s_.percussion_key(PointOfInterest::ConditionTest)) hit(*key, cursor_);
        cursor_ += s_.durations.condition;
        break;
      }
      case EventKind::SubexprOutcome: {
        role_ = Role::Subexpr;
        use_program(kSubexprChannel, s_.subexpr_timbre);
        const auto quality = *e.outcome ? s_.true_mode : s_.false_mode;
        const int root = motif::anchor_key(s_.tonic, s_.register_key);
        note(kSubexprChannel, root, cursor_, s_.durations.subexpr, quality);
        note(kSubexprChannel, root + (quality == motif::Mode::Major ? 4 : 3), cursor_,
             s_.durations.subexpr, quality);
        cursor_ += s_.durations.subexpr;
        break;
      }
      case EventKind::IterationTick: {
        const auto& o = top();
        const auto index = *e.iteration;
        const bool final = *e.is_final;
        if (index <= s_.max_iterations || final) {
          role_ = Role::Iteration;
          const int channel = channel_for(e.construct);
          use_program(channel, timbre(e.construct));
          const auto total = std::max<std::int64_t>(o.ticks, index);
          const auto scale = s_.scale_for(e.construct);
          const int key = total > 1
                              ? motif::quantize_to_scale(index, 1, total, scale, s_.register_key)
                              : motif::anchor_key(scale.tonic(), s_.register_key);
          note(channel, key, cursor_, s_.durations.iteration, std::nullopt);
          if (final) {
            role_ = Role::FinalMarker;
            hit(required_key(PointOfInterest::FinalIteration), cursor_);
          }
          cursor_ += s_.durations.iteration;
        } else if (index == s_.max_iterations + 1) {
          role_ = Role::Elision;
          hit(required_key(PointOfInterest::Elision), cursor_);
          cursor_ += s_.durations.elision;
        }
        break;
      }
      case EventKind::CaseArmTest: {
        auto& o = top();
        role_ = Role::CaseTest;
        hit(required_key(PointOfInterest::CaseTest), cursor_);
        if (*e.outcome) {
          o.matched = true;
          role_ = Role::CaseMatch;
          triad(e.construct, s_.true_mode, s_.durations.case_test);
        }
        cursor_ += s_.durations.case_test;
        break;
      }
      case EventKind::ElsePathTaken: {
        role_ = Role::ElseChord;
        triad(e.construct, s_.false_mode, s_.durations.else_chord);
        cursor_ += s_.durations.else_chord;
        break;
      }
      case EventKind::ConstructExit: {
        const Open o = top();
        open_.pop_back();
        role_ = Role::Exit;
        const auto mode = iteration || o.matched ? s_.true_mode : s_.false_mode;
        const Beat length = play_motif(motifs(e.construct).exit, e.construct, mode);
        if (iteration) {
          role_ = Role::Suffix;
          hit(required_key(PointOfInterest::IterationSuffix),
              std::max(cursor_, cursor_ + length - Beat(1)));
        }
        cursor_ += length;
        break;
      }
    }
  }

  const trace::Trace& trace_;
  const schema::AuralizationSchema& s_;
  std::map<std::size_t, std::int64_t> tick_counts_;
  std::map<int, int> initial_programs_;
  std::map<int, int> programs_;
  std::vector<Open> open_;
  std::vector<ScoreEvent> out_;
  Beat cursor_ = 0;
  std::int64_t seq_ = -1;
  Role role_ = Role::Setup;
};

}  // namespace

std::string_view to_string(ScoreEventKind kind) {
  switch (kind) {
    case ScoreEventKind::Tempo: return "tempo";
    case ScoreEventKind::ProgramChange: return "programChange";
    case ScoreEventKind::Percussion: return "percussion";
    case ScoreEventKind::Note: return "note";
  }
  return "?";
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Setup: return "setup";
    case Role::Prefix: return "prefix";
    case Role::Entry: return "entry";
    case Role::Condition: return "condition";
    case Role::Subexpr: return "subexpr";
    case Role::Iteration: return "iteration";
    case Role::FinalMarker: return "final";
    case Role::Elision: return "elision";
    case Role::CaseTest: return "caseTest";
    case Role::CaseMatch: return "caseMatch";
    case Role::ElseChord: return "else";
    case Role::Exit: return "exit";
    case Role::Suffix: return "suffix";
  }
  return "?";
}

void sort_events(std::vector<ScoreEvent>& events) {
  std::stable_sort(events.begin(), events.end(), [](const ScoreEvent& a, const ScoreEvent& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.channel != b.channel) return a.channel < b.channel;
    return a.kind < b.kind;
  });
}

Score auralize(const trace::Trace& trace, const schema::AuralizationSchema& schema) {
  return Renderer(trace, schema).run();
}

std::string canonical_text(const Score& score) {
  std::string out = "ppq=" + std::to_string(score.ppq) + "\n";
  for (const auto& e : score.events) {
    out += std::string(to_string(e.kind)) + " ch=" + std::to_string(e.channel) +
           " start=" + format_beat(e.start) + " dur=" + format_beat(e.duration) +
           " key=" + std::to_string(e.key) + " vel=" + std::to_string(e.velocity) +
           " prog=" + std::to_string(e.program) + " bpm=" + std::to_string(e.bpm) +
           " role=" + std::string(to_string(e.role)) +
           " mode=" + (e.mode ? std::string(motif::to_string(*e.mode)) : "-") +
           " seq=" + std::to_string(e.seq) + "\n";
  }
  return out;
}

std::string score_digest(const Score& score) { return sha256_hex(canonical_text(score)); }

}  // namespace caitlin::score
