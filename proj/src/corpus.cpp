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

#include "caitlin/corpus.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "caitlin/digest.hpp"

namespace caitlin::corpus {
namespace {

using namespace caitlin::lang;

// Pointers into a program, each list in source order.
struct Sites {
  std::vector<Stmt*> stmts;
  std::vector<Expr*> exprs;
  std::vector<std::pair<CaseLabel*, Case*>> labels;
  std::vector<StringLiteral*> strings;

  void expr(Expr& e) {
    exprs.push_back(&e);
    if (auto* u = std::get_if<Unary>(&e.node)) {
      expr(*u->operand);
    } else if (auto* b = std::get_if<Binary>(&e.node)) {
      expr(*b->lhs);
      expr(*b->rhs);
    }
  }

  void list(StmtList& body) {
    for (auto& s : body) stmt(s);
  }

  void stmt(Stmt& s) {
    stmts.push_back(&s);
    std::visit(
        [&](auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Assign>) {
            expr(n.value);
          } else if constexpr (std::is_same_v<T, Writeln>) {
            for (auto& arg : n.args) {
              if (auto* text = std::get_if<StringLiteral>(&arg)) {
                strings.push_back(text);
              } else {
                expr(std::get<Expr>(arg));
              }
            }
          } else if constexpr (std::is_same_v<T, Compound>) {
            list(n.body);
          } else if constexpr (std::is_same_v<T, While>) {
            expr(n.condition);
            stmt(*n.body);
          } else if constexpr (std::is_same_v<T, Repeat>) {
            list(n.body);
            expr(n.condition);
          } else if constexpr (std::is_same_v<T, For>) {
            expr(n.from);
            expr(n.to);
            stmt(*n.body);
          } else if constexpr (std::is_same_v<T, If>) {
            expr(n.condition);
            stmt(*n.then_branch);
            if (n.else_branch) stmt(**n.else_branch);
          } else if constexpr (std::is_same_v<T, Case>) {
            expr(n.selector);
            for (auto& arm : n.arms) {
              for (auto& label : arm.labels) labels.emplace_back(&label, &n);
              stmt(*arm.body);
            }
            list(n.else_body);
          }
        },
        s.node);
  }
};

Sites collect(Program& program) {
  Sites sites;
  sites.list(program.body);
  return sites;
}

// True when an ELSE printed after `s` would bind to an IF nested inside it.
bool open_ended(const Stmt& s) {
  if (const auto* i = std::get_if<If>(&s.node)) {
    return !i->else_branch || open_ended(**i->else_branch);
  }
  if (const auto* w = std::get_if<While>(&s.node)) return open_ended(*w->body);
  if (const auto* f = std::get_if<For>(&s.node)) return open_ended(*f->body);
  return false;
}

std::optional<BinaryOp> flipped(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return BinaryOp::Ge;
    case BinaryOp::Ge: return BinaryOp::Lt;
    case BinaryOp::Gt: return BinaryOp::Le;
    case BinaryOp::Le: return BinaryOp::Gt;
    case BinaryOp::Eq: return BinaryOp::Ne;
    case BinaryOp::Ne: return BinaryOp::Eq;
    default: return std::nullopt;
  }
}

bool is_and_or(const Expr& e) {
  const auto* b = std::get_if<Binary>(&e.node);
  return b && (b->op == BinaryOp::And || b->op == BinaryOp::Or);
}

std::optional<Type> declared_type(const Program& program, const std::string& name) {
  auto fold = [](std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
  };
  for (const auto& d : program.declarations) {
    if (fold(d.name) == fold(name)) return d.type;
  }
  return std::nullopt;
}

bool has_swappable_pair(const std::string& text) {
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != text[i + 1]) return true;
  }
  return false;
}

// Eligible site indices into the relevant Sites list.
struct Eligible {
  std::vector<Stmt*> stmts;
  std::vector<Expr*> exprs;
  std::vector<std::pair<CaseLabel*, Case*>> labels;
  std::vector<StringLiteral*> strings;

  std::size_t size() const {
    return stmts.size() + exprs.size() + labels.size() + strings.size();
  }
};

Eligible eligible(Program& program, MutationKind kind) {
  auto sites = collect(program);
  Eligible out;
  switch (kind) {
    case MutationKind::FlipRelationalOperator:
      for (auto* e : sites.exprs) {
        const auto* b = std::get_if<Binary>(&e->node);
        if (b && flipped(b->op)) out.exprs.push_back(e);
      }
      break;
    case MutationKind::OffByOneLoopBound:
      for (auto* s : sites.stmts) {
        const auto* f = std::get_if<For>(&s->node);
        if (f && declared_type(program, f->variable) == Type::Integer) out.stmts.push_back(s);
      }
      break;
    case MutationKind::WrongCaseLabel:
      out.labels = sites.labels;
      break;
    case MutationKind::SwapAndOr:
      for (auto* e : sites.exprs) {
        if (is_and_or(*e)) out.exprs.push_back(e);
      }
      break;
    case MutationKind::DeadElseInjection:
      for (auto* s : sites.stmts) {
        const auto* i = std::get_if<If>(&s->node);
        if (i && !i->else_branch && !open_ended(*i->then_branch)) out.stmts.push_back(s);
      }
      break;
    case MutationKind::PureOutputTextChange:
      for (auto* text : sites.strings) {
        if (has_swappable_pair(text->text)) out.strings.push_back(text);
      }
      break;
  }
  return out;
}

Expr int_literal(std::int64_t value, SourcePos pos) {
  Expr e;
  e.node = IntLiteral{value};
  e.pos = pos;
  return e;
}

void shift_bound(Expr& bound, int delta) {
  if (auto* lit = std::get_if<IntLiteral>(&bound.node)) {
    if (lit->value + delta >= 0) {
      lit->value += delta;
      return;
    }
  }
  Expr sum;
  sum.pos = bound.pos;
  sum.node = Binary{delta > 0 ? BinaryOp::Add : BinaryOp::Sub, Box<Expr>(bound),
                    Box<Expr>(int_literal(1, bound.pos))};
  bound = std::move(sum);
}

void relabel(CaseLabel& label, const Case& owner) {
  std::set<std::int64_t> used;
  for (const auto& arm : owner.arms) {
    for (const auto& l : arm.labels) used.insert(l.value);
  }
  const bool is_char = label.type == Type::Char;
  for (std::int64_t step = 1; step < 256; ++step) {
    for (const std::int64_t candidate : {label.value + step, label.value - step}) {
      if (is_char && (candidate < 32 || candidate > 126)) continue;
      if (used.count(candidate) == 0) {
        label.value = candidate;
        return;
      }
    }
  }
  throw MutationError("no unused label value near " + std::to_string(label.value));
}

}  // namespace

std::string_view to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::FlipRelationalOperator: return "flipRelationalOperator";
    case MutationKind::OffByOneLoopBound: return "offByOneLoopBound";
    case MutationKind::WrongCaseLabel: return "wrongCaseLabel";
    case MutationKind::SwapAndOr: return "swapAndOr";
    case MutationKind::DeadElseInjection: return "deadElseInjection";
    case MutationKind::PureOutputTextChange: return "pureOutputTextChange";
  }
  return "?";
}

std::optional<MutationKind> mutation_kind_from_string(std::string_view text) {
  for (auto kind : kAllMutationKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::size_t count_sites(const Program& program, MutationKind kind) {
  Program copy = program;
  return eligible(copy, kind).size();
}

Program mutate(const Program& program, MutationKind kind, std::uint64_t seed) {
  Program out = program;
  auto sites = eligible(out, kind);
  const auto n = sites.size();
  if (n == 0) {
    throw MutationError("no eligible site for " + std::string(to_string(kind)));
  }
  std::mt19937_64 rng(seed);
  const auto pick = rng() % n;
  switch (kind) {
    case MutationKind::FlipRelationalOperator: {
      auto& b = std::get<Binary>(sites.exprs[pick]->node);
      b.op = *flipped(b.op);
      break;
    }
    case MutationKind::OffByOneLoopBound: {
      auto& f = std::get<For>(sites.stmts[pick]->node);
      shift_bound(f.to, (rng() & 1) ? 1 : -1);
      break;
    }
    case MutationKind::WrongCaseLabel: {
      auto [label, owner] = sites.labels[pick];
      relabel(*label, *owner);
      break;
    }
    case MutationKind::SwapAndOr: {
      auto& b = std::get<Binary>(sites.exprs[pick]->node);
      b.op = b.op == BinaryOp::And ? BinaryOp::Or : BinaryOp::And;
      break;
    }
    case MutationKind::DeadElseInjection: {
      auto& i = std::get<If>(sites.stmts[pick]->node);
      // Shaped like a parsed `BEGIN END`, which holds one empty statement.
      Stmt empty;
      empty.pos = sites.stmts[pick]->pos;
      Stmt empty_block;
      empty_block.node = Compound{{empty}};
      empty_block.pos = empty.pos;
      i.else_branch = Box<Stmt>(std::move(empty_block));
      break;
    }
    case MutationKind::PureOutputTextChange: {
      auto& text = sites.strings[pick]->text;
      std::vector<std::size_t> pairs;
      for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] != text[i + 1]) pairs.push_back(i);
      }
      const auto at = pairs[rng() % pairs.size()];
      std::swap(text[at], text[at + 1]);
      break;
    }
  }
  number_nodes(out);
  out.source_digest = sha256_hex(print_program(out));
  if (auto diagnostics = check(out); !diagnostics.empty()) {
    throw MutationError("mutant fails static checks: " + lang::to_string(diagnostics.front()));
  }
  return out;
}

std::vector<DecisionMark> decision_marks(const score::Score& s) {
  using score::Role;
  std::vector<DecisionMark> marks;
  // Consecutive events of one chord share seq and role.
  std::map<std::pair<std::int64_t, int>, std::vector<const score::ScoreEvent*>> groups;
  std::vector<std::pair<std::int64_t, int>> order;
  for (const auto& e : s.events) {
    if (e.kind != score::ScoreEventKind::Note) continue;
    const bool triad =
        e.role == Role::Condition || e.role == Role::CaseMatch || e.role == Role::ElseChord;
    if (!triad && e.role != Role::Exit) continue;
    const std::pair<std::int64_t, int> key{e.seq, static_cast<int>(e.role)};
    if (groups.count(key) == 0) order.push_back(key);
    groups[key].push_back(&e);
  }
  for (const auto& key : order) {
    const auto& events = groups[key];
    DecisionMark mark;
    mark.start = events.front()->start;
    for (const auto* e : events) mark.start = std::min(mark.start, e->start);
    if (static_cast<Role>(key.second) == Role::Exit) {
      mark.what = "exit";
      mark.mode = events.front()->mode;
    } else {
      mark.what = "triad";
      std::vector<int> keys;
      for (const auto* e : events) keys.push_back(e->key);
      if (const auto shape = motif::classify_triad(motif::PitchSet(keys))) mark.mode = shape->quality;
    }
    marks.push_back(mark);
  }
  std::stable_sort(marks.begin(), marks.end(),
                   [](const DecisionMark& a, const DecisionMark& b) { return a.start < b.start; });
  return marks;
}

DiffReport compare_auralizations(const score::Score& a, const score::Score& b) {
  DiffReport report;
  const auto n = std::min(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a.events[i] == b.events[i])) {
      report.first_divergence = std::min(a.events[i].start, b.events[i].start);
      break;
    }
  }
  if (!report.first_divergence && a.events.size() != b.events.size()) {
    report.first_divergence =
        a.events.size() > n ? a.events[n].start : b.events[n].start;
  }
  if (!report.first_divergence && a.ppq != b.ppq) report.first_divergence = Beat(0);

  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& e : a.events) ++counts[std::string(score::to_string(e.kind))].first;
  for (const auto& e : b.events) ++counts[std::string(score::to_string(e.kind))].second;
  for (const auto& [kind, pair] : counts) {
    if (pair.first != pair.second) report.count_differences[kind] = pair;
  }

  const auto marks_a = decision_marks(a);
  const auto marks_b = decision_marks(b);
  for (std::size_t i = 0; i < std::max(marks_a.size(), marks_b.size()); ++i) {
    ModeDifference d;
    d.index = i;
    if (i < marks_a.size()) {
      d.what = marks_a[i].what;
      d.start_a = marks_a[i].start;
      d.mode_a = marks_a[i].mode;
    }
    if (i < marks_b.size()) {
      if (d.what.empty()) d.what = marks_b[i].what;
      d.start_b = marks_b[i].start;
      d.mode_b = marks_b[i].mode;
    }
    const bool both = i < marks_a.size() && i < marks_b.size();
    if (!both || d.mode_a != d.mode_b) report.mode_differences.push_back(d);
  }
  return report;
}

std::string to_string(const DiffReport& diff) {
  if (diff.empty()) return "no difference\n";
  std::ostringstream out;
  if (diff.first_divergence) out << "first divergence at beat " << format_beat(*diff.first_divergence) << "\n";
  for (const auto& [kind, pair] : diff.count_differences) {
    out << kind << " count " << pair.first << " vs " << pair.second << "\n";
  }
  auto mode = [](const std::optional<motif::Mode>& m) {
    return m ? std::string(motif::to_string(*m)) : std::string("-");
  };
  auto beat = [](const std::optional<Beat>& b) { return b ? format_beat(*b) : std::string("-"); };
  for (const auto& d : diff.mode_differences) {
    out << d.what << " #" << d.index << " at beat " << beat(d.start_a) << "/" << beat(d.start_b)
        << ": " << mode(d.mode_a) << " vs " << mode(d.mode_b) << "\n";
  }
  return out.str();
}

namespace {

std::string trim(std::string s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::optional<std::string> read_optional(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  return read_file(path);
}

}  // namespace

CorpusCase load_case(const std::filesystem::path& dir) {
  CorpusCase c;
  c.name = dir.filename().string();
  c.correct_source = read_file(dir / "correct.pas");
  c.bug_source = read_file(dir / "bug.pas");
  if (auto text = read_optional(dir / "mutation.txt")) {
    c.mutation = mutation_kind_from_string(trim(*text));
    if (!c.mutation) throw CorpusError(c.name + ": unknown mutation kind '" + trim(*text) + "'");
  }

  std::map<std::string, bool> flags;
  std::istringstream expect(read_file(dir / "expect.txt"));
  std::string line;
  int line_no = 0;
  while (std::getline(expect, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string name, flag, extra;
    fields >> name >> flag;
    if (flag.empty() || (fields >> extra) || (flag != "true" && flag != "false")) {
      throw CorpusError(c.name + ": expect.txt line " + std::to_string(line_no) +
                        ": expected '<input> true|false'");
    }
    if (!flags.emplace(name, flag == "true").second) {
      throw CorpusError(c.name + ": expect.txt lists input '" + name + "' twice");
    }
  }

  std::vector<std::filesystem::path> inputs;
  if (std::filesystem::is_directory(dir / "inputs")) {
    for (const auto& entry : std::filesystem::directory_iterator(dir / "inputs")) {
      if (entry.path().extension() == ".txt") inputs.push_back(entry.path());
    }
  }
  std::sort(inputs.begin(), inputs.end());
  for (const auto& path : inputs) {
    CorpusInput input;
    input.name = path.stem().string();
    input.text = read_file(path);
    const auto flag = flags.find(input.name);
    if (flag == flags.end()) {
      throw CorpusError(c.name + ": input '" + input.name + "' has no line in expect.txt");
    }
    input.expected_divergence = flag->second;
    flags.erase(flag);
    input.correct_output = read_optional(dir / "outputs" / (input.name + ".correct.txt"));
    input.bug_output = read_optional(dir / "outputs" / (input.name + ".bug.txt"));
    c.inputs.push_back(std::move(input));
  }
  if (!flags.empty()) {
    throw CorpusError(c.name + ": expect.txt names missing input '" + flags.begin()->first + "'");
  }
  if (c.inputs.empty()) throw CorpusError(c.name + ": no inputs");
  return c;
}

std::vector<CorpusCase> load_corpus(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root)) {
    throw CorpusError("corpus directory not found: " + root.string());
  }
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<CorpusCase> cases;
  for (const auto& dir : dirs) cases.push_back(load_case(dir));
  return cases;
}

std::optional<std::uint64_t> find_mutation_seed(const CorpusCase& c, std::uint64_t limit) {
  if (!c.mutation) return std::nullopt;
  const auto correct = compile(c.correct_source);
  const auto bug = compile(c.bug_source);
  for (std::uint64_t seed = 0; seed < limit; ++seed) {
    if (same_shape(mutate(correct, *c.mutation, seed), bug)) return seed;
  }
  return std::nullopt;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Info: return "INFO";
  }
  return "?";
}

namespace {

struct Rendered {
  interp::Execution execution;
  score::Score score;
};

Rendered render(const Program& program, const std::string& input, const HarnessOptions& options) {
  Rendered r{interp::run(program, input, options.run), {}};
  r.score = score::auralize(r.execution.trace, options.schema);
  return r;
}

void add_note(std::string& note, const std::string& text) {
  if (!note.empty()) note += "; ";
  note += text;
}

}  // namespace

std::vector<CaseResult> run_case(const CorpusCase& c, const HarnessOptions& options) {
  std::vector<CaseResult> results;
  Program correct, bug;
  std::string compile_failure;
  try {
    correct = compile(c.correct_source);
  } catch (const CompileError& e) {
    compile_failure = "correct.pas: " + std::string(e.what());
  }
  try {
    bug = compile(c.bug_source);
  } catch (const CompileError& e) {
    add_note(compile_failure, "bug.pas: " + std::string(e.what()));
  }

  for (const auto& input : c.inputs) {
    CaseResult row;
    row.case_name = c.name;
    row.input_name = input.name;
    row.expected = input.expected_divergence;
    if (!compile_failure.empty()) {
      row.note = compile_failure;
      results.push_back(row);
      continue;
    }
    try {
      const auto a = render(correct, input.text, options);
      const auto b = render(bug, input.text, options);
      row.diff = compare_auralizations(a.score, b.score);
      row.actual = !row.diff.empty();
      bool ok = row.actual == input.expected_divergence;
      for (const auto* r : {&a, &b}) {
        if (r->execution.result.status != interp::RunStatus::Completed) {
          ok = false;
          add_note(row.note, std::string(r == &a ? "correct" : "bug") + " did not complete: " +
                                 r->execution.result.error);
        }
      }
      if (input.correct_output && *input.correct_output != a.execution.result.output) {
        ok = false;
        add_note(row.note, "correct output differs from expected file");
      }
      if (input.bug_output && *input.bug_output != b.execution.result.output) {
        ok = false;
        add_note(row.note, "bug output differs from expected file");
      }
      row.verdict = ok ? Verdict::Pass : Verdict::Fail;
    } catch (const Error& e) {
      row.note = e.what();
    }
    results.push_back(row);
  }

  if (options.seed && c.mutation && compile_failure.empty()) {
    const auto seed = *options.seed;
    for (const auto& input : c.inputs) {
      CaseResult row;
      row.case_name = c.name;
      row.input_name = input.name + "@seed=" + std::to_string(seed);
      try {
        const auto mutant = mutate(correct, *c.mutation, seed);
        const auto a = render(correct, input.text, options);
        const auto b = render(mutant, input.text, options);
        row.diff = compare_auralizations(a.score, b.score);
        row.actual = !row.diff.empty();
        // Only the flow-preserving kind has a known answer for an arbitrary site.
        if (*c.mutation == MutationKind::PureOutputTextChange) {
          row.expected = false;
          row.verdict = row.actual ? Verdict::Fail : Verdict::Pass;
        } else {
          row.verdict = Verdict::Info;
        }
      } catch (const Error& e) {
        row.note = e.what();
      }
      results.push_back(row);
    }
  }
  return results;
}

std::vector<CaseResult> run_corpus(const std::vector<CorpusCase>& cases,
                                   const HarnessOptions& options) {
  std::vector<CaseResult> results;
  for (const auto& c : cases) {
    auto rows = run_case(c, options);
    results.insert(results.end(), rows.begin(), rows.end());
  }
  return results;
}

std::string format_report_line(const CaseResult& r) {
  const std::string expected = r.expected ? (*r.expected ? "true" : "false") : "-";
  return r.case_name + " " + r.input_name + " " + expected + " " + (r.actual ? "true" : "false") +
         " " + std::string(to_string(r.verdict));
}

}  // namespace caitlin::corpus
