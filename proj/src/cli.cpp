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

#include "caitlin/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "caitlin/corpus.hpp"
#include "caitlin/interp.hpp"
#include "caitlin/lang.hpp"
#include "caitlin/midi.hpp"
#include "caitlin/schema.hpp"
#include "caitlin/score.hpp"
#include "caitlin/trace.hpp"

namespace caitlin::cli {
namespace {

namespace fs = std::filesystem;

struct Settings {
  std::string source;
  std::string schema_path;
  std::optional<int> tempo;
  std::string input_path;
  std::optional<std::string> input_text;
  std::string out_path;
  std::string trace_path;
  bool subexpr = false;
  std::optional<int> max_iterations;
  std::uint64_t step_limit = interp::RunOptions{}.step_limit;
  std::optional<std::uint64_t> seed;
  std::string report_path;
};

// Failures that have already been explained on stderr.
struct Reported {
  int code;
};

schema::AuralizationSchema load_schema_for(const Settings& s, std::ostream& err) {
  auto result = schema::default_schema();
  if (!s.schema_path.empty()) {
    const auto text = read_file(s.schema_path);
    try {
      result = schema::load_valid_schema(text);
    } catch (const schema::InvalidSchema& e) {
      for (const auto& d : e.diagnostics()) err << s.schema_path << ": " << schema::to_string(d) << "\n";
      throw Reported{kExitFailure};
    } catch (const schema::SchemaError& e) {
      err << s.schema_path << ":" << e.what() << "\n";
      throw Reported{kExitFailure};
    }
  }
  if (s.tempo) result.tempo_bpm = *s.tempo;
  if (s.max_iterations) result.max_iterations = *s.max_iterations;
  if (s.tempo || s.max_iterations) {
    const auto diagnostics = schema::validate_schema(result);
    if (!diagnostics.empty()) {
      for (const auto& d : diagnostics) err << schema::to_string(d) << "\n";
      throw Reported{kExitUsage};
    }
  }
  return result;
}

lang::Program compile_file(const std::string& path, std::ostream& err) {
  const auto source = read_file(path);
  try {
    return lang::compile(source);
  } catch (const lang::CompileError& e) {
    for (const auto& d : e.diagnostics()) err << path << ":" << lang::to_string(d) << "\n";
    throw Reported{kExitFailure};
  }
}

std::string input_for(const Settings& s) {
  if (s.input_text) return *s.input_text;
  if (!s.input_path.empty()) return read_file(s.input_path);
  return "";
}

std::string default_out(const std::string& from, const char* extension) {
  return fs::path(from).replace_extension(extension).string();
}

void write_midi(const std::string& path, const trace::Trace& t,
                const schema::AuralizationSchema& schema) {
  const auto bytes = midi::encode_smf(score::auralize(t, schema));
  write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

interp::Execution execute(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto program = compile_file(s.source, err);
  interp::RunOptions options;
  options.step_limit = s.step_limit;
  options.subexpr_tracing = s.subexpr;
  auto execution = interp::run(program, input_for(s), options);
  out << execution.result.output;
  if (execution.result.status != interp::RunStatus::Completed) {
    err << s.source << ":" << execution.result.error << "\n";
  }
  return execution;
}

int exit_for(const interp::Execution& execution) {
  return execution.result.status == interp::RunStatus::Completed ? kExitOk : kExitFailure;
}

int cmd_run(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto schema = load_schema_for(s, err);
  const auto execution = execute(s, out, err);
  if (!s.trace_path.empty()) write_file_atomic(s.trace_path, trace::serialize_trace(execution.trace));
  write_midi(s.out_path.empty() ? default_out(s.source, ".mid") : s.out_path, execution.trace, schema);
  return exit_for(execution);
}

int cmd_trace(const Settings& s, std::ostream& out, std::ostream& err) {
  std::ostringstream program_output;
  const auto execution = execute(s, program_output, err);
  const auto text = trace::serialize_trace(execution.trace);
  if (s.out_path.empty()) {
    out << text;
  } else {
    out << program_output.str();
    write_file_atomic(s.out_path, text);
  }
  return exit_for(execution);
}

int cmd_render(const Settings& s, std::ostream&, std::ostream& err) {
  const auto schema = load_schema_for(s, err);
  trace::Trace t;
  try {
    t = trace::parse_trace(read_file(s.source));
    trace::validate(t);
  } catch (const trace::TraceError& e) {
    err << s.source << ": " << e.what() << "\n";
    return kExitFailure;
  }
  write_midi(s.out_path.empty() ? default_out(s.source, ".mid") : s.out_path, t, schema);
  return kExitOk;
}

int cmd_validate(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto text = read_file(s.source);
  schema::AuralizationSchema loaded;
  try {
    loaded = schema::load_schema(text);
  } catch (const schema::SchemaError& e) {
    err << s.source << ":" << e.what() << "\n";
    return kExitFailure;
  }
  const auto diagnostics = schema::validate_schema(loaded);
  for (const auto& d : diagnostics) out << s.source << ": " << schema::to_string(d) << "\n";
  return diagnostics.empty() ? kExitOk : kExitFailure;
}

int cmd_corpus(const Settings& s, std::ostream& out, std::ostream& err) {
  corpus::HarnessOptions options;
  options.schema = load_schema_for(s, err);
  options.run.step_limit = s.step_limit;
  options.run.subexpr_tracing = s.subexpr;
  options.seed = s.seed;
  std::vector<corpus::CorpusCase> cases;
  try {
    cases = corpus::load_corpus(s.source);
  } catch (const corpus::CorpusError& e) {
    err << e.what() << "\n";
    return kExitFailure;
  }
  const auto results = corpus::run_corpus(cases, options);

  std::size_t widths[2] = {4, 5};
  for (const auto& r : results) {
    widths[0] = std::max(widths[0], r.case_name.size());
    widths[1] = std::max(widths[1], r.input_name.size());
  }
  auto pad = [](const std::string& text, std::size_t width) {
    return text + std::string(width - text.size() + 2, ' ');
  };
  out << pad("case", widths[0]) << pad("input", widths[1]) << "expected  actual  verdict\n";
  std::string report;
  int failures = 0;
  for (const auto& r : results) {
    const std::string expected = r.expected ? (*r.expected ? "true" : "false") : "-";
    out << pad(r.case_name, widths[0]) << pad(r.input_name, widths[1]) << pad(expected, 8)
        << pad(r.actual ? "true" : "false", 6) << corpus::to_string(r.verdict);
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << "\n";
    report += corpus::format_report_line(r) + "\n";
    if (r.verdict == corpus::Verdict::Fail) ++failures;
  }
  out << results.size() << " rows, " << failures << " failed\n";
  if (!s.report_path.empty()) write_file_atomic(s.report_path, report);
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Auralizes the control flow of mini-Pascal programs as MIDI.", "caitlin"};
  app.require_subcommand(1);
  Settings s;

  auto add_schema = [&](CLI::App* sub) {
    sub->add_option("--schema", s.schema_path, "Schema file (default: the classic skin)");
    sub->add_option("--tempo", s.tempo, "Tempo in BPM, overriding the schema");
    sub->add_option("--max-iterations", s.max_iterations,
                    "Iterations rendered per loop before eliding, overriding the schema")
        ->check(CLI::PositiveNumber);
  };
  auto add_execution = [&](CLI::App* sub) {
    auto* file = sub->add_option("--input", s.input_path, "File read by Readln");
    auto* text = sub->add_option("--input-text", s.input_text, "Literal text read by Readln");
    file->excludes(text);
    sub->add_flag("--subexpr", s.subexpr, "Trace the outcome of each AND/OR operand");
    sub->add_option("--step-limit", s.step_limit, "Maximum execution steps")
        ->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "Execute a program and write its auralization");
  run->add_option("program", s.source, "Program source")->required();
  add_schema(run);
  add_execution(run);
  run->add_option("--out", s.out_path, "MIDI output (default: program path with .mid)");
  run->add_option("--trace", s.trace_path, "Also write the trace here");

  auto* tr = app.add_subcommand("trace", "Execute a program and emit its trace only");
  tr->add_option("program", s.source, "Program source")->required();
  add_execution(tr);
  tr->add_option("--out", s.out_path, "Trace output (default: standard output)");

  auto* render = app.add_subcommand("render", "Render a saved trace without re-executing");
  render->add_option("trace", s.source, "Trace file")->required();
  add_schema(render);
  render->add_option("--out", s.out_path, "MIDI output (default: trace path with .mid)");

  auto* validate = app.add_subcommand("validate-schema", "Check a schema file");
  validate->add_option("schema", s.source, "Schema file")->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "Run the seeded-bug corpus");
  corpus_cmd->add_option("directory", s.source, "Corpus root")->required();
  add_schema(corpus_cmd);
  corpus_cmd->add_flag("--subexpr", s.subexpr, "Trace the outcome of each AND/OR operand");
  corpus_cmd->add_option("--step-limit", s.step_limit, "Maximum execution steps")
      ->check(CLI::PositiveNumber);
  corpus_cmd->add_option("--seed", s.seed, "Also run a mutant generated from this seed");
  corpus_cmd->add_option("--report", s.report_path, "Machine-readable report output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(s, out, err);
    if (*tr) return cmd_trace(s, out, err);
    if (*render) return cmd_render(s, out, err);
    if (*validate) return cmd_validate(s, out, err);
    return cmd_corpus(s, out, err);
  } catch (const Reported& r) {
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace caitlin::cli
