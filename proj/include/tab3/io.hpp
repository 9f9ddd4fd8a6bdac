#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tab3/reductions.hpp"
#include "tab3/transfer.hpp"
#include "tab3/types.hpp"

// Instance files, reports and the command layer shared by the shared-library
// interface and the command-line tool.
//
// An instance file is a JSON object with keys (all optional except dims):
//   dims            [r, c, h]
//   two_marginals   {"ij": [[..]], "ik": [[..]], "jk": [[..]]}
//   one_marginals   {"i": [..], "j": [..], "k": [..]}
//   upper_bounds    [[[..]]]            (i-major, then j, then k)
//   embedding_spec  {"source_dims": [r,c,h], "U": n,
//                    "one_marginals": {...}, "upper_bounds": [[[..]]]}
// At least one constraint block (two_marginals, one_marginals or
// upper_bounds) must be present. Numbers are nonnegative integers; values
// beyond 64 bits travel as decimal strings.
//
// Reports are deterministic: identical input and flags produce byte-identical
// report text. Timing therefore never appears in a report; the CLI prints it
// to stderr.

namespace tab3 {

struct InstanceFile {
  Dims3 dims;
  std::optional<TwoMarginals> two;
  std::optional<OneMarginals> one;
  std::optional<Table3> bounds;
  std::optional<EmbeddingSpec> embedding;
};

/// Parses an instance file, naming the offending block in every error. Also
/// accepts a report that carries an instance in its answer payload, so
/// generator output can be piped straight back in.
InstanceFile parse_instance(const std::string &json_text);

/// Serializes to the normalized form: parse_instance(write_instance(f))
/// reproduces f, and write_instance(parse_instance(s)) == s for normalized s.
std::string write_instance(const InstanceFile &f);

/// Stable content digest of the normalized form, "fnv1a64:" + 16 hex digits.
std::string instance_digest(const InstanceFile &f);

struct RunOptions {
  std::uint64_t state_cap = kDefaultStateCap;
  std::uint64_t node_cap = 10'000'000;
  std::optional<EntryIndex> entry;  // required by the entry-range commands
  bool embed = false;               // gen: emit the embedded 2-marginal form
};

/// Executes one command against an instance (null for the generator commands)
/// and returns the JSON report. Command names are the CLI spellings:
/// "check", "exists", "count", "entry-range", "lp", "reduce-3dm",
/// "reduce-permanent", "embed", "gadget-zero", "gadget-frechet",
/// "gen vlach", "gen example21", "oracle count", "oracle exists",
/// "oracle entry-range", "oracle 3dm", "oracle permanent".
std::string run_command(const std::string &command, const InstanceFile *instance,
                        const RunOptions &opts);

/// Renders a report produced by run_command as human-readable text; embedded
/// instances are shown as labeled dom/row/col blocks.
std::string render_text(const std::string &report_json);

}  // namespace tab3
