// Command-line front end; talks to the engine through the public C API only.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tab3.h"

namespace {

struct Ctx {
  std::string input;
  std::string entry;  // "i,j,k", 1-based
  std::uint64_t state_cap = 0;
  std::uint64_t node_cap = 0;
  std::string format = "json";
  std::string output;
  bool embed = false;
};

struct Leaf {
  CLI::App *app = nullptr;
  std::string command;
  bool takes_input = false;
};

void add_common(CLI::App *cmd, Ctx &ctx) {
  cmd->add_option("--state-cap", ctx.state_cap,
                  "largest transfer state space to build (default 10000000)");
  cmd->add_option("--node-cap", ctx.node_cap,
                  "oracle enumeration budget (default 10000000)");
  cmd->add_option("--format", ctx.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("-o,--output", ctx.output, "write the report to a file");
}

Leaf make_leaf(CLI::App *parent, const std::string &name, const std::string &desc,
               const std::string &command, Ctx &ctx, bool takes_input) {
  CLI::App *cmd = parent->add_subcommand(name, desc);
  add_common(cmd, ctx);
  if (takes_input)
    cmd->add_option("input", ctx.input, "instance file (JSON), or - for stdin")
        ->required();
  return Leaf{cmd, command, takes_input};
}

void add_entry_option(const Leaf &leaf, Ctx &ctx) {
  leaf.app
      ->add_option("--entry", ctx.entry, "target cell i,j,k (1-based)")
      ->required();
}

// Parses "i,j,k" with positive 1-based coordinates; false on malformed input.
bool parse_entry(const std::string &text, int out[3]) {
  int i = 0, j = 0, k = 0;
  char trail = 0;
  if (std::sscanf(text.c_str(), "%d ,%d ,%d %c", &i, &j, &k, &trail) != 3)
    return false;
  if (i <= 0 || j <= 0 || k <= 0)
    return false;
  out[0] = i;
  out[1] = j;
  out[2] = k;
  return true;
}

bool read_input(const std::string &path, std::string &text) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

int fail_with(tab3_status status, char *error) {
  std::fprintf(stderr, "error: %s\n", error ? error : "unknown failure");
  tab3_string_free(error);
  return int(status);
}

int run(const Leaf &leaf, const Ctx &ctx) {
  tab3_instance *inst = nullptr;
  char *error = nullptr;
  if (leaf.takes_input) {
    std::string text;
    if (!read_input(ctx.input, text)) {
      std::fprintf(stderr, "error: cannot read %s\n", ctx.input.c_str());
      return int(TAB3_INVALID_INPUT);
    }
    const tab3_status st = tab3_instance_parse(text.c_str(), &inst, &error);
    if (st != TAB3_OK) return fail_with(st, error);
  }

  tab3_options opts{};
  opts.state_cap = ctx.state_cap;
  opts.node_cap = ctx.node_cap;
  opts.embed = ctx.embed ? 1 : 0;
  if (!ctx.entry.empty() && !parse_entry(ctx.entry, opts.entry)) {
    std::fprintf(stderr, "error: --entry must be i,j,k with positive coordinates\n");
    return int(TAB3_INVALID_INPUT);
  }

  const auto start = std::chrono::steady_clock::now();
  char *report = nullptr;
  const tab3_status st = tab3_run(inst, leaf.command.c_str(), &opts, &report, &error);
  const auto stop = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
  std::fprintf(stderr, "elapsed: %.1f ms\n", ms);
  tab3_instance_free(inst);
  if (st != TAB3_OK) return fail_with(st, error);

  std::string body = report;
  tab3_string_free(report);
  if (ctx.format == "text") {
    char *text = nullptr;
    const tab3_status ts = tab3_report_to_text(body.c_str(), &text, &error);
    if (ts != TAB3_OK) return fail_with(ts, error);
    body = text;
    tab3_string_free(text);
  } else {
    body += '\n';
  }

  if (ctx.output.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
  } else {
    std::ofstream out(ctx.output, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "error: cannot write %s\n", ctx.output.c_str());
      return int(TAB3_INVALID_INPUT);
    }
    out.write(body.data(), std::streamsize(body.size()));
  }
  return int(TAB3_OK);
}

}  // namespace

int main(int argc, char **argv) {
  Ctx ctx;
  CLI::App app{"exact analysis of three-way tables under 2-marginal constraints"};
  app.set_version_flag("--version", tab3_version());
  app.require_subcommand(1);

  std::vector<Leaf> leaves;
  leaves.push_back(make_leaf(&app, "check", "validate an instance and its consistency",
                             "check", ctx, true));
  leaves.push_back(make_leaf(&app, "exists", "decide whether a table matches the marginals",
                             "exists", ctx, true));
  leaves.push_back(make_leaf(&app, "count", "count the tables with the given 2-marginals",
                             "count", ctx, true));
  {
    Leaf l = make_leaf(&app, "entry-range", "exact value set of one cell over all tables",
                       "entry-range", ctx, true);
    add_entry_option(l, ctx);
    leaves.push_back(l);
  }
  leaves.push_back(make_leaf(&app, "lp", "exact rational feasibility of the relaxation",
                             "lp", ctx, true));
  leaves.push_back(make_leaf(&app, "reduce-3dm",
                             "embed a 3-dimensional matching instance", "reduce-3dm", ctx,
                             true));
  leaves.push_back(make_leaf(&app, "reduce-permanent",
                             "marginals whose table count is the permanent",
                             "reduce-permanent", ctx, true));
  leaves.push_back(make_leaf(&app, "embed",
                             "restate 1-marginals plus cell bounds as pure 2-marginals",
                             "embed", ctx, true));
  leaves.push_back(make_leaf(&app, "gadget-zero",
                             "marginals whose cell can hide a feasibility question",
                             "gadget-zero", ctx, true));
  leaves.push_back(make_leaf(&app, "gadget-frechet",
                             "marginals whose cell reaches its upper bound iff a "
                             "matching exists",
                             "gadget-frechet", ctx, true));

  CLI::App *gen = app.add_subcommand("gen", "built-in example instances");
  gen->require_subcommand(1);
  {
    Leaf l = make_leaf(gen, "vlach", "integer-infeasible, real-feasible marginals",
                       "gen vlach", ctx, false);
    l.app->add_flag("--embed", ctx.embed, "emit the embedded 2-marginal instance");
    leaves.push_back(l);
    l = make_leaf(gen, "example21", "bounded system with a unique table", "gen example21",
                  ctx, false);
    l.app->add_flag("--embed", ctx.embed, "emit the embedded 2-marginal instance");
    leaves.push_back(l);
  }

  CLI::App *oracle = app.add_subcommand("oracle", "brute-force reference answers");
  oracle->require_subcommand(1);
  leaves.push_back(make_leaf(oracle, "count", "count tables by enumeration",
                             "oracle count", ctx, true));
  leaves.push_back(make_leaf(oracle, "exists", "decide feasibility by enumeration",
                             "oracle exists", ctx, true));
  {
    Leaf l = make_leaf(oracle, "entry-range", "cell value set by enumeration",
                       "oracle entry-range", ctx, true);
    add_entry_option(l, ctx);
    leaves.push_back(l);
  }
  leaves.push_back(make_leaf(oracle, "3dm", "decide 3-dimensional matching directly",
                             "oracle 3dm", ctx, true));
  leaves.push_back(make_leaf(oracle, "permanent", "permanent of a 0/1 matrix",
                             "oracle permanent", ctx, true));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : int(TAB3_INVALID_INPUT);
  }

  for (const Leaf &leaf : leaves)
    if (leaf.app->parsed()) return run(leaf, ctx);
  return int(TAB3_INTERNAL_ERROR);  // unreachable: require_subcommand guarantees a leaf
}
