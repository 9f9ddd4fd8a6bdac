#include "tab3/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tab3/lp.hpp"
#include "tab3/oracle.hpp"

namespace tab3 {

namespace {

using json = nlohmann::ordered_json;

// --- integer <-> JSON ---------------------------------------------------------

json json_int(const Int &v) {
  if (v >= 0 && v.fits_ulong_p()) return json(std::uint64_t(v.get_ui()));
  return json(v.get_str());
}

Int parse_int(const json &j, const std::string &path) {
  if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
  if (j.is_number_integer())
    fail(Status::invalid_input, path + ": must be a nonnegative integer");
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || !std::all_of(s.begin(), s.end(),
                                  [](unsigned char ch) { return std::isdigit(ch); }))
      fail(Status::invalid_input, path + ": string values must be decimal integers");
    return Int(s);
  }
  fail(Status::invalid_input, path + ": expected a nonnegative integer");
}

int parse_extent(const json &j, const std::string &path) {
  const Int v = parse_int(j, path);
  if (v < 1 || v > (1 << 20)) fail(Status::invalid_input, path + ": extent out of range");
  return int(v.get_si());
}

// --- instance parsing ----------------------------------------------------------

void expect_keys(const json &j, const std::vector<std::string> &allowed,
                 const std::string &path) {
  for (const auto &item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      fail(Status::invalid_input, path + ": unknown key \"" + item.key() + "\"");
  }
}

Dims3 parse_dims(const json &j, const std::string &path) {
  if (!j.is_array() || j.size() != 3)
    fail(Status::invalid_input, path + ": expected an array [r, c, h]");
  return Dims3(parse_extent(j[0], path + "[0]"), parse_extent(j[1], path + "[1]"),
               parse_extent(j[2], path + "[2]"));
}

Matrix parse_matrix(const json &j, int rows, int cols, const std::string &path) {
  if (!j.is_array() || int(j.size()) != rows)
    fail(Status::invalid_input,
         path + ": expected " + std::to_string(rows) + " rows of " +
             std::to_string(cols) + " columns");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json &row = j[std::size_t(i)];
    if (!row.is_array() || int(row.size()) != cols)
      fail(Status::invalid_input,
           path + ": expected " + std::to_string(rows) + " rows of " +
               std::to_string(cols) + " columns");
    for (int c = 0; c < cols; ++c)
      m.at(i + 1, c + 1) = parse_int(
          row[std::size_t(c)],
          path + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
  }
  return m;
}

std::vector<Int> parse_vector(const json &j, int len, const std::string &path) {
  if (!j.is_array() || int(j.size()) != len)
    fail(Status::invalid_input, path + ": expected " + std::to_string(len) + " values");
  std::vector<Int> out(static_cast<std::size_t>(len));
  for (int p = 0; p < len; ++p)
    out[std::size_t(p)] = parse_int(j[std::size_t(p)], path + "[" + std::to_string(p) + "]");
  return out;
}

TwoMarginals parse_two(const json &j, const Dims3 &d, const std::string &path) {
  if (!j.is_object()) fail(Status::invalid_input, path + ": expected an object");
  expect_keys(j, {"ij", "ik", "jk"}, path);
  for (const char *key : {"ij", "ik", "jk"})
    if (!j.contains(key))
      fail(Status::invalid_input, path + ": missing key \"" + std::string(key) + "\"");
  TwoMarginals m;
  m.dims = d;
  m.ij = parse_matrix(j["ij"], d.r, d.c, path + ".ij");
  m.ik = parse_matrix(j["ik"], d.r, d.h, path + ".ik");
  m.jk = parse_matrix(j["jk"], d.c, d.h, path + ".jk");
  return m;
}

OneMarginals parse_one(const json &j, const Dims3 &d, const std::string &path) {
  if (!j.is_object()) fail(Status::invalid_input, path + ": expected an object");
  expect_keys(j, {"i", "j", "k"}, path);
  for (const char *key : {"i", "j", "k"})
    if (!j.contains(key))
      fail(Status::invalid_input, path + ": missing key \"" + std::string(key) + "\"");
  OneMarginals u;
  u.dims = d;
  u.i = parse_vector(j["i"], d.r, path + ".i");
  u.j = parse_vector(j["j"], d.c, path + ".j");
  u.k = parse_vector(j["k"], d.h, path + ".k");
  return u;
}

Table3 parse_cube(const json &j, const Dims3 &d, const std::string &path) {
  if (!j.is_array() || int(j.size()) != d.r)
    fail(Status::invalid_input, path + ": expected dims " + to_string(d));
  Table3 t(d);
  for (int i = 0; i < d.r; ++i) {
    const json &plane = j[std::size_t(i)];
    if (!plane.is_array() || int(plane.size()) != d.c)
      fail(Status::invalid_input, path + ": expected dims " + to_string(d));
    for (int jj = 0; jj < d.c; ++jj) {
      const json &line = plane[std::size_t(jj)];
      if (!line.is_array() || int(line.size()) != d.h)
        fail(Status::invalid_input, path + ": expected dims " + to_string(d));
      for (int k = 0; k < d.h; ++k)
        t.at(i + 1, jj + 1, k + 1) =
            parse_int(line[std::size_t(k)], path + "[" + std::to_string(i) + "][" +
                                                std::to_string(jj) + "][" +
                                                std::to_string(k) + "]");
    }
  }
  return t;
}

InstanceFile parse_instance_json(const json &j) {
  if (!j.is_object()) fail(Status::invalid_input, "instance: expected a JSON object");
  expect_keys(j,
              {"dims", "two_marginals", "one_marginals", "upper_bounds", "embedding_spec"},
              "instance");
  if (!j.contains("dims")) fail(Status::invalid_input, "instance: missing \"dims\"");
  InstanceFile f;
  f.dims = parse_dims(j["dims"], "dims");
  if (j.contains("two_marginals"))
    f.two = parse_two(j["two_marginals"], f.dims, "two_marginals");
  if (j.contains("one_marginals"))
    f.one = parse_one(j["one_marginals"], f.dims, "one_marginals");
  if (j.contains("upper_bounds"))
    f.bounds = parse_cube(j["upper_bounds"], f.dims, "upper_bounds");
  if (j.contains("embedding_spec")) {
    const json &e = j["embedding_spec"];
    if (!e.is_object()) fail(Status::invalid_input, "embedding_spec: expected an object");
    expect_keys(e, {"source_dims", "U", "one_marginals", "upper_bounds"}, "embedding_spec");
    for (const char *key : {"source_dims", "U", "one_marginals", "upper_bounds"})
      if (!e.contains(key))
        fail(Status::invalid_input,
             "embedding_spec: missing key \"" + std::string(key) + "\"");
    EmbeddingSpec spec;
    spec.source = parse_dims(e["source_dims"], "embedding_spec.source_dims");
    spec.U = parse_int(e["U"], "embedding_spec.U");
    spec.ones = parse_one(e["one_marginals"], spec.source, "embedding_spec.one_marginals");
    spec.bounds = parse_cube(e["upper_bounds"], spec.source, "embedding_spec.upper_bounds");
    if (spec.target() != f.dims)
      fail(Status::invalid_input,
           "embedding_spec: target dims " + to_string(spec.target()) +
               " do not match instance dims " + to_string(f.dims));
    f.embedding = std::move(spec);
  }
  if (!f.two && !f.one && !f.bounds)
    fail(Status::invalid_input,
         "instance: needs at least one of two_marginals, one_marginals, upper_bounds");
  return f;
}

json matrix_json(const Matrix &m) {
  json rows = json::array();
  for (int i = 1; i <= m.rows(); ++i) {
    json row = json::array();
    for (int j = 1; j <= m.cols(); ++j) row.push_back(json_int(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const std::vector<Int> &v) {
  json out = json::array();
  for (const Int &x : v) out.push_back(json_int(x));
  return out;
}

json cube_json(const Table3 &t) {
  const Dims3 &d = t.dims();
  json planes = json::array();
  for (int i = 1; i <= d.r; ++i) {
    json plane = json::array();
    for (int j = 1; j <= d.c; ++j) {
      json line = json::array();
      for (int k = 1; k <= d.h; ++k) line.push_back(json_int(t.at(i, j, k)));
      plane.push_back(std::move(line));
    }
    planes.push_back(std::move(plane));
  }
  return planes;
}

json one_json(const OneMarginals &u) {
  return json{{"i", vector_json(u.i)}, {"j", vector_json(u.j)}, {"k", vector_json(u.k)}};
}

json instance_json(const InstanceFile &f) {
  json j;
  j["dims"] = json::array({f.dims.r, f.dims.c, f.dims.h});
  if (f.two)
    j["two_marginals"] = json{{"ij", matrix_json(f.two->ij)},
                              {"ik", matrix_json(f.two->ik)},
                              {"jk", matrix_json(f.two->jk)}};
  if (f.one) j["one_marginals"] = one_json(*f.one);
  if (f.bounds) j["upper_bounds"] = cube_json(*f.bounds);
  if (f.embedding) {
    const EmbeddingSpec &spec = *f.embedding;
    j["embedding_spec"] =
        json{{"source_dims", json::array({spec.source.r, spec.source.c, spec.source.h})},
             {"U", json_int(spec.U)},
             {"one_marginals", one_json(spec.ones)},
             {"upper_bounds", cube_json(spec.bounds)}};
  }
  return j;
}

std::uint64_t fnv1a64(const std::string &bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

InstanceFile parse_instance(const std::string &json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception &e) {
    fail(Status::invalid_input, std::string("not valid JSON: ") + e.what());
  }
  // A report wrapping an emitted instance is accepted transparently, so
  // generator output pipes straight into the other commands.
  if (j.is_object() && j.contains("command") && j.contains("answer") &&
      j["answer"].is_object() && j["answer"].contains("instance"))
    return parse_instance_json(j["answer"]["instance"]);
  return parse_instance_json(j);
}

std::string write_instance(const InstanceFile &f) { return instance_json(f).dump(); }

std::string instance_digest(const InstanceFile &f) {
  std::ostringstream os;
  os << "fnv1a64:" << std::hex;
  os.width(16);
  os.fill('0');
  os << fnv1a64(write_instance(f));
  return os.str();
}

// --- command layer -------------------------------------------------------------

namespace {

const TwoMarginals &need_two(const InstanceFile *f, const std::string &cmd) {
  if (!f || !f->two)
    fail(Status::invalid_input, "command '" + cmd + "' requires the two_marginals block");
  return *f->two;
}

const OneMarginals &need_one(const InstanceFile *f, const std::string &cmd) {
  if (!f || !f->one)
    fail(Status::invalid_input, "command '" + cmd + "' requires the one_marginals block");
  return *f->one;
}

const Table3 &need_bounds(const InstanceFile *f, const std::string &cmd) {
  if (!f || !f->bounds)
    fail(Status::invalid_input, "command '" + cmd + "' requires the upper_bounds block");
  return *f->bounds;
}

EntryIndex need_entry(const RunOptions &opts, const std::string &cmd) {
  if (!opts.entry)
    fail(Status::invalid_input, "command '" + cmd + "' requires --entry i,j,k");
  return *opts.entry;
}

// The matching and permanent commands take their combinatorial input from the
// upper_bounds block; present 1-marginals must then be the implied unit ones.
void check_unit_one(const InstanceFile *f, const std::string &cmd) {
  if (!f || !f->one) return;
  for (const std::vector<Int> *v : {&f->one->i, &f->one->j, &f->one->k})
    for (const Int &x : *v)
      if (x != 1)
        fail(Status::invalid_input,
             "command '" + cmd + "' expects unit 1-marginals when they are given");
}

Matrix need_square_binary(const InstanceFile *f, const std::string &cmd) {
  const Table3 &b = need_bounds(f, cmd);
  const Dims3 &d = b.dims();
  if (d.h != 1 || d.r != d.c)
    fail(Status::invalid_input, "command '" + cmd +
                                    "' expects upper_bounds with dims (n, n, 1) holding "
                                    "the 0/1 matrix");
  Matrix a(d.r, d.c);
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.c; ++j) a.at(i, j) = b.at(i, j, 1);
  return a;
}

json entry_json(const EntryIndex &e) { return json::array({e.i, e.j, e.k}); }

json violations_json(const ConsistencyReport &rep) {
  json out = json::array();
  for (const auto &v : rep.violations)
    out.push_back(json{{"equation", v.equation}, {"lhs", json_int(v.lhs)},
                       {"rhs", json_int(v.rhs)}});
  return out;
}

json witness_json(const RealTable3 &x) {
  const Dims3 &d = x.dims();
  json planes = json::array();
  for (int i = 1; i <= d.r; ++i) {
    json plane = json::array();
    for (int j = 1; j <= d.c; ++j) {
      json line = json::array();
      for (int k = 1; k <= d.h; ++k) line.push_back(x.at(i, j, k).get_str());
      plane.push_back(std::move(line));
    }
    planes.push_back(std::move(plane));
  }
  return planes;
}

InstanceFile embedded_instance(const Embedding &emb) {
  InstanceFile out;
  out.dims = emb.spec.target();
  out.two = emb.marginals;
  out.embedding = emb.spec;
  return out;
}

json check_answer(const InstanceFile &f) {
  json answer;
  if (f.two) {
    const ConsistencyReport rep = check_consistency(*f.two);
    answer["consistent"] = rep.consistent;
    if (rep.consistent) answer["total"] = json_int(rep.total);
    answer["violations"] = violations_json(rep);
    return answer;
  }
  if (f.one) {
    Int ti = 0, tj = 0, tk = 0;
    for (const Int &x : f.one->i) ti += x;
    for (const Int &x : f.one->j) tj += x;
    for (const Int &x : f.one->k) tk += x;
    json violations = json::array();
    if (ti != tj)
      violations.push_back(json{{"equation", "total i/j"}, {"lhs", json_int(ti)},
                                {"rhs", json_int(tj)}});
    if (ti != tk)
      violations.push_back(json{{"equation", "total i/k"}, {"lhs", json_int(ti)},
                                {"rhs", json_int(tk)}});
    answer["consistent"] = violations.empty();
    if (violations.empty()) answer["total"] = json_int(ti);
    answer["violations"] = std::move(violations);
    return answer;
  }
  // Bounds carry no equations to cross-check.
  answer["consistent"] = true;
  answer["violations"] = json::array();
  return answer;
}

}  // namespace

std::string run_command(const std::string &command, const InstanceFile *instance,
                        const RunOptions &opts) {
  const EnumLimits limits{opts.node_cap, opts.node_cap};
  json answer;
  json diagnostics;
  diagnostics["state_cap"] = opts.state_cap;
  diagnostics["node_cap"] = opts.node_cap;

  if (command == "check") {
    if (!instance) fail(Status::invalid_input, "command 'check' requires an instance");
    answer = check_answer(*instance);
  } else if (command == "exists" || command == "count") {
    const TwoMarginals &m = need_two(instance, command);
    const ConsistencyReport rep = check_consistency(m);
    if (!rep.consistent) diagnostics["violations"] = violations_json(rep);
    if (command == "exists")
      answer["exists"] = exists_fixed_rc(m, opts.state_cap);
    else
      answer["count"] = count_tables(m, opts.state_cap).get_str();
  } else if (command == "entry-range") {
    const TwoMarginals &m = need_two(instance, command);
    const EntryIndex e = need_entry(opts, command);
    answer["entry"] = entry_json(e);
    answer["frechet_upper"] = json_int(frechet_upper(m, e));
    json values = json::array();
    for (const Int &v : entry_value_set(m, e, opts.state_cap)) values.push_back(json_int(v));
    answer["values"] = std::move(values);
  } else if (command == "lp") {
    RationalSystem sys;
    if (instance && instance->two)
      sys = transportation_system(*instance->two);
    else if (instance && instance->one && instance->bounds)
      sys = transportation_system(*instance->one, *instance->bounds);
    else
      fail(Status::invalid_input,
           "command 'lp' requires two_marginals, or one_marginals plus upper_bounds");
    const LpResult res = lp_feasible(sys);
    answer["feasible"] = res.feasible;
    answer["witness"] = res.witness ? witness_json(*res.witness) : json(nullptr);
  } else if (command == "reduce-3dm") {
    check_unit_one(instance, command);
    answer["instance"] =
        instance_json(embedded_instance(reduce_3dm(need_bounds(instance, command))));
  } else if (command == "reduce-permanent") {
    const Matrix a = need_square_binary(instance, command);
    const PermanentReduction red = permanent_marginals(a);
    answer["trivially_infeasible"] = red.trivially_infeasible;
    if (red.trivially_infeasible) {
      answer["instance"] = nullptr;
    } else {
      InstanceFile out;
      out.dims = red.marginals.dims;
      out.two = red.marginals;
      answer["instance"] = instance_json(out);
    }
  } else if (command == "embed") {
    const Embedding emb =
        embed_bounds(need_one(instance, command), need_bounds(instance, command));
    answer["instance"] = instance_json(embedded_instance(emb));
  } else if (command == "gadget-zero") {
    const ZeroGadget g = secure_zero_gadget(need_two(instance, command));
    answer["source_dims"] = json::array({g.source.r, g.source.c, g.source.h});
    answer["total"] = json_int(g.total);
    answer["target_entry"] = entry_json(g.target);
    InstanceFile out;
    out.dims = g.marginals.dims;
    out.two = g.marginals;
    answer["instance"] = instance_json(out);
  } else if (command == "gadget-frechet") {
    check_unit_one(instance, command);
    const FrechetGadget g = secure_frechet_gadget(need_bounds(instance, command));
    answer["n"] = g.n;
    answer["target_entry"] = entry_json(g.target);
    answer["target_value"] = json_int(g.target_value);
    answer["instance"] = instance_json(embedded_instance(g.embedding));
  } else if (command == "gen vlach" || command == "gen example21") {
    const SourceInstance src =
        command == "gen vlach" ? vlach_instance() : example21_instance();
    InstanceFile out;
    if (opts.embed) {
      out = embedded_instance(embed_bounds(src.u, src.bounds));
    } else {
      out.dims = src.u.dims;
      out.one = src.u;
      out.bounds = src.bounds;
    }
    answer["embedded"] = opts.embed;
    answer["instance"] = instance_json(out);
  } else if (command == "oracle count") {
    answer["count"] = brute_count(need_two(instance, command), limits).get_str();
  } else if (command == "oracle exists") {
    answer["exists"] = brute_exists(need_two(instance, command), limits);
  } else if (command == "oracle entry-range") {
    const TwoMarginals &m = need_two(instance, command);
    const EntryIndex e = need_entry(opts, command);
    answer["entry"] = entry_json(e);
    answer["frechet_upper"] = json_int(frechet_upper(m, e));
    json values = json::array();
    for (const Int &v : brute_entry_set(m, e, limits)) values.push_back(json_int(v));
    answer["values"] = std::move(values);
  } else if (command == "oracle 3dm") {
    check_unit_one(instance, command);
    answer["exists"] = brute_3dm(need_bounds(instance, command));
  } else if (command == "oracle permanent") {
    answer["permanent"] = ryser_permanent(need_square_binary(instance, command)).get_str();
  } else {
    fail(Status::invalid_input, "unknown command '" + command + "'");
  }

  json report;
  report["command"] = command;
  report["input_digest"] = instance ? json(instance_digest(*instance)) : json(nullptr);
  report["answer"] = std::move(answer);
  report["diagnostics"] = std::move(diagnostics);
  return report.dump(2);
}

// --- text rendering --------------------------------------------------------------

namespace {

std::string cell_text(const json &v) {
  if (v.is_string()) return v.get<std::string>();
  std::ostringstream os;
  os << v;
  return os.str();
}

// Aligned grid with optional row and column labels.
void print_grid(std::ostringstream &os, const std::string &title,
                const std::vector<std::string> &col_labels,
                const std::vector<std::string> &row_labels,
                const std::vector<std::vector<std::string>> &cells) {
  os << title << "\n";
  const std::size_t ncols = cells.empty() ? 0 : cells[0].size();
  std::size_t label_w = 0;
  for (const auto &l : row_labels) label_w = std::max(label_w, l.size());
  std::vector<std::size_t> w(ncols, 0);
  for (std::size_t c = 0; c < ncols; ++c) {
    if (!col_labels.empty()) w[c] = col_labels[c].size();
    for (const auto &row : cells) w[c] = std::max(w[c], row[c].size());
  }
  auto pad = [&os](const std::string &s, std::size_t width) {
    for (std::size_t p = s.size(); p < width; ++p) os << ' ';
    os << s;
  };
  if (!col_labels.empty()) {
    os << "  ";
    pad("", label_w);
    for (std::size_t c = 0; c < ncols; ++c) {
      os << ' ';
      pad(col_labels[c], w[c]);
    }
    os << "\n";
  }
  for (std::size_t r = 0; r < cells.size(); ++r) {
    os << "  ";
    pad(row_labels.empty() ? "" : row_labels[r], label_w);
    for (std::size_t c = 0; c < ncols; ++c) {
      os << ' ';
      pad(cells[r][c], w[c]);
    }
    os << "\n";
  }
}

std::vector<std::vector<std::string>> grid_of(const json &matrix) {
  std::vector<std::vector<std::string>> cells;
  for (const auto &row : matrix) {
    std::vector<std::string> line;
    for (const auto &v : row) line.push_back(cell_text(v));
    cells.push_back(std::move(line));
  }
  return cells;
}

std::string join_ints(const json &arr) {
  std::ostringstream os;
  for (std::size_t p = 0; p < arr.size(); ++p) {
    if (p) os << " ";
    os << cell_text(arr[std::size_t(p)]);
  }
  return os.str();
}

std::string entry_text(const json &e) {
  std::ostringstream os;
  os << "(" << e[0] << ", " << e[1] << ", " << e[2] << ")";
  return os.str();
}

void print_instance(std::ostringstream &os, const json &inst) {
  const json &dims = inst["dims"];
  os << "dims: (" << dims[0] << ", " << dims[1] << ", " << dims[2] << ")\n";

  std::vector<std::string> pair_labels;
  std::vector<std::string> segment_labels;
  if (inst.contains("embedding_spec")) {
    const json &spec = inst["embedding_spec"];
    const int sr = spec["source_dims"][0].get<int>();
    const int sc = spec["source_dims"][1].get<int>();
    const int sh = spec["source_dims"][2].get<int>();
    const bool compact = sr <= 9 && sc <= 9;
    for (int i = 1; i <= sr; ++i)
      for (int j = 1; j <= sc; ++j)
        pair_labels.push_back(compact ? std::to_string(i) + std::to_string(j)
                                      : std::to_string(i) + "," + std::to_string(j));
    for (int k = 1; k <= sh; ++k) segment_labels.push_back("dom" + std::to_string(k));
    for (int i = 1; i <= sr; ++i) segment_labels.push_back("row" + std::to_string(i));
    for (int j = 1; j <= sc; ++j) segment_labels.push_back("col" + std::to_string(j));
  }

  if (inst.contains("two_marginals")) {
    const json &two = inst["two_marginals"];
    if (!pair_labels.empty()) {
      print_grid(os, "v(t,ij,+):", pair_labels, {}, grid_of(two["ij"]));
      print_grid(os, "v(t,+,g):", segment_labels, {}, grid_of(two["ik"]));
      print_grid(os, "v(+,ij,g):", segment_labels, pair_labels, grid_of(two["jk"]));
    } else {
      print_grid(os, "v(i,j,+):", {}, {}, grid_of(two["ij"]));
      print_grid(os, "v(i,+,k):", {}, {}, grid_of(two["ik"]));
      print_grid(os, "v(+,j,k):", {}, {}, grid_of(two["jk"]));
    }
  }
  if (inst.contains("one_marginals")) {
    const json &one = inst["one_marginals"];
    os << "u_i: " << join_ints(one["i"]) << "\n";
    os << "u_j: " << join_ints(one["j"]) << "\n";
    os << "u_k: " << join_ints(one["k"]) << "\n";
  }
  if (inst.contains("upper_bounds")) {
    const json &cube = inst["upper_bounds"];
    const int r = int(cube.size());
    const int c = int(cube[0].size());
    const int h = int(cube[0][0].size());
    for (int k = 0; k < h; ++k) {
      std::vector<std::vector<std::string>> cells;
      for (int i = 0; i < r; ++i) {
        std::vector<std::string> line;
        for (int j = 0; j < c; ++j)
          line.push_back(cell_text(cube[std::size_t(i)][std::size_t(j)][std::size_t(k)]));
        cells.push_back(std::move(line));
      }
      print_grid(os, "bounds layer k=" + std::to_string(k + 1) + ":", {}, {}, cells);
    }
  }
  if (inst.contains("embedding_spec")) {
    const json &spec = inst["embedding_spec"];
    os << "embedding: source dims (" << spec["source_dims"][0] << ", "
       << spec["source_dims"][1] << ", " << spec["source_dims"][2] << "), U = "
       << cell_text(spec["U"]) << "\n";
  }
}

void print_witness(std::ostringstream &os, const json &witness) {
  const int r = int(witness.size());
  const int c = int(witness[0].size());
  const int h = int(witness[0][0].size());
  for (int k = 0; k < h; ++k) {
    std::vector<std::vector<std::string>> cells;
    for (int i = 0; i < r; ++i) {
      std::vector<std::string> line;
      for (int j = 0; j < c; ++j)
        line.push_back(cell_text(witness[std::size_t(i)][std::size_t(j)][std::size_t(k)]));
      cells.push_back(std::move(line));
    }
    print_grid(os, "witness layer k=" + std::to_string(k + 1) + ":", {}, {}, cells);
  }
}

}  // namespace

std::string render_text(const std::string &report_json) {
  json report;
  try {
    report = json::parse(report_json);
  } catch (const std::exception &e) {
    fail(Status::invalid_input, std::string("report is not valid JSON: ") + e.what());
  }
  if (!report.is_object() || !report.contains("command") || !report.contains("answer"))
    fail(Status::invalid_input, "not a report object");
  std::ostringstream os;
  os << "command: " << report["command"].get<std::string>() << "\n";
  if (report.contains("input_digest") && report["input_digest"].is_string())
    os << "input: " << report["input_digest"].get<std::string>() << "\n";
  const json &answer = report["answer"];

  if (answer.contains("consistent")) {
    os << "consistent: " << (answer["consistent"].get<bool>() ? "yes" : "no") << "\n";
    if (answer.contains("total")) os << "total: " << cell_text(answer["total"]) << "\n";
    for (const auto &v : answer["violations"])
      os << "violation " << v["equation"].get<std::string>() << ": "
         << cell_text(v["lhs"]) << " != " << cell_text(v["rhs"]) << "\n";
  }
  if (answer.contains("exists"))
    os << "exists: " << (answer["exists"].get<bool>() ? "yes" : "no") << "\n";
  if (answer.contains("count")) os << "count: " << cell_text(answer["count"]) << "\n";
  if (answer.contains("permanent"))
    os << "permanent: " << cell_text(answer["permanent"]) << "\n";
  if (answer.contains("entry")) os << "entry: " << entry_text(answer["entry"]) << "\n";
  if (answer.contains("frechet_upper"))
    os << "frechet upper: " << cell_text(answer["frechet_upper"]) << "\n";
  if (answer.contains("values")) os << "values: " << join_ints(answer["values"]) << "\n";
  if (answer.contains("feasible"))
    os << "feasible: " << (answer["feasible"].get<bool>() ? "yes" : "no") << "\n";
  if (answer.contains("witness") && answer["witness"].is_array())
    print_witness(os, answer["witness"]);
  if (answer.contains("trivially_infeasible"))
    os << "trivially infeasible: "
       << (answer["trivially_infeasible"].get<bool>() ? "yes" : "no") << "\n";
  if (answer.contains("n")) os << "n: " << answer["n"] << "\n";
  if (answer.contains("total") && !answer.contains("consistent"))
    os << "total: " << cell_text(answer["total"]) << "\n";
  if (answer.contains("target_entry"))
    os << "target entry: " << entry_text(answer["target_entry"]) << "\n";
  if (answer.contains("target_value"))
    os << "target value: " << cell_text(answer["target_value"]) << "\n";
  if (answer.contains("instance") && answer["instance"].is_object())
    print_instance(os, answer["instance"]);
  return os.str();
}

}  // namespace tab3
