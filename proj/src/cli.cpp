#include "forcelab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "forcelab/algebra.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/lang.hpp"
#include "forcelab/names.hpp"
#include "forcelab/oracle.hpp"
#include "forcelab/order.hpp"
#include "forcelab/quotient.hpp"
#include "forcelab/valuation.hpp"

namespace forcelab::cli {

namespace {

// Renders report lines: `key: value` in text mode, `key<TAB>value` in
// records mode.
class Report {
public:
  Report(std::ostream& out, bool records) : out_(out), records_(records) {}

  void emit(const std::string& key, const std::string& value) {
    out_ << key << (records_ ? "\t" : ": ") << value << '\n';
  }

  void caveat() {
    emit("note", "quantifiers range over the supplied finite name universe, not over all sets");
  }

  void check(bool ok, const std::string& what) {
    if (records_) {
      out_ << (ok ? "ok" : "FAIL") << '\t' << what << '\n';
    } else {
      out_ << (ok ? "[ok] " : "[FAIL] ") << what << '\n';
    }
  }

private:
  std::ostream& out_;
  bool records_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared option bundles

struct AlgebraOptions {
  int atoms = 0;
  std::string complete_poset;
};

void add_algebra_options(CLI::App* cmd, AlgebraOptions& opts) {
  auto* atoms = cmd->add_option("--atoms", opts.atoms, "atom count of the Boolean algebra");
  auto* poset = cmd->add_option("--complete-poset", opts.complete_poset,
                                "poset file; its completion supplies the algebra");
  atoms->excludes(poset);
  poset->excludes(atoms);
}

// Returns the algebra plus the completion when one was requested.
std::pair<AlgebraPtr, std::optional<Completion>> resolve_algebra(const AlgebraOptions& opts,
                                                                 Report& report) {
  if ((opts.atoms > 0) == !opts.complete_poset.empty()) {
    throw DomainError("exactly one algebra source is needed: --atoms or --complete-poset");
  }
  if (opts.atoms > 0) {
    auto algebra = Algebra::make(opts.atoms);
    report.emit("algebra", std::to_string(algebra->atom_count()) + " atoms (" +
                               std::to_string(algebra->size()) + " elements)");
    return {algebra, std::nullopt};
  }
  auto poset = Poset::parse(read_file(opts.complete_poset));
  Completion completion = complete(poset);
  report.emit("algebra", "completion of '" + opts.complete_poset + "' (" +
                             std::to_string(poset->size()) + " conditions, " +
                             std::to_string(completion.target->atom_count()) + " atoms)");
  return {completion.target, std::move(completion)};
}

struct FormulaOptions {
  std::string inline_text;
  std::string file;
  std::string positional;
};

void add_formula_options(CLI::App* cmd, FormulaOptions& opts, bool with_positional) {
  auto* inline_opt = cmd->add_option("--formula", opts.inline_text, "formula text");
  auto* file_opt = cmd->add_option("--formula-file", opts.file, "file holding the formula");
  inline_opt->excludes(file_opt);
  file_opt->excludes(inline_opt);
  if (with_positional) {
    cmd->add_option("text", opts.positional, "formula text")->excludes(inline_opt);
  }
}

std::optional<std::string> formula_text(const FormulaOptions& opts) {
  int sources = (!opts.inline_text.empty() ? 1 : 0) + (!opts.file.empty() ? 1 : 0) +
                (!opts.positional.empty() ? 1 : 0);
  if (sources > 1) {
    throw DomainError("give the formula once: positional, --formula, or --formula-file");
  }
  if (!opts.file.empty()) {
    return read_file(opts.file);
  }
  if (!opts.inline_text.empty()) {
    return opts.inline_text;
  }
  if (!opts.positional.empty()) {
    return opts.positional;
  }
  return std::nullopt;
}

std::set<std::string> constant_ids(const NameUniverse& universe) {
  std::set<std::string> ids;
  for (int i = 0; i < universe.size(); ++i) {
    ids.insert(universe.name(i).id);
  }
  return ids;
}

std::string trace_op_text(const TraceEntry& entry, const NameUniverse& universe) {
  const std::string& x = universe.name(entry.x).id;
  const std::string& y = universe.name(entry.y).id;
  std::string rel;
  switch (entry.op) {
    case TraceEntry::Op::Eq:
      rel = " = ";
      break;
    case TraceEntry::Op::Mem:
      rel = " in ";
      break;
    case TraceEntry::Op::Subset:
      rel = " sub ";
      break;
  }
  return "[[" + x + rel + y + "]] = " + to_string(entry.result);
}

int parse_atom_index(const AlgebraPtr& algebra, const std::string& text) {
  std::string t = text;
  if (!t.empty() && t[0] == 'a') {
    t = t.substr(1);
  }
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("ultrafilter spec '" + text + "' is not of the form aK");
  }
  int atom = std::stoi(t);
  if (atom < 0 || atom >= algebra->atom_count()) {
    throw DomainError("atom a" + std::to_string(atom) + " outside the algebra's " +
                      std::to_string(algebra->atom_count()) + " atoms");
  }
  return atom;
}

// ---------------------------------------------------------------------------
// parse

struct ParseArgs {
  FormulaOptions formula;
};

int run_parse(const ParseArgs& args, Report& report) {
  auto text = formula_text(args.formula);
  if (!text) {
    throw DomainError("no formula given");
  }
  FormulaPtr f = parse_formula(*text);
  report.caveat();
  report.emit("formula", to_string(*f));
  auto constants = constant_names(*f);
  report.emit("constants",
              constants.empty() ? "none" : join({constants.begin(), constants.end()}, ", "));
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  AlgebraOptions algebra;
  std::string names_file;
  FormulaOptions formula;
  bool trace = false;
  bool oracle_check = false;
};

int run_eval(const EvalArgs& args, Report& report) {
  report.caveat();
  auto [algebra, completion] = resolve_algebra(args.algebra, report);
  NameUniverse universe = load_names(algebra, read_file(args.names_file));
  report.emit("universe", std::to_string(universe.size()) + " names");
  auto text = formula_text(args.formula);
  if (!text) {
    throw DomainError("no formula given");
  }
  FormulaPtr f = parse_sentence(*text, constant_ids(universe));
  report.emit("formula", to_string(*f));

  ValuationContext ctx(universe);
  ctx.set_trace(args.trace);
  Elem value = ctx.val_formula(*f);
  if (args.trace) {
    for (const TraceEntry& entry : ctx.trace()) {
      report.emit("trace", trace_op_text(entry, universe));
    }
  }
  report.emit("value", to_string(value));

  if (args.oracle_check) {
    Elem classical = oracle::classical_value(universe, *f);
    report.emit("oracle-value", to_string(classical));
    if (!(classical == value)) {
      throw DomainError("per-atom classical reading disagrees with the valuation: " +
                        to_string(classical) + " vs " + to_string(value));
    }
    report.emit("oracle", "agree");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// complete

struct CompleteArgs {
  std::string poset_file;
  bool oracle_check = false;
};

int run_complete(const CompleteArgs& args, Report& report) {
  report.caveat();
  auto poset = Poset::parse(read_file(args.poset_file));
  Completion completion = complete(poset);
  report.emit("poset", std::to_string(poset->size()) + " conditions");
  report.emit("atoms", std::to_string(completion.target->atom_count()));
  report.emit("elements", std::to_string(completion.target->size()));
  for (int p = 0; p < poset->size(); ++p) {
    report.emit("embed " + poset->id(p), to_string(completion.embed_of(p)));
  }
  if (args.oracle_check) {
    auto regular_opens = oracle::enumerate_regular_opens(poset);
    if (regular_opens.size() != static_cast<size_t>(completion.target->size())) {
      throw DomainError("regular-open count " + std::to_string(regular_opens.size()) +
                        " does not match the completion's " +
                        std::to_string(completion.target->size()) + " elements");
    }
    report.emit("oracle",
                "agree (" + std::to_string(regular_opens.size()) + " regular open sets)");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// ultra

struct UltraArgs {
  AlgebraOptions algebra;
  bool oracle_check = false;
};

int run_ultra(const UltraArgs& args, Report& report) {
  report.caveat();
  auto [algebra, completion] = resolve_algebra(args.algebra, report);
  auto filters = ultrafilters(algebra);
  for (const Ultrafilter& uf : filters) {
    std::vector<std::string> members;
    for (const Elem& m : uf.members()) {
      members.push_back(to_string(m));
    }
    report.emit("ultrafilter " + uf.describe(), join(members, ", "));
  }
  report.emit("count", std::to_string(filters.size()));
  if (args.oracle_check) {
    auto brute = oracle::enumerate_ultrafilters_bruteforce(algebra);
    std::set<std::vector<std::uint32_t>> expected;
    for (const auto& candidate : brute) {
      std::vector<std::uint32_t> masks;
      for (const Elem& m : candidate) {
        masks.push_back(m.mask());
      }
      expected.insert(masks);
    }
    std::set<std::vector<std::uint32_t>> actual;
    for (const Ultrafilter& uf : filters) {
      std::vector<std::uint32_t> masks;
      for (const Elem& m : uf.members()) {
        masks.push_back(m.mask());
      }
      actual.insert(masks);
    }
    if (expected != actual) {
      throw DomainError("exhaustive ultrafilter search disagrees with the atom-indexed list");
    }
    report.emit("oracle", "agree (" + std::to_string(brute.size()) + " by exhaustive search)");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// quotient

struct QuotientArgs {
  AlgebraOptions algebra;
  std::string names_file;
  std::string uf_spec;
  FormulaOptions formula;
  bool oracle_check = false;
};

int run_quotient(const QuotientArgs& args, Report& report) {
  report.caveat();
  auto [algebra, completion] = resolve_algebra(args.algebra, report);
  NameUniverse universe = load_names(algebra, read_file(args.names_file));
  report.emit("universe", std::to_string(universe.size()) + " names");
  Ultrafilter uf(algebra, parse_atom_index(algebra, args.uf_spec));
  report.emit("ultrafilter", uf.describe());

  QuotientModel model = QuotientModel::build(universe, uf);
  report.emit("classes", std::to_string(model.class_count()));
  for (int cls = 0; cls < model.class_count(); ++cls) {
    std::vector<std::string> ids;
    for (int i : model.class_members()[cls]) {
      ids.push_back(universe.name(i).id);
    }
    report.emit("class [" + universe.name(model.representative(cls)).id + "]", join(ids, ", "));
  }
  for (const auto& [from, to] : model.edges()) {
    report.emit("membership", "[" + universe.name(model.representative(from)).id + "] in [" +
                                  universe.name(model.representative(to)).id + "]");
  }
  std::vector<HFSet> collapse = model.mostowski_collapse();
  for (int cls = 0; cls < model.class_count(); ++cls) {
    report.emit("collapse [" + universe.name(model.representative(cls)).id + "]",
                collapse[cls].to_string());
  }

  if (args.oracle_check) {
    for (int i = 0; i < universe.size(); ++i) {
      HFSet reading = oracle::section(universe, i, uf.generator_atom());
      if (!(reading == collapse[model.class_of(i)])) {
        throw DomainError("collapse of '" + universe.name(i).id +
                          "' differs from its per-atom reading " + reading.to_string());
      }
    }
    report.emit("oracle", "agree (collapse matches the per-atom reading)");
  }

  auto text = formula_text(args.formula);
  if (text) {
    FormulaPtr f = parse_sentence(*text, constant_ids(universe));
    report.emit("formula", to_string(*f));
    ValuationContext ctx(universe);
    Elem value = ctx.val_formula(*f);
    bool in_uf = uf.contains(value);
    bool truth = model.truth(*f);
    report.emit("value", to_string(value));
    report.emit("value-in-ultrafilter", in_uf ? "yes" : "no");
    report.emit("truth-in-quotient", truth ? "true" : "false");
    if (in_uf != truth) {
      throw DomainError("truth lemma violated for this sentence");
    }
    report.emit("lemma", "agree");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// force

struct ForceArgs {
  std::string poset_file;
  std::string names_file;
  std::string condition_id;
  FormulaOptions formula;
  bool trace = false;
};

int run_force(const ForceArgs& args, Report& report) {
  report.caveat();
  auto poset = Poset::parse(read_file(args.poset_file));
  Completion completion = complete(poset);
  report.emit("poset", std::to_string(poset->size()) + " conditions");
  report.emit("algebra", std::to_string(completion.target->atom_count()) + " atoms (" +
                             std::to_string(completion.target->size()) + " elements)");
  NameUniverse universe = load_names(completion.target, read_file(args.names_file));
  report.emit("universe", std::to_string(universe.size()) + " names");

  auto text = formula_text(args.formula);
  if (!text) {
    throw DomainError("no formula given");
  }
  FormulaPtr f = parse_sentence(*text, constant_ids(universe));
  report.emit("formula", to_string(*f));

  int p = poset->index_of(args.condition_id);
  ValuationContext ctx(universe);
  ctx.set_trace(args.trace);
  Elem value = ctx.val_formula(*f);
  if (args.trace) {
    for (const TraceEntry& entry : ctx.trace()) {
      report.emit("trace", trace_op_text(entry, universe));
    }
  }
  bool result = forces(completion, p, *f, ctx);
  report.emit("condition", args.condition_id);
  report.emit("embed", to_string(completion.embed_of(p)));
  report.emit("value", to_string(value));
  report.emit("result", result ? "FORCES" : "DOES-NOT-FORCE");
  return 0;
}

// ---------------------------------------------------------------------------
// cohen

struct CohenArgs {
  int rows = 0;
  int cols = 0;
  bool lazy = false;
  std::string hit_spec;
  std::uint64_t seed = 0;
};

struct HitItem {
  enum class Kind { Point, Points, Distinct, AllDistinct };
  Kind kind;
  int a = 0;
  int b = 0;
};

int parse_row_token(const std::string& token, int rows) {
  std::string t = token;
  if (!t.empty() && t[0] == 'r') {
    t = t.substr(1);
  }
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("bad row '" + token + "' in the family spec");
  }
  int row = std::stoi(t);
  if (row < 0 || row >= rows) {
    throw DomainError("row " + token + " outside the " + std::to_string(rows) + " rows");
  }
  return row;
}

// Items separated by ';': point(<row>,<col>), points(<n>) for every row and
// column below n, distinct(<row>,<row>), distinct(*) for every row pair.
std::vector<HitItem> parse_hit_spec(const std::string& spec, int rows) {
  std::vector<HitItem> items;
  std::istringstream in(spec);
  std::string raw;
  while (std::getline(in, raw, ';')) {
    std::string item;
    for (char c : raw) {
      if (std::isspace(static_cast<unsigned char>(c)) == 0) {
        item += c;
      }
    }
    if (item.empty()) {
      continue;
    }
    auto open = item.find('(');
    if (open == std::string::npos || item.back() != ')') {
      throw DomainError("bad family item '" + raw + "'; expected name(args)");
    }
    std::string head = item.substr(0, open);
    std::string body = item.substr(open + 1, item.size() - open - 2);
    auto comma = body.find(',');
    if (head == "point") {
      if (comma == std::string::npos) {
        throw DomainError("point(...) needs a row and a column");
      }
      int row = parse_row_token(body.substr(0, comma), rows);
      int col = std::stoi(body.substr(comma + 1));
      items.push_back({HitItem::Kind::Point, row, col});
    } else if (head == "points") {
      int n = std::stoi(body);
      if (n < 1) {
        throw DomainError("points(n) needs n >= 1");
      }
      items.push_back({HitItem::Kind::Points, n, 0});
    } else if (head == "distinct") {
      if (body == "*") {
        items.push_back({HitItem::Kind::AllDistinct, 0, 0});
      } else {
        if (comma == std::string::npos) {
          throw DomainError("distinct(...) needs two rows or *");
        }
        int r1 = parse_row_token(body.substr(0, comma), rows);
        int r2 = parse_row_token(body.substr(comma + 1), rows);
        items.push_back({HitItem::Kind::Distinct, r1, r2});
      }
    } else {
      throw DomainError("unknown family item '" + head + "'");
    }
  }
  if (items.empty()) {
    throw DomainError("empty family spec");
  }
  return items;
}

std::vector<std::pair<int, int>> all_row_pairs(int rows) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < rows; ++i) {
    for (int j = i + 1; j < rows; ++j) {
      pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

void report_table(Report& report, const Condition& condition, int rows, int cols,
                  const std::vector<std::string>& labels) {
  for (int r = 0; r < rows; ++r) {
    std::string line;
    for (int c = 0; c < cols; ++c) {
      auto bit = condition.at(r, c);
      line += bit ? static_cast<char>('0' + *bit) : '.';
    }
    report.emit("F " + labels[r], line);
  }
}

void report_distinctness(Report& report, const Condition& condition,
                         const std::vector<std::pair<int, int>>& pairs,
                         const std::vector<std::string>& labels) {
  for (const auto& [r1, r2] : pairs) {
    std::optional<int> witness;
    for (const auto& [cell, bit] : condition.entries()) {
      if (cell.first != r1) {
        continue;
      }
      auto other = condition.at(r2, cell.second);
      if (other && *other != bit) {
        witness = cell.second;
        break;
      }
    }
    std::string key = "distinct " + labels[r1] + "," + labels[r2];
    if (witness) {
      report.emit(key, "separated at column " + std::to_string(*witness));
    } else {
      report.emit(key, "not separated");
    }
  }
}

int run_cohen_finite(const CohenArgs& args, Report& report) {
  FiniteCohenPoset poset = cohen_poset_finite(args.rows, args.cols);
  report.emit("poset", std::to_string(poset.poset->size()) + " conditions on a " +
                           std::to_string(args.rows) + "x" + std::to_string(args.cols) +
                           " grid");
  report.emit("total-conditions", std::to_string(poset.poset->minimal_elements().size()));
  for (const auto& [r1, r2] : all_row_pairs(args.rows)) {
    DistinctReport dr = dense_distinct(poset, r1, r2);
    std::string key = "dense-distinct " + poset.row_labels[r1] + "," + poset.row_labels[r2];
    if (dr.dense) {
      report.emit(key, "dense (" + std::to_string(dr.members.size()) + " members)");
    } else {
      report.emit(key,
                  "NOT-DENSE; counterexample " + dr.counterexample->to_string(poset.row_labels));
    }
  }
  if (args.hit_spec.empty()) {
    return 0;
  }

  std::vector<DenseSet> family;
  std::vector<std::pair<int, int>> pairs;
  for (const HitItem& item : parse_hit_spec(args.hit_spec, args.rows)) {
    switch (item.kind) {
      case HitItem::Kind::Point:
        family.push_back(dense_point(poset, item.a, item.b));
        break;
      case HitItem::Kind::Points:
        for (int r = 0; r < args.rows; ++r) {
          for (int c = 0; c < item.a; ++c) {
            family.push_back(dense_point(poset, r, c));
          }
        }
        break;
      case HitItem::Kind::Distinct:
      case HitItem::Kind::AllDistinct: {
        auto wanted = item.kind == HitItem::Kind::Distinct
                          ? std::vector<std::pair<int, int>>{{item.a, item.b}}
                          : all_row_pairs(args.rows);
        for (const auto& [r1, r2] : wanted) {
          DistinctReport dr = dense_distinct(poset, r1, r2);
          if (!dr.dense) {
            throw DomainError("family member distinct(" + poset.row_labels[r1] + "," +
                              poset.row_labels[r2] + ") is not dense in this truncation; " +
                              "counterexample " +
                              dr.counterexample->to_string(poset.row_labels));
          }
          family.push_back(*dr.dense);
          pairs.emplace_back(r1, r2);
        }
        break;
      }
    }
  }
  HitResult hit = hit_dense_sets(poset.poset, family, args.seed);
  for (int p : hit.chain) {
    report.emit("chain", poset.conditions[p].to_string(poset.row_labels));
  }
  report.emit("filter", std::to_string(hit.filter.members().size()) + " conditions");
  Condition un = union_of_filter(poset, hit.filter);
  report.emit("union", un.to_string(poset.row_labels));
  report_table(report, un, args.rows, args.cols, poset.row_labels);
  bool total = true;
  for (int r = 0; r < args.rows && total; ++r) {
    for (int c = 0; c < args.cols; ++c) {
      if (!un.defined_at(r, c)) {
        total = false;
        break;
      }
    }
  }
  report.emit("total", total ? "yes" : "no");
  report_distinctness(report, un, pairs.empty() ? all_row_pairs(args.rows) : pairs,
                      poset.row_labels);
  return 0;
}

int run_cohen_lazy(const CohenArgs& args, Report& report) {
  LazyCohenPoset poset = cohen_poset_lazy(args.rows);
  report.emit("poset", std::to_string(args.rows) + " rows, unbounded columns (lazy)");
  if (args.hit_spec.empty()) {
    for (const auto& [r1, r2] : all_row_pairs(args.rows)) {
      report.emit("dense-distinct " + poset.row_labels[r1] + "," + poset.row_labels[r2],
                  "dense (any condition extends at a fresh column)");
    }
    return 0;
  }

  std::vector<LazyDense> family;
  std::vector<std::pair<int, int>> pairs;
  for (const HitItem& item : parse_hit_spec(args.hit_spec, args.rows)) {
    switch (item.kind) {
      case HitItem::Kind::Point:
        family.push_back(dense_point(poset, item.a, item.b));
        break;
      case HitItem::Kind::Points:
        for (int r = 0; r < args.rows; ++r) {
          for (int c = 0; c < item.a; ++c) {
            family.push_back(dense_point(poset, r, c));
          }
        }
        break;
      case HitItem::Kind::Distinct:
        family.push_back(dense_distinct(poset, item.a, item.b));
        pairs.emplace_back(item.a, item.b);
        break;
      case HitItem::Kind::AllDistinct:
        for (const auto& [r1, r2] : all_row_pairs(args.rows)) {
          family.push_back(dense_distinct(poset, r1, r2));
          pairs.emplace_back(r1, r2);
        }
        break;
    }
  }
  LazyHitResult hit = hit_dense_sets(poset, family, args.seed);
  for (const Condition& c : hit.chain) {
    report.emit("chain", c.to_string(poset.row_labels));
  }
  Condition un = union_of_chain(hit);
  report.emit("union", un.to_string(poset.row_labels));
  int table_cols = std::max(args.cols, un.max_col() + 1);
  report_table(report, un, args.rows, table_cols, poset.row_labels);
  if (args.cols > 0) {
    bool total = true;
    for (int r = 0; r < args.rows && total; ++r) {
      for (int c = 0; c < args.cols; ++c) {
        if (!un.defined_at(r, c)) {
          total = false;
          break;
        }
      }
    }
    report.emit("total", std::string(total ? "yes" : "no") + " on the " +
                             std::to_string(args.rows) + "x" + std::to_string(args.cols) +
                             " grid");
  }
  report_distinctness(report, un, pairs.empty() ? all_row_pairs(args.rows) : pairs,
                      poset.row_labels);
  return 0;
}

int run_cohen(const CohenArgs& args, Report& report) {
  report.caveat();
  if (!args.lazy && args.cols < 1) {
    throw DomainError("the finite truncation needs --cols");
  }
  return args.lazy ? run_cohen_lazy(args, report) : run_cohen_finite(args, report);
}

// ---------------------------------------------------------------------------
// selfcheck

struct SelfcheckArgs {
  std::uint64_t seed = 0;
};

int run_selfcheck(const SelfcheckArgs& args, Report& report) {
  report.caveat();
  int failures = 0;
  auto suite = [&](const std::string& what, const std::function<void()>& body) {
    try {
      body();
      report.check(true, what);
    } catch (const std::exception& e) {
      report.check(false, what + ": " + e.what());
      ++failures;
    }
  };
  auto require = [](bool ok, const std::string& detail) {
    if (!ok) {
      throw DomainError(detail);
    }
  };

  suite("element expressions round-trip through the parser", [&] {
    auto algebra = Algebra::make(3);
    for (const Elem& e : algebra->elements()) {
      require(parse_element(algebra, to_string(e)) == e, "mismatch at " + to_string(e));
    }
  });

  suite("ultrafilters match the exhaustive search (1..3 atoms)", [&] {
    for (int atoms = 1; atoms <= 3; ++atoms) {
      auto algebra = Algebra::make(atoms);
      auto brute = oracle::enumerate_ultrafilters_bruteforce(algebra);
      require(brute.size() == static_cast<size_t>(atoms),
              std::to_string(atoms) + " atoms gave " + std::to_string(brute.size()));
      for (const Ultrafilter& uf : ultrafilters(algebra)) {
        std::vector<Elem> members = uf.members();
        bool found = false;
        for (const auto& candidate : brute) {
          if (candidate == members) {
            found = true;
            break;
          }
        }
        require(found, uf.describe() + " missing from the exhaustive list");
      }
    }
  });

  suite("valuation agrees with the per-atom classical reading", [&] {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(args.seed));
    for (int atoms : {1, 2}) {
      NameUniverse universe = random_universe(Algebra::make(atoms), args.seed + atoms, 3, 3);
      ValuationContext ctx(universe);
      std::vector<std::string> constants;
      for (int i = 0; i < universe.size(); ++i) {
        constants.push_back(universe.name(i).id);
      }
      SentenceGenOptions options;
      options.constants = constants;
      for (int k = 0; k < 150; ++k) {
        FormulaPtr f = random_sentence(rng, options);
        Elem direct = ctx.val_formula(*f);
        Elem classical = oracle::classical_value(universe, *f);
        require(direct == classical, "mismatch on " + to_string(*f));
      }
    }
  });

  suite("printed sentences reparse to the same tree", [&] {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(args.seed) + 17);
    SentenceGenOptions options;
    options.constants = {"z", "u", "v"};
    std::set<std::string> constants(options.constants.begin(), options.constants.end());
    for (int k = 0; k < 200; ++k) {
      FormulaPtr f = random_sentence(rng, options);
      std::string printed = to_string(*f);
      require(equal(*parse_sentence(printed, constants), *f), "mismatch on " + printed);
    }
  });

  suite("dense and filter checks match exhaustive enumeration (posets to size 4)", [&] {
    for (const PosetPtr& poset : oracle::all_posets_up_to(4)) {
      auto dense_list = oracle::enumerate_dense(poset);
      auto filter_list = oracle::enumerate_filters(poset);
      std::set<std::vector<int>> dense_set(dense_list.begin(), dense_list.end());
      std::set<std::vector<int>> filter_set(filter_list.begin(), filter_list.end());
      const int n = poset->size();
      for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i) {
          if ((mask >> i & 1u) != 0) {
            members.push_back(i);
          }
        }
        require(is_dense(*poset, members) == (dense_set.count(members) > 0),
                "density mismatch on a subset");
        require(is_filter(*poset, members) == (filter_set.count(members) > 0),
                "filter mismatch on a subset");
      }
    }
  });

  suite("completions have as many elements as regular open sets (posets to size 5)", [&] {
    for (const PosetPtr& poset : oracle::all_posets_up_to(5)) {
      Completion completion = complete(poset);
      require(oracle::enumerate_regular_opens(poset).size() ==
                  static_cast<size_t>(completion.target->size()),
              "count mismatch on a " + std::to_string(poset->size()) + "-element poset");
    }
  });

  suite("truth lemma holds on a seeded universe", [&] {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(args.seed) + 29);
    NameUniverse universe = random_universe(Algebra::make(2), args.seed + 5, 3, 2);
    ValuationContext ctx(universe);
    std::vector<std::string> constants;
    for (int i = 0; i < universe.size(); ++i) {
      constants.push_back(universe.name(i).id);
    }
    SentenceGenOptions options;
    options.constants = constants;
    for (const Ultrafilter& uf : ultrafilters(universe.algebra())) {
      QuotientModel model = QuotientModel::build(universe, uf);
      for (int k = 0; k < 100; ++k) {
        FormulaPtr f = random_sentence(rng, options);
        require(uf.contains(ctx.val_formula(*f)) == model.truth(*f),
                "lemma fails on " + to_string(*f));
      }
    }
  });

  suite("dense chains reach minimal elements and generic filters (posets to size 4)", [&] {
    for (const PosetPtr& poset : oracle::all_posets_up_to(4)) {
      std::vector<DenseSet> family;
      for (const auto& members : oracle::enumerate_dense(poset)) {
        family.push_back(DenseSet::make(poset, members));
      }
      HitResult hit = hit_dense_sets(poset, family, args.seed);
      bool has_minimal = false;
      for (int p : hit.filter.members()) {
        has_minimal = has_minimal || poset->is_minimal(p);
      }
      require(has_minimal, "no minimal element in the filter");
      require(is_generic_all(hit.filter), "filter misses a dense set");
    }
  });

  suite("poset catalog has the expected isomorphism-class counts", [&] {
    const std::vector<size_t> expected{1, 2, 5, 16, 63};
    for (int n = 1; n <= 5; ++n) {
      require(oracle::all_posets(n).size() == expected[n - 1],
              "count mismatch at " + std::to_string(n) + " elements");
    }
  });

  suite("finite truncation rejects row distinctness as dense", [&] {
    FiniteCohenPoset poset = cohen_poset_finite(2, 1);
    DistinctReport dr = dense_distinct(poset, 0, 1);
    require(!dr.dense && dr.counterexample.has_value(), "expected a NOT-DENSE report");
    int p = poset.index_of(*dr.counterexample);
    for (int q : poset.poset->below(p)) {
      for (int member : dr.members) {
        require(q != member, "counterexample has a separating extension");
      }
    }
  });

  suite("lazy chains yield total, pairwise distinct rows", [&] {
    LazyCohenPoset poset = cohen_poset_lazy(3);
    std::vector<LazyDense> family;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        family.push_back(dense_point(poset, r, c));
      }
    }
    for (const auto& [r1, r2] : all_row_pairs(3)) {
      family.push_back(dense_distinct(poset, r1, r2));
    }
    for (std::uint64_t s = args.seed; s < args.seed + 5; ++s) {
      Condition un = union_of_chain(hit_dense_sets(poset, family, s));
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 4; ++c) {
          require(un.defined_at(r, c), "union not total at seed " + std::to_string(s));
        }
      }
      for (const auto& [r1, r2] : all_row_pairs(3)) {
        bool separated = false;
        for (const auto& [cell, bit] : un.entries()) {
          if (cell.first == r1) {
            auto other = un.at(r2, cell.second);
            separated = separated || (other && *other != bit);
          }
        }
        require(separated, "rows not distinct at seed " + std::to_string(s));
      }
    }
  });

  report.emit("selfcheck", failures == 0 ? "all checks passed" : std::to_string(failures) +
                                                                     " check(s) failed");
  if (failures != 0) {
    throw DomainError("selfcheck found disagreements");
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite Boolean-valued models, ultrafilter quotients, and forcing"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "records"}))
      ->capture_default_str();

  ParseArgs parse_args;
  auto* parse_cmd = app.add_subcommand("parse", "parse a formula and print its canonical form");
  add_formula_options(parse_cmd, parse_args.formula, true);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Boolean value of a sentence over a name universe");
  add_algebra_options(eval_cmd, eval_args.algebra);
  eval_cmd->add_option("--names", eval_args.names_file, "name universe file")->required();
  add_formula_options(eval_cmd, eval_args.formula, false);
  eval_cmd->add_flag("--trace", eval_args.trace, "print the atomic valuation steps");
  eval_cmd->add_flag("--oracle-check", eval_args.oracle_check,
                     "recompute classically per atom and compare");

  CompleteArgs complete_args;
  auto* complete_cmd =
      app.add_subcommand("complete", "Boolean completion of a poset via regular open sets");
  complete_cmd->add_option("--poset", complete_args.poset_file, "poset file")->required();
  complete_cmd->add_flag("--oracle-check", complete_args.oracle_check,
                         "enumerate regular open sets and compare counts");

  UltraArgs ultra_args;
  auto* ultra_cmd = app.add_subcommand("ultra", "list the ultrafilters of a finite algebra");
  add_algebra_options(ultra_cmd, ultra_args.algebra);
  ultra_cmd->add_flag("--oracle-check", ultra_args.oracle_check,
                      "compare against brute-force subset search");

  QuotientArgs quotient_args;
  auto* quotient_cmd =
      app.add_subcommand("quotient", "quotient a name universe by an ultrafilter");
  add_algebra_options(quotient_cmd, quotient_args.algebra);
  quotient_cmd->add_option("--names", quotient_args.names_file, "name universe file")->required();
  quotient_cmd->add_option("--uf", quotient_args.uf_spec, "ultrafilter generator, e.g. a0")
      ->required();
  add_formula_options(quotient_cmd, quotient_args.formula, false);
  quotient_cmd->add_flag("--oracle-check", quotient_args.oracle_check,
                         "compare the collapse with the per-atom reading");

  ForceArgs force_args;
  auto* force_cmd = app.add_subcommand("force", "decide whether a condition forces a sentence");
  force_cmd->add_option("--poset", force_args.poset_file, "poset file")->required();
  force_cmd->add_option("--names", force_args.names_file, "name universe file")->required();
  force_cmd->add_option("--p", force_args.condition_id, "condition id")->required();
  add_formula_options(force_cmd, force_args.formula, false);
  force_cmd->add_flag("--trace", force_args.trace, "print the atomic valuation steps");

  CohenArgs cohen_args;
  auto* cohen_cmd =
      app.add_subcommand("cohen", "finite partial functions on a grid: density and chains");
  cohen_cmd->add_option("--rows", cohen_args.rows, "row count")->required();
  cohen_cmd->add_option("--cols", cohen_args.cols, "column count (finite) or report width");
  cohen_cmd->add_flag("--lazy", cohen_args.lazy, "unbounded columns");
  cohen_cmd->add_option("--hit", cohen_args.hit_spec,
                        "dense family, e.g. 'points(4);distinct(*)'");
  cohen_cmd->add_option("--seed", cohen_args.seed, "tie-breaking seed")->capture_default_str();

  SelfcheckArgs selfcheck_args;
  auto* selfcheck_cmd =
      app.add_subcommand("selfcheck", "run the reduced oracle-agreement suites");
  selfcheck_cmd->add_option("--seed", selfcheck_args.seed, "seed for the random corpora")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report(out, format == "records");
  try {
    if (parse_cmd->parsed()) {
      return run_parse(parse_args, report);
    }
    if (eval_cmd->parsed()) {
      return run_eval(eval_args, report);
    }
    if (complete_cmd->parsed()) {
      return run_complete(complete_args, report);
    }
    if (ultra_cmd->parsed()) {
      return run_ultra(ultra_args, report);
    }
    if (quotient_cmd->parsed()) {
      return run_quotient(quotient_args, report);
    }
    if (force_cmd->parsed()) {
      return run_force(force_args, report);
    }
    if (cohen_cmd->parsed()) {
      return run_cohen(cohen_args, report);
    }
    if (selfcheck_cmd->parsed()) {
      return run_selfcheck(selfcheck_args, report);
    }
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace forcelab::cli
