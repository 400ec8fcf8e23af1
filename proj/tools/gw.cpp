// gw: command-line front end for the group and series engine.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "gw/abelian.hpp"
#include "gw/config.hpp"
#include "gw/cyclic_counts.hpp"
#include "gw/group_expr.hpp"
#include "gw/henselian.hpp"
#include "gw/laurent.hpp"
#include "gw/lemma_suite.hpp"
#include "json_report.hpp"

namespace {

using gw::BigInt;
using gw::Rational;
using gw::cli::Json;

/// Outcome of one command: the JSON document, the human rendering and
/// whether the command counts as a pass.
struct Outcome
{
  Json json;
  std::string text;
  bool ok = true;
};

struct Options
{
  bool json = false;
  std::string guard_order;
  std::optional<std::size_t> guard_degree;
  std::optional<std::size_t> oracle_bound;
  std::optional<std::size_t> low_index_bound;

  std::string expr;
  std::string series;
  std::string primes;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> m;
  std::string witness;

  std::string check_id;
  std::string S = "A(5)";
  std::string G;
  std::string factors;
  std::uint64_t p = 2;
  std::uint64_t k0 = 1;
  std::uint64_t k = 1;
  std::uint64_t n_max = 6;
  std::string stages = "1";
  std::string reps = "1,2,3,5,6,7,10,11,13,14";
  std::size_t sample_count = 100;
  std::uint64_t seed = 20240601;
  std::optional<std::size_t> prec;
  std::string samples_file;
};

std::vector<std::string> split(std::string const &text, char sep)
{
  std::vector<std::string> out;
  if (text.empty())
    return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    auto const b = item.find_first_not_of(" \t");
    auto const e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::uint64_t parse_u64(std::string const &text, std::string const &what)
{
  std::uint64_t v = 0;
  auto const *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw gw::DomainError(what + ": '" + text + "' is not a non-negative integer");
  return v;
}

std::vector<std::uint64_t> parse_u64_list(std::string const &text, std::string const &what)
{
  std::vector<std::uint64_t> out;
  for (auto const &item : split(text, ','))
    out.push_back(parse_u64(item, what));
  return out;
}

std::vector<Rational> parse_reps(std::string const &text)
{
  std::vector<Rational> out;
  for (auto const &item : split(text, ','))
    out.push_back(gw::parse_rational(item));
  return out;
}

/// "2^256" or a decimal integer.
BigInt parse_order_bound(std::string const &text)
{
  auto const caret = text.find('^');
  if (caret == std::string::npos)
    return BigInt(parse_u64(text, "--guard-order"));
  return gw::ipow(BigInt(parse_u64(text.substr(0, caret), "--guard-order")),
                  parse_u64(text.substr(caret + 1), "--guard-order"));
}

gw::Guards make_guards(Options const &o)
{
  gw::Guards g;
  if (!o.guard_order.empty())
    g.max_order = parse_order_bound(o.guard_order);
  if (o.guard_degree)
    g.max_degree = *o.guard_degree;
  if (o.oracle_bound)
    g.oracle_bound = *o.oracle_bound;
  if (o.low_index_bound)
    g.low_index_bound = *o.low_index_bound;
  return g;
}

gw::NamedGroup named(std::string const &text, gw::Guards const &guards)
{
  auto const e = gw::parse_group_expr(text);
  return {gw::to_string(e), gw::eval_expr(e, guards)};
}

std::string join(std::vector<std::string> const &xs, std::string const &sep)
{
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += (i ? sep : "") + xs[i];
  return out;
}

Outcome run_eval(Options const &o, gw::Guards const &guards)
{
  auto const G = named(o.expr, guards);
  bool const perfect = gw::is_perfect(G.group);
  std::vector<std::string> base;
  for (auto b : G.group.base())
    base.push_back(std::to_string(b));
  Outcome out;
  out.json = {{"expression", G.label},
              {"degree", std::to_string(G.group.degree())},
              {"order", gw::cli::integer(G.group.order())},
              {"perfect", perfect},
              {"generators", std::to_string(G.group.generators().size())},
              {"base", gw::cli::integer_list(G.group.base())}};
  out.text = "expression: " + G.label + "\n" +
             "degree: " + std::to_string(G.group.degree()) + "\n" +
             "order: " + gw::to_string(G.group.order()) + "\n" +
             "perfect: " + (perfect ? "true" : "false") + "\n" +
             "generators: " + std::to_string(G.group.generators().size()) + "\n" +
             "base: " + join(base, " ") + "\n";
  return out;
}

Outcome run_invariants(Options const &o, gw::Guards const &guards)
{
  auto const G = named(o.expr, guards);
  auto const derived = gw::derived_subgroup(G.group);
  auto const inv = gw::abelian_invariants(G.group, derived);
  Outcome out;
  out.json = {{"expression", G.label},
              {"order", gw::cli::integer(G.group.order())},
              {"abelian_invariants", gw::cli::to_json(inv)}};
  out.text = "expression: " + G.label + "\n" + "order: " + gw::to_string(G.group.order()) +
             "\n" + "abelian invariants: " + inv.to_string() + "\n";
  Json ranks = Json::array();
  for (std::uint64_t p : parse_u64_list(o.primes, "--primes")) {
    auto const M = gw::mp_subgroup(G.group, p);
    auto const r = gw::p_rank(G.group, p);
    ranks.push_back({{"p", std::to_string(p)},
                     {"rank", std::to_string(r)},
                     {"mp_order", gw::cli::integer(M.order())}});
    out.text += "r_" + std::to_string(p) + " = " + std::to_string(r) + " (|M_p| = " +
                gw::to_string(M.order()) + ")\n";
  }
  out.json["p_ranks"] = std::move(ranks);
  return out;
}

Outcome run_count(Options const &o, gw::Guards const &guards)
{
  auto const G = named(o.expr, guards);
  gw::CountReport r;
  if (!o.m) {
    if (!o.witness.empty())
      throw gw::DomainError("--witness needs -m");
    r = gw::count_cyclic_quotients(G.group, o.n);
  } else if (!o.witness.empty()) {
    r = gw::uniform_count(G.group, o.n, *o.m, gw::parse_group_expr(o.witness), guards);
  } else {
    r = gw::uniform_count(G.group, o.n, *o.m, guards);
  }
  Outcome out;
  out.json = gw::cli::to_json(r);
  out.json["expression"] = G.label;
  std::string const args = std::to_string(o.n) + (o.m ? ", " + std::to_string(*o.m) : "");
  out.text = "I(" + args + ") = " + gw::to_string(r.value) + " (mode: " + gw::to_string(r.mode) +
             ")\n";
  if (r.witness)
    out.text += "witness: " + *r.witness + "\n";
  if (r.witness_index)
    out.text += "witness index: " + gw::to_string(*r.witness_index) + "\n";
  return out;
}

Outcome run_subgroups(Options const &o, gw::Guards const &guards)
{
  auto const G = named(o.expr, guards);
  auto const subs = gw::subgroups_up_to_index(G.group, *o.m, guards);
  Outcome out;
  Json list = Json::array();
  out.text = std::to_string(subs.size()) + " subgroups of index <= " + std::to_string(*o.m) + "\n";
  for (auto const &H : subs) {
    BigInt const index = G.group.order() / H.order();
    std::vector<std::string> gens;
    for (auto const &g : H.generators())
      gens.push_back(g.to_cycle_string());
    list.push_back({{"index", gw::cli::integer(index)},
                    {"order", gw::cli::integer(H.order())},
                    {"generators", gens}});
    out.text += "index " + gw::to_string(index) + ": " + gw::describe_subgroup(H) + "\n";
  }
  out.json = {{"expression", G.label},
              {"m", std::to_string(*o.m)},
              {"count", std::to_string(subs.size())},
              {"subgroups", std::move(list)}};
  return out;
}

std::string render(gw::CheckReport const &r)
{
  std::string out = r.check_id + " (";
  std::vector<std::string> params;
  for (auto const &[k, v] : r.parameters)
    params.push_back(k + "=" + v);
  out += join(params, ", ") + ")\n";
  for (auto const &a : r.assertions)
    out += std::string(a.pass ? "  pass  " : "  FAIL  ") + a.description + ": expected " +
           a.expected + ", actual " + a.actual + "\n";
  out += "elapsed: " + std::to_string(r.elapsed_us / 1000) + " ms\n";
  out += std::string("overall: ") + (r.overall() ? "pass" : "fail") + "\n";
  return out;
}

Outcome report_outcome(gw::CheckReport const &r)
{
  return {gw::cli::to_json(r), render(r), r.overall()};
}

std::vector<gw::LaurentSeries> read_samples(std::string const &path, std::size_t precision)
{
  std::ifstream in(path);
  if (!in)
    throw gw::DomainError("cannot read samples file '" + path + "'");
  std::vector<gw::LaurentSeries> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto const hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      out.push_back(gw::parse_series(line, precision));
    } catch (gw::ParseError const &err) {
      throw gw::ParseError(path + ": " + err.what(), number, err.column(), err.expected());
    }
  }
  return out;
}

Outcome run_verify(Options const &o, gw::Guards const &guards)
{
  std::string const &id = o.check_id;
  if (id == "rank-formula")
    return report_outcome(gw::check_rank_formula(named(o.G, guards), o.p, guards));
  if (id == "prime-reduction")
    return report_outcome(gw::check_prime_reduction_bound(named(o.G, guards), o.n));
  if (id == "simple-power")
    return report_outcome(gw::check_simple_power(named(o.S, guards), o.k, o.n_max,
                                                 o.m.value_or(1), guards));
  if (id == "perfect-extension")
    return report_outcome(gw::build_perfect_extension(named(o.S, guards), o.p, o.k0, guards).report);
  if (id == "stagewise-gap") {
    auto const res = gw::check_stagewise_gap(named(o.S, guards), o.p,
                                             parse_u64_list(o.stages, "--stages"), guards);
    Outcome out = report_outcome(res.report);
    Json witnesses = Json::array();
    std::string lines;
    for (auto const &w : res.witnesses) {
      witnesses.push_back(gw::cli::to_json(w));
      lines += "stage " + std::to_string(w.stage) + ": witness bound " + gw::to_string(w.bound) +
               " at index " + gw::to_string(w.index) + " (rank " + std::to_string(w.rank) + ")\n";
    }
    out.json["witnesses"] = std::move(witnesses);
    out.text = lines + out.text;
    return out;
  }
  if (id == "perfect-product") {
    std::vector<gw::NamedGroup> factors;
    for (auto const &f : split(o.factors, ';'))
      factors.push_back(named(f, guards));
    return report_outcome(gw::check_perfect_product(factors, o.n_max, guards));
  }
  if (id == "henselian-classes") {
    auto const reps = parse_reps(o.reps);
    std::size_t const precision = o.prec.value_or(gw::default_series_precision());
    auto const samples = o.samples_file.empty()
                             ? gw::sample_series(o.n, reps, o.sample_count, o.seed, precision)
                             : read_samples(o.samples_file, precision);
    return report_outcome(gw::check_henselian_classes(o.n, reps, samples));
  }
  throw gw::DomainError("unknown check '" + id +
                        "' (known: rank-formula, prime-reduction, simple-power, "
                        "perfect-extension, stagewise-gap, perfect-product, henselian-classes)");
}

Outcome run_hensel_root(Options const &o)
{
  std::size_t const prec = o.prec.value_or(gw::default_series_precision());
  auto const u = gw::parse_series(o.series, prec);
  auto const root = gw::hensel_nth_root(u, o.n, prec);
  bool const verified = root.pow(o.n).agrees_with(u);
  Outcome out;
  out.json = {{"series", u.to_string()},
              {"n", std::to_string(o.n)},
              {"precision", std::to_string(prec)},
              {"root", root.to_string()},
              {"coefficients", gw::cli::series_coefficients(root)},
              {"verified", verified}};
  out.text = "root: " + root.to_string() + "\nverified: " + (verified ? "true" : "false") +
             " (precision " + std::to_string(prec) + ")\n";
  out.ok = verified;
  return out;
}

Outcome run_classes(Options const &o)
{
  auto const reps = parse_reps(o.reps);
  std::size_t const precision = o.prec.value_or(gw::default_series_precision());
  auto const samples = read_samples(o.samples_file, precision);
  auto const report = gw::verify_power_class_decomposition(o.n, reps, samples);
  Outcome out;
  Json rows = Json::array();
  out.text = std::to_string(report.classes) + " representatives, " +
             (report.distinct ? "pairwise inequivalent" : "NOT pairwise inequivalent") + " (" +
             std::to_string(report.equivalent_pairs) + " equivalent pairs of " +
             std::to_string(report.pairs_checked) + ")\n";
  for (auto const &s : report.samples) {
    Json row = {{"sample", s.sample.to_string()},
                {"matching", std::to_string(s.matching_candidates)},
                {"pass", s.pass}};
    out.text += (s.pass ? "  pass  " : "  FAIL  ") + s.sample.to_string() + " -> ";
    if (s.rep) {
      row["representative"] = gw::cli::to_json(*s.rep);
      out.text += "t^" + std::to_string(s.rep->i) + " * " + gw::to_string(s.rep->b) + "\n";
    } else {
      row["error"] = s.error;
      out.text += s.error + "\n";
    }
    rows.push_back(std::move(row));
  }
  out.json = {{"n", std::to_string(o.n)},
              {"precision", std::to_string(report.precision)},
              {"classes", std::to_string(report.classes)},
              {"pairs_checked", std::to_string(report.pairs_checked)},
              {"equivalent_pairs", std::to_string(report.equivalent_pairs)},
              {"distinct", report.distinct},
              {"reductions_unique", report.reductions_unique},
              {"samples", std::move(rows)}};
  out.text += std::string("overall: ") + (report.overall ? "pass" : "fail") + "\n";
  out.ok = report.overall;
  return out;
}

int emit(std::string const &command, Outcome const &out, bool json)
{
  if (json) {
    Json doc = {{"command", command}, {"status", out.ok ? "pass" : "fail"}, {"result", out.json}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << out.text;
  }
  return out.ok ? 0 : 1;
}

int emit_error(std::string const &command, std::exception const &err, bool json)
{
  Json const e = gw::cli::error_json(err);
  if (json) {
    Json doc = {{"command", command}, {"status", "error"}, {"error", e}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cerr << "error (" << e["type"].get<std::string>() << "): " << err.what() << "\n";
  }
  return 2;
}

} // namespace

int main(int argc, char **argv)
{
  Options o;
  CLI::App app{"Finite permutation groups, cyclic-quotient counts and power classes of Q((t))"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit a single JSON document");
  app.add_option("--guard-order", o.guard_order, "Largest admitted group order (N or 2^K)");
  app.add_option("--guard-degree", o.guard_degree, "Largest admitted permutation degree");
  app.add_option("--oracle-bound", o.oracle_bound, "Largest group order for brute-force oracles");
  app.add_option("--low-index-bound", o.low_index_bound, "Largest index for low-index search");

  auto *eval = app.add_subcommand("eval", "Build a group and print order, degree, perfectness");
  eval->add_option("EXPR", o.expr)->required();

  auto *inv = app.add_subcommand("invariants", "Abelian invariants and p-ranks");
  inv->add_option("EXPR", o.expr)->required();
  inv->add_option("--primes", o.primes, "Comma-separated primes");

  auto *count = app.add_subcommand("count", "I_G(n), or I_G(n,m) with -m");
  count->add_option("EXPR", o.expr)->required();
  count->add_option("-n", o.n)->required()->check(CLI::PositiveNumber);
  count->add_option("-m", o.m)->check(CLI::PositiveNumber);
  count->add_option("--witness", o.witness, "Subgroup expression certifying a lower bound");

  auto *subs = app.add_subcommand("subgroups", "Subgroups of index at most m");
  subs->add_option("EXPR", o.expr)->required();
  subs->add_option("-m", o.m)->required()->check(CLI::PositiveNumber);

  auto *verify = app.add_subcommand("verify", "Run a named check");
  verify->add_option("CHECK-ID", o.check_id)->required();
  verify->add_option("--S", o.S, "Simple group expression");
  verify->add_option("--G", o.G, "Group expression");
  verify->add_option("--factors", o.factors, "Semicolon-separated group expressions");
  verify->add_option("--p", o.p);
  verify->add_option("--k0", o.k0);
  verify->add_option("--k", o.k);
  verify->add_option("--n", o.n);
  verify->add_option("--m", o.m);
  verify->add_option("--n-max", o.n_max);
  verify->add_option("--stages", o.stages, "Comma-separated k0 values (may be empty)");
  verify->add_option("--reps", o.reps, "Comma-separated rationals");
  verify->add_option("--samples", o.sample_count, "Number of pseudo-random samples");
  verify->add_option("--samples-file", o.samples_file, "Series literals, one per line");
  verify->add_option("--seed", o.seed);
  verify->add_option("--prec", o.prec);

  auto *hensel = app.add_subcommand("hensel", "Hensel lifting");
  hensel->require_subcommand(1);
  auto *root = hensel->add_subcommand("root", "n-th root of a unit series");
  root->add_option("SERIES", o.series)->required();
  root->add_option("-n", o.n)->required()->check(CLI::PositiveNumber);
  root->add_option("--prec", o.prec)->check(CLI::PositiveNumber);

  auto *classes = app.add_subcommand("classes", "Power-class decomposition of sample series");
  classes->add_option("-n", o.n)->required()->check(CLI::PositiveNumber);
  classes->add_option("--reps", o.reps, "Comma-separated rationals")->required();
  classes->add_option("--samples", o.samples_file, "Series literals, one per line")->required();
  classes->add_option("--prec", o.prec)->check(CLI::PositiveNumber);

  bool const json_requested =
      std::any_of(argv + 1, argv + argc, [](char const *a) { return std::string_view(a) == "--json"; });
  try {
    app.parse(argc, argv);
  } catch (CLI::Success const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    if (!json_requested)
      return app.exit(e);
    Json doc = {{"command", "usage"},
                {"status", "error"},
                {"error", {{"type", "usage"}, {"message", e.what()}}}};
    std::cout << doc.dump(2) << "\n";
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (command == "hensel")
    command = "hensel-root";
  try {
    gw::Guards const guards = make_guards(o);
    if (command == "eval")
      return emit(command, run_eval(o, guards), o.json);
    if (command == "invariants")
      return emit(command, run_invariants(o, guards), o.json);
    if (command == "count")
      return emit(command, run_count(o, guards), o.json);
    if (command == "subgroups")
      return emit(command, run_subgroups(o, guards), o.json);
    if (command == "verify")
      return emit(command, run_verify(o, guards), o.json);
    if (command == "hensel-root")
      return emit(command, run_hensel_root(o), o.json);
    return emit(command, run_classes(o), o.json);
  } catch (std::exception const &err) {
    return emit_error(command, err, o.json);
  }
}
