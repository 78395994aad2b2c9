#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "formats.hpp"
#include "koszulhh/coboundary.hpp"
#include "koszulhh/hochschild.hpp"
#include "koszulhh/koszul.hpp"
#include "koszulhh/massey.hpp"

#ifndef KOSZULHH_VERSION
#define KOSZULHH_VERSION "0.0.0"
#endif

namespace koszulhh::cli {

using nlohmann::json;

namespace {

struct Common {
  std::string format = "json";
  std::string out;
  std::size_t cap = ResourceCaps{}.max_sequences;
  std::uint64_t seed = 1;
  bool timing = false;
};

struct AlgebraOptions {
  std::size_t v_dim = 0;
  std::size_t atoms = 0;
  std::string subring;  // "0,1|2"; empty means A = B

  CoefficientPair pair() const {
    return CoefficientPair(v_dim, subring.empty() ? Subring::full(atoms) : io::parse_subring_text(atoms, subring));
  }
  json to_json() const {
    json j{{"vDim", v_dim}, {"atoms", atoms}};
    if (!subring.empty()) j["subringBlocks"] = io::subring_to_json(pair().subring());
    return j;
  }
};

/// What a command hands back: JSON fields next to the manifest, CSV rows
/// (header first) and an exit code.
struct Report {
  json parameters = json::object();
  json body = json::object();
  json summary = json::object();
  std::vector<std::string> csv;
  int code = kOk;
};

class CellError : public std::runtime_error {
 public:
  CellError(const std::string& cell, const CapExceeded& e) : std::runtime_error(cell + ": " + e.what()) {}
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json hh_row(const HhReport& r) {
  return {{"k", r.k}, {"s", r.s}, {"cochains", r.cochains}, {"cocycles", r.cocycles},
          {"coboundaries", r.coboundaries}, {"hh", r.cohomology}};
}

std::string hh_csv(const HhReport& r) {
  std::ostringstream os;
  os << r.k << ',' << r.s << ',' << r.cochains << ',' << r.cocycles << ',' << r.coboundaries << ',' << r.cohomology;
  return os.str();
}

constexpr const char* kHhHeader = "k,s,cochains,cocycles,coboundaries,hh";

HhReport hh_cell(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps) {
  try {
    return hh_dim(pair, k, s, caps);
  } catch (const CapExceeded& e) {
    throw CellError("cell (k=" + std::to_string(k) + ", s=" + std::to_string(s) + ")", e);
  }
}

// ---------------------------------------------------------------- commands

struct GridOptions {
  AlgebraOptions alg;
  int k_max = 6;
  int s_min = -3;
  int s_max = 0;
};

Report cmd_hh_grid(const GridOptions& o, const ResourceCaps& caps) {
  Report r;
  r.parameters = {{"kMax", o.k_max}, {"sMin", o.s_min}, {"sMax", o.s_max}};
  r.body["algebra"] = o.alg.to_json();
  const auto pair = o.alg.pair();
  json rows = json::array();
  json nonzero = json::array();
  r.csv.push_back(kHhHeader);
  for (int k = 0; k <= o.k_max; ++k) {
    for (int s = o.s_min; s <= o.s_max; ++s) {
      const auto cell = hh_cell(pair, k, s, caps);
      rows.push_back(hh_row(cell));
      r.csv.push_back(hh_csv(cell));
      if (cell.cohomology) nonzero.push_back({{"k", k}, {"s", s}, {"hh", cell.cohomology}});
    }
  }
  r.summary = {{"cells", rows.size()}, {"nonzero", nonzero}};
  r.body["results"] = std::move(rows);
  return r;
}

struct KadeishviliOptions {
  AlgebraOptions alg;
  int k_max = 6;
};

Report cmd_kadeishvili(const KadeishviliOptions& o, const ResourceCaps& caps) {
  Report r;
  r.parameters = {{"kMax", o.k_max}};
  r.body["algebra"] = o.alg.to_json();
  KadeishviliReport rep;
  try {
    rep = kadeishvili_check(o.alg.pair(), o.k_max, caps);
  } catch (const CapExceeded& e) {
    throw CellError("kadeishvili grid up to k=" + std::to_string(o.k_max), e);
  }
  json rows = json::array();
  r.csv.push_back(kHhHeader);
  for (const auto& c : rep.cells) {
    rows.push_back(hh_row(c));
    r.csv.push_back(hh_csv(c));
  }
  json failures = json::array();
  for (const auto& c : rep.failures) failures.push_back({{"k", c.k}, {"s", c.s}, {"hh", c.cohomology}});
  r.body["results"] = std::move(rows);
  r.summary = {{"passed", rep.passed}, {"failures", failures}};
  r.code = rep.passed ? kOk : kCheckFailed;
  return r;
}

struct KoszulOptions {
  AlgebraOptions alg;
  int max_degree = 6;
};

Report cmd_koszul(const KoszulOptions& o, const ResourceCaps& caps) {
  if (!o.alg.subring.empty()) throw std::invalid_argument("koszul: --subring does not apply");
  Report r;
  r.parameters = {{"maxInternalDegree", o.max_degree}};
  r.body["algebra"] = o.alg.to_json();
  const ConnectedSumAlgebra alg(o.alg.v_dim, o.alg.atoms);
  KoszulReport rep;
  try {
    rep = verify_koszul(alg, o.max_degree, caps);
  } catch (const CapExceeded& e) {
    throw CellError("koszul complex up to internal degree " + std::to_string(o.max_degree), e);
  }
  json rows = json::array();
  r.csv.push_back("internal_degree,i,chain_dim,homology");
  for (const auto& d : rep.degrees) {
    rows.push_back({{"internalDegree", d.internal_degree},
                    {"chainDims", d.chain_dims},
                    {"homology", d.homology},
                    {"algebraDim", d.algebra_dim},
                    {"dSquaredZero", d.d_squared_zero}});
    for (std::size_t i = 0; i < d.chain_dims.size(); ++i) {
      r.csv.push_back(std::to_string(d.internal_degree) + "," + std::to_string(i) + "," +
                      std::to_string(d.chain_dims[i]) + "," + std::to_string(d.homology[i]));
    }
  }
  json failures = json::array();
  for (const auto& f : rep.failures) {
    failures.push_back({{"internalDegree", f.internal_degree}, {"i", f.homological_degree},
                        {"homology", f.homology_dim}, {"reason", f.reason}});
  }
  r.body["results"] = std::move(rows);
  r.summary = {{"passed", rep.passed}, {"failures", failures}};
  r.code = rep.passed ? kOk : kCheckFailed;
  return r;
}

struct BottomOptions {
  AlgebraOptions alg;
  int k_max = 5;
};

Report cmd_bottom(const BottomOptions& o, const ResourceCaps& caps) {
  if (!o.alg.subring.empty()) throw std::invalid_argument("bottom: --subring does not apply");
  Report r;
  r.parameters = {{"kMax", o.k_max}};
  r.body["algebra"] = o.alg.to_json();
  const ConnectedSumAlgebra alg(o.alg.v_dim, o.alg.atoms);
  const bool claimed = o.alg.v_dim + o.alg.atoms >= 3;
  bool passed = true;
  json rows = json::array();
  r.csv.push_back("k,cocycles");
  for (int k = 1; k <= o.k_max; ++k) {
    std::size_t dim = 0;
    try {
      dim = bottom_cocycles(alg, k, caps);
    } catch (const CapExceeded& e) {
      throw CellError("cell (k=" + std::to_string(k) + ", s=" + std::to_string(-k) + ")", e);
    }
    rows.push_back({{"k", k}, {"s", -k}, {"cocycles", dim}});
    r.csv.push_back(std::to_string(k) + "," + std::to_string(dim));
    if (claimed && dim) passed = false;
  }
  r.body["results"] = std::move(rows);
  // With fewer than three generators nothing is claimed; the numbers are only reported.
  r.summary = {{"vanishingClaimed", claimed}, {"passed", passed}};
  r.code = passed ? kOk : kCheckFailed;
  return r;
}

struct BarOptions {
  AlgebraOptions alg;
  int k = 1;
  int s = -1;
  int max_degree = 8;
  int lookahead = kDefaultBarLookahead;
};

Report cmd_bar(const BarOptions& o, const ResourceCaps& caps) {
  Report r;
  r.parameters = {{"k", o.k}, {"s", o.s}, {"maxInternalDegree", o.max_degree}, {"lookahead", o.lookahead}};
  r.body["algebra"] = o.alg.to_json();
  const auto pair = o.alg.pair();
  BarOracleReport bar;
  try {
    bar = hh_bar_oracle(pair, o.k, o.s, o.max_degree, caps, o.lookahead);
  } catch (const CapExceeded& e) {
    throw CellError("bar cell (k=" + std::to_string(o.k) + ", s=" + std::to_string(o.s) + ")", e);
  }
  const auto koszul = hh_cell(pair, o.k, o.s, caps);
  json rows = json::array();
  r.csv.push_back("d,cumulative,factor");
  for (std::size_t d = 0; d < bar.cumulative.size(); ++d) {
    rows.push_back({{"d", d}, {"cumulative", bar.cumulative[d]}, {"factor", bar.factors[d]}});
    r.csv.push_back(std::to_string(d) + "," + std::to_string(bar.cumulative[d]) + "," + std::to_string(bar.factors[d]));
  }
  r.body["results"] = std::move(rows);
  const bool agree = bar.total() == koszul.cohomology;
  r.summary = {{"bar", bar.total()}, {"koszul", koszul.cohomology}, {"agree", agree},
               {"weightBlocks", bar.weight_blocks}, {"barCochains", bar.cochains}};
  r.code = agree ? kOk : kCheckFailed;
  return r;
}

struct CochainOptions {
  std::string input;
  AlgebraOptions alg;
  int k = 0;
  int s = 0;
  std::vector<std::string> values;  // "x1,x2,x1=100"
  std::string x;                    // extend only
};

io::CochainInput load_cochain(const CochainOptions& o, const ResourceCaps& caps) {
  if (!o.input.empty()) return io::cochain_from_json(io::read_json_file(o.input), caps);
  json j = o.alg.to_json();
  j["k"] = o.k;
  j["s"] = o.s;
  json values = json::object();
  for (const auto& v : o.values) {
    const auto eq = v.find('=');
    if (eq == std::string::npos) throw io::ParseError("--value '" + v + "' is not of the form word=bits");
    values[v.substr(0, eq)] = v.substr(eq + 1);
  }
  j["values"] = std::move(values);
  return io::cochain_from_json(j, caps);
}

Report cmd_solve(const CochainOptions& o, const ResourceCaps& caps) {
  const auto in = load_cochain(o, caps);
  Report r;
  r.parameters = {{"input", o.input.empty() ? json("inline") : json(o.input)}};
  r.body["algebra"] = io::cochain_to_json(in.pair, in.cochain);
  r.body["algebra"].erase("values");
  const auto g = solve_coboundary(in.pair, in.cochain, caps);
  const auto dg = apply_differential(in.pair, g, caps);
  const bool ok = dg.coords == in.cochain.coords;
  r.body["input"] = io::cochain_to_json(in.pair, in.cochain);
  r.body["primitive"] = io::cochain_to_json(in.pair, g);
  std::size_t stable = 0, unstable = 0, fixed = 0;
  for (const auto& orbit : orbit_decomposition(in.pair.alphabet(), in.cochain.k, caps)) {
    (orbit.stable ? stable : unstable) += 1;
    fixed += orbit.fixed_unstable ? 1 : 0;
  }
  r.body["transcript"] = {{"inputIsCocycle", true},
                          {"wordsChecked", dg.word_count()},
                          {"dgEqualsF", ok},
                          {"stableOrbits", stable},
                          {"unstableOrbits", unstable},
                          {"fixedUnstableOrbits", fixed}};
  r.csv.push_back("word,value");
  const auto alphabet = in.pair.alphabet();
  for (std::size_t w = 0; w < g.word_count(); ++w) {
    if (g.value(w).any()) r.csv.push_back(csv_quote(alphabet.format(g.basis->word(w))) + "," + g.value(w).to_string());
  }
  r.summary = {{"dgEqualsF", ok}, {"support", r.csv.size() - 1}};
  r.code = ok ? kOk : kCheckFailed;
  return r;
}

Report cmd_extend(const CochainOptions& o, const ResourceCaps& caps) {
  const auto in = load_cochain(o, caps);
  BitVector x;
  try {
    x = BitVector::from_string(o.x);
  } catch (const std::exception&) {
    throw io::ParseError("--x '" + o.x + "' is not a 0/1 string");
  }
  if (x.size() != in.pair.module().atom_count()) throw io::ParseError("--x must have one bit per atom");
  Report r;
  r.parameters = {{"input", o.input.empty() ? json("inline") : json(o.input)}, {"x", o.x}};
  const auto ext = extend_cocycle_general(in.pair, x, in.cochain, caps);
  const bool cocycle = first_cocycle_violation(ext.pair, ext.cochain, caps) < 0;
  const bool restricts = restrict_cochain(ext.pair, in.pair, ext.cochain, caps).coords == in.cochain.coords;
  r.body["input"] = io::cochain_to_json(in.pair, in.cochain);
  r.body["extended"] = io::cochain_to_json(ext.pair, ext.cochain);
  r.body["checks"] = {{"cocycle", cocycle}, {"restrictsToInput", restricts}};
  r.csv.push_back("word,value");
  const auto alphabet = ext.pair.alphabet();
  for (std::size_t w = 0; w < ext.cochain.word_count(); ++w) {
    const auto v = ext.cochain.value(w);
    if (v.any()) r.csv.push_back(csv_quote(alphabet.format(ext.cochain.basis->word(w))) + "," + v.to_string());
  }
  r.summary = {{"cocycle", cocycle}, {"restrictsToInput", restricts}};
  r.code = cocycle && restricts ? kOk : kCheckFailed;
  return r;
}

struct MasseyOptions {
  std::string algebra;  // file; otherwise the connected sum below
  AlgebraOptions alg{2, 3, {}};
  int top = 8;
  std::size_t samples = 200;
  int max_n = 5;
  std::vector<int> class_degrees{1, 2};
  std::vector<std::string> classes;  // explicit tuple "degree:bits"
};

Report cmd_massey(const MasseyOptions& o, const Common& common) {
  Report r;
  std::shared_ptr<const DgAlgebra> h;
  if (!o.algebra.empty()) {
    h = std::make_shared<const DgAlgebra>(io::dg_algebra_from_json(io::read_json_file(o.algebra)));
    r.body["algebra"] = io::dg_algebra_to_json(*h);
  } else {
    if (!o.alg.subring.empty()) throw std::invalid_argument("massey: --subring does not apply");
    h = std::make_shared<const DgAlgebra>(
        dg_algebra_from_connected_sum(ConnectedSumAlgebra(o.alg.v_dim, o.alg.atoms), o.top));
    r.body["algebra"] = o.alg.to_json();
    r.body["algebra"]["top"] = o.top;
  }
  if (const auto problem = h->validate(); !problem.empty()) throw io::ParseError("dg-algebra: " + problem);

  if (!o.classes.empty()) {
    std::vector<GradedElement> tuple;
    for (const auto& c : o.classes) tuple.push_back(io::parse_element(*h, c));
    r.parameters = {{"classes", o.classes}};
    r.csv.push_back("classes,product,zero");
    json result;
    bool zero = false;
    if (h->has_trivial_differential()) {
      const auto cls = massey_product(*h, trivial_defining_system(*h, tuple));
      zero = is_zero_class(*h, cls.representative);
      result = {{"definingSystem", "trivial"}, {"product", io::format_element(cls.representative)}, {"zero", zero}};
      r.csv.push_back(csv_quote(join(o.classes, " ")) + "," + io::format_element(cls.representative) + "," +
                      (zero ? "1" : "0"));
    } else {
      const auto set = massey_product_set(*h, tuple);
      json reps = json::array();
      for (const auto& v : set) {
        reps.push_back(v.to_string());
        zero = zero || v.none();
      }
      result = {{"definingSystem", "all"}, {"productSet", reps}, {"containsZero", zero}};
      r.csv.push_back(csv_quote(join(o.classes, " ")) + "," + std::to_string(set.size()) + "," + (zero ? "1" : "0"));
    }
    r.body["results"] = json::array({result});
    r.summary = {{"zero", zero}};
    r.code = zero ? kOk : kCheckFailed;
    return r;
  }

  if (!h->has_trivial_differential()) throw std::invalid_argument("massey: sampling needs a trivial differential");
  MasseySampling sampling;
  sampling.samples = o.samples;
  sampling.max_n = o.max_n;
  sampling.class_degrees = o.class_degrees;
  sampling.seed = common.seed;
  r.parameters = {{"samples", o.samples}, {"maxN", o.max_n}, {"classDegrees", o.class_degrees}};
  const auto rep = strong_massey_check(*h, sampling);
  json counterexamples = json::array();
  for (const auto& tuple : rep.counterexamples) {
    json t = json::array();
    for (const auto& a : tuple) t.push_back(io::format_element(a));
    counterexamples.push_back(std::move(t));
  }
  r.csv.push_back("samples,zero_products,tuples_without_zero_entry,counterexamples");
  r.csv.push_back(std::to_string(rep.samples) + "," + std::to_string(rep.zero_products) + "," +
                  std::to_string(rep.tuples_without_zero_entry) + "," + std::to_string(rep.counterexamples.size()));
  r.body["results"] = {{"samples", rep.samples},
                       {"zeroProducts", rep.zero_products},
                       {"tuplesWithoutZeroEntry", rep.tuples_without_zero_entry},
                       {"counterexamples", counterexamples}};
  r.summary = {{"passed", rep.passed()}, {"samples", rep.samples}};
  r.code = rep.passed() ? kOk : kCheckFailed;
  return r;
}

// ---------------------------------------------------------------- driver

void add_algebra_flags(CLI::App* sub, AlgebraOptions& alg, bool subring) {
  sub->add_option("--v-dim", alg.v_dim, "dimension m of V")->capture_default_str();
  sub->add_option("--atoms", alg.atoms, "number n of atoms of B")->capture_default_str();
  if (subring) sub->add_option("--subring", alg.subring, "blocks of A as atom lists, e.g. 0,1|2 (default A = B)");
}

void add_cochain_flags(CLI::App* sub, CochainOptions& o) {
  sub->add_option("--input", o.input, "cochain JSON file");
  add_algebra_flags(sub, o.alg, true);
  sub->add_option("--k", o.k, "cochain length");
  sub->add_option("--s", o.s, "internal degree");
  sub->add_option("--value", o.values, "inline value word=bits, repeatable");
}

std::size_t default_cap() {
  const char* env = std::getenv("KOSZULHH_CAP");
  if (!env) return ResourceCaps{}.max_sequences;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw io::ParseError(std::string("KOSZULHH_CAP='") + env + "' is not a number");
  }
}

void write_report(const std::string& command, const Common& common, const Report& r, double seconds,
                  std::ostream& out) {
  std::string text;
  if (common.format == "csv") {
    text = join(r.csv, "\n") + "\n";
  } else {
    json manifest{{"command", command},
                  {"parameters", r.parameters},
                  {"seed", common.seed},
                  {"cap", common.cap},
                  {"version", KOSZULHH_VERSION},
                  {"summary", r.summary}};
    if (common.timing) manifest["wallTimeSeconds"] = seconds;
    json doc{{"manifest", manifest}};
    for (const auto& [key, value] : r.body.items()) doc[key] = value;
    text = doc.dump(2) + "\n";
  }
  if (common.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.out);
  if (!file) throw io::ParseError("cannot write " + common.out);
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact GF(2) computations for connected sums V ⊓ B: Koszul complexes, bigraded Hochschild cohomology, "
               "coboundaries, cocycle extension and Massey products."};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  try {
    common.cap = default_cap();
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", common.out, "write the report to this file instead of stdout");
  app.add_option("--cap", common.cap, "maximum number of enumerated sequences (env KOSZULHH_CAP)")->capture_default_str();
  app.add_option("--seed", common.seed, "random seed")->capture_default_str();
  app.add_flag("--timing", common.timing, "record wall time in the manifest");

  std::function<Report(const ResourceCaps&)> action;

  GridOptions grid;
  auto* hh = app.add_subcommand("hh-grid", "dimensions of HH^{k,s} over a grid");
  add_algebra_flags(hh, grid.alg, true);
  hh->add_option("--k-max", grid.k_max, "largest k (k starts at 0)")->capture_default_str();
  hh->add_option("--s-min", grid.s_min)->capture_default_str();
  hh->add_option("--s-max", grid.s_max)->capture_default_str();
  hh->callback([&] { action = [&](const ResourceCaps& c) { return cmd_hh_grid(grid, c); }; });

  KadeishviliOptions kad;
  auto* kd = app.add_subcommand("kadeishvili", "check HH^{k,2-k} = 0 for 3 <= k <= k-max");
  add_algebra_flags(kd, kad.alg, true);
  kd->add_option("--k-max", kad.k_max)->capture_default_str();
  kd->callback([&] { action = [&](const ResourceCaps& c) { return cmd_kadeishvili(kad, c); }; });

  KoszulOptions ksz;
  auto* kz = app.add_subcommand("koszul", "verify that the Koszul complex is a resolution");
  add_algebra_flags(kz, ksz.alg, false);
  kz->add_option("--max-internal-degree", ksz.max_degree)->capture_default_str();
  kz->callback([&] { action = [&](const ResourceCaps& c) { return cmd_koszul(ksz, c); }; });

  BottomOptions bot;
  auto* bt = app.add_subcommand("bottom", "dimension of cocycles of bidegree (k, -k)");
  add_algebra_flags(bt, bot.alg, false);
  bt->add_option("--k-max", bot.k_max)->capture_default_str();
  bt->callback([&] { action = [&](const ResourceCaps& c) { return cmd_bottom(bot, c); }; });

  BarOptions bar;
  auto* br = app.add_subcommand("bar", "bar complex cross-check of one bidegree, filtered by internal degree");
  add_algebra_flags(br, bar.alg, true);
  br->add_option("--k", bar.k)->capture_default_str();
  br->add_option("--s", bar.s)->capture_default_str();
  br->add_option("--max-internal-degree", bar.max_degree)->capture_default_str();
  br->add_option("--lookahead", bar.lookahead)->capture_default_str();
  br->callback([&] { action = [&](const ResourceCaps& c) { return cmd_bar(bar, c); }; });

  CochainOptions solve;
  auto* sv = app.add_subcommand("solve-coboundary", "explicit primitive g with dg = f");
  add_cochain_flags(sv, solve);
  sv->callback([&] { action = [&](const ResourceCaps& c) { return cmd_solve(solve, c); }; });

  CochainOptions extend;
  auto* ex = app.add_subcommand("extend", "lift a cocycle of bidegree (k, 1-k) from A to A<x>");
  add_cochain_flags(ex, extend);
  ex->add_option("--x", extend.x, "element of B as a 0/1 string")->required();
  ex->callback([&] { action = [&](const ResourceCaps& c) { return cmd_extend(extend, c); }; });

  MasseyOptions massey;
  auto* ms = app.add_subcommand("massey", "strong Massey vanishing by sampling, or one explicit tuple");
  ms->add_option("--algebra", massey.algebra, "dg-algebra JSON file (default: the connected sum)");
  add_algebra_flags(ms, massey.alg, false);
  ms->add_option("--top", massey.top, "truncation degree of the connected sum")->capture_default_str();
  ms->add_option("--samples", massey.samples)->capture_default_str();
  ms->add_option("--max-n", massey.max_n)->capture_default_str();
  ms->add_option("--class-degrees", massey.class_degrees)->delimiter(',')->capture_default_str();
  ms->add_option("--class", massey.classes, "explicit class degree:bits, repeatable");
  ms->callback([&] { action = [&](const ResourceCaps&) { return cmd_massey(massey, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const ResourceCaps caps{common.cap};
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto report = action(caps);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_report(command, common, report, seconds, out);
    return report.code;
  } catch (const CellError& e) {
    err << "error: cap exceeded in " << e.what() << "\n";
    return kCapExceeded;
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotACocycle& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace koszulhh::cli
