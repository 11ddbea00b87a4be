#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixsn/bounds.hpp"
#include "mixsn/count.hpp"
#include "mixsn/enumerate.hpp"
#include "mixsn/error.hpp"
#include "mixsn/harness.hpp"
#include "mixsn/problem.hpp"

namespace mixsn::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationFailed {};

struct Record {
  std::string command;
  Json params = Json::object();
  Json rows = Json::array();
  std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Parsing helpers

double parse_number(std::string_view token, std::string_view flag) {
  std::string t(token);
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  std::string lower = t;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity") return kInf;
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || t.empty())
    throw UsageError("invalid number '" + t + "' for " + std::string(flag));
  return v;
}

std::vector<double> parse_list(const std::string& text, std::string_view flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, flag));
  if (out.empty()) throw UsageError("empty list for " + std::string(flag));
  return out;
}

std::vector<double> broadcast(std::vector<double> v, std::size_t d, std::string_view flag) {
  if (v.size() == 1) return std::vector<double>(d, v[0]);
  if (v.size() != d)
    throw UsageError(std::string(flag) + " has " + std::to_string(v.size()) +
                     " entries, expected 1 or d = " + std::to_string(d));
  return v;
}

Json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json list_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number_or_inf(x));
  return a;
}

struct SpecArgs {
  int d = 0;
  std::string s;
  std::string q = "1";
  std::string target;
};

void add_spec_options(CLI::App* sub, SpecArgs& a) {
  sub->add_option("--d", a.d, "Dimension")->check(CLI::PositiveNumber);
  sub->add_option("--s", a.s, "Smoothness list (one value is broadcast)")->required();
  sub->add_option("--q", a.q, "Fine-index list, 'inf' allowed (default 1)");
  sub->add_option("--target", a.target, "Target space")->check(CLI::IsMember({"l2", "h1"}));
}

ProblemSpec build_spec(const SpecArgs& a, Json& params, Target default_target = Target::L2) {
  auto s = parse_list(a.s, "--s");
  auto q = parse_list(a.q, "--q");
  std::size_t d = a.d > 0 ? static_cast<std::size_t>(a.d) : std::max(s.size(), q.size());
  s = broadcast(std::move(s), d, "--s");
  q = broadcast(std::move(q), d, "--q");
  Target target = default_target;
  if (!a.target.empty()) target = a.target == "h1" ? Target::H1 : Target::L2;
  params["d"] = d;
  params["s"] = list_json(s);
  params["q"] = list_json(q);
  params["target"] = target == Target::H1 ? "h1" : "l2";
  return make_problem(d, s, q, target);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  std::string text;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!text.empty()) text += ' ';
      text += csv_cell(x);
    }
  } else if (v.is_string()) {
    text = v.get<std::string>();
  } else {
    text = v.dump();
  }
  if (text.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : text) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return text;
}

void write_csv(const Record& rec, std::ostream& os) {
  std::vector<std::string> keys;
  for (const auto& row : rec.rows)
    for (const auto& item : row.items())
      if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) keys.push_back(item.key());
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << '\n';
  for (const auto& row : rec.rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) os << ',';
      if (row.contains(keys[i])) os << csv_cell(row[keys[i]]);
    }
    os << '\n';
  }
}

void emit(const Record& rec, const std::string& format, const std::string& path, std::ostream& out,
          std::ostream& err) {
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw std::runtime_error("IOError: cannot open '" + path + "' for writing");
  }
  std::ostream& os = path.empty() ? out : file;
  if (format == "csv") {
    write_csv(rec, os);
    for (const auto& w : rec.warnings) err << "warning: " << w << '\n';
  } else {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = rec.command;
    j["params"] = rec.params;
    j["rows"] = rec.rows;
    j["warnings"] = rec.warnings;
    os << j.dump(2) << '\n';
  }
}

SequenceRule parse_rule(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "single") return SequenceRule::single();
  if (colon == std::string::npos) throw UsageError("sequence rule '" + text + "' needs a parameter");
  const double p = parse_number(text.substr(colon + 1), "sequence rule");
  if (kind == "power") return SequenceRule::power(p);
  if (kind == "geometric") return SequenceRule::geometric(p);
  throw UsageError("unknown sequence rule '" + kind + "' (power:p, geometric:x, single)");
}

std::vector<TheoremId> parse_theorems(const std::string& text) {
  if (text == "all") return upper_bound_theorems();
  std::vector<TheoremId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(theorem_from_string(item));
  return out;
}

bool is_energy(TheoremId id) {
  return id == TheoremId::ENERGY_MAIN0 || id == TheoremId::ENERGY_MAIN1 ||
         id == TheoremId::ENERGY_MAIN2;
}

ConstantMode parse_mode(const std::string& m) {
  return m == "safe" ? ConstantMode::DerivationSafe : ConstantMode::AsPrinted;
}

Json bound_row(const BoundResult& b, std::uint64_t n) {
  Json row;
  row["theorem"] = std::string(to_string(b.theorem_id));
  row["n"] = n;
  row["value"] = b.value;
  row["applicable"] = b.applicable;
  row["constant_mode"] = std::string(to_string(b.constant_mode));
  row["gamma"] = b.rate.gamma;
  row["constant"] = b.rate.constant;
  row["form"] = b.rate.form;
  row["validity_note"] = b.validity_note;
  return row;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact approximation numbers of mixed-smoothness embeddings and their bounds", "mixsn"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::string out_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write the record to this file");

  std::size_t node_cap = EnumerateOptions{}.node_cap;
  app.add_option("--node-cap", node_cap, "Frontier node budget");

  // an
  auto* an = app.add_subcommand("an", "Approximation numbers a_n");
  SpecArgs an_spec;
  std::uint64_t an_n = 0;
  bool an_all = false;
  bool an_index = false;
  add_spec_options(an, an_spec);
  an->add_option("--n", an_n, "Index n")->required()->check(CLI::PositiveNumber);
  an->add_flag("--all", an_all, "Emit a_1..a_n");
  an->add_flag("--index-set", an_index, "Emit an optimal index set of size n-1 instead");

  // count
  auto* count = app.add_subcommand("count", "Lattice count C(r)");
  SpecArgs count_spec;
  double count_r = 1.0;
  bool count_upper = false;
  std::optional<double> count_alpha;
  add_spec_options(count, count_spec);
  count->add_option("--r", count_r, "Radius r >= 1")->required();
  count->add_flag("--upper", count_upper, "Also evaluate the zeta-product upper bound");
  count->add_option("--alpha", count_alpha, "Exponent alpha > 1 for --upper");

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate upper/lower bounds");
  SpecArgs bound_spec;
  std::string bound_theorem;
  std::uint64_t bound_n = 0;
  std::string bound_mode = "printed";
  BoundParams bound_params;
  add_spec_options(bound, bound_spec);
  bound->add_option("--theorem", bound_theorem, "Theorem id, comma list, or 'all'")->required();
  bound->add_option("--n", bound_n, "Index n")->required()->check(CLI::PositiveNumber);
  bound->add_option("--mode", bound_mode, "Constant mode")->check(CLI::IsMember({"printed", "safe"}));
  bound->add_option("--beta", bound_params.beta, "beta parameter");
  bound->add_option("--alpha", bound_params.alpha, "alpha parameter");
  bound->add_option("--part", bound_params.part, "SMALLDD_Q part (1 or 2)");

  // asymptotic
  auto* asym = app.add_subcommand("asymptotic", "Limit constant of n^{s1} a_n / (ln n)^{(nu-1) s1}");
  SpecArgs asym_spec;
  bool asym_sobolev = false;
  add_spec_options(asym, asym_spec);
  asym->add_flag("--sobolev-integer", asym_sobolev, "Use the integer-order Sobolev norm");

  // table
  auto* table = app.add_subcommand("table", "Reproduce a reference table");
  std::string table_id;
  table->add_option("--id", table_id, "Table id")
      ->required()
      ->check(CLI::IsMember({"cd", "delta-d", "beta-kappa"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Verification harness");
  verify->require_subcommand(1);
  verify->fallthrough();

  auto* v_sand = verify->add_subcommand("sandwich", "Check lower <= a_n <= upper over an n range");
  SpecArgs sand_spec;
  std::uint64_t sand_lo = 2;
  std::uint64_t sand_hi = 100;
  std::string sand_theorems = "all";
  std::string sand_mode = "safe";
  double sand_scale = 1.0;
  BoundParams sand_params;
  add_spec_options(v_sand, sand_spec);
  v_sand->add_option("--n-min", sand_lo, "First n")->check(CLI::PositiveNumber);
  v_sand->add_option("--n-max", sand_hi, "Last n")->check(CLI::PositiveNumber);
  v_sand->add_option("--theorems", sand_theorems, "Theorem ids or 'all'");
  v_sand->add_option("--mode", sand_mode, "Constant mode")->check(CLI::IsMember({"printed", "safe"}));
  v_sand->add_option("--upper-scale", sand_scale, "Scale factor on upper bounds (negative control)");
  v_sand->add_option("--beta", sand_params.beta, "beta parameter");
  v_sand->add_option("--alpha", sand_params.alpha, "alpha parameter");
  v_sand->add_option("--part", sand_params.part, "SMALLDD_Q part");

  auto* v_oracle = verify->add_subcommand("oracle", "Compare enumeration with brute force (d <= 4)");
  SpecArgs oracle_spec;
  std::uint64_t oracle_n = 0;
  add_spec_options(v_oracle, oracle_spec);
  v_oracle->add_option("--n", oracle_n, "Number of values")->required()->check(CLI::PositiveNumber);

  auto* v_ratio = verify->add_subcommand("ratio", "Asymptotic ratio traces");
  SpecArgs ratio_spec;
  std::string ratio_checkpoints;
  std::string ratio_radii;
  add_spec_options(v_ratio, ratio_spec);
  v_ratio->add_option("--checkpoints", ratio_checkpoints, "Comma list of n (each >= 3)");
  v_ratio->add_option("--radii", ratio_radii, "Comma list of r for the counting form");

  auto* v_tensor = verify->add_subcommand("tensor", "Rearranged tensor product ratio trace");
  std::string tensor_a = "power:1";
  std::string tensor_b = "geometric:0.5";
  std::uint64_t tensor_n = 10000;
  double tensor_alpha = 0.0;
  double tensor_beta = 1.0;
  double tensor_lambda = 1.0;
  v_tensor->add_option("--a", tensor_a, "Rule for a: power:p, geometric:x, single");
  v_tensor->add_option("--b", tensor_b, "Rule for b");
  v_tensor->add_option("--n-max", tensor_n, "Largest n")->check(CLI::PositiveNumber);
  v_tensor->add_option("--alpha", tensor_alpha, "Log exponent alpha >= 0");
  v_tensor->add_option("--beta", tensor_beta, "Power exponent beta > 0");
  v_tensor->add_option("--lambda", tensor_lambda, "Limit of j^beta a_j / (log j)^alpha");

  // tract
  auto* tract = app.add_subcommand("tract", "Strong tractability check for s_j = s1 (1 + beta log2 j)");
  double tract_s1 = 1.0;
  double tract_beta = 0.0;
  double tract_tau = 1.0;
  std::size_t tract_dmax = 100;
  tract->add_option("--s1", tract_s1, "s_1")->required();
  tract->add_option("--beta", tract_beta, "Growth rate beta >= 0")->required();
  tract->add_option("--tau", tract_tau, "tau > 0")->required();
  tract->add_option("--dmax", tract_dmax, "Number of coordinates in the partial sums")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("mixsn");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  EnumerateOptions enum_opts;
  enum_opts.node_cap = node_cap;

  Record rec;
  bool failed_verification = false;
  try {
    if (an->parsed()) {
      rec.command = "an";
      const auto spec = build_spec(an_spec, rec.params);
      rec.params["n"] = an_n;
      if (an_index) {
        rec.params["index_set"] = true;
        const auto set = optimal_index_set(spec, an_n, enum_opts);
        for (std::size_t i = 0; i < set.size(); ++i) {
          Json row;
          row["index"] = i + 1;
          row["k"] = set[i];
          rec.rows.push_back(row);
        }
      } else {
        const auto weight = WeightFunction::for_problem(spec);
        EnumerateOptions opts = enum_opts;
        opts.complete_last_plateau = false;
        const auto seq = singular_values(weight, an_n, opts);
        if (seq.values.size() < an_n) throw Error(Errc::InvalidArgument, "sequence ended early");
        const std::uint64_t first = an_all ? 1 : an_n;
        for (std::uint64_t n = first; n <= an_n; ++n) {
          Json row;
          row["n"] = n;
          row["a_n"] = seq.values[n - 1];
          rec.rows.push_back(row);
        }
        if (seq.tie_sensitive)
          rec.warnings.push_back("tie-sensitive: some weights were grouped within the plateau tolerance");
      }
    } else if (count->parsed()) {
      rec.command = "count";
      const auto spec = build_spec(count_spec, rec.params);
      rec.params["r"] = count_r;
      const auto c = count_exact(spec, count_r);
      Json row;
      row["r"] = count_r;
      row["count"] = c.value;
      row["tie_sensitive"] = c.tie_sensitive;
      if (count_upper) {
        if (!count_alpha) throw UsageError("--upper needs --alpha");
        rec.params["alpha"] = *count_alpha;
        const auto in = normalize_for_clever(spec, count_r);
        row["upper"] = count_upper_clever(in.s, in.r, *count_alpha);
      }
      rec.rows.push_back(row);
      if (c.tie_sensitive) rec.warnings.push_back("tie-sensitive: r lies on a lattice boundary within 1e-12");
    } else if (bound->parsed()) {
      rec.command = "bound";
      const auto ids = parse_theorems(bound_theorem);
      const bool energy_only = std::all_of(ids.begin(), ids.end(), is_energy);
      const auto spec = build_spec(bound_spec, rec.params, energy_only ? Target::H1 : Target::L2);
      const auto mode = parse_mode(bound_mode);
      rec.params["n"] = bound_n;
      rec.params["mode"] = std::string(to_string(mode));
      if (bound_params.beta) rec.params["beta"] = *bound_params.beta;
      if (bound_params.alpha) rec.params["alpha"] = *bound_params.alpha;
      rec.params["part"] = bound_params.part;
      for (TheoremId id : ids) {
        const auto b = id == TheoremId::LOWER_KRIEG ? lower_bound_krieg(spec, bound_n)
                                                    : upper_bound(spec, bound_n, id, mode, bound_params);
        rec.rows.push_back(bound_row(b, bound_n));
        if (!b.applicable)
          rec.warnings.push_back(std::string(to_string(id)) + " not applicable at n = " +
                                 std::to_string(bound_n) + ": " + b.validity_note);
      }
    } else if (asym->parsed()) {
      rec.command = "asymptotic";
      const auto spec = build_spec(asym_spec, rec.params);
      rec.params["sobolev_integer"] = asym_sobolev;
      Json row;
      row["nu"] = spec.nu;
      row["s1"] = spec.s[0];
      row["constant"] = asymptotic_constant(spec, asym_sobolev);
      rec.rows.push_back(row);
    } else if (table->parsed()) {
      rec.command = "table";
      rec.params["id"] = table_id;
      const auto t = reproduce_table(table_from_string(table_id));
      const char* input_name = t.table_id == TableId::BETA_KAPPA_TABLE ? "kappa" : "d";
      for (const auto& r : t.rows) {
        Json row;
        if (t.table_id == TableId::BETA_KAPPA_TABLE)
          row[input_name] = r.input;
        else
          row[input_name] = static_cast<int>(r.input);
        row["computed"] = r.computed;
        row["reference_value"] = r.reference_value;
        row["abs_error"] = r.abs_error;
        if (r.alternative) row["stationarity_root"] = *r.alternative;
        rec.rows.push_back(row);
      }
    } else if (verify->parsed()) {
      if (v_sand->parsed()) {
        rec.command = "verify sandwich";
        const auto ids = parse_theorems(sand_theorems);
        const bool energy_only = std::all_of(ids.begin(), ids.end(), is_energy);
        const auto spec = build_spec(sand_spec, rec.params, energy_only ? Target::H1 : Target::L2);
        if (sand_lo > sand_hi) throw UsageError("--n-min exceeds --n-max");
        const auto mode = parse_mode(sand_mode);
        rec.params["n_min"] = sand_lo;
        rec.params["n_max"] = sand_hi;
        rec.params["mode"] = std::string(to_string(mode));
        rec.params["upper_scale"] = sand_scale;
        std::vector<std::uint64_t> grid;
        for (std::uint64_t n = sand_lo; n <= sand_hi; ++n) grid.push_back(n);
        SandwichOptions opts;
        opts.params = sand_params;
        opts.upper_scale = sand_scale;
        const auto rep = verify_sandwich(spec, grid, ids, mode, opts);
        for (const auto& r : rep.rows) {
          Json row;
          row["n"] = r.n;
          row["exact"] = r.exact;
          row["lower"] = r.lower ? Json(*r.lower) : Json(nullptr);
          for (const auto& u : r.uppers)
            row[std::string(to_string(u.theorem_id))] = u.applicable ? Json(u.value) : Json(nullptr);
          if (r.majorant) row["majorant"] = *r.majorant;
          rec.rows.push_back(row);
        }
        for (const auto& v : rep.violations) {
          std::ostringstream os;
          os.precision(17);
          os << "violation at n = " << v.n << ": " << v.kind << " bound " << v.bound << " vs exact "
             << v.exact;
          rec.warnings.push_back(os.str());
        }
        failed_verification = !rep.passed();
      } else if (v_oracle->parsed()) {
        rec.command = "verify oracle";
        const auto spec = build_spec(oracle_spec, rec.params);
        rec.params["n"] = oracle_n;
        const auto weight = WeightFunction::for_problem(spec);
        EnumerateOptions opts = enum_opts;
        opts.complete_last_plateau = false;
        const auto seq = singular_values(weight, oracle_n, opts);
        const auto bf = brute_force_an(spec, oracle_n);
        const bool exact = weight.exact();
        double max_rel = 0.0;
        std::uint64_t mismatches = 0;
        for (std::size_t i = 0; i < bf.size(); ++i) {
          const double rel = std::abs(seq.values[i] - bf[i]) / bf[i];
          max_rel = std::max(max_rel, rel);
          if (exact ? seq.values[i] != bf[i] : rel > 1e-12) ++mismatches;
        }
        Json row;
        row["n"] = oracle_n;
        row["exact_mode"] = exact;
        row["max_rel_error"] = max_rel;
        row["mismatches"] = mismatches;
        rec.rows.push_back(row);
        failed_verification = mismatches > 0;
        if (failed_verification)
          rec.warnings.push_back(std::to_string(mismatches) + " values differ from the brute-force oracle");
      } else if (v_ratio->parsed()) {
        rec.command = "verify ratio";
        const auto spec = build_spec(ratio_spec, rec.params);
        if (ratio_checkpoints.empty() == ratio_radii.empty())
          throw UsageError("give exactly one of --checkpoints and --radii");
        if (!ratio_checkpoints.empty()) {
          rec.params["target"] = asymptotic_constant(spec);
          std::vector<std::uint64_t> cps;
          for (double v : parse_list(ratio_checkpoints, "--checkpoints")) {
            if (!(v >= 1.0) || v != std::floor(v)) throw UsageError("--checkpoints must be integers");
            cps.push_back(static_cast<std::uint64_t>(v));
          }
          rec.params["checkpoints"] = cps;
          for (const auto& p : asymptotic_ratio_trace(spec, cps)) {
            Json row;
            row["n"] = p.n;
            row["a_n"] = p.a_n;
            row["ratio"] = p.ratio;
            rec.rows.push_back(row);
          }
        } else {
          const auto radii = parse_list(ratio_radii, "--radii");
          rec.params["radii"] = radii;
          for (const auto& p : counting_ratio_trace(spec, radii)) {
            Json row;
            row["r"] = p.r;
            row["count"] = p.count;
            row["ratio"] = p.ratio;
            row["target"] = p.target;
            row["abs_error"] = std::abs(p.ratio - p.target);
            rec.rows.push_back(row);
          }
        }
      } else if (v_tensor->parsed()) {
        rec.command = "verify tensor";
        const auto a = parse_rule(tensor_a);
        const auto b = parse_rule(tensor_b);
        rec.params["a"] = tensor_a;
        rec.params["b"] = tensor_b;
        rec.params["n_max"] = tensor_n;
        rec.params["alpha"] = tensor_alpha;
        rec.params["beta"] = tensor_beta;
        rec.params["lambda"] = tensor_lambda;
        const auto rep = tensor_merge_check(a, b, tensor_n, tensor_alpha, tensor_beta, tensor_lambda);
        rec.params["target"] = number_or_inf(rep.target);
        for (const auto& p : rep.trace) {
          Json row;
          row["n"] = p.n;
          row["c_n"] = p.c_n;
          row["a_n"] = p.a_n;
          row["ratio"] = p.ratio;
          rec.rows.push_back(row);
        }
      }
    } else if (tract->parsed()) {
      rec.command = "tract";
      rec.params["s1"] = tract_s1;
      rec.params["beta"] = tract_beta;
      rec.params["tau"] = tract_tau;
      rec.params["dmax"] = tract_dmax;
      const auto r = tractability_verdict({tract_s1, tract_beta}, tract_tau, tract_dmax);
      Json row;
      row["partial_product"] = number_or_inf(r.partial_product);
      row["product_defined"] = r.product_defined;
      row["partial_sum"] = r.partial_sum;
      row["sum_converges"] = r.sum_converges;
      row["limsup"] = number_or_inf(r.limsup);
      row["limsup_finite"] = r.limsup_finite;
      row["tau_threshold"] = number_or_inf(r.tau_threshold);
      row["strongly_tractable"] = r.strongly_tractable;
      rec.rows.push_back(row);
      if (!r.product_defined)
        rec.warnings.push_back("2 tau s1 <= 1: the zeta product diverges");
    }
    emit(rec, format, out_path, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitComputation;
  }
  return failed_verification ? kExitVerification : kExitOk;
}

}  // namespace mixsn::cli
