#include "cli.hpp"

#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hsets/error.hpp"
#include "hsets/hset.hpp"
#include "hsets/json_io.hpp"
#include "hsets/sumset.hpp"
#include "hsets/verify.hpp"

namespace hsets::cli {

namespace {

struct Flags {
  int h_max = 5;
  std::string Q;
  std::string window;
  std::string gen_radius;
  std::string format = "tsv";
  std::uint64_t seed = 1;
  std::string out_file;
  std::size_t samples = 0;
  int h = 0;
  std::string max_window;
};

Window parse_window(const std::string& text) {
  const auto colon = text.find(':', text.empty() ? 0 : 1);
  if (colon == std::string::npos) throw InputError("window must be LO:HI, got '" + text + "'");
  try {
    return Window(parse_int(text.substr(0, colon)), parse_int(text.substr(colon + 1)));
  } catch (const DomainError& e) {
    throw InputError(std::string("window: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Limits limits_from(const Flags& f) {
  Limits limits;
  if (!f.max_window.empty()) {
    limits.max_window = parse_int(f.max_window);
    if (limits.max_window < 1) throw InputError("--max-window must be positive");
  }
  return limits;
}

void emit(const std::string& text, const Flags& f, std::ostream& out) {
  if (f.out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out_file, std::ios::binary);
  if (!file) throw InputError("cannot write '" + f.out_file + "'");
  file << text;
}

void check_format(const Flags& f) {
  if (f.format != "tsv" && f.format != "json") throw InputError("--format must be tsv or json");
}

int cmd_hset(const std::string& spec_path, const Flags& f, std::ostream& out) {
  check_format(f);
  const Json spec = parse_json_text(read_file(spec_path), spec_path);
  const Family family = family_from_json(spec);
  HConfig config;
  config.limits = limits_from(f);
  if (!f.Q.empty()) config.Q = parse_int(f.Q);
  if (config.Q < 1) throw InputError("--Q must be >= 1");
  if (!f.window.empty()) config.window = parse_window(f.window);
  if (!f.gen_radius.empty()) {
    config.gen_radius = parse_int(f.gen_radius);
    if (*config.gen_radius < config.window.radius()) throw InputError("--gen-radius must be >= the window radius");
  }
  if (f.h_max < 1) throw InputError("--hmax must be >= 1");
  const HReport report = compute_H(family, f.h_max, config);
  emit(f.format == "json" ? to_json(report).dump(2) + "\n" : to_tsv(report), f, out);
  return kSuccess;
}

Json suite_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"id", r.id}, {"passed", r.passed()}, {"seconds", r.seconds}, {"checks", checks}};
}

int cmd_verify(const std::string& id, const Flags& f, const CLI::App& sub, std::ostream& out) {
  check_format(f);
  if (id != "all" && !is_suite_id(id)) throw InputError("unknown theorem id '" + id + "'");
  VerifyConfig config;
  config.limits = limits_from(f);
  config.seed = f.seed;
  if (sub.count("--hmax")) config.h_max = f.h_max;
  if (!f.Q.empty()) config.Q = parse_int(f.Q);
  if (!f.window.empty()) config.window = parse_window(f.window);
  if (!f.gen_radius.empty()) config.gen_radius = parse_int(f.gen_radius);
  if (sub.count("--samples")) config.samples = f.samples;
  if (sub.count("--h")) config.h = f.h;
  if (config.h && *config.h < 1) throw InputError("--h must be >= 1");
  if (config.h_max && *config.h_max < 1) throw InputError("--hmax must be >= 1");

  const std::vector<std::string> ids = id == "all" ? suite_ids() : std::vector<std::string>{id};
  bool all_passed = true;
  std::ostringstream text;
  Json reports = Json::array();
  for (const auto& sid : ids) {
    const SuiteReport r = run_suite(sid, config);
    all_passed = all_passed && r.passed();
    if (f.format == "json") {
      reports.push_back(suite_json(r));
    } else {
      text << "# " << sid << ": " << (r.passed() ? "pass" : "FAIL") << '\n' << format_report(r);
    }
  }
  if (f.format == "json") text << (ids.size() == 1 ? reports.front() : reports).dump(2) << '\n';
  emit(text.str(), f, out);
  return all_passed ? kSuccess : kVerificationFailure;
}

int cmd_sumset(const std::string& expr, int h, const std::string& mode, const Flags& f, std::ostream& out) {
  check_format(f);
  if (h < 1) throw InputError("--h must be >= 1");
  const IntSet set = parse_set_expression(expr);
  const Limits limits = limits_from(f);
  const Window w = f.window.empty() ? Window(-50, 50) : parse_window(f.window);
  std::vector<Int> members;
  bool complete = false;
  std::optional<IntSet> closed;
  Int radius = w.radius();
  if (mode == "mult") {
    const auto r = hfold_product(set, h, w, limits);
    members = r.members_in(w, limits);
    complete = true;
  } else if (mode == "add") {
    closed = closed_hfold_sum(set, h, limits);
    if (closed) {
      members = materialize(*closed, w, limits);
      complete = true;
    } else {
      if (!f.gen_radius.empty()) radius = parse_int(f.gen_radius);
      SumsetOptions options;
      options.limits = limits;
      const auto r = windowed_hfold_sum(set, h, w, radius, options);
      members = r.windowed().members;
      complete = r.windowed().complete;
    }
  } else {
    throw InputError("--mode must be add or mult");
  }
  std::ostringstream text;
  if (f.format == "json") {
    Json m = Json::array();
    for (const auto& x : members) m.push_back(x.str());
    Json j = {{"set", to_json(set)},  {"h", h},        {"mode", mode}, {"window", {w.lo.str(), w.hi.str()}},
              {"members", m},         {"complete", complete}};
    if (closed) j["closed_form"] = to_json(*closed);
    if (!complete) j["generation_radius"] = radius.str();
    text << j.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < members.size(); ++i) text << (i ? " " : "") << members[i];
    text << (members.empty() ? "" : ", ") << (complete ? "complete" : "incomplete (generation radius " + radius.str() + ")")
         << '\n';
    if (closed) text << "closed form: " << to_string(*closed) << '\n';
  }
  emit(text.str(), f, out);
  return kSuccess;
}

int cmd_repfn(const std::string& expr, int h, const std::string& x_text, const std::string& mode, const Flags& f,
              std::ostream& out) {
  check_format(f);
  if (h < 1) throw InputError("--h must be >= 1");
  const IntSet set = parse_set_expression(expr);
  const Int x = parse_int(x_text);
  RepMode m;
  if (mode == "add") {
    m = RepMode::Additive;
  } else if (mode == "mult") {
    m = RepMode::Multiplicative;
  } else {
    throw InputError("--mode must be add or mult");
  }
  const Int radius = f.gen_radius.empty() ? Int(1000) : parse_int(f.gen_radius);
  RepCount count;
  try {
    count = representation_count(set, h, x, m, radius, limits_from(f));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  std::ostringstream text;
  if (f.format == "json") {
    text << Json{{"set", to_json(set)},        {"h", h},
                 {"x", x.str()},               {"mode", mode},
                 {"value", count.infinite ? Json(nullptr) : Json(count.value.str())},
                 {"infinite", count.infinite}, {"lower_bound", count.lower_bound}}
                .dump(2)
         << '\n';
  } else {
    text << count.to_string() << '\n';
  }
  emit(text.str(), f, out);
  return kSuccess;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--format", f.format, "Output format: tsv or json")->capture_default_str();
  sub->add_option("--out", f.out_file, "Write output to FILE instead of stdout");
  sub->add_option("--max-window", f.max_window, "Cap on the number of integers in one window");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sumsets, representation functions and intersection sets H(A_q) of set families"};
  app.name("hsets");
  app.require_subcommand(1);
  // "--h" is the summand count, so help keeps only its long form.
  app.set_help_flag("--help", "Print this help message and exit");
  Flags f;

  std::string spec_path;
  auto* hset = app.add_subcommand("hset", "Compute the H report of a family given as a JSON spec file");
  hset->add_option("spec", spec_path, "Family spec (JSON with a top-level 'family' tag)")->required();
  hset->add_option("--hmax", f.h_max, "Largest h to analyse")->capture_default_str();
  hset->add_option("--Q", f.Q, "Truncation depth (default 10)");
  hset->add_option("--window", f.window, "Comparison window LO:HI (default -50:50)");
  hset->add_option("--gen-radius", f.gen_radius, "Summand radius for windowed sums");
  add_common(hset, f);

  std::string theorem_id;
  auto* verify = app.add_subcommand("verify", "Run a verification suite (or 'all')");
  verify->add_option("id", theorem_id, "Suite id")->required();
  verify->add_option("--hmax", f.h_max, "Largest h");
  verify->add_option("--Q", f.Q, "Truncation depth");
  verify->add_option("--window", f.window, "Window LO:HI");
  verify->add_option("--gen-radius", f.gen_radius, "Summand radius for windowed sums");
  verify->add_option("--seed", f.seed, "Seed for randomized suites")->capture_default_str();
  verify->add_option("--samples", f.samples, "Number of random samples");
  verify->add_option("--h", f.h, "Single h for suites that take one");
  add_common(verify, f);

  std::string set_expr, mode = "add", x_text;
  int h = 2;
  auto* sumset = app.add_subcommand("sumset", "Materialize an h-fold sumset (or product set) of a set expression");
  sumset->add_option("--set", set_expr, "Set expression, e.g. 'finite:0,1,3' or 'congruence:4:0|finite:1'")->required();
  sumset->add_option("--h", h, "Number of summands")->capture_default_str();
  sumset->add_option("--mode", mode, "add or mult")->capture_default_str();
  sumset->add_option("--window", f.window, "Output window LO:HI (default -50:50)");
  sumset->add_option("--gen-radius", f.gen_radius, "Summand radius when no closed form exists");
  add_common(sumset, f);

  auto* repfn = app.add_subcommand("repfn", "Count ordered representations of x as an h-fold sum or product");
  repfn->add_option("--set", set_expr, "Set expression")->required();
  repfn->add_option("--h", h, "Number of summands")->capture_default_str();
  repfn->add_option("--x", x_text, "Target integer")->required();
  repfn->add_option("--mode", mode, "add or mult")->capture_default_str();
  repfn->add_option("--gen-radius", f.gen_radius, "Summand radius for sets without structural bounds");
  add_common(repfn, f);

  // CLI11 parses in reverse order from a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*hset) return cmd_hset(spec_path, f, out);
    if (*verify) return cmd_verify(theorem_id, f, *verify, out);
    if (*sumset) return cmd_sumset(set_expr, h, mode, f, out);
    if (*repfn) return cmd_repfn(set_expr, h, x_text, mode, f, out);
  } catch (const SizeCapError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kResourceCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace hsets::cli
