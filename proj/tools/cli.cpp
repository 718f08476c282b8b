#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "treesearch/bounded_dp.hpp"
#include "treesearch/diameter.hpp"
#include "treesearch/errors.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/fptas.hpp"
#include "treesearch/generate.hpp"
#include "treesearch/greedy.hpp"
#include "treesearch/reduction.hpp"

namespace treesearch::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// `solve --alg auto` and `bench` only run the DP up to this height; beyond it
// the running time climbs into seconds per instance.
constexpr int kAutoDpHeight = 16;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Writes `text` to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

struct Solved {
  std::string alg;
  Weight cost;
  DecisionTree tree;
  std::vector<std::string> notes;
};

Solved solve_with(const InputTree& tree, const std::string& alg, const Rational& eps,
                  const BoundedOptions& dp_opts) {
  Solved s;
  s.alg = alg;
  if (alg == "greedy") {
    s.tree = greedy(tree);
    s.cost = cost(s.tree, tree);
  } else if (alg == "exact") {
    try {
      auto r = opt_cost(tree);
      s.cost = r.cost;
      s.tree = std::move(r.tree);
    } catch (const ResourceError& e) {
      throw ResourceError(std::string(e.what()) + "; try --alg dp or --alg greedy");
    }
  } else if (alg == "dp") {
    try {
      auto r = optimal_bounded(tree, dp_opts);
      s.cost = r.cost;
      s.tree = std::move(r.tree);
      s.notes.push_back("dp_height: " + std::to_string(r.height));
    } catch (const ResourceError& e) {
      throw ResourceError(std::string(e.what()) + "; try --alg fptas with a smaller --height, or --alg greedy");
    }
  } else if (alg == "fptas") {
    try {
      auto r = fptas(tree, eps, dp_opts);
      s.cost = r.cost;
      s.tree = std::move(r.tree);
      s.notes.push_back("eps: " + eps.str());
      s.notes.push_back("scaled_cost: " + to_string(r.scaled_cost));
      s.notes.push_back("dp_height: " + std::to_string(r.height));
    } catch (const ResourceError& e) {
      throw ResourceError(std::string(e.what()) + "; try --alg greedy");
    }
  } else if (alg == "auto") {
    const int diam = tree.diameter();
    if (diam <= 2) {
      auto r = solve_star(tree);
      s = {"star", r.cost, std::move(r.tree), {}};
    } else if (diam == 3) {
      auto r = solve_diam3(tree);
      s = {"diam3", r.cost, std::move(r.tree), {}};
    } else if (dp_height(tree) <= std::min(kAutoDpHeight, dp_opts.cap)) {
      s = solve_with(tree, "dp", eps, dp_opts);
    } else {
      s = solve_with(tree, "greedy", eps, dp_opts);
    }
    s.notes.insert(s.notes.begin(), "dispatch: " + s.alg);
    s.alg = "auto";
  } else {
    throw ValidationError("unknown algorithm '" + alg + "'");
  }
  return s;
}

int cmd_solve(const std::string& input, const std::string& alg, const std::string& eps_text,
              std::optional<int> height, int cap, const std::string& out_path, std::ostream& out) {
  const InputTree tree = read_instance_file(input);
  const Rational eps = parse_rational(eps_text);
  const auto start = Clock::now();
  Solved s = solve_with(tree, alg, eps, BoundedOptions{height, cap});
  const double elapsed = ms_since(start);
  out << "alg: " << s.alg << '\n';
  for (const auto& note : s.notes) out << note << '\n';
  out << "cost: " << to_string(s.cost) << '\n';
  out << "height: " << s.tree.height() << '\n';
  out << "nodes: " << s.tree.node_count() << '\n';
  out << "time_ms: " << std::fixed << std::setprecision(3) << elapsed << '\n';
  if (out_path.empty())
    out << "tree: " << format_tree(s.tree) << '\n';
  else
    emit(out_path, format_tree(s.tree) + "\n", out);
  return kOk;
}

int cmd_eval(const std::string& input, const std::string& tree_path, std::ostream& out) {
  const InputTree tree = read_instance_file(input);
  const DecisionTree d = read_tree_file(tree_path);
  const Diagnostics diag = validate(d, tree);
  if (!diag.ok()) {
    out << "invalid\n";
    for (const auto& v : diag.violations) out << "  " << v << '\n';
    return kInvalid;
  }
  out << "valid\ncost: " << to_string(cost(d, tree)) << "\nheight: " << d.height() << '\n';
  return kOk;
}

int cmd_gen(const std::string& kind, int n, std::uint64_t seed, const std::string& weights, int arity,
            const std::string& out_path, std::ostream& out) {
  const InputTree tree = generate(parse_shape(kind), n, seed, parse_weight_range(weights), arity);
  emit(out_path, format_instance(tree), out);
  return kOk;
}

Variant parse_variant(const std::string& v) {
  if (v == "diam4") return Variant::Diameter4;
  if (v == "deg16") return Variant::Degree16;
  throw ValidationError("unknown variant '" + v + "' (expected diam4 or deg16)");
}

int cmd_reduce(const std::string& variant, const std::string& x3c, const std::string& out_path,
               std::ostream& out) {
  const X3CInstance x = read_x3c_file(x3c);
  const ReductionOutput r = build_reduction(x, parse_variant(variant));
  const std::string pi = r.pi.str();
  if (out_path.empty() || out_path == "-") {
    out << "# pi: " << pi << '\n' << format_instance(r.tree);
    return kOk;
  }
  emit(out_path, "# pi: " + pi + "\n" + format_instance(r.tree), out);
  out << "pi: " << pi << '\n';
  out << "nodes: " << r.tree.size() << '\n';
  out << "diameter: " << r.tree.diameter() << '\n';
  out << "max_degree: " << r.tree.max_degree() << '\n';
  return kOk;
}

std::string family_str(const ReductionOutput& r, const RealizationSpec& y) {
  std::string s;
  for (int i = 0; i < r.m(); ++i)
    if (y[i]) s += (s.empty() ? "X" : " X") + std::to_string(i + 1);
  return s.empty() ? "{}" : "{" + s + "}";
}

int cmd_verify(const std::string& variant, const std::string& x3c, std::ostream& out) {
  const X3CInstance x = read_x3c_file(x3c);
  const ReductionOutput r = build_reduction(x, parse_variant(variant));
  const bool brute = x3c_brute(x);
  const CoverDecision d = decide_cover(r);
  out << "pi: " << r.pi.str() << '\n';
  out << "x3c_brute: " << (brute ? "cover" : "no cover") << '\n';
  out << "decide_cover: " << (d.cover ? "cover" : "no cover") << '\n';
  out << "cost_DA: " << to_string(d.base_cost) << '\n';
  out << "best_cost: " << to_string(d.best_cost) << '\n';
  out << "threshold: " << to_string(d.base_cost - r.cover_gap()) << '\n';
  out << "best_Y: " << family_str(r, d.best) << '\n';
  bool ok = brute == d.cover;
  if (d.oracle_checked) {
    const bool same = d.oracle_cost == d.best_cost;
    out << "oracle: " << to_string(d.oracle_cost) << (same ? " (matches)" : " (differs)") << '\n';
    ok = ok && same;
  } else {
    out << "oracle: skipped\n";
  }
  out << "agree: " << (ok ? "yes" : "no") << '\n';
  return ok ? kOk : kCheckFailed;
}

// ---- bench ----

struct BenchRow {
  std::string name;
  int n = 0;
  std::string status = "ok";
  std::optional<Weight> opt, greedy, dp, fptas;
  double ms_greedy = 0, ms_exact = 0, ms_dp = 0, ms_fptas = 0;
  bool error = false;
};

std::vector<fs::path> suite_files(const std::string& suite) {
  std::vector<fs::path> files;
  const fs::path p(suite);
  if (fs::is_directory(p)) {
    for (const auto& e : fs::directory_iterator(p))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open suite '" + suite + "'");
    std::string line;
    while (std::getline(in, line)) {
      line.erase(0, line.find_first_not_of(" \t"));
      line.erase(line.find_last_not_of(" \t\r") + 1);
      if (line.empty() || line[0] == '#') continue;
      fs::path f(line);
      files.push_back(f.is_absolute() ? f : p.parent_path() / f);
    }
  }
  if (files.empty()) throw ValidationError("empty suite '" + suite + "'");
  return files;
}

BenchRow bench_one(const fs::path& file, const Rational& eps, int exact_limit) {
  BenchRow row;
  row.name = file.filename().string();
  try {
    const InputTree tree = read_instance_file(file.string());
    row.n = tree.size();
    auto t = Clock::now();
    row.greedy = cost(greedy(tree), tree);
    row.ms_greedy = ms_since(t);
    if (tree.size() > exact_limit) {
      row.status = "skipped (n > " + std::to_string(exact_limit) + ")";
      return row;
    }
    t = Clock::now();
    row.opt = opt_cost(tree, exact_limit).cost;
    row.ms_exact = ms_since(t);
    if (dp_height(tree) <= kAutoDpHeight) {
      t = Clock::now();
      row.dp = optimal_bounded(tree).cost;
      row.ms_dp = ms_since(t);
      t = Clock::now();
      row.fptas = fptas(tree, eps).cost;
      row.ms_fptas = ms_since(t);
    }
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
    row.error = true;
  }
  return row;
}

std::string ratio_str(const std::optional<Weight>& num, const std::optional<Weight>& den) {
  if (!num || !den) return "-";
  if (*den == 0) return *num == 0 ? "1.0000" : "inf";
  const Rational q(*num, *den);
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << q.convert_to<double>();
  return s.str();
}

int cmd_bench(const std::string& suite, const std::string& report, const std::string& eps_text, int jobs,
              int exact_limit, std::ostream& out) {
  const Rational eps = parse_rational(eps_text);
  if (eps <= 0) throw ValidationError("epsilon must be positive");
  const auto files = suite_files(suite);
  std::vector<BenchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) rows[i] = bench_one(files[i], eps, exact_limit);
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < std::max(1, jobs); ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  bool any_error = false, violated = false;
  nlohmann::json j = nlohmann::json::array();
  out << std::left << std::setw(28) << "instance" << std::setw(5) << "n" << std::setw(14) << "opt"
      << std::setw(14) << "greedy" << std::setw(9) << "g/opt" << std::setw(14) << "fptas" << std::setw(9)
      << "f/opt" << "status\n";
  for (const auto& r : rows) {
    const bool two_approx = !r.opt || !r.greedy || *r.greedy <= 2 * *r.opt;
    const bool eps_ok = !r.opt || !r.fptas || Rational(*r.fptas) <= (1 + eps) * Rational(*r.opt);
    const bool dp_ok = !r.opt || !r.dp || *r.dp == *r.opt;
    any_error = any_error || r.error;
    violated = violated || !two_approx || !eps_ok || !dp_ok;
    auto w = [](const std::optional<Weight>& x) { return x ? to_string(*x) : std::string("-"); };
    out << std::setw(28) << r.name << std::setw(5) << r.n << std::setw(14) << w(r.opt) << std::setw(14)
        << w(r.greedy) << std::setw(9) << ratio_str(r.greedy, r.opt) << std::setw(14) << w(r.fptas)
        << std::setw(9) << ratio_str(r.fptas, r.opt) << r.status << '\n';
    nlohmann::json row = {{"instance", r.name},
                          {"n", r.n},
                          {"status", r.status},
                          {"opt", w(r.opt)},
                          {"greedy", w(r.greedy)},
                          {"dp", w(r.dp)},
                          {"fptas", w(r.fptas)},
                          {"greedy_ratio", ratio_str(r.greedy, r.opt)},
                          {"fptas_ratio", ratio_str(r.fptas, r.opt)},
                          {"within_2", two_approx},
                          {"within_1_plus_eps", eps_ok},
                          {"dp_exact", dp_ok},
                          {"ms", {{"greedy", r.ms_greedy}, {"exact", r.ms_exact}, {"dp", r.ms_dp}, {"fptas", r.ms_fptas}}}};
    j.push_back(std::move(row));
  }
  if (!report.empty()) {
    nlohmann::json doc = {{"eps", eps.str()}, {"rows", j}};
    emit(report, doc.dump(2) + "\n", out);
  }
  if (any_error) return kInvalid;
  return violated ? kCheckFailed : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Search strategies for node-weighted trees with edge queries", "treesearch"};
  app.require_subcommand(1);

  std::string input, alg = "auto", eps = "1/2", out_path, tree_path, kind, weights = "1..10", variant = "diam4",
                     x3c, report;
  std::optional<int> height;
  int cap = kDefaultDpCap, n = 0, arity = 2, jobs = 1, exact_limit = kDefaultExactLimit;
  std::uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve", "Build a search tree for an instance");
  solve->add_option("instance", input, "Instance file")->required();
  solve->add_option("--alg", alg, "greedy|exact|dp|fptas|auto")
      ->check(CLI::IsMember({"greedy", "exact", "dp", "fptas", "auto"}));
  solve->add_option("--eps", eps, "Accuracy for fptas, as p/q or a decimal");
  solve->add_option("--height", height, "Height bound for dp/fptas");
  solve->add_option("--cap", cap, "Largest height the DP accepts");
  solve->add_option("--out", out_path, "Write the tree here instead of stdout");

  auto* eval = app.add_subcommand("eval", "Validate and cost a decision tree");
  eval->add_option("instance", input, "Instance file")->required();
  eval->add_option("tree", tree_path, "Decision tree (JSON)")->required();

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("kind", kind, "random|path|star|complete-d-ary")->required();
  gen->add_option("n", n, "Number of nodes")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--weights", weights, "Weight range lo..hi");
  gen->add_option("--arity", arity, "Children per node for complete-d-ary");
  gen->add_option("--out", out_path, "Output file");

  auto* reduce = app.add_subcommand("reduce", "Build the tree instance for an X3C instance");
  reduce->add_option("--variant", variant, "diam4|deg16");
  reduce->add_option("--x3c", x3c, "X3C file")->required();
  reduce->add_option("--out", out_path, "Output instance file");

  auto* verify = app.add_subcommand("verify-lemma2", "Compare the realization test with brute-force X3C");
  verify->add_option("--variant", variant, "diam4|deg16");
  verify->add_option("--x3c", x3c, "X3C file")->required();

  auto* bench = app.add_subcommand("bench", "Run all algorithms over a suite");
  bench->add_option("suite", input, "Directory of instances or a file listing them")->required();
  bench->add_option("--report", report, "Write a JSON report here");
  bench->add_option("--eps", eps, "Accuracy for fptas");
  bench->add_option("--jobs", jobs, "Worker threads");
  bench->add_option("--exact-limit", exact_limit, "Largest n handed to the exact solver");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(input, alg, eps, height, cap, out_path, out);
    if (*eval) return cmd_eval(input, tree_path, out);
    if (*gen) return cmd_gen(kind, n, seed, weights, arity, out_path, out);
    if (*reduce) return cmd_reduce(variant, x3c, out_path, out);
    if (*verify) return cmd_verify(variant, x3c, out);
    if (*bench) return cmd_bench(input, report, eps, jobs, exact_limit, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}

}  // namespace treesearch::cli
