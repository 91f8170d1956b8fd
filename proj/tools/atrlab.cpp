#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "atrlab/coding.hpp"
#include "atrlab/config.hpp"
#include "atrlab/errors.hpp"
#include "atrlab/hierarchy.hpp"
#include "atrlab/koenig.hpp"
#include "atrlab/problems.hpp"
#include "atrlab/textio.hpp"

namespace fs = std::filesystem;
using namespace atrlab;
using json = nlohmann::json;

namespace {

struct Settings {
  std::string config_path;
  Budgets budgets;

  // Trees coming out of the coding are far past the default vertex bound.
  EnumerationLimits tree_limits() const { return {64, budgets.enumeration_cap}; }
  EnumerationLimits graph_limits() const { return {16, budgets.enumeration_cap}; }
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

bool starts_with_word(const std::string& line, const std::string& word) {
  auto p = line.find_first_not_of(" \t");
  return p != std::string::npos && line.compare(p, word.size(), word) == 0 &&
         (line.size() == p + word.size() || std::isspace(static_cast<unsigned char>(line[p + word.size()])));
}

std::string after_word(const std::string& line, const std::string& word) {
  return line.substr(line.find(word) + word.size());
}

// An order file with extra "start SET" and "jump KIND:ARGS" lines. A synthetic
// table path is read relative to the instance file.
AtrInstance load_atr(const fs::path& path) {
  std::string order_text, start, jump = "bounded:4,10";
  for (const auto& line : split_lines(read_file(path.string()))) {
    if (starts_with_word(line, "start"))
      start = after_word(line, "start");
    else if (starts_with_word(line, "jump"))
      jump = after_word(line, "jump");
    else
      order_text += line + "\n";
  }
  jump.erase(0, jump.find_first_not_of(" \t"));
  if (jump.rfind("synthetic:", 0) == 0) {
    fs::path table = jump.substr(10);
    if (table.is_relative()) jump = "synthetic:" + (path.parent_path() / table).string();
  }
  return AtrInstance{parse_labeled_order(order_text), parse_set(start), parse_jump(jump)};
}

// Two order blocks, each starting with an "order" line.
std::pair<FiniteOrder, FiniteOrder> load_order_pair(const fs::path& path) {
  std::vector<std::string> blocks;
  for (const auto& line : split_lines(read_file(path.string()))) {
    if (starts_with_word(line, "order")) blocks.emplace_back();
    if (blocks.empty()) {
      if (line.find_first_not_of(" \t") == std::string::npos || starts_with_word(line, "#")) continue;
      throw ParseError("order pair: text before the first order block");
    }
    blocks.back() += line + "\n";
  }
  if (blocks.size() != 2) throw ParseError("order pair: expected 2 order blocks, got " + std::to_string(blocks.size()));
  return {parse_order(blocks[0]), parse_order(blocks[1])};
}

std::vector<fs::path> instance_files(const std::string& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() != ".table") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw std::runtime_error("no instance files in " + dir);
  return out;
}

KoenigCover solve_graph(const BipartiteGraph& G, const std::string& solver, const EnumerationLimits& limits) {
  if (solver == "simpson") return simpson_cover(G);
  if (solver == "enumerate") {
    auto all = enumerate_koenig_covers(G, limits);
    if (all.empty()) throw std::runtime_error("graph has no covers");
    return all.front();
  }
  return koenig_cover(G);
}

std::string format_embedding(const std::map<Nat, Nat>& f) {
  std::string out;
  for (const auto& [a, b] : f) out += (out.empty() ? "" : " ") + std::to_string(a) + "->" + std::to_string(b);
  return out;
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

VerifyMode parse_mode(const std::string& mode) { return mode == "oracle" ? VerifyMode::Oracle : VerifyMode::AllSolutions; }

// ---------------------------------------------------------------------------

int run_solve(const Settings& s, const std::string& problem, const std::string& in, const std::string& solver) {
  if (problem == "atr") {
    AtrInstance x = load_atr(in);
    std::cout << format_columns(build_hierarchy(x.order, x.start, x.jump).columns, x.order.order);
  } else if (problem == "atr2") {
    AtrInstance x = load_atr(in);
    auto F = build_forest(x.order, x.start, x.jump, s.budgets.tree_node_cap);
    ForestCovers covers;
    for (const auto& [b, n] : F.tree_ids()) covers[{b, n}] = solve_graph(tree_graph(F.tree(b, n)), solver, s.tree_limits());
    Atr2Solution sol = atr2_backward_with_consistency(F, covers);
    if (sol.branch == Atr2Solution::Branch::Hierarchy) {
      std::cout << "hierarchy\n" << format_columns(sol.columns, x.order.order);
    } else {
      std::cout << "descent";
      for (Nat a : sol.descent) std::cout << " " << a;
      std::cout << "\n";
    }
  } else if (problem == "kdt") {
    std::cout << to_string(solve_graph(parse_graph(read_file(in)), solver, s.graph_limits())) << "\n";
  } else if (problem == "kdt2") {
    Kdt2Result r = kdt2_via_lpo_kdt(parse_graph(read_file(in)));
    if (r.bipartite) {
      std::cout << "bipartite " << to_string(*r.cover) << "\n";
    } else {
      std::cout << "odd-cycle";
      for (Nat v : r.odd_cycle) std::cout << " " << v;
      std::cout << "\n";
    }
  } else if (problem == "cwo") {
    auto [L, M] = load_order_pair(in);
    CwoResult r = cwo_solve(L, M);
    std::cout << to_string(r.direction) << "\n" << format_embedding(r.embedding) << "\n";
  } else if (problem == "lpo") {
    std::cout << (lpo(parse_stream(read_file(in))) ? 1 : 0) << "\n";
  } else if (problem == "cn") {
    std::cout << c_n(parse_shift_table(read_file(in))) << "\n";
  }
  return 0;
}

int run_verify(const Settings& s, const std::string& reduction, const std::string& dir, const std::string& mode) {
  auto files = instance_files(dir);
  std::size_t failed = 0;
  if (reduction == "atr-kdt") {
    std::vector<AtrInstance> xs;
    for (const auto& f : files) {
      xs.push_back(load_atr(f));
      if (parse_mode(mode) != VerifyMode::AllSolutions) continue;
      std::size_t product = 1;
      for (const auto& G : atr_to_kdt_forward(xs.back(), s.budgets).graphs) {
        std::size_t count = for_each_koenig_cover(G, [](const KoenigCover&) { return true; }, s.tree_limits());
        product = count && product > s.budgets.enumeration_cap / count ? s.budgets.enumeration_cap + 1 : product * count;
      }
      if (product > s.budgets.enumeration_cap)
        throw TooLarge(f.filename().string() + " has more than " + std::to_string(s.budgets.enumeration_cap) +
                       " cover combinations; use --mode oracle");
    }
    auto report = verify_reduction(atr_to_kdt(s.budgets), atr_problem(), kdt_family_problem(s.tree_limits()), xs,
                                   parse_mode(mode));
    std::vector<std::string> reasons(xs.size());
    for (const auto& f : report.failures) reasons[f.instance] = f.reason;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      std::cout << (reasons[k].empty() ? "pass " : "FAIL ") << files[k].filename().string();
      if (!reasons[k].empty()) std::cout << ": " << reasons[k];
      std::cout << "\n";
    }
    failed = report.failures.size();
    std::cout << report.instances << " instances, " << report.solutions_checked << " solutions checked, " << failed
              << " failed\n";
  } else {
    for (const auto& f : files) {
      auto G = parse_graph(read_file(f.string()));
      bool ok = check_kdt2_solution(G, kdt2_via_lpo_kdt(G));
      failed += !ok;
      std::cout << (ok ? "pass " : "FAIL ") << f.filename().string() << "\n";
    }
    std::cout << files.size() << " instances, " << failed << " failed\n";
  }
  return failed ? 1 : 0;
}

std::vector<LabeledOrder> labeled_orders_of_size(std::size_t n) {
  std::vector<LabeledOrder> out;
  std::vector<Nat> asc(n);
  std::iota(asc.begin(), asc.end(), 0);
  do {
    auto L = FiniteOrder::from_ascending(asc);
    for (Nat mask = 0; mask < (Nat{1} << (n - 1)); ++mask) {
      std::set<Nat> succ;
      std::map<Nat, Nat> pred;
      for (std::size_t k = 1; k < n; ++k)
        if (!(mask >> (k - 1) & 1)) {
          succ.insert(asc[k]);
          pred[asc[k]] = asc[k - 1];
        }
      out.push_back(LabeledOrder::with_labels(L, asc[0], succ, pred));
    }
  } while (std::next_permutation(asc.begin(), asc.end()));
  return out;
}

int run_demo(const Settings& s, std::size_t order_size, Nat e_max, Nat s_max, const std::string& mode) {
  if (order_size == 0) throw std::invalid_argument("order size must be positive");
  std::vector<AtrInstance> xs;
  for (const auto& L : labeled_orders_of_size(order_size))
    for (Nat mask = 0; mask < 4; ++mask) {
      Column A;
      for (Nat k = 0; k < 2; ++k)
        if (mask >> k & 1) A.insert(k);
      xs.push_back({L, A, JumpOperator::bounded(e_max, s_max)});
    }
  auto start = std::chrono::steady_clock::now();
  auto report = verify_reduction(atr_to_kdt(s.budgets), atr_problem(), kdt_family_problem(s.tree_limits()), xs,
                                 parse_mode(mode));
  std::cout << "ATR -> KDT over " << report.instances << " instances (labeled orders of size " << order_size
            << ", A within {0,1}, " << xs.front().jump.describe() << ")\n"
            << report.solutions_checked << " cover combinations checked in " << millis_since(start) << " ms\n";
  for (const auto& f : report.failures) {
    const AtrInstance& x = xs[f.instance];
    std::cout << "FAIL order " << to_string(x.order.order) << " A={" << format_set(x.start) << "}: " << f.reason << "\n";
  }
  std::cout << (report.ok() ? "all passed" : std::to_string(report.failures.size()) + " failed") << "\n";
  return report.ok() ? 0 : 1;
}

// One record per tree and one per instance, one JSON object per line.
int run_report(const Settings& s, const std::string& in, const std::string& dir, const std::string& out_path,
               const std::string& solver) {
  std::vector<fs::path> files = in.empty() ? instance_files(dir) : std::vector<fs::path>{in};
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  std::size_t failed = 0;
  for (const auto& file : files) {
    auto start = std::chrono::steady_clock::now();
    json summary{{"record", "instance"}, {"instance", file.filename().string()}};
    try {
      AtrInstance x = load_atr(file);
      KdtFamily fam = atr_to_kdt_forward(x, s.budgets);
      std::vector<KoenigCover> covers;
      ForestCovers by_id;
      for (std::size_t k = 0; k < fam.graphs.size(); ++k) {
        covers.push_back(solve_graph(fam.graphs[k], solver, s.tree_limits()));
        by_id[fam.ids[k]] = covers.back();
      }
      check_consistency(fam.forest, by_id);
      Atr2Solution sol = atr2_backward_with_consistency(fam.forest, by_id);
      Columns decoded = atr_to_kdt_backward(fam, covers);
      bool pass = decoded == build_hierarchy(x.order, x.start, x.jump).columns &&
                  sol.branch == Atr2Solution::Branch::Hierarchy;
      std::size_t nodes = 0;
      for (std::size_t k = 0; k < fam.graphs.size(); ++k) {
        auto [b, n] = fam.ids[k];
        const FiniteTree& T = fam.forest.tree(b, n);
        nodes += T.size();
        bool consistent = true;
        for (const auto& [key, rs] : compute_r_ba(fam.forest, b, n, covers[k]))
          for (const Node& r : rs)
            consistent = consistent && covers[k].cover.count(T.index(r)) == by_id.at(key).cover.count(0);
        out << json{{"record", "tree"},
                    {"instance", file.filename().string()},
                    {"b", b},
                    {"n", n},
                    {"tree_size", T.size()},
                    {"cover_size", covers[k].cover.size()},
                    {"bit", decode_bit(T, covers[k])},
                    {"consistent", consistent}}
                   .dump()
            << "\n";
      }
      summary["pass"] = pass;
      summary["branch"] = sol.branch == Atr2Solution::Branch::Hierarchy ? "hierarchy" : "descent";
      summary["order_size"] = x.order.order.size();
      summary["trees"] = fam.graphs.size();
      summary["nodes"] = nodes;
      failed += !pass;
    } catch (const std::exception& e) {
      summary["pass"] = false;
      summary["error"] = e.what();
      ++failed;
    }
    summary["millis"] = millis_since(start);
    out << summary.dump() << "\n";
  }
  std::cout << files.size() << " instances, " << failed << " failed; records in " << out_path << "\n";
  return failed ? 1 : 0;
}

int run_hierarchy(const std::string& order_file, const std::string& start, const std::string& jump) {
  LabeledOrder L = parse_labeled_order(read_file(order_file));
  Hierarchy H = build_hierarchy(L, parse_set(start), parse_jump(jump));
  std::cout << format_columns(H.columns, L.order);
  return 0;
}

int run_cover(const Settings& s, const std::string& graph_file, const std::string& solver) {
  BipartiteGraph G = parse_graph(read_file(graph_file));
  if (solver == "enumerate") {
    auto all = enumerate_koenig_covers(G, s.graph_limits());
    for (const auto& K : all) std::cout << to_string(K) << "\n";
    std::cout << all.size() << " covers\n";
    return 0;
  }
  std::cout << to_string(solve_graph(G, solver, s.graph_limits())) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchies, König covers and the reductions between them"};
  app.require_subcommand(1);
  Settings settings;
  app.add_option("--config", settings.config_path, "Budget file (depth, width, tree-node-cap, enumeration-cap)")
      ->check(CLI::ExistingFile);

  const std::vector<std::string> solvers{"matching", "simpson", "enumerate"};
  const std::vector<std::string> modes{"all", "oracle"};

  std::string problem, in, solver = "matching";
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("problem", problem, "Problem")
      ->required()
      ->check(CLI::IsMember({"atr", "atr2", "kdt", "kdt2", "cwo", "lpo", "cn"}));
  solve->add_option("--in", in, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", solver, "Cover solver")->check(CLI::IsMember(solvers));

  std::string reduction, dir, mode = "all";
  auto* verify = app.add_subcommand("verify", "Check a reduction on every instance in a directory");
  verify->add_option("reduction", reduction, "Reduction")->required()->check(CLI::IsMember({"atr-kdt", "kdt2-lpo-kdt"}));
  verify->add_option("--instances", dir, "Instance directory")->required()->check(CLI::ExistingDirectory);
  verify->add_option("--mode", mode, "all: every solution; oracle: the solver's")->check(CLI::IsMember(modes));

  std::size_t order_size = 2;
  Nat e_max = 3, s_max = 10;
  auto* demo = app.add_subcommand("demo", "Exhaustive demonstrations");
  demo->require_subcommand(1);
  auto* demo_atr = demo->add_subcommand("atr-kdt", "ATR -> KDT over every small labeled order");
  demo_atr->add_option("--order-size", order_size, "Order size")->check(CLI::Range(1, 4));
  demo_atr->add_option("--emax", e_max, "Machines per jump");
  demo_atr->add_option("--smax", s_max, "Step budget");
  demo_atr->add_option("--mode", mode, "all or oracle")->check(CLI::IsMember(modes));

  std::string out_path;
  auto* report = app.add_subcommand("report", "Line-delimited JSON records for ATR instances");
  auto* report_in = report->add_option("--in", in, "Instance file")->check(CLI::ExistingFile);
  auto* report_dir = report->add_option("--instances", dir, "Instance directory")->check(CLI::ExistingDirectory);
  report_in->excludes(report_dir);
  report->add_option("--out", out_path, "Output file")->required();
  report->add_option("--solver", solver, "Cover solver")->check(CLI::IsMember(solvers));

  std::string order_file, start, jump = "bounded:4,10";
  auto* hierarchy = app.add_subcommand("hierarchy", "Jump hierarchies");
  hierarchy->require_subcommand(1);
  auto* build = hierarchy->add_subcommand("build", "Print the columns of a hierarchy");
  build->add_option("--order", order_file, "Order file")->required()->check(CLI::ExistingFile);
  build->add_option("--start", start, "Start set, e.g. \"0 2\"");
  build->add_option("--jump", jump, "bounded:E,S, suite:S or synthetic:FILE");

  std::string graph_file;
  auto* koenig = app.add_subcommand("koenig", "König covers");
  koenig->require_subcommand(1);
  auto* cover = koenig->add_subcommand("cover", "Cover a bipartite graph");
  cover->add_option("--graph", graph_file, "Graph file")->required()->check(CLI::ExistingFile);
  cover->add_option("--solver", solver, "Cover solver")->check(CLI::IsMember(solvers));

  CLI11_PARSE(app, argc, argv);

  try {
    if (!settings.config_path.empty()) settings.budgets = load_budgets(settings.config_path);
    if (*solve) return run_solve(settings, problem, in, solver);
    if (*verify) return run_verify(settings, reduction, dir, mode);
    if (*demo_atr) return run_demo(settings, order_size, e_max, s_max, mode);
    if (*report) {
      if (in.empty() && dir.empty()) throw std::invalid_argument("report needs --in or --instances");
      return run_report(settings, in, dir, out_path, solver);
    }
    if (*build) return run_hierarchy(order_file, start, jump);
    if (*cover) return run_cover(settings, graph_file, solver);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
