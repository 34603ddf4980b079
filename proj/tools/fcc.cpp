// fcc: fair correlation clustering on vertex-colored forests.
//
// Subcommands: solve, cost, verify, gen (gadget|random), oracle, bench.
// Exit codes: 0 success; 2 well-formed but infeasible/unsupported request;
// 1 malformed input or other error.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fcc/approx.hpp"
#include "fcc/gadgets.hpp"
#include "fcc/io.hpp"
#include "fcc/oracle.hpp"
#include "fcc/relaxed.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) fcc::fail(fcc::Errc::ParseError, "cannot read '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fcc::fail(fcc::Errc::ParseError, "cannot write '" + path + "'");
  out << text;
}

std::vector<long long> parse_int_list(const std::string& s, const char* what) {
  std::vector<long long> out;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, s.find(':') != std::string::npos ? ':' : ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      fcc::fail(fcc::Errc::BadParams, std::string("cannot parse ") + what + " '" + s + "'");
    }
  }
  if (out.empty()) fcc::fail(fcc::Errc::BadParams, std::string("empty ") + what + " '" + s + "'");
  return out;
}

fcc::SolveResult dispatch_solve(const fcc::ColoredForest& f, const std::string& name,
                                const std::string& eps_str, const std::string& alpha_str) {
  using namespace fcc;
  if (name == "auto") return solve_auto(f);
  if (name == "one_one") return solve_one_one(f);
  if (name == "diam3") return solve_diameter_le3(f);
  if (name == "one_two") return solve_one_two(f);
  if (name == "general") return solve_general(f);
  if (name == "few_clusters") return solve_one_c(f);
  if (name == "greedy") return greedy_fair(f);
  if (name == "ptas") return solve_ptas(f, parse_rational(eps_str));
  if (name == "alpha_relaxed") {
    if (alpha_str.empty())
      fail(Errc::BadParams, "--solver alpha_relaxed needs --alpha (e.g. --alpha 2/3)");
    return solve_alpha_relaxed_one_one(f, parse_rational(alpha_str));
  }
  fail(Errc::BadParams, "unknown solver '" + name + "'");
}

const std::vector<std::string> kSolverNames = {"auto",    "one_one",      "diam3",
                                               "one_two", "general",      "few_clusters",
                                               "greedy",  "ptas",         "alpha_relaxed"};

struct SolveOpts {
  std::string input = "-", output, solver = "auto", epsilon = "1/2", alpha;
  bool timings = false;
};

void run_solve(const SolveOpts& o) {
  fcc::ColoredForest f = fcc::parse_instance(read_text(o.input));
  auto t0 = std::chrono::steady_clock::now();
  fcc::SolveResult r = dispatch_solve(f, o.solver, o.epsilon, o.alpha);
  std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
  fcc::ResultMeta meta{r.solver, std::nullopt, std::nullopt};
  if (o.solver == "alpha_relaxed") meta.alpha = fcc::parse_rational(o.alpha);
  if (o.timings) meta.wall_ms = dt.count();
  write_text(o.output, fcc::serialize_result(f, r.assignment, meta));
}

struct CostOpts {
  std::string instance, result, assignment, output;
};

void run_cost(const CostOpts& o) {
  fcc::ColoredForest f = fcc::parse_instance(read_text(o.instance));
  fcc::ResultMeta meta{"external", std::nullopt, std::nullopt};
  fcc::Assignment a;
  if (!o.result.empty()) {
    fcc::ParsedResult pr = fcc::parse_result(read_text(o.result));
    a = pr.assignment;
    if (pr.solver) meta.solver = *pr.solver;
    meta.alpha = pr.alpha;
  } else {
    for (long long v : parse_int_list(o.assignment, "assignment"))
      a.push_back(static_cast<int>(v));
  }
  if (static_cast<int>(a.size()) != f.n)
    fcc::fail(fcc::Errc::LengthMismatch,
              "assignment covers " + std::to_string(a.size()) + " vertices, instance has " +
                  std::to_string(f.n));
  write_text(o.output, fcc::serialize_result(f, a, meta));
}

struct VerifyOpts {
  std::string instance, result, alpha, output;
};

int run_verify(const VerifyOpts& o) {
  fcc::ColoredForest f = fcc::parse_instance(read_text(o.instance));
  fcc::ParsedResult pr = fcc::parse_result(read_text(o.result));
  std::optional<fcc::Rational> alpha;
  if (!o.alpha.empty()) alpha = fcc::parse_rational(o.alpha);
  fcc::VerifyReport rep = fcc::verify_result(f, pr, alpha);
  nlohmann::ordered_json doc;
  doc["verified"] = rep.verified;
  if (rep.cost_computed) {
    doc["fair"] = rep.fair;
    doc["chi"] = rep.cost.chi;
    doc["psi"] = rep.cost.psi;
    doc["total"] = rep.cost.total;
  }
  doc["problems"] = rep.problems;
  write_text(o.output, doc.dump(2) + "\n");
  return rep.verified ? 0 : 1;
}

struct GenGadgetOpts {
  std::string family, a_csv, word, shape = "path", output;
  long long B = 0;
};

void run_gen_gadget(const GenGadgetOpts& o) {
  fcc::GadgetInstance g;
  std::string describe;
  if (o.family == "paintshop") {
    if (o.word.empty()) fcc::fail(fcc::Errc::BadParams, "--family paintshop needs --word");
    g = fcc::gen_paintshop_path(o.word);
    describe = "# gadget paintshop word=" + o.word + "\n";
  } else {
    if (o.B <= 0 || o.a_csv.empty())
      fcc::fail(fcc::Errc::BadParams, "--family " + o.family + " needs --B and --a");
    fcc::ThreePartitionSpec spec{o.B, parse_int_list(o.a_csv, "number list")};
    if (o.family == "forest") {
      fcc::TreeShape shape = o.shape == "star"          ? fcc::TreeShape::star
                             : o.shape == "caterpillar" ? fcc::TreeShape::caterpillar
                                                        : fcc::TreeShape::path;
      g = fcc::gen_forest_gadget(spec, shape);
      describe = "# gadget forest B=" + std::to_string(o.B) + " a=" + o.a_csv +
                 " shape=" + o.shape + "\n";
    } else if (o.family == "diam4") {
      g = fcc::gen_diam4_gadget(spec);
      describe = "# gadget diam4 B=" + std::to_string(o.B) + " a=" + o.a_csv + "\n";
    } else {
      g = fcc::gen_deg5_gadget(spec);
      describe = "# gadget deg5 B=" + std::to_string(o.B) + " a=" + o.a_csv + "\n";
    }
  }
  if (g.threshold) describe += "# threshold " + std::to_string(*g.threshold) + "\n";
  if (g.is_yes) describe += std::string("# label ") + (*g.is_yes ? "yes" : "no") + "\n";
  write_text(o.output, describe + fcc::serialize_instance(g.forest));
}

struct GenRandomOpts {
  std::string ratio = "1:1", shape = "uniform", output;
  int n = 0;
  std::uint64_t seed = 0;
};

void run_gen_random(const GenRandomOpts& o) {
  fcc::RandomShape shape = o.shape == "path"   ? fcc::RandomShape::path
                           : o.shape == "star" ? fcc::RandomShape::star
                                               : fcc::RandomShape::uniform;
  fcc::ColoredForest f = fcc::gen_random_forest(o.n, parse_int_list(o.ratio, "ratio"), shape, o.seed);
  std::string describe = "# random n=" + std::to_string(o.n) + " ratio=" + o.ratio + " shape=" +
                         o.shape + " seed=" + std::to_string(o.seed) + "\n";
  write_text(o.output, describe + fcc::serialize_instance(f));
}

struct OracleOpts {
  std::string input = "-", alpha, output;
  int max_n = 12;
  bool min_size_only = false;
};

void run_oracle(const OracleOpts& o) {
  fcc::ColoredForest f = fcc::parse_instance(read_text(o.input));
  fcc::OracleOptions opts;
  opts.max_n = o.max_n;
  opts.min_size_only = o.min_size_only;
  fcc::OracleResult r;
  fcc::ResultMeta meta{"oracle", std::nullopt, std::nullopt};
  if (!o.alpha.empty()) {
    fcc::Rational alpha = fcc::parse_rational(o.alpha);
    r = fcc::brute_force_relaxed(f, fcc::alpha_params(f, alpha), opts);
    meta.solver = "oracle_relaxed";
    meta.alpha = alpha;
  } else {
    r = fcc::brute_force_exact(f, opts);
  }
  write_text(o.output, fcc::serialize_result(f, r.assignment, meta));
}

struct BenchOpts {
  std::string n_list, ratio = "1:1", shape = "uniform", solver = "auto", epsilon = "1/2", alpha;
  int seeds = 3, jobs = 1;
};

void run_bench(const BenchOpts& o) {
  std::vector<long long> sizes = parse_int_list(o.n_list, "size list");
  std::vector<long long> ratio = parse_int_list(o.ratio, "ratio");
  fcc::RandomShape shape = o.shape == "path"   ? fcc::RandomShape::path
                           : o.shape == "star" ? fcc::RandomShape::star
                                               : fcc::RandomShape::uniform;

  struct Task {
    long long n;
    std::uint64_t seed;
    double ms = 0;
    long long total = 0;
    std::string solver;
  };
  std::vector<Task> tasks;
  for (long long n : sizes)
    for (int s = 0; s < o.seeds; ++s) tasks.push_back({n, static_cast<std::uint64_t>(s)});

  std::atomic<std::size_t> next{0};
  std::mutex error_lock;
  std::exception_ptr first_error;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> hold(error_lock);
        if (first_error) return;
      }
      try {
        Task& t = tasks[i];
        fcc::ColoredForest f =
            fcc::gen_random_forest(static_cast<int>(t.n), ratio, shape, t.seed);
        auto t0 = std::chrono::steady_clock::now();
        fcc::SolveResult r = dispatch_solve(f, o.solver, o.epsilon, o.alpha);
        std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
        t.ms = dt.count();
        t.total = r.cost.total;
        t.solver = r.solver;
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_lock);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  int threads = std::max(1, std::min<int>(o.jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  char line[160];
  for (const Task& t : tasks) {
    std::snprintf(line, sizeof line, "n=%lld seed=%llu solver=%s total=%lld ms=%.3f", t.n,
                  static_cast<unsigned long long>(t.seed), t.solver.c_str(), t.total, t.ms);
    std::cout << line << "\n";
  }
  for (long long n : sizes) {
    double lo = 0, hi = 0, sum = 0;
    int count = 0;
    for (const Task& t : tasks)
      if (t.n == n) {
        if (!count || t.ms < lo) lo = t.ms;
        if (!count || t.ms > hi) hi = t.ms;
        sum += t.ms;
        ++count;
      }
    std::snprintf(line, sizeof line, "summary n=%lld runs=%d mean_ms=%.3f min_ms=%.3f max_ms=%.3f",
                  n, count, sum / count, lo, hi);
    std::cout << line << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fair correlation clustering on vertex-colored forests"};
  app.require_subcommand(1);
  int exit_code = 0;

  SolveOpts solve_opts;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance and print the clustering");
  solve->add_option("instance", solve_opts.input, "instance file, '-' for stdin");
  solve->add_option("--solver", solve_opts.solver, "solver to use")
      ->check(CLI::IsMember(kSolverNames));
  solve->add_option("--epsilon", solve_opts.epsilon, "accuracy for --solver ptas (rational)");
  solve->add_option("--alpha", solve_opts.alpha, "relaxation for --solver alpha_relaxed");
  solve->add_flag("--timings", solve_opts.timings, "include wall_ms in the result");
  solve->add_option("-o,--output", solve_opts.output, "write the result here instead of stdout");
  solve->callback([&]() { run_solve(solve_opts); });

  CostOpts cost_opts;
  CLI::App* cost = app.add_subcommand("cost", "recompute cost and fairness of a clustering");
  cost->add_option("instance", cost_opts.instance, "instance file, '-' for stdin")->required();
  CLI::Option* cres = cost->add_option("--result", cost_opts.result, "result document to read");
  cost->add_option("--assignment", cost_opts.assignment, "inline assignment, e.g. '0,0,1,1'")
      ->excludes(cres);
  cost->add_option("-o,--output", cost_opts.output, "output file");
  cost->callback([&]() {
    if (cost_opts.result.empty() && cost_opts.assignment.empty())
      fcc::fail(fcc::Errc::BadParams, "cost needs --result or --assignment");
    run_cost(cost_opts);
  });

  VerifyOpts verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "check a result document against its instance");
  verify->add_option("instance", verify_opts.instance, "instance file")->required();
  verify->add_option("result", verify_opts.result, "result document")->required();
  verify->add_option("--alpha", verify_opts.alpha, "verify relaxed fairness at this alpha");
  verify->add_option("-o,--output", verify_opts.output, "output file");
  verify->callback([&]() { exit_code = run_verify(verify_opts); });

  CLI::App* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);

  GenGadgetOpts gadget_opts;
  CLI::App* gadget = gen->add_subcommand("gadget", "hardness-reduction instances");
  gadget->add_option("--family", gadget_opts.family, "construction family")
      ->required()
      ->check(CLI::IsMember({"forest", "diam4", "deg5", "paintshop"}));
  gadget->add_option("--B", gadget_opts.B, "triple target sum");
  gadget->add_option("--a", gadget_opts.a_csv, "comma-separated numbers, e.g. '2,2,2'");
  gadget->add_option("--shape", gadget_opts.shape, "tree shape for --family forest")
      ->check(CLI::IsMember({"path", "star", "caterpillar"}));
  gadget->add_option("--word", gadget_opts.word, "doubled word for --family paintshop");
  gadget->add_option("-o,--output", gadget_opts.output, "output file");
  gadget->callback([&]() { run_gen_gadget(gadget_opts); });

  GenRandomOpts random_opts;
  CLI::App* random = gen->add_subcommand("random", "seeded pseudo-random forests");
  random->add_option("--n", random_opts.n, "vertex count")->required();
  random->add_option("--ratio", random_opts.ratio, "color ratio, e.g. '1:2'");
  random->add_option("--shape", random_opts.shape, "edge shape")
      ->check(CLI::IsMember({"uniform", "path", "star"}));
  random->add_option("--seed", random_opts.seed, "PRNG seed");
  random->add_option("-o,--output", random_opts.output, "output file");
  random->callback([&]() { run_gen_random(random_opts); });

  OracleOpts oracle_opts;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optimum for small instances");
  oracle->add_option("instance", oracle_opts.input, "instance file, '-' for stdin");
  oracle->add_option("--alpha", oracle_opts.alpha, "relaxed-fairness oracle at this alpha");
  oracle->add_option("--max-n", oracle_opts.max_n, "refuse instances larger than this");
  oracle->add_flag("--min-size-only", oracle_opts.min_size_only,
                   "search only minimum-size clusters");
  oracle->add_option("-o,--output", oracle_opts.output, "output file");
  oracle->callback([&]() { run_oracle(oracle_opts); });

  BenchOpts bench_opts;
  CLI::App* bench = app.add_subcommand("bench", "time solvers on generated instances");
  bench->add_option("--n", bench_opts.n_list, "comma-separated sizes, e.g. '1000,2000'")
      ->required();
  bench->add_option("--ratio", bench_opts.ratio, "color ratio");
  bench->add_option("--shape", bench_opts.shape, "edge shape")
      ->check(CLI::IsMember({"uniform", "path", "star"}));
  bench->add_option("--seeds", bench_opts.seeds, "instances per size")
      ->check(CLI::PositiveNumber);
  bench->add_option("--solver", bench_opts.solver, "solver to time")
      ->check(CLI::IsMember(kSolverNames));
  bench->add_option("--epsilon", bench_opts.epsilon, "accuracy for --solver ptas");
  bench->add_option("--alpha", bench_opts.alpha, "relaxation for --solver alpha_relaxed");
  bench->add_option("--jobs", bench_opts.jobs, "concurrent solves")->check(CLI::PositiveNumber);
  bench->callback([&]() { run_bench(bench_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const fcc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";  // what() already names the code
    return fcc::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
