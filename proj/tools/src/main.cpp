#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "checks.hpp"
#include "json.hpp"
#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/five_term.hpp"
#include "spinscreen/geometry.hpp"
#include "spinscreen/ninej.hpp"
#include "spinscreen/parallel.hpp"
#include "spinscreen/recursion.hpp"
#include "spinscreen/screen_io.hpp"
#include "spinscreen/semiclassics.hpp"

namespace fs = std::filesystem;
using namespace spinscreen;
using spinscreen::cli::CheckResult;

namespace {

enum Exit { Ok = 0, VerifyFailed = 1, Usage = 2, Numerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyScreen:
    case ErrorCode::ParityError:
    case ErrorCode::OutOfRange:
    case ErrorCode::PatternError:
      return Usage;
    default:
      return Numerical;
  }
}

struct Quad {
  int a = 60, b = 90, c = 120, d = 110;
};

void add_quad(CLI::App* app, Quad& q, bool required) {
  for (auto [flag, ref] : {std::pair{"--two-a", &q.a}, {"--two-b", &q.b}, {"--two-c", &q.c}, {"--two-d", &q.d}}) {
    auto* opt = app->add_option(flag, *ref, std::string("twice ") + (flag + 6) + ", a nonnegative integer")
                    ->check(CLI::NonNegativeNumber);
    if (required) opt->required();
    else opt->capture_default_str();
  }
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("tolerance override must be name=value: " + s);
    try {
      out[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad tolerance value in " + s);
    }
  }
  return out;
}

nlohmann::ordered_json report_json(const std::string& command, const std::vector<CheckResult>& results) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = std::string(version());
  auto arr = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["measured"] = r.measured;
    e["relation"] = r.relation;
    e["threshold"] = r.threshold;
    e["pass"] = r.pass;
    if (!r.detail.empty()) e["detail"] = r.detail;
    arr.push_back(std::move(e));
    all = all && r.pass;
  }
  j["checks"] = std::move(arr);
  j["pass"] = all;
  return j;
}

int emit_report(const std::string& command, const std::vector<CheckResult>& results, const std::string& path) {
  const auto j = report_json(command, results);
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write report " + path);
    out << text;
  }
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (!r.pass) {
      ++failed;
      std::fprintf(stderr, "FAIL %s: %.6g %s %.6g\n", r.name.c_str(), r.measured, r.relation.c_str(), r.threshold);
    }
  }
  std::fprintf(stderr, "%zu checks, %zu failed\n", results.size(), failed);
  return failed == 0 ? Ok : VerifyFailed;
}

// compute

struct ComputeConfig {
  Quad quad;
  std::string method = "eigensolve";
  std::vector<std::string> outputs{"screen"};
  std::string format = "csv";
  std::string output_dir;
  int samples = 1;
};

const std::set<std::string> kOutputs{"screen", "caustics", "ridges", "potentials", "cos-theta3", "pr-compare"};

Screen compute_screen(const ScreenParams& p, Method m) {
  switch (m) {
    case Method::Oracle: return screen_oracle(p);
    case Method::Eigensolve: return screen_by_eigensolve(p);
    case Method::ThreeTerm: return screen_by_threeterm(p);
    case Method::Recur2D: return screen_by_2d(p);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

int run_compute(const ComputeConfig& cfg) {
  const auto method = parse_method(cfg.method);
  if (!method) throw UsageError("unknown method '" + cfg.method + "'");
  const auto format = parse_format(cfg.format);
  if (!format) throw UsageError("unknown format '" + cfg.format + "'");
  std::set<std::string> wanted;
  for (const auto& o : cfg.outputs) {
    if (!kOutputs.count(o)) throw UsageError("unknown output '" + o + "'");
    wanted.insert(o);
  }
  if (wanted.empty()) throw UsageError("no outputs requested");
  if (cfg.samples < 1) throw UsageError("--samples-per-step must be positive");
  const auto p = screen_ranges(cfg.quad.a, cfg.quad.b, cfg.quad.c, cfg.quad.d);

  fs::path dir = cfg.output_dir;
  if (dir.empty()) {
    const char* env = std::getenv("SPINSCREEN_OUTPUT_DIR");
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  char stem[96];
  std::snprintf(stem, sizeof stem, "%d_%d_%d_%d", cfg.quad.a, cfg.quad.b, cfg.quad.c, cfg.quad.d);
  const std::string ext(extension(*format));
  const std::string mname(to_string(*method));

  const auto t0 = std::chrono::steady_clock::now();
  std::optional<Screen> screen;
  if (wanted.count("screen") || wanted.count("pr-compare")) screen = compute_screen(p, *method);
  std::vector<fs::path> written;
  if (wanted.count("screen")) {
    written.push_back(dir / ("screen_" + std::string(stem) + "_" + mname + "." + ext));
    auto out = open_out(written.back());
    write_screen(out, *screen, *format);
  }
  if (wanted.count("caustics") || wanted.count("ridges")) {
    const auto c = ridges_and_caustics(p, cfg.samples);
    if (wanted.count("caustics")) {
      written.push_back(dir / ("caustics_" + std::string(stem) + ".json"));
      auto out = open_out(written.back());
      write_caustics(out, p, c);
    }
    if (wanted.count("ridges")) {
      written.push_back(dir / ("ridges_" + std::string(stem) + ".json"));
      auto out = open_out(written.back());
      write_ridges(out, p, c);
    }
  }
  if (wanted.count("potentials")) {
    written.push_back(dir / ("potentials_" + std::string(stem) + "." + ext));
    auto out = open_out(written.back());
    write_potentials(out, p, *format);
  }
  if (wanted.count("cos-theta3")) {
    written.push_back(dir / ("cos_theta3_" + std::string(stem) + "." + ext));
    auto out = open_out(written.back());
    write_cos_theta3(out, p, *format);
  }
  if (wanted.count("pr-compare")) {
    written.push_back(dir / ("pr_compare_" + std::string(stem) + "_" + mname + "." + ext));
    auto out = open_out(written.back());
    write_pr_compare(out, p, pr_compare(p, *screen), *format);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::printf("screen %zux%zu  x=[%g,%g] y=[%g,%g]  method=%s\n", p.side(), p.side(), p.x_min.j(), p.x_max.j(),
              p.y_min.j(), p.y_max.j(), mname.c_str());
  if (screen) {
    const auto& d = screen->diagnostics();
    std::printf("orthonormality defect %.3g", orthonormality_defect(*screen));
    if (*method == Method::Recur2D) std::printf("  precision %ld bits  oracle fallbacks %zu", d.precision_bits, d.oracle_fallbacks);
    std::printf("\n");
  }
  std::printf("wall time %.3f s\n", secs);
  for (const auto& w : written) std::printf("wrote %s\n", w.string().c_str());
  return Ok;
}

// verify

struct VerifyOptions {
  Quad quad;
  std::vector<std::string> checks;
  std::string golden;
  std::vector<std::string> tolerances;
  std::size_t random_cases = 200;
  std::uint64_t seed = 20240611;
  std::string report;
};

bool selected(const std::vector<std::string>& filter, const std::string& suite) {
  return filter.empty() || std::find(filter.begin(), filter.end(), suite) != filter.end();
}

int run_verify(const VerifyOptions& o) {
  cli::VerifyConfig cfg;
  cfg.params = screen_ranges(o.quad.a, o.quad.b, o.quad.c, o.quad.d);
  cfg.random_cases = o.random_cases;
  cfg.seed = o.seed;
  cfg.tolerance = parse_tolerances(o.tolerances);
  for (const auto& c : o.checks) {
    const bool known = c == "golden" || std::any_of(cli::suites().begin(), cli::suites().end(),
                                                    [&](const cli::Suite& s) { return s.name == c; });
    if (!known) throw UsageError("unknown check '" + c + "'");
  }
  if (selected(o.checks, "golden") && !o.checks.empty() && o.golden.empty())
    throw UsageError("--check golden needs --golden FILE");

  std::vector<CheckResult> results;
  for (const auto& s : cli::suites()) {
    if (!selected(o.checks, s.name)) continue;
    auto r = s.run(cfg);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (!o.golden.empty() && selected(o.checks, "golden")) {
    try {
      auto r = cli::golden_checks(o.golden);
      results.insert(results.end(), r.begin(), r.end());
    } catch (const Error& e) {
      results.push_back(cli::at_most("golden/read", 1, 0, e.what()));
    }
  }
  return emit_report("verify", results, o.report);
}

// ninej-check

struct NineJOptions {
  cli::NineJSweep sweep;
  bool reduce = false;
  Quad quad;
  std::size_t reduction_stencils = 200;
  std::string order = "verified";
  std::vector<std::string> tolerances;
  std::string report;
};

int run_ninej(const NineJOptions& o) {
  const auto tol = parse_tolerances(o.tolerances);
  auto get = [&](const std::string& k, double d) {
    auto it = tol.find(k);
    return it == tol.end() ? d : it->second;
  };
  BOrder order;
  if (o.order == "verified") order = BOrder::Verified;
  else if (o.order == "literal") order = BOrder::Literal;
  else throw UsageError("unknown --b-order '" + o.order + "'");
  if (o.reduce && (!o.sweep.two_h || *o.sweep.two_h != 0)) throw UsageError("--reduce requires --two-h 0");

  const auto stencils = cli::ninej_stencils(o.sweep);
  if (stencils.empty()) {
    std::fprintf(stderr, "no admissible stencils\n");
    return Usage;
  }
  std::vector<CheckResult> results;
  double worst = 0;
  std::string worst_at;
  for (const auto& v : stencils) {
    const NineJArgs a{TwoJ(v[0]), TwoJ(v[1]), TwoJ(v[2]), TwoJ(v[3]), TwoJ(v[4]),
                      TwoJ(v[5]), TwoJ(v[6]), TwoJ(v[7]), TwoJ(v[8])};
    const double r = ninej_residual(a, order).relative;
    if (r >= worst) {
      worst = r;
      worst_at = a.to_string();
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu stencils, worst at ", stencils.size());
  results.push_back(cli::at_most("ninej-recurrence", worst, get("ninej-recurrence", 1e-10), buf + worst_at));
  if (o.reduce) {
    const auto p = screen_ranges(o.quad.a, o.quad.b, o.quad.c, o.quad.d);
    const auto r = reduction_check(p, o.reduction_stencils, order);
    std::snprintf(buf, sizeof buf, "%zu stencils, %zu skipped", r.stencils, r.skipped);
    results.push_back(cli::at_most("ninej-reduction/ratio-deviation", r.max_ratio_deviation,
                                   get("ninej-reduction", 1e-9), buf));
    results.push_back(cli::at_most("ninej-reduction/mismatched-zeros", static_cast<double>(r.mismatched_zeros), 0));
  }
  return emit_report("ninej-check", results, o.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screens of orthonormalized 6j symbols: compute, export and verify"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "cap on worker threads (0: hardware concurrency)");

  ComputeConfig cc;
  auto* compute = app.add_subcommand("compute", "compute a screen and export data files");
  add_quad(compute, cc.quad, true);
  compute->add_option("--method", cc.method, "oracle|eigensolve|threeterm|recur2d")->capture_default_str();
  compute->add_option("--output", cc.outputs, "screen,caustics,ridges,potentials,cos-theta3,pr-compare")
      ->delimiter(',')
      ->capture_default_str();
  compute->add_option("--format", cc.format, "csv|json")->capture_default_str();
  compute->add_option("--output-dir", cc.output_dir, "directory for data files (default $SPINSCREEN_OUTPUT_DIR or .)");
  compute->add_option("--samples-per-step", cc.samples, "curve samples per lattice step")->capture_default_str();

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run the invariant suites and print a JSON report");
  add_quad(verify, vo.quad, false);
  verify->add_option("--check", vo.checks, "run only these suites")->delimiter(',');
  verify->add_option("--golden", vo.golden, "JSON file of reference values");
  verify->add_option("--tolerance", vo.tolerances, "override a threshold, name=value");
  verify->add_option("--random-cases", vo.random_cases, "random argument sets per suite")->capture_default_str();
  verify->add_option("--seed", vo.seed, "random seed")->capture_default_str();
  verify->add_option("--report", vo.report, "also write the report to this file");

  NineJOptions no;
  auto* ninej = app.add_subcommand("ninej-check", "9j recurrence residuals and the h = 0 reduction");
  ninej->add_option("--stencils", no.sweep.stencils, "number of random stencils")->capture_default_str();
  ninej->add_option("--max-two-j", no.sweep.max_two_j, "largest twice-j drawn")->capture_default_str();
  ninej->add_option("--two-h", no.sweep.two_h, "fix twice h");
  ninej->add_option("--seed", no.sweep.seed, "random seed")->capture_default_str();
  ninej->add_flag("--reduce", no.reduce, "compare the h = 0 recurrence with the five-term coefficients");
  add_quad(ninej, no.quad, false);
  ninej->add_option("--reduction-stencils", no.reduction_stencils, "stencils for --reduce (0: all)")
      ->capture_default_str();
  ninej->add_option("--b-order", no.order, "verified|literal")->capture_default_str();
  ninej->add_option("--tolerance", no.tolerances, "override a threshold, name=value");
  ninej->add_option("--report", no.report, "also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : Usage;
  }

  try {
    set_max_threads(threads);
    if (*compute) return run_compute(cc);
    if (*verify) return run_verify(vo);
    if (*ninej) return run_ninej(no);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return Usage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return Numerical;
  }
  return Usage;
}
