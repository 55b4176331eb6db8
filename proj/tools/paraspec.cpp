#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "paraspec/cli.hpp"
#include "paraspec/errors.hpp"

namespace {

enum Exit { kOk = 0, kIdentityFailure = 1, kInputError = 2, kResourceExhausted = 3 };

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> precision;
  std::optional<std::uint64_t> q;
  std::string out;
  bool timing = false;
  std::string inject_fault;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw paraspec::InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const paraspec::Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw paraspec::InvalidInput("cannot write '" + out + "'");
  f << text;
}

paraspec::RunConfig load_config(const Args& a) {
  auto cfg = paraspec::parse_config(read_file(a.config));
  if (a.seed) cfg.seed = *a.seed;
  if (a.precision) cfg.precision = *a.precision;
  if (a.q) cfg.q = *a.q;
  return cfg;
}

int dispatch(const std::string& command, const Args& a) {
  using namespace paraspec;
  const auto start = std::chrono::steady_clock::now();
  Json report;
  int code = kOk;
  if (command == "stringy") {
    RunOptions opt;
    if (a.q) opt.stringy_q = {Integer(static_cast<unsigned long>(*a.q))};
    report = run_stringy(parse_sectors(read_file(a.config)), opt);
    for (const auto& [q, v] : report["values"].items()) {
      if (v["weight_consistency"].is_boolean() && !v["weight_consistency"].get<bool>()) code = kIdentityFailure;
    }
  } else {
    const auto cfg = load_config(a);
    if (command == "analyze") {
      report = run_analyze(cfg);
    } else if (command == "resolve") {
      report = run_resolve(cfg);
    } else if (command == "count") {
      report = run_count(cfg);
    } else {
      RunOptions opt;
      if (!a.inject_fault.empty()) opt.inject_fault = a.inject_fault;
      auto res = run_verify(cfg, opt);
      report = std::move(res.report);
      code = res.exit_code();
    }
  }
  if (a.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report["timing"] = {{"seconds", dt.count()}};
  }
  emit(report, a.out);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parabolic spectral curves: combinatorics, resolution, point counts and stringy evaluators"};
  app.require_subcommand(1);
  Args args;
  const std::pair<const char*, const char*> commands[] = {
      {"analyze", "parabolic type, Hitchin base dimensions and genus identities"},
      {"resolve", "blow-up resolution of the local spectral singularities"},
      {"count", "sample a spectral curve over GF(q), count points and fit its zeta function"},
      {"stringy", "stringy E-polynomials and point counts from a sector file"},
      {"verify", "run every cross-check and report a ledger"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "JSON config (sector file for stringy)")->required();
    sub->add_option("--seed", args.seed, "sampling seed");
    sub->add_option("--precision", args.precision, "series precision for local equations");
    sub->add_option("--q", args.q, "field order (evaluation point for stringy)");
    sub->add_option("--out", args.out, "write the report here instead of stdout");
    sub->add_flag("--timing", args.timing, "add wall-clock timing to the report");
    if (std::string(name) == "verify") {
      sub->add_option("--inject-fault", args.inject_fault)->group("");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, args);
  } catch (const paraspec::InvalidInput& e) {
    std::cerr << "paraspec: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const paraspec::ResourceExhausted& e) {
    std::cerr << "paraspec: resource exhausted: " << e.what() << "\n";
    return kResourceExhausted;
  } catch (const paraspec::Error& e) {
    std::cerr << "paraspec: " << e.what() << "\n";
    return kIdentityFailure;
  }
}
