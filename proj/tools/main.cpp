#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dualinv/errors.hpp"
#include "dualinv/replay.hpp"
#include "dualinv/suite.hpp"

namespace {

constexpr int kConfigExit = 2;

std::string read_file(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw dualinv::ConfigError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw dualinv::ConfigError("cannot write " + path);
  out << text;
}

// Flag values kept as text so the config file can be overridden key by key.
struct Overrides {
  std::map<std::string, std::string> values;
  std::vector<std::string> suites;
  std::vector<std::string> groups;
  std::string config_file;
  std::string output;

  void add_flags(CLI::App* app, bool suite_flag) {
    const std::vector<std::pair<std::string, std::string>> flags = {
        {"family", "orthogonal, symplectic, hermitian, skew-hermitian or general-linear"},
        {"dim", "dimension n of V"},
        {"prime", "odd prime p"},
        {"ext", "auto, split or inert"},
        {"precision", "residue precision N (work mod p^N)"},
        {"level", "congruence level k, 1 <= k < N"},
        {"samples", "samples per sampled check"},
        {"seed", "random seed"},
        {"format", "json or markdown"},
        {"findings", "warn or fail: how findings affect the exit code"},
        {"timing", "true or false: record per-row timings"},
        {"budget", "maximum residues enumerated by one check"},
        {"cosets", "number of random cosets to decompose"},
    };
    for (const auto& [name, help] : flags) {
      app->add_option_function<std::string>(
          "--" + name, [this, key = name](const std::string& v) { values[key] = v; }, help);
    }
    if (suite_flag) app->add_option("--suite", suites, "suite names (repeatable or comma list)")->delimiter(',');
    app->add_option("--config", config_file, "key=value configuration file; flags take precedence");
    app->add_option("--output,-o", output, "write the report here instead of stdout");
  }

  dualinv::SuiteConfig build() const {
    dualinv::SuiteConfig config;
    if (!config_file.empty()) dualinv::apply_config_text(config, read_file(config_file));
    for (const auto& [k, v] : values) dualinv::apply_config_entry(config, k, v);
    if (!suites.empty()) config.suites = suites;
    if (!groups.empty()) config.finite_targets = groups;
    return config;
  }
};

int run_report(const dualinv::SuiteConfig& config, const std::string& output) {
  dualinv::Report report = dualinv::run_suite(config);
  write_output(dualinv::emit_report(report, config.format), output);
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of dualizing involutions on classical groups"};
  app.require_subcommand(1);

  Overrides verify_opts;
  auto* verify = app.add_subcommand("verify", "run suites: " + [] {
    std::string s;
    for (const auto& n : dualinv::kSuiteNames) s += n + ", ";
    return s + "all";
  }());
  std::vector<std::string> positional_suites;
  verify->add_option("suites", positional_suites, "suites to run");
  verify_opts.add_flags(verify, true);

  Overrides decompose_opts;
  auto* decompose = app.add_subcommand("decompose", "decompose random cosets b c(p^k L) mod p^N");
  decompose_opts.add_flags(decompose, false);

  Overrides finite_opts;
  auto* finite = app.add_subcommand("finite-dual", "class-inversion check on finite groups");
  finite->add_option("--group", finite_opts.groups, "targets such as Sp2(3) or U2(9)")->delimiter(',');
  finite_opts.add_flags(finite, false);

  std::string replay_file;
  auto* replay = app.add_subcommand("replay", "re-run a counterexample payload (JSON)");
  replay->add_option("payload", replay_file, "file holding the payload, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*verify) {
      dualinv::SuiteConfig config = verify_opts.build();
      if (!positional_suites.empty()) config.suites = positional_suites;
      if (config.suites.empty()) throw dualinv::ConfigError("no suite selected");
      return run_report(config, verify_opts.output);
    }
    if (*decompose) {
      dualinv::SuiteConfig config = decompose_opts.build();
      config.suites = {"decomposition"};
      return run_report(config, decompose_opts.output);
    }
    if (*finite) {
      dualinv::SuiteConfig config = finite_opts.build();
      config.suites = {"finite-duality"};
      return run_report(config, finite_opts.output);
    }
    if (*replay) {
      auto c = dualinv::counterexample_from_json(read_file(replay_file));
      auto r = dualinv::replay(c);
      std::cout << (r.reproduced ? "reproduced: " : "not reproduced: ") << r.detail << "\n";
      return r.reproduced ? 1 : 0;
    }
  } catch (const dualinv::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const dualinv::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const dualinv::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kConfigExit;
  }
  return 0;
}
