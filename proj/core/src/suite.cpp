#include "dualinv/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include "json.hpp"
#include <sstream>

#include "dualinv/finite_group.hpp"
#include "dualinv/lattice.hpp"
#include "dualinv/valuation.hpp"

namespace dualinv {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e18) return std::to_string(static_cast<long long>(v));
  std::ostringstream s;
  s << v;
  return s.str();
}

template <class T>
T parse_unsigned(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (value.empty() || value[0] == '-') throw std::invalid_argument(value);
    unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw ConfigError(key + " expects a non-negative integer, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + " expects an integer, got '" + value + "'");
  }
}

bool needs_levels(const std::vector<std::string>& suites) {
  return std::any_of(suites.begin(), suites.end(),
                     [](const std::string& s) { return s == "lattice" || s == "decomposition"; });
}

bool needs_space(const std::vector<std::string>& suites) {
  return std::any_of(suites.begin(), suites.end(),
                     [](const std::string& s) { return s != "finite-duality"; });
}

ExactSpace space_for(const SuiteConfig& c) {
  Family family = parse_family(c.family);
  if (c.ext != "auto" && c.ext != "split" && c.ext != "inert") {
    throw ConfigError("ext must be auto, split or inert");
  }
  if (c.ext != "auto" && (c.ext == "inert") != family_is_inert(family)) {
    throw ConfigError("family " + c.family + " lives over the " +
                      (family_is_inert(family) ? "inert" : "split") + " extension");
  }
  return standard_space(family, c.dim, c.prime);
}

// Size of varpi^k curly-L mod p^N.
double level_estimate(const ExactSpace& space, int level, int precision) {
  const double rank = static_cast<double>(lie_lattice(space).rank());
  return std::pow(static_cast<double>(space.ring.p), rank * (precision - level));
}

// Matrices mod p^N that an exhaustive group scan visits.
double group_scan_estimate(const ExactSpace& space, int precision) {
  const double ring = std::pow(static_cast<double>(space.ring.p), precision * space.ring.degree());
  return std::pow(ring, static_cast<double>(space.dim * space.dim));
}

CheckRow make_row(std::string suite, std::string name) {
  CheckRow row;
  row.suite = std::move(suite);
  row.name = std::move(name);
  return row;
}

double finite_estimate(const FiniteTarget& t) {
  const bool unitary = t.family == "U" || t.family == "GU";
  const double field = std::pow(static_cast<double>(t.q), unitary ? 2.0 : 1.0);
  return std::pow(field, static_cast<double>(t.n * t.n));
}

class Runner {
 public:
  explicit Runner(const SuiteConfig& c) : config_(c) {}

  Report run() {
    report_.config = config_;
    const auto suites = expand_suites(config_.suites);
    if (needs_space(suites)) {
      env_.emplace(CheckEnv{space_for(config_), config_.precision, config_.level, config_.budget});
    }
    for (const auto& s : suites) {
      if (s == "identity" || s == "hypothesis") {
        sampled(s);
        if (s == "hypothesis") theta_lattice_equality();
      } else if (s == "cayley") {
        sampled(s);
        fiber_buckets();
      } else if (s == "lattice") {
        sampled(s);
        exhaustive("lattice", "cayley-level", [&] { return run_cayley_level(*env_); });
        exhaustive("lattice", "congruence-closure", [&] { return run_congruence_closure(*env_); });
      } else if (s == "decomposition") {
        Sampler sampler(config_.seed ^ fnv1a("decomposition"));
        exhaustive("decomposition", "decomposition",
                   [&] { return run_decompositions(*env_, sampler, config_.cosets); });
      } else if (s == "finite-duality") {
        for (const auto& t : config_.finite_targets) {
          exhaustive("finite-duality", "class-inversion " + t,
                     [&] { return run_class_inversion(t, config_.budget); }, Status::finding);
        }
      }
    }
    return std::move(report_);
  }

 private:
  template <class F>
  std::optional<double> timed(F&& f) {
    if (!config_.timing) {
      f();
      return std::nullopt;
    }
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  void sampled(const std::string& suite) {
    for (const auto& check : sampled_checks()) {
      if (check.suite != suite || !check.applies(env_->space)) continue;
      CheckRow row = make_row(suite, check.name);
      row.millis = timed([&] {
        Sampler sampler(config_.seed ^ fnv1a(check.name));
        for (std::size_t i = 0; i < config_.samples; ++i) {
          Inputs in = check.sample(sampler, *env_);
          std::optional<std::string> why;
          try {
            why = check.verify(*env_, in);
          } catch (const DomainError& e) {
            why = std::string("domain error: ") + e.what();
          }
          ++row.count;
          if (why) {
            row.status = Status::fail;
            row.detail = *why;
            Counterexample c;
            c.check = check.name;
            c.family = to_string(env_->space.family);
            c.dim = env_->space.dim;
            c.prime = env_->space.ring.p;
            c.precision = env_->precision;
            c.level = env_->level;
            c.inputs = std::move(in);
            row.counterexample = std::move(c);
            return;
          }
        }
        row.detail = std::to_string(row.count) + " samples hold exactly";
      });
      report_.rows.push_back(std::move(row));
    }
  }

  void theta_lattice_equality() {
    CheckRow row = make_row("hypothesis", "theta-lattice-equality");
    row.millis = timed([&] {
      const auto& sp = env_->space;
      LatticeBasis lat = lie_lattice(sp);
      row.count = 1;
      if (theta_lattice(sp, lat) == lat) {
        row.detail = "theta curly-L = curly-L (rank " + std::to_string(lat.rank()) + ")";
      } else {
        row.status = Status::fail;
        row.detail = "theta curly-L differs from curly-L";
        Counterexample c;
        c.check = "theta-lattice-equality";
        c.family = to_string(sp.family);
        c.dim = sp.dim;
        c.prime = sp.ring.p;
        row.counterexample = c;
      }
    });
    report_.rows.push_back(std::move(row));
  }

  void fiber_buckets() {
    const double estimate = group_scan_estimate(env_->space, env_->precision);
    if (estimate > config_.budget) {
      report_.notes.push_back("fiber-bucket skipped: group scan of " + format_number(estimate) +
                              " matrices exceeds the budget");
      return;
    }
    exhaustive("cayley", "fiber-bucket", [&] { return run_fiber_buckets(*env_); });
  }

  void exhaustive(const std::string& suite, const std::string& name,
                  const std::function<ExhaustiveOutcome()>& body, Status on_failure = Status::fail) {
    CheckRow row = make_row(suite, name);
    ExhaustiveOutcome out;
    row.millis = timed([&] { out = body(); });
    row.count = out.count;
    row.detail = out.detail;
    if (!out.failures.empty()) {
      row.status = on_failure;
      row.counterexample = out.failures.front();
    }
    report_.rows.push_back(std::move(row));
  }

  const SuiteConfig& config_;
  std::optional<CheckEnv> env_;
  Report report_;
};

json counterexample_json(const Counterexample& c) { return json::parse(to_json_text(c)); }

json row_json(const CheckRow& r) {
  json j;
  j["suite"] = r.suite;
  j["name"] = r.name;
  j["status"] = to_string(r.status);
  j["count"] = r.count;
  j["detail"] = r.detail;
  if (r.counterexample) j["counterexample"] = counterexample_json(*r.counterexample);
  if (r.millis) j["millis"] = *r.millis;
  return j;
}

std::string markdown(const Report& report) {
  std::ostringstream s;
  s << "# dualinv report\n\n";
  s << "schema_version: " << report.schema_version << "\n\n";
  s << "| parameter | value |\n|---|---|\n";
  for (const auto& [k, v] : config_entries(report.config)) s << "| " << k << " | " << v << " |\n";
  s << "\n| suite | check | status | count | detail |";
  const bool timing = report.config.timing;
  s << (timing ? " ms |\n|---|---|---|---|---|---|\n" : "\n|---|---|---|---|---|\n");
  for (const auto& r : report.rows) {
    s << "| " << r.suite << " | " << r.name << " | " << to_string(r.status) << " | " << r.count
      << " | " << r.detail << " |";
    if (timing) s << " " << (r.millis ? format_number(std::round(*r.millis)) : "") << " |";
    s << "\n";
  }
  s << "\npass " << report.count(Status::pass) << ", fail " << report.count(Status::fail)
    << ", finding " << report.count(Status::finding) << "\n";
  bool header = false;
  for (const auto& r : report.rows) {
    if (!r.counterexample) continue;
    if (!header) s << "\n## Counterexamples\n";
    header = true;
    s << "\n" << r.name << ":\n\n```json\n" << to_json_text(*r.counterexample) << "\n```\n";
  }
  if (!report.notes.empty()) {
    s << "\n## Notes\n\n";
    for (const auto& n : report.notes) s << "- " << n << "\n";
  }
  return s.str();
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::finding: return "finding";
  }
  return "fail";
}

std::vector<std::string> expand_suites(const std::vector<std::string>& names) {
  std::vector<std::string> wanted;
  for (const auto& n : names) {
    if (n == "all") {
      wanted = kSuiteNames;
      continue;
    }
    if (std::find(kSuiteNames.begin(), kSuiteNames.end(), n) == kSuiteNames.end()) {
      throw ConfigError("unknown suite '" + n + "' (expected one of " + join(kSuiteNames, ", ") +
                        ", all)");
    }
    if (std::find(wanted.begin(), wanted.end(), n) == wanted.end()) wanted.push_back(n);
  }
  std::vector<std::string> ordered;
  for (const auto& s : kSuiteNames) {
    if (std::find(wanted.begin(), wanted.end(), s) != wanted.end()) ordered.push_back(s);
  }
  return ordered;
}

void validate_config(const SuiteConfig& c) {
  const auto suites = expand_suites(c.suites);
  if (c.format != "json" && c.format != "markdown") {
    throw ConfigError("format must be json or markdown");
  }
  if (!(c.budget > 0)) throw ConfigError("budget must be positive");
  if (c.precision < 1) throw ConfigError("precision must be at least 1");
  if (c.level < 1 || c.level >= c.precision) {
    throw ConfigError("level k must satisfy 1 <= k < N (k=" + std::to_string(c.level) +
                      ", N=" + std::to_string(c.precision) + ")");
  }
  if (needs_space(suites)) {
    if (c.dim < 1) throw ConfigError("dim must be positive");
    try {
      require_odd_prime(c.prime);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    ExactSpace space = [&] {
      try {
        return space_for(c);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError(std::string("cannot build the space: ") + e.what());
      }
    }();
    if (needs_levels(suites)) {
      const double estimate = level_estimate(space, 0, c.precision);
      if (estimate > c.budget) {
        throw BudgetError("curly-L mod p^N has " + format_number(estimate) +
                              " residues, over the budget of " + format_number(c.budget),
                          estimate);
      }
    }
  }
  if (std::find(suites.begin(), suites.end(), "decomposition") != suites.end() && c.cosets == 0) {
    throw ConfigError("cosets must be positive");
  }
  if (std::find(suites.begin(), suites.end(), "finite-duality") != suites.end()) {
    for (const auto& t : c.finite_targets) {
      FiniteTarget target = parse_finite_target(t);
      try {
        require_odd_prime(target.q);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(t + ": " + e.what());
      }
      const double estimate = finite_estimate(target);
      if (estimate > 64 * c.budget) {
        throw BudgetError(t + " needs a scan of " + format_number(estimate) + " matrices", estimate);
      }
    }
  }
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const CheckRow& r) { return r.status == s; }));
}

int Report::exit_code() const {
  if (count(Status::fail) > 0) return 1;
  if (config.findings == FindingPolicy::fail && count(Status::finding) > 0) return 1;
  return 0;
}

Report run_suite(const SuiteConfig& config) {
  validate_config(config);
  return Runner(config).run();
}

std::string emit_report(const Report& report, const std::string& format) {
  if (format == "markdown") return markdown(report);
  json j;
  j["schema_version"] = report.schema_version;
  j["suites"] = expand_suites(report.config.suites);
  json params = json::object();
  for (const auto& [k, v] : config_entries(report.config)) params[k] = v;
  j["parameters"] = params;
  j["rows"] = json::array();
  for (const auto& r : report.rows) j["rows"].push_back(row_json(r));
  j["summary"] = {{"pass", report.count(Status::pass)},
                  {"fail", report.count(Status::fail)},
                  {"finding", report.count(Status::finding)},
                  {"total", report.rows.size()}};
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> config_entries(const SuiteConfig& c) {
  return {{"family", c.family},
          {"dim", std::to_string(c.dim)},
          {"prime", std::to_string(c.prime)},
          {"ext", c.ext},
          {"precision", std::to_string(c.precision)},
          {"level", std::to_string(c.level)},
          {"samples", std::to_string(c.samples)},
          {"seed", std::to_string(c.seed)},
          {"suite", join(c.suites, ",")},
          {"format", c.format},
          {"findings", c.findings == FindingPolicy::fail ? "fail" : "warn"},
          {"timing", c.timing ? "true" : "false"},
          {"budget", format_number(c.budget)},
          {"cosets", std::to_string(c.cosets)},
          {"finite", join(c.finite_targets, ",")}};
}

void apply_config_entry(SuiteConfig& c, const std::string& key, const std::string& value) {
  if (key == "family") {
    parse_family(value);
    c.family = value;
  } else if (key == "dim") {
    c.dim = parse_unsigned<std::size_t>(key, value);
  } else if (key == "prime") {
    c.prime = parse_unsigned<long>(key, value);
  } else if (key == "ext") {
    c.ext = value;
  } else if (key == "precision") {
    c.precision = parse_int(key, value);
  } else if (key == "level") {
    c.level = parse_int(key, value);
  } else if (key == "samples") {
    c.samples = parse_unsigned<std::size_t>(key, value);
  } else if (key == "seed") {
    c.seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "suite" || key == "suites") {
    c.suites = split_list(value);
  } else if (key == "format") {
    c.format = value;
  } else if (key == "findings") {
    if (value != "warn" && value != "fail") throw ConfigError("findings must be warn or fail");
    c.findings = value == "fail" ? FindingPolicy::fail : FindingPolicy::warn;
  } else if (key == "timing") {
    if (value != "true" && value != "false") throw ConfigError("timing must be true or false");
    c.timing = value == "true";
  } else if (key == "budget") {
    try {
      c.budget = std::stod(value);
    } catch (const std::exception&) {
      throw ConfigError("budget expects a number");
    }
  } else if (key == "cosets") {
    c.cosets = parse_unsigned<std::size_t>(key, value);
  } else if (key == "finite") {
    c.finite_targets = split_list(value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void apply_config_text(SuiteConfig& c, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key=value");
    }
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    apply_config_entry(c, key, value);
  }
}

}  // namespace dualinv
