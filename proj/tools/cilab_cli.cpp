#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cilab/cilab.h"

namespace {

using nlohmann::json;

/// Flags given on the command line, keyed by config field. Only these
/// override the config file.
struct Flags {
  std::string configFile;
  int n = 0;
  std::string type, kind, curveKind, fixture, curve, output, gates;
  std::uint32_t p = 0, q = 0, samples = 0;
  std::uint64_t seed = 0, budget = 0;
  unsigned threads = 0;
  int injectFault = 0;
  bool fermat = false, wallclock = false;
};

struct Binding {
  CLI::Option* option;
  std::string key;
  std::function<json()> value;
};

class Command {
 public:
  Command(CLI::App& app, const std::string& name, const std::string& help)
      : sub_(app.add_subcommand(name, help)), name_(name) {
    sub_->add_option("--config", flags_.configFile, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);
    bind(sub_->add_option("--output", flags_.output, "write the report here instead of stdout"), "output",
         [this] { return json(flags_.output); });
    bind(sub_->add_option("--threads", flags_.threads, "worker threads (default: CILAB_THREADS or 1)"), "threads",
         [this] { return json(flags_.threads); });
    bind(sub_->add_option("--budget", flags_.budget, "work cap; 0 refuses all work"), "budget",
         [this] { return json(flags_.budget); });
    bind(sub_->add_option("--seed", flags_.seed, "64-bit seed"), "seed", [this] { return json(flags_.seed); });
    bind(sub_->add_flag("--wallclock", flags_.wallclock, "record elapsed milliseconds in the report"), "wallclock",
         [this] { return json(flags_.wallclock); });
  }

  Command& n() {
    bind(sub_->add_option("--n", flags_.n, "ambient dimension of P^n"), "n", [this] { return json(flags_.n); });
    return *this;
  }
  Command& type() {
    bind(sub_->add_option("--type", flags_.type, "degrees d_1,...,d_c, e.g. 2,3"), "degrees",
         [this] { return json(flags_.type); });
    return *this;
  }
  Command& p() {
    bind(sub_->add_option("--p", flags_.p, "prime field for sampling (default 32003)"), "p",
         [this] { return json(flags_.p); });
    return *this;
  }
  Command& q() {
    bind(sub_->add_option("--q", flags_.q, "prime field size for exhaustive runs (default 3)"), "q",
         [this] { return json(flags_.q); });
    return *this;
  }
  Command& samples() {
    bind(sub_->add_option("--samples", flags_.samples, "samples per curve kind (default 100)"), "samples",
         [this] { return json(flags_.samples); });
    return *this;
  }
  Command& curveKind() {
    bind(sub_->add_option("--curve-kind", flags_.curveKind, "line, smooth, line-pair, double-line (or all)"),
         "curveKind", [this] { return json(flags_.curveKind); });
    return *this;
  }
  Command& kind() {
    bind(sub_->add_option("--kind", flags_.kind,
                          "line-m, smooth-m2, smooth-m4, nodal-m1, nodal-m2, double-m1, double-m2"),
         "kind", [this] { return json(flags_.kind); });
    return *this;
  }
  Command& fixture() {
    bind(sub_->add_option("--fixture", flags_.fixture, "complete intersection fixture (JSON)")
             ->check(CLI::ExistingFile),
         "fixture", [this] { return json(flags_.fixture); });
    return *this;
  }
  Command& fermat() {
    bind(sub_->add_flag("--fermat", flags_.fermat, "use x_0^d + ... + x_n^d"), "fermat",
         [this] { return json(flags_.fermat); });
    return *this;
  }
  Command& curve() {
    bind(sub_->add_option("--curve", flags_.curve, "curve as JSON text, or @path to a JSON file"), "curve",
         [this] { return readCurve(flags_.curve); });
    return *this;
  }
  Command& gates() {
    bind(sub_->add_option("--gates", flags_.gates, "comma-separated gate ids (default: all)"), "gates",
         [this] { return json(flags_.gates); });
    auto* opt = sub_->add_option("--inject-fault", flags_.injectFault, "test only: corrupt the fixture of a gate");
    opt->group("");
    bind(opt, "injectFault", [this] { return json(flags_.injectFault); });
    return *this;
  }

  bool parsed() const { return sub_->parsed(); }
  const std::string& name() const { return name_; }
  const std::string& configFile() const { return flags_.configFile; }

  std::map<std::string, json> explicitValues() const {
    std::map<std::string, json> out;
    for (const auto& b : bindings_)
      if (b.option->count() > 0) out[b.key] = b.value();
    return out;
  }

 private:
  void bind(CLI::Option* option, std::string key, std::function<json()> value) {
    bindings_.push_back({option, std::move(key), std::move(value)});
  }

  static json readCurve(const std::string& text) {
    if (!text.empty() && text.front() == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw CLI::ValidationError("--curve", "cannot read " + text.substr(1));
      std::stringstream ss;
      ss << in.rdbuf();
      return json::parse(ss.str());
    }
    return json::parse(text);
  }

  CLI::App* sub_;
  std::string name_;
  Flags flags_;
  std::vector<Binding> bindings_;
};

int runParsed(const Command& cmd) {
  cilab_config* config = nullptr;
  if (cilab_config_new(cmd.name().c_str(), &config) != CILAB_OK) {
    std::cerr << "cilab: " << cilab_last_error() << "\n";
    return CILAB_EXIT_FAULT;
  }
  const auto fail = [&](const char* what) {
    std::cerr << "cilab: " << what << ": " << cilab_last_error() << "\n";
    cilab_config_free(config);
    return CILAB_EXIT_FAULT;
  };
  if (!cmd.configFile().empty() && cilab_config_load_file(config, cmd.configFile().c_str()) != CILAB_OK)
    return fail("config file");
  for (const auto& [key, value] : cmd.explicitValues())
    if (cilab_config_set(config, key.c_str(), value.dump().c_str()) != CILAB_OK) return fail(key.c_str());

  cilab_report* report = nullptr;
  if (cilab_run(config, &report) != CILAB_OK) return fail("run");
  cilab_config_free(config);

  const int code = cilab_report_exit_code(report);
  const auto echoed = json::parse(cilab_report_json(report));
  const auto configIt = echoed.find("config");
  const bool toFile = configIt != echoed.end() && configIt->is_object() &&
                      !configIt->value("output", std::string()).empty();
  if (!toFile) std::cout << cilab_report_json(report);
  if (echoed.contains("error")) std::cerr << "cilab: " << echoed["error"].get<std::string>() << "\n";
  cilab_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cilab: lines and conics on complete intersections"};
  app.set_version_flag("--version", std::string(cilab_version()) + " (" + cilab_conventions() + ")");
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Command>> commands;
  const auto add = [&](const std::string& name, const std::string& help) -> Command& {
    commands.push_back(std::make_unique<Command>(app, name, help));
    return *commands.back();
  };
  add("expected-dims", "expected dimensions and emptiness ranges of a type").n().type();
  add("smoothness-sample", "h1 of normal bundles over random pairs (C, X) through C")
      .n().type().p().samples().curveKind();
  add("lemma-scan", "exhaustive multiplication-map dichotomy scan over F_q").kind().type().q();
  add("enumerate-lines", "every F_q-line on X with its normal bundle cohomology").n().type().q().fermat().fixture();
  add("enumerate-conics", "plane-by-plane conic census over F_q").n().type().q().fermat().fixture();
  add("count-lines", "number of lines via Schubert calculus").n().type();
  add("count-conics", "number of conics via the conic bundle pushforward").n().type();
  add("analyze-curve", "normal bundle, rank and Jacobian of one curve on X")
      .n().type().p().curveKind().curve().fixture();
  add("verify", "run the acceptance gates").gates();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : CILAB_EXIT_FAULT;
  }
  for (const auto& cmd : commands) {
    if (!cmd->parsed()) continue;
    try {
      return runParsed(*cmd);
    } catch (const std::exception& e) {
      std::cerr << "cilab: " << e.what() << "\n";
      return CILAB_EXIT_FAULT;
    }
  }
  return CILAB_EXIT_FAULT;
}
