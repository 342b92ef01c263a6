#include "cli.hpp"

#include "engel/errors.hpp"
#include "engel/expmap.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>

namespace engel::cli {

namespace {

const std::map<std::string, Family> kCausal{
    {"timelike", Family::Timelike}, {"spacelike", Family::Spacelike}, {"lightlike", Family::Lightlike}};
const std::map<std::string, Format> kFormat{{"csv", Format::Csv}, {"json", Format::Json}};

void covector_flags(CLI::App* sub, RunConfig& cfg, bool with_lightlike) {
  auto causal = kCausal;
  if (!with_lightlike) causal.erase("lightlike");
  sub->add_option("--causal", cfg.causal, "causal type")->required()->transform(CLI::CheckedTransformer(causal));
  sub->add_option("--theta", cfg.theta);
  sub->add_option("--c", cfg.c);
  sub->add_option("--alpha", cfg.alpha);
  sub->add_option("--branch", cfg.branch, "+1 or -1")->check(CLI::IsMember({1, -1}));
}

void output_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--t-end", cfg.t_end)->required();
  sub->add_option("--samples", cfg.samples)->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format)->transform(CLI::CheckedTransformer(kFormat));
  sub->add_option("--out", cfg.out, "output path (default stdout)");
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw DomainError("cannot open " + cfg.out);
  f << text;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "trace" || cfg.command == "lightlike") {
    const auto rows = trace_rows(cfg);
    emit(cfg, cfg.format == Format::Csv ? format_csv(rows) : format_json(rows), out);
    return kOk;
  }
  if (cfg.command == "classify") {
    out << classify_json(cfg.covector());
    return kOk;
  }
  if (cfg.command == "maxwell") {
    out << maxwell_json(maxwell_times(cfg.covector()));
    return kOk;
  }
  const auto suites = run_validation(cfg.only, cfg.seed, cfg.tolerance);
  out << validation_json(suites, cfg.seed);
  for (const auto& s : suites) {
    if (!s.pass()) return kValidateFailure;
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sub-Lorentzian extremals on the Engel group"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* trace = app.add_subcommand("trace", "sample an extremal and write t,x1,x2,y,z,theta,c,H,E");
  covector_flags(trace, cfg, true);
  output_flags(trace, cfg);

  auto* classify_cmd = app.add_subcommand("classify", "report the stratum of a covector");
  covector_flags(classify_cmd, cfg, false);

  auto* maxwell = app.add_subcommand("maxwell", "Maxwell times and cut-time bound as JSON");
  covector_flags(maxwell, cfg, false);

  auto* validate = app.add_subcommand("validate", "run the invariant suites");
  validate->add_option("--only", cfg.only)->check(CLI::IsMember(kSuites));
  validate->add_option("--seed", cfg.seed);
  validate->add_option("--tolerance", cfg.tolerance, "replace every numeric tolerance");

  auto* lightlike = app.add_subcommand("lightlike", "sample the lightlike extremal");
  lightlike->add_option("--branch", cfg.branch)->check(CLI::IsMember({1, -1}));
  output_flags(lightlike, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "lightlike") cfg.causal = Family::Lightlike;

  try {
    return dispatch(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace engel::cli
