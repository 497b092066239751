// lfed: command-line front end. Every command prints a JSON report.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lfed/cli.hpp"

namespace {

using lfed::cli::SessionConfig;

// Flags given on the command line; each overrides the config file.
struct Flags {
  std::optional<std::string> config;
  std::map<std::string, std::string> values;
};

void addValue(CLI::App& app, Flags& flags, const std::string& flag, const std::string& key,
              const std::string& help) {
  app.add_option_function<std::string>(
         flag, [&flags, key](const std::string& v) { flags.values[key] = v; }, help)
      ->type_name("VALUE");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with E-derivations of K[x,y]"};
  app.require_subcommand(1);
  Flags flags;
  bool timing = false;
  app.add_option("--config", flags.config, "key = value config file")->type_name("FILE");
  addValue(app, flags, "--field", "field", "cyclotomic conductor (1 for Q)");
  addValue(app, flags, "--endo", "endo", "normal form 'caseN { ... }' or 'x -> ..., y -> ...'");
  addValue(app, flags, "--f", "f", "polynomial argument");
  addValue(app, flags, "-D,--D", "D", "degree bound");
  addValue(app, flags, "--margin", "margin", "input margin for image windows");
  addValue(app, flags, "--max-dim", "max_dim", "local finiteness dimension cutoff");
  addValue(app, flags, "--max-iter", "max_iter", "local finiteness iteration cutoff");
  addValue(app, flags, "--N", "N", "weak radical window");
  addValue(app, flags, "--m-lo", "m_lo", "lowest exponent probed by mz");
  addValue(app, flags, "--m-hi", "m_hi", "highest exponent probed by mz");
  addValue(app, flags, "--gen-deg", "gen_deg", "degree of multipliers g in mz");
  addValue(app, flags, "--seed", "seed", "random seed");
  addValue(app, flags, "--trials", "trials", "random trials");
  addValue(app, flags, "--samples", "samples", "random samples for wr/mz");
  addValue(app, flags, "--r", "r", "parameter r");
  addValue(app, flags, "--s", "s", "parameter s");
  addValue(app, flags, "--p", "p", "parameter p(y)");
  addValue(app, flags, "--modulus", "modulus", "modulus h(y)");
  addValue(app, flags, "-o,--output", "output", "also write the report here");
  app.add_flag("--timing", timing, "record elapsed_ms");

  auto* delta = app.add_subcommand("delta", "apply delta = id - phi to --f")->fallthrough();
  int whichCase = 0;
  auto* verify = app.add_subcommand("verify", "per-case verification suite")->fallthrough();
  verify->add_option("--case", whichCase, "case 1..7")->required();
  std::string kind;
  auto* probe = app.add_subcommand("probe", "lf, wr, mz, idempotent, nilpotent or newton")->fallthrough();
  probe->add_option("kind", kind, "probe kind")->required();
  auto* image = app.add_subcommand("image-check", "Im delta = C + <y^s p(y^r)> on a window")->fallthrough();
  auto* classify = app.add_subcommand("classify", "match an endomorphism against the normal forms")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    SessionConfig cfg;
    if (flags.config) lfed::cli::applyConfigFile(cfg, *flags.config);
    for (const auto& [key, value] : flags.values) lfed::cli::setKey(cfg, key, value);
    if (timing) cfg.timing = true;
    lfed::cli::validateConfig(cfg);

    lfed::cli::Report report = lfed::cli::timed(cfg, [&]() {
      if (*delta) return lfed::cli::cmdDelta(cfg);
      if (*verify) return lfed::cli::cmdVerifySuite(whichCase, cfg);
      if (*probe) return lfed::cli::cmdProbe(kind, cfg);
      if (*image) return lfed::cli::cmdImageCheck(cfg);
      (void)classify;
      return lfed::cli::cmdClassify(cfg);
    });
    const std::string text = lfed::cli::toJson(report).dump(2) + "\n";
    std::cout << text;
    if (cfg.output) {
      std::ofstream out(*cfg.output);
      if (!out) throw lfed::cli::UsageError("cannot write '" + *cfg.output + "'");
      out << text;
    }
    return lfed::cli::exitCode(report);
  } catch (const lfed::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
