// charvar: sampling, cover, Morse and self-test campaigns.

#include <charvar/cli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using charvar::cli::CampaignConfig;
using charvar::cli::Format;

struct Flags {
  std::string n = "3";
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CampaignConfig& c, Flags& f) {
  cmd->add_option("--count", c.count, "number of samples");
  cmd->add_option("--seed", c.seed, "campaign seed");
  cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_flag("--sorted", c.sorted, "index-ordered output (always the case)");
  cmd->add_option("--tol-unit", c.tol.unit);
  cmd->add_option("--tol-rel", c.tol.rel);
  cmd->add_option("--tol-fingerprint", c.tol.fingerprint);
  cmd->add_option("--tol-rank", c.tol.rank);
  cmd->add_option("--tol-comm", c.tol.comm);
  cmd->add_option("--tol-roundtrip", c.tol.roundtrip);
  cmd->add_option("--tol-fd", c.tol.fd);
  cmd->add_option("--tol-conjugator", c.tol.conjugator);
}

void add_k(CLI::App* cmd, CampaignConfig& c) {
  cmd->add_option_function<int>("--k", [&c](const int& k) { c.k = k; }, "number of punctures");
}

}  // namespace

int main(int argc, char** argv) {
  CampaignConfig config;
  Flags flags;
  CLI::App app{"Traceless SU(2) character varieties of punctured spheres"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "sample R(S^2,k) and label loci");
  add_common(sample, config, flags);
  add_k(sample, config);

  auto* cover = app.add_subcommand("cover", "genus-2 branched cover");
  cover->require_subcommand(1);
  for (const char* action : {"push", "extend", "roundtrip", "fiber"}) {
    auto* sub = cover->add_subcommand(action);
    add_common(sub, config, flags);
    add_k(sub, config);
    if (std::string(action) == "fiber")
      sub->add_flag("--abelian-points", config.abelian_points, "use the 16 abelian points of R(S^2,6)");
  }

  auto* morse = app.add_subcommand("morse", "Hessian certificates at the abelian points");
  add_common(morse, config, flags);
  morse->add_option("--n", flags.n, "n or a range lo..hi");
  morse->add_option("--inject-fault", config.inject_fault)->group("");

  auto* lemma = app.add_subcommand("lemma52", "solve the traceless lift equations on random inputs");
  add_common(lemma, config, flags);

  auto* link = app.add_subcommand("link-sample", "sample the link of an abelian point");
  add_common(link, config, flags);
  link->add_option("--n", flags.n, "n");
  link->add_option("--refine-radius", config.refine_radius, "project onto g = 0 at this radius (n = 3)");

  auto* selftest = app.add_subcommand("selftest", "run every invariant suite at reduced counts");
  add_common(selftest, config, flags);
  selftest->add_option("--inject-fault", config.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return charvar::cli::kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) {
    config.command = sub->get_name();
    for (auto* leaf : sub->get_subcommands()) config.subaction = leaf->get_name();
  }
  config.format = flags.format == "csv" ? Format::csv : Format::json;
  if (config.command == "morse" || config.command == "link-sample") {
    const auto range = charvar::cli::parse_range(flags.n);
    if (!range) {
      std::cerr << "usage error: --n expects an integer or lo..hi\n";
      return charvar::cli::kExitUsage;
    }
    std::tie(config.n_lo, config.n_hi) = *range;
  }
  config.threads = charvar::cli::threads_from_env();

  if (flags.out.empty()) return charvar::cli::dispatch(config, std::cout, std::cerr);
  std::ofstream file(flags.out);
  if (!file) {
    std::cerr << "usage error: cannot open " << flags.out << '\n';
    return charvar::cli::kExitUsage;
  }
  return charvar::cli::dispatch(config, file, std::cerr);
}
