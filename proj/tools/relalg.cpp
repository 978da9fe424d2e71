#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "relalg/commands.hpp"
#include "relalg/structure_file.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Weakly associative relation algebras: classification and representation checks"};
  app.require_subcommand(1);
  std::string report_path;
  bool timings = false;
  app.add_option("--report", report_path, "Write the report to this file instead of stdout");
  app.add_flag("--timings", timings, "Append per-stage wall-clock timings");

  std::string file;
  relalg::CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "Classify a structure file");
  check->add_option("file", file, "Structure file")->required();
  check->add_flag("--elements-mode", check_opt.elements_mode, "Quantify axioms over all elements");
  check->add_flag("--laws", check_opt.laws, "Run the elementary law suite");

  relalg::RepresentOptions rep_opt;
  auto* represent = app.add_subcommand("represent", "Run both representation pipelines on a WA");
  represent->add_option("file", file, "Structure file")->required();
  represent->add_option("--passes", rep_opt.passes, "Saturation passes for the labelling pipeline")->capture_default_str();
  represent->add_option("--depth", rep_opt.depth, "Trail length bound L")->capture_default_str()->check(CLI::PositiveNumber);
  represent->add_option("--seed", rep_opt.seed, "Seed for sampled subsets and random trails")->capture_default_str();

  relalg::EnumerateOptions en_opt;
  std::size_t sample = 0;
  std::size_t depth = 0;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate and classify all structures with N atoms");
  enumerate->add_option("--atoms", en_opt.atoms, "Atom count N")->required()->check(CLI::Range(1, 4));
  enumerate->add_flag("--pipeline", en_opt.pipeline, "Run the suitable, cylindric and reduct stages on each WA");
  enumerate->add_flag("--classify-only", en_opt.classify_only, "Only classify; skip law suite and oracles");
  enumerate->add_flag("--up-to-iso", en_opt.up_to_iso, "Also count isomorphism classes");
  auto* sample_opt = enumerate->add_option("--sample", sample, "Classify K uniformly drawn structures instead of all");
  auto* depth_opt = enumerate->add_option("--depth", depth, "Trail bound for the bounded pipeline stages")->check(CLI::PositiveNumber);
  enumerate->add_option("--seed", en_opt.seed, "Seed for --sample and pipeline sampling")->capture_default_str();
  enumerate->add_option("--threads", en_opt.threads, "Worker threads (0 = hardware)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    relalg::Report rep;
    if (*check) {
      rep = relalg::cmd_check(relalg::load_structure(file), check_opt);
    } else if (*represent) {
      rep = relalg::cmd_represent(relalg::load_structure(file), rep_opt);
    } else {
      if (*sample_opt) en_opt.sample = sample;
      if (*depth_opt) en_opt.depth = depth;
      rep = relalg::cmd_enumerate(en_opt);
    }
    if (report_path.empty()) {
      rep.write(std::cout, timings);
    } else {
      std::ofstream out(report_path);
      if (!out) throw relalg::Error("cannot write " + report_path);
      rep.write(out, timings);
    }
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
