// hallcrit: command-line front end over the hallcrit library.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hallcrit/cli.hpp"

int main(int argc, char** argv) {
  using hallcrit::cli::Request;
  Request req;

  CLI::App app{"Commutator semi-lattices, nilpotency and Hall's criterion on finite groups and rings"};
  app.add_option("command", req.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(hallcrit::cli::commands()));
  app.add_option("--input,-i", req.input, "Input document (path, or catalog:NAME)");
  app.add_option("--subobject,-s", req.subobjects, "Subgroup or submodule document (repeatable)");
  app.add_option("--hom", req.hom, "Homomorphism document");
  app.add_option("--codomain", req.codomain, "Codomain document for --hom");
  app.add_option("--quotient-by", req.quotient_by, "Use p: E -> E/[N,N]")->check(CLI::IsMember({"commutator"}));
  app.add_option("--max-steps", req.max_steps, "Lower central series step cap")->capture_default_str();
  app.add_option("--format", req.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--seed", req.seed, "Seed for sampled checks")->capture_default_str();
  app.add_option("--sample", req.sample, "Random triples to check above the exhaustive cap");
  app.add_option("--cap", req.cap, "Largest carrier checked exhaustively")->capture_default_str();
  app.add_option("--k-max", req.k_max, "Largest k for bounds-verify")->capture_default_str();
  app.add_flag("--timing", req.timing, "Include wall-clock time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const char* dir = std::getenv("HALLCRIT_CATALOG_DIR")) req.catalog_dir = dir;

  auto report = hallcrit::cli::run_command(req);
  std::cout << report.rendered;
  if (report.body.contains("error")) std::cerr << "error: " << report.body["error"]["message"].get<std::string>() << '\n';
  return report.exit_code;
}
