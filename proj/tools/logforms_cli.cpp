#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "logforms/logforms.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Logarithmic forms and singular Milnor numbers: run one job file"};
  std::string input;
  long degree_bound = 20;
  std::string order = "wdegrevlex";
  unsigned seed = 0;
  std::string output = "json";
  bool timing = false;
  app.add_option("--input", input, "job file ('-' for stdin)")->required();
  auto* bound_opt = app.add_option("--degree-bound", degree_bound, "weighted degree bound for truncated computations");
  auto* order_opt =
      app.add_option("--order", order, "monomial order for reported quotient dimensions")
          ->check(CLI::IsMember({"wdegrevlex", "lex"}));
  auto* seed_opt = app.add_option("--seed", seed, "seed for generic choices");
  app.add_option("--output", output, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", timing, "add wall-clock time to the record");
  CLI11_PARSE(app, argc, argv);

  std::stringstream buf;
  if (input == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "cannot open " << input << "\n";
      return 2;
    }
    buf << in.rdbuf();
  }

  // Flags given on the command line override the job's options line.
  auto adjust = [&](logforms::JobSpec& job) {
    if (bound_opt->count()) job.options.degree_bound = degree_bound;
    if (order_opt->count()) job.options.order = order;
    if (seed_opt->count()) job.options.seed = seed;
  };
  auto start = std::chrono::steady_clock::now();
  auto outcome = logforms::run_job_text(buf.str(), adjust);
  if (timing) {
    std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    outcome.record["timing_ms"] = ms.count();
  }
  if (output == "json") std::cout << outcome.record.dump(2) << "\n";
  else std::cout << logforms::flatten(outcome.record);
  return outcome.exit_code;
}
