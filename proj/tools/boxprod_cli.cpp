#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>

#include "boxprod/errors.hpp"
#include "boxprod/job.hpp"

namespace {

constexpr int kVerificationFailed = 1;
constexpr int kBadInput = 2;
constexpr int kResourceLimit = 3;

void add_job_options(CLI::App& cmd, boxprod::JobSpec& job) {
  cmd.add_option("--m-spec", job.m_spec, "M as 'degree; (1 2); ...' or JSON")->required();
  cmd.add_option("--n-spec", job.n_spec, "N as 'degree; (1 2); ...' or JSON")->required();
  cmd.add_option("--depth", job.depth, "ambient depth D")->capture_default_str();
  cmd.add_option("--margin", job.margin, "margin k")->capture_default_str();
  cmd.add_option("--seed", job.seed, "random seed")->capture_default_str();
  cmd.add_option("--battery", job.battery, "random members per property test")
      ->capture_default_str();
  cmd.add_option("--out", job.out, "output file (default: standard output)");
  cmd.add_option("--format", job.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

const std::map<std::string, std::string> kDescriptions = {
    {"analyze", "predicted verdicts with every finite check"},
    {"orbits", "vertex and edge orbit labels against brute force"},
    {"suborbits", "suborbit sizes around q"},
    {"witness", "imprimitivity and nondiscreteness witnesses"},
    {"certificate", "primitivity certificates for random vertex pairs"},
    {"quotient", "quotient graph of the vertex orbits"},
    {"export-dot", "Graphviz output for a tree or graph"},
    {"compare-wreath", "box product against the wreath product in product action"}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box products of permutation groups on biregular trees"};
  app.require_subcommand(1);
  boxprod::JobSpec job;
  for (const std::string& name : boxprod::subcommands()) {
    CLI::App* cmd = app.add_subcommand(name, kDescriptions.at(name));
    add_job_options(*cmd, job);
    if (name == "export-dot")
      cmd->add_option("target", job.target, "tree, orbital, quotient or wreath-orbital")
          ->check(CLI::IsMember({"tree", "orbital", "quotient", "wreath-orbital"}))
          ->required();
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    boxprod::JobResult result = boxprod::run_job(command, job);
    std::string text = boxprod::render(result, job);
    if (job.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(job.out, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot write " << job.out << "\n";
        return kBadInput;
      }
      file << text;
    }
    if (!result.passed) {
      std::cerr << "verification failed\n";
      return kVerificationFailed;
    }
    return 0;
  } catch (const boxprod::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
