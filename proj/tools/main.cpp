#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "jobs.hpp"

namespace {

constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace dqkit;
  CLI::App app{"Deformation quantization and Kahler geometry checks"};
  app.require_subcommand(1);

  std::string job_path, out_path;
  std::uint64_t seed = 0;
  int order = 0, degree = 0;
  std::vector<CLI::App*> subs;
  for (const char* name : cli::kSubcommands) {
    CLI::App* s = app.add_subcommand(name, std::string("run a ") + name + " job");
    s->add_option("--job", job_path, "job file (JSON); defaults apply when omitted")->check(CLI::ExistingFile);
    s->add_option("--seed", seed, "seed for randomized corpora (recorded in the report)");
    s->add_option("--out", out_path, "report file; stdout when omitted");
    s->add_option("--order", order, "nu order (star, trace-check, close) or epsilon order (kahler-check)");
    s->add_option("--degree", degree, "Weyl degree budget D (star, trace-check, close) or profile degree (futaki)");
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  CLI::App* chosen = nullptr;
  for (auto* s : subs)
    if (s->parsed()) chosen = s;

  cli::Overrides o;
  if (chosen->count("--seed")) o.seed = seed;
  if (chosen->count("--order")) o.order = order;
  if (chosen->count("--degree")) o.degree = degree;

  try {
    io::json job = job_path.empty() ? io::json::object() : io::read_file(job_path);
    auto result = cli::run_job(chosen->get_name(), job, o);
    std::string text = result.report.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out || !(out << text)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kBadInput;
      }
    }
    if (!result.passed) {
      std::cerr << chosen->get_name() << ": check failed\n";
      return kCheckFailed;
    }
    return 0;
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
