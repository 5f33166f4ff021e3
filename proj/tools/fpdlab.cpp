#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fpd/error.hpp"
#include "fpd/lab.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fpd::InvalidArgument("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw fpd::InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fpdlab: seeded experiments on random quotients of free products"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the experiment catalog");

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  std::string config_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string replay;
  bool quiet = false;
  run->add_option("-c,--config", config_path, "Key-value config file")->required()->check(CLI::ExistingFile);
  auto* out_opt = run->add_option("-o,--output-dir", output_dir, "Directory for results.csv and summary.json");
  auto* seed_opt = run->add_option("-s,--seed", seed, "Override the master seed");
  auto* workers_opt = run->add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--replay", replay, "Run one trial POINT:TRIAL and print its CSV row");
  run->add_flag("-q,--quiet", quiet, "Do not print the summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& e : fpd::list_experiments()) {
        std::cout << e.name << "\n  " << e.claim << "\n  columns:";
        for (const auto& c : e.columns) std::cout << ' ' << c;
        std::cout << "\n  success: " << e.success_column << '\n';
      }
      return 0;
    }
    auto config = fpd::ExperimentConfig::parse(read_file(config_path));
    if (*out_opt) config.output_dir = output_dir;
    if (*seed_opt) config.seed = seed;
    if (*workers_opt) config.workers = workers;
    config.validate();

    if (!replay.empty()) {
      const auto colon = replay.find(':');
      if (colon == std::string::npos) throw fpd::InvalidArgument("--replay expects POINT:TRIAL");
      const int point = std::stoi(replay.substr(0, colon));
      const int trial = std::stoi(replay.substr(colon + 1));
      std::cout << fpd::write_csv(config, {fpd::run_trial(config, point, trial)});
      return 0;
    }

    const auto records = fpd::run(config);
    const auto summary = fpd::summarize(config, records);
    std::filesystem::create_directories(config.output_dir);
    const std::filesystem::path dir(config.output_dir);
    write_file(dir / "results.csv", fpd::write_csv(config, records));
    const std::string json = fpd::write_summary_json(config, summary);
    write_file(dir / "summary.json", json);
    if (!quiet) std::cout << json;
    return 0;
  } catch (const fpd::Error& e) {
    std::cerr << "fpdlab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fpdlab: " << e.what() << '\n';
    return 2;
  }
}
