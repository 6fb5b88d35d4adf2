// qbounce command-line tool.  One invocation computes one data set; the
// reproduce-figures meta-command runs every config in configs/figures.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 I/O error, 1 anything else.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "qbounce/cli_io.hpp"
#include "qbounce/errors.hpp"

#ifndef QBOUNCE_FIGURES_DIR
#define QBOUNCE_FIGURES_DIR "configs/figures"
#endif

namespace fs = std::filesystem;
using namespace qbounce;

namespace {

int run_one(const std::vector<std::string>& args) {
  const RunConfig cfg = parse_config(args);
  export_table(run(cfg), cfg, cfg.output);
  return 0;
}

int reproduce_figures(const std::vector<std::string>& args) {
  CLI::App app("qbounce reproduce-figures: regenerate every figure data set");
  std::string dir = QBOUNCE_FIGURES_DIR, out = "figures";
  std::vector<std::string> only;
  app.add_option("--figures-dir", dir, "directory of figure configs (*.cfg)");
  app.add_option("--out-dir", out, "directory for the CSV files");
  app.add_option("--only", only, "restrict to these config names (without .cfg)");
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("reproduce-figures", e.what());
  }
  std::vector<fs::path> configs;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".cfg") configs.push_back(entry.path());
  }
  if (ec) throw IoError("cannot read figure directory '" + dir + "': " + ec.message());
  std::sort(configs.begin(), configs.end());
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create '" + out + "': " + ec.message());
  for (const auto& path : configs) {
    const std::string name = path.stem().string();
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const std::string target = (fs::path(out) / (name + ".csv")).string();
    std::cerr << "[" << name << "] -> " << target << "\n";
    run_one({"--config", path.string(), "--output", target});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "-h" || args[0] == "--help") {
    std::cout << "usage: qbounce <command> [options]\n"
                 "       qbounce reproduce-figures [--figures-dir DIR] [--out-dir DIR] [--only NAME...]\n\n"
              << usage();
    return args.empty() ? 2 : 0;
  }
  if (args[0] == "--version") {
    std::cout << "qbounce " << kVersion << "\n";
    return 0;
  }
  try {
    if (args[0] == "reproduce-figures") return reproduce_figures({args.begin() + 1, args.end()});
    return run_one(args);
  } catch (const ConfigError& e) {
    std::cerr << "error [config] " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error [config] " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error [io] " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "error [numerical] " << e.what() << "\n";
    return 3;
  } catch (const QuadratureFailure& e) {
    std::cerr << "error [numerical] " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error [internal] " << e.what() << "\n";
    return 1;
  }
}
