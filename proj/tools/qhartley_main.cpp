// Copyright 2026 The qhartley Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qhartley/cli/commands.hpp"

namespace {

void add_common(CLI::App* sub, qh::cli::CommandLine& cl) {
  sub->add_option("--config", cl.config, "run configuration (INI or JSON)")->check(CLI::ExistingFile);
  sub->add_option("--out", cl.out, "output directory");
  sub->add_option("--seed", cl.seed, "seed override");
}

const char* describe(std::string_view name) {
  if (name == "verify") return "check transforms, feature maps and gradients against dense references";
  if (name == "train") return "fit a 1D model to a target density";
  if (name == "solve-de") return "fit a 1D model to the solution of a differential equation";
  if (name == "train2d") return "fit a bivariate model to a binormal density";
  if (name == "sample") return "sample a trained 1D Hartley model";
  if (name == "sample2d") return "sample a trained bivariate model";
  if (name == "compare") return "Hartley/HERA versus Fourier/HEA rotation schemes";
  if (name == "overlap-map") return "feature-state overlaps on a fractional grid";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qhartley: Hartley-basis quantum generative models on a statevector simulator"};
  app.require_subcommand(1);
  qh::cli::CommandLine cl;

  for (std::string_view name : qh::cli::command_names()) {
    auto* sub = app.add_subcommand(std::string(name), describe(name));
    add_common(sub, cl);
    if (name == "verify" || name == "compare") {
      sub->add_option("--n-min", cl.n_min, "smallest register size");
      sub->add_option("--n-max", cl.n_max, "largest register size");
    }
    if (name == "verify") sub->add_flag("--corrupt-qht", cl.corrupt_qht, "drop SqrtX^dagger (negative control)");
    if (name == "sample" || name == "sample2d") {
      sub->add_option("--shots", cl.shots, "number of shots");
      sub->add_option("--model", cl.model, "trained model JSON");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qh::cli::kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return qh::cli::run_command(command, cl, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 1;
  }
}
