#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "stfgacn/common.hpp"

namespace {

using stfgacn::cli::CommonArgs;

void add_common(CLI::App* cmd, CommonArgs& common, bool out_required = true) {
  cmd->add_option("--config", common.config_path, "JSON config file");
  cmd->add_option("--seed", common.seed, "Master seed");
  auto* out = cmd->add_option("--out", common.out, "Output directory");
  if (out_required) out->required();
  cmd->add_option("--scale", common.scale, "desk or paper sizing")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--jobs", common.jobs, "Parallel jobs (default 1, reproducible)");
  cmd->add_flag("--force", common.force, "Allow writing into a non-empty output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous radar-network RCS simulation and aircraft classification"};
  app.require_subcommand(1);

  stfgacn::cli::SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand("simulate", "Generate an RCS dataset");
  add_common(simulate, simulate_args.common);
  simulate->add_option("--count-per-class", simulate_args.count_per_class,
                       "Graph samples per aircraft class");
  simulate->add_option("--snr", simulate_args.snr_text, "SNR in dB, or 'clean'");

  stfgacn::cli::TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a classifier variant");
  add_common(train, train_args.common);
  train->add_option("--data", train_args.data_dir, "Dataset directory")->required();
  train->add_option("--variant", train_args.variant, "Model variant (default STFGACN-2F)");
  train->add_option("--epochs", train_args.epochs, "Epoch cap");
  train->add_option("--hidden", train_args.hidden, "Hidden width");
  train->add_option("--batch-size", train_args.batch_size, "Mini-batch size");
  train->add_option("--lr", train_args.learning_rate, "Initial learning rate");
  train->add_option("--split-seed", train_args.split_seed, "Split shuffle seed");
  train->add_option("--radar", train_args.radar_index, "Radar row for single-radar variants");
  train->add_flag("--init-zero", train_args.init_zero,
                  "Write an all-zero checkpoint without training");

  stfgacn::cli::EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  add_common(eval, eval_args.common);
  eval->add_option("--checkpoint", eval_args.checkpoint, "Checkpoint file")->required();
  eval->add_option("--data", eval_args.data_dir, "Dataset directory")->required();
  eval->add_option("--split", eval_args.split, "train|test|validation|all|full (default test)");
  eval->add_option("--split-manifest", eval_args.split_manifest,
                   "Split manifest path (default: next to the checkpoint)");

  stfgacn::cli::SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Accuracy over an SNR grid");
  add_common(sweep, sweep_args.common);
  sweep->add_option("--variants", sweep_args.variants, "Variant list");
  sweep->add_option("--snrs", sweep_args.snr_list_db, "SNR grid in dB");
  sweep->add_option("--seeds", sweep_args.seeds, "Seed list");

  stfgacn::cli::AblateArgs ablate_args;
  auto* ablate = app.add_subcommand("ablate", "Variant comparison at a fixed SNR");
  add_common(ablate, ablate_args.common);
  ablate->add_option("--variants", ablate_args.variants, "Variant list");
  ablate->add_option("--snr", ablate_args.snr_db, "SNR in dB (default -10)");

  stfgacn::cli::PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Render a results CSV as an SVG");
  add_common(plot, plot_args.common);
  plot->add_option("--results", plot_args.results_csv, "results.csv or ablation.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (simulate->parsed()) return stfgacn::cli::cmd_simulate(simulate_args);
    if (train->parsed()) return stfgacn::cli::cmd_train(train_args);
    if (eval->parsed()) return stfgacn::cli::cmd_eval(eval_args);
    if (sweep->parsed()) return stfgacn::cli::cmd_sweep(sweep_args);
    if (ablate->parsed()) return stfgacn::cli::cmd_ablate(ablate_args);
    if (plot->parsed()) return stfgacn::cli::cmd_plot(plot_args);
  } catch (const stfgacn::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
