// volcast: batch volatility-forecasting pipeline.
//
// Subcommands run individual stages (ingest, train-sentiment, forecast,
// evaluate, plot) or the whole pipeline (all). Exit codes: 0 success,
// 2 config error, 3 data error, 4 numeric failure.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "volcast/config.hpp"
#include "volcast/errors.hpp"
#include "volcast/pipeline.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::int64_t seed = -1;  // -1 = keep the config's seed
    std::string out_dir;
};

int run_stage(const GlobalArgs& args, void (*stage)(const volcast::config::RunConfig&)) {
    try {
        auto cfg = volcast::config::load(args.config_path);
        if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
        if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
        stage(cfg);
        return 0;
    } catch (const volcast::Error& e) {
        std::cerr << "error[" << volcast::to_string(e.category()) << "/" << e.code() << "] " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error[numeric/Unexpected] " << e.what() << "\n";
        return static_cast<int>(volcast::ErrorCategory::numeric);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"volatility forecasting pipeline: GARCH, SVR and LSTM models with CNN headline sentiment"};
    app.require_subcommand(1);

    GlobalArgs args;

    const auto add_stage = [&](const std::string& name, const std::string& description,
                               void (*stage)(const volcast::config::RunConfig&)) {
        auto* cmd = app.add_subcommand(name, description);
        cmd->add_option("--config", args.config_path, "path to the run configuration")->required();
        cmd->add_option("--seed", args.seed, "override the config seed");
        cmd->add_option("--out", args.out_dir, "override the output directory");
        cmd->callback([&args, stage] {
            const int rc = run_stage(args, stage);
            if (rc != 0) throw CLI::RuntimeError(rc);
        });
    };

    add_stage("ingest", "load prices and headlines, write volatility and encoded-text artifacts",
              volcast::pipeline::cmd_ingest);
    add_stage("train-sentiment", "train word2vec embeddings and the CNN classifier, write daily sentiment",
              volcast::pipeline::cmd_train_sentiment);
    add_stage("forecast", "fit the enabled models on the training split and forecast the test split",
              volcast::pipeline::cmd_forecast);
    add_stage("evaluate", "score every forecast file (RMSE and regression F-test)",
              volcast::pipeline::cmd_evaluate);
    add_stage("plot", "emit actual-vs-predicted plot data and a standalone SVG", volcast::pipeline::cmd_plot);
    add_stage("all", "run the full pipeline", volcast::pipeline::cmd_all);

    CLI11_PARSE(app, argc, argv);
    return 0;
}
