// Command-line front end: run missions, plan once, or score a written trace.

#include <string>

#include <CLI11.hpp>

#include "swarmstat/trace_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"swarm mission planning and tracking simulator"};
    app.require_subcommand(1);

    swarmstat::RunConfig run_cfg;
    std::string run_format = "csv";
    CLI::App* run = app.add_subcommand("run", "simulate a scenario and write trace files");
    run->add_option("--scenario", run_cfg.scenario_path, "scenario file")->required();
    std::uint64_t seed_value = 0;
    bool seed_set = false;
    run->add_option("--seed", seed_value, "override the scenario seed")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--out", run_cfg.out_dir, "output directory")->capture_default_str();
    run->add_option("--format", run_format, "trace format: csv or jsonl")->capture_default_str();
    run->add_option("--decimate", run_cfg.decimate_hz, "truth snapshot rate in Hz")
        ->capture_default_str();
    run->add_option("--runs", run_cfg.runs, "batch size; seeds are seed..seed+runs-1")
        ->capture_default_str();
    run->add_flag("--paper-cost", run_cfg.paper_cost,
                  "unit move costs in the path search instead of octile costs");
    run->add_option("--workers", run_cfg.workers, "worker threads for batches (0 = auto)");

    std::string plan_scenario, plan_out = "out";
    bool plan_paper_cost = false;
    std::string plan_format = "csv";
    CLI::App* plan = app.add_subcommand("plan", "run the planner once and write plans.csv");
    plan->add_option("--scenario", plan_scenario, "scenario file")->required();
    plan->add_option("--out", plan_out, "output directory")->capture_default_str();
    plan->add_option("--format", plan_format, "csv or jsonl")->capture_default_str();
    plan->add_flag("--paper-cost", plan_paper_cost, "unit move costs in the path search");

    swarmstat::ScoreConfig score_cfg;
    CLI::App* score = app.add_subcommand("score", "compute OSPA metrics for a written trace");
    score->add_option("--out", score_cfg.trace_dir, "directory holding the trace files")
        ->required();
    score->add_option("--cutoff", score_cfg.cutoff, "OSPA cutoff distance in meters")
        ->capture_default_str();
    score->add_option("--order", score_cfg.order, "OSPA order p")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    const auto parse_format = [](const std::string& f) {
        if (f == "jsonl") return swarmstat::TraceFormat::jsonl;
        return swarmstat::TraceFormat::csv;
    };

    if (run->parsed()) {
        if (seed_set) run_cfg.seed_override = seed_value;
        run_cfg.format = parse_format(run_format);
        return swarmstat::cmd_run(run_cfg);
    }
    if (plan->parsed()) {
        return swarmstat::cmd_plan(plan_scenario, plan_out, plan_paper_cost,
                                   parse_format(plan_format));
    }
    return swarmstat::cmd_score(score_cfg);
}
