// Command-line front end: runs one or both mechanisms on a preset or a
// config file and writes per-slot CSV, summary JSON, and the generated
// request trace into the output directory.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wscsim/wscsim.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    return out;
}

void write_run(const fs::path& dir, const std::string& mechanism,
               const wscsim::Config& cfg, const wscsim::RunResult& result) {
    auto slots = open_out(dir / (mechanism + "_slots.csv"));
    wscsim::write_slot_csv(slots, result, mechanism == "market");
    auto summary = open_out(dir / (mechanism + "_summary.json"));
    wscsim::write_summary_json(summary, mechanism, cfg, result.summary);
}

void print_brief(const std::string& mechanism, const wscsim::RunSummary& s) {
    std::cout << mechanism << ": load " << s.initial_load_pct << "% -> "
              << s.final_load_pct << "%, gamma " << s.initial_gamma << " -> "
              << s.final_gamma << ", rejection " << s.rejection_ratio_pct
              << "%, msg/req wsc=" << s.per_request.wsc
              << " cell=" << s.per_request.cell
              << " rack=" << s.per_request.rack << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wscsim: slot-based simulation of hierarchical and market-based "
        "resource management in a cloud of warehouse-scale computers"};

    std::string config_path;
    std::string preset_name;
    std::string mechanism = "hierarchical";
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int scale = 1;
    bool list_presets = false;

    auto* opt_config =
        app.add_option("--config", config_path, "Path to a key = value config file");
    auto* opt_preset =
        app.add_option("--preset", preset_name, "Name of a built-in scenario");
    opt_config->excludes(opt_preset);
    opt_preset->excludes(opt_config);
    app.add_option("--mechanism", mechanism,
                   "Mechanism to run: hierarchical, market, or both")
        ->check(CLI::IsMember({"hierarchical", "market", "both"}));
    auto* opt_seed = app.add_option("--seed", seed, "Override the config seed");
    app.add_option("--scale", scale,
                   "Divide WSC, cell, and rack counts by this factor "
                   "(server count per rack is kept)")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "Output directory (created if missing)");
    app.add_flag("--list-presets", list_presets, "List built-in scenarios and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const wscsim::Preset& p : wscsim::all_presets())
            std::cout << p.name << "\n    " << p.description << "\n";
        return 0;
    }

    wscsim::Config cfg;
    try {
        if (!preset_name.empty()) {
            cfg = wscsim::preset_config(preset_name);
        } else if (!config_path.empty()) {
            if (!fs::exists(config_path)) {
                std::cerr << "error: cannot open config file: " << config_path
                          << "\n";
                return kExitIo;
            }
            cfg = wscsim::load_config_file(config_path);
        } else {
            std::cerr << "error: either --config or --preset is required\n";
            return kExitConfig;
        }

        if (scale > 1) {
            cfg.wsc_count = std::max(1, cfg.wsc_count / scale);
            cfg.cells_per_wsc = std::max(1, cfg.cells_per_wsc / scale);
            cfg.racks_per_cell = std::max(1, cfg.racks_per_cell / scale);
        }
        if (*opt_seed) cfg.seed = seed;
        wscsim::validate_config(cfg);
    } catch (const wscsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        const wscsim::Topology topo = wscsim::derive_topology(cfg);
        const wscsim::Workload workload = wscsim::generate_workload(topo, cfg);

        fs::path dir(out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            std::cerr << "error: cannot create output directory " << out_dir
                      << ": " << ec.message() << "\n";
            return kExitIo;
        }

        auto trace = open_out(dir / "trace.csv");
        wscsim::write_trace_csv(trace, workload);

        if (mechanism == "hierarchical" || mechanism == "both") {
            wscsim::RunResult r = wscsim::run_hierarchical(cfg, workload);
            write_run(dir, "hierarchical", cfg, r);
            print_brief("hierarchical", r.summary);
            if (mechanism == "both") {
                wscsim::RunResult m = wscsim::run_market(cfg, workload);
                write_run(dir, "market", cfg, m);
                print_brief("market", m.summary);
                auto cmp = open_out(dir / "comparison.txt");
                wscsim::write_comparison(cmp, r.summary, m.summary);
            }
        } else {
            wscsim::RunResult m = wscsim::run_market(cfg, workload);
            write_run(dir, "market", cfg, m);
            print_brief("market", m.summary);
        }
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
