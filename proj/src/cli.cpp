#include "hapnav/cli.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "hapnav/analysis.hpp"
#include "hapnav/calibration.hpp"
#include "hapnav/config.hpp"
#include "hapnav/errors.hpp"
#include "hapnav/server.hpp"
#include "hapnav/simagent.hpp"
#include "hapnav/trial_log.hpp"

namespace hapnav {

namespace {

struct Options {
    // simulate
    int trials = 48;
    std::uint64_t seed = 0;
    std::string params;
    std::string out_dir = "out";
    std::string calibration;
    unsigned threads = 0;
    // serve
    std::string bind = "127.0.0.1:8765";
    std::string log_dir;
    // analyze
    std::string in;
    std::string group_by = "approach,metaphor";
    std::string schema;
    std::string report_dir;
    int shuffles = 10000;
    // calibrate
    std::string captures;
    std::string cal_out = "calibration.txt";
    // replay
    std::string log;
};

CalibrationData calibration_from(const std::string& path) {
    return path.empty() ? CalibrationData::identity() : load_calibration(path);
}

RunConfig config_from(const std::string& path) {
    return path.empty() ? RunConfig{} : load_config(path);
}

int cmd_simulate(const Options& o, std::ostream& out) {
    if (o.trials < 1) throw Error(ErrorCode::InvalidArgument, "--trials must be >= 1");
    const RunConfig cfg = config_from(o.params);
    const CalibrationData cal = calibration_from(o.calibration);
    const auto plans = batch_plans(o.trials, o.seed, cal);
    const auto records = run_batch(plans, cal, cfg.agent, o.seed, cfg.engine, o.threads);

    std::error_code ec;
    std::filesystem::create_directories(o.out_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + o.out_dir);
    int reached = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "trial_%04zu.jsonl", k + 1);
        save_trial_log(records[k], std::filesystem::path(o.out_dir) / name);
        if (records[k].outcome == Outcome::Reached) ++reached;
    }
    out << "simulated " << records.size() << " trials (" << reached << " reached) into " << o.out_dir
        << '\n';
    return 0;
}

int cmd_serve(const Options& o, std::ostream& out) {
    const RunConfig cfg = config_from(o.params);
    GatewayConfig gw;
    gw.calibration = calibration_from(o.calibration);
    gw.engine = cfg.engine;
    gw.agent = cfg.agent;
    gw.seed = o.seed;

    // Signals go to a dedicated waiter thread instead of an async handler.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    Server server(gw, {o.bind, o.log_dir});
    out << "listening on port " << server.port() << std::endl;
    std::jthread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    server.run();
    // Release the waiter if run() ended for another reason.
    pthread_kill(waiter.native_handle(), SIGTERM);
    return 0;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.in.empty()) throw Error(ErrorCode::InvalidArgument, "--in is required");
    std::vector<TrialRecord> records;
    if (!o.schema.empty()) {
        IngestResult ingest = ingest_dataset(o.in, DatasetSchema::load(o.schema));
        for (const ParseWarning& w : ingest.warnings) {
            err << "warning: " << w.file << ":" << w.line << ": " << w.message << '\n';
        }
        records = std::move(ingest.records);
    } else {
        records = load_records(o.in);
    }
    if (records.empty()) throw Error(ErrorCode::EmptyGroup, "no trials found under " + o.in);

    SummarizeOptions opts;
    opts.permutation_shuffles = o.shuffles;
    opts.permutation_seed = o.seed;
    const MetricsReport report = summarize(records, parse_factors(o.group_by), opts);
    write_group_table(out, report);
    for (const std::string& g : report.empty_groups) err << "warning: empty group " << g << '\n';

    if (!o.report_dir.empty()) {
        const std::filesystem::path dir(o.report_dir);
        std::filesystem::create_directories(dir);
        std::ofstream trials(dir / "trials.csv");
        std::ofstream groups(dir / "groups.csv");
        std::ofstream summary(dir / "summary.json");
        if (!trials || !groups || !summary) throw Error(ErrorCode::IoError, "cannot write into " + o.report_dir);
        write_trial_table(trials, report);
        write_group_table(groups, report);
        write_summary_json(summary, report);
    }
    return 0;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
    if (o.captures.empty()) throw Error(ErrorCode::InvalidArgument, "--captures is required");
    const CaptureSet captures = load_captures(o.captures);
    const CalibrationData cal = build_calibration(captures);
    save_calibration(cal, o.cal_out);
    out << format_calibration(cal);
    const CalibrationResiduals res = validate_calibration(cal, captures);
    auto line = [&](const char* name, PlanePoint predicted, const std::optional<double>& r) {
        out << std::fixed << std::setprecision(6);
        out << "predicted_" << name << " = " << predicted.x << ' ' << predicted.y << '\n';
        out << "residual_" << name << "_cm = ";
        if (r) out << *r << '\n';
        else out << "n/a\n";
    };
    line("deg180", res.predicted_deg180, res.residual_deg180_cm);
    line("deg270", res.predicted_deg270, res.residual_deg270_cm);
    return 0;
}

int cmd_replay(const Options& o, std::ostream& out) {
    if (o.log.empty()) throw Error(ErrorCode::InvalidArgument, "--log is required");
    const ReplayReport report = replay(load_trial_log(o.log));
    if (report.match) {
        out << "MATCH " << report.frames_compared << " frames\n";
        return 0;
    }
    out << "MISMATCH " << report.detail << '\n';
    return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Vibrotactile guidance engine, simulator, gateway and analysis", "hapnav"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "Run seeded closed-loop trials and write trial logs");
    simulate->add_option("--trials", o.trials, "Number of trials");
    simulate->add_option("--seed", o.seed, "Master seed");
    simulate->add_option("--params", o.params, "JSON config with engine and agent sections");
    simulate->add_option("--out", o.out_dir, "Output directory");
    simulate->add_option("--calibration", o.calibration, "Calibration file");
    simulate->add_option("--threads", o.threads, "Worker threads (0 = hardware)");

    auto* serve = app.add_subcommand("serve", "Run the streaming gateway");
    serve->add_option("--bind", o.bind, "host:port");
    serve->add_option("--calibration", o.calibration, "Calibration file");
    serve->add_option("--params", o.params, "JSON config with engine and agent sections");
    serve->add_option("--seed", o.seed, "Seed for unplanned targets and simulated sessions");
    serve->add_option("--log-dir", o.log_dir, "Directory for finished trial logs");

    auto* analyze = app.add_subcommand("analyze", "Trajectory metrics grouped by condition factors");
    analyze->add_option("--in", o.in, "Trial log file or directory, or dataset path with --schema");
    analyze->add_option("--group-by", o.group_by, "Comma-separated: layout,approach,metaphor,intensity");
    analyze->add_option("--schema", o.schema, "Column mapping for external trajectory files");
    analyze->add_option("--report", o.report_dir, "Write trials.csv, groups.csv and summary.json here");
    analyze->add_option("--shuffles", o.shuffles, "Permutation-test shuffles");
    analyze->add_option("--seed", o.seed, "Permutation-test seed");

    auto* calibrate = app.add_subcommand("calibrate", "Build a calibration from landmark captures");
    calibrate->add_option("--captures", o.captures, "CSV of landmark,x,y rows");
    calibrate->add_option("--out", o.cal_out, "Calibration file to write");

    auto* replay_cmd = app.add_subcommand("replay", "Recompute a logged trial and compare frames");
    replay_cmd->add_option("--log", o.log, "Trial log");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: invalid_argument: " << e.what() << '\n';
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (serve->parsed()) return cmd_serve(o, out);
        if (analyze->parsed()) return cmd_analyze(o, out, err);
        if (calibrate->parsed()) return cmd_calibrate(o, out);
        if (replay_cmd->parsed()) return cmd_replay(o, out);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: io_error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace hapnav
