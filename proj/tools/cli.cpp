#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tracegraph/core/errors.hpp"
#include "tracegraph/core/graph_io.hpp"
#include "tracegraph/pipeline/analyses.hpp"
#include "tracegraph/pipeline/batch.hpp"
#include "tracegraph/pipeline/coders.hpp"
#include "tracegraph/pipeline/records.hpp"
#include "tracegraph/pipeline/reliability.hpp"
#include "tracegraph/pipeline/server.hpp"

namespace tracegraph::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tracegraph::pipeline;

namespace {

struct Globals {
    std::string data_dir = "data";
    std::string config_dir = "config";
    std::uint64_t seed = 0;
    std::size_t parallelism = 1;
};

// config/coder.json; every section is optional.
json coder_config(const Globals& g) {
    auto path = fs::path(g.config_dir) / "coder.json";
    std::ifstream in(path);
    if (!in) return json::object();
    return json::parse(in);
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Globals g;
    CLI::App app{"Search-graph coding of Game of 24 think-aloud transcripts", "tracegraph"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.add_option("--data-dir", g.data_dir, "Directory holding the JSONL store");
    app.add_option("--config-dir", g.config_dir, "Directory with coder.json, prompts/ and silence_strings.txt");
    app.add_option("--seed", g.seed, "Seed for the mock coder, random agents and permutation tests");
    app.add_option("--parallelism", g.parallelism, "Worker threads for batch coding")->check(CLI::PositiveNumber);

    std::string trials_file;
    auto* ingest_cmd = app.add_subcommand("ingest", "Load trials from JSONL or CSV into the store");
    ingest_cmd->add_option("file", trials_file, "Trials file (.jsonl or .csv)")->required();

    std::string classifier = "heuristic", silence_file;
    auto* filter_cmd = app.add_subcommand("filter", "Mark irrelevant transcripts and apply the participant rule");
    filter_cmd->add_option("--classifier", classifier)->check(CLI::IsMember({"heuristic", "chat"}));
    filter_cmd->add_option("--silence", silence_file, "Silence strings (default <config-dir>/silence_strings.txt)");

    std::string coder_kind = "heuristic", coder_name = "heuristic";
    std::optional<double> error_rate;
    std::optional<int> max_iterations;
    bool force = false;
    auto* code_cmd = app.add_subcommand("code", "Code included trials with the repair loop");
    code_cmd->add_option("--coder", coder_kind)->check(CLI::IsMember({"heuristic", "chat"}));
    code_cmd->add_option("--name", coder_name, "Heuristic coder: name results are stored under");
    code_cmd->add_option("--error-rate", error_rate, "Heuristic coder: chance of a misstated result")
        ->check(CLI::Range(0.0, 1.0));
    code_cmd->add_option("--max-iterations", max_iterations)->check(CLI::PositiveNumber);
    code_cmd->add_flag("--force", force, "Recode trials that already have a clean result");

    std::string trace_file;
    bool as_json = false;
    auto* validate_cmd = app.add_subcommand("validate", "Check one trace file");
    validate_cmd->add_option("file", trace_file)->required();
    validate_cmd->add_flag("--json", as_json, "Print graph and report as JSON");

    std::string coder_a, coder_b, ged_out;
    auto* ged_cmd = app.add_subcommand("ged", "Normalized graph edit distance between two coders");
    ged_cmd->add_option("--coder-a", coder_a)->required();
    ged_cmd->add_option("--coder-b", coder_b)->required();
    ged_cmd->add_option("--out", ged_out, "CSV path (default stdout)");

    std::string analysis, analysis_coder = "heuristic", out_dir;
    std::size_t permutations = 10000;
    auto* analyze_cmd = app.add_subcommand("analyze", "Run one analysis, or all");
    std::vector<std::string> names(std::begin(kAnalysisNames), std::end(kAnalysisNames));
    names.push_back("all");
    analyze_cmd->add_option("name", analysis)->required()->check(CLI::IsMember(names));
    analyze_cmd->add_option("--coder", analysis_coder);
    analyze_cmd->add_option("--out-dir", out_dir, "Write <name>.json and DOT files here (default stdout, no DOT)");
    analyze_cmd->add_option("--permutations", permutations)->check(CLI::PositiveNumber);

    std::string agents_coder = "heuristic";
    auto* agents_cmd = app.add_subcommand("agents", "Random-agent graphs matched to coded trials");
    agents_cmd->add_option("--coder", agents_coder);

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP API for the annotation UI");
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port)->check(CLI::Range(1, 65535));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*validate_cmd) {
            auto v = validator::validate(read_text(trace_file));
            if (as_json) {
                out << json{{"graph", v.graph ? graph_to_json(*v.graph) : json(nullptr)},
                            {"report", report_to_json(v.report)}}
                           .dump(2)
                    << '\n';
            } else {
                for (const auto& d : v.diagnostics) out << d.to_string() << '\n';
                out << (v.report.clean() ? "clean\n" : v.report.render());
            }
            return v.report.clean() ? 0 : 1;
        }

        Store store(g.data_dir);
        auto cfg = coder_config(g);

        if (*ingest_cmd) {
            auto r = ingest(trials_file);
            for (const auto& d : r.diagnostics) err << trials_file << ": " << d.to_string() << '\n';
            auto added = store.add_trials(r.dataset.trials);
            store.add_provenance(r.dataset.provenance);
            out << "ingested " << added << " trials (" << r.dataset.trials.size() - added << " already stored, "
                << r.truncated << " truncated, "
                << std::count_if(r.diagnostics.begin(), r.diagnostics.end(), [](auto& d) { return d.fatal; })
                << " lines rejected)\n";
            return 0;
        }
        if (*filter_cmd) {
            auto silence = load_silence_strings(silence_file.empty() ? fs::path(g.config_dir) / "silence_strings.txt"
                                                                     : fs::path(silence_file));
            Dataset ds{store.trials(), {}};
            std::unique_ptr<RelevanceClassifier> cls;
            if (classifier == "chat") {
                auto assets = load_prompt_assets(g.config_dir);
                cls = std::make_unique<HttpRelevanceClassifier>(ChatConfig::from_json(cfg.value("chat", json::object())),
                                                                assets.relevance_system);
            } else {
                cls = std::make_unique<HeuristicClassifier>();
            }
            auto r = filter_relevance(ds, silence, *cls);
            store.add_verdicts(ds, r);
            out << "kept " << r.kept.trials.size() << ", excluded " << r.excluded.size() << ", pending "
                << r.pending.size() << '\n';
            return 0;
        }
        if (*code_cmd) {
            BatchOptions opts;
            auto repair = cfg.value("repair", json::object());
            opts.policy.max_iterations = repair.value("max_iterations", opts.policy.max_iterations);
            opts.policy.initial_temperature = repair.value("initial_temperature", opts.policy.initial_temperature);
            opts.policy.temperature_step = repair.value("temperature_step", opts.policy.temperature_step);
            if (max_iterations) opts.policy.max_iterations = *max_iterations;
            opts.parallelism = g.parallelism;
            opts.force = force;
            std::unique_ptr<validator::CoderBackend> coder;
            if (coder_kind == "chat") {
                coder = std::make_unique<LlmCoder>(ChatConfig::from_json(cfg.value("chat", json::object())),
                                                   load_prompt_assets(g.config_dir));
            } else {
                double rate = error_rate.value_or(cfg.value("heuristic", json::object()).value("error_rate", 0.0));
                coder = std::make_unique<HeuristicCoder>(g.seed, rate, coder_name);
            }
            auto s = batch_code(store.included_trials(), *coder, store, opts);
            for (const auto& f : s.failures) err << "uncoded " << f << '\n';
            out << "coded " << s.coded << ", uncoded " << s.uncoded << ", skipped " << s.skipped << '\n';
            return 0;
        }
        if (*ged_cmd) {
            auto csv = ged_rows_to_csv(reliability(store, coder_a, coder_b));
            if (ged_out.empty()) out << csv;
            else write_text(ged_out, csv);
            return 0;
        }
        if (*analyze_cmd) {
            AnalysisOptions o;
            o.coder = analysis_coder;
            o.seed = g.seed;
            o.n_permutations = permutations;
            o.out_dir = out_dir;
            std::vector<std::string> todo;
            if (analysis == "all") todo.assign(std::begin(kAnalysisNames), std::end(kAnalysisNames));
            else todo.push_back(analysis);
            for (const auto& name : todo) {
                auto doc = run_analysis(name, store, o).dump(2) + "\n";
                if (out_dir.empty()) out << doc;
                else write_text(fs::path(out_dir) / (name + ".json"), doc);
            }
            return 0;
        }
        if (*agents_cmd) {
            out << "generated " << generate_agents(store, agents_coder, g.seed) << " random-agent graphs\n";
            return 0;
        }
        if (*serve_cmd) {
            out << "listening on http://" << host << ':' << port << '\n' << std::flush;
            if (!serve(store, host, port)) {
                err << "cannot bind " << host << ':' << port << '\n';
                return 1;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace tracegraph::cli
