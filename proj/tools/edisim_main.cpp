#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "edisim/config.hpp"
#include "edisim/errors.hpp"
#include "edisim/ingest.hpp"
#include "edisim/metrics.hpp"
#include "edisim/resources.hpp"
#include "edisim/search.hpp"

namespace fs = std::filesystem;
using namespace edisim;

namespace {

std::set<EditKind> parse_ops(const std::string& spec) {
    std::set<EditKind> ops;
    std::string cur;
    for (char c : spec + "+") {
        if (c != '+') {
            cur += c;
            continue;
        }
        if (cur.empty()) continue;
        if (cur == "rm") {
            ops.insert(EditKind::removal);
        } else if (cur == "ex") {
            ops.insert(EditKind::extraction);
        } else if (cur == "ro") {
            ops.insert(EditKind::reordering);
        } else if (cur == "ls") {
            ops.insert(EditKind::substitution);
        } else {
            throw ConfigError("unknown op token '" + cur + "' (expected rm, ex, ro, ls)");
        }
        cur.clear();
    }
    if (ops.empty()) throw ConfigError("--ops names no operations");
    return ops;
}

struct PipelineFlags {
    std::string profile_name = "newsela";
    std::string config_path;
    std::vector<std::string> settings;
    std::string ops;

    PipelineConfig resolve() const {
        PipelineConfig config = profile(profile_name);
        if (!config_path.empty()) apply_config_file(config, config_path);
        for (const std::string& setting : settings) {
            size_t eq = setting.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == setting.size())
                throw ConfigError("--set expects key=value, got '" + setting + "'");
            apply_setting(config, setting.substr(0, eq), setting.substr(eq + 1));
        }
        if (!ops.empty()) config.search.enabled_ops = parse_ops(ops);
        return config;
    }
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& flags) {
    cmd->add_option("--profile", flags.profile_name, "hyperparameter profile: newsela or wikilarge");
    cmd->add_option("--config", flags.config_path, "key = value config file layered over the profile");
    cmd->add_option("--set", flags.settings, "config override key=value (repeatable)");
    cmd->add_option("--ops", flags.ops, "enabled operations, e.g. rm+ex+ls+ro");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot write output file: " + path);
    return out;
}

std::vector<std::vector<std::string>> load_token_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open file: " + path);
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::vector<std::string> tokens;
        std::string token;
        while (row >> token) tokens.push_back(token);
        lines.push_back(std::move(tokens));
    }
    return lines;
}

int run_build(const std::string& corpus_path, const std::vector<std::string>& embedding_paths,
              const std::string& synonym_path, const PipelineFlags& flags, bool order_given,
              int lm_order, const std::string& out_dir, bool force) {
    if (fs::exists(fs::path(out_dir) / "manifest.txt") && !force)
        throw ResourceError("bundle already exists at " + out_dir + " (pass --force to replace it)");
    PipelineConfig config = flags.resolve();
    BundleInputs inputs;
    inputs.corpus_path = corpus_path;
    inputs.embedding_paths = embedding_paths;
    inputs.synonym_path = synonym_path;
    inputs.lm_order = order_given ? lm_order : config.lm_order;
    inputs.lm_weights = config.lm_weights;
    ResourceBundle bundle = build_bundle(inputs);
    save_bundle(bundle, out_dir);
    ValidationReport report = validate_bundle(bundle);
    for (const std::string& warning : report.warnings)
        std::cerr << "warning: " << warning << '\n';
    std::cout << "bundle written to " << out_dir << '\n';
    return 0;
}

int run_train_lm(const std::string& corpus_path, int order, const std::string& weights,
                 const std::string& out_path) {
    std::vector<AnnotatedSentence> corpus = load_corpus(corpus_path);
    std::array<double, 3> w = weights.empty() ? std::array<double, 3>{0.7, 0.2, 0.1}
                                              : parse_lm_weights(weights);
    std::shared_ptr<SyntaxAwareLM> lm = train_lm(corpus, order, w);
    save_lm(*dynamic_cast<const NGramModel*>(lm.get()), out_path);
    std::cout << "model " << lm->id() << " written to " << out_path << '\n';
    return 0;
}

int run_simplify(const std::string& bundle_dir, const std::string& input_path,
                 const PipelineFlags& flags, const std::string& out_path,
                 const std::string& trace_path) {
    PipelineConfig config = flags.resolve();
    ResourceBundle bundle = load_bundle(bundle_dir);
    std::vector<AnnotatedSentence> corpus = load_corpus(input_path);
    std::vector<SentenceResult> results = simplify_corpus(corpus, bundle, config);

    std::ofstream out = open_output(out_path);
    std::ofstream trace_out;
    if (!trace_path.empty()) trace_out = open_output(trace_path);

    int failures = 0;
    for (size_t i = 0; i < results.size(); ++i) {
        const SentenceResult& result = results[i];
        if (result.trace) {
            out << joined_text(result.trace->final_sentence()) << '\n';
            if (trace_out.is_open()) trace_out << trace_json(*result.trace) << '\n';
        } else {
            ++failures;
            std::cerr << "record " << (i + 1) << ": " << result.error << '\n';
            out << joined_text(corpus[i]) << '\n';  // keep line alignment
            if (trace_out.is_open()) {
                nlohmann::json j{{"original", joined_text(corpus[i])}, {"error", result.error}};
                trace_out << j.dump() << '\n';
            }
        }
    }
    if (failures > 0)
        std::cerr << failures << " of " << results.size() << " records failed; originals kept\n";
    return 0;
}

std::vector<EvalRecord> records_from_files(const std::string& src_path, const std::string& out_path,
                                           const std::vector<std::string>& ref_paths) {
    auto src = load_token_lines(src_path);
    auto out = load_token_lines(out_path);
    std::vector<std::vector<std::vector<std::string>>> refs;
    for (const std::string& path : ref_paths) refs.push_back(load_token_lines(path));
    if (out.size() != src.size())
        throw ParseError("source and output files differ in line count");
    for (size_t r = 0; r < refs.size(); ++r)
        if (refs[r].size() != src.size())
            throw ParseError("reference file " + ref_paths[r] + " differs in line count");
    std::vector<EvalRecord> records;
    for (size_t i = 0; i < src.size(); ++i) {
        EvalRecord record;
        record.src = src[i];
        record.out = out[i];
        for (const auto& ref : refs) record.refs.push_back(ref[i]);
        records.push_back(std::move(record));
    }
    return records;
}

SariDeleteMode parse_delete_mode(const std::string& mode) {
    if (mode == "f1") return SariDeleteMode::f1;
    if (mode == "precision") return SariDeleteMode::precision;
    throw ConfigError("sari_delete must be f1 or precision, got '" + mode + "'");
}

int run_evaluate(const std::string& records_path, const std::string& src_path,
                 const std::string& out_path, const std::vector<std::string>& ref_paths,
                 const std::string& format, const std::string& sari_delete) {
    std::vector<EvalRecord> records;
    if (!records_path.empty()) {
        records = load_eval_records(records_path);
    } else {
        if (src_path.empty() || out_path.empty() || ref_paths.empty())
            throw ConfigError("evaluate needs --records or all of --src, --out, --refs");
        records = records_from_files(src_path, out_path, ref_paths);
    }
    MetricReport report = evaluate(records, parse_delete_mode(sari_delete));
    if (format == "table") {
        std::cout << report_table(report);
    } else if (format == "records") {
        std::cout << report_json(report) << '\n';
    } else {
        throw ConfigError("--format must be table or records, got '" + format + "'");
    }
    return 0;
}

int run_sweep(const std::string& bundle_dir, const std::string& input_path,
              const PipelineFlags& flags, const std::string& param, const std::string& values,
              const std::vector<std::string>& ref_paths) {
    static const std::set<std::string> sweepable = {"r_all", "alpha", "beta",
                                                    "gamma", "delta", "tau"};
    if (!sweepable.count(param))
        throw ConfigError("--param must be one of r_all, alpha, beta, gamma, delta, tau");
    std::vector<std::string> value_list;
    std::string cur;
    for (char c : values + ",") {
        if (c == ',') {
            if (!cur.empty()) value_list.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (value_list.empty()) throw ConfigError("--values names no values");

    ResourceBundle bundle = load_bundle(bundle_dir);
    std::vector<AnnotatedSentence> corpus = load_corpus(input_path);
    std::vector<std::vector<std::vector<std::string>>> refs;
    for (const std::string& path : ref_paths) {
        refs.push_back(load_token_lines(path));
        if (refs.back().size() != corpus.size())
            throw ParseError("reference file " + path + " differs in line count from the corpus");
    }

    std::cout << param << "  SARI    Add     Delete  Keep    BLEU    GM      FKGL    FRE     Len\n";
    for (const std::string& value : value_list) {
        PipelineConfig config = flags.resolve();
        apply_setting(config, param, value);
        std::vector<SentenceResult> results = simplify_corpus(corpus, bundle, config);

        std::vector<EvalRecord> records;
        for (size_t i = 0; i < results.size(); ++i) {
            EvalRecord record;
            record.src = token_texts(corpus[i]);
            record.out = results[i].trace ? token_texts(results[i].trace->final_sentence())
                                          : token_texts(corpus[i]);
            if (refs.empty()) {
                record.refs.push_back(record.src);  // no references: score against the source
            } else {
                for (const auto& ref : refs) record.refs.push_back(ref[i]);
            }
            records.push_back(std::move(record));
        }
        MetricReport report = evaluate(records, config.sari_delete);
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "%-7s %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f\n",
                      value.c_str(), report.sari.sari, report.sari.add, report.sari.del,
                      report.sari.keep, report.bleu, report.gm, report.fkgl, report.fre,
                      report.mean_length);
        std::cout << buf;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"iterative sentence simplification by scored phrase edits"};
    app.require_subcommand(1);

    auto* build = app.add_subcommand("build", "build a resource bundle from training data");
    std::string build_corpus, build_synonyms, build_out;
    std::vector<std::string> build_embeddings;
    PipelineFlags build_flags;
    int build_order = 3;
    bool build_force = false;
    build->add_option("--simple-corpus", build_corpus, "simple-register training corpus (jsonl)")
        ->required();
    build->add_option("--embeddings", build_embeddings, "embedding table file (repeatable, 1 or 2)")
        ->required();
    build->add_option("--synonyms", build_synonyms, "synonym table file (tsv)");
    auto* build_order_opt = build->add_option("--lm-order", build_order, "n-gram order in [2, 5]");
    build->add_option("--out", build_out, "bundle output directory")->required();
    build->add_flag("--force", build_force, "replace an existing bundle");
    build->add_option("--config", build_flags.config_path, "config file (lm_order, lm_weights)");
    build->add_option("--set", build_flags.settings, "config override key=value (repeatable)");

    auto* train = app.add_subcommand("train-lm", "train and persist the language model only");
    std::string train_corpus, train_out, train_weights;
    int train_order = 3;
    train->add_option("--corpus", train_corpus, "training corpus (jsonl)")->required();
    train->add_option("--order", train_order, "n-gram order in [2, 5]");
    train->add_option("--weights", train_weights, "interpolation weights, e.g. 0.7,0.2,0.1");
    train->add_option("--out", train_out, "model output file")->required();

    auto* simplify_cmd = app.add_subcommand("simplify", "simplify a corpus with a bundle");
    std::string sim_bundle, sim_input, sim_out, sim_trace;
    PipelineFlags sim_flags;
    simplify_cmd->add_option("--bundle", sim_bundle, "resource bundle directory")->required();
    simplify_cmd->add_option("--input", sim_input, "input corpus (jsonl)")->required();
    simplify_cmd->add_option("--out", sim_out, "output file, one sentence per line")->required();
    simplify_cmd->add_option("--trace-out", sim_trace, "trace file, one json record per sentence");
    add_pipeline_flags(simplify_cmd, sim_flags);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "score outputs against references");
    std::string eval_records, eval_src, eval_out, eval_format = "table", eval_delete = "f1";
    std::vector<std::string> eval_refs;
    evaluate_cmd->add_option("--records", eval_records, "evaluation records (jsonl)");
    evaluate_cmd->add_option("--src", eval_src, "source sentences, one per line");
    evaluate_cmd->add_option("--out", eval_out, "system output sentences, one per line");
    evaluate_cmd->add_option("--refs", eval_refs, "reference sentences file (repeatable)");
    evaluate_cmd->add_option("--format", eval_format, "report format: table or records");
    evaluate_cmd->add_option("--sari-delete", eval_delete, "sari deletion scoring: f1 or precision");

    auto* sweep = app.add_subcommand("sweep", "run simplify+evaluate across hyperparameter values");
    std::string sweep_bundle, sweep_input, sweep_param, sweep_values;
    std::vector<std::string> sweep_refs;
    PipelineFlags sweep_flags;
    sweep->add_option("--bundle", sweep_bundle, "resource bundle directory")->required();
    sweep->add_option("--input", sweep_input, "input corpus (jsonl)")->required();
    sweep->add_option("--param", sweep_param, "r_all, alpha, beta, gamma, delta, or tau")->required();
    sweep->add_option("--values", sweep_values, "comma-separated parameter values")->required();
    sweep->add_option("--refs", sweep_refs, "reference sentences file (repeatable)");
    add_pipeline_flags(sweep, sweep_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed())
            return run_build(build_corpus, build_embeddings, build_synonyms, build_flags,
                             build_order_opt->count() > 0, build_order, build_out, build_force);
        if (train->parsed()) return run_train_lm(train_corpus, train_order, train_weights, train_out);
        if (simplify_cmd->parsed())
            return run_simplify(sim_bundle, sim_input, sim_flags, sim_out, sim_trace);
        if (evaluate_cmd->parsed())
            return run_evaluate(eval_records, eval_src, eval_out, eval_refs, eval_format,
                                eval_delete);
        if (sweep->parsed())
            return run_sweep(sweep_bundle, sweep_input, sweep_flags, sweep_param, sweep_values,
                             sweep_refs);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
