// veracity: stage-per-subcommand driver for the classification pipeline and
// the feature analysis.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "veracity/pipeline.hpp"
#include "veracity/synthetic.hpp"

using namespace veracity;

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> words;
    std::string out;
    bool no_reduce = false;
    std::string vector_mode;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "Run configuration (flat key = value file)");
    cmd->add_option("--seed", o.seed, "Seed for splits and seeded models");
    cmd->add_option("--words", o.words, "Word count X (30, 60, 90 or 120; others need min_freq)");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_flag("--no-reduce", o.no_reduce, "Skip principal-component reduction");
    cmd->add_option("--vector-mode", o.vector_mode, "count or tfidf")->check(CLI::IsMember({"count", "tfidf"}));
}

RunConfig resolve(const Overrides& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : RunConfig::load(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.words) cfg.words = {*o.words};
    if (!o.out.empty()) cfg.out = o.out;
    if (o.no_reduce) cfg.reduce = false;
    if (!o.vector_mode.empty()) cfg.set("vector_mode", o.vector_mode);
    return cfg;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const DataError*>(&e)) return 3;
    if (dynamic_cast<const ModelError*>(&e)) return 4;
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"News veracity classification and linguistic analysis"};
    app.require_subcommand(1);
    Overrides o;

    const char* stages[][2] = {
        {"ingest", "Load the corpus, apply replacements and write the split"},
        {"prep", "Clean, stem and truncate every article"},
        {"vocab", "Build List A and List B from the training split"},
        {"train", "Fit the classifier zoo and score it on validation"},
        {"select", "Test the validation top-3 and write the leaderboard"},
        {"evaluate", "Score each winner on every split"},
        {"analyze", "Linguistic features and hypothesis tests"},
        {"report", "Render report.md from stored artifacts"},
        {"run", "All stages in order"},
    };
    for (const auto& s : stages) add_run_flags(app.add_subcommand(s[0], s[1]), o);

    std::uint64_t synth_seed = 1;
    std::size_t synth_articles = 2000;
    std::string synth_out = "synthetic";
    auto* synth = app.add_subcommand("synth", "Generate the two-distribution synthetic corpus");
    synth->add_option("--seed", synth_seed, "Sampling seed");
    synth->add_option("--articles", synth_articles, "Number of articles (even)");
    synth->add_option("--out", synth_out, "Output directory");

    CLI11_PARSE(app, argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();

    try {
        if (name == "synth") {
            SyntheticParams p;
            p.articles = synth_articles;
            const auto model = build_synthetic_model(p);
            const auto corpus = generate_corpus(model, synth_seed);
            std::filesystem::create_directories(synth_out);
            write_file(std::filesystem::path(synth_out) / "synthetic.jsonl", corpus_to_jsonl(corpus));
            write_file(std::filesystem::path(synth_out) / "synthetic_truth.json", model.describe());
            std::cout << "wrote " << corpus.size() << " articles to " << synth_out << "\n";
            return 0;
        }

        Pipeline pipe(resolve(o));
        const bool all = name == "run";
        if (all || name == "ingest") pipe.ingest();
        if (all || name == "prep") pipe.prep();
        if (all || name == "vocab") pipe.vocab();
        if (all || name == "train") pipe.train();
        if (all || name == "select") {
            for (const auto& s : pipe.select())
                std::cout << "X=" << s.words << " winner " << s.best().spec.name() << " test accuracy "
                          << format_fixed(100 * s.best().test.accuracy(), 1) << "%\n";
        }
        if (all || name == "evaluate") pipe.evaluate_winners();
        if (all || name == "analyze") {
            const auto r = pipe.analyze();
            std::cout << r.rows.size() << " tests, " << r.notes.size() << " skipped\n";
        }
        if (all || name == "report") pipe.report();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "veracity " << name << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
}
