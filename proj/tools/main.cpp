#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sectsum/pipeline.hpp"
#include "sectsum/util.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

using namespace sectsum;

struct CliOptions {
    PipelineConfig cfg;
    std::string corpus_dir;
    std::string gold_dir;
    std::string system_dir;
    std::string out_dir;
    std::string out_file;
    std::string plot_data;
    bool per_doc = false;
    std::vector<std::string> postproc_passes;
};

void add_rouge_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_flag("--rouge-stemming", opt.cfg.rouge.stemming, "Porter-stem tokens before scoring");
    std::map<std::string, RougeLMode> lmodes{{"sequence", RougeLMode::Sequence},
                                             {"union", RougeLMode::Union}};
    cmd->add_option("--rouge-l-mode", opt.cfg.rouge.rouge_l_mode, "ROUGE-L flavour")
        ->transform(CLI::CheckedTransformer(lmodes, CLI::ignore_case));
}

void add_corpus_flags(CLI::App* cmd, CliOptions& opt) {
    std::map<std::string, PaperFormat> formats{{"science_parse", PaperFormat::ScienceParse},
                                               {"laysumm", PaperFormat::LaySumm}};
    cmd->add_option("--format", opt.cfg.format, "Paper JSON layout")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    cmd->add_option("--abbrev-file", opt.cfg.abbrev_file,
                    "Extra sentence-splitter abbreviations, one per line");
    cmd->add_option("--conflation-map", opt.cfg.conflation_file,
                    "JSON object mapping canonical headings onto merged names");
    cmd->add_option("--jobs", opt.cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->set_config("--config", "", "Read flag defaults from a key=value file");
}

void apply_postproc_passes(CliOptions& opt) {
    for (const auto& pass : opt.postproc_passes) {
        std::string p = lower_ascii(trim(pass));
        if (p == "citations") opt.cfg.postproc.citations = true;
        else if (p == "unicode") opt.cfg.postproc.unicode = true;
        else if (p == "math") opt.cfg.postproc.math = true;
        else if (!p.empty())
            throw ConfigError("unknown postproc pass '" + p +
                              "' (expected citations, unicode, math)");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    return out;
}

int do_analyze(CliOptions& opt) {
    AnalyzeOutput result = run_analyze(opt.corpus_dir, opt.gold_dir, opt.cfg);
    for (const auto& w : result.contribution.warnings) std::cerr << "warning: " << w << '\n';
    if (!opt.out_file.empty()) {
        auto out = open_out(opt.out_file);
        write_contribution_csv(out, result.contribution.rows, result.meta);
    } else {
        write_contribution_csv(std::cout, result.contribution.rows, result.meta);
    }
    if (!opt.plot_data.empty()) {
        auto out = open_out(opt.plot_data);
        write_plot_csv(out, result.contribution.rows);
    }
    return kExitOk;
}

int do_summarize(CliOptions& opt) {
    apply_postproc_passes(opt);
    SummarizeStats stats = run_summarize(opt.corpus_dir, opt.out_dir, opt.cfg);
    for (const auto& w : stats.warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << "summarized " << stats.written << " paper(s)";
    if (stats.failed > 0) std::cerr << ", " << stats.failed << " failed";
    std::cerr << '\n';
    return kExitOk;
}

int do_evaluate(CliOptions& opt) {
    EvalReport report = run_evaluate(opt.system_dir, opt.gold_dir, opt.cfg);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    print_eval_table(std::cout, report);
    if (!opt.out_file.empty()) {
        auto out = open_out(opt.out_file);
        write_eval_csv(out, report);
        if (opt.per_doc) {
            auto per_doc = open_out(opt.out_file + ".per-doc.csv");
            write_per_doc_csv(per_doc, report);
        }
    } else if (opt.per_doc) {
        write_per_doc_csv(std::cout, report);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sectsum: section-aware extractive summarization of scientific papers"};
    app.require_subcommand(1);

    CliOptions opt;

    // analyze --------------------------------------------------------------
    auto* analyze = app.add_subcommand(
        "analyze", "Per-heading ROUGE overlap between sections and gold summaries");
    analyze->add_option("corpus", opt.corpus_dir, "Directory of paper JSON files")->required();
    analyze->add_option("gold", opt.gold_dir, "Directory of gold summaries (<id>.txt)")
        ->required();
    analyze->add_option("--min-heading-freq", opt.cfg.min_heading_freq,
                        "Keep headings appearing in at least this fraction of papers")
        ->check(CLI::Range(0.0, 1.0));
    std::map<std::string, MetricAxis> axes{{"f1", MetricAxis::F1}, {"recall", MetricAxis::Recall}};
    analyze->add_option("--axis", opt.cfg.axis, "Overlap axis used for means and weights")
        ->transform(CLI::CheckedTransformer(axes, CLI::ignore_case));
    analyze->add_option("--out", opt.out_file, "Write the contribution CSV here");
    analyze->add_option("--plot-data", opt.plot_data, "Also write a long-format series CSV");
    add_corpus_flags(analyze, opt);
    add_rouge_flags(analyze, opt);

    // summarize ------------------------------------------------------------
    auto* summarize = app.add_subcommand("summarize", "Produce one summary file per paper");
    summarize->add_option("corpus", opt.corpus_dir, "Directory of paper JSON files")->required();
    summarize->add_option("out", opt.out_dir, "Output directory")->required();
    std::map<std::string, Task> tasks{{"longsumm", Task::LongSumm}, {"laysumm", Task::LaySumm}};
    summarize->add_option("--task", opt.cfg.task, "Summary style (budget default 600/150 words)")
        ->transform(CLI::CheckedTransformer(tasks, CLI::ignore_case));
    summarize->add_option("--cutoff", opt.cfg.cutoff, "Section overlap cutoff (0-100 scale)")
        ->check(CLI::NonNegativeNumber);
    summarize->add_option("--budget-words", opt.cfg.budget_words, "Total summary budget in words");
    std::map<std::string, ScorerKind> scorers{{"lead", ScorerKind::Lead},
                                              {"centrality", ScorerKind::Centrality},
                                              {"oracle", ScorerKind::Oracle},
                                              {"external", ScorerKind::External}};
    summarize->add_option("--scorer", opt.cfg.scorer, "Sentence scorer")
        ->transform(CLI::CheckedTransformer(scorers, CLI::ignore_case));
    summarize->add_option("--external-scores", opt.cfg.external_scores,
                          "CSV/JSONL sentence scores for --scorer external");
    std::map<std::string, WeightMode> modes{{"gold", WeightMode::Gold},
                                            {"prior", WeightMode::Prior}};
    summarize->add_option("--weight-mode", opt.cfg.weight_mode, "Section weight source")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    summarize->add_option("--prior-table", opt.cfg.prior_table,
                          "Contribution CSV from 'analyze' (prior mode)");
    summarize->add_option("--gold", opt.cfg.gold_dir,
                          "Gold summaries for gold-mode weights / oracle scorer");
    summarize->add_option("--axis", opt.cfg.axis, "Overlap axis for gold-mode weights")
        ->transform(CLI::CheckedTransformer(axes, CLI::ignore_case));
    summarize->add_option("--postproc", opt.postproc_passes,
                          "Cleanup passes: citations,unicode,math")
        ->delimiter(',');
    summarize->add_option("--postproc-config", opt.cfg.postproc_config,
                          "JSON file tuning the cleanup passes");
    summarize->add_flag("--strict-unicode", [&](std::int64_t) {
        opt.cfg.postproc.transliterate = false;
    }, "Delete accented letters instead of transliterating");
    std::string baseline_name;
    summarize->add_option("--baseline", baseline_name,
                          "Run a baseline instead of the pipeline (lead150)")
        ->check(CLI::IsMember({"lead150"}));
    summarize->add_flag("--hard-150", opt.cfg.hard150,
                        "Cut the baseline at exactly the budget, mid-sentence if needed");
    summarize->add_flag("--use-first-section", opt.cfg.use_first_section,
                        "Fall back to the first body section when a paper has no abstract");
    summarize->add_option("--damping", opt.cfg.centrality.damping, "Centrality damping factor")
        ->check(CLI::Range(0.0, 1.0));
    summarize->add_option("--sim-threshold", opt.cfg.centrality.sim_threshold,
                          "Drop similarity edges below this value");
    summarize->add_flag("--use-idf", opt.cfg.centrality.use_idf,
                        "Idf-weight the similarity vectors");
    add_corpus_flags(summarize, opt);
    add_rouge_flags(summarize, opt);

    // evaluate ---------------------------------------------------------------
    auto* evaluate = app.add_subcommand("evaluate", "Score system summaries against gold");
    evaluate->add_option("system", opt.system_dir, "Directory of system summaries (<id>.txt)")
        ->required();
    evaluate->add_option("gold", opt.gold_dir, "Directory of gold summaries (<id>.txt)")
        ->required();
    evaluate->add_option("--label", opt.cfg.label, "Row label in the report");
    evaluate->add_option("--out", opt.out_file, "Write the report CSV here");
    evaluate->add_flag("--per-doc", opt.per_doc, "Also emit per-document scores");
    evaluate->add_option("--jobs", opt.cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    evaluate->set_config("--config", "", "Read flag defaults from a key=value file");
    add_rouge_flags(evaluate, opt);

    // baseline ---------------------------------------------------------------
    auto* baseline = app.add_subcommand("baseline", "Lead-150 abstract baseline");
    baseline->add_option("corpus", opt.corpus_dir, "Directory of paper JSON files")->required();
    baseline->add_option("out", opt.out_dir, "Output directory")->required();
    baseline->add_option("--budget-words", opt.cfg.budget_words, "Token budget (default 150)");
    baseline->add_flag("--hard-150", opt.cfg.hard150,
                       "Cut at exactly the budget, mid-sentence if needed");
    baseline->add_flag("--use-first-section", opt.cfg.use_first_section,
                       "Fall back to the first body section when a paper has no abstract");
    add_corpus_flags(baseline, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (app.got_subcommand(analyze)) return do_analyze(opt);
        if (app.got_subcommand(summarize)) {
            opt.cfg.baseline_lead150 = baseline_name == "lead150";
            return do_summarize(opt);
        }
        if (app.got_subcommand(evaluate)) return do_evaluate(opt);
        if (app.got_subcommand(baseline)) {
            opt.cfg.task = Task::LaySumm;
            opt.cfg.baseline_lead150 = true;
            return do_summarize(opt);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitConfig;
}
