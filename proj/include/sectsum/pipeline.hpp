#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sectsum/analysis.hpp"
#include "sectsum/assemble.hpp"
#include "sectsum/eval.hpp"
#include "sectsum/extract.hpp"
#include "sectsum/ingest.hpp"
#include "sectsum/postproc.hpp"

namespace sectsum {

// Everything a batch run needs; mirrors the CLI flags one to one.
struct PipelineConfig {
    Task task = Task::LongSumm;
    PaperFormat format = PaperFormat::ScienceParse;
    double cutoff = 20.0;
    int budget_words = 0;  // 0 -> task default (600 longsumm / 150 laysumm)
    ScorerKind scorer = ScorerKind::Centrality;
    CentralityParams centrality;
    std::string external_scores;
    WeightMode weight_mode = WeightMode::Prior;
    std::string prior_table;  // contribution CSV path
    std::string gold_dir;     // needed for gold weights / oracle scorer
    MetricAxis axis = MetricAxis::F1;
    RougeConfig rouge;
    bool baseline_lead150 = false;
    bool hard150 = false;
    bool use_first_section = false;
    PostprocConfig postproc{false, false, false, true, {}};  // passes off by default
    std::string postproc_config;  // JSON overriding the defaults above
    double min_heading_freq = 0.05;
    int jobs = 1;
    std::string abbrev_file;
    std::string conflation_file;  // JSON object heading -> heading
    std::string label;            // evaluate row label
};

int effective_budget(const PipelineConfig& cfg);

// Bounded worker pool; jobs <= 1 runs inline. The first worker exception is
// rethrown after all threads join.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

struct LoadedCorpus {
    std::vector<Paper> papers;  // sorted by id
    std::vector<std::string> warnings;
};

// Reads every *.json in dir. Files that fail to parse are skipped with a
// warning; a duplicate id skips the later file. The paper id defaults to the
// file stem when the two disagree a warning is recorded and the JSON id wins.
LoadedCorpus load_corpus(const std::filesystem::path& dir, PaperFormat format,
                         const SentenceBreaker& breaker, const ConflationMap* conflation);

// Reads every *.txt in dir, keyed by file stem.
std::map<std::string, std::string> load_text_dir(const std::filesystem::path& dir);

struct AnalyzeOutput {
    ContributionResult contribution;
    ContributionMeta meta;
};

AnalyzeOutput run_analyze(const std::filesystem::path& corpus_dir,
                          const std::filesystem::path& gold_dir, const PipelineConfig& cfg);

struct SummarizeStats {
    int written = 0;
    int failed = 0;
    std::vector<std::string> warnings;
};

// Writes <id>.txt per paper plus manifest.jsonl into out_dir. Output bytes are
// independent of the worker count. Throws DataError when every paper fails.
SummarizeStats run_summarize(const std::filesystem::path& corpus_dir,
                             const std::filesystem::path& out_dir, const PipelineConfig& cfg);

EvalReport run_evaluate(const std::filesystem::path& system_dir,
                        const std::filesystem::path& gold_dir, const PipelineConfig& cfg);

}  // namespace sectsum
