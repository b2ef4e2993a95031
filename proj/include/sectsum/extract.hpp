#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sectsum/budget.hpp"
#include "sectsum/ingest.hpp"
#include "sectsum/rouge.hpp"

namespace sectsum {

struct ScoredSentence {
    int section_index = 0;
    int sentence_index = 0;
    double score = 0.0;
};

enum class ScorerKind { Lead, Centrality, Oracle, External };

struct CentralityParams {
    double damping = 0.85;
    double sim_threshold = 0.0;
    int max_iter = 100;
    double tol = 1e-6;
    bool use_idf = false;
};

struct ScorerSpec {
    ScorerKind kind = ScorerKind::Centrality;
    CentralityParams centrality;
    std::string external_path;
    // Pre-loaded per-paper scores; when set, External mode skips file IO.
    const std::vector<ScoredSentence>* external_scores = nullptr;
};

// Position scores 1/(1+i): strictly decreasing, so top-1 is always the lead.
std::vector<ScoredSentence> score_lead(const Section& section, int section_index);

// Power iteration over the sentence similarity graph (cosine over unigram
// count vectors). Scores sum to 1; dangling sentences receive teleport mass.
std::vector<ScoredSentence> score_centrality(const Section& section, int section_index,
                                             const CentralityParams& params = {});

// Greedily adds the sentence that most improves ROUGE-1 F1 of the selected
// set against the target; stops at k or when nothing strictly improves.
// Returned indices are in document order.
std::vector<int> greedy_oracle(const Section& section, std::string_view target, int k,
                               const RougeConfig& rouge = {});

struct ExternalRecord {
    std::string paper_id;
    int section_index = 0;
    int sentence_index = 0;
    double score = 0.0;
};

// CSV (header paper_id,section_index,sentence_index,score) or JSONL with the
// same fields; picked by content sniffing.
std::vector<ExternalRecord> read_external_records(const std::filesystem::path& path);

struct ExternalScores {
    std::vector<ScoredSentence> scores;
    std::vector<std::string> warnings;
};

// Validates records against the paper: out-of-range or duplicate records are
// errors; sentences without a record default to score 0 with a warning.
ExternalScores attach_external_scores(const std::vector<ExternalRecord>& records,
                                      const Paper& paper);
ExternalScores load_external_scores(const std::filesystem::path& path, const Paper& paper);

// Per retained section, the sentence_quota best-scoring sentences, earlier
// position on ties; output indices in document order.
std::map<int, std::vector<int>> select_topk(const std::vector<ScoredSentence>& scores,
                                            const BudgetAllocation& quota);

}  // namespace sectsum
