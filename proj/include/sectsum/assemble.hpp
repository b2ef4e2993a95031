#pragma once

#include <string>
#include <vector>

#include "sectsum/budget.hpp"
#include "sectsum/extract.hpp"
#include "sectsum/ingest.hpp"

namespace sectsum {

enum class Task { LongSumm, LaySumm };

struct SummaryPiece {
    int section_index = 0;
    int sentence_index = 0;
    std::string text;
};

struct SummaryDraft {
    std::string id;
    std::vector<SummaryPiece> pieces;  // sorted by (section, sentence)
    int token_count = 0;
    Task task = Task::LongSumm;
    bool over_budget = false;
    bool truncated_mid_sentence = false;
    std::vector<std::string> warnings;

    // Piece texts joined by single spaces.
    std::string text() const;
};

struct WeightSettings {
    WeightMode mode = WeightMode::Prior;
    double cutoff = 20.0;
    MetricAxis axis = MetricAxis::F1;
    const std::vector<ContributionRow>* prior_table = nullptr;
};

// overlap_source -> compute_weights -> allocate_budget -> score -> select,
// concatenated in document order. Over-budget drafts are trimmed from the end
// of the lowest-weight section upward; the final sentence is never dropped
// (the draft is flagged over_budget instead). gold is required for gold-mode
// weights and for the oracle scorer.
SummaryDraft assemble_longsumm(const Paper& paper, const WeightSettings& weights,
                               const ScorerSpec& scorer, int budget_tokens,
                               const std::string* gold = nullptr, const RougeConfig& rouge = {});

// Lead baseline over the abstract. Default keeps whole sentences within the
// budget; hard_truncate cuts at exactly budget_tokens. Without an abstract it
// throws unless allow_body_fallback permits using the first body section.
SummaryDraft lead150_laysumm(const Paper& paper, bool hard_truncate = false,
                             bool allow_body_fallback = false, int budget_tokens = 150);

}  // namespace sectsum
