#pragma once

#include <map>
#include <string>
#include <vector>

#include "sectsum/analysis.hpp"
#include "sectsum/ingest.hpp"
#include "sectsum/rouge.hpp"

namespace sectsum {

// Per-section ROUGE-1 overlap with the target summary, on the 0-100 scale.
struct SectionOverlap {
    int section_index = 0;
    double r1_overlap = 0.0;
};

struct SectionQuota {
    double weight = 0.0;
    int token_quota = 0;
    int sentence_quota = 0;
};

struct BudgetAllocation {
    std::map<int, SectionQuota> quotas;  // every section index present
    int total_budget_tokens = 0;
    double cutoff = 0.0;
};

// Sections with overlap below the cutoff get weight 0; survivors are weighted
// proportionally to overlap. If nothing survives (or all surviving overlaps
// are zero) the highest-overlap section gets weight 1, earliest index on ties.
std::map<int, double> compute_weights(const std::vector<SectionOverlap>& overlaps, double cutoff);

// Token quotas by largest-remainder apportionment of total_budget_tokens;
// sentence quotas from the section's mean sentence length, floored at 1 for
// retained sections and clamped to the section's sentence count.
BudgetAllocation allocate_budget(const std::map<int, double>& weights, int total_budget_tokens,
                                 const std::vector<Section>& sections);

enum class WeightMode { Gold, Prior };

// Gold mode scores each section against the gold summary directly; prior mode
// looks the heading up in a contribution table built on a training corpus,
// falling back to the table's median overlap for unseen headings.
std::vector<SectionOverlap> overlap_source(const Paper& paper, WeightMode mode,
                                           const std::string* gold,
                                           const std::vector<ContributionRow>* prior_table,
                                           MetricAxis axis = MetricAxis::F1,
                                           const RougeConfig& rouge = {});

}  // namespace sectsum
