#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sectsum/ingest.hpp"
#include "sectsum/rouge.hpp"

namespace sectsum {

enum class MetricAxis { F1, Recall };

const char* axis_name(MetricAxis axis);

// Per-heading overlap between sections and gold summaries, averaged over the
// papers that contain the heading. Means are on the 0-100 scale.
struct ContributionRow {
    std::string heading;
    double paper_frequency = 0.0;  // fraction of papers containing the heading
    double mean_r1 = 0.0;
    double mean_r2 = 0.0;
    double mean_rl = 0.0;
    int n_papers = 0;
};

// Fraction of papers containing each canonical heading at least once.
std::map<std::string, double> heading_frequency(const std::vector<Paper>& corpus);

struct ContributionResult {
    std::vector<ContributionRow> rows;  // sorted by mean_r1 descending
    std::vector<std::string> warnings;
    int papers_scored = 0;
};

// Section text is the candidate, the gold summary the reference. Papers with
// no gold entry are skipped with a warning. Headings below min_freq (strictly)
// are dropped; the threshold is inclusive.
ContributionResult section_contribution(const std::vector<Paper>& corpus,
                                        const std::map<std::string, std::string>& gold,
                                        MetricAxis axis = MetricAxis::F1,
                                        double min_freq = 0.05,
                                        const RougeConfig& rouge = {});

struct ContributionMeta {
    MetricAxis axis = MetricAxis::F1;
    double min_freq = 0.05;
    int corpus_size = 0;
};

void write_contribution_csv(std::ostream& out, const std::vector<ContributionRow>& rows,
                            const ContributionMeta& meta);
std::vector<ContributionRow> read_contribution_csv(std::istream& in);

// Long-format per-heading series (heading,metric,value) for external plotting.
void write_plot_csv(std::ostream& out, const std::vector<ContributionRow>& rows);

}  // namespace sectsum
