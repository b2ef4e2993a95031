#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sectsum/rouge.hpp"

namespace sectsum {

// One table row: the six reported numbers on the 0-100 scale.
struct EvalRow {
    std::string label;
    double r1_f1 = 0, r2_f1 = 0, rl_f1 = 0;
    double r1_recall = 0, r2_recall = 0, rl_recall = 0;
};

struct DocScores {
    std::string id;
    ScoreSet scores;
};

struct EvalReport {
    EvalRow corpus;                    // arithmetic mean over matched documents
    std::vector<DocScores> per_doc;    // sorted by id
    std::map<std::string, std::string> run_metadata;
    std::vector<std::string> warnings;
    int matched = 0;
};

// Scores each matched (system, gold) pair with score_all; system text is the
// candidate. Ids present on only one side produce warnings; zero matches is
// an error. jobs > 1 scores documents concurrently; aggregation order is
// id-sorted either way.
EvalReport evaluate_corpus(const std::map<std::string, std::string>& system_texts,
                           const std::map<std::string, std::string>& gold_texts,
                           const RougeConfig& rouge = {}, const std::string& label = "system",
                           int jobs = 1);

void print_eval_table(std::ostream& out, const EvalReport& report);
void write_eval_csv(std::ostream& out, const EvalReport& report);
void write_per_doc_csv(std::ostream& out, const EvalReport& report);

}  // namespace sectsum
