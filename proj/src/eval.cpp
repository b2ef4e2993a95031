#include "sectsum/eval.hpp"

#include <ostream>

#include "sectsum/pipeline.hpp"
#include "sectsum/util.hpp"

namespace sectsum {

EvalReport evaluate_corpus(const std::map<std::string, std::string>& system_texts,
                           const std::map<std::string, std::string>& gold_texts,
                           const RougeConfig& rouge, const std::string& label, int jobs) {
    EvalReport report;
    report.corpus.label = label;

    std::vector<std::pair<const std::string*, const std::string*>> pairs;  // (sys, gold)
    std::vector<std::string> ids;
    for (const auto& [id, text] : system_texts) {
        auto it = gold_texts.find(id);
        if (it == gold_texts.end()) {
            report.warnings.push_back("system output '" + id + "' has no gold reference; skipped");
            continue;
        }
        ids.push_back(id);
        pairs.emplace_back(&text, &it->second);
    }
    for (const auto& [id, _] : gold_texts)
        if (!system_texts.count(id))
            report.warnings.push_back("gold reference '" + id + "' has no system output");

    if (pairs.empty()) throw DataError("evaluate: no matched (system, gold) pairs");

    std::vector<ScoreSet> scores(pairs.size());
    parallel_for(pairs.size(), jobs, [&](std::size_t i) {
        scores[i] = score_all(*pairs[i].first, *pairs[i].second, rouge);
    });

    report.matched = static_cast<int>(pairs.size());
    report.per_doc.reserve(pairs.size());
    double n = static_cast<double>(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        report.per_doc.push_back({ids[i], scores[i]});
        report.corpus.r1_f1 += scores[i].r1.f1 * 100.0 / n;
        report.corpus.r2_f1 += scores[i].r2.f1 * 100.0 / n;
        report.corpus.rl_f1 += scores[i].rl.f1 * 100.0 / n;
        report.corpus.r1_recall += scores[i].r1.recall * 100.0 / n;
        report.corpus.r2_recall += scores[i].r2.recall * 100.0 / n;
        report.corpus.rl_recall += scores[i].rl.recall * 100.0 / n;
    }
    report.run_metadata["label"] = label;
    report.run_metadata["matched"] = std::to_string(report.matched);
    report.run_metadata["rouge_lowercase"] = rouge.lowercase ? "true" : "false";
    report.run_metadata["rouge_stemming"] = rouge.stemming ? "true" : "false";
    report.run_metadata["rouge_l_mode"] =
        rouge.rouge_l_mode == RougeLMode::Sequence ? "sequence" : "union";
    return report;
}

namespace {

void print_row(std::ostream& out, const std::string& label, const double* values) {
    out << label;
    for (std::size_t i = label.size(); i < 34; ++i) out << ' ';
    for (int i = 0; i < 6; ++i) {
        std::string v = format_double(values[i], 2);
        for (std::size_t j = v.size(); j < 11; ++j) out << ' ';
        out << v;
    }
    out << '\n';
}

}  // namespace

void print_eval_table(std::ostream& out, const EvalReport& report) {
    const char* headers[] = {"R-1 F1", "R-2 F1", "R-L F1", "R-1 recall", "R-2 recall",
                             "R-L recall"};
    out << "Method";
    for (std::size_t i = 6; i < 34; ++i) out << ' ';
    for (const char* h : headers) {
        std::string v(h);
        for (std::size_t j = v.size(); j < 11; ++j) out << ' ';
        out << v;
    }
    out << '\n';
    for (int i = 0; i < 34 + 11 * 6; ++i) out << '-';
    out << '\n';
    double values[6] = {report.corpus.r1_f1,     report.corpus.r2_f1,
                        report.corpus.rl_f1,     report.corpus.r1_recall,
                        report.corpus.r2_recall, report.corpus.rl_recall};
    print_row(out, report.corpus.label, values);
}

void write_eval_csv(std::ostream& out, const EvalReport& report) {
    for (const auto& [key, value] : report.run_metadata) out << "# " << key << "=" << value << '\n';
    out << "method,r1_f1,r2_f1,rl_f1,r1_recall,r2_recall,rl_recall\n";
    out << csv_escape(report.corpus.label) << ',' << format_double(report.corpus.r1_f1, 2) << ','
        << format_double(report.corpus.r2_f1, 2) << ',' << format_double(report.corpus.rl_f1, 2)
        << ',' << format_double(report.corpus.r1_recall, 2) << ','
        << format_double(report.corpus.r2_recall, 2) << ','
        << format_double(report.corpus.rl_recall, 2) << '\n';
}

void write_per_doc_csv(std::ostream& out, const EvalReport& report) {
    out << "id,r1_f1,r2_f1,rl_f1,r1_recall,r2_recall,rl_recall\n";
    for (const auto& doc : report.per_doc) {
        out << csv_escape(doc.id) << ',' << format_double(doc.scores.r1.f1 * 100.0, 2) << ','
            << format_double(doc.scores.r2.f1 * 100.0, 2) << ','
            << format_double(doc.scores.rl.f1 * 100.0, 2) << ','
            << format_double(doc.scores.r1.recall * 100.0, 2) << ','
            << format_double(doc.scores.r2.recall * 100.0, 2) << ','
            << format_double(doc.scores.rl.recall * 100.0, 2) << '\n';
    }
}

}  // namespace sectsum
