#include "sectsum/analysis.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sectsum/util.hpp"

namespace sectsum {

const char* axis_name(MetricAxis axis) {
    return axis == MetricAxis::F1 ? "f1" : "recall";
}

std::map<std::string, double> heading_frequency(const std::vector<Paper>& corpus) {
    if (corpus.empty()) throw std::invalid_argument("heading_frequency: empty corpus");
    std::map<std::string, int> counts;
    for (const auto& paper : corpus) {
        std::map<std::string, bool> present;
        for (const auto& sec : paper.sections) present[sec.heading_canonical] = true;
        for (const auto& [heading, _] : present) ++counts[heading];
    }
    std::map<std::string, double> freq;
    for (const auto& [heading, count] : counts)
        freq[heading] = static_cast<double>(count) / static_cast<double>(corpus.size());
    return freq;
}

ContributionResult section_contribution(const std::vector<Paper>& corpus,
                                        const std::map<std::string, std::string>& gold,
                                        MetricAxis axis, double min_freq,
                                        const RougeConfig& rouge) {
    if (corpus.empty()) throw std::invalid_argument("section_contribution: empty corpus");

    ContributionResult result;
    std::vector<const Paper*> scored;
    for (const auto& paper : corpus) {
        if (gold.count(paper.id)) {
            scored.push_back(&paper);
        } else {
            result.warnings.push_back("no gold summary for paper '" + paper.id + "'; skipped");
        }
    }
    result.papers_scored = static_cast<int>(scored.size());
    if (scored.empty()) return result;

    struct Accum {
        double r1 = 0, r2 = 0, rl = 0;
        int n = 0;
    };
    std::map<std::string, Accum> accums;
    for (const Paper* paper : scored) {
        const std::string& gold_text = gold.at(paper->id);
        std::map<std::string, bool> seen;  // one score per heading per paper
        for (const auto& sec : paper->sections) {
            if (seen[sec.heading_canonical]) continue;
            seen[sec.heading_canonical] = true;
            ScoreSet s = score_all(sec.text(), gold_text, rouge);
            auto pick = [axis](const RougeScore& sc) {
                return (axis == MetricAxis::F1 ? sc.f1 : sc.recall) * 100.0;
            };
            Accum& a = accums[sec.heading_canonical];
            a.r1 += pick(s.r1);
            a.r2 += pick(s.r2);
            a.rl += pick(s.rl);
            ++a.n;
        }
    }

    const double total = static_cast<double>(scored.size());
    for (const auto& [heading, a] : accums) {
        double freq = static_cast<double>(a.n) / total;
        if (freq < min_freq) continue;
        ContributionRow row;
        row.heading = heading;
        row.paper_frequency = freq;
        row.n_papers = a.n;
        row.mean_r1 = a.r1 / a.n;
        row.mean_r2 = a.r2 / a.n;
        row.mean_rl = a.rl / a.n;
        result.rows.push_back(std::move(row));
    }
    std::sort(result.rows.begin(), result.rows.end(),
              [](const ContributionRow& a, const ContributionRow& b) {
                  if (a.mean_r1 != b.mean_r1) return a.mean_r1 > b.mean_r1;
                  return a.heading < b.heading;
              });
    return result;
}

void write_contribution_csv(std::ostream& out, const std::vector<ContributionRow>& rows,
                            const ContributionMeta& meta) {
    out << "# section-contribution report\n";
    out << "# axis=" << axis_name(meta.axis) << " candidate=section reference=gold"
        << " min_freq=" << format_double(meta.min_freq, 4)
        << " corpus_size=" << meta.corpus_size << "\n";
    out << "heading,frequency,n_papers,mean_r1,mean_r2,mean_rl\n";
    for (const auto& row : rows) {
        out << csv_escape(row.heading) << ',' << format_double(row.paper_frequency, 4) << ','
            << row.n_papers << ',' << format_double(row.mean_r1, 4) << ','
            << format_double(row.mean_r2, 4) << ',' << format_double(row.mean_rl, 4) << '\n';
    }
}

std::vector<ContributionRow> read_contribution_csv(std::istream& in) {
    std::vector<ContributionRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = parse_csv_line(t);
        if (!header_seen) {
            header_seen = true;
            if (!fields.empty() && fields[0] == "heading") continue;  // header row
        }
        if (fields.size() < 6) throw DataError("malformed contribution CSV row: " + t);
        ContributionRow row;
        row.heading = fields[0];
        row.paper_frequency = std::stod(fields[1]);
        row.n_papers = std::stoi(fields[2]);
        row.mean_r1 = std::stod(fields[3]);
        row.mean_r2 = std::stod(fields[4]);
        row.mean_rl = std::stod(fields[5]);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_plot_csv(std::ostream& out, const std::vector<ContributionRow>& rows) {
    out << "heading,metric,value\n";
    for (const auto& row : rows) {
        out << csv_escape(row.heading) << ",rouge1," << format_double(row.mean_r1, 4) << '\n';
        out << csv_escape(row.heading) << ",rouge2," << format_double(row.mean_r2, 4) << '\n';
        out << csv_escape(row.heading) << ",rougeL," << format_double(row.mean_rl, 4) << '\n';
    }
}

}  // namespace sectsum
