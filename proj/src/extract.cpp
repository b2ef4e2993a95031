#include "sectsum/extract.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "sectsum/util.hpp"

namespace sectsum {

std::vector<ScoredSentence> score_lead(const Section& section, int section_index) {
    std::vector<ScoredSentence> out;
    out.reserve(section.sentences.size());
    for (std::size_t i = 0; i < section.sentences.size(); ++i)
        out.push_back({section_index, static_cast<int>(i), 1.0 / (1.0 + static_cast<double>(i))});
    return out;
}

namespace {

using CountVec = std::unordered_map<std::string, double>;

double dot(const CountVec& a, const CountVec& b) {
    const CountVec& small = a.size() <= b.size() ? a : b;
    const CountVec& large = a.size() <= b.size() ? b : a;
    double sum = 0.0;
    for (const auto& [token, weight] : small) {
        auto it = large.find(token);
        if (it != large.end()) sum += weight * it->second;
    }
    return sum;
}

}  // namespace

std::vector<ScoredSentence> score_centrality(const Section& section, int section_index,
                                             const CentralityParams& params) {
    if (params.damping <= 0.0 || params.damping >= 1.0)
        throw std::invalid_argument("score_centrality: damping must be in (0, 1)");
    const std::size_t n = section.sentences.size();
    std::vector<ScoredSentence> out;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back({section_index, 0, 1.0});
        return out;
    }

    RougeConfig token_cfg;
    std::vector<CountVec> vecs(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& t : tokenize(section.sentences[i].text, token_cfg)) vecs[i][t] += 1.0;

    if (params.use_idf) {
        std::unordered_map<std::string, int> df;
        for (const auto& v : vecs)
            for (const auto& [token, _] : v) ++df[token];
        for (auto& v : vecs)
            for (auto& [token, weight] : v)
                weight *= std::log((1.0 + n) / (1.0 + df[token])) + 1.0;
    }

    std::vector<double> norms(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) norms[i] = std::sqrt(dot(vecs[i], vecs[i]));

    std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
    std::vector<double> out_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            if (norms[i] > 0.0 && norms[j] > 0.0) s = dot(vecs[i], vecs[j]) / (norms[i] * norms[j]);
            if (s < params.sim_threshold) s = 0.0;
            sim[i][j] = sim[j][i] = s;
        }
        for (std::size_t j = 0; j < n; ++j) out_sum[i] += sim[i][j];
    }

    const double d = params.damping;
    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    for (int iter = 0; iter < params.max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (out_sum[j] <= 0.0) dangling += p[j];
        double max_delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double incoming = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (sim[j][i] > 0.0 && out_sum[j] > 0.0) incoming += sim[j][i] / out_sum[j] * p[j];
            next[i] = (1.0 - d) / static_cast<double>(n) +
                      d * (incoming + dangling / static_cast<double>(n));
            max_delta = std::max(max_delta, std::abs(next[i] - p[i]));
        }
        std::swap(p, next);
        if (max_delta < params.tol) break;
    }

    double sum = 0.0;
    for (double v : p) sum += v;
    if (sum > 0.0)
        for (double& v : p) v /= sum;

    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({section_index, static_cast<int>(i), p[i]});
    return out;
}

std::vector<int> greedy_oracle(const Section& section, std::string_view target, int k,
                               const RougeConfig& rouge) {
    std::vector<int> picked;
    if (section.sentences.empty() || k < 1) return picked;
    TokenSeq target_tokens = tokenize(target, rouge);
    if (target_tokens.empty()) return picked;

    std::unordered_map<std::string, int> ref_counts;
    for (const auto& t : target_tokens) ++ref_counts[t];
    const double ref_total = static_cast<double>(target_tokens.size());

    const std::size_t n = section.sentences.size();
    std::vector<std::unordered_map<std::string, int>> sent_counts(n);
    std::vector<int> sent_sizes(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        TokenSeq toks = tokenize(section.sentences[i].text, rouge);
        sent_sizes[i] = static_cast<int>(toks.size());
        for (const auto& t : toks) ++sent_counts[i][t];
    }

    // ROUGE-1 is order-free, so the selected set is tracked as a count map.
    std::unordered_map<std::string, int> selected_counts;
    int selected_size = 0;
    std::vector<bool> in_set(n, false);
    double best_f1 = 0.0;

    auto f1_with = [&](std::size_t add) {
        long overlap = 0;
        for (const auto& [token, ref_count] : ref_counts) {
            int cand = 0;
            auto it = selected_counts.find(token);
            if (it != selected_counts.end()) cand = it->second;
            auto it2 = sent_counts[add].find(token);
            if (it2 != sent_counts[add].end()) cand += it2->second;
            overlap += std::min(cand, ref_count);
        }
        double cand_total = static_cast<double>(selected_size + sent_sizes[add]);
        if (cand_total <= 0.0 || overlap == 0) return 0.0;
        double p = overlap / cand_total;
        double r = overlap / ref_total;
        return 2.0 * p * r / (p + r);
    };

    while (static_cast<int>(picked.size()) < k) {
        int best_idx = -1;
        double best_candidate = best_f1;
        for (std::size_t i = 0; i < n; ++i) {
            if (in_set[i]) continue;
            double f1 = f1_with(i);
            if (f1 > best_candidate) {
                best_candidate = f1;
                best_idx = static_cast<int>(i);
            }
        }
        if (best_idx < 0) break;  // no strict improvement
        in_set[static_cast<std::size_t>(best_idx)] = true;
        for (const auto& [token, count] : sent_counts[static_cast<std::size_t>(best_idx)])
            selected_counts[token] += count;
        selected_size += sent_sizes[static_cast<std::size_t>(best_idx)];
        best_f1 = best_candidate;
        picked.push_back(best_idx);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

// ---------------------------------------------------------------------------
// External score files
// ---------------------------------------------------------------------------

std::vector<ExternalRecord> read_external_records(const std::filesystem::path& path) {
    std::string content = read_file(path);
    std::vector<ExternalRecord> records;
    std::string_view view = trim_view(content);
    if (view.empty()) return records;

    std::istringstream in{std::string(view)};
    std::string line;
    if (view.front() == '{') {
        // JSONL
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string t = trim(line);
            if (t.empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(t);
            } catch (const nlohmann::json::parse_error& e) {
                throw DataError("external scores " + path.string() + " line " +
                                std::to_string(line_no) + ": " + e.what());
            }
            ExternalRecord rec;
            try {
                rec.paper_id = j.at("paper_id").get<std::string>();
                rec.section_index = j.at("section_index").get<int>();
                rec.sentence_index = j.at("sentence_index").get<int>();
                rec.score = j.at("score").get<double>();
            } catch (const nlohmann::json::exception& e) {
                throw DataError("external scores " + path.string() + " line " +
                                std::to_string(line_no) + ": " + e.what());
            }
            records.push_back(std::move(rec));
        }
        return records;
    }

    // CSV
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        auto fields = parse_csv_line(t);
        if (header) {
            header = false;
            if (fields.size() < 4 || fields[0] != "paper_id" || fields[1] != "section_index" ||
                fields[2] != "sentence_index" || fields[3] != "score")
                throw DataError("external scores " + path.string() +
                                ": expected header paper_id,section_index,sentence_index,score");
            continue;
        }
        if (fields.size() < 4)
            throw DataError("external scores " + path.string() + " line " +
                            std::to_string(line_no) + ": expected 4 fields");
        try {
            records.push_back({fields[0], std::stoi(fields[1]), std::stoi(fields[2]),
                               std::stod(fields[3])});
        } catch (const std::exception&) {
            throw DataError("external scores " + path.string() + " line " +
                            std::to_string(line_no) + ": bad number");
        }
    }
    return records;
}

ExternalScores attach_external_scores(const std::vector<ExternalRecord>& records,
                                      const Paper& paper) {
    ExternalScores out;
    std::map<std::pair<int, int>, double> by_pos;
    for (const auto& rec : records) {
        if (rec.paper_id != paper.id) continue;
        std::string where = "paper " + rec.paper_id + " section " +
                            std::to_string(rec.section_index) + " sentence " +
                            std::to_string(rec.sentence_index);
        if (rec.section_index < 0 ||
            static_cast<std::size_t>(rec.section_index) >= paper.sections.size())
            throw DataError("external score record out of range: " + where);
        const Section& sec = paper.sections[static_cast<std::size_t>(rec.section_index)];
        if (rec.sentence_index < 0 ||
            static_cast<std::size_t>(rec.sentence_index) >= sec.sentences.size())
            throw DataError("external score record out of range: " + where);
        if (!std::isfinite(rec.score))
            throw DataError("external score not finite: " + where);
        auto [it, inserted] = by_pos.emplace(std::make_pair(rec.section_index, rec.sentence_index),
                                             rec.score);
        if (!inserted) throw DataError("duplicate external score record: " + where);
    }
    for (std::size_t s = 0; s < paper.sections.size(); ++s) {
        for (std::size_t i = 0; i < paper.sections[s].sentences.size(); ++i) {
            auto it = by_pos.find({static_cast<int>(s), static_cast<int>(i)});
            double score = 0.0;
            if (it != by_pos.end()) {
                score = it->second;
            } else {
                out.warnings.push_back("no external score for paper " + paper.id + " section " +
                                       std::to_string(s) + " sentence " + std::to_string(i) +
                                       "; defaulting to 0");
            }
            out.scores.push_back({static_cast<int>(s), static_cast<int>(i), score});
        }
    }
    return out;
}

ExternalScores load_external_scores(const std::filesystem::path& path, const Paper& paper) {
    return attach_external_scores(read_external_records(path), paper);
}

std::map<int, std::vector<int>> select_topk(const std::vector<ScoredSentence>& scores,
                                            const BudgetAllocation& quota) {
    std::map<int, std::vector<const ScoredSentence*>> by_section;
    for (const auto& s : scores) by_section[s.section_index].push_back(&s);

    std::map<int, std::vector<int>> out;
    for (auto& [section_index, entries] : by_section) {
        auto it = quota.quotas.find(section_index);
        if (it == quota.quotas.end()) continue;
        int q = it->second.sentence_quota;
        if (q <= 0 || it->second.weight <= 0.0) continue;
        std::sort(entries.begin(), entries.end(),
                  [](const ScoredSentence* a, const ScoredSentence* b) {
                      if (a->score != b->score) return a->score > b->score;
                      return a->sentence_index < b->sentence_index;
                  });
        std::vector<int> picked;
        for (std::size_t i = 0; i < entries.size() && static_cast<int>(picked.size()) < q; ++i)
            picked.push_back(entries[i]->sentence_index);
        std::sort(picked.begin(), picked.end());
        if (!picked.empty()) out[section_index] = std::move(picked);
    }
    return out;
}

}  // namespace sectsum
