#include "sectsum/assemble.hpp"

#include <algorithm>
#include <stdexcept>

#include "sectsum/util.hpp"

namespace sectsum {

std::string SummaryDraft::text() const {
    std::string out;
    for (const auto& p : pieces) {
        if (!out.empty()) out.push_back(' ');
        out += p.text;
    }
    return out;
}

namespace {

int piece_tokens(const Paper& paper, const SummaryPiece& piece) {
    return paper.sections[static_cast<std::size_t>(piece.section_index)]
        .sentences[static_cast<std::size_t>(piece.sentence_index)]
        .token_count;
}

// Byte offset just past the k-th token (ASCII alphanumeric runs), or npos if
// the text has fewer than k tokens.
std::size_t token_prefix_end(std::string_view text, int k) {
    int seen = 0;
    bool in_token = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        bool alnum = is_ascii_alnum(static_cast<unsigned char>(text[i]));
        if (alnum && !in_token) in_token = true;
        if (!alnum && in_token) {
            in_token = false;
            if (++seen == k) return i;
        }
    }
    if (in_token && ++seen == k) return text.size();
    return std::string_view::npos;
}

}  // namespace

SummaryDraft assemble_longsumm(const Paper& paper, const WeightSettings& weights,
                               const ScorerSpec& scorer, int budget_tokens,
                               const std::string* gold, const RougeConfig& rouge) {
    if (paper.sections.empty())
        throw std::invalid_argument("assemble_longsumm: paper '" + paper.id + "' has no sections");
    if (budget_tokens < 1) throw std::invalid_argument("assemble_longsumm: budget must be >= 1");

    SummaryDraft draft;
    draft.id = paper.id;
    draft.task = Task::LongSumm;

    auto overlaps = overlap_source(paper, weights.mode, gold, weights.prior_table, weights.axis,
                                   rouge);
    auto weight_map = compute_weights(overlaps, weights.cutoff);
    BudgetAllocation alloc = allocate_budget(weight_map, budget_tokens, paper.sections);

    std::map<int, std::vector<int>> selection;
    if (scorer.kind == ScorerKind::Oracle) {
        if (!gold)
            throw std::invalid_argument("assemble_longsumm: oracle scorer requires a gold summary");
        for (const auto& [index, quota] : alloc.quotas) {
            if (quota.weight <= 0.0 || quota.sentence_quota <= 0) continue;
            auto picks = greedy_oracle(paper.sections[static_cast<std::size_t>(index)], *gold,
                                       quota.sentence_quota, rouge);
            if (!picks.empty()) selection[index] = std::move(picks);
        }
    } else {
        std::vector<ScoredSentence> scores;
        if (scorer.kind == ScorerKind::External) {
            if (scorer.external_scores) {
                scores = *scorer.external_scores;
            } else {
                ExternalScores ext = load_external_scores(scorer.external_path, paper);
                scores = std::move(ext.scores);
                draft.warnings.insert(draft.warnings.end(), ext.warnings.begin(),
                                      ext.warnings.end());
            }
        } else {
            for (std::size_t i = 0; i < paper.sections.size(); ++i) {
                auto it = alloc.quotas.find(static_cast<int>(i));
                if (it == alloc.quotas.end() || it->second.weight <= 0.0) continue;
                auto sec_scores =
                    scorer.kind == ScorerKind::Lead
                        ? score_lead(paper.sections[i], static_cast<int>(i))
                        : score_centrality(paper.sections[i], static_cast<int>(i),
                                           scorer.centrality);
                scores.insert(scores.end(), sec_scores.begin(), sec_scores.end());
            }
        }
        selection = select_topk(scores, alloc);
    }

    for (const auto& [section_index, sentence_indices] : selection) {
        const Section& sec = paper.sections[static_cast<std::size_t>(section_index)];
        for (int si : sentence_indices)
            draft.pieces.push_back(
                {section_index, si, sec.sentences[static_cast<std::size_t>(si)].text});
    }
    for (const auto& p : draft.pieces) draft.token_count += piece_tokens(paper, p);

    if (draft.token_count > budget_tokens) {
        // Victims ordered by ascending weight; later sections drop first on ties.
        std::vector<int> victims;
        for (const auto& [index, _] : selection) victims.push_back(index);
        std::sort(victims.begin(), victims.end(), [&](int a, int b) {
            double wa = alloc.quotas.at(a).weight;
            double wb = alloc.quotas.at(b).weight;
            if (wa != wb) return wa < wb;
            return a > b;
        });
        for (int victim : victims) {
            while (draft.token_count > budget_tokens && draft.pieces.size() > 1) {
                // Last remaining piece of this section, in document order.
                std::ptrdiff_t pos = -1;
                for (std::size_t i = draft.pieces.size(); i-- > 0;) {
                    if (draft.pieces[i].section_index == victim) {
                        pos = static_cast<std::ptrdiff_t>(i);
                        break;
                    }
                }
                if (pos < 0) break;
                draft.token_count -= piece_tokens(paper, draft.pieces[static_cast<std::size_t>(pos)]);
                draft.pieces.erase(draft.pieces.begin() + pos);
            }
            if (draft.token_count <= budget_tokens || draft.pieces.size() <= 1) break;
        }
        if (draft.token_count > budget_tokens) draft.over_budget = true;
    }
    return draft;
}

SummaryDraft lead150_laysumm(const Paper& paper, bool hard_truncate, bool allow_body_fallback,
                             int budget_tokens) {
    if (budget_tokens < 1) throw std::invalid_argument("lead150_laysumm: budget must be >= 1");

    const Section* source = paper.abstract();
    int section_index = source ? static_cast<int>(*paper.abstract_index) : -1;
    if (!source) {
        if (allow_body_fallback && !paper.sections.empty()) {
            source = &paper.sections[0];
            section_index = 0;
        } else {
            throw DataError("paper '" + paper.id +
                            "' has no abstract; pass --use-first-section to fall back to the "
                            "first body section");
        }
    }

    SummaryDraft draft;
    draft.id = paper.id;
    draft.task = Task::LaySumm;

    int used = 0;
    for (std::size_t i = 0; i < source->sentences.size(); ++i) {
        const Sentence& sent = source->sentences[i];
        if (used + sent.token_count <= budget_tokens) {
            draft.pieces.push_back({section_index, static_cast<int>(i), sent.text});
            used += sent.token_count;
            continue;
        }
        int room = budget_tokens - used;
        bool force_cut = hard_truncate || draft.pieces.empty();
        if (force_cut && room > 0) {
            // Hard mode fills to exactly the budget; sentence mode only cuts
            // when not even the first sentence fits.
            std::size_t end = token_prefix_end(sent.text, room);
            if (end != std::string_view::npos) {
                std::string piece = trim(std::string_view(sent.text).substr(0, end));
                if (!piece.empty()) {
                    draft.pieces.push_back({section_index, static_cast<int>(i), std::move(piece)});
                    used += room;
                    draft.truncated_mid_sentence = true;
                }
            }
        }
        break;
    }
    draft.token_count = used;
    return draft;
}

}  // namespace sectsum
