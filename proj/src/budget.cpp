#include "sectsum/budget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sectsum {

std::map<int, double> compute_weights(const std::vector<SectionOverlap>& overlaps, double cutoff) {
    if (overlaps.empty()) throw std::invalid_argument("compute_weights: empty overlap list");
    if (cutoff < 0.0) throw std::invalid_argument("compute_weights: negative cutoff");

    std::map<int, double> weights;
    double surviving_sum = 0.0;
    for (const auto& o : overlaps) {
        weights[o.section_index] = 0.0;
        if (o.r1_overlap >= cutoff) surviving_sum += o.r1_overlap;
    }
    if (surviving_sum > 0.0) {
        for (const auto& o : overlaps)
            if (o.r1_overlap >= cutoff) weights[o.section_index] = o.r1_overlap / surviving_sum;
        return weights;
    }
    // Nothing usable above the cutoff: highest overlap wins, earliest index on ties.
    const SectionOverlap* best = &overlaps.front();
    for (const auto& o : overlaps) {
        if (o.r1_overlap > best->r1_overlap ||
            (o.r1_overlap == best->r1_overlap && o.section_index < best->section_index))
            best = &o;
    }
    weights[best->section_index] = 1.0;
    return weights;
}

BudgetAllocation allocate_budget(const std::map<int, double>& weights, int total_budget_tokens,
                                 const std::vector<Section>& sections) {
    if (total_budget_tokens < 1)
        throw std::invalid_argument("allocate_budget: budget must be >= 1 token");

    BudgetAllocation alloc;
    alloc.total_budget_tokens = total_budget_tokens;

    struct Retained {
        int index;
        double share;
        int base;
        double remainder;
    };
    std::vector<Retained> retained;
    for (const auto& [index, weight] : weights) {
        alloc.quotas[index] = SectionQuota{weight, 0, 0};
        if (weight <= 0.0) continue;
        if (index < 0 || static_cast<std::size_t>(index) >= sections.size())
            throw std::out_of_range("allocate_budget: section index " + std::to_string(index));
        double share = weight * total_budget_tokens;
        int base = static_cast<int>(std::floor(share));
        retained.push_back({index, share, base, share - base});
    }
    if (retained.empty()) return alloc;

    int assigned = 0;
    for (const auto& r : retained) assigned += r.base;
    int leftover = total_budget_tokens - assigned;

    std::vector<std::size_t> order(retained.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (retained[a].remainder != retained[b].remainder)
            return retained[a].remainder > retained[b].remainder;
        return retained[a].index < retained[b].index;
    });
    for (std::size_t i = 0; leftover > 0; i = (i + 1) % order.size(), --leftover)
        ++retained[order[i]].base;

    for (const auto& r : retained) {
        const Section& sec = sections[static_cast<std::size_t>(r.index)];
        SectionQuota& q = alloc.quotas[r.index];
        q.token_quota = r.base;
        int n_sentences = static_cast<int>(sec.sentences.size());
        if (n_sentences == 0) continue;
        double mean_len = static_cast<double>(sec.token_count()) / n_sentences;
        int wanted = mean_len > 0.0
                         ? static_cast<int>(std::lround(q.token_quota / mean_len))
                         : 1;
        q.sentence_quota = std::clamp(std::max(1, wanted), 1, n_sentences);
    }
    return alloc;
}

std::vector<SectionOverlap> overlap_source(const Paper& paper, WeightMode mode,
                                           const std::string* gold,
                                           const std::vector<ContributionRow>* prior_table,
                                           MetricAxis axis, const RougeConfig& rouge) {
    std::vector<SectionOverlap> overlaps;
    overlaps.reserve(paper.sections.size());

    if (mode == WeightMode::Gold) {
        if (!gold) throw std::invalid_argument("overlap_source: gold mode requires a gold summary");
        TokenSeq gold_tokens = tokenize(*gold, rouge);
        for (std::size_t i = 0; i < paper.sections.size(); ++i) {
            RougeScore s = rouge_n(tokenize(paper.sections[i].text(), rouge), gold_tokens, 1);
            double value = (axis == MetricAxis::F1 ? s.f1 : s.recall) * 100.0;
            overlaps.push_back({static_cast<int>(i), value});
        }
        return overlaps;
    }

    if (!prior_table || prior_table->empty())
        throw std::invalid_argument("overlap_source: prior mode requires a contribution table");
    std::vector<double> means;
    means.reserve(prior_table->size());
    for (const auto& row : *prior_table) means.push_back(row.mean_r1);
    std::sort(means.begin(), means.end());
    double median = means.size() % 2 == 1
                        ? means[means.size() / 2]
                        : 0.5 * (means[means.size() / 2 - 1] + means[means.size() / 2]);

    for (std::size_t i = 0; i < paper.sections.size(); ++i) {
        const std::string& heading = paper.sections[i].heading_canonical;
        double value = median;
        for (const auto& row : *prior_table) {
            if (row.heading == heading) {
                value = row.mean_r1;
                break;
            }
        }
        overlaps.push_back({static_cast<int>(i), value});
    }
    return overlaps;
}

}  // namespace sectsum
