#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sectsum {

using TokenSeq = std::vector<std::string>;

// ROUGE-L flavour. Sequence treats candidate and reference as single token
// streams and scores their LCS. Union is the summary-level variant: each
// reference sentence is matched against the whole candidate and the matched
// token counts are summed (ratios clamped to [0,1]).
enum class RougeLMode { Sequence, Union };

struct RougeConfig {
    bool lowercase = true;
    bool stemming = false;
    RougeLMode rouge_l_mode = RougeLMode::Sequence;
};

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // Set when a side was too short to produce any n-gram / token.
    bool degenerate = false;
};

struct ScoreSet {
    RougeScore r1;
    RougeScore r2;
    RougeScore rl;
};

// Splits on every maximal run of non-alphanumeric (ASCII) characters.
TokenSeq tokenize(std::string_view text, const RougeConfig& config = {});

// Classic Porter (1980) stemmer; input is lowercased first.
std::string porter_stem(std::string word);

// Clipped n-gram multiset overlap. f1 is the plain harmonic mean (beta = 1).
RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference, int n);

// Sequence-mode LCS score; Union mode over a single-sentence reference is
// identical to Sequence mode (sentence boundaries are gone at this level).
RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference,
                   const RougeConfig& config = {});

// Summary-level ROUGE-L: per reference sentence, LCS against the whole
// candidate stream; matched counts summed.
RougeScore rouge_l_union(const TokenSeq& candidate,
                         const std::vector<TokenSeq>& reference_sentences);

// R-1 / R-2 / R-L from a single tokenization pass. In Union mode the
// reference text is split into sentences on terminal punctuation.
ScoreSet score_all(std::string_view candidate, std::string_view reference,
                   const RougeConfig& config = {});

}  // namespace sectsum
