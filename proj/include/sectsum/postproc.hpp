#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sectsum/assemble.hpp"

namespace sectsum {

struct CleanupReport {
    int citations_removed = 0;
    int unicode_chars_removed = 0;
    int math_spans_removed = 0;

    bool empty() const {
        return citations_removed == 0 && unicode_chars_removed == 0 && math_spans_removed == 0;
    }
    CleanupReport& operator+=(const CleanupReport& other) {
        citations_removed += other.citations_removed;
        unicode_chars_removed += other.unicode_chars_removed;
        math_spans_removed += other.math_spans_removed;
        return *this;
    }
};

struct StripResult {
    std::string text;
    int count = 0;
};

// Removes numeric bracket groups ([12], [3, 7, 21], [4-6]) and parenthesized
// author-year citations ((Name et al., 2019), (Name and Name, 2020)).
// Brackets holding anything else are left alone. Count is per group removed.
StripResult strip_citations(std::string_view text);

// Keeps ASCII printable text. Typographic quotes/dashes are mapped to ASCII;
// accented letters are transliterated by default or deleted in strict mode.
// Count is per codepoint changed or removed.
StripResult strip_noneng(std::string_view text, bool transliterate = true);

// Removes math-notation codepoints (operator/arrow/letterlike blocks plus a
// configurable symbol list). Contiguous runs count as one span. ASCII
// operators like '+' are not in the default set.
StripResult strip_math(std::string_view text,
                       const std::vector<std::string>& extra_symbols = {});

struct PostprocConfig {
    bool citations = true;
    bool unicode = true;
    bool math = true;
    bool transliterate = true;  // false reproduces plain removal
    std::vector<std::string> extra_math_symbols;
};

PostprocConfig load_postproc_config(const std::filesystem::path& path);

// Applies the enabled passes per piece in fixed order (citations, unicode,
// math); when both unicode and math are enabled the unicode pass leaves math
// codepoints for the math pass so the report attributes them correctly. A
// final citation sweep catches groups the character mapping uncovered, which
// keeps repeated application a no-op. Pieces cleaned down to nothing are
// dropped and token_count is recomputed.
std::pair<SummaryDraft, CleanupReport> postprocess(const SummaryDraft& draft,
                                                   const PostprocConfig& config);

}  // namespace sectsum
