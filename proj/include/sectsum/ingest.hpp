#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sectsum {

struct Sentence {
    std::string text;
    int index_in_section = 0;
    int token_count = 0;
};

struct Section {
    std::string heading_raw;
    std::string heading_canonical;
    std::vector<Sentence> sentences;

    // Sentence texts joined by single spaces.
    std::string text() const;
    int token_count() const;
};

struct Paper {
    std::string id;
    std::string title;
    std::vector<Section> sections;
    // Index into sections when an abstract is present; the abstract is a
    // regular section with canonical heading "abstract".
    std::optional<std::size_t> abstract_index;

    bool empty() const { return sections.empty(); }
    const Section* abstract() const;
};

enum class PaperFormat { ScienceParse, LaySumm };

// Malformed JSON input; carries the byte offset reported by the parser.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t byte)
        : std::runtime_error(msg), byte_offset(byte) {}
    std::size_t byte_offset = 0;
};

// Structurally valid JSON missing a required field.
struct SchemaError : std::runtime_error {
    SchemaError(const std::string& msg, std::string field_name)
        : std::runtime_error(msg), field(std::move(field_name)) {}
    std::string field;
};

// Rule-based sentence splitter: boundaries at [.?!] followed by whitespace
// and an uppercase letter or digit, with a protected-abbreviation list.
// Single initials ("J.") and chained initials ("i.e.", "u.s.") never break.
class SentenceBreaker {
public:
    SentenceBreaker();

    // Abbreviations are matched case-insensitively on the token ending at
    // the period, e.g. "fig." or "al." (which covers "et al.").
    void add_abbreviation(std::string abbrev);
    void load_abbreviations(std::istream& in);

    std::vector<Sentence> segment(std::string_view text) const;

private:
    std::unordered_set<std::string> abbreviations_;
    bool is_protected(std::string_view token) const;
};

// Segments with the default abbreviation list.
std::vector<Sentence> segment_sentences(std::string_view text);

using ConflationMap = std::map<std::string, std::string>;

// Lowercase, trim, collapse whitespace, strip a leading enumeration token
// ("1.", "2.3", "IV."), then apply the optional exact-match conflation map.
std::string normalize_heading(std::string_view raw, const ConflationMap* conflation = nullptr);

struct ParseOptions {
    const SentenceBreaker* breaker = nullptr;  // null -> default breaker
    const ConflationMap* conflation = nullptr;
};

Paper parse_paper(std::string_view json_bytes, PaperFormat format, const ParseOptions& opts = {});

}  // namespace sectsum
