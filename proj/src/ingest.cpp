#include "sectsum/ingest.hpp"

#include <json.hpp>

#include "sectsum/rouge.hpp"
#include "sectsum/util.hpp"

namespace sectsum {

using nlohmann::json;

std::string Section::text() const {
    std::string out;
    for (const auto& s : sentences) {
        if (!out.empty()) out.push_back(' ');
        out += s.text;
    }
    return out;
}

int Section::token_count() const {
    int n = 0;
    for (const auto& s : sentences) n += s.token_count;
    return n;
}

const Section* Paper::abstract() const {
    if (!abstract_index || *abstract_index >= sections.size()) return nullptr;
    return &sections[*abstract_index];
}

// ---------------------------------------------------------------------------
// Sentence segmentation
// ---------------------------------------------------------------------------

namespace {

const char* const kDefaultAbbreviations[] = {
    "al.",   "fig.",  "figs.", "eq.",   "eqs.",  "sec.",  "secs.", "tab.",
    "ref.",  "refs.", "no.",   "nos.",  "vol.",  "pp.",   "ch.",   "cf.",
    "vs.",   "etc.",  "dr.",   "mr.",   "mrs.",  "ms.",   "prof.", "jr.",
    "sr.",   "st.",   "approx.", "resp.", "ca.",
};

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

// True for letter-dot chains like "u.s.", "i.e.", "e.g." (any case). A single
// pair only counts when the letter is uppercase (a person's initial, "J.");
// a lowercase one-letter word ending a sentence is a real boundary.
bool is_initialism(std::string_view token) {
    if (token.size() < 2 || token.size() % 2 != 0) return false;
    for (std::size_t i = 0; i < token.size(); i += 2) {
        unsigned char c = static_cast<unsigned char>(token[i]);
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
        if (token[i + 1] != '.') return false;
    }
    if (token.size() == 2) return is_ascii_upper(static_cast<unsigned char>(token[0]));
    return true;
}

}  // namespace

SentenceBreaker::SentenceBreaker() {
    for (const char* a : kDefaultAbbreviations) abbreviations_.insert(a);
}

void SentenceBreaker::add_abbreviation(std::string abbrev) {
    abbrev = lower_ascii(trim(abbrev));
    if (abbrev.empty()) return;
    if (abbrev.back() != '.') abbrev.push_back('.');
    abbreviations_.insert(std::move(abbrev));
}

void SentenceBreaker::load_abbreviations(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        add_abbreviation(t);
    }
}

bool SentenceBreaker::is_protected(std::string_view token) const {
    // Strip leading punctuation like "(" in "(Fig.".
    std::size_t b = 0;
    while (b < token.size() && !is_ascii_alnum(static_cast<unsigned char>(token[b]))) ++b;
    token = token.substr(b);
    if (token.empty()) return true;  // bare punctuation run, not a word ending
    if (abbreviations_.count(lower_ascii(token))) return true;
    if (is_initialism(token)) return true;
    return false;
}

std::vector<Sentence> SentenceBreaker::segment(std::string_view text) const {
    std::vector<Sentence> out;
    RougeConfig token_cfg;  // default tokenization for token counts

    auto emit = [&](std::string_view piece) {
        std::string s = trim(piece);
        if (s.empty()) return;
        Sentence sent;
        sent.token_count = static_cast<int>(tokenize(s, token_cfg).size());
        sent.text = std::move(s);
        sent.index_in_section = static_cast<int>(out.size());
        out.push_back(std::move(sent));
    };

    std::size_t start = 0;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (!is_terminal(text[i])) {
            ++i;
            continue;
        }
        std::size_t run_end = i;
        while (run_end + 1 < n && is_terminal(text[run_end + 1])) ++run_end;

        // Boundary requires whitespace then an uppercase letter or digit.
        std::size_t k = run_end + 1;
        if (k >= n || !is_space(static_cast<unsigned char>(text[k]))) {
            i = run_end + 1;
            continue;
        }
        while (k < n && is_space(static_cast<unsigned char>(text[k]))) ++k;
        if (k >= n || !(is_ascii_upper(static_cast<unsigned char>(text[k])) ||
                        is_ascii_digit(static_cast<unsigned char>(text[k])))) {
            i = run_end + 1;
            continue;
        }

        if (text[i] == '.' && i == run_end) {
            // Decimal guard (subsumed by the whitespace rule, kept explicit).
            if (i > 0 && i + 1 < n && is_ascii_digit(static_cast<unsigned char>(text[i - 1])) &&
                is_ascii_digit(static_cast<unsigned char>(text[i + 1]))) {
                ++i;
                continue;
            }
            std::size_t ws = i;
            while (ws > 0 && !is_space(static_cast<unsigned char>(text[ws - 1]))) --ws;
            if (is_protected(text.substr(ws, i - ws + 1))) {
                i = run_end + 1;
                continue;
            }
        }

        emit(text.substr(start, run_end + 1 - start));
        start = k;
        i = k;
    }
    if (start < n) emit(text.substr(start));
    return out;
}

std::vector<Sentence> segment_sentences(std::string_view text) {
    static const SentenceBreaker breaker;
    return breaker.segment(text);
}

// ---------------------------------------------------------------------------
// Heading normalization
// ---------------------------------------------------------------------------

namespace {

bool is_digit_enum(std::string_view tok) {
    // \d+(\.\d+)*\.?
    if (tok.empty()) return false;
    std::size_t i = 0;
    bool need_digit = true;
    while (i < tok.size()) {
        if (need_digit) {
            if (!is_ascii_digit(static_cast<unsigned char>(tok[i]))) return false;
            while (i < tok.size() && is_ascii_digit(static_cast<unsigned char>(tok[i]))) ++i;
            need_digit = false;
        } else {
            if (tok[i] != '.') return false;
            ++i;
            if (i == tok.size()) return true;  // trailing dot
            need_digit = true;
        }
    }
    return !need_digit;
}

bool is_roman_enum(std::string_view tok) {
    // [ivxlcdm]+\.   (dot required so plain words are never stripped)
    if (tok.size() < 2 || tok.back() != '.') return false;
    for (std::size_t i = 0; i + 1 < tok.size(); ++i) {
        switch (tok[i]) {
            case 'i': case 'v': case 'x': case 'l': case 'c': case 'd': case 'm':
                break;
            default:
                return false;
        }
    }
    return true;
}

}  // namespace

std::string normalize_heading(std::string_view raw, const ConflationMap* conflation) {
    std::string s = lower_ascii(collapse_ws(raw));
    std::size_t sp = s.find(' ');
    if (sp != std::string::npos) {
        std::string_view first(s.data(), sp);
        if (is_digit_enum(first) || is_roman_enum(first)) {
            std::string stripped = s.substr(sp + 1);
            if (!stripped.empty()) s = std::move(stripped);
        }
    }
    if (conflation) {
        auto it = conflation->find(s);
        if (it != conflation->end()) return it->second;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Paper parsing
// ---------------------------------------------------------------------------

namespace {

struct RawSection {
    std::string heading;  // empty -> unnamed
    bool has_heading = false;
    std::string text;
};

struct RawPaper {
    std::string id;
    std::string title;
    std::string abstract_text;
    std::vector<RawSection> sections;
};

std::string join_paragraphs(const json& value, const std::string& field) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_array()) {
        std::string out;
        for (const auto& item : value) {
            if (!item.is_string())
                throw SchemaError("field '" + field + "' must be a string or array of strings",
                                  field);
            if (!out.empty()) out += "\n";
            out += item.get<std::string>();
        }
        return out;
    }
    throw SchemaError("field '" + field + "' must be a string or array of strings", field);
}

RawPaper read_science_parse(const json& doc) {
    RawPaper raw;
    if (!doc.is_object()) throw SchemaError("document is not a JSON object", "document");
    if (!doc.contains("id") || !doc["id"].is_string())
        throw SchemaError("missing required field 'id'", "id");
    raw.id = doc["id"].get<std::string>();
    if (doc.contains("title") && doc["title"].is_string())
        raw.title = doc["title"].get<std::string>();
    if (doc.contains("abstractText") && doc["abstractText"].is_string())
        raw.abstract_text = doc["abstractText"].get<std::string>();
    if (!doc.contains("sections") || !doc["sections"].is_array())
        throw SchemaError("missing required field 'sections'", "sections");
    std::size_t idx = 0;
    for (const auto& sec : doc["sections"]) {
        std::string path = "sections[" + std::to_string(idx) + "]";
        if (!sec.is_object()) throw SchemaError("section entry is not an object", path);
        if (!sec.contains("text"))
            throw SchemaError("missing required field '" + path + ".text'", path + ".text");
        RawSection rs;
        rs.text = join_paragraphs(sec["text"], path + ".text");
        if (sec.contains("heading") && sec["heading"].is_string()) {
            rs.heading = sec["heading"].get<std::string>();
            rs.has_heading = true;
        }
        raw.sections.push_back(std::move(rs));
        ++idx;
    }
    return raw;
}

RawPaper read_laysumm(const json& doc) {
    RawPaper raw;
    if (!doc.is_object()) throw SchemaError("document is not a JSON object", "document");
    if (doc.contains("paper_id") && doc["paper_id"].is_string())
        raw.id = doc["paper_id"].get<std::string>();
    else if (doc.contains("id") && doc["id"].is_string())
        raw.id = doc["id"].get<std::string>();
    else
        throw SchemaError("missing required field 'paper_id'", "paper_id");
    if (doc.contains("title") && doc["title"].is_string())
        raw.title = doc["title"].get<std::string>();
    if (doc.contains("abstract") && !doc["abstract"].is_null())
        raw.abstract_text = join_paragraphs(doc["abstract"], "abstract");
    const json* body = nullptr;
    if (doc.contains("sections") && doc["sections"].is_array()) body = &doc["sections"];
    else if (doc.contains("fulltext") && doc["fulltext"].is_array()) body = &doc["fulltext"];
    else throw SchemaError("missing required field 'sections'", "sections");
    std::size_t idx = 0;
    for (const auto& sec : *body) {
        std::string path = "sections[" + std::to_string(idx) + "]";
        if (!sec.is_object()) throw SchemaError("section entry is not an object", path);
        if (!sec.contains("text"))
            throw SchemaError("missing required field '" + path + ".text'", path + ".text");
        RawSection rs;
        rs.text = join_paragraphs(sec["text"], path + ".text");
        for (const char* key : {"heading", "section_name", "name", "title"}) {
            if (sec.contains(key) && sec[key].is_string()) {
                rs.heading = sec[key].get<std::string>();
                rs.has_heading = true;
                break;
            }
        }
        raw.sections.push_back(std::move(rs));
        ++idx;
    }
    return raw;
}

}  // namespace

Paper parse_paper(std::string_view json_bytes, PaperFormat format, const ParseOptions& opts) {
    json doc;
    try {
        doc = json::parse(json_bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    RawPaper raw = format == PaperFormat::ScienceParse ? read_science_parse(doc)
                                                       : read_laysumm(doc);

    static const SentenceBreaker default_breaker;
    const SentenceBreaker& breaker = opts.breaker ? *opts.breaker : default_breaker;

    Paper paper;
    paper.id = raw.id;
    paper.title = raw.title;

    if (!trim(raw.abstract_text).empty()) {
        Section abs;
        abs.heading_raw = "abstract";
        abs.heading_canonical = normalize_heading("abstract", opts.conflation);
        abs.sentences = breaker.segment(raw.abstract_text);
        if (!abs.sentences.empty()) {
            paper.abstract_index = 0;
            paper.sections.push_back(std::move(abs));
        }
    }

    for (std::size_t i = 0; i < raw.sections.size(); ++i) {
        const RawSection& rs = raw.sections[i];
        Section sec;
        sec.sentences = breaker.segment(rs.text);
        if (sec.sentences.empty()) continue;  // empty-text sections dropped
        sec.heading_raw = rs.has_heading ? rs.heading : "";
        std::string canonical =
            rs.has_heading ? normalize_heading(rs.heading, opts.conflation) : "";
        if (canonical.empty()) canonical = "unnamed-" + std::to_string(i);
        sec.heading_canonical = std::move(canonical);
        paper.sections.push_back(std::move(sec));
    }

    // Repeated canonical headings stay distinct: occurrence suffix from the
    // second one on.
    std::unordered_set<std::string> used;
    for (auto& sec : paper.sections) {
        std::string name = sec.heading_canonical;
        int k = 1;
        while (used.count(name)) {
            ++k;
            name = sec.heading_canonical + "-" + std::to_string(k);
        }
        used.insert(name);
        sec.heading_canonical = std::move(name);
    }
    return paper;
}

}  // namespace sectsum
