#include "sectsum/postproc.hpp"

#include <array>
#include <cstdint>
#include <unordered_set>

#include <json.hpp>

#include "sectsum/rouge.hpp"
#include "sectsum/util.hpp"

namespace sectsum {

namespace {

// ---------------------------------------------------------------------------
// UTF-8
// ---------------------------------------------------------------------------

// Decodes the codepoint starting at i and advances i; invalid bytes yield
// U+FFFD and advance by one.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
        ++i;
        return c;
    }
    int extra;
    std::uint32_t cp;
    if ((c & 0xE0) == 0xC0) { extra = 1; cp = c & 0x1F; }
    else if ((c & 0xF0) == 0xE0) { extra = 2; cp = c & 0x0F; }
    else if ((c & 0xF8) == 0xF0) { extra = 3; cp = c & 0x07; }
    else { ++i; return 0xFFFD; }
    if (i + static_cast<std::size_t>(extra) >= s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
        if ((cc & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (cc & 0x3F);
    }
    i += static_cast<std::size_t>(extra) + 1;
    return cp;
}

// ---------------------------------------------------------------------------
// Character classes
// ---------------------------------------------------------------------------

// Typographic punctuation mapped to ASCII in both transliteration modes.
const char* typographic_ascii(std::uint32_t cp) {
    switch (cp) {
        case 0x00A0: return " ";    // no-break space
        case 0x2018: case 0x2019: case 0x201A: case 0x2032: return "'";
        case 0x201C: case 0x201D: case 0x201E: case 0x2033: return "\"";
        case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014:
        case 0x2015: case 0x2212: return "-";
        case 0x2026: return "...";
        default: return nullptr;
    }
}

// Accented Latin transliterations (lowercase and uppercase forms).
const char* accent_ascii(std::uint32_t cp) {
    switch (cp) {
        case 0xC0: case 0xC1: case 0xC2: case 0xC3: case 0xC4: case 0xC5: return "A";
        case 0xC6: return "AE";
        case 0xC7: return "C";
        case 0xC8: case 0xC9: case 0xCA: case 0xCB: return "E";
        case 0xCC: case 0xCD: case 0xCE: case 0xCF: return "I";
        case 0xD0: return "D";
        case 0xD1: return "N";
        case 0xD2: case 0xD3: case 0xD4: case 0xD5: case 0xD6: case 0xD8: return "O";
        case 0xD9: case 0xDA: case 0xDB: case 0xDC: return "U";
        case 0xDD: return "Y";
        case 0xDF: return "ss";
        case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5: return "a";
        case 0xE6: return "ae";
        case 0xE7: return "c";
        case 0xE8: case 0xE9: case 0xEA: case 0xEB: return "e";
        case 0xEC: case 0xED: case 0xEE: case 0xEF: return "i";
        case 0xF0: return "d";
        case 0xF1: return "n";
        case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8: return "o";
        case 0xF9: case 0xFA: case 0xFB: case 0xFC: return "u";
        case 0xFD: case 0xFF: return "y";
        case 0x0107: case 0x010D: return "c";
        case 0x0106: case 0x010C: return "C";
        case 0x0111: return "d";
        case 0x0119: return "e";
        case 0x0141: return "L";
        case 0x0142: return "l";
        case 0x0144: return "n";
        case 0x0152: return "OE";
        case 0x0153: return "oe";
        case 0x015A: return "S";
        case 0x015B: case 0x0161: return "s";
        case 0x0160: return "S";
        case 0x017A: case 0x017C: case 0x017E: return "z";
        case 0x0179: case 0x017B: case 0x017D: return "Z";
        default: return nullptr;
    }
}

struct MathMatcher {
    std::unordered_set<std::uint32_t> extras;

    static bool in_default_set(std::uint32_t cp) {
        switch (cp) {
            case 0x00AC:  // not sign
            case 0x00B0:  // degree
            case 0x00B1:  // plus-minus
            case 0x00B2: case 0x00B3: case 0x00B9:  // superscripts
            case 0x00D7:  // multiplication
            case 0x00F7:  // division
                return true;
            default:
                break;
        }
        static constexpr std::array<std::pair<std::uint32_t, std::uint32_t>, 9> kRanges{{
            {0x2070, 0x209F},    // super/subscripts
            {0x2100, 0x214F},    // letterlike symbols
            {0x2190, 0x21FF},    // arrows
            {0x2200, 0x22FF},    // mathematical operators
            {0x2300, 0x23FF},    // misc technical
            {0x27C0, 0x27EF},    // misc math symbols A
            {0x2980, 0x29FF},    // misc math symbols B
            {0x2A00, 0x2AFF},    // supplemental operators
            {0x1D400, 0x1D7FF},  // mathematical alphanumerics
        }};
        for (const auto& [lo, hi] : kRanges)
            if (cp >= lo && cp <= hi) return true;
        return false;
    }

    bool contains(std::uint32_t cp) const {
        return in_default_set(cp) || extras.count(cp) > 0;
    }
};

MathMatcher make_matcher(const std::vector<std::string>& extra_symbols) {
    MathMatcher m;
    for (const auto& sym : extra_symbols) {
        std::size_t i = 0;
        if (!sym.empty()) m.extras.insert(decode_utf8(sym, i));
    }
    return m;
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool prev_space = false;
    for (char c : s) {
        if (c == ' ') {
            if (!prev_space) out.push_back(' ');
            prev_space = true;
        } else {
            out.push_back(c);
            prev_space = false;
        }
    }
    return trim(out);
}

// ---------------------------------------------------------------------------
// Citations
// ---------------------------------------------------------------------------

// [ ws digits (ws sep ws digits)* ws ]   with sep in {, ; - en-dash}
bool match_numeric_brackets(std::string_view s, std::size_t start, std::size_t& end) {
    std::size_t i = start + 1;
    auto skip_ws = [&] { while (i < s.size() && s[i] == ' ') ++i; };
    while (true) {
        skip_ws();
        if (i >= s.size() || !is_ascii_digit(static_cast<unsigned char>(s[i]))) return false;
        while (i < s.size() && is_ascii_digit(static_cast<unsigned char>(s[i]))) ++i;
        skip_ws();
        if (i >= s.size()) return false;
        if (s[i] == ']') {
            end = i + 1;
            return true;
        }
        if (s[i] == ',' || s[i] == ';' || s[i] == '-') {
            ++i;
        } else if (s.compare(i, 3, "\xE2\x80\x93") == 0 ||
                   s.compare(i, 3, "\xE2\x80\x94") == 0 ||
                   s.compare(i, 3, "\xE2\x88\x92") == 0) {  // en/em dash, minus
            i += 3;
        } else {
            return false;
        }
    }
}

bool is_year_token(std::string_view tok) {
    while (!tok.empty() && (tok.back() == ',' || tok.back() == '.')) tok.remove_suffix(1);
    if (tok.size() != 4 && tok.size() != 5) return false;
    if (tok.size() == 5) {
        char c = tok[4];
        if (c < 'a' || c > 'z') return false;
        tok = tok.substr(0, 4);
    }
    for (char c : tok)
        if (!is_ascii_digit(static_cast<unsigned char>(c))) return false;
    int century = (tok[0] - '0') * 10 + (tok[1] - '0');
    return century >= 17 && century <= 20;
}

bool is_name_particle(std::string_view tok) {
    static const std::unordered_set<std::string> kParticles{
        "de", "da", "di", "del", "della", "van", "von", "der", "den", "la", "le", "ter"};
    std::string t(tok);
    while (!t.empty() && t.back() == ',') t.pop_back();
    return kParticles.count(t) > 0;
}

// One citation segment: Name (Name | et | al. | and | & | particle)* ,? year
bool is_author_year_segment(std::string_view segment) {
    std::vector<std::string> words;
    for (auto& w : split(segment, ' '))
        if (!trim(w).empty()) words.push_back(trim(w));
    if (words.size() < 2) return false;
    if (!is_year_token(words.back())) return false;
    if (!is_ascii_upper(static_cast<unsigned char>(words.front()[0]))) return false;
    for (std::size_t i = 1; i + 1 < words.size(); ++i) {
        std::string_view w = words[i];
        std::string stripped(w);
        while (!stripped.empty() && (stripped.back() == ',' || stripped.back() == '.'))
            stripped.pop_back();
        if (w == "et" || stripped == "al" || w == "and" || w == "&" || is_name_particle(w))
            continue;
        if (!stripped.empty() && is_ascii_upper(static_cast<unsigned char>(stripped[0])))
            continue;
        return false;
    }
    return true;
}

bool match_author_year(std::string_view s, std::size_t start, std::size_t& end) {
    std::size_t close = std::string_view::npos;
    for (std::size_t i = start + 1; i < s.size(); ++i) {
        if (s[i] == '(') return false;  // nested parens: not a citation
        if (s[i] == ')') {
            close = i;
            break;
        }
    }
    if (close == std::string_view::npos) return false;
    std::string_view content = s.substr(start + 1, close - start - 1);
    bool any = false;
    std::size_t seg_start = 0;
    for (std::size_t i = 0; i <= content.size(); ++i) {
        if (i == content.size() || content[i] == ';') {
            std::string_view seg = trim_view(content.substr(seg_start, i - seg_start));
            if (seg.empty() || !is_author_year_segment(seg)) return false;
            any = true;
            seg_start = i + 1;
        }
    }
    if (!any) return false;
    end = close + 1;
    return true;
}

}  // namespace

StripResult strip_citations(std::string_view text) {
    // Iterate to a fixed point: removing an inner group can expose an outer
    // one ("[12 [13]]").
    std::string cur(text);
    int total = 0;
    while (true) {
        std::string out;
        out.reserve(cur.size());
        int count = 0;
        std::size_t i = 0;
        std::string_view view = cur;
        while (i < view.size()) {
            std::size_t end = 0;
            if (view[i] == '[' && match_numeric_brackets(view, i, end)) {
                ++count;
                i = end;
                continue;
            }
            if (view[i] == '(' && match_author_year(view, i, end)) {
                ++count;
                i = end;
                continue;
            }
            out.push_back(view[i]);
            ++i;
        }
        if (count == 0) break;
        total += count;
        cur = std::move(out);
    }
    if (total == 0) return {std::string(text), 0};
    return {collapse_spaces(cur), total};
}

namespace {

StripResult strip_noneng_impl(std::string_view text, bool transliterate,
                              const MathMatcher* preserve_math) {
    std::string out;
    out.reserve(text.size());
    int count = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            // ASCII printable plus common whitespace survives.
            if ((c >= 0x20 && c <= 0x7E) || c == '\n' || c == '\t' || c == '\r') {
                out.push_back(static_cast<char>(c));
            } else {
                ++count;
            }
            ++i;
            continue;
        }
        std::size_t cp_start = i;
        std::uint32_t cp = decode_utf8(text, i);
        if (preserve_math && preserve_math->contains(cp)) {
            out += text.substr(cp_start, i - cp_start);
            continue;
        }
        if (const char* mapped = typographic_ascii(cp)) {
            out += mapped;
            ++count;
            continue;
        }
        if (transliterate) {
            if (const char* mapped = accent_ascii(cp)) {
                out += mapped;
                ++count;
                continue;
            }
        }
        ++count;  // dropped
    }
    if (count == 0) return {std::string(text), 0};
    return {collapse_spaces(out), count};
}

StripResult strip_math_impl(std::string_view text, const MathMatcher& matcher) {
    std::string out;
    out.reserve(text.size());
    int spans = 0;
    bool in_span = false;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        std::size_t cp_start = i;
        std::uint32_t cp;
        if (c < 0x80) {
            cp = c;
            ++i;
        } else {
            cp = decode_utf8(text, i);
        }
        if (matcher.contains(cp)) {
            if (!in_span) {
                ++spans;
                in_span = true;
            }
            continue;
        }
        in_span = false;
        out += text.substr(cp_start, i - cp_start);
    }
    if (spans == 0) return {std::string(text), 0};
    return {collapse_spaces(out), spans};
}

}  // namespace

StripResult strip_noneng(std::string_view text, bool transliterate) {
    return strip_noneng_impl(text, transliterate, nullptr);
}

StripResult strip_math(std::string_view text, const std::vector<std::string>& extra_symbols) {
    return strip_math_impl(text, make_matcher(extra_symbols));
}

PostprocConfig load_postproc_config(const std::filesystem::path& path) {
    PostprocConfig cfg;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError("postproc config " + path.string() + ": " + e.what());
    }
    if (j.contains("citations") && j["citations"].is_boolean())
        cfg.citations = j["citations"].get<bool>();
    if (j.contains("unicode") && j["unicode"].is_boolean()) cfg.unicode = j["unicode"].get<bool>();
    if (j.contains("math") && j["math"].is_boolean()) cfg.math = j["math"].get<bool>();
    if (j.contains("transliterate") && j["transliterate"].is_boolean())
        cfg.transliterate = j["transliterate"].get<bool>();
    if (j.contains("math_symbols") && j["math_symbols"].is_array())
        for (const auto& s : j["math_symbols"])
            if (s.is_string()) cfg.extra_math_symbols.push_back(s.get<std::string>());
    return cfg;
}

std::pair<SummaryDraft, CleanupReport> postprocess(const SummaryDraft& draft,
                                                   const PostprocConfig& config) {
    SummaryDraft out = draft;
    CleanupReport report;
    if (!config.citations && !config.unicode && !config.math) return {out, report};

    MathMatcher matcher = make_matcher(config.extra_math_symbols);
    RougeConfig token_cfg;

    std::vector<SummaryPiece> kept;
    int token_count = 0;
    for (auto& piece : out.pieces) {
        std::string text = std::move(piece.text);
        if (config.citations) {
            StripResult r = strip_citations(text);
            text = std::move(r.text);
            report.citations_removed += r.count;
        }
        if (config.unicode) {
            StripResult r =
                strip_noneng_impl(text, config.transliterate, config.math ? &matcher : nullptr);
            text = std::move(r.text);
            report.unicode_chars_removed += r.count;
        }
        if (config.math) {
            StripResult r = strip_math_impl(text, matcher);
            text = std::move(r.text);
            report.math_spans_removed += r.count;
        }
        if (config.citations && (config.unicode || config.math)) {
            // Character mapping can surface a citation the first sweep could
            // not see ("[4" em-dash "6]"); a final sweep keeps the whole
            // pipeline idempotent.
            StripResult r = strip_citations(text);
            text = std::move(r.text);
            report.citations_removed += r.count;
        }
        if (trim_view(text).empty()) continue;
        piece.text = std::move(text);
        token_count += static_cast<int>(tokenize(piece.text, token_cfg).size());
        kept.push_back(std::move(piece));
    }
    out.pieces = std::move(kept);
    out.token_count = token_count;
    return {out, report};
}

}  // namespace sectsum
