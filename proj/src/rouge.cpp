#include "sectsum/rouge.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "sectsum/util.hpp"

namespace sectsum {

namespace {

// ---------------------------------------------------------------------------
// Porter stemmer, ported from the reference implementation of the 1980
// algorithm (with the standard bli->ble / logi->log departures).
// ---------------------------------------------------------------------------
class Porter {
public:
    std::string run(std::string w) {
        for (char& c : w) c = ascii_lower(c);
        if (w.size() <= 2) return w;
        for (char c : w)
            if (c < 'a' || c > 'z') return w;
        b_ = std::move(w);
        k_ = static_cast<int>(b_.size()) - 1;
        j_ = 0;
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        b_.resize(static_cast<std::size_t>(k_) + 1);
        return b_;
    }

private:
    std::string b_;
    int k_ = 0;
    int j_ = 0;

    bool cons(int i) const {
        switch (b_[static_cast<std::size_t>(i)]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // Measure of the [C](VC)^m[V] stem b_[0..j_].
    int m() const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool doublec(int j) const {
        return j >= 1 && b_[static_cast<std::size_t>(j)] == b_[static_cast<std::size_t>(j - 1)] &&
               cons(j);
    }

    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        char ch = b_[static_cast<std::size_t>(i)];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(const char* s) {
        int len = static_cast<int>(std::strlen(s));
        if (len > k_ + 1) return false;
        if (b_.compare(static_cast<std::size_t>(k_ - len + 1), static_cast<std::size_t>(len), s) !=
            0)
            return false;
        j_ = k_ - len;
        return true;
    }

    void setto(const char* s) {
        b_.resize(static_cast<std::size_t>(j_) + 1);
        b_ += s;
        k_ = static_cast<int>(b_.size()) - 1;
    }

    void chop(int nk) {
        k_ = nk;
        b_.resize(static_cast<std::size_t>(k_) + 1);
    }

    void r(const char* s) {
        if (m() > 0) setto(s);
    }

    void step1ab() {
        if (b_[static_cast<std::size_t>(k_)] == 's') {
            if (ends("sses")) chop(k_ - 2);
            else if (ends("ies")) setto("i");
            else if (b_[static_cast<std::size_t>(k_ - 1)] != 's') chop(k_ - 1);
        }
        if (ends("eed")) {
            if (m() > 0) chop(k_ - 1);
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            chop(j_);
            if (ends("at")) setto("ate");
            else if (ends("bl")) setto("ble");
            else if (ends("iz")) setto("ize");
            else if (doublec(k_)) {
                char ch = b_[static_cast<std::size_t>(k_)];
                if (ch != 'l' && ch != 's' && ch != 'z') chop(k_ - 1);
            } else if (m() == 1 && cvc(k_)) {
                setto("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
    }

    void step2() {
        if (k_ < 1) return;
        switch (b_[static_cast<std::size_t>(k_ - 1)]) {
            case 'a':
                if (ends("ational")) { r("ate"); break; }
                if (ends("tional")) { r("tion"); break; }
                break;
            case 'c':
                if (ends("enci")) { r("ence"); break; }
                if (ends("anci")) { r("ance"); break; }
                break;
            case 'e':
                if (ends("izer")) { r("ize"); break; }
                break;
            case 'l':
                if (ends("bli")) { r("ble"); break; }
                if (ends("alli")) { r("al"); break; }
                if (ends("entli")) { r("ent"); break; }
                if (ends("eli")) { r("e"); break; }
                if (ends("ousli")) { r("ous"); break; }
                break;
            case 'o':
                if (ends("ization")) { r("ize"); break; }
                if (ends("ation")) { r("ate"); break; }
                if (ends("ator")) { r("ate"); break; }
                break;
            case 's':
                if (ends("alism")) { r("al"); break; }
                if (ends("iveness")) { r("ive"); break; }
                if (ends("fulness")) { r("ful"); break; }
                if (ends("ousness")) { r("ous"); break; }
                break;
            case 't':
                if (ends("aliti")) { r("al"); break; }
                if (ends("iviti")) { r("ive"); break; }
                if (ends("biliti")) { r("ble"); break; }
                break;
            case 'g':
                if (ends("logi")) { r("log"); break; }
                break;
            default:
                break;
        }
    }

    void step3() {
        switch (b_[static_cast<std::size_t>(k_)]) {
            case 'e':
                if (ends("icate")) { r("ic"); break; }
                if (ends("ative")) { r(""); break; }
                if (ends("alize")) { r("al"); break; }
                break;
            case 'i':
                if (ends("iciti")) { r("ic"); break; }
                break;
            case 'l':
                if (ends("ical")) { r("ic"); break; }
                if (ends("ful")) { r(""); break; }
                break;
            case 's':
                if (ends("ness")) { r(""); break; }
                break;
            default:
                break;
        }
    }

    void step4() {
        if (k_ < 1) return;
        switch (b_[static_cast<std::size_t>(k_ - 1)]) {
            case 'a':
                if (ends("al")) break;
                return;
            case 'c':
                if (ends("ance")) break;
                if (ends("ence")) break;
                return;
            case 'e':
                if (ends("er")) break;
                return;
            case 'i':
                if (ends("ic")) break;
                return;
            case 'l':
                if (ends("able")) break;
                if (ends("ible")) break;
                return;
            case 'n':
                if (ends("ant")) break;
                if (ends("ement")) break;
                if (ends("ment")) break;
                if (ends("ent")) break;
                return;
            case 'o':
                if (ends("ion") && j_ >= 0 &&
                    (b_[static_cast<std::size_t>(j_)] == 's' ||
                     b_[static_cast<std::size_t>(j_)] == 't'))
                    break;
                if (ends("ou")) break;
                return;
            case 's':
                if (ends("ism")) break;
                return;
            case 't':
                if (ends("ate")) break;
                if (ends("iti")) break;
                return;
            case 'u':
                if (ends("ous")) break;
                return;
            case 'v':
                if (ends("ive")) break;
                return;
            case 'z':
                if (ends("ize")) break;
                return;
            default:
                return;
        }
        if (m() > 1) chop(j_);
    }

    void step5() {
        j_ = k_;
        if (b_[static_cast<std::size_t>(k_)] == 'e') {
            int a = m();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) chop(k_ - 1);
        }
        if (b_[static_cast<std::size_t>(k_)] == 'l' && doublec(k_) && m() > 1) chop(k_ - 1);
    }
};

double harmonic_f1(double p, double r) {
    return (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
}

// N-gram key: tokens joined by a byte that cannot occur inside them.
std::unordered_map<std::string, int> ngram_counts(const TokenSeq& tokens, int n) {
    std::unordered_map<std::string, int> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int j = 1; j < n; ++j) {
            key.push_back('\x1f');
            key += tokens[i + static_cast<std::size_t>(j)];
        }
        ++counts[key];
    }
    return counts;
}

int lcs_length(const TokenSeq& a, const TokenSeq& b) {
    if (a.empty() || b.empty()) return 0;
    // Two-row DP over the shorter side.
    const TokenSeq& rows = a.size() >= b.size() ? a : b;
    const TokenSeq& cols = a.size() >= b.size() ? b : a;
    std::vector<int> prev(cols.size() + 1, 0);
    std::vector<int> cur(cols.size() + 1, 0);
    for (std::size_t i = 1; i <= rows.size(); ++i) {
        for (std::size_t j = 1; j <= cols.size(); ++j) {
            if (rows[i - 1] == cols[j - 1]) cur[j] = prev[j - 1] + 1;
            else cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[cols.size()];
}

// Terminal-punctuation splitter for Union mode; boundaries only, no
// abbreviation handling (sentence structure is otherwise unavailable here).
std::vector<std::string> rough_sentence_split(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '.' || c == '?' || c == '!') {
            std::size_t e = i;
            while (e + 1 < text.size() &&
                   (text[e + 1] == '.' || text[e + 1] == '?' || text[e + 1] == '!'))
                ++e;
            if (e + 1 >= text.size() || is_space(static_cast<unsigned char>(text[e + 1]))) {
                std::string s = trim(text.substr(start, e + 1 - start));
                if (!s.empty()) out.push_back(std::move(s));
                start = e + 1;
            }
            i = e + 1;
        } else {
            ++i;
        }
    }
    std::string tail = trim(text.substr(start));
    if (!tail.empty()) out.push_back(std::move(tail));
    return out;
}

}  // namespace

std::string porter_stem(std::string word) {
    Porter p;
    return p.run(std::move(word));
}

TokenSeq tokenize(std::string_view text, const RougeConfig& config) {
    TokenSeq out;
    std::string cur;
    for (char c : text) {
        if (is_ascii_alnum(static_cast<unsigned char>(c))) {
            cur.push_back(config.lowercase ? ascii_lower(c) : c);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    if (config.stemming)
        for (auto& t : out) t = porter_stem(std::move(t));
    return out;
}

RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference, int n) {
    RougeScore s;
    if (n < 1) return s;
    long cand_total = static_cast<long>(candidate.size()) - n + 1;
    long ref_total = static_cast<long>(reference.size()) - n + 1;
    if (cand_total <= 0 || ref_total <= 0) {
        s.degenerate = true;
        return s;
    }
    auto cand_counts = ngram_counts(candidate, n);
    auto ref_counts = ngram_counts(reference, n);
    long overlap = 0;
    for (const auto& [gram, count] : cand_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) overlap += std::min(count, it->second);
    }
    s.precision = static_cast<double>(overlap) / static_cast<double>(cand_total);
    s.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
    s.f1 = harmonic_f1(s.precision, s.recall);
    return s;
}

RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference,
                   const RougeConfig& config) {
    (void)config;  // mode differences only apply with sentence-split references
    RougeScore s;
    if (candidate.empty() || reference.empty()) {
        s.degenerate = true;
        return s;
    }
    int l = lcs_length(candidate, reference);
    s.precision = static_cast<double>(l) / static_cast<double>(candidate.size());
    s.recall = static_cast<double>(l) / static_cast<double>(reference.size());
    s.f1 = harmonic_f1(s.precision, s.recall);
    return s;
}

RougeScore rouge_l_union(const TokenSeq& candidate,
                         const std::vector<TokenSeq>& reference_sentences) {
    RougeScore s;
    std::size_t ref_total = 0;
    long matched = 0;
    for (const auto& ref : reference_sentences) {
        ref_total += ref.size();
        if (!ref.empty() && !candidate.empty()) matched += lcs_length(candidate, ref);
    }
    if (candidate.empty() || ref_total == 0) {
        s.degenerate = true;
        return s;
    }
    s.precision =
        std::min(1.0, static_cast<double>(matched) / static_cast<double>(candidate.size()));
    s.recall = std::min(1.0, static_cast<double>(matched) / static_cast<double>(ref_total));
    s.f1 = harmonic_f1(s.precision, s.recall);
    return s;
}

ScoreSet score_all(std::string_view candidate, std::string_view reference,
                   const RougeConfig& config) {
    ScoreSet set;
    TokenSeq cand = tokenize(candidate, config);
    TokenSeq ref = tokenize(reference, config);
    set.r1 = rouge_n(cand, ref, 1);
    set.r2 = rouge_n(cand, ref, 2);
    if (config.rouge_l_mode == RougeLMode::Sequence) {
        set.rl = rouge_l(cand, ref, config);
    } else {
        std::vector<TokenSeq> ref_sentences;
        for (const auto& sent : rough_sentence_split(reference)) {
            TokenSeq toks = tokenize(sent, config);
            if (!toks.empty()) ref_sentences.push_back(std::move(toks));
        }
        set.rl = rouge_l_union(cand, ref_sentences);
    }
    return set;
}

}  // namespace sectsum
