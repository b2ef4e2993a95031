#include <doctest.h>

#include <string>

#include "oracles.hpp"
#include "sectsum/postproc.hpp"
#include "sectsum/rouge.hpp"

using namespace sectsum;

TEST_CASE("strip_citations removes numeric bracket groups") {
    auto [text, count] = strip_citations("as shown in [12, 13] the model");
    CHECK(text == "as shown in the model");
    CHECK(count == 1);

    auto ranged = strip_citations("compare [4-6] and [7].");
    CHECK(ranged.text == "compare and .");
    CHECK(ranged.count == 2);
}

TEST_CASE("strip_citations removes author-year parens") {
    auto [text, count] = strip_citations("(Vaswani et al., 2017) proposed");
    CHECK(text == "proposed");
    CHECK(count == 1);

    auto both = strip_citations("Earlier work (Smith and Jones, 2020) agrees.");
    CHECK(both.text == "Earlier work agrees.");
    CHECK(both.count == 1);

    auto multi = strip_citations("Methods follow (Devlin et al., 2019; Liu, 2020) closely.");
    CHECK(multi.text == "Methods follow closely.");
    CHECK(multi.count == 1);
}

TEST_CASE("strip_citations leaves non-citation brackets alone") {
    CHECK(strip_citations("array a[i] is used").text == "array a[i] is used");
    CHECK(strip_citations("array a[i] is used").count == 0);
    CHECK(strip_citations("(see Table 1)").count == 0);
    CHECK(strip_citations("values (2019) alone").count == 0);
    CHECK(strip_citations("rate was 10 [percent] higher").count == 0);
}

TEST_CASE("strip_noneng transliterates by default and deletes in strict mode") {
    auto translit = strip_noneng("naïve approach");
    CHECK(translit.text == "naive approach");
    CHECK(translit.count == 1);

    auto strict = strip_noneng("naïve approach", /*transliterate=*/false);
    CHECK(strict.text == "nave approach");
    CHECK(strict.count == 1);

    auto mapped = strip_noneng("r\xc3\xa9sum\xc3\xa9 \xe2\x80\x94 draft");
    CHECK(mapped.text == "resume - draft");
    CHECK(mapped.count == 3);

    auto ascii = strip_noneng("plain ascii text");
    CHECK(ascii.text == "plain ascii text");
    CHECK(ascii.count == 0);
}

TEST_CASE("strip_math removes symbol spans") {
    auto [text, count] = strip_math("accuracy \xe2\x89\x88 0.9 \xc2\xb1 0.1");
    CHECK(text == "accuracy 0.9 0.1");
    CHECK(count == 2);

    CHECK(strip_math("x + y").text == "x + y");  // '+' not in the default set
    CHECK(strip_math("x + y").count == 0);
    CHECK(strip_math("").text.empty());
    CHECK(strip_math("").count == 0);

    // A contiguous run counts once.
    auto run = strip_math("limit \xe2\x86\x92\xe2\x86\x92 zero");
    CHECK(run.count == 1);
    CHECK(run.text == "limit zero");
}

namespace {

SummaryDraft one_piece_draft(std::string text) {
    SummaryDraft draft;
    draft.id = "d";
    draft.task = Task::LongSumm;
    draft.pieces.push_back({0, 0, std::move(text)});
    draft.token_count = static_cast<int>(tokenize(draft.pieces[0].text).size());
    return draft;
}

}  // namespace

TEST_CASE("postprocess with everything disabled is the identity") {
    SummaryDraft draft = one_piece_draft("anything [1] at \xe2\x89\x88 all");
    PostprocConfig off{false, false, false, true, {}};
    auto [out, report] = postprocess(draft, off);
    CHECK(out.text() == draft.text());
    CHECK(report.empty());
}

TEST_CASE("postprocess cleans the three artifact classes in order") {
    SummaryDraft draft = one_piece_draft(
        "The na\xc3\xafve model [12, 13] achieves accuracy \xe2\x89\x88 0.9 "
        "(Vaswani et al., 2017) on test.");
    PostprocConfig all;
    auto [out, report] = postprocess(draft, all);
    CHECK(out.text() == "The naive model achieves accuracy 0.9 on test.");
    CHECK(report.citations_removed == 2);
    CHECK(report.unicode_chars_removed == 1);
    CHECK(report.math_spans_removed == 1);
    CHECK(out.token_count == 9);

    // Second application is a no-op.
    auto [again, second] = postprocess(out, all);
    CHECK(again.text() == out.text());
    CHECK(second.empty());
}

TEST_CASE("postprocess drops pieces cleaned down to nothing") {
    SummaryDraft draft;
    draft.id = "d";
    draft.pieces.push_back({0, 0, "[12]"});
    draft.pieces.push_back({0, 1, "Real content stays."});
    PostprocConfig all;
    auto [out, report] = postprocess(draft, all);
    REQUIRE(out.pieces.size() == 1);
    CHECK(out.pieces[0].sentence_index == 1);
    CHECK(report.citations_removed == 1);
}

TEST_CASE("postprocess is idempotent and never invents characters") {
    // Noisy generator mixing citations, accents, math symbols and brackets.
    const char* fragments[] = {
        "plain words",    "[12]",         "[3, 7, 21]",  "(Kim et al., 2019)",
        "na\xc3\xafve",   "r\xc3\xa9sum\xc3\xa9", "\xe2\x89\x88", "\xc2\xb1",
        "a[i]",           "(see Fig 2)",  "x + y",       "\xe2\x80\x94",
        "\xe2\x88\x91",   "0.95",         "[4-6]",       "\xce\xb1\xce\xb2",
        "[4\xe2\x80\x94""6]",             "(\xc3\x89mile et al., 2019)",
        "(Kim et al.,\xc2\xa0""2019)",    "[[12]34]",
    };
    oracle::TokenGen gen(13579);
    PostprocConfig all;

    // Transliterated image of the input: every codepoint mapped independently.
    auto transliterate_all = [](std::string_view text) {
        std::string out;
        for (std::size_t i = 0; i < text.size();) {
            unsigned char c = static_cast<unsigned char>(text[i]);
            if (c < 0x80) {
                out.push_back(static_cast<char>(c));
                ++i;
                continue;
            }
            std::size_t start = i;
            // Re-run strip_noneng on the single codepoint to get its image.
            std::size_t len = 1;
            if ((c & 0xE0) == 0xC0) len = 2;
            else if ((c & 0xF0) == 0xE0) len = 3;
            else if ((c & 0xF8) == 0xF0) len = 4;
            len = std::min(len, text.size() - start);
            std::string cp(text.substr(start, len));
            StripResult mapped = strip_noneng(cp, true);
            out += mapped.count == 0 || !mapped.text.empty() ? mapped.text : cp;
            i = start + len;
        }
        return out;
    };
    auto is_subsequence = [](std::string_view needle, std::string_view hay) {
        std::size_t j = 0;
        for (char c : needle) {
            while (j < hay.size() && hay[j] != c) ++j;
            if (j == hay.size()) return false;
            ++j;
        }
        return true;
    };

    for (int trial = 0; trial < 300; ++trial) {
        std::string text;
        std::size_t parts = 1 + gen.index(8);
        for (std::size_t i = 0; i < parts; ++i) {
            if (i) text += " ";
            text += fragments[gen.index(sizeof(fragments) / sizeof(fragments[0]))];
        }
        SummaryDraft draft = one_piece_draft(text);
        auto [once, first] = postprocess(draft, all);
        auto [twice, second] = postprocess(once, all);
        CHECK(once.text() == twice.text());
        CHECK(second.empty());
        CHECK(is_subsequence(once.text(), transliterate_all(text)));
    }
}
