#include "sectsum/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sectsum/util.hpp"

namespace sectsum {

using nlohmann::json;

int effective_budget(const PipelineConfig& cfg) {
    if (cfg.budget_words > 0) return cfg.budget_words;
    return cfg.task == Task::LongSumm ? 600 : 150;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

std::vector<std::filesystem::path> sorted_files(const std::filesystem::path& dir,
                                                const std::string& extension) {
    if (!std::filesystem::is_directory(dir))
        throw DataError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() == extension) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

ConflationMap load_conflation(const std::filesystem::path& path) {
    ConflationMap map;
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw DataError("conflation map " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw DataError("conflation map " + path.string() + ": not a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_string())
            throw DataError("conflation map " + path.string() + ": value for '" + key +
                            "' is not a string");
        map[normalize_heading(key)] = value.get<std::string>();
    }
    return map;
}

struct RunContext {
    SentenceBreaker breaker;
    ConflationMap conflation;
    bool has_conflation = false;
    PostprocConfig postproc;
};

RunContext make_context(const PipelineConfig& cfg) {
    RunContext ctx;
    if (!cfg.abbrev_file.empty()) {
        std::ifstream in(cfg.abbrev_file);
        if (!in) throw ConfigError("cannot read abbreviation file: " + cfg.abbrev_file);
        ctx.breaker.load_abbreviations(in);
    }
    if (!cfg.conflation_file.empty()) {
        ctx.conflation = load_conflation(cfg.conflation_file);
        ctx.has_conflation = true;
    }
    ctx.postproc = cfg.postproc;
    if (!cfg.postproc_config.empty()) {
        PostprocConfig file_cfg = load_postproc_config(cfg.postproc_config);
        // The file supplies the pass behaviour; which passes run still comes
        // from the enable flags.
        file_cfg.citations = cfg.postproc.citations;
        file_cfg.unicode = cfg.postproc.unicode;
        file_cfg.math = cfg.postproc.math;
        ctx.postproc = std::move(file_cfg);
    }
    return ctx;
}

const char* scorer_name(ScorerKind kind) {
    switch (kind) {
        case ScorerKind::Lead: return "lead";
        case ScorerKind::Centrality: return "centrality";
        case ScorerKind::Oracle: return "oracle";
        case ScorerKind::External: return "external";
    }
    return "unknown";
}

SummaryDraft build_longsumm_draft(const Paper& paper, const PipelineConfig& cfg,
                                  const std::map<std::string, std::string>& gold,
                                  const std::vector<ContributionRow>& prior,
                                  const std::map<std::string, std::vector<ExternalRecord>>& external,
                                  int budget) {
    WeightSettings ws;
    ws.mode = cfg.weight_mode;
    ws.cutoff = cfg.cutoff;
    ws.axis = cfg.axis;
    ws.prior_table = prior.empty() ? nullptr : &prior;

    const std::string* gold_text = nullptr;
    if (cfg.weight_mode == WeightMode::Gold || cfg.scorer == ScorerKind::Oracle) {
        auto it = gold.find(paper.id);
        if (it == gold.end()) throw DataError("no gold summary for paper '" + paper.id + "'");
        gold_text = &it->second;
    }

    ScorerSpec spec;
    spec.kind = cfg.scorer;
    spec.centrality = cfg.centrality;
    spec.external_path = cfg.external_scores;

    ExternalScores ext;
    if (cfg.scorer == ScorerKind::External) {
        static const std::vector<ExternalRecord> kNoRecords;
        auto it = external.find(paper.id);
        ext = attach_external_scores(it == external.end() ? kNoRecords : it->second, paper);
        spec.external_scores = &ext.scores;
    }
    SummaryDraft draft = assemble_longsumm(paper, ws, spec, budget, gold_text, cfg.rouge);
    draft.warnings.insert(draft.warnings.end(), ext.warnings.begin(), ext.warnings.end());
    return draft;
}

json config_snapshot(const PipelineConfig& cfg) {
    json j;
    j["task"] = cfg.task == Task::LongSumm ? "longsumm" : "laysumm";
    j["format"] = cfg.format == PaperFormat::ScienceParse ? "science_parse" : "laysumm";
    j["cutoff"] = cfg.cutoff;
    j["budget_words"] = effective_budget(cfg);
    j["scorer"] = scorer_name(cfg.scorer);
    j["weight_mode"] = cfg.weight_mode == WeightMode::Gold ? "gold" : "prior";
    j["axis"] = axis_name(cfg.axis);
    j["rouge_stemming"] = cfg.rouge.stemming;
    j["rouge_l_mode"] = cfg.rouge.rouge_l_mode == RougeLMode::Sequence ? "sequence" : "union";
    j["baseline"] = cfg.baseline_lead150 ? "lead150" : "";
    j["hard150"] = cfg.hard150;
    std::vector<std::string> passes;
    if (cfg.postproc.citations) passes.push_back("citations");
    if (cfg.postproc.unicode) passes.push_back("unicode");
    if (cfg.postproc.math) passes.push_back("math");
    j["postproc"] = passes;
    return j;
}

}  // namespace

LoadedCorpus load_corpus(const std::filesystem::path& dir, PaperFormat format,
                         const SentenceBreaker& breaker, const ConflationMap* conflation) {
    LoadedCorpus out;
    ParseOptions opts;
    opts.breaker = &breaker;
    opts.conflation = conflation;

    std::map<std::string, bool> seen;
    for (const auto& path : sorted_files(dir, ".json")) {
        std::string stem = path.stem().string();
        Paper paper;
        try {
            paper = parse_paper(read_file(path), format, opts);
        } catch (const ParseError& e) {
            out.warnings.push_back(path.string() + ": JSON parse error at byte " +
                                   std::to_string(e.byte_offset) + ": " + e.what());
            continue;
        } catch (const SchemaError& e) {
            out.warnings.push_back(path.string() + ": " + e.what());
            continue;
        }
        if (paper.id.empty()) paper.id = stem;
        if (paper.id != stem)
            out.warnings.push_back(path.string() + ": paper id '" + paper.id +
                                   "' differs from file stem '" + stem + "'");
        if (seen.count(paper.id)) {
            out.warnings.push_back(path.string() + ": duplicate paper id '" + paper.id +
                                   "'; file skipped");
            continue;
        }
        seen[paper.id] = true;
        out.papers.push_back(std::move(paper));
    }
    std::sort(out.papers.begin(), out.papers.end(),
              [](const Paper& a, const Paper& b) { return a.id < b.id; });
    return out;
}

std::map<std::string, std::string> load_text_dir(const std::filesystem::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& path : sorted_files(dir, ".txt"))
        out[path.stem().string()] = read_file(path);
    return out;
}

AnalyzeOutput run_analyze(const std::filesystem::path& corpus_dir,
                          const std::filesystem::path& gold_dir, const PipelineConfig& cfg) {
    RunContext ctx = make_context(cfg);
    LoadedCorpus corpus = load_corpus(corpus_dir, cfg.format, ctx.breaker,
                                      ctx.has_conflation ? &ctx.conflation : nullptr);
    if (corpus.papers.empty()) throw DataError("no parseable papers in " + corpus_dir.string());
    auto gold = load_text_dir(gold_dir);

    AnalyzeOutput out;
    out.contribution =
        section_contribution(corpus.papers, gold, cfg.axis, cfg.min_heading_freq, cfg.rouge);
    out.contribution.warnings.insert(out.contribution.warnings.begin(), corpus.warnings.begin(),
                                     corpus.warnings.end());
    if (out.contribution.papers_scored == 0)
        throw DataError("no paper ids matched between " + corpus_dir.string() + " and " +
                        gold_dir.string());
    out.meta.axis = cfg.axis;
    out.meta.min_freq = cfg.min_heading_freq;
    out.meta.corpus_size = out.contribution.papers_scored;
    return out;
}

SummarizeStats run_summarize(const std::filesystem::path& corpus_dir,
                             const std::filesystem::path& out_dir, const PipelineConfig& cfg) {
    RunContext ctx = make_context(cfg);
    LoadedCorpus corpus = load_corpus(corpus_dir, cfg.format, ctx.breaker,
                                      ctx.has_conflation ? &ctx.conflation : nullptr);
    if (corpus.papers.empty()) throw DataError("no parseable papers in " + corpus_dir.string());

    const int budget = effective_budget(cfg);
    const bool needs_gold =
        !cfg.baseline_lead150 &&
        (cfg.weight_mode == WeightMode::Gold || cfg.scorer == ScorerKind::Oracle);

    std::map<std::string, std::string> gold;
    if (needs_gold) {
        if (cfg.gold_dir.empty())
            throw ConfigError(
                "gold-mode weights / oracle scorer need --gold <dir> with reference summaries");
        gold = load_text_dir(cfg.gold_dir);
    }

    std::vector<ContributionRow> prior;
    if (!cfg.baseline_lead150 && cfg.weight_mode == WeightMode::Prior) {
        if (cfg.prior_table.empty())
            throw ConfigError(
                "prior-mode weights need --prior-table <csv> (produce one with 'analyze')");
        std::ifstream in(cfg.prior_table);
        if (!in) throw ConfigError("cannot read prior table: " + cfg.prior_table);
        prior = read_contribution_csv(in);
        if (prior.empty()) throw DataError("prior table is empty: " + cfg.prior_table);
    }

    std::map<std::string, std::vector<ExternalRecord>> external;
    if (!cfg.baseline_lead150 && cfg.scorer == ScorerKind::External) {
        if (cfg.external_scores.empty())
            throw ConfigError("external scorer needs --external-scores <file>");
        for (auto& rec : read_external_records(cfg.external_scores))
            external[rec.paper_id].push_back(std::move(rec));
    }

    struct PaperResult {
        bool ok = false;
        std::string text;
        json manifest;
        std::vector<std::string> warnings;
    };
    std::vector<PaperResult> results(corpus.papers.size());

    parallel_for(corpus.papers.size(), cfg.jobs, [&](std::size_t i) {
        const Paper& paper = corpus.papers[i];
        PaperResult& res = results[i];
        try {
            SummaryDraft draft;
            if (cfg.baseline_lead150 || cfg.task == Task::LaySumm) {
                if (cfg.baseline_lead150) {
                    draft = lead150_laysumm(paper, cfg.hard150, cfg.use_first_section, budget);
                } else {
                    // LaySumm without the baseline runs the budget pipeline
                    // with the task's budget.
                    draft = build_longsumm_draft(paper, cfg, gold, prior, external, budget);
                    draft.task = Task::LaySumm;
                }
            } else {
                draft = build_longsumm_draft(paper, cfg, gold, prior, external, budget);
            }

            CleanupReport cleanup;
            if (ctx.postproc.citations || ctx.postproc.unicode || ctx.postproc.math) {
                auto [cleaned, report] = postprocess(draft, ctx.postproc);
                cleanup = report;
                draft = std::move(cleaned);
            }

            res.text = draft.text() + "\n";
            res.warnings = draft.warnings;

            json pieces = json::array();
            for (const auto& p : draft.pieces)
                pieces.push_back({{"section", p.section_index}, {"sentence", p.sentence_index}});
            res.manifest["id"] = draft.id;
            res.manifest["file"] = draft.id + ".txt";
            res.manifest["token_count"] = draft.token_count;
            res.manifest["over_budget"] = draft.over_budget;
            res.manifest["truncated_mid_sentence"] = draft.truncated_mid_sentence;
            res.manifest["pieces"] = pieces;
            res.manifest["cleanup"] = {{"citations_removed", cleanup.citations_removed},
                                       {"unicode_chars_removed", cleanup.unicode_chars_removed},
                                       {"math_spans_removed", cleanup.math_spans_removed}};
            res.ok = true;
        } catch (const std::exception& e) {
            res.warnings.push_back("paper '" + paper.id + "' failed: " + e.what());
        }
    });

    std::filesystem::create_directories(out_dir);
    SummarizeStats stats;
    stats.warnings = corpus.warnings;

    std::ostringstream manifest;
    manifest << json{{"run", config_snapshot(cfg)}}.dump() << '\n';
    for (std::size_t i = 0; i < corpus.papers.size(); ++i) {
        PaperResult& res = results[i];
        stats.warnings.insert(stats.warnings.end(), res.warnings.begin(), res.warnings.end());
        if (!res.ok) {
            ++stats.failed;
            continue;
        }
        write_file(out_dir / (corpus.papers[i].id + ".txt"), res.text);
        manifest << res.manifest.dump() << '\n';
        ++stats.written;
    }
    write_file(out_dir / "manifest.jsonl", manifest.str());
    if (stats.written == 0) throw DataError("all papers failed; nothing summarized");
    return stats;
}

EvalReport run_evaluate(const std::filesystem::path& system_dir,
                        const std::filesystem::path& gold_dir, const PipelineConfig& cfg) {
    auto system_texts = load_text_dir(system_dir);
    auto gold_texts = load_text_dir(gold_dir);
    std::string label = cfg.label.empty() ? system_dir.filename().string() : cfg.label;
    return evaluate_corpus(system_texts, gold_texts, cfg.rouge, label, cfg.jobs);
}

}  // namespace sectsum
