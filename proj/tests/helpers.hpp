#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sectsum/ingest.hpp"

namespace testutil {

// Builds a Paper directly from (heading, text) pairs; a section whose
// normalized heading is "abstract" becomes the paper's abstract.
inline sectsum::Paper make_paper(std::string id,
                                 std::vector<std::pair<std::string, std::string>> sections) {
    sectsum::Paper paper;
    paper.id = std::move(id);
    for (auto& [heading, text] : sections) {
        sectsum::Section sec;
        sec.heading_raw = heading;
        sec.heading_canonical = sectsum::normalize_heading(heading);
        sec.sentences = sectsum::segment_sentences(text);
        if (sec.sentences.empty()) continue;
        if (sec.heading_canonical == "abstract" && !paper.abstract_index)
            paper.abstract_index = paper.sections.size();
        paper.sections.push_back(std::move(sec));
    }
    return paper;
}

inline sectsum::Section make_section(const std::string& heading, const std::string& text) {
    sectsum::Section sec;
    sec.heading_raw = heading;
    sec.heading_canonical = sectsum::normalize_heading(heading);
    sec.sentences = sectsum::segment_sentences(text);
    return sec;
}

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() /
                ("sectsum-" + tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
