#pragma once

// Corpus registry.  A JSON manifest lists the corpora of one experiment:
//
//   {"corpora": [
//     {"name": "moby-dick", "path": "texts/moby.txt", "alphabet": "english26",
//      "start_marker": "*** START OF", "end_marker": "*** END OF",
//      "byte_range": [0, 1234567], "format": "text",
//      "expected": {"M": 214675, "mse": 1.27e-5}}
//   ]}
//
// Relative paths are resolved against the manifest's directory.  "format" is
// "text" (default) or "ngram" (with optional "count_field").  "expected" is
// carried through untouched for checks.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fll/alphabet.hpp"
#include "fll/corpus.hpp"
#include "fll/ngram.hpp"
#include "fll/tokenize.hpp"

namespace fll {

struct CorpusEntry {
  std::string name;
  std::filesystem::path path;
  std::string alphabet = "english26";
  std::string format = "text";
  std::size_t count_field = 3;
  TrimSpec trim;
  nlohmann::json expected = nlohmann::json::object();
};

inline std::vector<CorpusEntry> load_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw ingest_error("cannot open manifest '" + manifest.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ingest_error("manifest '" + manifest.string() + "': " + e.what());
  }
  if (!doc.contains("corpora") || !doc["corpora"].is_array())
    throw ingest_error("manifest '" + manifest.string() + "' has no \"corpora\" array");

  std::vector<CorpusEntry> out;
  const auto base = manifest.parent_path();
  try {
    for (const auto& item : doc["corpora"]) {
      CorpusEntry entry;
      entry.path = item.at("path").get<std::string>();
      if (entry.path.is_relative()) entry.path = base / entry.path;
      entry.name = item.value("name", entry.path.stem().string());
      entry.alphabet = item.value("alphabet", entry.alphabet);
      entry.format = item.value("format", entry.format);
      entry.count_field = item.value("count_field", entry.count_field);
      entry.trim.start_marker = item.value("start_marker", "");
      entry.trim.end_marker = item.value("end_marker", "");
      if (item.contains("byte_range")) {
        const auto& range = item["byte_range"];
        entry.trim.begin_byte = range.at(0).get<std::size_t>();
        entry.trim.end_byte = range.at(1).get<std::size_t>();
      }
      if (item.contains("expected")) entry.expected = item["expected"];
      if (entry.format != "text" && entry.format != "ngram")
        throw ingest_error("manifest entry '" + entry.name + "': unknown format '" + entry.format + "'");
      out.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ingest_error("manifest '" + manifest.string() + "': " + e.what());
  }
  return out;
}

struct LoadedCorpus {
  CorpusStats stats;
  std::uint64_t rejected = 0;  // rejected text segments or malformed rows
};

inline LoadedCorpus load_corpus(const CorpusEntry& entry, const Alphabet& alphabet) {
  if (entry.format == "ngram") {
    NgramOptions options;
    options.count_field = entry.count_field;
    NgramTable table = ingest_ngram_table(entry.path.string(), options);
    return {std::move(table.stats), table.malformed};
  }
  TextCorpus text = corpus_from_file(entry.path.string(), alphabet, entry.trim);
  return {std::move(text.stats), text.rejected_segments};
}

}  // namespace fll
