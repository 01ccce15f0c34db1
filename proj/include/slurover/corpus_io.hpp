// slurover/corpus_io.hpp

// Copyright 2026  The slurover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Hypothesis/reference corpora on disk and evaluation reports.
//
// JSONL, one object per line:
//   {"id": "u1", "text": "[IN:GET_WEATHER [SL:LOCATION boston ] ]", "conf": [0.9, ...]}
// "conf" is optional and holds one value in [0,1] per whitespace token.
//
// TSV, `#` lines and blank lines ignored:
//   u1<TAB>set an alarm[<TAB>0.9 0.8 0.7]

#ifndef SLUROVER_CORPUS_IO_HPP_
#define SLUROVER_CORPUS_IO_HPP_

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <type_traits>
#include <vector>

#include "json.hpp"
#include "slurover/common.hpp"
#include "slurover/metrics.hpp"
#include "slurover/normalize.hpp"
#include "slurover/rover.hpp"

namespace slurover {

enum class CorpusFormat { kJsonl, kTsv };

/// ".tsv" means TSV; anything else is read as JSONL.
inline CorpusFormat FormatFromPath(const std::filesystem::path &path) {
  return path.extension() == ".tsv" ? CorpusFormat::kTsv : CorpusFormat::kJsonl;
}

struct CorpusEntry {
  std::string text;
  std::optional<std::vector<double>> conf;
  std::size_t line = 0;  // 1-based source line; 0 for in-memory entries

  friend bool operator==(const CorpusEntry &a, const CorpusEntry &b) {
    return a.text == b.text && a.conf == b.conf;
  }
};

struct Corpus {
  std::string system_id;
  std::map<std::string, CorpusEntry> entries;

  friend bool operator==(const Corpus &, const Corpus &) = default;
};

namespace internal {

[[noreturn]] inline void DataError(ErrorCode code, const std::filesystem::path &path,
                                   std::size_t line, const std::string &what) {
  throw Error(code, path.string() + ":" + std::to_string(line) + ": " + what);
}

inline std::optional<std::vector<double>> ParseConfList(std::string_view field) {
  std::vector<double> out;
  for (const auto &piece : SplitWhitespace(field)) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || end != piece.data() + piece.size()) return std::nullopt;
    out.push_back(v);
  }
  return out;
}

inline bool ConfInRange(const std::vector<double> &conf) {
  for (double v : conf)
    if (!(v >= 0.0 && v <= 1.0)) return false;
  return true;
}

inline std::string ShortestDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace internal

/// Throws IoError, MalformedLine, MissingField, DuplicateId or
/// ConfidenceLengthMismatch; messages carry "path:line".
inline Corpus LoadCorpus(const std::filesystem::path &path, CorpusFormat format,
                         std::string system_id = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());

  Corpus corpus;
  corpus.system_id = system_id.empty() ? path.stem().string() : std::move(system_id);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::string id;
    CorpusEntry entry;
    entry.line = line_no;
    if (format == CorpusFormat::kTsv) {
      if (line[0] == '#') continue;
      std::vector<std::string> fields;
      std::size_t start = 0;
      for (;;) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
      }
      if (fields.size() < 2 || fields.size() > 3)
        internal::DataError(ErrorCode::kMalformedLine, path, line_no,
                            "expected 2 or 3 tab-separated fields, got " +
                                std::to_string(fields.size()));
      id = fields[0];
      entry.text = fields[1];
      if (fields.size() == 3) {
        entry.conf = internal::ParseConfList(fields[2]);
        if (!entry.conf)
          internal::DataError(ErrorCode::kMalformedLine, path, line_no, "bad confidence list");
      }
    } else {
      nlohmann::json obj;
      try {
        obj = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error &e) {
        internal::DataError(ErrorCode::kMalformedLine, path, line_no, e.what());
      }
      if (!obj.is_object())
        internal::DataError(ErrorCode::kMalformedLine, path, line_no, "not a JSON object");
      for (const char *field : {"id", "text"}) {
        if (!obj.contains(field))
          internal::DataError(ErrorCode::kMissingField, path, line_no, field);
        if (!obj[field].is_string())
          internal::DataError(ErrorCode::kMalformedLine, path, line_no,
                              std::string(field) + " is not a string");
      }
      id = obj["id"].get<std::string>();
      entry.text = obj["text"].get<std::string>();
      if (obj.contains("conf") && !obj["conf"].is_null()) {
        const auto &conf = obj["conf"];
        bool ok = conf.is_array();
        std::vector<double> values;
        if (ok) {
          for (const auto &v : conf) {
            if (!v.is_number()) {
              ok = false;
              break;
            }
            values.push_back(v.get<double>());
          }
        }
        if (!ok) internal::DataError(ErrorCode::kMalformedLine, path, line_no, "bad conf array");
        entry.conf = std::move(values);
      }
    }

    if (id.empty()) internal::DataError(ErrorCode::kMalformedLine, path, line_no, "empty id");
    if (entry.conf) {
      if (!internal::ConfInRange(*entry.conf))
        internal::DataError(ErrorCode::kMalformedLine, path, line_no,
                            "confidence outside [0,1]");
      if (entry.conf->size() != SplitWhitespace(entry.text).size())
        internal::DataError(ErrorCode::kConfidenceLengthMismatch, path, line_no, id);
    }
    auto [it, inserted] = corpus.entries.emplace(id, std::move(entry));
    if (!inserted)
      internal::DataError(ErrorCode::kDuplicateId, path, line_no,
                          "'" + id + "' already defined on line " +
                              std::to_string(it->second.line));
  }
  return corpus;
}

inline Corpus LoadCorpus(const std::filesystem::path &path) {
  return LoadCorpus(path, FormatFromPath(path));
}

/// Entries come out sorted by id.
inline void WriteCorpus(const Corpus &corpus, std::ostream &out, CorpusFormat format) {
  for (const auto &[id, entry] : corpus.entries) {
    if (format == CorpusFormat::kTsv) {
      if (id.empty() || id[0] == '#' || id.find_first_of("\t\n\r") != std::string::npos ||
          entry.text.find_first_of("\t\n\r") != std::string::npos)
        throw Error(ErrorCode::kIoError, "entry '" + id + "' cannot be written as TSV");
      out << id << '\t' << entry.text;
      if (entry.conf) {
        out << '\t';
        for (std::size_t i = 0; i < entry.conf->size(); ++i)
          out << (i ? " " : "") << internal::ShortestDouble((*entry.conf)[i]);
      }
      out << '\n';
    } else {
      nlohmann::ordered_json obj;
      obj["id"] = id;
      obj["text"] = entry.text;
      if (entry.conf) obj["conf"] = *entry.conf;
      out << obj.dump() << '\n';
    }
  }
}

inline void WriteCorpus(const Corpus &corpus, const std::filesystem::path &path,
                        CorpusFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  WriteCorpus(corpus, out, format);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Joining systems

enum class JoinPolicy { kStrict, kAllowMissing };

struct UtteranceBundle {
  std::string utterance_id;
  std::vector<Hypothesis> per_system;  // declared system order
  std::vector<bool> missing;           // per system
  std::optional<std::string> reference;
};

/// One bundle per reference id, or per id seen in any system when there
/// are no references. Texts are normalized and split into tokens. Under
/// kAllowMissing an absent hypothesis becomes an empty token list;
/// under kStrict it throws MissingHypothesis. Output is sorted by id.
inline std::vector<UtteranceBundle> JoinSystems(const std::vector<Corpus> &systems,
                                                const Corpus *references, JoinPolicy policy,
                                                const NormalizationOptions &norm = {}) {
  if (systems.empty()) throw Error(ErrorCode::kInvalidParams, "no system corpora");

  std::set<std::string> ids;
  if (references) {
    for (const auto &[id, _] : references->entries) ids.insert(id);
  } else {
    for (const auto &sys : systems)
      for (const auto &[id, _] : sys.entries) ids.insert(id);
  }

  std::vector<UtteranceBundle> bundles;
  bundles.reserve(ids.size());
  for (const auto &id : ids) {
    UtteranceBundle b;
    b.utterance_id = id;
    if (references) b.reference = Normalize(references->entries.at(id).text, norm);
    for (std::size_t s = 0; s < systems.size(); ++s) {
      Hypothesis h;
      h.utterance_id = id;
      h.system_index = s;
      auto it = systems[s].entries.find(id);
      if (it == systems[s].entries.end()) {
        if (policy == JoinPolicy::kStrict)
          throw Error(ErrorCode::kMissingHypothesis,
                      "system '" + systems[s].system_id + "' has no utterance '" + id + "'");
        h.confidences = std::vector<double>{};
        b.missing.push_back(true);
      } else {
        // Normalization only touches whitespace and case, so the token
        // count (and with it the confidence alignment) is unchanged.
        h.tokens = SplitWhitespace(Normalize(it->second.text, norm));
        h.confidences = it->second.conf;
        b.missing.push_back(false);
      }
      b.per_system.push_back(std::move(h));
    }
    bundles.push_back(std::move(b));
  }
  return bundles;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { kJson, kTsv };

namespace internal {

inline std::string JsonString(const std::string &s) { return nlohmann::json(s).dump(); }

inline void WriteScoreJson(const SystemScore &row, std::ostream &out) {
  out << "{\"system_id\": " << JsonString(row.system_id) << ", \"n\": " << row.n_utterances;
  if (row.em)
    out << ", \"em\": " << row.em->Fixed4() << ", \"em_exact\": \"" << row.em->ToString() << "\"";
  else
    out << ", \"em\": null, \"em_exact\": null";
  if (row.wer)
    out << ", \"wer\": " << row.wer->Fixed4() << ", \"wer_exact\": \"" << row.wer->ToString()
        << "\"";
  else
    out << ", \"wer\": null, \"wer_exact\": null";
  out << "}";
}

template <typename T>
void WriteJsonArray(const std::vector<T> &values, std::ostream &out) {
  out << "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i ? ", " : "");
    if constexpr (std::is_same_v<T, bool>)
      out << (values[i] ? "true" : "false");
    else
      out << values[i];
  }
  out << "]";
}

template <typename T>
void WriteJsonOptional(const std::optional<T> &value, std::ostream &out) {
  if (!value)
    out << "null";
  else if constexpr (std::is_same_v<T, bool>)
    out << (*value ? "true" : "false");
  else
    out << *value;
}

inline std::optional<Rational> ReadRatio(const nlohmann::json &row, const char *key) {
  if (!row.contains(key) || row[key].is_null()) return std::nullopt;
  return Rational::Parse(row[key].get<std::string>());
}

inline SystemScore ReadScore(const nlohmann::json &row) {
  SystemScore s;
  s.system_id = row.at("system_id").get<std::string>();
  s.n_utterances = row.at("n").get<std::uint64_t>();
  s.em = ReadRatio(row, "em_exact");
  s.wer = ReadRatio(row, "wer_exact");
  return s;
}

template <typename T>
std::optional<T> ReadOptional(const nlohmann::json &row, const char *key) {
  if (!row.contains(key) || row[key].is_null()) return std::nullopt;
  return row[key].get<T>();
}

}  // namespace internal

/// Fixed key order; fractions appear both rounded to four places and as
/// exact "num/den" strings.
inline void WriteReportJson(const EvalReport &report, std::ostream &out) {
  out << "{\n  \"task\": " << internal::JsonString(report.task) << ",\n  \"systems\": [";
  for (std::size_t i = 0; i < report.systems.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    internal::WriteScoreJson(report.systems[i], out);
  }
  out << (report.systems.empty() ? "],\n" : "\n  ],\n");
  out << "  \"combined\": ";
  if (report.combined)
    internal::WriteScoreJson(*report.combined, out);
  else
    out << "null";
  out << ",\n  \"utterances\": [";
  for (std::size_t i = 0; i < report.utterances.size(); ++i) {
    const auto &u = report.utterances[i];
    out << (i ? ",\n    " : "\n    ");
    out << "{\"id\": " << internal::JsonString(u.id) << ", \"ref_len\": " << u.ref_len
        << ", \"errors\": ";
    internal::WriteJsonArray(u.errors, out);
    out << ", \"em\": ";
    internal::WriteJsonArray(u.em, out);
    out << ", \"missing\": ";
    internal::WriteJsonArray(u.missing, out);
    out << ", \"combined_errors\": ";
    internal::WriteJsonOptional(u.combined_errors, out);
    out << ", \"combined_em\": ";
    internal::WriteJsonOptional(u.combined_em, out);
    out << ", \"combined_valid\": ";
    internal::WriteJsonOptional(u.combined_valid, out);
    out << ", \"fell_back\": ";
    internal::WriteJsonOptional(u.fell_back, out);
    out << "}";
  }
  out << (report.utterances.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

/// Summary rows only: one per system, then the combination.
inline void WriteReportTsv(const EvalReport &report, std::ostream &out) {
  auto cell = [](const std::optional<Rational> &r, bool exact) {
    return r ? (exact ? r->ToString() : r->Fixed4()) : std::string("-");
  };
  auto row = [&](const char *kind, const SystemScore &s) {
    out << kind << '\t' << s.system_id << '\t' << s.n_utterances << '\t' << cell(s.em, false)
        << '\t' << cell(s.em, true) << '\t' << cell(s.wer, false) << '\t' << cell(s.wer, true)
        << '\n';
  };
  out << "kind\tsystem_id\tn\tem\tem_exact\twer\twer_exact\n";
  for (const auto &s : report.systems) row("system", s);
  if (report.combined) row("combined", *report.combined);
}

inline void WriteReport(const EvalReport &report, const std::filesystem::path &path,
                        ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  if (format == ReportFormat::kJson)
    WriteReportJson(report, out);
  else
    WriteReportTsv(report, out);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

inline EvalReport ParseReportJson(std::string_view text) {
  EvalReport report;
  try {
    const auto doc = nlohmann::json::parse(text);
    report.task = doc.at("task").get<std::string>();
    for (const auto &row : doc.at("systems")) report.systems.push_back(internal::ReadScore(row));
    if (!doc.at("combined").is_null()) report.combined = internal::ReadScore(doc["combined"]);
    for (const auto &row : doc.at("utterances")) {
      UtteranceRow u;
      u.id = row.at("id").get<std::string>();
      u.ref_len = row.at("ref_len").get<std::uint64_t>();
      u.errors = row.at("errors").get<std::vector<std::uint64_t>>();
      u.em = row.at("em").get<std::vector<bool>>();
      u.missing = row.at("missing").get<std::vector<bool>>();
      u.combined_errors = internal::ReadOptional<std::uint64_t>(row, "combined_errors");
      u.combined_em = internal::ReadOptional<bool>(row, "combined_em");
      u.combined_valid = internal::ReadOptional<bool>(row, "combined_valid");
      u.fell_back = internal::ReadOptional<bool>(row, "fell_back");
      report.utterances.push_back(std::move(u));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kMalformedLine, std::string("report: ") + e.what());
  }
  return report;
}

inline EvalReport ReadReportJson(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseReportJson(buf.str());
}

}  // namespace slurover

#endif  // SLUROVER_CORPUS_IO_HPP_
