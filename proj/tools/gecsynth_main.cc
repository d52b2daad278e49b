// Copyright 2026 The gecsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: corrupt, measure, filter, clean, vocab, stats.
// Data goes to files (or stdout for measure/stats); progress and summaries
// go to stderr. Exit codes: 0 success, 1 I/O or data errors, 2
// configuration errors.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gecsynth/alignment.h"
#include "gecsynth/corpus_io.h"
#include "gecsynth/corrupt.h"
#include "gecsynth/error.h"
#include "gecsynth/filter.h"
#include "gecsynth/kernels/levenshtein.h"
#include "gecsynth/manifest.h"
#include "gecsynth/parallel.h"
#include "gecsynth/text.h"
#include "gecsynth/version.h"
#include "gecsynth/vocab.h"

namespace gecsynth {
namespace {

using nlohmann::json;

constexpr std::size_t kBatchLines = 8192;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

bool has_extension(const std::string& path, std::string_view ext) {
  return std::filesystem::path(path).extension() == ext;
}

// ---------------------------------------------------------------------------
// Shared option bundles
// ---------------------------------------------------------------------------

struct CommonArgs {
  unsigned threads = default_threads();
  std::string manifest_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--threads", args.threads, "Worker threads")
      ->envname("GECSYNTH_THREADS")
      ->check(CLI::Range(1u, 1024u));
  cmd->add_option("--manifest", args.manifest_path,
                  "Manifest path (default: <output>.manifest.json)");
}

void write_manifest(const CommonArgs& common, RunManifest manifest,
                    const Timer& timer,
                    const std::string& default_anchor = "") {
  manifest.wall_time_seconds = timer.seconds();
  std::string path = common.manifest_path;
  if (path.empty() && !default_anchor.empty())
    path = default_anchor + ".manifest.json";
  if (!path.empty()) manifest.write(path);
}

// ---------------------------------------------------------------------------
// corrupt
// ---------------------------------------------------------------------------

struct CorruptArgs {
  std::string input;
  std::string output;
  std::string vocab_file;
  std::vector<std::string> build_vocab_from;
  std::string ops_file;
  double error_rate = 0.4;
  std::string ratio = "1:1:1";
  std::uint64_t seed = 0;
  std::string punct_spec;
  std::string sampling = "uniform";
  CommonArgs common;
};

Vocabulary make_vocabulary(const CorruptArgs& args, unsigned threads) {
  if (!args.vocab_file.empty()) return Vocabulary::load(args.vocab_file);
  std::vector<std::string> sources = args.build_vocab_from;
  if (sources.empty()) sources.push_back(args.input);  // V from the input itself
  std::vector<VocabBuilder> builders(std::max(1u, threads));
  std::vector<std::string> batch;
  for (const std::string& file : sources) {
    LineReader reader(file);
    std::string line;
    bool more = true;
    while (more) {
      batch.clear();
      while (batch.size() < kBatchLines && (more = reader.next(line)))
        batch.push_back(line);
      parallel_for(batch.size(), threads, [&](std::size_t begin, std::size_t end) {
        // Slice w of the batch feeds builder w; counts merge at the end.
        const std::size_t chunk =
            (batch.size() + builders.size() - 1) / builders.size();
        VocabBuilder& local = builders[begin / std::max<std::size_t>(1, chunk)];
        for (std::size_t i = begin; i < end; ++i) local.add_line(batch[i]);
      });
    }
  }
  VocabBuilder merged;
  for (VocabBuilder& b : builders) merged.merge(std::move(b));
  return std::move(merged).build();
}

json op_to_json(const EditOp& op) {
  json j;
  j["op"] = std::string(1, coarse_code(op.coarse));
  j["src_pos"] = op.src_pos;
  j["tgt_pos"] = op.tgt_pos;
  if (op.src_text) j["src_text"] = *op.src_text;
  if (op.tgt_text) j["tgt_text"] = *op.tgt_text;
  return j;
}

int run_corrupt(const CorruptArgs& args) {
  Timer timer;
  CorruptionConfig config;
  config.error_rate = args.error_rate;
  parse_ratio(args.ratio, config);
  config.seed = args.seed;
  if (!args.punct_spec.empty())
    config.punct = PunctuationSet::parse(args.punct_spec);
  if (args.sampling == "uniform") {
    config.insertion_sampling = CorruptionConfig::Sampling::kUniform;
  } else if (args.sampling == "frequency") {
    config.insertion_sampling = CorruptionConfig::Sampling::kFrequencyWeighted;
  } else {
    throw ConfigError("--insertion-sampling must be uniform or frequency");
  }
  config.validate();

  const Vocabulary vocab = make_vocabulary(args, args.common.threads);
  const TokenSampler sampler(vocab, config.punct, config.insertion_sampling);

  LineReader reader(args.input);
  LineWriter writer(args.output);
  std::optional<LineWriter> ops_writer;
  if (!args.ops_file.empty()) ops_writer.emplace(args.ops_file);

  std::vector<std::string> batch;
  std::vector<std::string> out_lines;
  std::vector<std::string> out_ops;
  CoarseCounts ops_total;
  std::uint64_t sentences = 0;
  std::uint64_t tokens_in = 0;
  std::uint64_t tokens_out = 0;
  std::uint64_t fully_deleted = 0;

  std::string line;
  bool more = true;
  std::uint64_t base_index = 0;
  while (more) {
    batch.clear();
    while (batch.size() < kBatchLines && (more = reader.next(line)))
      batch.push_back(line);
    out_lines.assign(batch.size(), {});
    out_ops.assign(ops_writer ? batch.size() : 0, {});
    std::vector<CoarseCounts> slice_counts(batch.size());
    std::vector<std::uint64_t> slice_in(batch.size(), 0);
    std::vector<std::uint64_t> slice_out(batch.size(), 0);

    parallel_for(batch.size(), args.common.threads,
                 [&](std::size_t begin, std::size_t end) {
                   for (std::size_t i = begin; i < end; ++i) {
                     const std::uint64_t line_index = base_index + i;
                     const std::vector<Token> tokens =
                         tokenize(batch[i], config.punct);
                     if (tokens.empty())
                       throw DataError("empty sentence at " + args.input + ":" +
                                       std::to_string(line_index + 1));
                     CorruptionRecord rec =
                         corrupt_sentence(tokens, sampler, config, line_index);
                     slice_counts[i] = coarse_counts(rec.applied_ops);
                     slice_in[i] = rec.pair.target.size();
                     slice_out[i] = rec.pair.source.size();
                     std::string& out = out_lines[i];
                     out = join_tokens(rec.pair.source);
                     out.push_back('\t');
                     out += join_tokens(rec.pair.target);
                     if (ops_writer) {
                       json j;
                       j["line"] = line_index + 1;
                       json ops = json::array();
                       for (const EditOp& op : rec.applied_ops)
                         ops.push_back(op_to_json(op));
                       j["ops"] = std::move(ops);
                       out_ops[i] = j.dump();
                     }
                   }
                 });

    for (std::size_t i = 0; i < batch.size(); ++i) {
      writer.write(out_lines[i]);
      if (ops_writer) ops_writer->write(out_ops[i]);
      ops_total.merge(slice_counts[i]);
      tokens_in += slice_in[i];
      tokens_out += slice_out[i];
      if (slice_out[i] == 0) ++fully_deleted;
    }
    sentences += batch.size();
    base_index += batch.size();
  }
  writer.flush_and_check();
  if (ops_writer) ops_writer->flush_and_check();

  std::string punct_echo;
  for (const auto& m : config.punct.members()) {
    if (!punct_echo.empty()) punct_echo.push_back(' ');
    punct_echo += m;
  }
  RunManifest manifest;
  manifest.subcommand = "corrupt";
  manifest.config = {{"error_rate", config.error_rate},
                     {"ratio", args.ratio},
                     {"seed", config.seed},
                     {"punct_set", punct_echo},
                     {"insertion_sampling", args.sampling},
                     {"threads", args.common.threads},
                     {"kernel", std::string(kernels::backend_name(
                                    kernels::active_backend()))}};
  manifest.inputs = {args.input};
  manifest.outputs = {args.output};
  if (!args.ops_file.empty()) manifest.outputs.push_back(args.ops_file);
  manifest.seed = config.seed;
  const std::uint64_t total_ops = ops_total.total();
  manifest.stats = {
      {"sentences", sentences},
      {"tokens_original", tokens_in},
      {"tokens_corrupted", tokens_out},
      {"vocabulary_size", vocab.size()},
      {"applied_ops",
       {{"M", ops_total.missing},
        {"U", ops_total.unnecessary},
        {"R", ops_total.replacement},
        {"total", total_ops}}},
      {"ops_per_original_token",
       tokens_in ? static_cast<double>(total_ops) /
                       static_cast<double>(tokens_in)
                 : 0.0},
      {"fully_deleted_sentences", fully_deleted}};
  write_manifest(args.common, std::move(manifest), timer, args.output);

  std::cerr << "corrupt: " << sentences << " sentences, " << total_ops
            << " ops (" << fmt6(tokens_in ? static_cast<double>(total_ops) /
                                                static_cast<double>(tokens_in)
                                          : 0.0)
            << " per token) in " << fmt6(timer.seconds()) << "s\n";
  return 0;
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

struct MeasureArgs {
  std::string input;
  std::string format = "auto";  // auto | tsv | m2
  std::string type_source = "align";
  std::uint32_t annotator = 0;
  std::string punct_spec;
  bool as_json = false;
  CommonArgs common;
};

std::string resolve_format(const std::string& format, const std::string& path) {
  if (format != "auto") return format;
  return has_extension(path, ".m2") ? "m2" : "tsv";
}

struct MeasureTotals {
  CorpusAccumulator acc;
  std::map<std::string, std::uint64_t> fine_counts;
};

int run_measure(const MeasureArgs& args) {
  Timer timer;
  const std::string format = resolve_format(args.format, args.input);
  if (format != "tsv" && format != "m2")
    throw ConfigError("--format must be auto, tsv or m2");
  const bool external_types = args.type_source == "m2";
  if (!external_types && args.type_source != "align")
    throw ConfigError("--type-source must be align or m2");
  if (external_types && format != "m2")
    throw ConfigError("--type-source m2 requires M2 input");
  const PunctuationSet punct = args.punct_spec.empty()
                                   ? PunctuationSet::default_set()
                                   : PunctuationSet::parse(args.punct_spec);

  MeasureTotals totals;
  std::vector<SentencePair> batch;
  std::vector<std::vector<std::string>> batch_types;
  std::vector<std::uint64_t> batch_lines;

  auto process_batch = [&]() {
    std::vector<CorpusAccumulator> accs(std::max(1u, args.common.threads));
    std::vector<std::map<std::string, std::uint64_t>> fines(accs.size());
    const std::size_t n = batch.size();
    const std::size_t chunk = (n + accs.size() - 1) / accs.size();
    parallel_for(n, args.common.threads, [&](std::size_t begin, std::size_t end) {
      const std::size_t slot = begin / std::max<std::size_t>(1, chunk);
      for (std::size_t i = begin; i < end; ++i) {
        const SentencePair& pair = batch[i];
        if (pair.target.empty())
          throw DataError("zero-length correction at " + args.input + ":" +
                          std::to_string(batch_lines[i]));
        PairMetrics m;
        CoarseCounts c;
        if (external_types) {
          m = pair_metrics(pair);
          for (const std::string& t : batch_types[i]) fines[slot][t] += 1;
        } else {
          const std::vector<EditOp> ops = align(pair.source, pair.target);
          m.distance = ops.size();
          m.target_len = pair.target.size();
          c = coarse_counts(ops);
        }
        accs[slot].add_pair(m, c, pair.source.size());
      }
    });
    for (const auto& a : accs) totals.acc.merge(a);
    for (const auto& f : fines)
      for (const auto& [k, v] : f) totals.fine_counts[k] += v;
  };

  if (format == "tsv") {
    TsvReader reader(args.input, punct);
    SentencePair pair;
    bool more = true;
    while (more) {
      batch.clear();
      batch_lines.clear();
      while (batch.size() < kBatchLines && (more = reader.next(pair))) {
        batch.push_back(pair);
        batch_lines.push_back(reader.line_number());
      }
      process_batch();
    }
  } else {
    M2Reader reader(args.input, punct);
    M2Entry entry;
    bool more = true;
    while (more) {
      batch.clear();
      batch_types.clear();
      batch_lines.clear();
      while (batch.size() < kBatchLines && (more = reader.next(entry))) {
        batch.push_back(reader.to_pair(entry, args.annotator));
        if (external_types)
          batch_types.push_back(M2Reader::edit_types(entry, args.annotator));
        batch_lines.push_back(reader.block_start_line());
      }
      process_batch();
    }
  }

  if (totals.acc.pair_count == 0) throw DataError("empty corpus");

  json out;
  out["pairs"] = totals.acc.pair_count;
  out["tokens"] = {{"source", totals.acc.source_len_sum},
                   {"target", totals.acc.target_len_sum}};
  out["distance"] = totals.acc.distance_sum;
  out["error_rate"] = totals.acc.error_rate();
  out["empty_source_pairs"] = totals.acc.empty_source_pairs;
  if (external_types) {
    out["types"] = totals.fine_counts;
  } else {
    out["types"] = {{"M", totals.acc.coarse.missing},
                    {"U", totals.acc.coarse.unnecessary},
                    {"R", totals.acc.coarse.replacement}};
  }

  if (args.as_json) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "pairs              " << totals.acc.pair_count << '\n'
              << "source_tokens      " << totals.acc.source_len_sum << '\n'
              << "target_tokens      " << totals.acc.target_len_sum << '\n'
              << "distance           " << totals.acc.distance_sum << '\n'
              << "error_rate         " << fmt6(totals.acc.error_rate()) << '\n'
              << "empty_source_pairs " << totals.acc.empty_source_pairs << '\n';
    for (const auto& [k, v] : out["types"].items())
      std::cout << "type." << k << std::string(k.size() < 14 ? 14 - k.size() : 1, ' ')
                << v.template get<std::uint64_t>() << '\n';
  }

  RunManifest manifest;
  manifest.subcommand = "measure";
  manifest.config = {{"format", format},
                     {"type_source", args.type_source},
                     {"annotator", args.annotator},
                     {"threads", args.common.threads}};
  manifest.inputs = {args.input};
  manifest.stats = out;
  write_manifest(args.common, std::move(manifest), timer);
  return 0;
}

// ---------------------------------------------------------------------------
// filter
// ---------------------------------------------------------------------------

struct FilterArgs {
  std::string input;
  std::string output;
  std::string format = "auto";
  double target_error_rate = 0.4;
  double theta = 0.05;
  std::string type_ratio = "M:1,U:1,R:1";
  std::string type_source = "align";
  std::uint32_t annotator = 0;
  bool literal_alg2 = false;
  bool drop_empty_source = true;
  std::string report_path;
  std::string punct_spec;
  CommonArgs common;
};

std::map<std::string, double> parse_type_ratio(const std::string& spec) {
  // "M:1,U:1,R:1" or fine codes, e.g. "R:VERB:SVA:2" (weight after the
  // last colon).
  std::map<std::string, double> ratio;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string chunk = spec.substr(pos, comma - pos);
    const std::size_t colon = chunk.rfind(':');
    if (chunk.empty() || colon == std::string::npos || colon == 0 ||
        colon + 1 >= chunk.size())
      throw ConfigError("--type-ratio must look like M:1,U:1,R:1");
    char* endp = nullptr;
    const double w = std::strtod(chunk.c_str() + colon + 1, &endp);
    if (endp != chunk.c_str() + chunk.size())
      throw ConfigError("bad weight in --type-ratio near '" + chunk + "'");
    ratio[chunk.substr(0, colon)] = w;
    pos = comma + 1;
  }
  return ratio;
}

int run_filter(const FilterArgs& args) {
  Timer timer;
  FilterConfig config;
  config.target_error_rate = args.target_error_rate;
  config.theta = args.theta;
  config.type_ratio = parse_type_ratio(args.type_ratio);
  if (args.type_source == "align") {
    config.type_source = FilterConfig::TypeSource::kAlignCoarse;
  } else if (args.type_source == "m2") {
    config.type_source = FilterConfig::TypeSource::kExternalM2;
  } else {
    throw ConfigError("--type-source must be align or m2");
  }
  config.literal_mode = args.literal_alg2;
  config.drop_empty_source = args.drop_empty_source;
  config.validate();

  const std::string format = resolve_format(args.format, args.input);
  if (format != "tsv" && format != "m2")
    throw ConfigError("--format must be auto, tsv or m2");
  if (config.type_source == FilterConfig::TypeSource::kExternalM2 &&
      format != "m2")
    throw ConfigError("--type-source m2 requires M2 input");
  const PunctuationSet punct = args.punct_spec.empty()
                                   ? PunctuationSet::default_set()
                                   : PunctuationSet::parse(args.punct_spec);

  // Pass 1: annotate every pair into a compact record.
  TypeTable table;
  std::vector<AnnotatedPair> records;
  std::uint64_t dropped_empty_source = 0;
  {
    std::vector<SentencePair> batch;
    std::vector<std::vector<std::string>> batch_types;
    std::vector<std::uint64_t> batch_lines;
    const bool external = config.type_source == FilterConfig::TypeSource::kExternalM2;

    auto annotate_batch = [&]() {
      const std::size_t first = records.size();
      records.resize(first + batch.size());
      // TypeTable is not thread-safe; pre-intern the coarse codes and any
      // codes this batch introduces, then annotate in parallel.
      if (!external) {
        table.intern("M");
        table.intern("U");
        table.intern("R");
      } else {
        for (const auto& types : batch_types)
          for (const std::string& t : types) table.intern(t);
      }
      parallel_for(batch.size(), args.common.threads,
                   [&](std::size_t begin, std::size_t end) {
                     for (std::size_t i = begin; i < end; ++i) {
                       const std::uint64_t index = first + i;
                       try {
                         records[index] =
                             external
                                 ? annotate_external(batch[i], batch_types[i],
                                                     index, table)
                                 : annotate_align(batch[i], index, table);
                       } catch (const DataError& e) {
                         throw DataError(std::string(e.what()) + " at " +
                                         args.input + ":" +
                                         std::to_string(batch_lines[i]));
                       }
                     }
                   });
    };

    if (format == "tsv") {
      TsvReader reader(args.input, punct);
      SentencePair pair;
      bool more = true;
      while (more) {
        batch.clear();
        batch_lines.clear();
        while (batch.size() < kBatchLines && (more = reader.next(pair))) {
          batch.push_back(pair);
          batch_lines.push_back(reader.line_number());
        }
        annotate_batch();
      }
    } else {
      M2Reader reader(args.input, punct);
      M2Entry entry;
      bool more = true;
      while (more) {
        batch.clear();
        batch_types.clear();
        batch_lines.clear();
        while (batch.size() < kBatchLines && (more = reader.next(entry))) {
          batch.push_back(reader.to_pair(entry, args.annotator));
          batch_types.push_back(M2Reader::edit_types(entry, args.annotator));
          batch_lines.push_back(reader.block_start_line());
        }
        annotate_batch();
      }
    }
  }
  if (records.empty()) throw DataError("empty corpus");

  std::vector<std::uint8_t> keep(records.size(), 1);
  if (config.drop_empty_source) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].source_len == 0) {
        keep[i] = 0;
        ++dropped_empty_source;
      }
    }
  }

  const RateFilterStats rate_stats = filter_by_error_rate(
      records, config.target_error_rate, config.theta, keep);
  const BalanceStats balance_stats =
      balance_type_ratios(records, config, table, keep);

  // Balancing runs after the rate stage and can nudge the aggregate rate
  // slightly below the rate bound; report the final value separately.
  double final_rate = 0.0;
  {
    std::uint64_t d = 0, l = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!keep[i]) continue;
      d += records[i].distance;
      l += records[i].target_len;
    }
    if (l > 0) final_rate = static_cast<double>(d) / static_cast<double>(l);
  }

  // Pass 2: re-stream the input and emit retained pairs unchanged.
  std::uint64_t written = 0;
  if (format == "tsv") {
    LineReader reader(args.input);
    LineWriter writer(args.output);
    std::string raw;
    std::size_t idx = 0;
    while (reader.next(raw)) {
      if (idx >= keep.size())
        throw DataError("input changed between filter passes: " + args.input);
      if (keep[idx++]) {
        writer.write(raw);
        ++written;
      }
    }
    writer.flush_and_check();
  } else {
    M2Reader reader(args.input, punct);
    M2Writer writer(args.output);
    M2Entry entry;
    std::size_t idx = 0;
    while (reader.next(entry)) {
      if (idx >= keep.size())
        throw DataError("input changed between filter passes: " + args.input);
      if (keep[idx++]) {
        writer.write(entry);
        ++written;
      }
    }
    writer.flush_and_check();
  }

  json report;
  report["pairs"] = {{"input", records.size()},
                     {"retained", written},
                     {"dropped_empty_source", dropped_empty_source},
                     {"removed_by_rate_filter", rate_stats.removed},
                     {"removed_by_ratio_balancer", balance_stats.removed}};
  report["error_rate"] = {{"target", config.target_error_rate},
                          {"theta", config.theta},
                          {"before", rate_stats.rate_before},
                          {"after_rate_filter", rate_stats.rate_after},
                          {"final", final_rate}};
  report["balance"] = {{"benchmark_type", balance_stats.benchmark_type},
                       {"benchmark", balance_stats.benchmark},
                       {"quota", balance_stats.quota},
                       {"counts_before", balance_stats.counts_before},
                       {"counts_after", balance_stats.counts_after},
                       {"balanced", balance_stats.balanced},
                       {"residual_over_quota",
                        balance_stats.residual_over_quota}};
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path, std::ios::binary);
    if (!out)
      throw IoError("cannot open report for writing: " + args.report_path);
    out << report.dump(2) << '\n';
  }

  RunManifest manifest;
  manifest.subcommand = "filter";
  manifest.config = {{"target_error_rate", config.target_error_rate},
                     {"theta", config.theta},
                     {"type_ratio", args.type_ratio},
                     {"type_source", args.type_source},
                     {"annotator", args.annotator},
                     {"literal_alg2", config.literal_mode},
                     {"drop_empty_source", config.drop_empty_source},
                     {"format", format},
                     {"threads", args.common.threads}};
  manifest.inputs = {args.input};
  manifest.outputs = {args.output};
  manifest.stats = report;
  write_manifest(args.common, std::move(manifest), timer, args.output);

  std::cerr << "filter: kept " << written << "/" << records.size()
            << " pairs, rate " << fmt6(rate_stats.rate_before) << " -> "
            << fmt6(final_rate);
  if (!balance_stats.balanced) {
    std::cerr << " (unbalanced residual:";
    for (const auto& [k, v] : balance_stats.residual_over_quota)
      std::cerr << ' ' << k << '=' << v;
    std::cerr << ')';
  }
  std::cerr << " in " << fmt6(timer.seconds()) << "s\n";
  return 0;
}

// ---------------------------------------------------------------------------
// clean
// ---------------------------------------------------------------------------

struct CleanArgs {
  std::string input;
  std::string output;
  std::string punct_spec;
  CommonArgs common;
};

int run_clean(const CleanArgs& args) {
  Timer timer;
  const PunctuationSet punct = args.punct_spec.empty()
                                   ? PunctuationSet::default_set()
                                   : PunctuationSet::parse(args.punct_spec);
  TsvReader reader(args.input, punct);
  LineWriter writer(args.output);

  std::vector<SentencePair> batch;
  std::vector<std::string> raws;
  std::vector<CleanDecision> decisions;
  std::map<std::string, std::uint64_t> dropped;
  std::uint64_t kept = 0;

  SentencePair pair;
  std::string raw;
  bool more = true;
  while (more) {
    batch.clear();
    raws.clear();
    while (batch.size() < kBatchLines && (more = reader.next(pair, &raw))) {
      batch.push_back(pair);
      raws.push_back(raw);
    }
    decisions.assign(batch.size(), CleanDecision::kKeep);
    parallel_for(batch.size(), args.common.threads,
                 [&](std::size_t begin, std::size_t end) {
                   for (std::size_t i = begin; i < end; ++i)
                     decisions[i] = clean_pair(batch[i]);
                 });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (decisions[i] == CleanDecision::kKeep) {
        writer.write(raws[i]);
        ++kept;
      } else {
        dropped[std::string(clean_decision_name(decisions[i]))] += 1;
      }
    }
  }
  writer.flush_and_check();

  json stats;
  stats["kept"] = kept;
  stats["dropped"] = dropped;

  RunManifest manifest;
  manifest.subcommand = "clean";
  manifest.config = {{"threads", args.common.threads}};
  manifest.inputs = {args.input};
  manifest.outputs = {args.output};
  manifest.stats = stats;
  write_manifest(args.common, std::move(manifest), timer, args.output);

  std::cerr << "clean: kept " << kept << ", dropped";
  if (dropped.empty()) std::cerr << " 0";
  for (const auto& [k, v] : dropped) std::cerr << ' ' << k << '=' << v;
  std::cerr << " in " << fmt6(timer.seconds()) << "s\n";
  return 0;
}

// ---------------------------------------------------------------------------
// vocab
// ---------------------------------------------------------------------------

struct VocabArgs {
  std::vector<std::string> inputs;
  std::string output;
  CommonArgs common;
};

int run_vocab(const VocabArgs& args) {
  Timer timer;
  std::vector<VocabBuilder> builders(std::max(1u, args.common.threads));
  std::vector<std::string> batch;
  std::uint64_t lines = 0;
  for (const std::string& file : args.inputs) {
    LineReader reader(file);
    std::string line;
    bool more = true;
    while (more) {
      batch.clear();
      while (batch.size() < kBatchLines && (more = reader.next(line)))
        batch.push_back(line);
      lines += batch.size();
      const std::size_t chunk =
          (batch.size() + builders.size() - 1) / builders.size();
      parallel_for(batch.size(), args.common.threads,
                   [&](std::size_t begin, std::size_t end) {
                     VocabBuilder& local =
                         builders[begin / std::max<std::size_t>(1, chunk)];
                     for (std::size_t i = begin; i < end; ++i)
                       local.add_line(batch[i]);
                   });
    }
  }
  VocabBuilder merged;
  for (VocabBuilder& b : builders) merged.merge(std::move(b));
  const Vocabulary vocab = std::move(merged).build();
  vocab.save(args.output);

  RunManifest manifest;
  manifest.subcommand = "vocab";
  manifest.config = {{"threads", args.common.threads}};
  manifest.inputs = args.inputs;
  manifest.outputs = {args.output};
  manifest.stats = {{"lines", lines},
                    {"entries", vocab.size()},
                    {"total_count", vocab.total_count()}};
  write_manifest(args.common, std::move(manifest), timer, args.output);

  std::cerr << "vocab: " << vocab.size() << " entries from " << lines
            << " lines in " << fmt6(timer.seconds()) << "s\n";
  return 0;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

struct StatsArgs {
  std::vector<std::string> inputs;
  std::string format = "auto";  // auto | text | tsv
  bool as_json = false;
  CommonArgs common;
};

int run_stats(const StatsArgs& args) {
  Timer timer;
  json all = json::array();
  for (const std::string& file : args.inputs) {
    std::string format = args.format;
    if (format == "auto") format = has_extension(file, ".tsv") ? "tsv" : "text";
    LineReader reader(file);
    std::string line;
    std::uint64_t sentences = 0;
    std::uint64_t tokens = 0;
    std::uint64_t source_tokens = 0;
    std::uint64_t target_tokens = 0;
    auto count_tokens = [](std::string_view s) {
      std::uint64_t n = 0;
      bool in_token = false;
      for (char c : s) {
        const bool space = c == ' ' || c == '\t';
        if (!space && !in_token) ++n;
        in_token = !space;
      }
      return n;
    };
    while (reader.next(line)) {
      ++sentences;
      if (format == "tsv") {
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
          throw DataError("parallel line has no tab at " + file + ":" +
                          std::to_string(reader.line_number()));
        source_tokens += count_tokens(std::string_view(line).substr(0, tab));
        target_tokens += count_tokens(std::string_view(line).substr(tab + 1));
      } else {
        tokens += count_tokens(line);
      }
    }
    json j;
    j["file"] = file;
    j["sentences"] = sentences;
    if (format == "tsv") {
      j["source_tokens"] = source_tokens;
      j["target_tokens"] = target_tokens;
    } else {
      j["tokens"] = tokens;
    }
    all.push_back(j);
    if (!args.as_json) {
      std::cout << file << "\tsentences=" << sentences;
      if (format == "tsv")
        std::cout << "\tsource_tokens=" << source_tokens
                  << "\ttarget_tokens=" << target_tokens;
      else
        std::cout << "\ttokens=" << tokens;
      std::cout << '\n';
    }
  }
  if (args.as_json) std::cout << all.dump(2) << '\n';

  RunManifest manifest;
  manifest.subcommand = "stats";
  manifest.config = {{"format", args.format}};
  manifest.inputs = args.inputs;
  manifest.stats = all;
  write_manifest(args.common, std::move(manifest), timer);
  return 0;
}

// ---------------------------------------------------------------------------

int dispatch(int argc, char** argv) {
  CLI::App app{"Synthesizes and filters parallel corpora for grammatical "
               "error correction: corrupts clean text at a controlled error "
               "rate and error-type mix, measures corpora, and filters "
               "parallel data to a target rate and type ratio."};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CorruptArgs corrupt_args;
  auto* corrupt_cmd = app.add_subcommand(
      "corrupt", "Corrupt grammatical text into parallel training pairs");
  corrupt_cmd->add_option("-i,--input", corrupt_args.input,
                          "Grammatical corpus, one sentence per line")
      ->required();
  corrupt_cmd->add_option("-o,--output", corrupt_args.output,
                          "Output TSV: corrupted\\toriginal")
      ->required();
  corrupt_cmd->add_option("--error-rate", corrupt_args.error_rate,
                          "Per-token corruption probability in [0,1]")
      ->envname("GECSYNTH_ERROR_RATE");
  corrupt_cmd->add_option("--ratio", corrupt_args.ratio,
                          "Operation weights M:U:R, e.g. 1:1:1 or 4:6:1")
      ->envname("GECSYNTH_RATIO");
  corrupt_cmd->add_option("--seed", corrupt_args.seed, "Random seed")
      ->envname("GECSYNTH_SEED");
  corrupt_cmd->add_option("--punct-set", corrupt_args.punct_spec,
                          "Whitespace-separated punctuation tokens")
      ->envname("GECSYNTH_PUNCT_SET");
  corrupt_cmd
      ->add_option("--insertion-sampling", corrupt_args.sampling,
                   "uniform | frequency")
      ->envname("GECSYNTH_INSERTION_SAMPLING");
  corrupt_cmd->add_option("--vocab", corrupt_args.vocab_file,
                          "Vocabulary file (token\\tcount per line)");
  corrupt_cmd->add_option("--build-vocab-from", corrupt_args.build_vocab_from,
                          "Build the vocabulary from these corpora");
  corrupt_cmd->add_option("--ops-file", corrupt_args.ops_file,
                          "Write applied operations as JSON lines");
  add_common(corrupt_cmd, corrupt_args.common);

  MeasureArgs measure_args;
  auto* measure_cmd = app.add_subcommand(
      "measure", "Measure error rate and type counts of a parallel corpus");
  measure_cmd->add_option("-i,--input", measure_args.input,
                          "Parallel TSV or M2 file")
      ->required();
  measure_cmd->add_option("--format", measure_args.format, "auto | tsv | m2");
  measure_cmd->add_option("--type-source", measure_args.type_source,
                          "align | m2");
  measure_cmd->add_option("--annotator", measure_args.annotator,
                          "M2 annotator id");
  measure_cmd->add_option("--punct-set", measure_args.punct_spec,
                          "Whitespace-separated punctuation tokens");
  measure_cmd->add_flag("--json", measure_args.as_json, "JSON output");
  add_common(measure_cmd, measure_args.common);

  FilterArgs filter_args;
  auto* filter_cmd = app.add_subcommand(
      "filter", "Filter a parallel corpus to a target rate and type ratio");
  filter_cmd->add_option("-i,--input", filter_args.input,
                         "Parallel TSV or M2 file")
      ->required();
  filter_cmd->add_option("-o,--output", filter_args.output,
                         "Retained pairs (same format as input)")
      ->required();
  filter_cmd->add_option("--format", filter_args.format, "auto | tsv | m2");
  filter_cmd
      ->add_option("--target-error-rate", filter_args.target_error_rate,
                   "Target corpus error rate in [0,1]")
      ->required()
      ->envname("GECSYNTH_TARGET_ERROR_RATE");
  filter_cmd->add_option("--theta", filter_args.theta,
                         "Tolerance in [0,1), default 0.05")
      ->envname("GECSYNTH_THETA");
  filter_cmd->add_option("--type-ratio", filter_args.type_ratio,
                         "Target type ratio, e.g. M:1,U:1,R:1");
  filter_cmd->add_option("--type-source", filter_args.type_source,
                         "align | m2");
  filter_cmd->add_option("--annotator", filter_args.annotator,
                         "M2 annotator id");
  filter_cmd->add_flag("--literal-alg2", filter_args.literal_alg2,
                       "Strict pseudocode balance conditions (study mode)");
  filter_cmd->add_flag("--drop-empty-source,!--keep-empty-source",
                       filter_args.drop_empty_source,
                       "Drop pairs whose source is empty (default on)");
  filter_cmd->add_option("--report", filter_args.report_path,
                         "Write the filter report JSON here");
  filter_cmd->add_option("--punct-set", filter_args.punct_spec,
                         "Whitespace-separated punctuation tokens");
  add_common(filter_cmd, filter_args.common);

  CleanArgs clean_args;
  auto* clean_cmd = app.add_subcommand(
      "clean", "Drop identical, URL, illegal-character and emoji pairs");
  clean_cmd->add_option("-i,--input", clean_args.input, "Parallel TSV")
      ->required();
  clean_cmd->add_option("-o,--output", clean_args.output, "Retained pairs")
      ->required();
  clean_cmd->add_option("--punct-set", clean_args.punct_spec,
                        "Whitespace-separated punctuation tokens");
  add_common(clean_cmd, clean_args.common);

  VocabArgs vocab_args;
  auto* vocab_cmd = app.add_subcommand(
      "vocab", "Build a vocabulary file from corpora (token\\tcount lines)");
  vocab_cmd->add_option("-i,--input", vocab_args.inputs,
                        "Input corpora (plain text or TSV)")
      ->required();
  vocab_cmd->add_option("-o,--output", vocab_args.output, "Vocabulary file")
      ->required();
  add_common(vocab_cmd, vocab_args.common);

  StatsArgs stats_args;
  auto* stats_cmd =
      app.add_subcommand("stats", "Sentence and token counts of corpora");
  stats_cmd->add_option("-i,--input", stats_args.inputs, "Input corpora")
      ->required();
  stats_cmd->add_option("--format", stats_args.format, "auto | text | tsv");
  stats_cmd->add_flag("--json", stats_args.as_json, "JSON output");
  add_common(stats_cmd, stats_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (corrupt_cmd->parsed()) return run_corrupt(corrupt_args);
  if (measure_cmd->parsed()) return run_measure(measure_args);
  if (filter_cmd->parsed()) return run_filter(filter_args);
  if (clean_cmd->parsed()) return run_clean(clean_args);
  if (vocab_cmd->parsed()) return run_vocab(vocab_args);
  if (stats_cmd->parsed()) return run_stats(stats_args);
  return 2;
}

}  // namespace
}  // namespace gecsynth

int main(int argc, char** argv) {
  try {
    return gecsynth::dispatch(argc, argv);
  } catch (const gecsynth::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const gecsynth::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const gecsynth::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
