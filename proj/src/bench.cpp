// Copyright 2026 The lpchain Authors
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

#include "lpchain/bench.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "lpchain/sim/scenario_io.hpp"
#include "lpchain/sim/world.hpp"

namespace lpchain::bench {

namespace {

using Field = std::variant<std::string MetricRow::*, std::int64_t MetricRow::*, std::uint64_t MetricRow::*,
                           double MetricRow::*>;

struct Column {
  std::string_view name;
  Field field;
};

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      {"sweep_variable", &MetricRow::sweep_variable},
      {"sweep_value", &MetricRow::sweep_value},
      {"seed", &MetricRow::seed},
      {"config_digest", &MetricRow::config_digest},
      {"runs", &MetricRow::runs},
      {"committed", &MetricRow::committed},
      {"rejected", &MetricRow::rejected},
      {"aborted", &MetricRow::aborted},
      {"ddt_virtual_mean_ms", &MetricRow::ddt_virtual_mean_ms},
      {"ddt_virtual_min_ms", &MetricRow::ddt_virtual_min_ms},
      {"ddt_virtual_max_ms", &MetricRow::ddt_virtual_max_ms},
      {"ddt_wall_mean_ms", &MetricRow::ddt_wall_mean_ms},
      {"ddt_wall_min_ms", &MetricRow::ddt_wall_min_ms},
      {"ddt_wall_max_ms", &MetricRow::ddt_wall_max_ms},
      {"pgt_virtual_mean_ms", &MetricRow::pgt_virtual_mean_ms},
      {"pgt_wall_mean_ms", &MetricRow::pgt_wall_mean_ms},
      {"proof_bytes", &MetricRow::proof_bytes},
      {"block_bytes", &MetricRow::block_bytes},
      {"request_interval_ms", &MetricRow::request_interval_ms},
      {"error", &MetricRow::error},
  };
  return cols;
}

std::string number_text(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <class T>
std::string number_text(T v) {
  return std::to_string(v);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Splits one CSV record; handles quoted fields without embedded newlines.
std::optional<std::vector<std::string>> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) return std::nullopt;
  out.push_back(std::move(cur));
  return out;
}

struct Stats {
  double sum = 0, min = std::numeric_limits<double>::infinity(), max = -std::numeric_limits<double>::infinity();
  std::int64_t n = 0;
  void add(double v) {
    sum += v;
    min = std::min(min, v);
    max = std::max(max, v);
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double lo() const { return n ? min : 0.0; }
  double hi() const { return n ? max : 0.0; }
};

}  // namespace

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::WorkerCount: return "worker_count";
    case SweepVariable::ConsensusK: return "consensus_k";
    case SweepVariable::KeySize: return "key_size";
    case SweepVariable::ConcurrentRequests: return "concurrent_requests";
  }
  return "?";
}

Result<SweepVariable> sweep_variable_from(std::string_view name) {
  for (auto v : {SweepVariable::WorkerCount, SweepVariable::ConsensusK, SweepVariable::KeySize,
                 SweepVariable::ConcurrentRequests})
    if (to_string(v) == name) return v;
  return fail(Reason::ParseError, "unknown sweep variable '" + std::string(name) + "'");
}

Status SweepSpec::validate() const {
  if (values.empty()) return fail(Reason::InvalidConfig, "sweep values must be non-empty");
  if (repetitions < 1) return fail(Reason::InvalidConfig, "repetitions must be at least 1");
  return base.validate();
}

Result<SweepSpec> parse_sweep(std::string_view text) {
  try {
    YAML::Node root = YAML::Load(std::string(text));
    if (!root.IsMap()) return fail(Reason::ParseError, "sweep: expected a map");
    SweepSpec spec;
    for (const auto& kv : root) {
      auto k = kv.first.as<std::string>();
      if (k != "variable" && k != "values" && k != "repetitions" && k != "base")
        return fail(Reason::ParseError, "sweep: unknown key '" + k + "'");
    }
    if (!root["variable"]) return fail(Reason::ParseError, "sweep: variable is required");
    auto var = sweep_variable_from(root["variable"].as<std::string>());
    if (!var) return var.failure();
    spec.variable = *var;
    if (auto vs = root["values"]) {
      if (!vs.IsSequence()) return fail(Reason::ParseError, "sweep: values must be a list");
      for (const auto& v : vs) {
        std::int64_t x = 0;
        if (!parse_number(v.Scalar(), x)) return fail(Reason::ParseError, "sweep: bad value '" + v.Scalar() + "'");
        spec.values.push_back(x);
      }
    }
    if (auto r = root["repetitions"]) {
      if (!parse_number(r.Scalar(), spec.repetitions))
        return fail(Reason::ParseError, "sweep: bad repetitions '" + r.Scalar() + "'");
    }
    if (auto b = root["base"]) {
      std::stringstream ss;
      ss << b;
      auto base = sim::parse_scenario(ss.str());
      if (!base) return base.failure();
      spec.base = *base;
    }
    return spec;
  } catch (const YAML::Exception& e) {
    return fail(Reason::ParseError, e.what());
  }
}

Result<SweepSpec> load_sweep(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return fail(Reason::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep(ss.str());
}

double request_window_ms(std::int64_t n) { return 28.0 + static_cast<double>(n - 5) * (920.0 - 28.0) / 95.0; }

sim::ScenarioConfig point_config(const SweepSpec& spec, std::int64_t value, int repetition) {
  sim::ScenarioConfig c = spec.base;
  c.seed = spec.base.seed + static_cast<std::uint64_t>(repetition);
  switch (spec.variable) {
    case SweepVariable::WorkerCount: {
      // One LA per 16 workers, as in the 375 + 25 baseline.
      auto las = static_cast<int>(std::llround(static_cast<double>(value) / 16.0));
      c.workers.clear();
      c.population.location_authorities = std::max(las, 1);
      c.population.mobiles = static_cast<int>(value) - c.population.location_authorities;
      break;
    }
    case SweepVariable::ConsensusK: c.k = static_cast<int>(value); break;
    case SweepVariable::KeySize: c.key_size = static_cast<int>(value); break;
    case SweepVariable::ConcurrentRequests:
      c.provers.clear();
      c.prover_generator.count = static_cast<int>(value);
      c.prover_generator.requests_each = 1;
      c.prover_generator.concurrent_window_ms = std::max<std::int64_t>(1, std::llround(request_window_ms(value)));
      if (!c.prover_generator.rrsn) c.prover_generator.rrsn = 0;
      break;
  }
  return c;
}

const std::vector<std::string_view>& metric_columns() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> n;
    for (const auto& c : columns()) n.push_back(c.name);
    return n;
  }();
  return names;
}

MetricRow summarize(std::string_view variable, std::int64_t value, const sim::ScenarioConfig& config,
                    const std::vector<std::vector<sim::ProtocolOutcome>>& runs) {
  MetricRow row;
  row.sweep_variable = std::string(variable);
  row.sweep_value = value;
  row.seed = config.seed;
  row.config_digest = sim::config_digest(config).hex();
  Stats ddt_v, ddt_w, pgt_v, pgt_w, interval;
  for (const auto& outcomes : runs) {
    double first = std::numeric_limits<double>::infinity(), last = -first;
    for (const auto& o : outcomes) {
      ++row.runs;
      if (o.verdict == sim::RunVerdict::Committed)
        ++row.committed;
      else if (o.verdict == sim::RunVerdict::RejectedAtLedger)
        ++row.rejected;
      else
        ++row.aborted;
      if (o.has_ddt) {
        ddt_v.add(o.ddt_virtual_ms);
        if (config.wall_time) ddt_w.add(o.ddt_wall_ms);
      }
      if (o.has_pgt) {
        pgt_v.add(o.pgt_virtual_ms);
        if (config.wall_time) pgt_w.add(o.pgt_wall_ms);
      }
      row.proof_bytes = std::max(row.proof_bytes, static_cast<std::int64_t>(o.proof_bytes));
      row.block_bytes = std::max(row.block_bytes, static_cast<std::int64_t>(o.block_bytes));
      if (o.arrival_ms >= 0) {
        first = std::min(first, o.arrival_ms);
        last = std::max(last, o.arrival_ms);
      }
    }
    if (last >= first) interval.add(last - first);
  }
  row.ddt_virtual_mean_ms = ddt_v.mean();
  row.ddt_virtual_min_ms = ddt_v.lo();
  row.ddt_virtual_max_ms = ddt_v.hi();
  row.ddt_wall_mean_ms = ddt_w.mean();
  row.ddt_wall_min_ms = ddt_w.lo();
  row.ddt_wall_max_ms = ddt_w.hi();
  row.pgt_virtual_mean_ms = pgt_v.mean();
  row.pgt_wall_mean_ms = pgt_w.mean();
  row.request_interval_ms = interval.mean();
  return row;
}

std::vector<MetricRow> run_sweep(const SweepSpec& spec) {
  std::vector<MetricRow> rows;
  const auto variable = to_string(spec.variable);
  for (auto value : spec.values) {
    sim::ScenarioConfig first = point_config(spec, value, 0);
    std::vector<std::vector<sim::ProtocolOutcome>> runs;
    std::string error;
    for (int r = 0; r < spec.repetitions && error.empty(); ++r) {
      auto out = sim::run_scenario(point_config(spec, value, r));
      if (!out) {
        error = std::string(to_string(out.reason())) + ": " + out.failure().detail;
        break;
      }
      runs.push_back(std::move(*out));
    }
    if (!error.empty()) {
      MetricRow row;
      row.sweep_variable = std::string(variable);
      row.sweep_value = value;
      row.seed = first.seed;
      row.config_digest = sim::config_digest(first).hex();
      row.error = error;
      rows.push_back(std::move(row));
      continue;
    }
    rows.push_back(summarize(variable, value, first, runs));
  }
  return rows;
}

Result<Format> format_from(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "jsonl" || name == "json-lines") return Format::JsonLines;
  return fail(Reason::ParseError, "unknown format '" + std::string(name) + "'");
}

void write_rows(std::ostream& os, const std::vector<MetricRow>& rows, Format format) {
  const auto& cols = columns();
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].name;
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) os << ',';
        std::visit(
            [&](auto member) {
              const auto& v = row.*member;
              if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::string>)
                os << csv_quote(v);
              else
                os << number_text(v);
            },
            cols[i].field);
      }
      os << '\n';
    }
    return;
  }
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    for (const auto& c : cols) std::visit([&](auto member) { j[std::string(c.name)] = row.*member; }, c.field);
    os << j.dump() << '\n';
  }
}

Result<std::vector<MetricRow>> read_rows(std::istream& is, Format format) {
  const auto& cols = columns();
  std::vector<MetricRow> rows;
  std::string line;
  if (format == Format::Csv) {
    if (!std::getline(is, line)) return fail(Reason::ParseError, "missing CSV header");
    auto header = csv_split(line);
    if (!header || header->size() != cols.size()) return fail(Reason::ParseError, "unexpected CSV header");
    for (std::size_t i = 0; i < cols.size(); ++i)
      if ((*header)[i] != cols[i].name) return fail(Reason::ParseError, "unexpected column " + (*header)[i]);
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      // A quoted cell may span lines; keep reading while a quote is open.
      std::string more;
      while (std::count(line.begin(), line.end(), '"') % 2 == 1 && std::getline(is, more)) line += "\n" + more;
      auto cells = csv_split(line);
      if (!cells || cells->size() != cols.size()) return fail(Reason::ParseError, "bad CSV row: " + line);
      MetricRow row;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        bool good = std::visit(
            [&](auto member) {
              auto& v = row.*member;
              if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::string>) {
                v = (*cells)[i];
                return true;
              } else {
                return parse_number((*cells)[i], v);
              }
            },
            cols[i].field);
        if (!good) return fail(Reason::ParseError, "bad value in column " + std::string(cols[i].name));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      MetricRow row;
      for (const auto& c : cols) {
        std::visit(
            [&](auto member) {
              auto& v = row.*member;
              j.at(std::string(c.name)).get_to(v);
            },
            c.field);
      }
      rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      return fail(Reason::ParseError, e.what());
    }
  }
  return rows;
}

void write_outcomes(std::ostream& os, const std::vector<sim::ProtocolOutcome>& outcomes, Format format,
                    bool with_wall) {
  auto reason = [](const std::optional<Reason>& r) { return r ? std::string(to_string(*r)) : std::string(); };
  std::vector<std::string> names = {"instance", "prover",      "verdict",     "reason",          "attacked",
                                    "ddt_virtual_ms", "pgt_virtual_ms", "proof_bytes", "block_bytes",
                                    "presented", "third_party_valid", "detection_reason"};
  if (with_wall) {
    names.push_back("ddt_wall_ms");
    names.push_back("pgt_wall_ms");
  }
  auto cells = [&](const sim::ProtocolOutcome& o) {
    std::vector<std::string> c = {std::to_string(o.instance),
                                  o.prover,
                                  std::string(sim::to_string(o.verdict)),
                                  reason(o.reason),
                                  o.attacked ? "true" : "false",
                                  o.has_ddt ? number_text(o.ddt_virtual_ms) : "",
                                  o.has_pgt ? number_text(o.pgt_virtual_ms) : "",
                                  std::to_string(o.proof_bytes),
                                  std::to_string(o.block_bytes),
                                  o.presented ? "true" : "false",
                                  o.third_party_valid ? "true" : "false",
                                  reason(o.detection_reason)};
    if (with_wall) {
      c.push_back(o.has_ddt ? number_text(o.ddt_wall_ms) : "");
      c.push_back(o.has_pgt ? number_text(o.pgt_wall_ms) : "");
    }
    return c;
  };
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
    os << '\n';
    for (const auto& o : outcomes) {
      auto c = cells(o);
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << csv_quote(c[i]);
      os << '\n';
    }
    return;
  }
  for (const auto& o : outcomes) {
    nlohmann::ordered_json j;
    j["instance"] = o.instance;
    j["prover"] = o.prover;
    j["verdict"] = sim::to_string(o.verdict);
    j["reason"] = o.reason ? nlohmann::ordered_json(to_string(*o.reason)) : nlohmann::ordered_json();
    j["attacked"] = o.attacked;
    j["ddt_virtual_ms"] = o.has_ddt ? nlohmann::ordered_json(o.ddt_virtual_ms) : nlohmann::ordered_json();
    j["pgt_virtual_ms"] = o.has_pgt ? nlohmann::ordered_json(o.pgt_virtual_ms) : nlohmann::ordered_json();
    j["proof_bytes"] = o.proof_bytes;
    j["block_bytes"] = o.block_bytes;
    j["presented"] = o.presented;
    j["third_party_valid"] = o.third_party_valid;
    j["detection_reason"] =
        o.detection_reason ? nlohmann::ordered_json(to_string(*o.detection_reason)) : nlohmann::ordered_json();
    if (with_wall) {
      j["ddt_wall_ms"] = o.has_ddt ? nlohmann::ordered_json(o.ddt_wall_ms) : nlohmann::ordered_json();
      j["pgt_wall_ms"] = o.has_pgt ? nlohmann::ordered_json(o.pgt_wall_ms) : nlohmann::ordered_json();
    }
    os << j.dump() << '\n';
  }
}

Status export_rows(const std::vector<MetricRow>& rows, Format format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail(Reason::IoError, "cannot write " + path.string());
  write_rows(out, rows, format);
  out.flush();
  if (!out) return fail(Reason::IoError, "write failed for " + path.string());
  return ok_status();
}

}  // namespace lpchain::bench
