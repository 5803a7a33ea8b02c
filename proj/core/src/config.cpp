#include "banditsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "banditsim/errors.hpp"

namespace banditsim {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(trim(current));
  return parts;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw SchemaError("config line " + std::to_string(line) + ": " + message);
}

std::uint64_t parse_u64(const std::string& value, std::size_t line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail(line, "expected an unsigned integer, got '" + value + "'");
  }
  return out;
}

double parse_double(const std::string& value, std::size_t line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail(line, "expected a real number, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& value, std::size_t line) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(line, "expected true or false, got '" + value + "'");
}

std::vector<double> parse_real_list(const std::string& value, std::size_t line) {
  std::vector<double> out;
  for (const std::string& item : split(value, ',')) {
    if (item.empty()) fail(line, "empty entry in real list");
    out.push_back(parse_double(item, line));
  }
  return out;
}

// Rows separated by ';', entries by ','.
std::vector<std::vector<double>> parse_real_table(const std::string& value, std::size_t line) {
  std::vector<std::vector<double>> rows;
  for (const std::string& row : split(value, ';')) {
    if (row.empty()) fail(line, "empty row in probability table");
    rows.push_back(parse_real_list(row, line));
  }
  return rows;
}

// `raw:bit` pairs separated by ','; raw may be empty to map blank cells.
std::map<std::string, int> parse_value_map(const std::string& value, std::size_t line) {
  std::map<std::string, int> out;
  for (const std::string& item : split(value, ',')) {
    const std::size_t colon = item.rfind(':');
    if (colon == std::string::npos) fail(line, "value map entry '" + item + "' lacks ':'");
    const std::string raw = trim(item.substr(0, colon));
    const std::string bit = trim(item.substr(colon + 1));
    if (bit != "0" && bit != "1") {
      fail(line, "value map entry '" + item + "' must map to 0 or 1");
    }
    if (!out.emplace(raw, bit == "1" ? 1 : 0).second) {
      fail(line, "value map repeats raw value '" + raw + "'");
    }
  }
  return out;
}

}  // namespace

std::vector<PolicyKind> parse_policy_list(const std::string& names) {
  std::vector<PolicyKind> out;
  for (const std::string& name : split(names, ',')) {
    if (name.empty()) throw std::invalid_argument("empty policy name in list");
    const PolicyKind kind = parse_policy_kind(name);
    for (PolicyKind seen : out) {
      if (seen == kind) throw std::invalid_argument("policy listed twice: " + name);
    }
    out.push_back(kind);
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::set<std::string> seen_keys;
  std::istringstream stream(text);
  std::string raw_line;
  std::size_t line_no = 0;

  while (std::getline(stream, raw_line)) {
    ++line_no;
    const std::size_t hash = raw_line.find('#');
    if (hash != std::string::npos) raw_line.erase(hash);
    const std::string line = trim(raw_line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (!seen_keys.insert(key).second) fail(line_no, "duplicate key '" + key + "'");

    if (key == "mode") {
      if (value == "replay") {
        config.mode = ExperimentMode::Replay;
      } else if (value == "synth") {
        config.mode = ExperimentMode::Synth;
      } else {
        fail(line_no, "mode must be replay or synth");
      }
      config.mode_specified = true;
    } else if (key == "dataset") {
      config.dataset_path = value;
    } else if (key == "column.aspirin") {
      config.mapping.aspirin_col = value;
    } else if (key == "column.heparin") {
      config.mapping.heparin_col = value;
    } else if (key == "column.outcome") {
      config.mapping.outcome_col = value;
    } else if (key == "column.context") {
      config.mapping.context_cols.clear();
      if (!value.empty()) {
        for (const std::string& name : split(value, ',')) {
          if (name.empty()) fail(line_no, "empty context column name");
          config.mapping.context_cols.push_back(name);
        }
      }
    } else if (key.rfind("map.", 0) == 0) {
      const std::string column = trim(key.substr(4));
      if (column.empty()) fail(line_no, "map key names no column");
      config.mapping.value_maps[column] = parse_value_map(value, line_no);
    } else if (key == "missing") {
      if (value == "drop") {
        config.mapping.missing_policy = MissingPolicy::Drop;
      } else if (value == "error") {
        config.mapping.missing_policy = MissingPolicy::Error;
      } else {
        fail(line_no, "missing must be drop or error");
      }
    } else if (key == "policies") {
      try {
        config.policies = parse_policy_list(value);
      } catch (const std::invalid_argument& e) {
        fail(line_no, e.what());
      }
    } else if (key == "contextual") {
      config.contextual = parse_bool(value, line_no);
    } else if (key == "runs") {
      config.runs = parse_u64(value, line_no);
    } else if (key == "seed") {
      config.master_seed = parse_u64(value, line_no);
    } else if (key == "band") {
      const std::vector<double> band = parse_real_list(value, line_no);
      if (band.size() != 2) fail(line_no, "band needs exactly two percentiles");
      config.band_low_pct = band[0];
      config.band_high_pct = band[1];
    } else if (key == "regret") {
      if (value == "pseudo") {
        config.regret_mode = RegretMode::Pseudo;
      } else if (value == "realized") {
        config.regret_mode = RegretMode::Realized;
      } else {
        fail(line_no, "regret must be pseudo or realized");
      }
    } else if (key == "smoothing") {
      config.smoothing = parse_bool(value, line_no);
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "workers") {
      config.workers = static_cast<std::size_t>(parse_u64(value, line_no));
    } else if (key == "synth.features") {
      config.synth.num_features = static_cast<std::size_t>(parse_u64(value, line_no));
    } else if (key == "synth.arms") {
      config.synth.num_arms = static_cast<std::size_t>(parse_u64(value, line_no));
    } else if (key == "synth.theta") {
      config.synth.theta = parse_real_table(value, line_no);
    } else if (key == "synth.freqs") {
      config.synth.context_weights = parse_real_list(value, line_no);
    } else if (key == "synth.steps") {
      config.synth.num_steps = parse_u64(value, line_no);
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

void validate_config(const ExperimentConfig& config) {
  if (config.runs == 0) throw std::invalid_argument("config: runs must be at least 1");
  if (config.workers == 0) throw std::invalid_argument("config: workers must be at least 1");
  if (config.policies.empty()) throw std::invalid_argument("config: no policies selected");
  if (!(config.band_low_pct >= 0.0 && config.band_low_pct <= config.band_high_pct &&
        config.band_high_pct <= 100.0)) {
    throw std::invalid_argument("config: band percentiles must satisfy 0 <= low <= high <= 100");
  }

  if (config.mode == ExperimentMode::Replay) {
    if (config.dataset_path.empty()) throw std::invalid_argument("config: replay needs a dataset");
    try {
      validate_mapping(config.mapping);
    } catch (const SchemaError& e) {
      throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (config.mapping.context_cols.size() > kMaxContextFeatures) {
      throw std::invalid_argument("config: too many context columns");
    }
  } else {
    const SyntheticSpec& synth = config.synth;
    if (synth.num_arms == 0) throw std::invalid_argument("config: synth.arms must be at least 1");
    if (synth.num_steps == 0) throw std::invalid_argument("config: synth.steps must be at least 1");
    if (synth.num_features > kMaxContextFeatures) {
      throw std::invalid_argument("config: synth.features must be at most " +
                                  std::to_string(kMaxContextFeatures));
    }
    const std::size_t contexts = std::size_t{1} << synth.num_features;
    if (synth.theta.size() != contexts) {
      throw std::invalid_argument("config: synth.theta needs " + std::to_string(contexts) +
                                  " rows, got " + std::to_string(synth.theta.size()));
    }
    for (const std::vector<double>& row : synth.theta) {
      if (row.size() != synth.num_arms) {
        throw std::invalid_argument("config: synth.theta rows must have synth.arms entries");
      }
      for (double p : row) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
          throw std::invalid_argument("config: synth.theta entries must lie in [0, 1]");
        }
      }
    }
    if (!synth.context_weights.empty()) {
      if (synth.context_weights.size() != contexts) {
        throw std::invalid_argument("config: synth.freqs needs one weight per context");
      }
      double total = 0.0;
      for (double w : synth.context_weights) {
        if (!std::isfinite(w) || w < 0.0) {
          throw std::invalid_argument("config: synth.freqs must be finite and non-negative");
        }
        total += w;
      }
      if (!(total > 0.0)) throw std::invalid_argument("config: synth.freqs sum to zero");
    }
  }
}

}  // namespace banditsim
