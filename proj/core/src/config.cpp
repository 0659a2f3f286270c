#include "mstn/config.hpp"

#include <fstream>
#include <sstream>

#include "mstn/errors.hpp"
#include "mstn/util.hpp"

namespace mstn {

void PipelineConfig::validate() const {
  ps.validate();
  if (rnn_hidden < 1) throw ValidationError("rnn.hidden must be >= 1");
  if (!(rnn_alpha > 0.0)) throw ValidationError("rnn.alpha must be > 0");
  if (rnn_epochs < 1) throw ValidationError("rnn.epochs must be >= 1");
  if (!(rnn_init_scale > 0.0))
    throw ValidationError("rnn.init_scale must be > 0");
  if (emphasis_threshold < 0.0)
    throw ValidationError("report.threshold must be >= 0");
}

std::string_view freq_mode_name(FreqMode m) {
  return m == FreqMode::MeanActivation ? "mean" : "argmax";
}

FreqMode parse_freq_mode(const std::string& s) {
  if (s == "mean") return FreqMode::MeanActivation;
  if (s == "argmax") return FreqMode::ArgmaxCount;
  throw ValidationError("unknown frequency mode '" + s +
                        "' (expected mean or argmax)");
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Csv: return "csv";
    default: return "structured";
  }
}

OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "structured") return OutputFormat::Structured;
  throw ValidationError("unknown output format '" + s +
                        "' (expected text, csv or structured)");
}

std::string_view table_order_name(TableOrder o) {
  return o == TableOrder::Paper1 ? "paper1" : "paper3";
}

TableOrder parse_table_order(const std::string& s) {
  if (s == "paper1") return TableOrder::Paper1;
  if (s == "paper3") return TableOrder::Paper3;
  throw ValidationError("unknown table order '" + s +
                        "' (expected paper1 or paper3)");
}

std::string PipelineConfig::canonical_text() const {
  std::ostringstream out;
  out << "seed = " << seed << "\n";
  out << "ps.decay_m = " << format_exact(ps.decay_m) << "\n";
  out << "ps.conflict_l = " << ps.conflict_l << "\n";
  out << "ps.epsilon = " << format_exact(ps.epsilon) << "\n";
  out << "ps.max_episode_length = " << ps.max_episode_length << "\n";
  out << "rnn.hidden = " << rnn_hidden << "\n";
  out << "rnn.alpha = " << format_exact(rnn_alpha) << "\n";
  out << "rnn.epochs = " << rnn_epochs << "\n";
  out << "rnn.init_scale = " << format_exact(rnn_init_scale) << "\n";
  out << "freq.mode = " << freq_mode_name(freq_mode) << "\n";
  out << "report.threshold = " << format_exact(emphasis_threshold) << "\n";
  out << "report.format = " << format_name(format) << "\n";
  out << "report.table_order = " << table_order_name(table_order) << "\n";
  return out.str();
}

std::string PipelineConfig::hash() const { return to_hex(fnv1a64(canonical_text())); }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError("bad numeric value '" + v + "' for " + key);
  }
}

long long parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ValidationError("bad integer value '" + v + "' for " + key);
  }
}

}  // namespace

PipelineConfig parse_config(const std::string& text,
                            const std::string& origin) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(origin + ":" + std::to_string(lineno) +
                            ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "ps.decay_m") {
      cfg.ps.decay_m = parse_double(value, key);
    } else if (key == "ps.conflict_l") {
      cfg.ps.conflict_l = static_cast<int>(parse_int(value, key));
    } else if (key == "ps.epsilon") {
      cfg.ps.epsilon = parse_double(value, key);
    } else if (key == "ps.max_episode_length") {
      cfg.ps.max_episode_length = static_cast<int>(parse_int(value, key));
    } else if (key == "rnn.hidden") {
      cfg.rnn_hidden = static_cast<int>(parse_int(value, key));
    } else if (key == "rnn.alpha") {
      cfg.rnn_alpha = parse_double(value, key);
    } else if (key == "rnn.epochs") {
      cfg.rnn_epochs = static_cast<int>(parse_int(value, key));
    } else if (key == "rnn.init_scale") {
      cfg.rnn_init_scale = parse_double(value, key);
    } else if (key == "freq.mode") {
      cfg.freq_mode = parse_freq_mode(value);
    } else if (key == "report.threshold") {
      cfg.emphasis_threshold = parse_double(value, key);
    } else if (key == "report.format") {
      cfg.format = parse_format(value);
    } else if (key == "report.table_order") {
      cfg.table_order = parse_table_order(value);
    } else {
      throw ValidationError(origin + ":" + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace mstn
