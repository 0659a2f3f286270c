#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "mstn/pattern_frequency.hpp"
#include "mstn/profit_sharing.hpp"

namespace mstn {

enum class OutputFormat { Text, Csv, Structured };
enum class TableOrder { Paper1, Paper3 };  // baseline order vs scenario order

/// Everything a run needs besides the scenario itself. Parsed from a flat
/// key/value document; command-line flags override individual fields.
struct PipelineConfig {
  std::uint64_t seed = 42;
  ReinforceConfig ps{};
  int rnn_hidden = 14;
  double rnn_alpha = 0.05;
  int rnn_epochs = 200;
  double rnn_init_scale = 1.0;
  FreqMode freq_mode = FreqMode::MeanActivation;
  double emphasis_threshold = 0.5;
  OutputFormat format = OutputFormat::Text;
  TableOrder table_order = TableOrder::Paper3;

  void validate() const;  // throws ValidationError

  /// Canonical flat key/value rendering; equal configs render identically.
  std::string canonical_text() const;
  /// Hex digest of canonical_text(), stored in bundle provenance.
  std::string hash() const;
};

std::string_view freq_mode_name(FreqMode m);
FreqMode parse_freq_mode(const std::string& s);
std::string_view format_name(OutputFormat f);
OutputFormat parse_format(const std::string& s);
std::string_view table_order_name(TableOrder o);
TableOrder parse_table_order(const std::string& s);

/// Parse a flat key/value document ("key = value" lines, '#' comments).
/// Unknown keys are validation errors naming the key.
PipelineConfig parse_config(const std::string& text, const std::string& origin);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace mstn
