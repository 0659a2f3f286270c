#pragma once

#include <string>

#include "mstn/config.hpp"
#include "mstn/pipeline.hpp"

namespace mstn {

/// Aligned 4-decimal table; cells above the emphasis threshold are wrapped
/// in asterisks. Pass a negative threshold to disable emphasis.
std::string render_matrix_text(const Matrix7& m, TableOrder order,
                               double emphasis_threshold);

/// Same numbers, comma separated, no emphasis markers.
std::string render_matrix_csv(const Matrix7& m, TableOrder order);

/// Matrix block honoring config.format (csv/text); used inside reports.
std::string render_matrix(const Matrix7& m, const PipelineConfig& config);

/// Full run report in the configured format (text, csv or structured JSON).
std::string render_report(const RunReport& report);

/// Frequency matrix with its emphasized-cell list, for the freq command.
std::string render_frequency(const TransitionMatrix& m,
                             const PipelineConfig& config);

/// Five trait scores with supports and strongest contributing cells.
std::string render_traits(const TransitionMatrix& m,
                          const PipelineConfig& config);

std::string render_self_play(const std::vector<TraceStep>& trace,
                             const PipelineConfig& config);

}  // namespace mstn
