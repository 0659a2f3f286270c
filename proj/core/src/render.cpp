#include "mstn/render.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "mstn/pattern_frequency.hpp"
#include "mstn/util.hpp"

namespace mstn {

using json = nlohmann::json;

namespace {

std::array<MentalState, kStateCount> order_states(TableOrder order) {
  return order == TableOrder::Paper1 ? all_states() : scenario_order();
}

std::string_view order_label(MentalState s, TableOrder order) {
  return order == TableOrder::Paper1 ? state_name(s) : scenario_label(s);
}

std::string pad_left(std::string_view s, std::size_t width) {
  std::string out(width > s.size() ? width - s.size() : 0, ' ');
  out += s;
  return out;
}

std::string pad_right(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

// number rounded to its printed precision, so every format shows the same value
json fixed_json(double v, int decimals) {
  return json::parse(format_fixed(v, decimals));
}

json matrix_json(const Matrix7& m, TableOrder order) {
  json rows = json::object();
  for (auto from : order_states(order)) {
    json row = json::array();
    for (auto to : order_states(order))
      row.push_back(fixed_json(m[state_index(from)][state_index(to)], 4));
    rows[std::string(order_label(from, order))] = row;
  }
  json doc;
  json labels = json::array();
  for (auto s : order_states(order))
    labels.push_back(std::string(order_label(s, order)));
  doc["order"] = labels;
  doc["rows"] = rows;
  return doc;
}

std::string rule_name(const Rule& r) {
  return std::string(state_name(r.input)) + ":" +
         std::to_string(r.action.index());
}

std::string step_line(const TraceStep& step) {
  std::ostringstream out;
  out << state_name(step.from);
  if (step.group)
    out << " -[group " << step.group->index() << "]-> ";
  else
    out << " -[idle]-> ";
  out << state_name(step.to);
  return out.str();
}

json report_json(const RunReport& report) {
  json doc;
  doc["scenario"] = report.scenario_name;
  doc["seed"] = report.config.seed;
  doc["config_hash"] = report.config_hash;
  doc["mode"] = report.trained ? "train" : "simulate";

  json episodes = json::array();
  for (const auto& log : report.episodes) {
    json ep;
    json steps = json::array();
    for (const auto& step : log.steps) {
      json s;
      s["from"] = std::string(state_name(step.from));
      s["to"] = std::string(state_name(step.to));
      if (step.group)
        s["group"] = step.group->index();
      else
        s["idle"] = true;
      steps.push_back(s);
    }
    ep["steps"] = steps;
    json detours = json::array();
    for (const auto& span : log.detours)
      detours.push_back({{"first", span.first}, {"last", span.last}});
    ep["detours"] = detours;
    json cleaned = json::array();
    for (const auto& r : log.cleaned.rules) cleaned.push_back(rule_name(r));
    ep["survivors"] = cleaned;
    ep["reward"] = log.reward;
    episodes.push_back(ep);
  }
  doc["episodes"] = episodes;
  doc["empirical"] = matrix_json(report.empirical.rows(), report.config.table_order);

  if (report.trained) {
    json ps = json::object();
    for (int i = 0; i < kRuleCount; ++i) {
      const Rule r = Rule::from_index(i);
      if (report.ps_weights.at(r) != 0.0)
        ps[rule_name(r)] = report.ps_weights.at(r);
    }
    doc["ps_weights"] = ps;
    doc["loss_curve"] = report.loss_curve;
    doc["frequency_before"] =
        matrix_json(report.freq_before->rows(), report.config.table_order);
    doc["frequency_after"] =
        matrix_json(report.freq_after->rows(), report.config.table_order);
    json emphasized = json::array();
    for (const auto& cell : emphasized_cells(report.freq_after->rows(),
                                             report.config.emphasis_threshold))
      emphasized.push_back({{"from", std::string(state_name(cell.from))},
                            {"to", std::string(state_name(cell.to))},
                            {"value", fixed_json(cell.delta, 4)}});
    doc["emphasized"] = emphasized;
    json traits = json::object();
    for (int t = 0; t < kTraitCount; ++t) {
      const Trait trait = static_cast<Trait>(t);
      traits[std::string(trait_name(trait))] = {
          {"score", fixed_json(report.traits->of(trait), 4)},
          {"support", report.traits->support_of(trait)}};
    }
    doc["traits"] = traits;
  }
  return doc;
}

}  // namespace

std::string render_matrix_text(const Matrix7& m, TableOrder order,
                               double emphasis_threshold) {
  constexpr std::size_t kCell = 10;
  std::ostringstream out;
  out << pad_right("current", kCell);
  for (auto to : order_states(order))
    out << pad_left(order_label(to, order), kCell);
  out << "\n";
  for (auto from : order_states(order)) {
    out << pad_right(order_label(from, order), kCell);
    for (auto to : order_states(order)) {
      const double v = m[state_index(from)][state_index(to)];
      std::string cell = format_fixed(v, 4);
      if (emphasis_threshold >= 0.0 && v > emphasis_threshold)
        cell = "*" + cell + "*";
      out << pad_left(cell, kCell);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_matrix_csv(const Matrix7& m, TableOrder order) {
  std::ostringstream out;
  out << "current";
  for (auto to : order_states(order)) out << ',' << order_label(to, order);
  out << "\n";
  for (auto from : order_states(order)) {
    out << order_label(from, order);
    for (auto to : order_states(order))
      out << ',' << format_fixed(m[state_index(from)][state_index(to)], 4);
    out << "\n";
  }
  return out.str();
}

std::string render_matrix(const Matrix7& m, const PipelineConfig& config) {
  if (config.format == OutputFormat::Csv)
    return render_matrix_csv(m, config.table_order);
  return render_matrix_text(m, config.table_order, -1.0);
}

std::string render_report(const RunReport& report) {
  const auto& config = report.config;
  if (config.format == OutputFormat::Structured)
    return report_json(report).dump(2) + "\n";

  std::ostringstream out;
  out << "run report\n";
  out << "scenario: " << report.scenario_name << "\n";
  out << "mode: " << (report.trained ? "train" : "simulate") << "\n";
  out << "seed: " << config.seed << "\n";
  out << "config: " << report.config_hash << "\n\n";

  int ei = 0;
  for (const auto& log : report.episodes) {
    ++ei;
    out << "episode " << ei << ": " << log.steps.size() << " events, "
        << log.raw.length() << " rules, " << log.detours.size()
        << " detour span" << (log.detours.size() == 1 ? "" : "s") << ", "
        << log.cleaned.length() << " survive, reward "
        << format_fixed(log.reward, 3) << "\n";
    int si = 0;
    for (const auto& step : log.steps)
      out << "  step " << ++si << ": " << step_line(step) << "\n";
    if (!log.detours.empty()) {
      out << "  detours:";
      for (const auto& span : log.detours)
        out << " [" << span.first + 1 << ".." << span.last + 1 << "]";
      out << "\n";
    }
    if (!log.cleaned.rules.empty()) {
      out << "  survivors:";
      for (const auto& r : log.cleaned.rules) out << ' ' << rule_name(r);
      out << "\n";
    }
  }

  out << "\nobserved transition probabilities:\n"
      << render_matrix(report.empirical.rows(), config);

  if (!report.trained) return out.str();

  out << "\nrule weights (nonzero):\n";
  bool any = false;
  for (int i = 0; i < kRuleCount; ++i) {
    const Rule r = Rule::from_index(i);
    if (report.ps_weights.at(r) == 0.0) continue;
    any = true;
    out << "  " << pad_right(rule_name(r), 11) << " = "
        << format_fixed(report.ps_weights.at(r), 6) << "\n";
  }
  if (!any) out << "  (none)\n";

  if (!report.loss_curve.empty())
    out << "\nnetwork: " << report.loss_curve.size() << " epochs, loss "
        << format_fixed(report.loss_curve.front(), 6) << " -> "
        << format_fixed(report.loss_curve.back(), 6) << "\n";

  out << "\nfrequency before training:\n"
      << render_matrix(report.freq_before->rows(), config);
  out << "\nfrequency after training:\n"
      << render_matrix(report.freq_after->rows(), config);

  const auto emphasized = emphasized_cells(report.freq_after->rows(),
                                           config.emphasis_threshold);
  out << "\nemphasized cells (threshold "
      << format_fixed(config.emphasis_threshold, 2) << "):\n";
  if (emphasized.empty()) out << "  (none)\n";
  for (const auto& cell : emphasized)
    out << "  " << state_name(cell.from) << " -> " << state_name(cell.to)
        << ": " << format_fixed(cell.delta, 4) << "\n";

  out << "\ntraits:\n";
  for (int t = 0; t < kTraitCount; ++t) {
    const Trait trait = static_cast<Trait>(t);
    out << "  " << pad_right(trait_name(trait), 18) << " = "
        << pad_left(format_fixed(report.traits->of(trait), 4), 8)
        << " (support " << report.traits->support_of(trait) << ")\n";
  }
  return out.str();
}

std::string render_frequency(const TransitionMatrix& m,
                             const PipelineConfig& config) {
  const auto emphasized =
      emphasized_cells(m.rows(), config.emphasis_threshold);
  if (config.format == OutputFormat::Structured) {
    json doc = matrix_json(m.rows(), config.table_order);
    json cells = json::array();
    for (const auto& cell : emphasized)
      cells.push_back({{"from", std::string(state_name(cell.from))},
                       {"to", std::string(state_name(cell.to))},
                       {"value", fixed_json(cell.delta, 4)}});
    doc["emphasized"] = cells;
    return doc.dump(2) + "\n";
  }
  if (config.format == OutputFormat::Csv)
    return render_matrix_csv(m.rows(), config.table_order);
  std::ostringstream out;
  out << render_matrix_text(m.rows(), config.table_order,
                            config.emphasis_threshold);
  out << "\nemphasized cells (threshold "
      << format_fixed(config.emphasis_threshold, 2) << "):\n";
  if (emphasized.empty()) out << "  (none)\n";
  for (const auto& cell : emphasized)
    out << "  " << state_name(cell.from) << " -> " << state_name(cell.to)
        << ": " << format_fixed(cell.delta, 4) << "\n";
  return out.str();
}

std::string render_traits(const TransitionMatrix& m,
                          const PipelineConfig& config) {
  const auto& mapping = builtin_trait_mapping();
  const TraitScores scores = trait_scores(m, mapping);
  if (config.format == OutputFormat::Structured) {
    json doc = json::object();
    for (int t = 0; t < kTraitCount; ++t) {
      const Trait trait = static_cast<Trait>(t);
      json contributions = json::array();
      for (const auto& c : top_contributors(m, mapping, trait, 3))
        contributions.push_back({{"from", std::string(state_name(c.current))},
                                 {"to", std::string(state_name(c.next))},
                                 {"sign", c.sign},
                                 {"weighted", fixed_json(c.weighted, 4)}});
      doc[std::string(trait_name(trait))] = {
          {"score", fixed_json(scores.of(trait), 4)},
          {"support", scores.support_of(trait)},
          {"top", contributions}};
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  if (config.format == OutputFormat::Csv) {
    out << "trait,score,support\n";
    for (int t = 0; t < kTraitCount; ++t) {
      const Trait trait = static_cast<Trait>(t);
      out << trait_name(trait) << ',' << format_fixed(scores.of(trait), 4)
          << ',' << scores.support_of(trait) << "\n";
    }
    return out.str();
  }
  for (int t = 0; t < kTraitCount; ++t) {
    const Trait trait = static_cast<Trait>(t);
    out << pad_right(trait_name(trait), 18) << " = "
        << pad_left(format_fixed(scores.of(trait), 4), 8) << " (support "
        << scores.support_of(trait) << ")\n";
    for (const auto& c : top_contributors(m, mapping, trait, 3))
      out << "    " << state_name(c.current) << " -> " << state_name(c.next)
          << "  " << (c.sign > 0 ? "+" : "-") << "  "
          << format_fixed(c.weighted, 4) << "\n";
  }
  return out.str();
}

std::string render_self_play(const std::vector<TraceStep>& trace,
                             const PipelineConfig& config) {
  if (config.format == OutputFormat::Structured) {
    json steps = json::array();
    for (const auto& step : trace) {
      json s;
      s["from"] = std::string(state_name(step.from));
      s["group"] = step.group ? json(step.group->index()) : json();
      s["to"] = std::string(state_name(step.to));
      steps.push_back(s);
    }
    return json{{"self_play", steps}}.dump(2) + "\n";
  }
  std::ostringstream out;
  int i = 0;
  for (const auto& step : trace)
    out << "step " << ++i << ": " << step_line(step) << "\n";
  return out.str();
}

}  // namespace mstn
