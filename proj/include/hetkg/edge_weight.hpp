#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hetkg/config.hpp"
#include "hetkg/types.hpp"

namespace hetkg {

/// Frequency smoothing: min(c_max, log(1 + n)), natural log by default.
inline double frequency_smoothing(double n, const EdgeWeightConfig& w) {
  double ln = std::log1p(n);
  double value = w.log_base == std::numbers::e ? ln : ln / std::log(w.log_base);
  return std::min(w.c_max, value);
}

/// Unnormalized walk weight of one edge. `keyword_kappa` is the prior of the
/// keyword endpoint of a HAS_KEYWORD edge (its seed weight, or epsilon_kw
/// when it is not a seed); it is ignored for every other kind.
/// Returns 0 for edges excluded from the walk.
inline double edge_weight(const Edge& edge, double keyword_kappa, const EdgeWeightConfig& w) {
  switch (edge.kind) {
    case EdgeKind::HAS_KEYWORD:
      return w.beta_has_keyword * keyword_kappa * edge.relevance_score.value_or(0.0);
    case EdgeKind::CITES: return w.beta_cites;
    case EdgeKind::RELATED_TO: return w.beta_related;
    case EdgeKind::AUTHORED: return w.beta_authored;
    case EdgeKind::COAUTHOR:
      return w.beta_coauthor *
             std::max(1.0, frequency_smoothing(static_cast<double>(edge.count.value_or(0)), w));
    case EdgeKind::COOCCUR:
      return w.beta_cooccur *
             std::max(1.0, frequency_smoothing(static_cast<double>(edge.count.value_or(0)), w));
    case EdgeKind::HAS_TOPIC: return w.has_topic;
    case EdgeKind::AFFILIATED_WITH: return w.affiliated_with;
    case EdgeKind::PUBLISH_IN: return w.publish_in;
    case EdgeKind::DOMAIN_OF: return w.domain_of;
    case EdgeKind::FIELD_OF: return w.field_of;
    case EdgeKind::SUBFIELD_OF: return w.subfield_of;
  }
  return 0.0;
}

/// Seed-independent weight with default parameters and kappa = epsilon_kw.
/// Orders neighbors when a per-kind cap truncates them.
inline double default_edge_weight(const Edge& edge) {
  static const EdgeWeightConfig defaults{};
  return edge_weight(edge, defaults.epsilon_kw, defaults);
}

}  // namespace hetkg
