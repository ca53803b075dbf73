#pragma once

#include "hetkg/config.hpp"
#include "hetkg/corpus.hpp"
#include "hetkg/edge_weight.hpp"
#include "hetkg/embedding.hpp"
#include "hetkg/graph_store.hpp"
#include "hetkg/http_providers.hpp"
#include "hetkg/output.hpp"
#include "hetkg/pipeline.hpp"
#include "hetkg/propagation.hpp"
#include "hetkg/query_analysis.hpp"
#include "hetkg/ranking.hpp"
#include "hetkg/seed_matching.hpp"
#include "hetkg/synth.hpp"
#include "hetkg/text.hpp"
#include "hetkg/types.hpp"
