#pragma once

#include <string_view>

namespace hetkg::prompts {

inline constexpr std::string_view kKeywordSystem = R"(You index scholarly search queries.
From the text you receive, list between 3 and 8 short technical phrases that a
literature search should look for. Prefer specific method, task, dataset and
domain terms over generic words. Rate each phrase with an integer from 1 (minor)
to 10 (central to the query).

Reply with JSON only, no prose and no code fences:
{"keywords": ["phrase one", "phrase two"], "scores": [9, 6]}
The two arrays must have the same length.)";

inline constexpr std::string_view kTitleSystem = R"(You find paper titles inside research text.
Collect every title of a scientific publication mentioned in the text or in the
supplied reference list, including the title of the text itself if present.
Give each a confidence between 0 and 1 that it is a real, complete paper title.

Reply with JSON only, no prose and no code fences:
{"titles": ["A Title", "Another Title"], "confidences": [0.9, 0.6]}
The two arrays must have the same length.)";

}  // namespace hetkg::prompts
