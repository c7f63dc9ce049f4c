#pragma once

#include <string_view>

namespace rewardroute::templates {

// Judge rubric. Placeholders: {input}, {output}, {label}.
std::string_view judge_prompt_v1();

// Five-flag question filter. Placeholder: {question}.
std::string_view filter_prompt_v1();

}  // namespace rewardroute::templates
