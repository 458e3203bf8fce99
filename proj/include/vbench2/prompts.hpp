#pragma once

#include <array>
#include <map>
#include <string>

#include "vbench2/errors.hpp"

namespace vbench2 {

/// Named system-prompt assets. Payloads reference these by id so the exact
/// judge wording is pinned per run rather than scattered through manifests.
inline const std::map<std::string, std::string>& prompt_assets() {
    static const std::map<std::string, std::string> assets = {
        {"dense_caption", "Describe the video in detail."},
        {"interaction_caption",
         "Describe the human interaction in the video, following the template as "
         "[a person xx to another person.]"},
        {"action_order_caption",
         "Return the action order in video. Here is the template: '1. ; 2. .'"},
        {"plot_caption",
         "Return the plot in video. Here is the template: [1. ; 2. ; 3. ; 4. .]"},
        {"landscape_caption",
         "Return the landscape in video. Here is the template: [1. ; 2. ; 3. ; 4. ; 5. .]"},
        {"alignment_judge",
         "You are a helpful assistant and a brilliant text alignment judger. "
         "You need to judge whether the description matches the reference. "
         "Return yes or no only."},
        {"person_count_judge",
         "You are Qwen, created by Alibaba Cloud. You are a helpful assistant and a "
         "brilliant person number judger.\n"
         "You need to judge whether the description contains more than one person. "
         "Return yes or no only."},
    };
    return assets;
}

inline const std::string& prompt_asset(const std::string& id) {
    const auto& assets = prompt_assets();
    auto it = assets.find(id);
    if (it == assets.end()) throw SchemaError("unknown prompt asset id: '" + id + "'");
    return it->second;
}

inline bool is_prompt_asset(const std::string& id) {
    return prompt_assets().count(id) > 0;
}

/// The three fixed clothes-consistency questions, asked in all-of mode.
inline const std::array<std::string, 3>& clothes_questions() {
    static const std::array<std::string, 3> qs = {
        "Is there only one person in the video throughout?",
        "Is the person in the video the same throughout?",
        "Does the clothes of the person in the video (color, texture) remain consistent "
        "throughout?",
    };
    return qs;
}

} // namespace vbench2
