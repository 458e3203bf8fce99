#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "vbench2/backend.hpp"
#include "vbench2/errors.hpp"
#include "vbench2/prompts.hpp"
#include "vbench2/suite.hpp"
#include "vbench2/video.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// Outcomes
// ---------------------------------------------------------------------------

/// Result of the multi-question answering scheme. With a failed prefilter
/// the score is 0 and no main question is asked.
struct QaOutcome {
    std::vector<Verdict> answers;
    std::optional<Verdict> prefilter;
    QaMode mode = QaMode::all;
    double score = 0.0;

    bool prefilter_failed() const { return prefilter && !prefilter->value; }
};

/// Result of the caption-then-judge scheme.
struct AlignmentOutcome {
    std::string vlm_caption;
    Verdict llm_verdict;
    double score = 0.0; // 1 iff llm_verdict is yes
};

/// Result of segment-by-segment matching. Matching stops at the first failed
/// segment; score = matched prefix / segment count.
struct SequentialOutcome {
    std::vector<std::string> segments;
    std::vector<std::string> caption_items;
    std::vector<Verdict> verdicts;
    int matched_prefix_len = 0;
    double score = 0.0;
    bool protocol_failure = false; // caption had no numbered items
};

struct OrderedActionOutcome {
    std::string caption;
    std::vector<std::string> caption_items;
    std::vector<Verdict> verdicts;
    double score = 0.0;
    bool protocol_failure = false; // caption lacked two items
};

struct InteractionOutcome {
    std::string dense_caption;
    std::string action_caption;
    Verdict person_count_verdict;
    std::optional<Verdict> alignment_verdict; // skipped when the count check fails
    double score = 0.0;
};

// ---------------------------------------------------------------------------
// Numbered-caption parsing
// ---------------------------------------------------------------------------

namespace detail {

inline bool marker_boundary_before(const std::string& s, std::size_t pos) {
    if (pos == 0) return true;
    const char c = s[pos - 1];
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ';' || c == '[' || c == '(';
}

/// Position just after the marker "<k>." or npos. Rejects decimals such as
/// "3.5" by requiring a non-digit after the dot.
inline std::size_t find_marker(const std::string& s, int k, std::size_t from) {
    const std::string needle = std::to_string(k) + ".";
    std::size_t pos = from;
    while ((pos = s.find(needle, pos)) != std::string::npos) {
        const std::size_t after = pos + needle.size();
        const bool decimal = after < s.size() && std::isdigit(static_cast<unsigned char>(s[after]));
        if (marker_boundary_before(s, pos) && !decimal) return after;
        pos += 1;
    }
    return std::string::npos;
}

inline std::string trim_item(std::string s) {
    auto junk = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ';' || c == '[' ||
               c == ']';
    };
    std::size_t b = 0, e = s.size();
    while (b < e && junk(s[b])) ++b;
    while (e > b && junk(s[e - 1])) --e;
    return s.substr(b, e - b);
}

} // namespace detail

/// Splits a templated caption into its numbered items, tolerant of ";" vs
/// newline separators and bracketed templates. Returns an empty list when no
/// leading "1." item exists.
inline std::vector<std::string> split_numbered_items(const std::string& caption) {
    std::vector<std::string> items;
    std::size_t content = detail::find_marker(caption, 1, 0);
    if (content == std::string::npos) return items;
    int k = 2;
    while (true) {
        const std::size_t next = detail::find_marker(caption, k, content);
        if (next == std::string::npos) {
            items.push_back(detail::trim_item(caption.substr(content)));
            break;
        }
        const std::size_t marker_start = next - (std::to_string(k).size() + 1);
        items.push_back(detail::trim_item(caption.substr(content, marker_start - content)));
        content = next;
        ++k;
    }
    while (!items.empty() && items.back().empty()) items.pop_back();
    return items;
}

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

/// Video-based multi-question answering. Questions are asked in order; with
/// mode=all the scan stops at the first no, with mode=mean every question is
/// asked and the yes-fraction is the score. A present prefilter gates the
/// main questions entirely.
inline QaOutcome run_multi_qa(const VideoHandle& video,
                              const std::vector<std::string>& questions, QaMode mode,
                              const std::optional<std::string>& prefilter,
                              BackendSuite& backend) {
    if (questions.empty()) throw PreconditionError("run_multi_qa needs at least one question");

    QaOutcome out;
    out.mode = mode;

    auto ask = [&](const std::string& q, std::size_t index) {
        try {
            return verdict_with_retry([&] { return backend.answer_binary(video, q); });
        } catch (const BackendError& e) {
            throw BackendError("question #" + std::to_string(index) + " ('" + q +
                               "'): " + e.what());
        }
    };

    if (prefilter) {
        out.prefilter = ask(*prefilter, 0);
        if (!out.prefilter->value) {
            out.score = 0.0;
            return out;
        }
    }

    int yes = 0;
    for (std::size_t i = 0; i < questions.size(); ++i) {
        Verdict v = ask(questions[i], i + 1);
        out.answers.push_back(v);
        if (v.value) ++yes;
        if (mode == QaMode::all && !v.value) {
            out.score = 0.0;
            return out;
        }
    }
    out.score = mode == QaMode::all
                    ? 1.0
                    : static_cast<double>(yes) / static_cast<double>(questions.size());
    return out;
}

/// Caption the video, then have the judge compare the caption with the
/// reference; yes discretizes to 1, no to 0.
inline AlignmentOutcome run_text_alignment(const VideoHandle& video, const std::string& reference,
                                           const std::string& vlm_prompt,
                                           const std::string& llm_prompt,
                                           BackendSuite& backend) {
    if (reference.empty()) throw PreconditionError("run_text_alignment needs a nonempty reference");

    AlignmentOutcome out;
    out.vlm_caption = backend.caption_video(video, vlm_prompt);
    out.llm_verdict = verdict_with_retry(
        [&] { return backend.judge_alignment(out.vlm_caption, reference, llm_prompt); });
    out.score = out.llm_verdict.value ? 1.0 : 0.0;
    return out;
}

/// One templated caption call, then reference segment k judged against
/// caption item k until a segment fails. Extra caption items beyond the
/// references are ignored.
inline SequentialOutcome run_sequential_alignment(
    const VideoHandle& video, const std::vector<std::string>& segments,
    const std::string& template_prompt, BackendSuite& backend,
    const std::string& judge_prompt = prompt_asset("alignment_judge")) {
    if (segments.size() < 4 || segments.size() > 5)
        throw PreconditionError("run_sequential_alignment needs 4-5 reference segments");

    SequentialOutcome out;
    out.segments = segments;

    const std::string caption = backend.caption_video(video, template_prompt);
    out.caption_items = split_numbered_items(caption);
    if (out.caption_items.empty()) {
        out.protocol_failure = true;
        out.score = 0.0;
        return out;
    }

    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (k >= out.caption_items.size()) break;
        Verdict v = verdict_with_retry([&] {
            return backend.judge_alignment(out.caption_items[k], segments[k], judge_prompt);
        });
        out.verdicts.push_back(v);
        if (!v.value) break;
        ++out.matched_prefix_len;
    }
    out.score = static_cast<double>(out.matched_prefix_len) /
                static_cast<double>(segments.size());
    return out;
}

/// Two-slot caption; item 1 must match action_a and item 2 action_b.
inline OrderedActionOutcome run_ordered_action_match(
    const VideoHandle& video, const std::string& action_a, const std::string& action_b,
    BackendSuite& backend,
    const std::string& caption_prompt = prompt_asset("action_order_caption"),
    const std::string& judge_prompt = prompt_asset("alignment_judge")) {
    if (action_a.empty() || action_b.empty())
        throw PreconditionError("run_ordered_action_match needs two nonempty actions");

    OrderedActionOutcome out;
    out.caption = backend.caption_video(video, caption_prompt);
    out.caption_items = split_numbered_items(out.caption);
    if (out.caption_items.size() < 2) {
        out.protocol_failure = true;
        out.score = 0.0;
        return out;
    }

    const std::string refs[2] = {action_a, action_b};
    bool all = true;
    for (int i = 0; i < 2; ++i) {
        Verdict v = verdict_with_retry(
            [&] { return backend.judge_alignment(out.caption_items[i], refs[i], judge_prompt); });
        out.verdicts.push_back(v);
        all = all && v.value;
    }
    out.score = all ? 1.0 : 0.0;
    return out;
}

/// Two-stage check: a dense caption must be judged to contain at least two
/// people, and the templated interaction caption must align with the prompt.
/// The person-count judge receives only the dense caption.
inline InteractionOutcome run_interaction_check(const VideoHandle& video,
                                                const std::string& prompt_text,
                                                BackendSuite& backend) {
    if (prompt_text.empty())
        throw PreconditionError("run_interaction_check needs the interaction prompt text");

    InteractionOutcome out;
    out.dense_caption = backend.caption_video(video, prompt_asset("dense_caption"));
    out.action_caption = backend.caption_video(video, prompt_asset("interaction_caption"));

    out.person_count_verdict = verdict_with_retry([&] {
        return backend.judge_alignment(out.dense_caption, "", prompt_asset("person_count_judge"));
    });
    if (!out.person_count_verdict.value) {
        out.score = 0.0;
        return out;
    }

    out.alignment_verdict = verdict_with_retry([&] {
        return backend.judge_alignment(out.action_caption, prompt_text,
                                       prompt_asset("alignment_judge"));
    });
    out.score = out.alignment_verdict->value ? 1.0 : 0.0;
    return out;
}

} // namespace vbench2
