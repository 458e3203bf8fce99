#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vbench2/dimensions.hpp"
#include "vbench2/errors.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// ScoreRecord
// ---------------------------------------------------------------------------

/// A per-video score in [0,1], or a typed non-score outcome. Discarded marks
/// videos the metric deliberately rejects (e.g. near-static multi-view
/// candidates); unscorable marks videos the pipeline could not evaluate.
struct ScoreOutcome {
    enum class Kind { scored, discarded, unscorable };
    Kind kind = Kind::scored;
    double score = 0.0;
    std::string reason;

    static ScoreOutcome scored(double s) { return {Kind::scored, s, {}}; }
    static ScoreOutcome discarded(std::string why) {
        return {Kind::discarded, 0.0, std::move(why)};
    }
    static ScoreOutcome unscorable(std::string why) {
        return {Kind::unscorable, 0.0, std::move(why)};
    }

    bool operator==(const ScoreOutcome&) const = default;
};

struct ScoreRecord {
    std::string prompt_id;
    DimensionId dimension = DimensionId::anatomy;
    std::string model;
    int sample = 0;
    ScoreOutcome outcome;
    nlohmann::json evidence = nlohmann::json::object();
};

inline nlohmann::json to_json(const ScoreRecord& r) {
    nlohmann::json j{{"prompt_id", r.prompt_id},
                     {"dimension", std::string(to_string(r.dimension))},
                     {"model", r.model},
                     {"sample", r.sample},
                     {"evidence", r.evidence}};
    switch (r.outcome.kind) {
        case ScoreOutcome::Kind::scored:
            j["score"] = r.outcome.score;
            break;
        case ScoreOutcome::Kind::discarded:
            j["outcome"] = "discarded";
            if (!r.outcome.reason.empty()) j["reason"] = r.outcome.reason;
            break;
        case ScoreOutcome::Kind::unscorable:
            j["outcome"] = "unscorable";
            j["reason"] = r.outcome.reason;
            break;
    }
    return j;
}

inline ScoreRecord score_record_from_json(const nlohmann::json& j) {
    ScoreRecord r;
    try {
        r.prompt_id = j.at("prompt_id").get<std::string>();
        r.dimension = dimension_from_string(j.at("dimension").get<std::string>());
        r.model = j.at("model").get<std::string>();
        r.sample = j.at("sample").get<int>();
        r.evidence = j.value("evidence", nlohmann::json::object());
        if (j.contains("score")) {
            r.outcome = ScoreOutcome::scored(j.at("score").get<double>());
            if (r.outcome.score < 0.0 || r.outcome.score > 1.0)
                throw SchemaError("score outside [0,1]");
        } else {
            const std::string kind = j.at("outcome").get<std::string>();
            if (kind == "discarded")
                r.outcome = ScoreOutcome::discarded(j.value("reason", std::string{}));
            else if (kind == "unscorable")
                r.outcome = ScoreOutcome::unscorable(j.value("reason", std::string{}));
            else
                throw SchemaError("unknown outcome kind: " + kind);
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad score record: ") + e.what());
    }
    return r;
}

/// Results files hold one record per line.
inline std::vector<ScoreRecord> read_results_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open results file: " + path);
    std::vector<ScoreRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        records.push_back(score_record_from_json(j));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Dimension score
// ---------------------------------------------------------------------------

struct DimensionScore {
    bool defined = false; // false when no scorable record exists
    double score = 0.0;   // mean of numeric scores
    int scorable = 0;
    int discarded = 0;
    int unscorable = 0;
};

/// Mean of the numeric scores of one (model, dimension) record group;
/// discarded/unscorable records leave the denominator but are counted.
inline DimensionScore dimension_score(const std::vector<ScoreRecord>& records, DimensionId dim) {
    DimensionScore out;
    std::optional<std::string> model;
    double sum = 0.0;
    for (const auto& r : records) {
        if (r.dimension != dim)
            throw PreconditionError("dimension_score records must all belong to the dimension");
        if (model && *model != r.model)
            throw PreconditionError("dimension_score records must all belong to one model");
        model = r.model;
        switch (r.outcome.kind) {
            case ScoreOutcome::Kind::scored:
                sum += r.outcome.score;
                ++out.scorable;
                break;
            case ScoreOutcome::Kind::discarded:
                ++out.discarded;
                break;
            case ScoreOutcome::Kind::unscorable:
                ++out.unscorable;
                break;
        }
    }
    if (out.scorable > 0) {
        out.defined = true;
        out.score = sum / out.scorable;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Win ratios
// ---------------------------------------------------------------------------

struct PairJudgment {
    enum class Outcome { a_wins, b_wins, tie };
    std::string model_a;
    std::string model_b;
    Outcome outcome = Outcome::tie;
};

/// Pairwise-preference table: win scores 1, loss 0, tie 0.5 for each side;
/// a model's ratio is its points over its comparison count.
struct WinRatioTable {
    struct PairCell {
        int a_wins = 0;
        int b_wins = 0;
        int ties = 0;
        int total() const { return a_wins + b_wins + ties; }
    };

    std::map<std::string, double> points;
    std::map<std::string, int> comparisons;
    std::map<std::pair<std::string, std::string>, PairCell> pairs; // key: (min, max)

    double ratio(const std::string& model) const {
        auto it = comparisons.find(model);
        if (it == comparisons.end() || it->second == 0)
            throw PreconditionError("no comparisons for model '" + model + "'");
        return points.at(model) / it->second;
    }

    std::vector<std::string> models() const {
        std::vector<std::string> out;
        for (const auto& [m, _] : comparisons) out.push_back(m);
        return out; // map order = sorted
    }

    double total_points() const {
        double s = 0.0;
        for (const auto& [_, p] : points) s += p;
        return s;
    }
    int total_judgments() const {
        int s = 0;
        for (const auto& [_, cell] : pairs) s += cell.total();
        return s;
    }
};

inline WinRatioTable win_ratio(const std::vector<PairJudgment>& judgments) {
    WinRatioTable t;
    for (const auto& j : judgments) {
        if (j.model_a == j.model_b)
            throw ContractViolation("pairwise judgment with identical models: " + j.model_a);
        double pa = 0.5, pb = 0.5;
        if (j.outcome == PairJudgment::Outcome::a_wins) pa = 1.0, pb = 0.0;
        if (j.outcome == PairJudgment::Outcome::b_wins) pa = 0.0, pb = 1.0;
        t.points[j.model_a] += pa;
        t.points[j.model_b] += pb;
        t.comparisons[j.model_a] += 1;
        t.comparisons[j.model_b] += 1;

        const bool ordered = j.model_a < j.model_b;
        auto key = ordered ? std::make_pair(j.model_a, j.model_b)
                           : std::make_pair(j.model_b, j.model_a);
        auto& cell = t.pairs[key];
        if (j.outcome == PairJudgment::Outcome::tie)
            ++cell.ties;
        else if ((j.outcome == PairJudgment::Outcome::a_wins) == ordered)
            ++cell.a_wins;
        else
            ++cell.b_wins;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Correlation
// ---------------------------------------------------------------------------

/// Ranks with ties averaged (1-based).
inline std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && v[idx[j]] == v[idx[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
        for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = rank;
        i = j;
    }
    return ranks;
}

/// Pearson correlation; nullopt when either vector is constant.
inline std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw PreconditionError("pearson needs two equal-length vectors of size >= 2");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

/// Spearman rank correlation with average ranks for ties; nullopt (an
/// explicitly reported undefined, never a NaN) when either vector is
/// constant.
inline std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw PreconditionError("spearman needs two equal-length vectors of size >= 2");
    return pearson(average_ranks(x), average_ranks(y));
}

// ---------------------------------------------------------------------------
// Radar normalization
// ---------------------------------------------------------------------------

using ScoreTable = std::map<std::string, std::map<DimensionId, double>>;

struct RadarTable {
    ScoreTable values;
    std::vector<std::string> notes;
};

/// Min-max rescaling per dimension across models. An all-equal column maps
/// every model to 1; a single-model column passes through with a note.
inline RadarTable normalize_for_radar(const ScoreTable& table) {
    RadarTable out;
    std::map<DimensionId, std::vector<std::pair<std::string, double>>> columns;
    for (const auto& [model, dims] : table)
        for (const auto& [dim, score] : dims) columns[dim].push_back({model, score});

    for (const auto& [dim, cells] : columns) {
        if (cells.size() < 2) {
            for (const auto& [model, score] : cells) out.values[model][dim] = score;
            out.notes.push_back(std::string(to_string(dim)) +
                                ": single model, passthrough without normalization");
            continue;
        }
        double lo = cells.front().second, hi = cells.front().second;
        for (const auto& [_, s] : cells) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        for (const auto& [model, s] : cells)
            out.values[model][dim] = (hi == lo) ? 1.0 : (s - lo) / (hi - lo);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Human annotations
// ---------------------------------------------------------------------------

/// One human pairwise preference.
struct AnnotationRecord {
    DimensionId dimension = DimensionId::anatomy;
    std::string prompt_id;
    int group = 0;
    std::string model_a;
    std::string model_b;
    enum class Choice { a, b, tie } choice = Choice::tie;
};

inline constexpr const char* kAnnotationsCsvHeader =
    "dimension,prompt_id,group,model_a,model_b,choice";

namespace detail {
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}
} // namespace detail

inline std::vector<AnnotationRecord> load_annotations_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open annotations file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty annotations file: " + path);
    if (line != kAnnotationsCsvHeader)
        throw ParseError("annotations header must be '" + std::string(kAnnotationsCsvHeader) +
                         "', got '" + line + "'");
    std::vector<AnnotationRecord> records;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 6)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 6 fields");
        AnnotationRecord r;
        r.dimension = dimension_from_string(fields[0]);
        r.prompt_id = fields[1];
        r.group = std::stoi(fields[2]);
        r.model_a = fields[3];
        r.model_b = fields[4];
        if (r.model_a == r.model_b)
            throw SchemaError(path + ":" + std::to_string(lineno) + ": identical models in a pair");
        if (fields[5] == "a") r.choice = AnnotationRecord::Choice::a;
        else if (fields[5] == "b") r.choice = AnnotationRecord::Choice::b;
        else if (fields[5] == "tie") r.choice = AnnotationRecord::Choice::tie;
        else
            throw SchemaError(path + ":" + std::to_string(lineno) + ": choice must be a|b|tie");
        records.push_back(std::move(r));
    }
    return records;
}

inline void write_annotations_csv(const std::string& path,
                                  const std::vector<AnnotationRecord>& records) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write annotations file: " + path);
    out << kAnnotationsCsvHeader << "\n";
    for (const auto& r : records) {
        const char* choice = r.choice == AnnotationRecord::Choice::a   ? "a"
                             : r.choice == AnnotationRecord::Choice::b ? "b"
                                                                       : "tie";
        out << to_string(r.dimension) << "," << r.prompt_id << "," << r.group << "," << r.model_a
            << "," << r.model_b << "," << choice << "\n";
    }
}

inline std::vector<PairJudgment> annotations_to_judgments(
    const std::vector<AnnotationRecord>& records) {
    std::vector<PairJudgment> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        PairJudgment j;
        j.model_a = r.model_a;
        j.model_b = r.model_b;
        j.outcome = r.choice == AnnotationRecord::Choice::a   ? PairJudgment::Outcome::a_wins
                    : r.choice == AnnotationRecord::Choice::b ? PairJudgment::Outcome::b_wins
                                                              : PairJudgment::Outcome::tie;
        out.push_back(std::move(j));
    }
    return out;
}

} // namespace vbench2
