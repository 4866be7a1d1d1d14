#include "edisim/search.hpp"

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "edisim/errors.hpp"
#include "edisim/ingest.hpp"

namespace edisim {

using nlohmann::json;

double OpThresholds::get(EditKind kind) const {
    switch (kind) {
        case EditKind::removal: return removal;
        case EditKind::extraction: return extraction;
        case EditKind::reordering: return reordering;
        case EditKind::substitution: return substitution;
    }
    return removal;
}

double& OpThresholds::ref(EditKind kind) {
    switch (kind) {
        case EditKind::removal: return removal;
        case EditKind::extraction: return extraction;
        case EditKind::reordering: return reordering;
        case EditKind::substitution: return substitution;
    }
    return removal;
}

const std::set<std::string>& EditConfig::tags() const {
    return phrase_tags.empty() ? default_phrase_tags() : phrase_tags;
}

std::optional<ScoredCandidate> select_candidate(const std::vector<ScoredCandidate>& scored) {
    const ScoredCandidate* best = nullptr;
    for (const ScoredCandidate& sc : scored) {
        if (!best || sc.breakdown.total > best->breakdown.total) best = &sc;
    }
    return best ? std::optional<ScoredCandidate>(*best) : std::nullopt;
}

namespace {

std::string sequence_key(const AnnotatedSentence& s) {
    std::string key;
    for (const AnnotatedToken& t : s.tokens) {
        key += t.text;
        key += '\x1f';
    }
    return key;
}

std::vector<Candidate> generate_candidates(const AnnotatedSentence& current,
                                           const ResourceBundle& resources,
                                           const PipelineConfig& config) {
    std::vector<Phrase> phrases = detect_phrases(current.tree, config.edits.tags());
    std::vector<Candidate> all;
    const auto& enabled = config.search.enabled_ops;
    if (enabled.count(EditKind::removal))
        for (Candidate& c : gen_removal(current, phrases)) all.push_back(std::move(c));
    if (enabled.count(EditKind::extraction))
        for (Candidate& c : gen_extraction(current, phrases)) all.push_back(std::move(c));
    if (enabled.count(EditKind::reordering))
        for (Candidate& c : gen_reordering(current, phrases, config.edits.reorder_scope))
            all.push_back(std::move(c));
    if (enabled.count(EditKind::substitution))
        for (Candidate& c : gen_substitution(current, phrases, resources, config.edits.substitution))
            all.push_back(std::move(c));

    // identical token sequences collapse onto the first generated
    std::vector<Candidate> unique;
    std::unordered_set<std::string> seen;
    for (Candidate& c : all) {
        if (seen.insert(sequence_key(c.sentence)).second) unique.push_back(std::move(c));
    }
    return unique;
}

} // namespace

std::optional<ScoredCandidate> iterate_once(const AnnotatedSentence& current,
                                            const AnnotatedSentence& original,
                                            const ResourceBundle& resources,
                                            const PipelineConfig& config) {
    ScoreBreakdown current_score = score_sentence(current, original, resources, config.scoring);
    if (current_score.total == 0.0 && current_score.f_cos == 0)
        throw DegenerateStateError("current sentence fails its own cosine filter: '" +
                                   joined_text(current) + "'");

    std::vector<ScoredCandidate> survivors;
    for (Candidate& c : generate_candidates(current, resources, config)) {
        ScoreBreakdown b = score_sentence(c.sentence, original, resources, config.scoring);
        double ratio;
        if (current_score.total > 0.0) {
            ratio = b.total / current_score.total;
        } else {
            // current is length-rejected; any scoring candidate dominates
            ratio = b.total > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        if (ratio <= config.search.thresholds.get(c.op.kind)) continue;
        survivors.push_back(ScoredCandidate{std::move(c), b, ratio});
    }
    return select_candidate(survivors);
}

SimplificationTrace simplify(const AnnotatedSentence& sentence, const ResourceBundle& resources,
                             const PipelineConfig& config) {
    SimplificationTrace trace;
    trace.original = sentence;
    trace.original_breakdown = score_sentence(sentence, sentence, resources, config.scoring);

    std::unordered_set<std::string> visited;
    visited.insert(sequence_key(sentence));

    const AnnotatedSentence* current = &trace.original;
    while (static_cast<int>(trace.steps.size()) < config.search.max_iterations) {
        std::optional<ScoredCandidate> next = iterate_once(*current, sentence, resources, config);
        if (!next) break;
        if (config.search.revisit_guard &&
            !visited.insert(sequence_key(next->candidate.sentence)).second)
            break;
        trace.steps.push_back(TraceStep{next->candidate.op, std::move(next->candidate.sentence),
                                        next->breakdown, next->ratio});
        current = &trace.steps.back().sentence;
    }
    return trace;
}

std::vector<SentenceResult> simplify_corpus(const std::vector<AnnotatedSentence>& corpus,
                                            const ResourceBundle& resources,
                                            const PipelineConfig& config) {
    std::vector<SentenceResult> results;
    results.reserve(corpus.size());
    for (const AnnotatedSentence& s : corpus) {
        SentenceResult r;
        try {
            r.trace = simplify(s, resources, config);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

namespace {

json breakdown_json(const ScoreBreakdown& b) {
    return json{{"slor_raw", b.slor_raw},
                {"f_eslor", b.f_eslor},
                {"f_fre", b.f_fre},
                {"len_factor", b.len_factor},
                {"f_entity", b.f_entity},
                {"f_cos", b.f_cos},
                {"length_rejected", b.length_rejected},
                {"total", b.total}};
}

json op_json(const EditOp& op) {
    json j{{"kind", edit_kind_name(op.kind)},
           {"target_begin", op.target_begin},
           {"target_end", op.target_end},
           {"target_label", op.target_label}};
    if (op.kind == EditKind::reordering) {
        j["anchor_begin"] = op.anchor_begin;
        j["anchor_end"] = op.anchor_end;
        j["anchor_label"] = op.anchor_label;
        j["place_after"] = op.place_after;
    }
    if (op.kind == EditKind::substitution) {
        j["token_index"] = op.token_index;
        j["replaced"] = op.replaced;
        j["substitute"] = op.substitute;
    }
    return j;
}

} // namespace

std::string trace_json(const SimplificationTrace& trace) {
    json steps = json::array();
    for (const TraceStep& step : trace.steps) {
        steps.push_back(json{{"op", op_json(step.op)},
                             {"sentence", joined_text(step.sentence)},
                             {"score", breakdown_json(step.breakdown)},
                             {"ratio", step.ratio}});
    }
    json j{{"original", joined_text(trace.original)},
           {"original_score", breakdown_json(trace.original_breakdown)},
           {"steps", std::move(steps)},
           {"final", joined_text(trace.final_sentence())}};
    return j.dump();
}

} // namespace edisim
