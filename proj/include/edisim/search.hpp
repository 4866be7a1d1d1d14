#ifndef EDISIM_SEARCH_HPP
#define EDISIM_SEARCH_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edisim/edits.hpp"
#include "edisim/metrics.hpp"
#include "edisim/scoring.hpp"

namespace edisim {

// Per-operation acceptance thresholds: a candidate produced by operation op
// replaces the current sentence only when f(candidate)/f(current) > r_op.
struct OpThresholds {
    double removal = 1.25;
    double extraction = 1.25;
    double reordering = 1.25;
    double substitution = 1.25;

    double get(EditKind kind) const;
    double& ref(EditKind kind);
};

struct EditConfig {
    std::set<std::string> phrase_tags;  // empty -> default_phrase_tags()
    ReorderScope reorder_scope = ReorderScope::siblings;
    SubstitutionConfig substitution;

    const std::set<std::string>& tags() const;
};

struct SearchConfig {
    OpThresholds thresholds;
    int max_iterations = 20;
    bool revisit_guard = true;
    std::set<EditKind> enabled_ops = {EditKind::removal, EditKind::extraction,
                                      EditKind::reordering, EditKind::substitution};
};

struct PipelineConfig {
    ScoringConfig scoring;
    EditConfig edits;
    SearchConfig search;
    int lm_order = 3;
    std::array<double, 3> lm_weights = {0.7, 0.2, 0.1};
    SariDeleteMode sari_delete = SariDeleteMode::f1;
};

struct ScoredCandidate {
    Candidate candidate;
    ScoreBreakdown breakdown;
    double ratio = 0.0;  // f(candidate) / f(current)
};

// Threshold + argmax selection over already-scored candidates. Keeps
// candidates whose ratio strictly exceeds their operation's threshold and
// returns the one with the highest score; earlier-generated wins ties
// (generation emits removal, extraction, reordering, substitution in order).
std::optional<ScoredCandidate> select_candidate(const std::vector<ScoredCandidate>& scored);

// Generates all enabled-operation candidates from `current`, deduplicates by
// token sequence (first generated wins), scores each against `original` for
// the cosine filter, and selects. Returns nullopt when nothing clears its
// threshold. Throws DegenerateStateError when f(current) is zero because the
// current sentence fails its own cosine filter.
std::optional<ScoredCandidate> iterate_once(const AnnotatedSentence& current,
                                            const AnnotatedSentence& original,
                                            const ResourceBundle& resources,
                                            const PipelineConfig& config);

struct TraceStep {
    EditOp op;
    AnnotatedSentence sentence;
    ScoreBreakdown breakdown;
    double ratio = 0.0;
};

struct SimplificationTrace {
    AnnotatedSentence original;
    ScoreBreakdown original_breakdown;
    std::vector<TraceStep> steps;

    const AnnotatedSentence& final_sentence() const {
        return steps.empty() ? original : steps.back().sentence;
    }
};

// Greedy loop: accept the best candidate while one clears its threshold, up
// to max_iterations steps. With the revisit guard on, the loop also stops
// right before accepting a token sequence it has already visited.
SimplificationTrace simplify(const AnnotatedSentence& sentence, const ResourceBundle& resources,
                             const PipelineConfig& config);

struct SentenceResult {
    std::optional<SimplificationTrace> trace;
    std::string error;  // non-empty when this record failed
};

// Per-record isolation: one failing record yields an error entry and the
// rest still simplify.
std::vector<SentenceResult> simplify_corpus(const std::vector<AnnotatedSentence>& corpus,
                                            const ResourceBundle& resources,
                                            const PipelineConfig& config);

// One JSON object per trace: original, final, and per-step operation,
// resulting sentence, score breakdown, and ratio.
std::string trace_json(const SimplificationTrace& trace);

} // namespace edisim

#endif
