#ifndef EDISIM_SCORING_HPP
#define EDISIM_SCORING_HPP

#include <Eigen/Dense>
#include <optional>

#include "edisim/annotated.hpp"
#include "edisim/resources.hpp"

namespace edisim {

struct ScoringConfig {
    double alpha = 1.0;   // fluency exponent
    double beta = 1.0;    // reading-ease exponent
    double gamma = 1.0;   // shortness exponent
    double delta = 1.0;   // entity exponent
    double tau = 0.7;     // cosine hard-filter threshold
    int min_length = 6;   // sentences of <= this many tokens score 0
    int entity_offset = 1;
};

struct ScoreBreakdown {
    double slor_raw = 0.0;   // SLOR before exponentiation
    double f_eslor = 1.0;    // exp(SLOR)
    double f_fre = 1.0;      // clamped reading ease
    double len_factor = 1.0; // 1 / |s|
    double f_entity = 1.0;   // entity count + offset
    int f_cos = 1;           // cosine hard filter, 0 or 1
    bool length_rejected = false;
    double total = 0.0;      // f_eslor^a * f_fre^b * len_factor^g * f_entity^d * f_cos
};

double fluency_factor(const AnnotatedSentence& s, const SyntaxAwareLM& lm, const UnigramTable& unigrams);

// Per-sentence Flesch Reading Ease clamped to [1, 121.22] so the factor
// stays positive and bounded.
double reading_ease_factor(const AnnotatedSentence& s);

double entity_factor(const AnnotatedSentence& s, int offset);

int entity_count(const AnnotatedSentence& s);

// Idf-weighted mean of the table's vectors over in-vocabulary tokens.
// Empty when no token is covered.
std::optional<Eigen::VectorXd> sentence_embedding(const AnnotatedSentence& s,
                                                  const EmbeddingTable& table,
                                                  const IdfTable& idf);

// 1 when cos(candidate, original) > tau (strict), else 0. Either side
// lacking an embedding (no covered tokens) -> 0.
int cosine_filter(const AnnotatedSentence& candidate, const AnnotatedSentence& original,
                  const EmbeddingTable& table, const IdfTable& idf, double tau);

// Full product of experts for `candidate`, with the cosine filter taken
// against `original` (the untouched input sentence, not the previous
// iterate). Length rejection zeroes the total and sets the flag.
ScoreBreakdown score_sentence(const AnnotatedSentence& candidate, const AnnotatedSentence& original,
                              const ResourceBundle& resources, const ScoringConfig& config);

} // namespace edisim

#endif
