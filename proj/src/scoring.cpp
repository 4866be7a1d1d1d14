#include "edisim/scoring.hpp"

#include <cmath>

#include "edisim/lm.hpp"
#include "edisim/readability.hpp"

namespace edisim {

double fluency_factor(const AnnotatedSentence& s, const SyntaxAwareLM& lm,
                      const UnigramTable& unigrams) {
    return std::exp(slor(s, lm, unigrams));
}

double reading_ease_factor(const AnnotatedSentence& s) {
    double raw = fre_from_counts(count_readability(s));
    if (raw < 1.0) return 1.0;
    if (raw > 121.22) return 121.22;
    return raw;
}

int entity_count(const AnnotatedSentence& s) {
    int n = 0;
    for (const AnnotatedToken& t : s.tokens)
        if (t.is_entity) ++n;
    return n;
}

double entity_factor(const AnnotatedSentence& s, int offset) {
    return static_cast<double>(entity_count(s) + offset);
}

std::optional<Eigen::VectorXd> sentence_embedding(const AnnotatedSentence& s,
                                                  const EmbeddingTable& table,
                                                  const IdfTable& idf) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(table.dimension);
    double weight = 0.0;
    for (const AnnotatedToken& t : s.tokens) {
        const Eigen::VectorXd* vec = table.find(t.text);
        if (!vec) continue;
        double w = idf.idf(t.text);
        sum += w * *vec;
        weight += w;
    }
    if (weight <= 0.0) return std::nullopt;
    return Eigen::VectorXd(sum / weight);
}

int cosine_filter(const AnnotatedSentence& candidate, const AnnotatedSentence& original,
                  const EmbeddingTable& table, const IdfTable& idf, double tau) {
    auto a = sentence_embedding(candidate, table, idf);
    auto b = sentence_embedding(original, table, idf);
    if (!a || !b) return 0;
    double na = a->norm(), nb = b->norm();
    if (na == 0.0 || nb == 0.0) return 0;
    double cosine = a->dot(*b) / (na * nb);
    return cosine > tau ? 1 : 0;
}

ScoreBreakdown score_sentence(const AnnotatedSentence& candidate, const AnnotatedSentence& original,
                              const ResourceBundle& resources, const ScoringConfig& config) {
    ScoreBreakdown b;
    b.slor_raw = slor(candidate, *resources.lm, resources.unigrams);
    b.f_eslor = std::exp(b.slor_raw);
    b.f_fre = reading_ease_factor(candidate);
    b.len_factor = 1.0 / static_cast<double>(candidate.size());
    b.f_entity = entity_factor(candidate, config.entity_offset);
    b.f_cos = resources.embeddings.empty()
                  ? 1
                  : cosine_filter(candidate, original, resources.embeddings.front(), resources.idf,
                                  config.tau);
    b.length_rejected = candidate.size() <= config.min_length;
    if (b.length_rejected || b.f_cos == 0) {
        b.total = 0.0;
        return b;
    }
    b.total = std::pow(b.f_eslor, config.alpha) * std::pow(b.f_fre, config.beta) *
              std::pow(b.len_factor, config.gamma) * std::pow(b.f_entity, config.delta);
    return b;
}

} // namespace edisim
