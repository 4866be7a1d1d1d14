#ifndef EDISIM_LM_HPP
#define EDISIM_LM_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "edisim/annotated.hpp"
#include "edisim/tables.hpp"

namespace edisim {

// Sentence-level language model over composite events (text, pos, dep).
class SyntaxAwareLM {
public:
    virtual ~SyntaxAwareLM() = default;

    // ln P(sentence), including the end-of-sentence event.
    virtual double logprob(const AnnotatedSentence& sentence) const = 0;

    // Identifier recorded in persisted bundles, e.g. "ngram:3".
    virtual std::string id() const = 0;
};

// Interpolated n-gram model with two backoff stages:
//   P(e | ctx) = w0 * P_full(e | ctx) + w1 * P_proj(e | ctx') + w2 / |V|
// where the projection keeps only (pos, dep) of every token and the
// projected event probability is split uniformly over the composite
// vocabulary members sharing that (pos, dep). When a stage's context was
// never observed its weight is redistributed proportionally over the
// remaining stages, so the distribution over V plus the end event always
// sums to one.
class NGramModel final : public SyntaxAwareLM {
public:
    static constexpr std::array<double, 3> kDefaultWeights = {0.7, 0.2, 0.1};

    NGramModel() = default;
    explicit NGramModel(int order, std::array<double, 3> weights = kDefaultWeights);

    int order() const { return order_; }
    const std::array<double, 3>& weights() const { return weights_; }

    void train(const std::vector<AnnotatedSentence>& corpus);

    double logprob(const AnnotatedSentence& sentence) const override;
    std::string id() const override;

    // P(next | previous tokens of the same sentence); `prev` is the full
    // prefix, internally truncated to order-1 and padded with start markers.
    double event_prob(const std::vector<AnnotatedToken>& prev, const AnnotatedToken& next) const;
    double end_prob(const std::vector<AnnotatedToken>& prev) const;

    // All composite event types seen in training (end marker excluded).
    std::vector<AnnotatedToken> event_vocabulary() const;

    std::int64_t vocabulary_size() const { return static_cast<std::int64_t>(vocab_.size()); }

    std::string serialize() const;
    static NGramModel deserialize(const std::string& text);

private:
    using CountMap = std::map<std::string, std::map<std::string, std::int64_t>>;

    double key_prob(const std::vector<std::string>& prefix_keys, const std::string& event_key,
                    const std::string& event_pd_key) const;

    int order_ = 3;
    std::array<double, 3> weights_ = kDefaultWeights;
    CountMap full_;                               // full-composite context -> event counts
    CountMap proj_;                               // (pos,dep) context -> (pos,dep) event counts
    std::map<std::string, std::int64_t> full_totals_;
    std::map<std::string, std::int64_t> proj_totals_;
    std::map<std::string, std::int64_t> class_size_;  // (pos,dep) key -> composite member count
    std::map<std::string, std::string> vocab_;        // composite key -> (pos,dep) key
};

// Trains an order-n model; order must lie in [2, 5].
std::shared_ptr<SyntaxAwareLM> train_lm(const std::vector<AnnotatedSentence>& corpus, int order);
std::shared_ptr<SyntaxAwareLM> train_lm(const std::vector<AnnotatedSentence>& corpus, int order,
                                        const std::array<double, 3>& weights);

void save_lm(const NGramModel& model, const std::string& path);
NGramModel load_lm(const std::string& path);

// (ln P_LM(s) - ln P_U(s)) / |s| where P_U is the unigram product over
// token texts. Empty sentence -> 0.
double slor(const AnnotatedSentence& sentence, const SyntaxAwareLM& lm, const UnigramTable& unigrams);

} // namespace edisim

#endif
