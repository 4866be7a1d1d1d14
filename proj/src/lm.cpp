#include "edisim/lm.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "edisim/errors.hpp"

namespace edisim {

using nlohmann::json;

namespace {

constexpr char kFieldSep = '\x1f';  // inside one composite key
constexpr char kItemSep = '\x1e';   // between context elements
const std::string kBegin = "<s>";
const std::string kEnd = "</s>";

std::string composite_key(const AnnotatedToken& t) {
    std::string k = t.text;
    k += kFieldSep;
    k += t.pos;
    k += kFieldSep;
    k += t.dep;
    return k;
}

std::string proj_key(const AnnotatedToken& t) {
    std::string k = t.pos;
    k += kFieldSep;
    k += t.dep;
    return k;
}

// Markers project to themselves; real composite keys drop the text field.
std::string proj_of_key(const std::string& composite) {
    size_t sep = composite.find(kFieldSep);
    if (sep == std::string::npos) return composite;
    return composite.substr(sep + 1);
}

std::string context_key(const std::vector<std::string>& keys, size_t end, int width) {
    // keys[end - width .. end) joined; positions before 0 read as <s>
    std::string out;
    for (int i = 0; i < width; ++i) {
        if (i) out += kItemSep;
        long long idx = static_cast<long long>(end) - width + i;
        out += idx < 0 ? kBegin : keys[static_cast<size_t>(idx)];
    }
    return out;
}

} // namespace

NGramModel::NGramModel(int order, std::array<double, 3> weights) : order_(order), weights_(weights) {
    if (order < 2 || order > 5)
        throw ConfigError("lm order must be in [2, 5], got " + std::to_string(order));
    double sum = weights[0] + weights[1] + weights[2];
    if (!(weights[0] >= 0 && weights[1] >= 0 && weights[2] > 0) || std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("lm interpolation weights must be nonnegative, sum to 1, "
                          "and give the uniform stage positive mass");
}

void NGramModel::train(const std::vector<AnnotatedSentence>& corpus) {
    if (corpus.empty()) throw ResourceError("cannot train a language model on an empty corpus");
    for (const AnnotatedSentence& s : corpus) {
        std::vector<std::string> full_keys, pd_keys;
        full_keys.reserve(s.tokens.size() + 1);
        pd_keys.reserve(s.tokens.size() + 1);
        for (const AnnotatedToken& t : s.tokens) {
            full_keys.push_back(composite_key(t));
            pd_keys.push_back(proj_key(t));
            vocab_.emplace(full_keys.back(), pd_keys.back());
        }
        full_keys.push_back(kEnd);
        pd_keys.push_back(kEnd);

        int width = order_ - 1;
        for (size_t i = 0; i < full_keys.size(); ++i) {
            std::string full_ctx = context_key(full_keys, i, width);
            std::string pd_ctx = context_key(pd_keys, i, width);
            full_[full_ctx][full_keys[i]] += 1;
            full_totals_[full_ctx] += 1;
            proj_[pd_ctx][pd_keys[i]] += 1;
            proj_totals_[pd_ctx] += 1;
        }
    }
    class_size_.clear();
    for (const auto& [composite, pd] : vocab_) class_size_[pd] += 1;
    class_size_[kEnd] = 1;
}

double NGramModel::key_prob(const std::vector<std::string>& prefix_keys, const std::string& event_key,
                            const std::string& event_pd_key) const {
    int width = order_ - 1;
    std::string full_ctx = context_key(prefix_keys, prefix_keys.size(), width);

    std::vector<std::string> pd_prefix;
    pd_prefix.reserve(prefix_keys.size());
    for (const std::string& k : prefix_keys) pd_prefix.push_back(proj_of_key(k));
    std::string pd_ctx = context_key(pd_prefix, pd_prefix.size(), width);

    auto full_it = full_.find(full_ctx);
    auto proj_it = proj_.find(pd_ctx);

    double uniform = 1.0 / static_cast<double>(vocab_.size() + 1);

    double stage[3] = {0.0, 0.0, uniform};
    bool available[3] = {full_it != full_.end(), proj_it != proj_.end(), true};

    if (available[0]) {
        const auto& events = full_it->second;
        auto ev = events.find(event_key);
        double total = static_cast<double>(full_totals_.at(full_ctx));
        stage[0] = ev == events.end() ? 0.0 : static_cast<double>(ev->second) / total;
    }
    if (available[1]) {
        const auto& events = proj_it->second;
        auto ev = events.find(event_pd_key);
        if (ev != events.end()) {
            double total = static_cast<double>(proj_totals_.at(pd_ctx));
            auto cls = class_size_.find(event_pd_key);
            double members = cls == class_size_.end() ? 1.0 : static_cast<double>(cls->second);
            stage[1] = static_cast<double>(ev->second) / total / members;
        }
    }

    double weight_sum = 0.0;
    for (int i = 0; i < 3; ++i)
        if (available[i]) weight_sum += weights_[static_cast<size_t>(i)];
    double p = 0.0;
    for (int i = 0; i < 3; ++i)
        if (available[i]) p += weights_[static_cast<size_t>(i)] / weight_sum * stage[i];
    return p;
}

double NGramModel::event_prob(const std::vector<AnnotatedToken>& prev, const AnnotatedToken& next) const {
    std::vector<std::string> prefix;
    prefix.reserve(prev.size());
    for (const AnnotatedToken& t : prev) prefix.push_back(composite_key(t));
    return key_prob(prefix, composite_key(next), proj_key(next));
}

double NGramModel::end_prob(const std::vector<AnnotatedToken>& prev) const {
    std::vector<std::string> prefix;
    prefix.reserve(prev.size());
    for (const AnnotatedToken& t : prev) prefix.push_back(composite_key(t));
    return key_prob(prefix, kEnd, kEnd);
}

double NGramModel::logprob(const AnnotatedSentence& sentence) const {
    std::vector<std::string> keys;
    keys.reserve(sentence.tokens.size());
    double lp = 0.0;
    for (const AnnotatedToken& t : sentence.tokens) {
        lp += std::log(key_prob(keys, composite_key(t), proj_key(t)));
        keys.push_back(composite_key(t));
    }
    lp += std::log(key_prob(keys, kEnd, kEnd));
    return lp;
}

std::string NGramModel::id() const { return "ngram:" + std::to_string(order_); }

std::vector<AnnotatedToken> NGramModel::event_vocabulary() const {
    std::vector<AnnotatedToken> out;
    out.reserve(vocab_.size());
    for (const auto& [composite, pd] : vocab_) {
        AnnotatedToken t;
        size_t a = composite.find(kFieldSep);
        size_t b = composite.find(kFieldSep, a + 1);
        t.text = composite.substr(0, a);
        t.pos = composite.substr(a + 1, b - a - 1);
        t.dep = composite.substr(b + 1);
        out.push_back(std::move(t));
    }
    return out;
}

std::string NGramModel::serialize() const {
    json full;
    for (const auto& [ctx, events] : full_) {
        json ev;
        for (const auto& [k, c] : events) ev[k] = c;
        full[ctx] = std::move(ev);
    }
    json proj;
    for (const auto& [ctx, events] : proj_) {
        json ev;
        for (const auto& [k, c] : events) ev[k] = c;
        proj[ctx] = std::move(ev);
    }
    json vocab = json::array();
    for (const auto& [composite, pd] : vocab_) vocab.push_back(composite);
    json j{{"format", "edisim-ngram"},
           {"version", 1},
           {"order", order_},
           {"weights", {weights_[0], weights_[1], weights_[2]}},
           {"vocab", std::move(vocab)},
           {"full", std::move(full)},
           {"proj", std::move(proj)}};
    return j.dump();
}

NGramModel NGramModel::deserialize(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ResourceError(std::string("invalid language model file: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != "edisim-ngram")
        throw ResourceError("not an edisim-ngram model file");
    if (j.value("version", 0) != 1)
        throw ResourceError("unsupported model version " + std::to_string(j.value("version", 0)));

    std::array<double, 3> weights = NGramModel::kDefaultWeights;
    if (j.contains("weights")) {
        for (size_t i = 0; i < 3; ++i) weights[i] = j["weights"].at(i).get<double>();
    }
    NGramModel m(j.at("order").get<int>(), weights);
    for (const auto& composite : j.at("vocab"))
        m.vocab_.emplace(composite.get<std::string>(), proj_of_key(composite.get<std::string>()));
    for (const auto& [ctx, events] : j.at("full").items()) {
        for (const auto& [k, c] : events.items()) {
            m.full_[ctx][k] = c.get<std::int64_t>();
            m.full_totals_[ctx] += c.get<std::int64_t>();
        }
    }
    for (const auto& [ctx, events] : j.at("proj").items()) {
        for (const auto& [k, c] : events.items()) {
            m.proj_[ctx][k] = c.get<std::int64_t>();
            m.proj_totals_[ctx] += c.get<std::int64_t>();
        }
    }
    for (const auto& [composite, pd] : m.vocab_) m.class_size_[pd] += 1;
    m.class_size_[kEnd] = 1;
    return m;
}

std::shared_ptr<SyntaxAwareLM> train_lm(const std::vector<AnnotatedSentence>& corpus, int order) {
    return train_lm(corpus, order, NGramModel::kDefaultWeights);
}

std::shared_ptr<SyntaxAwareLM> train_lm(const std::vector<AnnotatedSentence>& corpus, int order,
                                        const std::array<double, 3>& weights) {
    auto model = std::make_shared<NGramModel>(order, weights);
    model->train(corpus);
    return model;
}

void save_lm(const NGramModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot write model file: " + path);
    out << model.serialize() << '\n';
}

NGramModel load_lm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open model file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return NGramModel::deserialize(buf.str());
}

double slor(const AnnotatedSentence& sentence, const SyntaxAwareLM& lm, const UnigramTable& unigrams) {
    if (sentence.tokens.empty()) return 0.0;
    double lp_lm = lm.logprob(sentence);
    double lp_u = 0.0;
    for (const AnnotatedToken& t : sentence.tokens) lp_u += unigrams.logprob(t.text);
    return (lp_lm - lp_u) / static_cast<double>(sentence.size());
}

} // namespace edisim
