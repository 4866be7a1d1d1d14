#include "edisim/edits.hpp"

#include <algorithm>
#include <cmath>

#include "edisim/readability.hpp"

namespace edisim {

const std::set<std::string>& default_phrase_tags() {
    static const std::set<std::string> tags = {"S", "SBAR", "NP", "VP", "PP", "ADJP", "ADVP"};
    return tags;
}

std::string edit_kind_name(EditKind kind) {
    switch (kind) {
        case EditKind::removal: return "removal";
        case EditKind::extraction: return "extraction";
        case EditKind::reordering: return "reordering";
        case EditKind::substitution: return "substitution";
    }
    return "unknown";
}

std::vector<Phrase> detect_phrases(const ParseTree& tree, const std::set<std::string>& tags) {
    std::vector<Phrase> out;
    std::vector<int> path;
    auto walk = [&](auto&& self, const ParseTree& node, bool root) -> void {
        if (!root && tags.count(node.label)) {
            out.push_back(Phrase{path, node.begin, node.end, node.label});
        }
        for (int i = 0; i < static_cast<int>(node.children.size()); ++i) {
            path.push_back(i);
            self(self, node.children[static_cast<size_t>(i)], false);
            path.pop_back();
        }
    };
    walk(walk, tree, true);
    return out;
}

namespace {

const ParseTree& node_at(const ParseTree& root, const std::vector<int>& path) {
    const ParseTree* node = &root;
    for (int idx : path) node = &node->children[static_cast<size_t>(idx)];
    return *node;
}

ParseTree& node_at(ParseTree& root, const std::vector<int>& path) {
    ParseTree* node = &root;
    for (int idx : path) node = &node->children[static_cast<size_t>(idx)];
    return *node;
}

// Removes the node at `path` from its parent and prunes ancestors left
// childless. Returns the path of the node that lost a child and the index
// that was erased from it. The root itself is never pruned.
std::pair<std::vector<int>, int> detach_at(ParseTree& root, const std::vector<int>& path) {
    std::vector<int> parent_path = path;
    while (true) {
        int idx = parent_path.back();
        parent_path.pop_back();
        ParseTree& parent = node_at(root, parent_path);
        parent.children.erase(parent.children.begin() + idx);
        if (!parent.children.empty() || parent_path.empty()) return {parent_path, idx};
    }
}

AnnotatedSentence splice_removal(const AnnotatedSentence& s, const Phrase& phrase) {
    AnnotatedSentence out;
    out.tokens.reserve(s.tokens.size() - static_cast<size_t>(phrase.size()));
    for (int i = 0; i < s.size(); ++i) {
        if (i >= phrase.begin && i < phrase.end) continue;
        out.tokens.push_back(s.tokens[static_cast<size_t>(i)]);
    }
    out.tree = s.tree;
    detach_at(out.tree, phrase.path);
    renumber_spans(out.tree);
    return out;
}

} // namespace

std::vector<Candidate> gen_removal(const AnnotatedSentence& s, const std::vector<Phrase>& phrases) {
    std::vector<Candidate> out;
    for (const Phrase& phrase : phrases) {
        if (phrase.size() <= 1) continue;
        if (phrase.size() >= s.size()) continue;  // would empty the sentence
        Candidate c;
        c.sentence = splice_removal(s, phrase);
        c.op.kind = EditKind::removal;
        c.op.target_begin = phrase.begin;
        c.op.target_end = phrase.end;
        c.op.target_label = phrase.label;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Candidate> gen_extraction(const AnnotatedSentence& s, const std::vector<Phrase>& phrases) {
    std::vector<Candidate> out;
    for (const Phrase& phrase : phrases) {
        Candidate c;
        c.sentence.tokens.assign(s.tokens.begin() + phrase.begin, s.tokens.begin() + phrase.end);
        c.sentence.tree = node_at(s.tree, phrase.path);
        renumber_spans(c.sentence.tree);
        c.op.kind = EditKind::extraction;
        c.op.target_begin = phrase.begin;
        c.op.target_end = phrase.end;
        c.op.target_label = phrase.label;
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

bool is_prefix(const std::vector<int>& prefix, const std::vector<int>& path) {
    if (prefix.size() > path.size()) return false;
    return std::equal(prefix.begin(), prefix.end(), path.begin());
}

// True when neither phrase's node lies on the other's path and their token
// spans do not overlap.
bool disjoint(const Phrase& p, const Phrase& q) {
    return p.end <= q.begin || q.end <= p.begin;
}

std::optional<Candidate> reorder_candidate(const AnnotatedSentence& s, const Phrase& p,
                                           const Phrase& q, bool after) {
    // token permutation: the p block moves right before/after the q block
    std::vector<int> order;
    order.reserve(s.tokens.size());
    for (int i = 0; i < s.size(); ++i)
        if (i < p.begin || i >= p.end) order.push_back(i);
    int landmark = after ? q.end - 1 : q.begin;
    auto it = std::find(order.begin(), order.end(), landmark);
    if (after) ++it;
    std::vector<int> block;
    for (int i = p.begin; i < p.end; ++i) block.push_back(i);
    order.insert(it, block.begin(), block.end());

    bool identity = true;
    for (int i = 0; i < static_cast<int>(order.size()); ++i)
        if (order[static_cast<size_t>(i)] != i) identity = false;
    if (identity) return std::nullopt;

    Candidate c;
    c.sentence.tokens.reserve(s.tokens.size());
    for (int idx : order) c.sentence.tokens.push_back(s.tokens[static_cast<size_t>(idx)]);

    ParseTree tree = s.tree;
    ParseTree moved = node_at(tree, p.path);
    auto [pruned_parent, removed_idx] = detach_at(tree, p.path);
    std::vector<int> q_path = q.path;
    if (is_prefix(pruned_parent, q_path) && q_path.size() > pruned_parent.size() &&
        q_path[pruned_parent.size()] > removed_idx)
        q_path[pruned_parent.size()] -= 1;
    int q_idx = q_path.back();
    q_path.pop_back();
    ParseTree& q_parent = node_at(tree, q_path);
    q_parent.children.insert(q_parent.children.begin() + q_idx + (after ? 1 : 0), std::move(moved));
    renumber_spans(tree);
    c.sentence.tree = std::move(tree);

    c.op.kind = EditKind::reordering;
    c.op.target_begin = p.begin;
    c.op.target_end = p.end;
    c.op.target_label = p.label;
    c.op.anchor_begin = q.begin;
    c.op.anchor_end = q.end;
    c.op.anchor_label = q.label;
    c.op.place_after = after;
    return c;
}

} // namespace

std::vector<Candidate> gen_reordering(const AnnotatedSentence& s, const std::vector<Phrase>& phrases,
                                      ReorderScope scope) {
    std::vector<Candidate> out;
    for (const Phrase& p : phrases) {
        for (const Phrase& q : phrases) {
            if (&p == &q || !disjoint(p, q)) continue;
            if (scope == ReorderScope::siblings) {
                if (p.path.size() != q.path.size()) continue;
                if (!std::equal(p.path.begin(), p.path.end() - 1, q.path.begin())) continue;
            }
            for (bool after : {false, true}) {
                auto c = reorder_candidate(s, p, q, after);
                if (c) out.push_back(std::move(*c));
            }
        }
    }
    return out;
}

std::optional<int> select_complex_word(const AnnotatedSentence& s, const Phrase& phrase,
                                       const IdfTable& idf) {
    std::optional<int> best;
    double best_idf = 0.0;
    for (int i = phrase.begin; i < phrase.end; ++i) {
        const AnnotatedToken& t = s.tokens[static_cast<size_t>(i)];
        if (t.is_entity || !is_word_token(t.text)) continue;
        double v = idf.idf(t.text);
        if (!best || v > best_idf) {
            best = i;
            best_idf = v;
        }
    }
    return best;
}

std::string strip_inflection_suffix(const std::string& word) {
    static const std::vector<std::string> suffixes = {"ing", "es", "ed", "e", "s"};
    for (const std::string& suffix : suffixes) {
        if (word.size() > suffix.size() && word.ends_with(suffix))
            return word.substr(0, word.size() - suffix.size());
    }
    return word;
}

bool is_inflection_pair(const std::string& a, const std::string& b) {
    std::string sa = strip_inflection_suffix(a);
    std::string sb = strip_inflection_suffix(b);
    if (sa == sb) return true;
    return sa.starts_with(sb) || sb.starts_with(sa);
}

std::vector<Candidate> gen_substitution(const AnnotatedSentence& s, const std::vector<Phrase>& phrases,
                                        const ResourceBundle& resources,
                                        const SubstitutionConfig& config) {
    std::vector<Candidate> out;
    std::set<std::pair<int, std::string>> emitted;
    for (const Phrase& phrase : phrases) {
        std::optional<int> target = select_complex_word(s, phrase, resources.idf);
        if (!target) continue;
        const AnnotatedToken& word = s.tokens[static_cast<size_t>(*target)];

        std::set<std::string> pool;
        if (const std::set<std::string>* syns = resources.synonyms.find(word.text))
            pool.insert(syns->begin(), syns->end());
        for (const EmbeddingTable& table : resources.embeddings)
            for (const auto& [neighbor, distance] : table.nearest(word.text, config.k_neighbors))
                pool.insert(neighbor);

        double word_idf = resources.idf.idf(word.text);
        for (const std::string& sub : pool) {
            if (sub == word.text) continue;
            if (emitted.count({*target, sub})) continue;
            if (!(resources.idf.idf(sub) < word_idf)) continue;                      // (a)
            if (is_inflection_pair(word.text, sub)) continue;                        // (b)
            bool similar = false;                                                    // (c)
            for (const EmbeddingTable& table : resources.embeddings) {
                const Eigen::VectorXd* a = table.find(word.text);
                const Eigen::VectorXd* b = table.find(sub);
                if (!a || !b) continue;
                double na = a->norm(), nb = b->norm();
                if (na == 0.0 || nb == 0.0) continue;
                if (a->dot(*b) / (na * nb) > config.similarity_threshold) {
                    similar = true;
                    break;
                }
            }
            if (!similar) continue;
            if (!resources.lexicon.attested(sub, word.pos, word.dep)) continue;      // (d)

            Candidate c;
            c.sentence = s;
            c.sentence.tokens[static_cast<size_t>(*target)].text = sub;
            c.op.kind = EditKind::substitution;
            c.op.target_begin = phrase.begin;
            c.op.target_end = phrase.end;
            c.op.target_label = phrase.label;
            c.op.token_index = *target;
            c.op.replaced = word.text;
            c.op.substitute = sub;
            out.push_back(std::move(c));
            emitted.insert({*target, sub});
        }
    }
    return out;
}

} // namespace edisim
