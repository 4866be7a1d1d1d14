#ifndef EDISIM_TABLES_HPP
#define EDISIM_TABLES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edisim/annotated.hpp"

namespace edisim {

// Raw word frequencies with add-one smoothing over the observed vocabulary:
// P(w) = (count(w) + 1) / (total + vocab_size). Every word, seen or not,
// gets positive probability.
struct UnigramTable {
    std::unordered_map<std::string, std::int64_t> counts;
    std::int64_t total = 0;

    std::int64_t vocab_size() const { return static_cast<std::int64_t>(counts.size()); }
    double prob(const std::string& word) const;
    double logprob(const std::string& word) const;
};

// idf(w) = ln(N / (1 + df(w))) + 1 with sentence-level document frequency.
// Words absent from the table fall back to the maximum attainable score
// (df = 0), which is what an unseen word would have received.
struct IdfTable {
    std::unordered_map<std::string, double> scores;
    double default_score = 1.0;

    double idf(const std::string& word) const;
};

struct FrequencyTables {
    UnigramTable unigrams;
    IdfTable idf;
};

FrequencyTables build_frequency_tables(const std::vector<AnnotatedSentence>& corpus);

struct EmbeddingTable {
    int dimension = 0;
    std::unordered_map<std::string, Eigen::VectorXd> vectors;

    const Eigen::VectorXd* find(const std::string& word) const;

    // K nearest in-table words by Euclidean distance, excluding the word
    // itself; ties broken lexicographically. Unknown word -> empty.
    std::vector<std::pair<std::string, double>> nearest(const std::string& word, int k) const;
};

struct SynonymTable {
    std::map<std::string, std::set<std::string>> entries;

    const std::set<std::string>* find(const std::string& word) const;
};

// Which POS and dep tags each word was attested with in the training corpus.
struct TagLexicon {
    std::map<std::string, std::set<std::string>> pos_tags;
    std::map<std::string, std::set<std::string>> dep_tags;

    bool attested(const std::string& word, const std::string& pos, const std::string& dep) const;
};

TagLexicon build_tag_lexicon(const std::vector<AnnotatedSentence>& corpus);

// Text formats. Tables: "word<TAB>value" lines. Embeddings: "word v1 .. vD"
// space-separated, consistent dimension. Synonyms: "word<TAB>s1,s2,...".
// Lexicon: "word<TAB>pos1,pos2<TAB>dep1,dep2".
UnigramTable load_unigram_table(const std::string& path);
void save_unigram_table(const UnigramTable& table, const std::string& path);

IdfTable load_idf_table(const std::string& path);
void save_idf_table(const IdfTable& table, const std::string& path);

EmbeddingTable load_embedding_table(const std::string& path);
void save_embedding_table(const EmbeddingTable& table, const std::string& path);

SynonymTable load_synonym_table(const std::string& path);
void save_synonym_table(const SynonymTable& table, const std::string& path);

TagLexicon load_tag_lexicon(const std::string& path);
void save_tag_lexicon(const TagLexicon& lexicon, const std::string& path);

} // namespace edisim

#endif
