#ifndef EDISIM_EDITS_HPP
#define EDISIM_EDITS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edisim/annotated.hpp"
#include "edisim/resources.hpp"
#include "edisim/scoring.hpp"

namespace edisim {

const std::set<std::string>& default_phrase_tags();  // ADJP ADVP NP PP S SBAR VP

// A constituent eligible for editing: its label is in the phrase tag set and
// it is not the root node. `path` is the child-index chain from the root,
// which identifies the node even when spans coincide (unary chains).
struct Phrase {
    std::vector<int> path;
    int begin = 0;
    int end = 0;
    std::string label;

    int size() const { return end - begin; }
};

std::vector<Phrase> detect_phrases(const ParseTree& tree, const std::set<std::string>& tags);

enum class EditKind { removal, extraction, reordering, substitution };

std::string edit_kind_name(EditKind kind);

struct EditOp {
    EditKind kind = EditKind::removal;
    int target_begin = -1;        // phrase span in the edited sentence
    int target_end = -1;
    std::string target_label;
    int anchor_begin = -1;        // reordering: landmark phrase span
    int anchor_end = -1;
    std::string anchor_label;
    bool place_after = false;     // reordering: before or after the landmark
    int token_index = -1;         // substitution: replaced token position
    std::string replaced;         // substitution: original word
    std::string substitute;       // substitution: new word
};

struct Candidate {
    AnnotatedSentence sentence;
    EditOp op;
};

enum class ReorderScope { siblings, all };

// Deletes the phrase span and splices the tree. Phrases covering the whole
// sentence or a single token are skipped.
std::vector<Candidate> gen_removal(const AnnotatedSentence& s, const std::vector<Phrase>& phrases);

// Promotes the phrase to a standalone sentence (its subtree becomes the
// root). Emitted for every phrase; the identity-like whole-span case is
// left for the acceptance ratio to reject.
std::vector<Candidate> gen_extraction(const AnnotatedSentence& s, const std::vector<Phrase>& phrases);

// Moves phrase p directly before or after phrase q. Sibling scope restricts
// (p, q) to children of the same node; `all` allows any disjoint pair.
// Candidates whose token order ends up unchanged are skipped.
std::vector<Candidate> gen_reordering(const AnnotatedSentence& s, const std::vector<Phrase>& phrases,
                                      ReorderScope scope);

struct SubstitutionConfig {
    int k_neighbors = 10;
    double similarity_threshold = 0.5;
};

// Highest-idf non-entity word token inside the phrase; leftmost on ties.
// Empty when the phrase holds only entities or punctuation.
std::optional<int> select_complex_word(const AnnotatedSentence& s, const Phrase& phrase,
                                       const IdfTable& idf);

// Candidate substitutes come from the synonym table plus the k nearest
// embedding neighbors (union over all tables). A substitute survives when
//   (a) idf(sub) < idf(replaced)        - strictly simpler
//   (b) not an inflection of the word   - shared stem is rejected
//   (c) cos(sub, replaced) > threshold  - in any table holding both words
//   (d) lexicon attests sub with the replaced token's pos and dep tags
std::vector<Candidate> gen_substitution(const AnnotatedSentence& s, const std::vector<Phrase>& phrases,
                                        const ResourceBundle& resources, const SubstitutionConfig& config);

// Suffix stripping for the inflection check: longest of ing/es/ed/e/s,
// only when the remainder is non-empty.
std::string strip_inflection_suffix(const std::string& word);
bool is_inflection_pair(const std::string& a, const std::string& b);

} // namespace edisim

#endif
