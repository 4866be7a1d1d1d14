#ifndef EDISIM_ANNOTATED_HPP
#define EDISIM_ANNOTATED_HPP

#include <string>
#include <vector>

namespace edisim {

struct AnnotatedToken {
    std::string text;
    std::string pos;   // part-of-speech tag
    std::string dep;   // dependency relation label
    bool is_entity = false;
};

// Constituency node over a half-open token span [begin, end).
// Leaves cover exactly one token and carry the preterminal tag as label.
struct ParseTree {
    std::string label;
    int begin = 0;
    int end = 0;
    std::vector<ParseTree> children;

    bool is_leaf() const { return children.empty(); }
    int span_size() const { return end - begin; }
};

struct AnnotatedSentence {
    std::vector<AnnotatedToken> tokens;
    ParseTree tree;

    int size() const { return static_cast<int>(tokens.size()); }
};

// Tree invariants: children tile the parent span left to right with no gaps,
// leaves are single-token, root covers [0, token_count). Returns an error
// description, or empty string if the tree is well formed.
std::string check_tree(const ParseTree& tree, int token_count);

// Walks the tree left to right, assigning fresh leaf indices and recomputing
// every internal span. Returns the leaf count. Used after splicing edits.
int renumber_spans(ParseTree& tree);

// Sentence invariants: non-empty, per-token tags non-empty, leaf count
// matches token count, tree well formed. Empty string when valid.
std::string check_sentence(const AnnotatedSentence& sentence);

std::vector<std::string> token_texts(const AnnotatedSentence& sentence);
std::string joined_text(const AnnotatedSentence& sentence);

// Bracketed rendering "(S (NP ...) ...)" using the given leaf texts.
std::string to_bracketed(const ParseTree& tree, const std::vector<std::string>& words);
std::string to_bracketed(const AnnotatedSentence& sentence);

struct BracketedParse {
    ParseTree tree;
    std::vector<std::string> leaves;
};

// Parses "(LABEL child ...)" bracketing; leaf nodes are "(TAG word)".
// Throws ParseError with the byte offset on malformed input.
BracketedParse parse_bracketed(const std::string& text);

} // namespace edisim

#endif
