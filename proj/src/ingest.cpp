#include "edisim/ingest.hpp"

#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>

#include "edisim/errors.hpp"

namespace edisim {

using nlohmann::json;

std::string check_tree(const ParseTree& tree, int token_count) {
    if (tree.begin != 0 || tree.end != token_count)
        return "root spans [" + std::to_string(tree.begin) + ", " + std::to_string(tree.end) +
               ") but the sentence has " + std::to_string(token_count) + " tokens";

    std::string err;
    auto walk = [&](auto&& self, const ParseTree& node) -> bool {
        if (node.begin >= node.end) {
            err = "empty span at node '" + node.label + "'";
            return false;
        }
        if (node.label.empty()) {
            err = "node with empty label at span [" + std::to_string(node.begin) + ", " +
                  std::to_string(node.end) + ")";
            return false;
        }
        if (node.is_leaf()) {
            if (node.span_size() != 1) {
                err = "leaf '" + node.label + "' spans " + std::to_string(node.span_size()) +
                      " tokens";
                return false;
            }
            return true;
        }
        int cursor = node.begin;
        for (const ParseTree& child : node.children) {
            if (child.begin != cursor) {
                err = "children of '" + node.label + "' do not tile its span at position " +
                      std::to_string(cursor);
                return false;
            }
            if (!self(self, child)) return false;
            cursor = child.end;
        }
        if (cursor != node.end) {
            err = "children of '" + node.label + "' stop at " + std::to_string(cursor) +
                  " short of " + std::to_string(node.end);
            return false;
        }
        return true;
    };
    walk(walk, tree);
    return err;
}

int renumber_spans(ParseTree& tree) {
    int next = 0;
    auto walk = [&](auto&& self, ParseTree& node) -> void {
        if (node.is_leaf()) {
            node.begin = next;
            node.end = ++next;
            return;
        }
        node.begin = next;
        for (ParseTree& child : node.children) self(self, child);
        node.end = next;
    };
    walk(walk, tree);
    return next;
}

std::string check_sentence(const AnnotatedSentence& sentence) {
    if (sentence.tokens.empty()) return "sentence has no tokens";
    for (int i = 0; i < sentence.size(); ++i) {
        const AnnotatedToken& t = sentence.tokens[static_cast<size_t>(i)];
        if (t.text.empty()) return "token " + std::to_string(i) + " has empty text";
        if (t.pos.empty()) return "token " + std::to_string(i) + " ('" + t.text + "') has empty pos";
        if (t.dep.empty()) return "token " + std::to_string(i) + " ('" + t.text + "') has empty dep";
    }
    return check_tree(sentence.tree, sentence.size());
}

std::vector<std::string> token_texts(const AnnotatedSentence& sentence) {
    std::vector<std::string> out;
    out.reserve(sentence.tokens.size());
    for (const AnnotatedToken& t : sentence.tokens) out.push_back(t.text);
    return out;
}

std::string joined_text(const AnnotatedSentence& sentence) {
    std::string out;
    for (size_t i = 0; i < sentence.tokens.size(); ++i) {
        if (i) out += ' ';
        out += sentence.tokens[i].text;
    }
    return out;
}

std::string to_bracketed(const ParseTree& tree, const std::vector<std::string>& words) {
    std::string out;
    auto walk = [&](auto&& self, const ParseTree& node) -> void {
        out += '(';
        out += node.label;
        if (node.is_leaf()) {
            out += ' ';
            out += node.begin >= 0 && node.begin < static_cast<int>(words.size())
                       ? words[static_cast<size_t>(node.begin)]
                       : std::string("?");
        } else {
            for (const ParseTree& child : node.children) {
                out += ' ';
                self(self, child);
            }
        }
        out += ')';
    };
    walk(walk, tree);
    return out;
}

std::string to_bracketed(const AnnotatedSentence& sentence) {
    return to_bracketed(sentence.tree, token_texts(sentence));
}

namespace {

struct BracketReader {
    const std::string& text;
    size_t pos = 0;

    explicit BracketReader(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("bad bracketing at byte " + std::to_string(pos) + ": " + what);
    }

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_space();
        return pos >= text.size();
    }

    char peek() const { return text[pos]; }

    std::string read_atom() {
        size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            ++pos;
        if (pos == start) fail("expected a label or word");
        return text.substr(start, pos - start);
    }

    ParseTree read_node(std::vector<std::string>& leaves) {
        skip_space();
        if (pos >= text.size() || text[pos] != '(') fail("expected '('");
        ++pos;
        skip_space();
        ParseTree node;
        node.label = read_atom();
        skip_space();
        if (pos >= text.size()) fail("unterminated node '" + node.label + "'");
        if (text[pos] == '(') {
            while (true) {
                node.children.push_back(read_node(leaves));
                skip_space();
                if (pos >= text.size()) fail("unterminated node '" + node.label + "'");
                if (text[pos] == ')') break;
                if (text[pos] != '(') fail("mixed word and child nodes under '" + node.label + "'");
            }
        } else if (text[pos] == ')') {
            fail("node '" + node.label + "' has no word and no children");
        } else {
            leaves.push_back(read_atom());
            skip_space();
            if (pos >= text.size() || text[pos] != ')')
                fail("leaf '" + node.label + "' must hold exactly one word");
        }
        ++pos;  // consume ')'
        return node;
    }
};

AnnotatedToken token_from_json(const json& j, const std::string& where, size_t index) {
    if (!j.is_object())
        throw ParseError(where + ": token " + std::to_string(index) + " is not an object");
    AnnotatedToken t;
    for (const char* key : {"t", "p", "d"}) {
        if (!j.contains(key) || !j[key].is_string())
            throw ParseError(where + ": token " + std::to_string(index) +
                             " lacks string field \"" + key + "\"");
    }
    t.text = j["t"].get<std::string>();
    t.pos = j["p"].get<std::string>();
    t.dep = j["d"].get<std::string>();
    if (j.contains("e")) {
        if (!j["e"].is_boolean())
            throw ParseError(where + ": token " + std::to_string(index) + " field \"e\" is not a bool");
        t.is_entity = j["e"].get<bool>();
    }
    return t;
}

} // namespace

BracketedParse parse_bracketed(const std::string& text) {
    BracketReader reader(text);
    if (reader.at_end()) throw ParseError("bad bracketing at byte 0: empty input");
    BracketedParse result;
    result.tree = reader.read_node(result.leaves);
    if (!reader.at_end())
        reader.fail("trailing content after the root node");
    renumber_spans(result.tree);
    return result;
}

AnnotatedSentence parse_corpus_record(const std::string& line, const std::string& where) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(where + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("tokens") || !j.contains("parse"))
        throw ParseError(where + ": record needs \"tokens\" and \"parse\" fields");
    if (!j["tokens"].is_array() || j["tokens"].empty())
        throw ParseError(where + ": \"tokens\" must be a non-empty array");
    if (!j["parse"].is_string())
        throw ParseError(where + ": \"parse\" must be a string");

    AnnotatedSentence sentence;
    for (size_t i = 0; i < j["tokens"].size(); ++i)
        sentence.tokens.push_back(token_from_json(j["tokens"][i], where, i));

    BracketedParse parsed;
    try {
        parsed = parse_bracketed(j["parse"].get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
    if (parsed.leaves.size() != sentence.tokens.size())
        throw ParseError(where + ": parse has " + std::to_string(parsed.leaves.size()) +
                         " leaves for " + std::to_string(sentence.tokens.size()) + " tokens");
    for (size_t i = 0; i < parsed.leaves.size(); ++i) {
        if (parsed.leaves[i] != sentence.tokens[i].text)
            throw ParseError(where + ": leaf " + std::to_string(i) + " reads '" + parsed.leaves[i] +
                             "' but token is '" + sentence.tokens[i].text + "'");
    }
    sentence.tree = std::move(parsed.tree);

    std::string err = check_sentence(sentence);
    if (!err.empty()) throw ParseError(where + ": " + err);
    return sentence;
}

std::vector<AnnotatedSentence> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open corpus file: " + path);
    std::vector<AnnotatedSentence> corpus;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        corpus.push_back(parse_corpus_record(line, path + ":" + std::to_string(lineno)));
    }
    return corpus;
}

std::string corpus_record_json(const AnnotatedSentence& sentence) {
    json tokens = json::array();
    for (const AnnotatedToken& t : sentence.tokens) {
        tokens.push_back({{"t", t.text}, {"p", t.pos}, {"d", t.dep}, {"e", t.is_entity}});
    }
    json j{{"tokens", tokens}, {"parse", to_bracketed(sentence)}};
    return j.dump();
}

void save_corpus(const std::vector<AnnotatedSentence>& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot write corpus file: " + path);
    for (const AnnotatedSentence& s : corpus) out << corpus_record_json(s) << '\n';
}

} // namespace edisim
