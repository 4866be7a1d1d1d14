#include <doctest.h>

#include "edisim/errors.hpp"
#include "edisim/ingest.hpp"
#include "helpers.hpp"

using namespace edisim;

TEST_CASE("bracketed parses round trip") {
    std::string text = "(ROOT (S (NP (PRP they)) (VP (VBD ran)) (. .)))";
    BracketedParse parsed = parse_bracketed(text);
    CHECK(parsed.leaves == std::vector<std::string>{"they", "ran", "."});
    CHECK(parsed.tree.label == "ROOT");
    CHECK(parsed.tree.begin == 0);
    CHECK(parsed.tree.end == 3);
    REQUIRE(parsed.tree.children.size() == 1);
    const ParseTree& s = parsed.tree.children[0];
    REQUIRE(s.children.size() == 3);
    CHECK(s.children[0].label == "NP");
    CHECK(s.children[0].begin == 0);
    CHECK(s.children[0].end == 1);
    CHECK(s.children[1].children[0].label == "VBD");
    CHECK(s.children[1].children[0].is_leaf());

    CHECK(to_bracketed(parsed.tree, parsed.leaves) == text);
}

TEST_CASE("malformed bracketings are rejected") {
    CHECK_THROWS_AS(parse_bracketed(""), ParseError);
    CHECK_THROWS_AS(parse_bracketed("(S (NP the"), ParseError);
    CHECK_THROWS_AS(parse_bracketed("()"), ParseError);
    CHECK_THROWS_AS(parse_bracketed("(S)"), ParseError);
    CHECK_THROWS_AS(parse_bracketed("no brackets"), ParseError);
    CHECK_THROWS_AS(parse_bracketed("(S (NP (DT the)) extra)"), ParseError);
    // a node may hold either one word or child nodes, never both
    CHECK_THROWS_AS(parse_bracketed("(S word (NP (DT the)))"), ParseError);
    // trailing garbage after the root
    CHECK_THROWS_AS(parse_bracketed("(S (DT the)) junk"), ParseError);
}

TEST_CASE("tree checking catches span violations") {
    BracketedParse parsed = parse_bracketed("(ROOT (S (NP (PRP they)) (VP (VBD ran))))");
    CHECK(check_tree(parsed.tree, 2) == "");
    CHECK(check_tree(parsed.tree, 3) != "");  // root does not cover all tokens

    ParseTree broken = parsed.tree;
    broken.children[0].children[1].begin = 0;  // overlaps its left sibling
    CHECK(check_tree(broken, 2) != "");

    ParseTree wide = parsed.tree;
    wide.children[0].children[0].children[0].end = 2;  // multi-token leaf
    CHECK(check_tree(wide, 2) != "");
}

TEST_CASE("renumbering restores spans from leaf order") {
    BracketedParse parsed = parse_bracketed("(ROOT (S (NP (PRP they)) (VP (VBD ran)) (. .)))");
    ParseTree scrambled = parsed.tree;
    scrambled.begin = 7;
    scrambled.children[0].children[1].begin = 99;
    scrambled.children[0].children[1].end = -1;
    CHECK(renumber_spans(scrambled) == 3);
    CHECK(check_tree(scrambled, 3) == "");
    CHECK(to_bracketed(scrambled, parsed.leaves) == to_bracketed(parsed.tree, parsed.leaves));
}

TEST_CASE("sentence checking ties tokens to the tree") {
    AnnotatedSentence good = test::sent("(ROOT (S (NP (PRP they)) (VP (VBD ran)) (. .)))",
                                        {"PRP:nsubj", "VBD:root", ".:punct"});
    CHECK(check_sentence(good) == "");

    AnnotatedSentence none;
    CHECK(check_sentence(none) != "");

    AnnotatedSentence missing_tag = good;
    missing_tag.tokens[1].pos = "";
    CHECK(check_sentence(missing_tag) != "");

    AnnotatedSentence extra = good;
    extra.tokens.push_back(test::tok("late", "RB", "advmod"));
    CHECK(check_sentence(extra) != "");  // leaf count no longer matches
}

TEST_CASE("token helpers expose text") {
    AnnotatedSentence s = test::sent("(ROOT (S (NP (PRP they)) (VP (VBD ran)) (. .)))",
                                     {"PRP:nsubj", "VBD:root", ".:punct"});
    CHECK(token_texts(s) == std::vector<std::string>{"they", "ran", "."});
    CHECK(joined_text(s) == "they ran .");
    CHECK(to_bracketed(s) == "(ROOT (S (NP (PRP they)) (VP (VBD ran)) (. .)))");
}

TEST_CASE("corpus records parse from json lines") {
    std::string line = R"({"tokens": [{"t": "they", "p": "PRP", "d": "nsubj"},)"
                       R"({"t": "ran", "p": "VBD", "d": "root", "e": true},)"
                       R"({"t": ".", "p": ".", "d": "punct"}],)"
                       R"x("parse": "(ROOT (S (NP (PRP they)) (VP (VBD ran)) (. .)))"})x";
    AnnotatedSentence s = parse_corpus_record(line, "here");
    REQUIRE(s.size() == 3);
    CHECK(s.tokens[0].text == "they");
    CHECK(s.tokens[0].is_entity == false);  // "e" defaults to false
    CHECK(s.tokens[1].is_entity == true);
    CHECK(s.tokens[2].pos == ".");
    CHECK(check_sentence(s) == "");
}

TEST_CASE("corpus record errors carry their location") {
    CHECK_THROWS_AS(parse_corpus_record("{broken", "somewhere:3"), ParseError);
    try {
        parse_corpus_record("{broken", "somewhere:3");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("somewhere:3") != std::string::npos);
    }

    // leaf count disagreeing with the token list
    std::string mismatched = R"({"tokens": [{"t": "they", "p": "PRP", "d": "nsubj"}],)"
                             R"x("parse": "(ROOT (S (NP (PRP they)) (VP (VBD ran))))"})x";
    CHECK_THROWS_AS(parse_corpus_record(mismatched, "here"), ParseError);
}

TEST_CASE("the committed training corpus loads cleanly") {
    std::vector<AnnotatedSentence> corpus = load_corpus(test::fixture("toy_simple.jsonl"));
    REQUIRE(corpus.size() == 9);
    CHECK(corpus[0].size() == 14);
    CHECK(joined_text(corpus[0]) ==
          "american businessmen spent 12 billion dollars on building theme parks in 2016 alone .");
    CHECK(joined_text(corpus[8]) == "they insisted on making theme parks .");
    for (const AnnotatedSentence& s : corpus) CHECK(check_sentence(s) == "");
}

TEST_CASE("corpora survive a save/load round trip") {
    std::vector<AnnotatedSentence> corpus = load_corpus(test::fixture("toy_complex.jsonl"));
    test::TempDir tmp;
    save_corpus(corpus, tmp.path("copy.jsonl"));
    std::vector<AnnotatedSentence> copy = load_corpus(tmp.path("copy.jsonl"));
    REQUIRE(copy.size() == corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i) {
        CHECK(joined_text(copy[i]) == joined_text(corpus[i]));
        CHECK(to_bracketed(copy[i]) == to_bracketed(corpus[i]));
        for (int t = 0; t < corpus[i].size(); ++t) {
            CHECK(copy[i].tokens[t].pos == corpus[i].tokens[t].pos);
            CHECK(copy[i].tokens[t].dep == corpus[i].tokens[t].dep);
            CHECK(copy[i].tokens[t].is_entity == corpus[i].tokens[t].is_entity);
        }
    }
}

TEST_CASE("record serialization is canonical") {
    AnnotatedSentence s = test::sent("(ROOT (S (NP (PRP they)) (VP (VBD ran)) (. .)))",
                                     {"PRP:nsubj", "!VBD:root", ".:punct"});
    std::string j = corpus_record_json(s);
    CHECK(j == corpus_record_json(s));
    CHECK(j.find('\n') == std::string::npos);
    AnnotatedSentence back = parse_corpus_record(j, "round trip");
    CHECK(joined_text(back) == joined_text(s));
    CHECK(back.tokens[1].is_entity);
    CHECK(to_bracketed(back) == to_bracketed(s));
}

TEST_CASE("missing corpus files are reported") {
    CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl"), ResourceError);
}
