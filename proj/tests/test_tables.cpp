#include <doctest.h>

#include <cmath>

#include "edisim/errors.hpp"
#include "edisim/tables.hpp"
#include "helpers.hpp"

using namespace edisim;
using edisim::test::tok;

TEST_CASE("unigram probabilities are add-one smoothed") {
    UnigramTable t;
    t.counts = {{"a", 2}, {"b", 1}};
    t.total = 3;
    CHECK(t.vocab_size() == 2);
    CHECK(t.prob("a") == doctest::Approx(3.0 / 5.0).epsilon(1e-12));
    CHECK(t.prob("b") == doctest::Approx(2.0 / 5.0).epsilon(1e-12));
    CHECK(t.prob("unseen") == doctest::Approx(1.0 / 5.0).epsilon(1e-12));
    CHECK(t.logprob("a") == doctest::Approx(std::log(0.6)).epsilon(1e-12));
}

TEST_CASE("frequency tables from a corpus") {
    std::vector<AnnotatedSentence> corpus = {
        test::flat({tok("a", "X", "x"), tok("a", "X", "x"), tok("b", "Y", "y")}),
        test::flat({tok("b", "Y", "y"), tok("c", "Z", "z")}),
    };
    FrequencyTables tables = build_frequency_tables(corpus);

    CHECK(tables.unigrams.total == 5);
    CHECK(tables.unigrams.vocab_size() == 3);
    CHECK(tables.unigrams.prob("a") == doctest::Approx(3.0 / 8.0).epsilon(1e-12));

    // idf(w) = ln(N / (1 + df)) + 1 with sentence-level df, N = 2
    CHECK(tables.idf.idf("a") == doctest::Approx(std::log(2.0 / 2.0) + 1.0).epsilon(1e-12));
    CHECK(tables.idf.idf("b") == doctest::Approx(std::log(2.0 / 3.0) + 1.0).epsilon(1e-12));
    CHECK(tables.idf.idf("c") == doctest::Approx(std::log(2.0 / 2.0) + 1.0).epsilon(1e-12));
    // unseen words score as if df = 0
    CHECK(tables.idf.default_score == doctest::Approx(std::log(2.0) + 1.0).epsilon(1e-12));
    CHECK(tables.idf.idf("zzz") == tables.idf.default_score);
}

TEST_CASE("embedding table lookup and nearest neighbours") {
    EmbeddingTable t = load_embedding_table(test::fixture("embeddings_b.txt"));
    CHECK(t.dimension == 2);
    CHECK(t.vectors.size() == 5);
    REQUIRE(t.find("cat") != nullptr);
    CHECK((*t.find("cat"))(0) == doctest::Approx(1.0));
    CHECK(t.find("zzz") == nullptr);

    auto near = t.nearest("cat", 2);
    REQUIRE(near.size() == 2);
    CHECK(near[0].first == "dog");
    CHECK(near[0].second == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
    CHECK(near[1].first == "ant");

    CHECK(t.nearest("zzz", 3).empty());
    // k beyond the table returns everything except the word itself
    CHECK(t.nearest("cat", 99).size() == 4);
}

TEST_CASE("nearest neighbour ties break lexicographically") {
    EmbeddingTable t;
    t.dimension = 2;
    t.vectors["cat"] = Eigen::Vector2d(0.0, 0.0);
    t.vectors["bat"] = Eigen::Vector2d(1.0, 0.0);
    t.vectors["ant"] = Eigen::Vector2d(0.0, 1.0);
    auto near = t.nearest("cat", 2);
    REQUIRE(near.size() == 2);
    CHECK(near[0].first == "ant");
    CHECK(near[1].first == "bat");
}

TEST_CASE("synonym entries are one-directional as loaded") {
    SynonymTable t = load_synonym_table(test::fixture("synonyms.tsv"));
    const std::set<std::string>* syns = t.find("constructing");
    REQUIRE(syns != nullptr);
    CHECK(syns->count("building") == 1);
    CHECK(t.find("building") == nullptr);
    CHECK(t.find("zzz") == nullptr);
}

TEST_CASE("tag lexicon records pos and dep attestations separately") {
    std::vector<AnnotatedSentence> corpus = {
        test::flat({tok("run", "NN", "dobj")}),
        test::flat({tok("run", "VBG", "pcomp")}),
    };
    TagLexicon lex = build_tag_lexicon(corpus);
    CHECK(lex.attested("run", "NN", "dobj"));
    CHECK(lex.attested("run", "VBG", "pcomp"));
    // pos and dep sets are independent, so crossed combinations pass
    CHECK(lex.attested("run", "NN", "pcomp"));
    CHECK_FALSE(lex.attested("run", "JJ", "dobj"));
    CHECK_FALSE(lex.attested("run", "NN", "amod"));
    CHECK_FALSE(lex.attested("walk", "NN", "dobj"));
}

TEST_CASE("tables survive a save/load round trip") {
    test::TempDir tmp;

    UnigramTable uni;
    uni.counts = {{"a", 2}, {"b", 1}};
    uni.total = 3;
    save_unigram_table(uni, tmp.path("uni.tsv"));
    UnigramTable uni2 = load_unigram_table(tmp.path("uni.tsv"));
    CHECK(uni2.counts == uni.counts);
    CHECK(uni2.total == uni.total);

    IdfTable idf;
    idf.scores = {{"a", 1.0}, {"b", 0.25}};
    idf.default_score = 2.5;
    save_idf_table(idf, tmp.path("idf.tsv"));
    IdfTable idf2 = load_idf_table(tmp.path("idf.tsv"));
    CHECK(idf2.default_score == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(idf2.idf("a") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(idf2.idf("b") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(idf2.idf("zzz") == doctest::Approx(2.5).epsilon(1e-12));

    EmbeddingTable emb = load_embedding_table(test::fixture("embeddings_a.txt"));
    save_embedding_table(emb, tmp.path("emb.txt"));
    EmbeddingTable emb2 = load_embedding_table(tmp.path("emb.txt"));
    CHECK(emb2.dimension == emb.dimension);
    CHECK(emb2.vectors.size() == emb.vectors.size());
    REQUIRE(emb2.find("building") != nullptr);
    CHECK((*emb2.find("building") - *emb.find("building")).norm() == 0.0);

    SynonymTable syn;
    syn.entries["a"] = {"b", "c"};
    syn.entries["d"] = {"e"};
    save_synonym_table(syn, tmp.path("syn.tsv"));
    SynonymTable syn2 = load_synonym_table(tmp.path("syn.tsv"));
    CHECK(syn2.entries == syn.entries);

    TagLexicon lex;
    lex.pos_tags["run"] = {"NN", "VBG"};
    lex.dep_tags["run"] = {"dobj", "pcomp"};
    save_tag_lexicon(lex, tmp.path("lex.tsv"));
    TagLexicon lex2 = load_tag_lexicon(tmp.path("lex.tsv"));
    CHECK(lex2.pos_tags == lex.pos_tags);
    CHECK(lex2.dep_tags == lex.dep_tags);
}

TEST_CASE("embedding rows must agree on dimension") {
    test::TempDir tmp;
    test::write_file(tmp.path("bad.txt"), "cat 1.0 0.0\ndog 1.0\n");
    CHECK_THROWS_AS(load_embedding_table(tmp.path("bad.txt")), ParseError);
}

TEST_CASE("missing table files are reported") {
    CHECK_THROWS_AS(load_unigram_table("/nonexistent/u.tsv"), ResourceError);
    CHECK_THROWS_AS(load_embedding_table("/nonexistent/e.txt"), ResourceError);
}
