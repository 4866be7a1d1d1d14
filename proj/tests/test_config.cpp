#include <doctest.h>

#include <nlohmann/json.hpp>

#include "edisim/config.hpp"
#include "edisim/errors.hpp"
#include "helpers.hpp"

using namespace edisim;

TEST_CASE("the newsela profile uses uniform exponents and thresholds") {
    PipelineConfig c = profile("newsela");
    CHECK(c.scoring.alpha == 1.0);
    CHECK(c.scoring.beta == 1.0);
    CHECK(c.scoring.gamma == 1.0);
    CHECK(c.scoring.delta == 1.0);
    CHECK(c.scoring.tau == 0.7);
    CHECK(c.scoring.min_length == 6);
    CHECK(c.scoring.entity_offset == 1);
    CHECK(c.search.thresholds.removal == 1.25);
    CHECK(c.search.thresholds.extraction == 1.25);
    CHECK(c.search.thresholds.reordering == 1.25);
    CHECK(c.search.thresholds.substitution == 1.25);
    CHECK(c.search.max_iterations == 20);
    CHECK(c.search.revisit_guard);
    CHECK(c.edits.reorder_scope == ReorderScope::siblings);
    CHECK(c.edits.substitution.k_neighbors == 10);
    CHECK(c.edits.substitution.similarity_threshold == 0.5);
    CHECK(c.lm_order == 3);
    CHECK(c.lm_weights == std::array<double, 3>{0.7, 0.2, 0.1});
    CHECK(c.sari_delete == SariDeleteMode::f1);
    CHECK(c.edits.tags() == default_phrase_tags());
}

TEST_CASE("the wikilarge profile reweights and loosens substitution") {
    PipelineConfig c = profile("wikilarge");
    CHECK(c.scoring.alpha == 0.5);
    CHECK(c.scoring.beta == 1.0);
    CHECK(c.scoring.gamma == 0.25);
    CHECK(c.scoring.delta == 1.0);
    CHECK(c.search.thresholds.removal == 1.25);
    CHECK(c.search.thresholds.reordering == 1.25);
    CHECK(c.search.thresholds.substitution == 0.8);
    CHECK(c.search.thresholds.extraction == 5.0);
}

TEST_CASE("unknown profiles are rejected") {
    CHECK_THROWS_AS(profile("newsla"), ConfigError);
    CHECK_THROWS_AS(profile(""), ConfigError);
}

TEST_CASE("individual settings apply on top of a profile") {
    PipelineConfig c = profile("newsela");

    apply_setting(c, "alpha", "2.5");
    CHECK(c.scoring.alpha == 2.5);
    apply_setting(c, "beta", "0.5");
    CHECK(c.scoring.beta == 0.5);
    apply_setting(c, "gamma", "4");
    CHECK(c.scoring.gamma == 4.0);
    apply_setting(c, "delta", "0");
    CHECK(c.scoring.delta == 0.0);
    apply_setting(c, "tau", "0.9");
    CHECK(c.scoring.tau == 0.9);
    apply_setting(c, "min_length", "8");
    CHECK(c.scoring.min_length == 8);
    apply_setting(c, "entity_offset", "2");
    CHECK(c.scoring.entity_offset == 2);

    apply_setting(c, "r_removal", "1.5");
    CHECK(c.search.thresholds.removal == 1.5);
    apply_setting(c, "r_extraction", "5.0");
    CHECK(c.search.thresholds.extraction == 5.0);
    apply_setting(c, "r_reordering", "0.9");
    CHECK(c.search.thresholds.reordering == 0.9);
    apply_setting(c, "r_substitution", "0.8");
    CHECK(c.search.thresholds.substitution == 0.8);

    apply_setting(c, "r_all", "1.1");
    CHECK(c.search.thresholds.removal == 1.1);
    CHECK(c.search.thresholds.extraction == 1.1);
    CHECK(c.search.thresholds.reordering == 1.1);
    CHECK(c.search.thresholds.substitution == 1.1);

    apply_setting(c, "max_iterations", "5");
    CHECK(c.search.max_iterations == 5);
    apply_setting(c, "revisit_guard", "false");
    CHECK_FALSE(c.search.revisit_guard);
    apply_setting(c, "revisit_guard", "1");
    CHECK(c.search.revisit_guard);
    apply_setting(c, "revisit_guard", "off");
    CHECK_FALSE(c.search.revisit_guard);

    apply_setting(c, "k_neighbors", "3");
    CHECK(c.edits.substitution.k_neighbors == 3);
    apply_setting(c, "sub_similarity_threshold", "0.75");
    CHECK(c.edits.substitution.similarity_threshold == 0.75);

    apply_setting(c, "phrase_tags", "NP,PP");
    CHECK(c.edits.tags() == std::set<std::string>{"NP", "PP"});
    apply_setting(c, "reorder_scope", "all");
    CHECK(c.edits.reorder_scope == ReorderScope::all);
    apply_setting(c, "reorder_scope", "siblings");
    CHECK(c.edits.reorder_scope == ReorderScope::siblings);

    apply_setting(c, "lm_order", "4");
    CHECK(c.lm_order == 4);
    apply_setting(c, "lm_weights", "0.5,0.3,0.2");
    CHECK(c.lm_weights == std::array<double, 3>{0.5, 0.3, 0.2});
    apply_setting(c, "sari_delete", "precision");
    CHECK(c.sari_delete == SariDeleteMode::precision);
    apply_setting(c, "sari_delete", "f1");
    CHECK(c.sari_delete == SariDeleteMode::f1);
}

TEST_CASE("bad settings raise configuration errors") {
    PipelineConfig c = profile("newsela");
    CHECK_THROWS_AS(apply_setting(c, "nonsense", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "alpha", "abc"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "alpha", "-1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "min_length", "0"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "min_length", "2.5"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "tau", "1.5"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "revisit_guard", "maybe"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "reorder_scope", "cousins"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "lm_order", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "lm_order", "6"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "r_all", "0"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "max_iterations", "0"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "phrase_tags", ""), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "sari_delete", "recall"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "k_neighbors", "-1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "sub_similarity_threshold", "2"), ConfigError);
}

TEST_CASE("model interpolation weights are validated") {
    CHECK(parse_lm_weights("0.7,0.2,0.1") == std::array<double, 3>{0.7, 0.2, 0.1});
    CHECK(parse_lm_weights("0,0,1") == std::array<double, 3>{0.0, 0.0, 1.0});
    CHECK_THROWS_AS(parse_lm_weights("0.7,0.3"), ConfigError);
    CHECK_THROWS_AS(parse_lm_weights("0.7,0.2,0.2"), ConfigError);     // sums to 1.1
    CHECK_THROWS_AS(parse_lm_weights("0.9,0.2,-0.1"), ConfigError);    // negative stage
    CHECK_THROWS_AS(parse_lm_weights("0.8,0.2,0"), ConfigError);       // uniform stage zero
    CHECK_THROWS_AS(parse_lm_weights("a,b,c"), ConfigError);
}

TEST_CASE("config files apply line by line with comments") {
    test::TempDir tmp;
    test::write_file(tmp.path("good.conf"),
                     "# scoring\n"
                     "alpha = 0.5\n"
                     "\n"
                     "r_all = 1.1\n"
                     "r_substitution = 0.8   # later lines win\n"
                     "alpha = 0.25\n");
    PipelineConfig c = profile("newsela");
    apply_config_file(c, tmp.path("good.conf"));
    CHECK(c.scoring.alpha == 0.25);
    CHECK(c.search.thresholds.removal == 1.1);
    CHECK(c.search.thresholds.substitution == 0.8);

    test::write_file(tmp.path("bad.conf"), "alpha = 0.5\nwhatever = 1\n");
    PipelineConfig d = profile("newsela");
    CHECK_THROWS_AS(apply_config_file(d, tmp.path("bad.conf")), ConfigError);

    test::write_file(tmp.path("noeq.conf"), "alpha 0.5\n");
    CHECK_THROWS_AS(apply_config_file(d, tmp.path("noeq.conf")), ConfigError);

    CHECK_THROWS_AS(apply_config_file(d, tmp.path("missing.conf")), ConfigError);
}

TEST_CASE("configurations serialize to json") {
    PipelineConfig c = profile("wikilarge");
    nlohmann::json j = nlohmann::json::parse(config_json(c));
    CHECK(j["alpha"].get<double>() == 0.5);
    CHECK(j["gamma"].get<double>() == 0.25);
    CHECK(j["r_substitution"].get<double>() == 0.8);
    CHECK(j["r_extraction"].get<double>() == 5.0);
    CHECK(j["revisit_guard"].get<bool>() == true);
}
