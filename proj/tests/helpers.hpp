#ifndef EDISIM_TEST_HELPERS_HPP
#define EDISIM_TEST_HELPERS_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edisim/annotated.hpp"

namespace edisim::test {

inline std::string fixture(const std::string& name) {
    return std::string(EDISIM_FIXTURE_DIR) + "/" + name;
}

// Scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("edisim_test_" + std::to_string(counter++) + "_" +
                 std::to_string(reinterpret_cast<std::uintptr_t>(this) & 0xffff));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string path(const std::string& name = "") const {
        return name.empty() ? path_.string() : (path_ / name).string();
    }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline AnnotatedToken tok(std::string text, std::string pos, std::string dep,
                          bool entity = false) {
    return AnnotatedToken{std::move(text), std::move(pos), std::move(dep), entity};
}

// Sentence from a bracketed parse plus one "POS:dep" spec per leaf;
// a '!' prefix marks the token as an entity.
inline AnnotatedSentence sent(const std::string& parse,
                              const std::vector<std::string>& tag_specs) {
    BracketedParse parsed = parse_bracketed(parse);
    if (parsed.leaves.size() != tag_specs.size())
        throw std::runtime_error("sent(): tag spec count does not match leaf count");
    AnnotatedSentence s;
    s.tree = std::move(parsed.tree);
    for (size_t i = 0; i < parsed.leaves.size(); ++i) {
        std::string spec = tag_specs[i];
        AnnotatedToken t;
        if (!spec.empty() && spec[0] == '!') {
            t.is_entity = true;
            spec.erase(0, 1);
        }
        auto colon = spec.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("sent(): tag spec needs POS:dep, got " + spec);
        t.text = parsed.leaves[i];
        t.pos = spec.substr(0, colon);
        t.dep = spec.substr(colon + 1);
        s.tokens.push_back(std::move(t));
    }
    return s;
}

// Flat tree (every token a preterminal under one S) for tests that only
// care about the token sequence.
inline AnnotatedSentence flat(const std::vector<AnnotatedToken>& tokens) {
    AnnotatedSentence s;
    s.tokens = tokens;
    ParseTree clause;
    clause.label = "S";
    clause.begin = 0;
    clause.end = static_cast<int>(tokens.size());
    for (int i = 0; i < clause.end; ++i) {
        ParseTree leaf;
        leaf.label = tokens[i].pos;
        leaf.begin = i;
        leaf.end = i + 1;
        clause.children.push_back(std::move(leaf));
    }
    ParseTree root;
    root.label = "ROOT";
    root.begin = 0;
    root.end = clause.end;
    root.children.push_back(std::move(clause));
    s.tree = std::move(root);
    return s;
}

} // namespace edisim::test

#endif
