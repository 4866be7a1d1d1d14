#ifndef EDISIM_RESOURCES_HPP
#define EDISIM_RESOURCES_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "edisim/annotated.hpp"
#include "edisim/lm.hpp"
#include "edisim/tables.hpp"

namespace edisim {

// Everything scoring and candidate generation need, built once from a
// simple-register training corpus plus external embedding/synonym files.
// Immutable after construction; safe to share across threads.
struct ResourceBundle {
    std::shared_ptr<const SyntaxAwareLM> lm;
    UnigramTable unigrams;
    IdfTable idf;
    std::vector<EmbeddingTable> embeddings;  // first table drives cosine checks
    SynonymTable synonyms;
    TagLexicon lexicon;
};

struct BundleInputs {
    std::string corpus_path;
    std::vector<std::string> embedding_paths;
    std::string synonym_path;  // optional, empty for none
    int lm_order = 3;
    std::array<double, 3> lm_weights = {0.7, 0.2, 0.1};
};

ResourceBundle build_bundle(const BundleInputs& inputs);
ResourceBundle build_bundle(const std::vector<AnnotatedSentence>& corpus,
                            const std::vector<EmbeddingTable>& embeddings,
                            const SynonymTable& synonyms, int lm_order,
                            const std::array<double, 3>& lm_weights = {0.7, 0.2, 0.1});

// Persists the bundle as a directory of member files plus "manifest.txt"
// ("edisim-bundle 1" header, then role<TAB>filename<TAB>fnv1a64:<hex>).
// No timestamps: rebuilding from identical inputs is byte-identical.
void save_bundle(const ResourceBundle& bundle, const std::string& dir);

// Verifies every manifest hash before loading; a mismatch raises
// ResourceError naming the offending member.
ResourceBundle load_bundle(const std::string& dir);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

ValidationReport validate_bundle(const ResourceBundle& bundle);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);

} // namespace edisim

#endif
