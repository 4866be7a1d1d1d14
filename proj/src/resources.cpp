#include "edisim/resources.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "edisim/errors.hpp"
#include "edisim/ingest.hpp"

namespace edisim {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const unsigned char* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 14695981039346656037ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open file for hashing: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    return fnv1a64(bytes.data(), bytes.size());
}

ResourceBundle build_bundle(const std::vector<AnnotatedSentence>& corpus,
                            const std::vector<EmbeddingTable>& embeddings,
                            const SynonymTable& synonyms, int lm_order,
                            const std::array<double, 3>& lm_weights) {
    if (corpus.empty()) throw ResourceError("cannot build a bundle from an empty corpus");
    if (embeddings.empty() || embeddings.size() > 2)
        throw ResourceError("bundle needs one or two embedding tables, got " +
                            std::to_string(embeddings.size()));
    ResourceBundle bundle;
    bundle.lm = train_lm(corpus, lm_order, lm_weights);
    FrequencyTables tables = build_frequency_tables(corpus);
    bundle.unigrams = std::move(tables.unigrams);
    bundle.idf = std::move(tables.idf);
    bundle.embeddings = embeddings;
    bundle.synonyms = synonyms;
    bundle.lexicon = build_tag_lexicon(corpus);
    return bundle;
}

ResourceBundle build_bundle(const BundleInputs& inputs) {
    std::vector<AnnotatedSentence> corpus = load_corpus(inputs.corpus_path);
    std::vector<EmbeddingTable> embeddings;
    for (const std::string& path : inputs.embedding_paths)
        embeddings.push_back(load_embedding_table(path));
    SynonymTable synonyms;
    if (!inputs.synonym_path.empty()) synonyms = load_synonym_table(inputs.synonym_path);
    return build_bundle(corpus, embeddings, synonyms, inputs.lm_order, inputs.lm_weights);
}

namespace {

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

constexpr const char* kManifestName = "manifest.txt";
constexpr const char* kManifestHeader = "edisim-bundle 1";

} // namespace

void save_bundle(const ResourceBundle& bundle, const std::string& dir) {
    if (!bundle.lm) throw ResourceError("bundle has no language model");
    const NGramModel* model = dynamic_cast<const NGramModel*>(bundle.lm.get());
    if (!model) throw ResourceError("only n-gram language models can be persisted");

    fs::create_directories(dir);
    std::vector<std::pair<std::string, std::string>> members;  // role, filename

    save_lm(*model, (fs::path(dir) / "lm.json").string());
    members.emplace_back("lm", "lm.json");
    save_unigram_table(bundle.unigrams, (fs::path(dir) / "unigrams.tsv").string());
    members.emplace_back("unigrams", "unigrams.tsv");
    save_idf_table(bundle.idf, (fs::path(dir) / "idf.tsv").string());
    members.emplace_back("idf", "idf.tsv");
    for (size_t i = 0; i < bundle.embeddings.size(); ++i) {
        std::string name = "embedding_" + std::to_string(i) + ".txt";
        save_embedding_table(bundle.embeddings[i], (fs::path(dir) / name).string());
        members.emplace_back("embedding", name);
    }
    save_synonym_table(bundle.synonyms, (fs::path(dir) / "synonyms.tsv").string());
    members.emplace_back("synonyms", "synonyms.tsv");
    save_tag_lexicon(bundle.lexicon, (fs::path(dir) / "lexicon.tsv").string());
    members.emplace_back("lexicon", "lexicon.tsv");

    std::ofstream manifest(fs::path(dir) / kManifestName);
    if (!manifest) throw ResourceError("cannot write bundle manifest in " + dir);
    manifest << kManifestHeader << '\n';
    for (const auto& [role, name] : members) {
        std::uint64_t hash = fnv1a64_file((fs::path(dir) / name).string());
        manifest << role << '\t' << name << '\t' << "fnv1a64:" << hex64(hash) << '\n';
    }
}

ResourceBundle load_bundle(const std::string& dir) {
    fs::path manifest_path = fs::path(dir) / kManifestName;
    std::ifstream manifest(manifest_path);
    if (!manifest) throw ResourceError("no bundle manifest at " + manifest_path.string());

    std::string line;
    if (!std::getline(manifest, line) || line != kManifestHeader)
        throw ResourceError("unrecognized bundle manifest header in " + manifest_path.string());

    ResourceBundle bundle;
    int lineno = 1;
    while (std::getline(manifest, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = manifest_path.string() + ":" + std::to_string(lineno);
        size_t tab1 = line.find('\t');
        size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw ResourceError(where + ": manifest line needs role, filename, and hash");
        std::string role = line.substr(0, tab1);
        std::string name = line.substr(tab1 + 1, tab2 - tab1 - 1);
        std::string hash = line.substr(tab2 + 1);
        if (hash.rfind("fnv1a64:", 0) != 0)
            throw ResourceError(where + ": unsupported hash kind in '" + hash + "'");

        std::string path = (fs::path(dir) / name).string();
        std::string actual = "fnv1a64:" + hex64(fnv1a64_file(path));
        if (actual != hash)
            throw ResourceError("bundle member '" + name + "' is corrupt: manifest records " + hash +
                                " but the file hashes to " + actual);

        if (role == "lm") {
            bundle.lm = std::make_shared<NGramModel>(load_lm(path));
        } else if (role == "unigrams") {
            bundle.unigrams = load_unigram_table(path);
        } else if (role == "idf") {
            bundle.idf = load_idf_table(path);
        } else if (role == "embedding") {
            bundle.embeddings.push_back(load_embedding_table(path));
        } else if (role == "synonyms") {
            bundle.synonyms = load_synonym_table(path);
        } else if (role == "lexicon") {
            bundle.lexicon = load_tag_lexicon(path);
        } else {
            throw ResourceError(where + ": unknown bundle member role '" + role + "'");
        }
    }
    if (!bundle.lm) throw ResourceError("bundle manifest lists no language model: " + dir);
    return bundle;
}

ValidationReport validate_bundle(const ResourceBundle& bundle) {
    ValidationReport report;
    if (!bundle.lm) report.errors.push_back("no language model");
    if (bundle.embeddings.empty() || bundle.embeddings.size() > 2)
        report.errors.push_back("bundle needs one or two embedding tables, has " +
                                std::to_string(bundle.embeddings.size()));
    for (size_t i = 0; i < bundle.embeddings.size(); ++i) {
        const EmbeddingTable& table = bundle.embeddings[i];
        if (table.vectors.empty())
            report.errors.push_back("embedding table " + std::to_string(i) + " is empty");
        if (table.dimension <= 0 && !table.vectors.empty())
            report.errors.push_back("embedding table " + std::to_string(i) + " has no dimension");
    }
    if (bundle.unigrams.counts.empty()) report.errors.push_back("unigram table is empty");
    if (bundle.idf.scores.empty()) report.warnings.push_back("idf table is empty");
    if (bundle.synonyms.entries.empty()) report.warnings.push_back("synonym table is empty");
    if (bundle.lexicon.pos_tags.empty()) report.warnings.push_back("tag lexicon is empty");

    const NGramModel* model = dynamic_cast<const NGramModel*>(bundle.lm.get());
    if (model && !bundle.idf.scores.empty()) {
        bool overlap = false;
        for (const AnnotatedToken& t : model->event_vocabulary()) {
            if (bundle.idf.scores.count(t.text)) {
                overlap = true;
                break;
            }
        }
        if (!overlap)
            report.warnings.push_back("language model vocabulary is disjoint from the idf table");
    }
    return report;
}

} // namespace edisim
