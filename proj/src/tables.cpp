#include "edisim/tables.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "edisim/errors.hpp"

namespace edisim {

namespace {

std::string fmt_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    for (std::string& p : split(s, ','))
        if (!p.empty()) parts.push_back(std::move(p));
    return parts;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": not a number: '" + s + "'");
    }
}

std::int64_t parse_count(const std::string& s, const std::string& where) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": not a nonnegative integer: '" + s + "'");
    }
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open file: " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot write file: " + path);
    return out;
}

} // namespace

double UnigramTable::prob(const std::string& word) const {
    double denom = static_cast<double>(total + vocab_size());
    if (denom <= 0.0) return 1.0;
    auto it = counts.find(word);
    double count = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    return (count + 1.0) / denom;
}

double UnigramTable::logprob(const std::string& word) const { return std::log(prob(word)); }

double IdfTable::idf(const std::string& word) const {
    auto it = scores.find(word);
    return it == scores.end() ? default_score : it->second;
}

FrequencyTables build_frequency_tables(const std::vector<AnnotatedSentence>& corpus) {
    FrequencyTables tables;
    std::unordered_map<std::string, std::int64_t> df;
    for (const AnnotatedSentence& s : corpus) {
        std::set<std::string> seen;
        for (const AnnotatedToken& t : s.tokens) {
            tables.unigrams.counts[t.text] += 1;
            tables.unigrams.total += 1;
            seen.insert(t.text);
        }
        for (const std::string& w : seen) df[w] += 1;
    }
    double n = static_cast<double>(corpus.size());
    if (n > 0) {
        for (const auto& [word, count] : df)
            tables.idf.scores[word] = std::log(n / (1.0 + static_cast<double>(count))) + 1.0;
        tables.idf.default_score = std::log(n) + 1.0;
    }
    return tables;
}

const Eigen::VectorXd* EmbeddingTable::find(const std::string& word) const {
    auto it = vectors.find(word);
    return it == vectors.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, double>> EmbeddingTable::nearest(const std::string& word,
                                                                    int k) const {
    const Eigen::VectorXd* v = find(word);
    if (!v || k <= 0) return {};
    std::vector<std::pair<std::string, double>> all;
    all.reserve(vectors.size());
    for (const auto& [other, vec] : vectors) {
        if (other == word) continue;
        all.emplace_back(other, (vec - *v).norm());
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    if (static_cast<int>(all.size()) > k) all.resize(static_cast<size_t>(k));
    return all;
}

const std::set<std::string>* SynonymTable::find(const std::string& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
}

bool TagLexicon::attested(const std::string& word, const std::string& pos,
                          const std::string& dep) const {
    auto p = pos_tags.find(word);
    auto d = dep_tags.find(word);
    return p != pos_tags.end() && d != dep_tags.end() && p->second.count(pos) > 0 &&
           d->second.count(dep) > 0;
}

TagLexicon build_tag_lexicon(const std::vector<AnnotatedSentence>& corpus) {
    TagLexicon lex;
    for (const AnnotatedSentence& s : corpus) {
        for (const AnnotatedToken& t : s.tokens) {
            lex.pos_tags[t.text].insert(t.pos);
            lex.dep_tags[t.text].insert(t.dep);
        }
    }
    return lex;
}

UnigramTable load_unigram_table(const std::string& path) {
    std::ifstream in = open_in(path);
    UnigramTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(lineno);
        auto parts = split(line, '\t');
        if (parts.size() != 2 || parts[0].empty())
            throw ParseError(where + ": expected 'word<TAB>count'");
        std::int64_t count = parse_count(parts[1], where);
        table.counts[parts[0]] = count;
        table.total += count;
    }
    return table;
}

void save_unigram_table(const UnigramTable& table, const std::string& path) {
    std::ofstream out = open_out(path);
    std::map<std::string, std::int64_t> sorted(table.counts.begin(), table.counts.end());
    for (const auto& [word, count] : sorted) out << word << '\t' << count << '\n';
}

IdfTable load_idf_table(const std::string& path) {
    std::ifstream in = open_in(path);
    IdfTable table;
    bool have_default = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(lineno);
        auto parts = split(line, '\t');
        if (parts.size() != 2) throw ParseError(where + ": expected 'word<TAB>score'");
        double score = parse_double(parts[1], where);
        if (parts[0].empty()) {
            // empty word field carries the out-of-table default
            table.default_score = score;
            have_default = true;
        } else {
            table.scores[parts[0]] = score;
        }
    }
    if (!have_default) {
        double best = 1.0;
        for (const auto& [word, score] : table.scores) best = std::max(best, score);
        table.default_score = best;
    }
    return table;
}

void save_idf_table(const IdfTable& table, const std::string& path) {
    std::ofstream out = open_out(path);
    out << '\t' << fmt_double(table.default_score) << '\n';
    std::map<std::string, double> sorted(table.scores.begin(), table.scores.end());
    for (const auto& [word, score] : sorted) out << word << '\t' << fmt_double(score) << '\n';
}

EmbeddingTable load_embedding_table(const std::string& path) {
    std::ifstream in = open_in(path);
    EmbeddingTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(lineno);
        std::istringstream row(line);
        std::string word;
        row >> word;
        std::vector<double> values;
        std::string field;
        while (row >> field) values.push_back(parse_double(field, where));
        if (word.empty() || values.empty())
            throw ParseError(where + ": expected 'word v1 ... vD'");
        if (table.dimension == 0) table.dimension = static_cast<int>(values.size());
        if (static_cast<int>(values.size()) != table.dimension)
            throw ParseError(where + ": dimension " + std::to_string(values.size()) +
                             " does not match table dimension " + std::to_string(table.dimension));
        Eigen::VectorXd v(table.dimension);
        for (int i = 0; i < table.dimension; ++i) v[i] = values[static_cast<size_t>(i)];
        table.vectors[word] = std::move(v);
    }
    return table;
}

void save_embedding_table(const EmbeddingTable& table, const std::string& path) {
    std::ofstream out = open_out(path);
    std::map<std::string, const Eigen::VectorXd*> sorted;
    for (const auto& [word, vec] : table.vectors) sorted[word] = &vec;
    for (const auto& [word, vec] : sorted) {
        out << word;
        for (int i = 0; i < vec->size(); ++i) out << ' ' << fmt_double((*vec)[i]);
        out << '\n';
    }
}

SynonymTable load_synonym_table(const std::string& path) {
    std::ifstream in = open_in(path);
    SynonymTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(lineno);
        auto parts = split(line, '\t');
        if (parts.size() != 2 || parts[0].empty())
            throw ParseError(where + ": expected 'word<TAB>syn1,syn2,...'");
        auto& set = table.entries[parts[0]];
        for (std::string& syn : split_list(parts[1])) set.insert(std::move(syn));
    }
    return table;
}

void save_synonym_table(const SynonymTable& table, const std::string& path) {
    std::ofstream out = open_out(path);
    for (const auto& [word, syns] : table.entries) {
        out << word << '\t';
        bool first = true;
        for (const std::string& s : syns) {
            if (!first) out << ',';
            out << s;
            first = false;
        }
        out << '\n';
    }
}

TagLexicon load_tag_lexicon(const std::string& path) {
    std::ifstream in = open_in(path);
    TagLexicon lex;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(lineno);
        auto parts = split(line, '\t');
        if (parts.size() != 3 || parts[0].empty())
            throw ParseError(where + ": expected 'word<TAB>pos,...<TAB>dep,...'");
        for (std::string& p : split_list(parts[1])) lex.pos_tags[parts[0]].insert(std::move(p));
        for (std::string& d : split_list(parts[2])) lex.dep_tags[parts[0]].insert(std::move(d));
    }
    return lex;
}

void save_tag_lexicon(const TagLexicon& lexicon, const std::string& path) {
    std::ofstream out = open_out(path);
    for (const auto& [word, pos] : lexicon.pos_tags) {
        out << word << '\t';
        bool first = true;
        for (const std::string& p : pos) {
            if (!first) out << ',';
            out << p;
            first = false;
        }
        out << '\t';
        first = true;
        auto dep = lexicon.dep_tags.find(word);
        if (dep != lexicon.dep_tags.end()) {
            for (const std::string& d : dep->second) {
                if (!first) out << ',';
                out << d;
                first = false;
            }
        }
        out << '\n';
    }
}

} // namespace edisim
