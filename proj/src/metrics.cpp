#include "edisim/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

#include "edisim/errors.hpp"
#include "edisim/readability.hpp"

namespace edisim {

using nlohmann::json;

namespace {

std::string lowercase(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string> lowercase_all(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) out.push_back(lowercase(t));
    return out;
}

using Counts = std::map<std::string, long long>;

Counts ngram_counts(const std::vector<std::string>& tokens, int n) {
    Counts counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (size_t i = 0; i + static_cast<size_t>(n) <= tokens.size(); ++i) {
        std::string key;
        for (int j = 0; j < n; ++j) {
            if (j) key += '\x1f';
            key += tokens[i + static_cast<size_t>(j)];
        }
        counts[key] += 1;
    }
    return counts;
}

long long total(const Counts& c) {
    long long sum = 0;
    for (const auto& [key, count] : c) sum += count;
    return sum;
}

Counts scale(const Counts& c, long long factor) {
    Counts out = c;
    for (auto& [key, count] : out) count *= factor;
    return out;
}

Counts intersect(const Counts& a, const Counts& b) {
    Counts out;
    for (const auto& [key, count] : a) {
        auto it = b.find(key);
        if (it != b.end()) out[key] = std::min(count, it->second);
    }
    return out;
}

Counts subtract(const Counts& a, const Counts& b) {
    Counts out;
    for (const auto& [key, count] : a) {
        auto it = b.find(key);
        long long rest = count - (it == b.end() ? 0 : it->second);
        if (rest > 0) out[key] = rest;
    }
    return out;
}

// Empty-set convention: both produced and target empty -> 1; exactly one
// empty -> 0; otherwise F1 (or bare precision) over the matched mass.
double component_score(long long matched, long long produced, long long target, bool use_f1) {
    if (produced == 0 && target == 0) return 1.0;
    if (produced == 0 || target == 0) return 0.0;
    double precision = static_cast<double>(matched) / static_cast<double>(produced);
    if (!use_f1) return precision;
    double recall = static_cast<double>(matched) / static_cast<double>(target);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

struct SariComponents {
    double add = 0.0, del = 0.0, keep = 0.0;
};

SariComponents sari_for_n(const std::vector<std::string>& src, const std::vector<std::string>& out,
                          const std::vector<std::vector<std::string>>& refs, int n,
                          SariDeleteMode delete_mode) {
    long long numref = static_cast<long long>(refs.size());
    Counts s = ngram_counts(src, n);
    Counts c = ngram_counts(out, n);
    Counts r;
    for (const auto& ref : refs)
        for (const auto& [key, count] : ngram_counts(ref, n)) r[key] += count;
    Counts s_rep = scale(s, numref);
    Counts c_rep = scale(c, numref);

    SariComponents result;

    // keep: n-grams retained from the source, credited when references
    // retain them too; counts are reference-scaled multisets
    Counts kept = intersect(s_rep, c_rep);
    Counts keep_target = intersect(s_rep, r);
    Counts keep_good = intersect(kept, r);
    result.keep = component_score(total(keep_good), total(kept), total(keep_target), true);

    // delete: n-grams dropped from the source, credited when references
    // drop them too
    Counts deleted = subtract(s_rep, c_rep);
    Counts del_target = subtract(s_rep, r);
    Counts del_good = subtract(deleted, r);
    result.del = component_score(total(del_good), total(deleted), total(del_target),
                                 delete_mode == SariDeleteMode::f1);

    // add: new n-gram types absent from the source, credited when they
    // appear in some reference
    std::set<std::string> s_types, c_types, r_types;
    for (const auto& [key, count] : s) s_types.insert(key);
    for (const auto& [key, count] : c) c_types.insert(key);
    for (const auto& [key, count] : r) r_types.insert(key);
    long long added = 0, add_good = 0, add_target = 0;
    for (const std::string& key : c_types) {
        if (s_types.count(key)) continue;
        ++added;
        if (r_types.count(key)) ++add_good;
    }
    for (const std::string& key : r_types)
        if (!s_types.count(key)) ++add_target;
    result.add = component_score(add_good, added, add_target, true);

    return result;
}

} // namespace

EvalRecord parse_eval_record(const std::string& line, const std::string& where) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(where + ": invalid JSON: " + e.what());
    }
    auto tokens_of = [&](const json& arr, const std::string& field) {
        if (!arr.is_array() || arr.empty())
            throw ParseError(where + ": \"" + field + "\" must be a non-empty token array");
        std::vector<std::string> out;
        for (const auto& t : arr) {
            if (!t.is_string() || t.get<std::string>().empty())
                throw ParseError(where + ": \"" + field + "\" holds a non-string or empty token");
            out.push_back(t.get<std::string>());
        }
        return out;
    };
    if (!j.is_object() || !j.contains("src") || !j.contains("out") || !j.contains("refs"))
        throw ParseError(where + ": record needs \"src\", \"out\", and \"refs\"");
    EvalRecord record;
    record.src = tokens_of(j["src"], "src");
    record.out = tokens_of(j["out"], "out");
    if (!j["refs"].is_array() || j["refs"].empty())
        throw ParseError(where + ": \"refs\" must be a non-empty array of token arrays");
    for (size_t i = 0; i < j["refs"].size(); ++i)
        record.refs.push_back(tokens_of(j["refs"][i], "refs[" + std::to_string(i) + "]"));
    return record;
}

std::vector<EvalRecord> load_eval_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open records file: " + path);
    std::vector<EvalRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        records.push_back(parse_eval_record(line, path + ":" + std::to_string(lineno)));
    }
    return records;
}

SariScores sari(const std::vector<EvalRecord>& records, int max_n, SariDeleteMode delete_mode) {
    if (records.empty()) throw std::invalid_argument("sari: no evaluation records");
    if (max_n < 1 || max_n > 4) throw std::invalid_argument("sari: max_n must be in [1, 4]");
    SariScores scores;
    for (const EvalRecord& record : records) {
        std::vector<std::string> src = lowercase_all(record.src);
        std::vector<std::string> out = lowercase_all(record.out);
        std::vector<std::vector<std::string>> refs;
        refs.reserve(record.refs.size());
        for (const auto& ref : record.refs) refs.push_back(lowercase_all(ref));

        SariComponents mean;
        for (int n = 1; n <= max_n; ++n) {
            SariComponents c = sari_for_n(src, out, refs, n, delete_mode);
            mean.add += c.add;
            mean.del += c.del;
            mean.keep += c.keep;
        }
        scores.add += mean.add / max_n;
        scores.del += mean.del / max_n;
        scores.keep += mean.keep / max_n;
    }
    double n = static_cast<double>(records.size());
    scores.add = 100.0 * scores.add / n;
    scores.del = 100.0 * scores.del / n;
    scores.keep = 100.0 * scores.keep / n;
    scores.sari = (scores.add + scores.del + scores.keep) / 3.0;
    return scores;
}

double bleu(const std::vector<EvalRecord>& records, int max_n) {
    if (records.empty()) throw std::invalid_argument("bleu: no evaluation records");
    if (max_n < 1) throw std::invalid_argument("bleu: max_n must be positive");
    std::vector<long long> matched(static_cast<size_t>(max_n), 0);
    std::vector<long long> produced(static_cast<size_t>(max_n), 0);
    long long out_len = 0, ref_len = 0;

    for (const EvalRecord& record : records) {
        std::vector<std::string> out = lowercase_all(record.out);
        std::vector<std::vector<std::string>> refs;
        refs.reserve(record.refs.size());
        for (const auto& ref : record.refs) refs.push_back(lowercase_all(ref));

        out_len += static_cast<long long>(out.size());
        long long best_len = static_cast<long long>(refs.front().size());
        for (const auto& ref : refs) {
            long long len = static_cast<long long>(ref.size());
            long long d_new = std::llabs(len - static_cast<long long>(out.size()));
            long long d_old = std::llabs(best_len - static_cast<long long>(out.size()));
            if (d_new < d_old || (d_new == d_old && len < best_len)) best_len = len;
        }
        ref_len += best_len;

        for (int n = 1; n <= max_n; ++n) {
            Counts c = ngram_counts(out, n);
            Counts clip;  // per-type maximum over references
            for (const auto& ref : refs)
                for (const auto& [key, count] : ngram_counts(ref, n)) {
                    long long& slot = clip[key];
                    slot = std::max(slot, count);
                }
            produced[static_cast<size_t>(n - 1)] += total(c);
            matched[static_cast<size_t>(n - 1)] += total(intersect(c, clip));
        }
    }

    double log_precision = 0.0;
    for (int n = 0; n < max_n; ++n) {
        double p = produced[static_cast<size_t>(n)] > 0
                       ? static_cast<double>(matched[static_cast<size_t>(n)]) /
                             static_cast<double>(produced[static_cast<size_t>(n)])
                       : 0.0;
        if (p == 0.0) p = 1e-9;
        log_precision += std::log(p) / max_n;
    }
    double brevity = out_len >= ref_len
                         ? 1.0
                         : std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(out_len));
    return 100.0 * brevity * std::exp(log_precision);
}

namespace {

ReadabilityCounts pooled_counts(const std::vector<EvalRecord>& records) {
    ReadabilityCounts pooled;
    for (const EvalRecord& record : records) {
        ReadabilityCounts c = count_readability(record.out);
        pooled.sentences += c.sentences;
        pooled.words += c.words;
        pooled.syllables += c.syllables;
    }
    return pooled;
}

} // namespace

double corpus_fkgl(const std::vector<EvalRecord>& records) {
    if (records.empty()) throw std::invalid_argument("fkgl: no evaluation records");
    return fkgl_from_counts(pooled_counts(records));
}

double corpus_fre(const std::vector<EvalRecord>& records) {
    if (records.empty()) throw std::invalid_argument("fre: no evaluation records");
    return fre_from_counts(pooled_counts(records));
}

double mean_output_length(const std::vector<EvalRecord>& records) {
    if (records.empty()) throw std::invalid_argument("length: no evaluation records");
    long long sum = 0;
    for (const EvalRecord& record : records) sum += static_cast<long long>(record.out.size());
    return static_cast<double>(sum) / static_cast<double>(records.size());
}

MetricReport evaluate(const std::vector<EvalRecord>& records, SariDeleteMode delete_mode) {
    if (records.empty()) throw std::invalid_argument("evaluate: no evaluation records");
    MetricReport report;
    report.sari = sari(records, 4, delete_mode);
    report.bleu = bleu(records, 4);
    report.gm = std::sqrt(report.sari.sari * report.bleu);
    report.fkgl = corpus_fkgl(records);
    report.fre = corpus_fre(records);
    report.mean_length = mean_output_length(records);
    report.records = static_cast<int>(records.size());
    return report;
}

std::string report_json(const MetricReport& report) {
    json j{{"sari", report.sari.sari},
           {"sari_add", report.sari.add},
           {"sari_delete", report.sari.del},
           {"sari_keep", report.sari.keep},
           {"bleu", report.bleu},
           {"gm", report.gm},
           {"fkgl", report.fkgl},
           {"fre", report.fre},
           {"avg_len", report.mean_length},
           {"records", report.records}};
    return j.dump();
}

std::string report_table(const MetricReport& report) {
    char buf[256];
    std::string out;
    out += "SARI    Add     Delete  Keep    BLEU    GM      FKGL    FRE     Len\n";
    std::snprintf(buf, sizeof buf, "%-7.2f %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f %-7.2f\n",
                  report.sari.sari, report.sari.add, report.sari.del, report.sari.keep, report.bleu,
                  report.gm, report.fkgl, report.fre, report.mean_length);
    out += buf;
    return out;
}

} // namespace edisim
