#ifndef EDISIM_METRICS_HPP
#define EDISIM_METRICS_HPP

#include <string>
#include <vector>

namespace edisim {

// One evaluation record: tokenized source, system output, and one or more
// tokenized references. Metrics treat tokens case-insensitively.
struct EvalRecord {
    std::vector<std::string> src;
    std::vector<std::string> out;
    std::vector<std::vector<std::string>> refs;
};

EvalRecord parse_eval_record(const std::string& line, const std::string& where);
std::vector<EvalRecord> load_eval_records(const std::string& path);

enum class SariDeleteMode { f1, precision };

struct SariScores {
    double sari = 0.0;
    double add = 0.0;
    double del = 0.0;
    double keep = 0.0;
};

// SARI over n-grams of order 1..max_n, micro-averaged per order and averaged
// over orders; add/keep are F1, deletion is F1 or precision by mode.
// Source-side counts are scaled by the reference count so single-reference
// and multi-reference corpora are comparable.
SariScores sari(const std::vector<EvalRecord>& records, int max_n = 4,
                SariDeleteMode delete_mode = SariDeleteMode::f1);

// Corpus BLEU: modified n-gram precision up to max_n with per-type clipping
// against all references, brevity penalty from the closest-length reference
// per record (ties: shorter), and a 1e-9 floor replacing zero precisions.
// Scaled to [0, 100].
double bleu(const std::vector<EvalRecord>& records, int max_n = 4);

// Flesch-Kincaid grade level / Flesch Reading Ease over the pooled output
// side (every record one sentence).
double corpus_fkgl(const std::vector<EvalRecord>& records);
double corpus_fre(const std::vector<EvalRecord>& records);

double mean_output_length(const std::vector<EvalRecord>& records);

struct MetricReport {
    SariScores sari;
    double bleu = 0.0;
    double gm = 0.0;    // sqrt(sari * bleu)
    double fkgl = 0.0;
    double fre = 0.0;
    double mean_length = 0.0;
    int records = 0;
};

MetricReport evaluate(const std::vector<EvalRecord>& records,
                      SariDeleteMode delete_mode = SariDeleteMode::f1);

std::string report_json(const MetricReport& report);
std::string report_table(const MetricReport& report);

} // namespace edisim

#endif
