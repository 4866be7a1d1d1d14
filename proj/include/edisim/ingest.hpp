#ifndef EDISIM_INGEST_HPP
#define EDISIM_INGEST_HPP

#include <string>
#include <vector>

#include "edisim/annotated.hpp"

namespace edisim {

// One corpus record per line:
//   {"tokens": [{"t": "In", "p": "IN", "d": "prep", "e": false}, ...],
//    "parse": "(ROOT (S ...))"}
// "e" defaults to false when absent. The parse leaf count must match the
// token list; leaf order corresponds to token order.
AnnotatedSentence parse_corpus_record(const std::string& line, const std::string& where);

std::vector<AnnotatedSentence> load_corpus(const std::string& path);

// Canonical single-line JSON for one record (sorted keys, no whitespace).
std::string corpus_record_json(const AnnotatedSentence& sentence);

void save_corpus(const std::vector<AnnotatedSentence>& corpus, const std::string& path);

} // namespace edisim

#endif
