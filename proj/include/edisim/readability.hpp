#ifndef EDISIM_READABILITY_HPP
#define EDISIM_READABILITY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "edisim/annotated.hpp"

namespace edisim {

// True when the token contains at least one alphanumeric character;
// punctuation-only tokens are not words for readability purposes.
bool is_word_token(const std::string& text);

// Vowel-group heuristic: count maximal runs of [aeiouy] (case-insensitive),
// subtract one for a terminal 'e' unless its group is the only one, floor
// at 1. Callers skip non-word tokens; this function assumes a word.
int count_syllables(const std::string& word);

struct ReadabilityCounts {
    std::int64_t sentences = 0;
    std::int64_t words = 0;
    std::int64_t syllables = 0;
};

ReadabilityCounts count_readability(const std::vector<std::string>& tokens);
ReadabilityCounts count_readability(const AnnotatedSentence& sentence);

// Flesch Reading Ease from pooled counts, unclamped. Zero-word input -> 0.
double fre_from_counts(const ReadabilityCounts& c);

// Flesch-Kincaid Grade Level from pooled counts. Zero-word input -> 0.
double fkgl_from_counts(const ReadabilityCounts& c);

} // namespace edisim

#endif
