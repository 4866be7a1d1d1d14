#include "edisim/readability.hpp"

#include <cctype>

namespace edisim {

bool is_word_token(const std::string& text) {
    for (char c : text)
        if (std::isalnum(static_cast<unsigned char>(c))) return true;
    return false;
}

namespace {

bool is_vowel(char c) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

} // namespace

int count_syllables(const std::string& word) {
    int groups = 0;
    bool in_group = false;
    for (char c : word) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    // terminal silent 'e' drops one group unless it is the only one
    if (groups > 1 && !word.empty()) {
        char last = static_cast<char>(std::tolower(static_cast<unsigned char>(word.back())));
        if (last == 'e') --groups;
    }
    return groups < 1 ? 1 : groups;
}

ReadabilityCounts count_readability(const std::vector<std::string>& tokens) {
    ReadabilityCounts c;
    c.sentences = 1;
    for (const std::string& t : tokens) {
        if (!is_word_token(t)) continue;
        ++c.words;
        c.syllables += count_syllables(t);
    }
    return c;
}

ReadabilityCounts count_readability(const AnnotatedSentence& sentence) {
    ReadabilityCounts c;
    c.sentences = 1;
    for (const AnnotatedToken& t : sentence.tokens) {
        if (!is_word_token(t.text)) continue;
        ++c.words;
        c.syllables += count_syllables(t.text);
    }
    return c;
}

double fre_from_counts(const ReadabilityCounts& c) {
    if (c.words == 0 || c.sentences == 0) return 0.0;
    double wps = static_cast<double>(c.words) / static_cast<double>(c.sentences);
    double spw = static_cast<double>(c.syllables) / static_cast<double>(c.words);
    return 206.835 - 1.015 * wps - 84.6 * spw;
}

double fkgl_from_counts(const ReadabilityCounts& c) {
    if (c.words == 0 || c.sentences == 0) return 0.0;
    double wps = static_cast<double>(c.words) / static_cast<double>(c.sentences);
    double spw = static_cast<double>(c.syllables) / static_cast<double>(c.words);
    return 0.39 * wps + 11.8 * spw - 15.59;
}

} // namespace edisim
