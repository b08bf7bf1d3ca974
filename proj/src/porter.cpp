#include "aspectminer/porter.hpp"

#include <algorithm>
#include <array>

namespace aspectminer {

namespace {

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Word being stemmed. All predicates look at the stem w[0, len).
class Word {
 public:
  explicit Word(std::string_view w) : w_(w) {}

  const std::string& str() const { return w_; }
  std::size_t size() const { return w_.size(); }

  bool consonant(std::size_t i) const {
    switch (w_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  // m in [C](VC)^m[V] for the first len letters.
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
    char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view s) const {
    return w_.size() >= s.size() && std::string_view(w_).substr(w_.size() - s.size()) == s;
  }

  std::size_t stem_len(std::string_view suffix) const { return w_.size() - suffix.size(); }

  void replace_suffix(std::string_view suffix, std::string_view with) {
    w_.resize(w_.size() - suffix.size());
    w_ += with;
  }

  void chop() { w_.pop_back(); }
  void append(char c) { w_.push_back(c); }
  char last() const { return w_.back(); }

 private:
  std::string w_;
};

// Picks the longest matching suffix; applies it only if the stem measure
// exceeds `minMeasure`. Returns true when a suffix matched (applied or not).
template <std::size_t N>
bool apply_longest(Word& w, const std::array<Rule, N>& rules, int minMeasure) {
  const Rule* best = nullptr;
  for (const auto& r : rules)
    if (w.ends_with(r.suffix) && (!best || r.suffix.size() > best->suffix.size())) best = &r;
  if (!best) return false;
  if (w.measure(w.stem_len(best->suffix)) > minMeasure) w.replace_suffix(best->suffix, best->replacement);
  return true;
}

void step1a(Word& w) {
  if (w.ends_with("sses")) w.replace_suffix("sses", "ss");
  else if (w.ends_with("ies")) w.replace_suffix("ies", "i");
  else if (w.ends_with("ss")) return;
  else if (w.ends_with("s")) w.replace_suffix("s", "");
}

void step1b(Word& w) {
  bool removed = false;
  if (w.ends_with("eed")) {
    if (w.measure(w.stem_len("eed")) > 0) w.replace_suffix("eed", "ee");
    return;
  }
  if (w.ends_with("ed")) {
    if (w.has_vowel(w.stem_len("ed"))) {
      w.replace_suffix("ed", "");
      removed = true;
    }
  } else if (w.ends_with("ing")) {
    if (w.has_vowel(w.stem_len("ing"))) {
      w.replace_suffix("ing", "");
      removed = true;
    }
  }
  if (!removed) return;

  if (w.ends_with("at")) w.append('e');
  else if (w.ends_with("bl")) w.append('e');
  else if (w.ends_with("iz")) w.append('e');
  else if (w.double_consonant(w.size())) {
    char c = w.last();
    if (c != 'l' && c != 's' && c != 'z') w.chop();
  } else if (w.measure(w.size()) == 1 && w.cvc(w.size())) {
    w.append('e');
  }
}

void step1c(Word& w) {
  if (w.ends_with("y") && w.has_vowel(w.stem_len("y"))) w.replace_suffix("y", "i");
}

constexpr std::array<Rule, 20> kStep2{{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
    {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3{{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
}};

constexpr std::array<std::string_view, 19> kStep4{
    "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
    "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
};

void step4(Word& w) {
  std::string_view best;
  for (auto s : kStep4)
    if (w.ends_with(s) && s.size() > best.size()) best = s;
  if (best.empty()) return;
  const std::size_t len = w.stem_len(best);
  if (w.measure(len) <= 1) return;
  if (best == "ion") {
    char c = len > 0 ? w.str()[len - 1] : '\0';
    if (c != 's' && c != 't') return;
  }
  w.replace_suffix(best, "");
}

void step5(Word& w) {
  if (w.ends_with("e")) {
    const std::size_t len = w.stem_len("e");
    const int m = w.measure(len);
    if (m > 1 || (m == 1 && !w.cvc(len))) w.chop();
  }
  if (w.measure(w.size()) > 1 && w.double_consonant(w.size()) && w.last() == 'l') w.chop();
}

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.empty() ||
      !std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; }))
    return std::string(word);
  Word w(word);
  step1a(w);
  step1b(w);
  step1c(w);
  apply_longest(w, kStep2, 0);
  apply_longest(w, kStep3, 0);
  step4(w);
  step5(w);
  return w.str();
}

}  // namespace aspectminer
