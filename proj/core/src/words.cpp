#include "aperiodica/words.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "aperiodica/errors.hpp"

namespace aperiodica {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw InputError("alphabet must not be empty");
  }
  if (symbols_.size() > std::numeric_limits<Letter>::max() + std::size_t{1}) {
    throw InputError("alphabet has more than 256 symbols");
  }
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) {
      throw InputError("alphabet symbols must be nonempty");
    }
    if (s.find('.') != std::string::npos) {
      throw InputError("alphabet symbol '" + s + "' contains the reserved separator '.'");
    }
    if (!seen.insert(s).second) {
      throw InputError("duplicate alphabet symbol '" + s + "'");
    }
    if (s.size() != 1) {
      single_char_ = false;
    }
  }
}

Alphabet Alphabet::latin(std::size_t size) {
  if (size == 0 || size > 26) {
    throw InputError("latin alphabet size must be in 1..26");
  }
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < size; ++i) {
    symbols.emplace_back(1, static_cast<char>('a' + i));
  }
  return Alphabet(std::move(symbols));
}

const std::string& Alphabet::symbol(Letter letter) const {
  if (letter >= symbols_.size()) {
    throw InputError("letter index " + std::to_string(letter) + " outside alphabet of size " +
                     std::to_string(symbols_.size()));
  }
  return symbols_[letter];
}

std::optional<Letter> Alphabet::index_of(std::string_view symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) {
    return std::nullopt;
  }
  return static_cast<Letter>(it - symbols_.begin());
}

bool Alphabet::contains(const Word& w) const {
  return std::all_of(w.begin(), w.end(), [&](Letter l) { return l < symbols_.size(); });
}

std::string Alphabet::format(std::span<const Letter> w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i > 0) {
      out += '.';
    }
    out += symbol(w[i]);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  auto push = [&](std::string_view token) {
    auto idx = index_of(token);
    if (!idx) {
      throw InputError("symbol '" + std::string(token) + "' is not in the alphabet");
    }
    w.push_back(*idx);
  };
  if (text.empty()) {
    return w;
  }
  if (text.find('.') != std::string_view::npos || !single_char_) {
    std::size_t start = 0;
    while (true) {
      auto dot = text.find('.', start);
      push(text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
      if (dot == std::string_view::npos) {
        break;
      }
      start = dot + 1;
    }
    return w;
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    push(text.substr(i, 1));
  }
  return w;
}

bool is_palindrome(std::span<const Letter> w) {
  return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.rbegin());
}

Word reversed(std::span<const Letter> w) {
  return Word(w.rbegin(), w.rend());
}

Word inner(std::span<const Letter> w) {
  if (w.size() < 2) {
    throw InputError("inner() needs a word of length at least 2, got " + std::to_string(w.size()));
  }
  return Word(w.begin() + 1, w.end() - 1);
}

WordSet palindromes_in(const WordSet& atlas) {
  WordSet out;
  if (atlas.empty()) {
    return out;
  }
  const auto length = atlas.begin()->size();
  for (const auto& w : atlas) {
    if (w.size() != length) {
      throw InputError("palindromes_in: atlas mixes word lengths " + std::to_string(length) +
                       " and " + std::to_string(w.size()));
    }
    if (is_palindrome(w)) {
      out.insert(w);
    }
  }
  return out;
}

PalindromeVerdict exclusion_verdict(const std::map<std::size_t, WordSet>& atlas_by_length) {
  if (atlas_by_length.empty()) {
    throw InputError("exclusion_verdict: no atlases supplied");
  }
  PalindromeVerdict verdict;
  std::size_t expected = 1;
  bool previous_free = false;
  for (const auto& [n, atlas] : atlas_by_length) {
    if (n != expected) {
      throw InputError("exclusion_verdict: atlas lengths must be 1..N_max without gaps; missing " +
                       std::to_string(expected));
    }
    ++expected;
    const bool free = palindromes_in(atlas).empty();
    if (!atlas.empty() && atlas.begin()->size() != n) {
      throw InputError("exclusion_verdict: atlas keyed " + std::to_string(n) + " holds words of length " +
                       std::to_string(atlas.begin()->size()));
    }
    if (!free) {
      verdict.lengths_with_palindromes.insert(n);
    } else if (previous_free && !verdict.first_excluding_pair) {
      verdict.first_excluding_pair = n - 1;
    }
    previous_free = free;
  }
  verdict.max_length_checked = expected - 1;
  verdict.status = verdict.first_excluding_pair ? PalindromicStatus::excluded : PalindromicStatus::undetermined;
  return verdict;
}

std::string to_string(PalindromicStatus status) {
  return status == PalindromicStatus::excluded ? "excluded" : "undetermined";
}

}  // namespace aperiodica
