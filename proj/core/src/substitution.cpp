#include "aperiodica/substitution.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_set>

#include "aperiodica/errors.hpp"

namespace aperiodica {

SubstitutionRule::SubstitutionRule(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != alphabet_.size()) {
    throw InputError("substitution needs one image per letter: alphabet has " + std::to_string(alphabet_.size()) +
                     " letters, got " + std::to_string(images_.size()) + " images");
  }
  for (std::size_t j = 0; j < images_.size(); ++j) {
    if (images_[j].empty()) {
      throw InputError("image of '" + alphabet_.symbols()[j] + "' is empty");
    }
    if (!alphabet_.contains(images_[j])) {
      throw InputError("image of '" + alphabet_.symbols()[j] + "' uses a letter outside the alphabet");
    }
  }
}

const Word& SubstitutionRule::image(Letter letter) const {
  if (letter >= images_.size()) {
    throw InputError("letter index " + std::to_string(letter) + " outside alphabet");
  }
  return images_[letter];
}

Word SubstitutionRule::apply(std::span<const Letter> w) const {
  std::size_t total = 0;
  for (Letter l : w) {
    total += image(l).size();
  }
  Word out;
  out.reserve(total);
  for (Letter l : w) {
    const auto& img = images_[l];
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

SubstitutionRule SubstitutionRule::power(unsigned k) const {
  std::vector<Word> images;
  images.reserve(size());
  for (std::size_t j = 0; j < size(); ++j) {
    Word w{static_cast<Letter>(j)};
    for (unsigned i = 0; i < k; ++i) {
      w = apply(w);
    }
    images.push_back(std::move(w));
  }
  return SubstitutionRule(alphabet_, std::move(images));
}

SubstitutionRule compose(const SubstitutionRule& outer, const SubstitutionRule& inner) {
  if (!(outer.alphabet() == inner.alphabet())) {
    throw InputError("compose: rules are over different alphabets");
  }
  std::vector<Word> images;
  images.reserve(inner.size());
  for (const auto& img : inner.images()) {
    images.push_back(outer.apply(img));
  }
  return SubstitutionRule(inner.alphabet(), std::move(images));
}

SubstitutionMatrix::SubstitutionMatrix(std::size_t rank) : rank_(rank), entries_(rank * rank, 0) {}

SubstitutionMatrix::SubstitutionMatrix(std::size_t rank, std::vector<std::uint64_t> row_major)
    : rank_(rank), entries_(std::move(row_major)) {
  if (entries_.size() != rank_ * rank_) {
    throw InputError("matrix entries do not match rank " + std::to_string(rank_));
  }
}

SubstitutionMatrix SubstitutionMatrix::identity(std::size_t rank) {
  SubstitutionMatrix m(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    m(i, i) = 1;
  }
  return m;
}

std::uint64_t SubstitutionMatrix::column_sum(std::size_t j) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    s += (*this)(i, j);
  }
  return s;
}

bool SubstitutionMatrix::strictly_positive() const {
  return std::all_of(entries_.begin(), entries_.end(), [](std::uint64_t v) { return v > 0; });
}

SubstitutionMatrix operator*(const SubstitutionMatrix& a, const SubstitutionMatrix& b) {
  if (a.rank_ != b.rank_) {
    throw InputError("matrix product of mismatched ranks");
  }
  SubstitutionMatrix c(a.rank_);
  for (std::size_t i = 0; i < a.rank_; ++i) {
    for (std::size_t k = 0; k < a.rank_; ++k) {
      const auto aik = a(i, k);
      if (aik == 0) {
        continue;
      }
      for (std::size_t j = 0; j < a.rank_; ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

SubstitutionMatrix matrix(const SubstitutionRule& rule) {
  SubstitutionMatrix m(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    for (Letter l : rule.images()[j]) {
      ++m(l, j);
    }
  }
  return m;
}

std::size_t wielandt_bound(std::size_t rank) {
  return rank <= 1 ? 1 : rank * rank - 2 * rank + 2;
}

std::optional<std::size_t> is_primitive(const SubstitutionMatrix& m) {
  const auto r = m.rank();
  if (r == 0) {
    return std::nullopt;
  }
  auto pattern = [r](const SubstitutionMatrix& x) {
    SubstitutionMatrix p(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        p(i, j) = x(i, j) > 0 ? 1 : 0;
      }
    }
    return p;
  };
  const auto base = pattern(m);
  auto power = base;
  const auto bound = wielandt_bound(r);
  for (std::size_t k = 1; k <= bound; ++k) {
    if (power.strictly_positive()) {
      return k;
    }
    power = pattern(power * base);
  }
  return std::nullopt;
}

void require_primitive(const SubstitutionRule& rule) {
  if (!is_primitive(matrix(rule))) {
    throw InputError("rule is not primitive: no power M^k with k <= " +
                     std::to_string(wielandt_bound(rule.size())) +
                     " (Wielandt bound r^2-2r+2 for r = " + std::to_string(rule.size()) +
                     ") has strictly positive entries");
  }
}

FixedPointStream::FixedPointStream(SubstitutionRule rule, Letter seed, unsigned power)
    : rule_(std::move(rule)), powered_(rule_.power(power)), seed_(seed), power_(power) {
  if (power == 0) {
    throw InputError("fixed point power must be at least 1");
  }
  const auto& img = powered_.image(seed);
  if (img.front() != seed || img.size() < 2) {
    throw ConstructionError("sigma^" + std::to_string(power) + "(" + rule_.alphabet().symbol(seed) +
                            ") does not begin with the seed or does not grow");
  }
  buffer_.push_back(seed);
}

std::span<const Letter> FixedPointStream::prefix(std::size_t length) {
  // σ^k(u[0..n)) starts with u[0..n) and is strictly longer once n >= 1,
  // so each pass extends the buffer by a nested prefix.
  while (buffer_.size() < length) {
    std::size_t needed = 0;
    std::size_t consumed = 0;
    while (consumed < buffer_.size() && needed < length) {
      needed += powered_.image(buffer_[consumed]).size();
      ++consumed;
    }
    Word next;
    next.reserve(needed);
    for (std::size_t i = 0; i < consumed; ++i) {
      const auto& img = powered_.image(buffer_[i]);
      next.insert(next.end(), img.begin(), img.end());
    }
    buffer_ = std::move(next);
  }
  return std::span<const Letter>(buffer_.data(), length);
}

FixedPointStream fixed_point_stream(const SubstitutionRule& rule, std::optional<Letter> seed) {
  if (seed && *seed >= rule.size()) {
    throw InputError("seed letter outside alphabet");
  }
  const auto r = rule.size();
  const auto bound = wielandt_bound(r) + r;
  // Track first letters and lengths of σ^k(a) without expanding the words.
  std::vector<Letter> first(r);
  for (std::size_t j = 0; j < r; ++j) {
    first[j] = static_cast<Letter>(j);
  }
  const auto m = matrix(rule);
  std::vector<std::uint64_t> col_len(r, 1);  // |σ^k(a_j)|, saturating
  for (unsigned k = 1; k <= bound; ++k) {
    std::vector<std::uint64_t> next_len(r, 0);
    for (std::size_t j = 0; j < r; ++j) {
      first[j] = rule.image(first[j]).front();
      // |σ^k(a_j)| = Σ_i M_ij |σ^{k-1}(a_i)|
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < r; ++i) {
        total += m(i, j) * col_len[i];
        total = std::min<std::uint64_t>(total, std::uint64_t{1} << 40);
      }
      next_len[j] = total;
    }
    col_len = next_len;
    for (std::size_t j = 0; j < r; ++j) {
      if (seed && j != *seed) {
        continue;
      }
      if (first[j] == j && col_len[j] > 1) {
        return FixedPointStream(rule, static_cast<Letter>(j), k);
      }
    }
  }
  throw ConstructionError("no seed/power pair with sigma^k(seed) starting with seed and growing, for k <= " +
                          std::to_string(bound));
}

std::vector<Word> induced_substitute(const SubstitutionRule& rule, std::span<const Letter> w) {
  if (w.empty()) {
    throw InputError("induced_substitute needs a word of length at least 1");
  }
  const auto n = w.size();
  const auto image = rule.apply(w);
  const auto m = rule.image(w.front()).size();
  if (image.size() < m + n - 1) {
    throw InternalError("induced_substitute: image shorter than m + N - 1");
  }
  std::vector<Word> out;
  out.reserve(m);
  for (std::size_t start = 0; start < m; ++start) {
    out.emplace_back(image.begin() + static_cast<std::ptrdiff_t>(start),
                     image.begin() + static_cast<std::ptrdiff_t>(start + n));
  }
  return out;
}

WordSet base_atlas(const SubstitutionRule& rule, Letter seed) {
  std::vector<bool> seen(rule.size(), false);
  std::vector<Letter> stack{seed};
  seen.at(seed) = true;
  while (!stack.empty()) {
    const auto l = stack.back();
    stack.pop_back();
    for (Letter next : rule.image(l)) {
      if (!seen[next]) {
        seen[next] = true;
        stack.push_back(next);
      }
    }
  }
  WordSet out;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    if (seen[j]) {
      out.insert(Word{static_cast<Letter>(j)});
    }
  }
  return out;
}

namespace {

WordSet induced_image(const SubstitutionRule& rule, const WordSet& words) {
  WordSet out;
  for (const auto& w : words) {
    for (auto& v : induced_substitute(rule, w)) {
      out.insert(std::move(v));
    }
  }
  return out;
}

Atlas next_atlas(const SubstitutionRule& rule, const Atlas& previous, const WordSet& letters) {
  WordSet candidates;
  for (const auto& w : previous.words) {
    for (const auto& letter : letters) {
      Word ext = w;
      ext.push_back(letter.front());
      candidates.insert(std::move(ext));
    }
  }
  const auto guard = candidates.size() + 1;
  Atlas atlas{previous.length + 1, std::move(candidates), 0, 0};
  while (true) {
    auto image = induced_image(rule, atlas.words);
    ++atlas.iterations;
    if (image == atlas.words) {
      return atlas;
    }
    if (atlas.iterations > guard) {
      throw InternalError("stable-set iteration did not settle within |B_N| steps");
    }
    atlas.words = std::move(image);
  }
}

}  // namespace

std::vector<Atlas> atlases_by_induction(const SubstitutionRule& rule, std::size_t max_length) {
  if (max_length == 0) {
    throw InputError("atlas length must be at least 1");
  }
  require_primitive(rule);
  const auto stream = fixed_point_stream(rule);
  std::vector<Atlas> out;
  out.reserve(max_length);
  const auto letters = base_atlas(rule, stream.seed());
  out.push_back(Atlas{1, letters, 0, 0});
  while (out.size() < max_length) {
    out.push_back(next_atlas(rule, out.back(), letters));
  }
  return out;
}

Atlas atlas_by_induction(const SubstitutionRule& rule, std::size_t length) {
  return std::move(atlases_by_induction(rule, length).back());
}

namespace {

std::size_t count_factors(std::span<const Letter> text, std::size_t n,
                          std::unordered_set<std::string_view>& into) {
  into.clear();
  const auto* chars = reinterpret_cast<const char*>(text.data());
  for (std::size_t i = 0; i + n <= text.size(); ++i) {
    into.emplace(chars + i, n);
  }
  return into.size();
}

}  // namespace

Atlas atlas_by_window(const SubstitutionRule& rule, std::size_t length, const WindowOptions& options) {
  if (length == 0) {
    throw InputError("atlas length must be at least 1");
  }
  require_primitive(rule);
  auto stream = fixed_point_stream(rule, options.seed);
  std::size_t prefix = std::max(options.initial_prefix, 2 * length);
  if (prefix > options.max_prefix) {
    throw LimitError("window method: initial prefix " + std::to_string(prefix) + " exceeds cap " +
                     std::to_string(options.max_prefix));
  }
  std::unordered_set<std::string_view> factors;
  std::size_t previous = count_factors(stream.prefix(prefix), length, factors);
  std::size_t rounds = 0;
  while (true) {
    const auto doubled = prefix * 2;
    if (doubled > options.max_prefix) {
      throw LimitError("window method did not stabilise before the prefix cap of " +
                       std::to_string(options.max_prefix) + " letters (N = " + std::to_string(length) + ")");
    }
    // The factor set of a longer prefix contains that of the shorter one,
    // so equal counts mean equal sets.
    const auto text = stream.prefix(doubled);
    const auto current = count_factors(text, length, factors);
    ++rounds;
    prefix = doubled;
    if (current == previous) {
      Atlas atlas{length, {}, rounds, prefix};
      for (auto view : factors) {
        atlas.words.emplace(reinterpret_cast<const Letter*>(view.data()),
                            reinterpret_cast<const Letter*>(view.data()) + view.size());
      }
      return atlas;
    }
    previous = current;
  }
}

std::size_t complexity(const SubstitutionRule& rule, std::size_t length) {
  return atlas_by_induction(rule, length).count();
}

}  // namespace aperiodica
