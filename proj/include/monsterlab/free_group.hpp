// Copyright 2026 The monsterlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "monsterlab/rng.hpp"

namespace monsterlab {

/// Letter of the symmetric alphabet S = {a_1^{±1}, ..., a_k^{±1}}, stored as
/// a signed code: +i for a_i, -i for its inverse.
class Generator {
 public:
  constexpr Generator() = default;
  constexpr Generator(int index, int sign) : code_(static_cast<std::int16_t>(sign < 0 ? -index : index)) {
    if (index < 1 || index > 32767 || (sign != 1 && sign != -1))
      throw std::invalid_argument("generator: index must be positive and sign +-1");
  }
  static constexpr Generator from_code(int code) { return Generator(std::abs(code), code < 0 ? -1 : 1); }

  constexpr int index() const { return code_ < 0 ? -code_ : code_; }
  constexpr int sign() const { return code_ < 0 ? -1 : 1; }
  constexpr int code() const { return code_; }
  constexpr Generator inverse() const { return from_code(-code_); }

  /// Position in the alphabet enumeration a1, A1, a2, A2, ...
  constexpr std::size_t ordinal() const {
    return 2 * static_cast<std::size_t>(index() - 1) + (code_ < 0 ? 1 : 0);
  }
  static constexpr Generator from_ordinal(std::size_t i) {
    return Generator(static_cast<int>(i / 2) + 1, i % 2 == 0 ? 1 : -1);
  }

  friend constexpr auto operator<=>(Generator, Generator) = default;

 private:
  std::int16_t code_ = 1;
};

inline Generator uniform_generator(Rng& rng, int k) {
  return Generator::from_ordinal(rng.below(2 * static_cast<std::uint64_t>(k)));
}

/// Freely reduced word in F_k; its length is the tree distance to the identity.
class Word {
 public:
  Word() = default;

  /// Free reduction by the stack rule, O(length).
  static Word reduce(std::span<const Generator> raw) {
    Word w;
    w.letters_.reserve(raw.size());
    for (Generator g : raw) w.multiply_right(g);
    return w;
  }
  static Word reduce(std::initializer_list<Generator> raw) {
    return reduce(std::span<const Generator>(raw.begin(), raw.size()));
  }

  /// In-place right multiplication by one letter.
  void multiply_right(Generator g) {
    if (!letters_.empty() && letters_.back() == g.inverse())
      letters_.pop_back();
    else
      letters_.push_back(g);
  }
  void multiply_right(std::span<const Generator> raw) {
    for (Generator g : raw) multiply_right(g);
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Generator> letters() const { return letters_; }
  Generator operator[](std::size_t i) const { return letters_[i]; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

 private:
  std::vector<Generator> letters_;
};

inline Word reduce(std::span<const Generator> raw) { return Word::reduce(raw); }

inline Word mul(const Word& x, const Word& y) {
  Word out = x;
  out.multiply_right(y.letters());
  return out;
}

inline Word inv(const Word& x) {
  std::vector<Generator> raw;
  raw.reserve(x.size());
  for (auto it = x.letters().rbegin(); it != x.letters().rend(); ++it) raw.push_back(it->inverse());
  return Word::reduce(raw);
}

inline std::size_t common_prefix_length(const Word& x, const Word& y) {
  const auto [ix, iy] = std::mismatch(x.letters().begin(), x.letters().end(), y.letters().begin(),
                                      y.letters().end());
  return static_cast<std::size_t>(ix - x.letters().begin());
}

/// d_T(x, y) = |x^{-1} y| = |x| + |y| - 2 * lcp(x, y).
inline std::size_t tree_dist(const Word& x, const Word& y) {
  return x.size() + y.size() - 2 * common_prefix_length(x, y);
}

/// Exact half-integer, stored doubled.
struct HalfInteger {
  std::int64_t doubled = 0;
  constexpr double value() const { return static_cast<double>(doubled) / 2.0; }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
};

/// (x|y)_z = (d(z,x) + d(z,y) - d(x,y)) / 2 in the Cayley tree.
inline HalfInteger gromov_product_tree(const Word& x, const Word& y, const Word& z) {
  const auto dzx = static_cast<std::int64_t>(tree_dist(z, x));
  const auto dzy = static_cast<std::int64_t>(tree_dist(z, y));
  const auto dxy = static_cast<std::int64_t>(tree_dist(x, y));
  return {dzx + dzy - dxy};
}

/// Trajectory w_0 = e, w_{i+1} = w_i s_{i+1} with s_i uniform in S.
inline std::vector<Word> sample_srw(std::size_t n, int k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("sample_srw: k must be at least 2");
  std::vector<Word> path;
  path.reserve(n + 1);
  path.emplace_back();
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    w.multiply_right(uniform_generator(rng, k));
    path.push_back(w);
  }
  return path;
}

inline std::vector<Word> sample_srw(std::size_t n, int k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_srw(n, k, rng);
}

/// Endpoint only; avoids storing the prefixes.
inline Word srw_endpoint(std::size_t n, int k, Rng& rng) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) w.multiply_right(uniform_generator(rng, k));
  return w;
}

// ---------------------------------------------------------------------------
// Text format: space-separated letters "a1 A1 a2 ..." (lowercase a: positive,
// uppercase A: inverse, followed by the generator index). Empty text is e.

inline std::string to_text(std::span<const Generator> letters) {
  std::string out;
  for (Generator g : letters) {
    if (!out.empty()) out += ' ';
    out += g.sign() > 0 ? 'a' : 'A';
    out += std::to_string(g.index());
  }
  return out;
}

inline std::string to_text(const Word& w) { return to_text(w.letters()); }

/// Parses letters without reducing them.
inline std::vector<Generator> parse_letters(std::string_view text) {
  std::vector<Generator> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const char c = text[i];
    if (c != 'a' && c != 'A')
      throw std::invalid_argument("word text: expected 'a' or 'A' at '" + std::string(text.substr(i)) + "'");
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw std::invalid_argument("word text: letter without generator index");
    const int index = std::stoi(std::string(text.substr(i + 1, j - i - 1)));
    out.emplace_back(index, c == 'a' ? 1 : -1);
    i = j;
  }
  return out;
}

inline Word parse_word(std::string_view text) { return Word::reduce(parse_letters(text)); }

}  // namespace monsterlab
