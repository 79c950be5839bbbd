#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "kendall/pair_scheme.hpp"

namespace kendall {

/// Relation of the pair (a, b): Asc when x_a < x_b, Desc when x_a > x_b.
enum class Symbol : std::uint8_t { Asc = 0, Desc = 1, Tie = 2, Missing = 3 };

constexpr Symbol flip(Symbol s) noexcept {
  switch (s) {
    case Symbol::Asc:
      return Symbol::Desc;
    case Symbol::Desc:
      return Symbol::Asc;
    default:
      return s;
  }
}

constexpr const char* symbol_name(Symbol s) noexcept {
  switch (s) {
    case Symbol::Asc:
      return "ASC";
    case Symbol::Desc:
      return "DESC";
    case Symbol::Tie:
      return "TIE";
    default:
      return "MISSING";
  }
}

/// Kendall-transformed feature: one symbol per ordered pair of a PairScheme.
///
/// Symbols are packed two bits each, 32 per 64-bit word. A freshly
/// constructed sequence is all Missing.
class KendallSequence {
 public:
  explicit KendallSequence(std::size_t n) : scheme_(n), words_((scheme_.m() + kPerWord - 1) / kPerWord, ~0ULL) {}

  KendallSequence(std::size_t n, std::initializer_list<Symbol> symbols) : KendallSequence(n) {
    if (symbols.size() != size()) {
      throw std::domain_error("KendallSequence: expected " + std::to_string(size()) + " symbols, got " +
                              std::to_string(symbols.size()));
    }
    std::size_t j = 0;
    for (Symbol s : symbols) set(j++, s);
  }

  std::size_t n() const noexcept { return scheme_.n(); }
  std::size_t size() const noexcept { return scheme_.m(); }
  const PairScheme& scheme() const noexcept { return scheme_; }

  Symbol operator[](std::size_t j) const noexcept {
    return static_cast<Symbol>((words_[j / kPerWord] >> (2 * (j % kPerWord))) & 3U);
  }

  Symbol at(std::size_t j) const {
    if (j >= size()) throw std::out_of_range("KendallSequence: index " + std::to_string(j));
    return (*this)[j];
  }

  Symbol at(std::size_t a, std::size_t b) const { return (*this)[scheme_.index(a, b)]; }

  void set(std::size_t j, Symbol s) noexcept {
    auto& w = words_[j / kPerWord];
    const unsigned shift = 2 * (j % kPerWord);
    w = (w & ~(3ULL << shift)) | (static_cast<std::uint64_t>(s) << shift);
  }

  void set(std::size_t a, std::size_t b, Symbol s) { set(scheme_.index(a, b), s); }

  /// Occurrences of each symbol, indexed by the Symbol value.
  std::array<std::size_t, 4> counts() const noexcept {
    std::array<std::size_t, 4> c{};
    for (std::size_t j = 0; j < size(); ++j) ++c[static_cast<std::size_t>((*this)[j])];
    return c;
  }

  std::size_t count(Symbol s) const noexcept { return counts()[static_cast<std::size_t>(s)]; }

  std::vector<Symbol> symbols() const {
    std::vector<Symbol> out(size());
    for (std::size_t j = 0; j < size(); ++j) out[j] = (*this)[j];
    return out;
  }

  friend bool operator==(const KendallSequence& l, const KendallSequence& r) {
    // unused tail bits stay set, so word equality is symbol equality
    return l.scheme_ == r.scheme_ && l.words_ == r.words_;
  }

 private:
  static constexpr std::size_t kPerWord = 32;

  PairScheme scheme_;
  std::vector<std::uint64_t> words_;
};

}  // namespace kendall
