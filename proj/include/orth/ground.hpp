#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orth {

// Subsets of a finite ground set are bitmasks over point indices.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxFinitePoints = 24;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed models, arguments outside an operation's domain, failed preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

// A precondition that is a mathematical property of the input (e.g. normality) and failed.
// Carries the sets that exhibit the failure.
class PreconditionError : public InputError {
 public:
  PreconditionError(std::string what, std::vector<Mask> witness)
      : InputError(std::move(what)), witness_(std::move(witness)) {}
  const std::vector<Mask>& witness() const { return witness_; }

 private:
  std::vector<Mask> witness_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string dimension, std::size_t requested, std::size_t limit)
      : Error("budget exceeded: " + dimension + " = " + std::to_string(requested) +
              " (limit " + std::to_string(limit) + ")"),
        dimension_(std::move(dimension)),
        requested_(requested),
        limit_(limit) {}
  const std::string& dimension() const { return dimension_; }
  std::size_t requested() const { return requested_; }
  std::size_t limit() const { return limit_; }

 private:
  std::string dimension_;
  std::size_t requested_;
  std::size_t limit_;
};

// Exhaustive-scan limits. Every brute-force loop checks one of these before it starts.
struct Budget {
  std::size_t axiom_scan_n = 8;     // all triples of subsets
  std::size_t pair_scan_n = 12;     // all pairs of subsets on pair-generated relations
  std::size_t triple_claim_n = 6;   // claims quantified over pairs of pairs
  std::size_t explicit_n = 8;       // explicit subset-pair tables
};

inline void require_budget(const char* dimension, std::size_t n, std::size_t limit) {
  if (n > limit) throw BudgetExceeded(dimension, n, limit);
}

inline constexpr Mask bit(std::size_t i) { return Mask{1} << i; }
inline constexpr bool has(Mask m, std::size_t i) { return (m >> i) & 1u; }
inline constexpr Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }
inline constexpr bool included(Mask a, Mask b) { return (a & ~b) == 0; }
inline constexpr Mask unite(Mask a, Mask b) { return a | b; }
inline constexpr Mask meet(Mask a, Mask b) { return a & b; }
inline int cardinality(Mask m) { return std::popcount(m); }

template <class F>
void for_each_point(Mask m, F&& f) {
  while (m) {
    f(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

// Visits every submask of m in increasing numeric order, including 0 and m.
template <class F>
void for_each_submask(Mask m, F&& f) {
  Mask s = 0;
  do {
    f(s);
    s = (s - m) & m;
  } while (s != 0);
}

// Packs the bits of m that lie in domain into the low bits, preserving order.
inline Mask compress(Mask m, Mask domain) {
  Mask out = 0;
  std::size_t k = 0;
  for_each_point(domain, [&](std::size_t i) {
    if (has(m, i)) out |= bit(k);
    ++k;
  });
  return out;
}

// Inverse of compress.
inline Mask expand(Mask m, Mask domain) {
  Mask out = 0;
  std::size_t k = 0;
  for_each_point(domain, [&](std::size_t i) {
    if (has(m, k)) out |= bit(i);
    ++k;
  });
  return out;
}

class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> names);
  static GroundSet anonymous(std::size_t n);

  std::size_t size() const { return names_.size(); }
  Mask full() const { return full_mask(names_.size()); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // Throws InputError on unknown names.
  Mask mask_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(Mask m) const;
  std::string format(Mask m) const;
  GroundSet restrict_to(Mask m) const;

  bool operator==(const GroundSet& other) const = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace orth
