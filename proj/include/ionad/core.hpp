#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ionad {

using Index = std::size_t;
inline constexpr Index npos = std::numeric_limits<Index>::max();

/// Malformed input: shape mismatch, dangling reference, broken precondition.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration or materialisation would exceed its configured budget.
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A construction that requires a flat basis was handed a non-flat one.
struct not_flat : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Budgets shared by every enumeration core.
struct Budget {
  std::size_t interior_pairs = 1'000'000;  // pre-quotient coend pairs
  std::size_t max_sieve_arrows = 16;       // incoming morphisms per object
  std::size_t enumeration = 5'000'000;     // candidate tuples in brute-force searches
  std::size_t lambda_points = 20;
};

/// Outcome of a law or property check. `ok()` iff no violation was recorded.
struct Report {
  std::vector<std::string> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  void fail(std::string what) { violations.push_back(std::move(what)); }
  explicit operator bool() const { return ok(); }
  [[nodiscard]] std::string first() const {
    return violations.empty() ? std::string{} : violations.front();
  }
};

/// Union-find with least-index representatives; classes are numbered by
/// the order of their least member, which makes quotients canonical.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  // the smaller root wins, so every root is the least member of its class
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  /// Dense class ids in order of least member; `count` receives the number of classes.
  std::vector<Index> classes(std::size_t& count) {
    std::vector<Index> id(parent_.size(), npos);
    count = 0;
    for (Index i = 0; i < parent_.size(); ++i) {
      Index r = find(i);
      if (id[r] == npos) id[r] = count++;
      id[i] = id[r];
    }
    return id;
  }

  [[nodiscard]] std::size_t size() const { return parent_.size(); }

 private:
  std::vector<Index> parent_;
};

}  // namespace ionad
