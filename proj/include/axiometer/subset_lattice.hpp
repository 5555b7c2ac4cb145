#pragma once

// Bitmask encoding of axiom subsets and the zeta/Moebius transforms over the
// Boolean lattice. Bit i of a mask stands for labels()[i]; mask 0 is the
// empty set and is always stored.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "axiometer/errors.hpp"

namespace axiometer {

using Mask = std::uint32_t;

inline constexpr int kMaxAxioms = 20;

inline int cardinality(Mask s) noexcept { return std::popcount(s); }

inline bool is_subset(Mask s, Mask t) noexcept { return (s & ~t) == 0; }

/// Ordered, duplicate-free list of axiom names. Position defines bit index.
class AxiomSet {
 public:
  AxiomSet() = default;

  explicit AxiomSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty() || labels_.size() > static_cast<std::size_t>(kMaxAxioms)) {
      throw SizeError("axiom count must be in [1, " + std::to_string(kMaxAxioms) +
                      "], got " + std::to_string(labels_.size()));
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& label : labels_) {
      if (label.empty()) throw NameError("axiom names must be non-empty");
      if (label.find('+') != std::string::npos) {
        throw NameError("axiom name '" + label + "' may not contain '+'");
      }
      if (!seen.insert(label).second) throw DuplicateError("duplicate axiom name '" + label + "'");
    }
  }

  /// a1, a2, ..., aJ
  static AxiomSet numbered(int count) {
    std::vector<std::string> labels;
    for (int i = 1; i <= count; ++i) labels.push_back("a" + std::to_string(i));
    return AxiomSet(std::move(labels));
  }

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  std::size_t subset_count() const noexcept { return std::size_t{1} << labels_.size(); }
  Mask full() const noexcept { return static_cast<Mask>(subset_count() - 1); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

  std::optional<int> index_of(std::string_view name) const {
    auto it = std::find(labels_.begin(), labels_.end(), name);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<int>(it - labels_.begin());
  }

  /// "+"-joined names in bit order; the empty set renders as "".
  std::string name_of(Mask s) const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
      if (!(s >> i & 1u)) continue;
      if (!out.empty()) out += '+';
      out += labels_[static_cast<std::size_t>(i)];
    }
    return out;
  }

  bool operator==(const AxiomSet&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// Mask with bit i set iff labels[i] is named. Order-insensitive.
inline Mask mask_of(const AxiomSet& axioms, std::span<const std::string> names) {
  Mask out = 0;
  for (const auto& name : names) {
    auto idx = axioms.index_of(name);
    if (!idx) throw NameError("unknown axiom '" + name + "'");
    const Mask bit = Mask{1} << *idx;
    if (out & bit) throw DuplicateError("axiom '" + name + "' named twice");
    out |= bit;
  }
  return out;
}

inline Mask mask_of(const AxiomSet& axioms, std::initializer_list<std::string> names) {
  std::vector<std::string> v(names);
  return mask_of(axioms, std::span<const std::string>(v));
}

/// Parses a "+"-joined key such as "a1+a3" into a non-empty mask.
inline Mask parse_subset_key(const AxiomSet& axioms, std::string_view key) {
  if (key.empty()) throw ParseError("empty subset key");
  std::vector<std::string> names;
  std::size_t start = 0;
  while (true) {
    const auto plus = key.find('+', start);
    const auto part = key.substr(start, plus == std::string_view::npos ? key.size() - start : plus - start);
    if (part.empty()) throw ParseError("malformed subset key '" + std::string(key) + "'");
    names.emplace_back(part);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  try {
    return mask_of(axioms, names);
  } catch (const Error& e) {
    throw ParseError("subset key '" + std::string(key) + "': " + e.what());
  }
}

/// Real-valued set function: one entry per mask, 2^J entries.
class SubsetVector {
 public:
  SubsetVector() = default;

  explicit SubsetVector(int axiom_count, double fill = 0.0)
      : axiom_count_(checked_count(axiom_count)), values_(std::size_t{1} << axiom_count, fill) {}

  SubsetVector(int axiom_count, std::vector<double> values)
      : axiom_count_(checked_count(axiom_count)), values_(std::move(values)) {
    if (values_.size() != std::size_t{1} << axiom_count_) {
      throw SizeError("subset vector for J=" + std::to_string(axiom_count_) + " needs " +
                      std::to_string(std::size_t{1} << axiom_count_) + " entries, got " +
                      std::to_string(values_.size()));
    }
  }

  int axiom_count() const noexcept { return axiom_count_; }
  std::size_t size() const noexcept { return values_.size(); }
  Mask full() const noexcept { return static_cast<Mask>(values_.size() - 1); }

  double operator[](Mask s) const { return values_[s]; }
  double& operator[](Mask s) { return values_[s]; }

  std::span<const double> values() const& noexcept { return values_; }
  std::span<double> values() & noexcept { return values_; }
  std::span<const double> values() && = delete;

  SubsetVector& operator+=(const SubsetVector& other) {
    check_same_shape(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }

  SubsetVector& operator*=(double k) {
    for (auto& v : values_) v *= k;
    return *this;
  }

  friend SubsetVector operator+(SubsetVector a, const SubsetVector& b) { return a += b; }
  friend SubsetVector operator*(double k, SubsetVector a) { return a *= k; }

  bool operator==(const SubsetVector&) const = default;

 private:
  static int checked_count(int j) {
    if (j < 0 || j > kMaxAxioms) throw SizeError("axiom count out of range: " + std::to_string(j));
    return j;
  }

  void check_same_shape(const SubsetVector& other) const {
    if (other.axiom_count_ != axiom_count_) throw SizeError("subset vectors over different lattices");
  }

  int axiom_count_ = 0;
  std::vector<double> values_{0.0};
};

/// y_S = sum over T >= S of (-1)^{|T \ S|} x_T.
inline SubsetVector moebius_superset(SubsetVector x) {
  auto v = x.values();
  const std::size_t n = v.size();
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    for (std::size_t s = 0; s < n; ++s) {
      if (!(s & bit)) v[s] -= v[s | bit];
    }
  }
  return x;
}

/// x_S = sum over T >= S of y_T. Inverse of moebius_superset.
inline SubsetVector zeta_superset(SubsetVector y) {
  auto v = y.values();
  const std::size_t n = v.size();
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    for (std::size_t s = 0; s < n; ++s) {
      if (!(s & bit)) v[s] += v[s | bit];
    }
  }
  return y;
}

/// y_S = sum over T <= S of (-1)^{|S \ T|} x_T.
inline SubsetVector moebius_subset(SubsetVector x) {
  auto v = x.values();
  const std::size_t n = v.size();
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s & bit) v[s] -= v[s ^ bit];
    }
  }
  return x;
}

/// x_S = sum over T <= S of y_T. Inverse of moebius_subset.
inline SubsetVector zeta_subset(SubsetVector y) {
  auto v = y.values();
  const std::size_t n = v.size();
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s & bit) v[s] += v[s ^ bit];
    }
  }
  return y;
}

}  // namespace axiometer
