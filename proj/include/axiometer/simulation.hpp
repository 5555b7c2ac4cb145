#pragma once

// Estimating satisfaction collections from first principles on finite voting
// problems: profiles of strict rankings, single-winner rules with a
// lexicographic tie-break, punctual and relational axioms, and two preference
// models (impartial culture and Mallows).
//
// A draw is a tuple of K^A profiles (K^A = largest axiom arity); an axiom of
// arity k reads the first k coordinates. Each draw yields one possible world,
// the mask of satisfied axioms, and p_S is the mass of worlds containing S.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "axiometer/collections.hpp"
#include "axiometer/errors.hpp"
#include "axiometer/subset_lattice.hpp"

namespace axiometer {

inline constexpr int kMinCandidates = 3;
inline constexpr int kMaxCandidates = 5;
inline constexpr int kMaxVoters = 50;

using Candidate = int;

/// All m! strict rankings of 0..m-1 (best first) in lexicographic order.
/// A ranking is referred to by its index in this table.
class PermutationTable {
 public:
  static const PermutationTable& of(int m) {
    check_candidates(m);
    static const std::array<PermutationTable, 3> tables{PermutationTable(3), PermutationTable(4), PermutationTable(5)};
    return tables[static_cast<std::size_t>(m - kMinCandidates)];
  }

  int candidates() const noexcept { return m_; }
  int count() const noexcept { return count_; }

  std::span<const std::uint8_t> ranking(int idx) const {
    return {order_.data() + static_cast<std::size_t>(idx) * static_cast<std::size_t>(m_), static_cast<std::size_t>(m_)};
  }

  /// position(idx)[c] = rank of candidate c (0 = top).
  std::span<const std::uint8_t> position(int idx) const {
    return {pos_.data() + static_cast<std::size_t>(idx) * static_cast<std::size_t>(m_), static_cast<std::size_t>(m_)};
  }

  bool prefers(int idx, Candidate x, Candidate y) const { return position(idx)[x] < position(idx)[y]; }

  int index_of(std::span<const std::uint8_t> ranking) const {
    if (static_cast<int>(ranking.size()) != m_) throw RangeError("ranking length differs from candidate count");
    std::size_t code = 0;
    for (auto c : ranking) {
      if (c >= m_) throw RangeError("candidate index out of range");
      code = code * static_cast<std::size_t>(m_) + c;
    }
    const int idx = lookup_[code];
    if (idx < 0) throw RangeError("ranking is not a permutation");
    return idx;
  }

  static void check_candidates(int m) {
    if (m < kMinCandidates || m > kMaxCandidates) {
      throw RangeError("candidate count must be in [3, 5], got " + std::to_string(m));
    }
  }

 private:
  explicit PermutationTable(int m) : m_(m) {
    std::vector<std::uint8_t> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    std::size_t codes = 1;
    for (int i = 0; i < m; ++i) codes *= static_cast<std::size_t>(m);
    lookup_.assign(codes, -1);
    count_ = 0;
    do {
      std::size_t code = 0;
      for (auto c : perm) code = code * static_cast<std::size_t>(m) + c;
      lookup_[code] = count_++;
      order_.insert(order_.end(), perm.begin(), perm.end());
      pos_.resize(order_.size());
      for (int r = 0; r < m; ++r) {
        pos_[order_.size() - static_cast<std::size_t>(m) + perm[static_cast<std::size_t>(r)]] = static_cast<std::uint8_t>(r);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  int m_;
  int count_ = 0;
  std::vector<std::uint8_t> order_;
  std::vector<std::uint8_t> pos_;
  std::vector<int> lookup_;
};

/// n voters' strict rankings over m candidates, each stored as a
/// PermutationTable index.
class Profile {
 public:
  Profile(int m, std::vector<std::uint16_t> rankings) : m_(m), rankings_(std::move(rankings)) {
    const auto& table = PermutationTable::of(m_);
    if (rankings_.empty() || rankings_.size() > static_cast<std::size_t>(kMaxVoters)) {
      throw RangeError("voter count must be in [1, 50]");
    }
    for (auto r : rankings_) {
      if (r >= table.count()) throw RangeError("ranking index out of range");
    }
  }

  /// From explicit rankings, best first.
  static Profile from_rankings(int m, const std::vector<std::vector<int>>& rankings) {
    const auto& table = PermutationTable::of(m);
    std::vector<std::uint16_t> idx;
    for (const auto& r : rankings) {
      std::vector<std::uint8_t> bytes;
      for (int c : r) {
        if (c < 0 || c >= m) throw RangeError("candidate index out of range");
        bytes.push_back(static_cast<std::uint8_t>(c));
      }
      idx.push_back(static_cast<std::uint16_t>(table.index_of(bytes)));
    }
    return Profile(m, std::move(idx));
  }

  int candidates() const noexcept { return m_; }
  int voters() const noexcept { return static_cast<int>(rankings_.size()); }
  std::span<const std::uint16_t> rankings() const noexcept { return rankings_; }
  int ranking(int voter) const { return rankings_.at(static_cast<std::size_t>(voter)); }
  void set_ranking(int voter, int idx) { rankings_.at(static_cast<std::size_t>(voter)) = static_cast<std::uint16_t>(idx); }

  /// Number of voters ranking x above y.
  int support(Candidate x, Candidate y) const {
    const auto& table = PermutationTable::of(m_);
    int count = 0;
    for (auto r : rankings_) count += table.prefers(r, x, y) ? 1 : 0;
    return count;
  }

  bool operator==(const Profile&) const = default;

 private:
  int m_;
  std::vector<std::uint16_t> rankings_;
};

/// Candidate beating every other one by a strict majority, if any.
inline std::optional<Candidate> condorcet_winner(const Profile& prof) {
  const int n = prof.voters();
  for (Candidate c = 0; c < prof.candidates(); ++c) {
    bool wins_all = true;
    for (Candidate d = 0; d < prof.candidates() && wins_all; ++d) {
      if (d != c && !(2 * prof.support(c, d) > n)) wins_all = false;
    }
    if (wins_all) return c;
  }
  return std::nullopt;
}

inline bool is_condorcet_loser(const Profile& prof, Candidate c) {
  const int n = prof.voters();
  for (Candidate d = 0; d < prof.candidates(); ++d) {
    if (d != c && !(2 * prof.support(d, c) > n)) return false;
  }
  return true;
}

/// Candidate ranked first by more than half of the voters, if any.
inline std::optional<Candidate> majority_favorite(const Profile& prof) {
  const auto& table = PermutationTable::of(prof.candidates());
  std::array<int, kMaxCandidates> firsts{};
  for (auto r : prof.rankings()) ++firsts[table.ranking(r)[0]];
  for (Candidate c = 0; c < prof.candidates(); ++c) {
    if (2 * firsts[static_cast<std::size_t>(c)] > prof.voters()) return c;
  }
  return std::nullopt;
}

enum class RuleKind { plurality, borda, copeland, antiplurality };

inline std::string_view to_string(RuleKind r) {
  switch (r) {
    case RuleKind::plurality: return "plurality";
    case RuleKind::borda: return "borda";
    case RuleKind::copeland: return "copeland";
    case RuleKind::antiplurality: return "antiplurality";
  }
  return "?";
}

inline RuleKind parse_rule(std::string_view s) {
  if (s == "plurality") return RuleKind::plurality;
  if (s == "borda") return RuleKind::borda;
  if (s == "copeland") return RuleKind::copeland;
  if (s == "antiplurality") return RuleKind::antiplurality;
  throw ParseError("unknown rule '" + std::string(s) + "'");
}

/// Single-winner rule; ties go to the lowest candidate index.
struct VotingRule {
  RuleKind kind = RuleKind::plurality;
};

inline Candidate apply_rule(VotingRule rule, const Profile& prof) {
  const int m = prof.candidates();
  const auto& table = PermutationTable::of(m);
  std::array<int, kMaxCandidates> score{};
  switch (rule.kind) {
    case RuleKind::plurality:
      for (auto r : prof.rankings()) ++score[table.ranking(r)[0]];
      break;
    case RuleKind::borda:
      for (auto r : prof.rankings()) {
        const auto order = table.ranking(r);
        for (int k = 0; k < m; ++k) score[order[static_cast<std::size_t>(k)]] += m - 1 - k;
      }
      break;
    case RuleKind::copeland:
      for (Candidate x = 0; x < m; ++x) {
        for (Candidate y = x + 1; y < m; ++y) {
          const int xy = prof.support(x, y);
          const int yx = prof.voters() - xy;
          if (xy > yx) {
            ++score[static_cast<std::size_t>(x)];
            --score[static_cast<std::size_t>(y)];
          } else if (yx > xy) {
            ++score[static_cast<std::size_t>(y)];
            --score[static_cast<std::size_t>(x)];
          }
        }
      }
      break;
    case RuleKind::antiplurality:
      // Fewest last places wins: score = -(last-place count).
      for (auto r : prof.rankings()) --score[table.ranking(r)[static_cast<std::size_t>(m - 1)]];
      break;
  }
  Candidate best = 0;
  for (Candidate c = 1; c < m; ++c) {
    if (score[static_cast<std::size_t>(c)] > score[static_cast<std::size_t>(best)]) best = c;
  }
  return best;
}

enum class AxiomPredicate {
  condorcet_consistency,
  majority_winner,
  condorcet_loser_avoidance,
  pareto,
  monotonicity_pair,
  strategyproof_pair,
};

inline std::string_view to_string(AxiomPredicate a) {
  switch (a) {
    case AxiomPredicate::condorcet_consistency: return "condorcet_consistency";
    case AxiomPredicate::majority_winner: return "majority_winner";
    case AxiomPredicate::condorcet_loser_avoidance: return "condorcet_loser_avoidance";
    case AxiomPredicate::pareto: return "pareto";
    case AxiomPredicate::monotonicity_pair: return "monotonicity_pair";
    case AxiomPredicate::strategyproof_pair: return "strategyproof_pair";
  }
  return "?";
}

inline AxiomPredicate parse_predicate(std::string_view s) {
  for (auto a : {AxiomPredicate::condorcet_consistency, AxiomPredicate::majority_winner,
                 AxiomPredicate::condorcet_loser_avoidance, AxiomPredicate::pareto, AxiomPredicate::monotonicity_pair,
                 AxiomPredicate::strategyproof_pair}) {
    if (to_string(a) == s) return a;
  }
  throw ParseError("unknown axiom predicate '" + std::string(s) + "'");
}

enum class AxiomKind { punctual, relational };

struct AxiomSpec {
  std::string name;
  AxiomPredicate predicate = AxiomPredicate::condorcet_consistency;

  static AxiomSpec named(AxiomPredicate p) { return {std::string(to_string(p)), p}; }

  int arity() const noexcept {
    return predicate == AxiomPredicate::monotonicity_pair || predicate == AxiomPredicate::strategyproof_pair ? 2 : 1;
  }
  AxiomKind kind() const noexcept { return arity() == 1 ? AxiomKind::punctual : AxiomKind::relational; }
};

inline int tuple_arity(std::span<const AxiomSpec> axioms) {
  int k = 1;
  for (const auto& a : axioms) k = std::max(k, a.arity());
  return k;
}

inline AxiomSet axiom_set_of(std::span<const AxiomSpec> axioms) {
  std::vector<std::string> names;
  for (const auto& a : axioms) names.push_back(a.name);
  return AxiomSet(std::move(names));
}

namespace detail {

/// The single voter whose ranking differs between two profiles, if exactly one does.
inline std::optional<int> sole_deviator(const Profile& a, const Profile& b) {
  if (a.candidates() != b.candidates() || a.voters() != b.voters()) return std::nullopt;
  std::optional<int> who;
  for (int v = 0; v < a.voters(); ++v) {
    if (a.ranking(v) == b.ranking(v)) continue;
    if (who) return std::nullopt;
    who = v;
  }
  return who;
}

/// Whether `raised` is `base` with candidate w swapped with the one just above it.
inline bool raised_by_one(int m, int base, int raised, Candidate w) {
  const auto& table = PermutationTable::of(m);
  const int pos = table.position(base)[static_cast<std::size_t>(w)];
  if (pos == 0) return false;
  std::array<std::uint8_t, kMaxCandidates> order{};
  const auto src = table.ranking(base);
  std::copy(src.begin(), src.end(), order.begin());
  std::swap(order[static_cast<std::size_t>(pos)], order[static_cast<std::size_t>(pos - 1)]);
  return table.index_of(std::span<const std::uint8_t>(order.data(), static_cast<std::size_t>(m))) == raised;
}

/// winners[k] = rule outcome on tuple[k].
inline bool satisfied(const AxiomSpec& ax, std::span<const Profile* const> tuple, std::span<const Candidate> winners) {
  const Profile& first = *tuple[0];
  const Candidate w = winners[0];
  switch (ax.predicate) {
    case AxiomPredicate::condorcet_consistency: {
      const auto c = condorcet_winner(first);
      return !c || *c == w;
    }
    case AxiomPredicate::majority_winner: {
      const auto c = majority_favorite(first);
      return !c || *c == w;
    }
    case AxiomPredicate::condorcet_loser_avoidance:
      return !is_condorcet_loser(first, w);
    case AxiomPredicate::pareto: {
      const auto& table = PermutationTable::of(first.candidates());
      for (Candidate d = 0; d < first.candidates(); ++d) {
        if (d == w) continue;
        bool unanimous = true;
        for (auto r : first.rankings()) {
          if (!table.prefers(r, d, w)) {
            unanimous = false;
            break;
          }
        }
        if (unanimous) return false;
      }
      return true;
    }
    case AxiomPredicate::monotonicity_pair: {
      const Profile& second = *tuple[1];
      const auto v = sole_deviator(first, second);
      if (!v) return true;
      if (!raised_by_one(first.candidates(), first.ranking(*v), second.ranking(*v), w)) return true;
      return winners[1] == w;
    }
    case AxiomPredicate::strategyproof_pair: {
      const Profile& second = *tuple[1];
      const auto v = sole_deviator(first, second);
      if (!v) return true;
      const auto& table = PermutationTable::of(first.candidates());
      return !table.prefers(first.ranking(*v), winners[1], w);
    }
  }
  return true;
}

inline Mask world_of(std::span<const AxiomSpec> axioms, std::span<const Profile* const> tuple,
                     std::span<const Candidate> winners) {
  Mask world = 0;
  for (std::size_t j = 0; j < axioms.size(); ++j) {
    if (satisfied(axioms[j], tuple, winners)) world |= Mask{1} << j;
  }
  return world;
}

}  // namespace detail

/// Whether `rule` satisfies `ax` on the tuple; the axiom reads the first
/// arity() coordinates.
inline bool check_axiom(const AxiomSpec& ax, VotingRule rule, std::span<const Profile> tuple) {
  if (static_cast<int>(tuple.size()) < ax.arity()) {
    throw ArityError("axiom '" + ax.name + "' needs " + std::to_string(ax.arity()) + " profiles, got " +
                     std::to_string(tuple.size()));
  }
  std::array<const Profile*, 2> ptrs{};
  std::array<Candidate, 2> winners{};
  for (int k = 0; k < ax.arity(); ++k) {
    ptrs[static_cast<std::size_t>(k)] = &tuple[static_cast<std::size_t>(k)];
    winners[static_cast<std::size_t>(k)] = apply_rule(rule, tuple[static_cast<std::size_t>(k)]);
  }
  const auto n = static_cast<std::size_t>(ax.arity());
  return detail::satisfied(ax, std::span<const Profile* const>(ptrs.data(), n),
                           std::span<const Candidate>(winners.data(), n));
}

enum class SamplerKind { impartial_culture, mallows };

/// Distribution of a single voter's ranking; voters are independent.
struct Sampler {
  SamplerKind kind = SamplerKind::impartial_culture;
  double phi = 1.0;          // Mallows dispersion in (0, 1]
  std::vector<int> sigma;    // Mallows reference ranking, best first

  static Sampler impartial_culture() { return {}; }
  static Sampler mallows(double phi, std::vector<int> sigma) { return {SamplerKind::mallows, phi, std::move(sigma)}; }

  void validate(int m) const {
    PermutationTable::check_candidates(m);
    if (kind == SamplerKind::impartial_culture) return;
    if (!(phi > 0.0 && phi <= 1.0)) throw RangeError("Mallows phi must lie in (0, 1]");
    if (static_cast<int>(sigma.size()) != m) throw RangeError("Mallows reference ranking must list every candidate");
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (int c : sigma) {
      if (c < 0 || c >= m || seen[static_cast<std::size_t>(c)]) throw RangeError("Mallows reference is not a ranking");
      seen[static_cast<std::size_t>(c)] = true;
    }
  }
};

inline std::string sampler_tag(const Sampler& s) {
  if (s.kind == SamplerKind::impartial_culture) return "impartial_culture";
  return "mallows";
}

/// Number of candidate pairs ordered differently by two rankings.
inline int kendall_tau(int m, int a, int b) {
  const auto& table = PermutationTable::of(m);
  int d = 0;
  for (Candidate x = 0; x < m; ++x) {
    for (Candidate y = x + 1; y < m; ++y) {
      if (table.prefers(a, x, y) != table.prefers(b, x, y)) ++d;
    }
  }
  return d;
}

inline int reference_index(const Sampler& s, int m) {
  std::vector<std::uint8_t> bytes(s.sigma.begin(), s.sigma.end());
  return PermutationTable::of(m).index_of(bytes);
}

/// Unnormalized probability of a ranking: 1 under impartial culture,
/// phi^{kendall_tau(r, sigma)} under Mallows.
inline double ranking_weight(const Sampler& s, int m, int idx) {
  if (s.kind == SamplerKind::impartial_culture) return 1.0;
  return std::pow(s.phi, kendall_tau(m, idx, reference_index(s, m)));
}

/// Draws one ranking index. Mallows uses repeated insertion: the i-th
/// reference candidate goes to slot j in [0, i] with weight phi^{i-j}.
template <typename Urbg>
int sample_ranking(const Sampler& s, int m, Urbg& rng) {
  const auto& table = PermutationTable::of(m);
  if (s.kind == SamplerKind::impartial_culture) {
    return std::uniform_int_distribution<int>(0, table.count() - 1)(rng);
  }
  std::array<std::uint8_t, kMaxCandidates> order{};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < m; ++i) {
    // Slot weights phi^{i-j}, j = 0..i.
    std::array<double, kMaxCandidates> w{};
    double total = 0.0;
    for (int j = 0; j <= i; ++j) {
      w[static_cast<std::size_t>(j)] = std::pow(s.phi, i - j);
      total += w[static_cast<std::size_t>(j)];
    }
    double x = unit(rng) * total;
    int slot = i;
    for (int j = 0; j <= i; ++j) {
      x -= w[static_cast<std::size_t>(j)];
      if (x < 0.0) {
        slot = j;
        break;
      }
    }
    for (int k = i; k > slot; --k) order[static_cast<std::size_t>(k)] = order[static_cast<std::size_t>(k - 1)];
    order[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(s.sigma[static_cast<std::size_t>(i)]);
  }
  return table.index_of(std::span<const std::uint8_t>(order.data(), static_cast<std::size_t>(m)));
}

template <typename Urbg>
Profile sample_profile(const Sampler& s, int m, int n, Urbg& rng) {
  std::vector<std::uint16_t> r(static_cast<std::size_t>(n));
  for (auto& x : r) x = static_cast<std::uint16_t>(sample_ranking(s, m, rng));
  return Profile(m, std::move(r));
}

struct Experiment {
  VotingRule rule;
  std::vector<AxiomSpec> axioms;
  int m = 3;
  int n = 3;
  Sampler sampler;
  std::uint64_t samples = 1000;  // N
  std::uint64_t seed = 0;

  void validate() const {
    if (axioms.empty()) throw SchemaError("experiment needs at least one axiom");
    (void)axiom_set_of(axioms);
    PermutationTable::check_candidates(m);
    if (n < 1 || n > kMaxVoters) throw RangeError("voter count must be in [1, 50]");
    if (samples < 1) throw RangeError("sample count N must be at least 1");
    sampler.validate(m);
  }
};

struct EstimatedCollection {
  Collection collection;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> world_counts;      // draws whose satisfied set is exactly S
  std::vector<std::uint64_t> satisfied_counts;  // draws whose satisfied set contains S
  SubsetVector standard_error;                  // sqrt(p(1-p)/N)
  std::uint64_t seed = 0;
  Sampler sampler;
  VotingRule rule;
};

inline constexpr std::uint64_t kShardSize = 4096;

namespace detail {

inline std::mt19937_64 shard_rng(std::uint64_t seed, std::uint64_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
  return std::mt19937_64(seq);
}

inline void sample_shard(const Experiment& ex, int arity, std::uint64_t shard, std::vector<std::uint64_t>& counts) {
  auto rng = shard_rng(ex.seed, shard);
  const std::uint64_t begin = shard * kShardSize;
  const std::uint64_t end = std::min(ex.samples, begin + kShardSize);
  std::vector<Profile> tuple;
  tuple.reserve(static_cast<std::size_t>(arity));
  for (std::uint64_t i = begin; i < end; ++i) {
    tuple.clear();
    std::array<const Profile*, 2> ptrs{};
    std::array<Candidate, 2> winners{};
    for (int k = 0; k < arity; ++k) tuple.push_back(sample_profile(ex.sampler, ex.m, ex.n, rng));
    for (int k = 0; k < arity; ++k) {
      ptrs[static_cast<std::size_t>(k)] = &tuple[static_cast<std::size_t>(k)];
      winners[static_cast<std::size_t>(k)] = apply_rule(ex.rule, tuple[static_cast<std::size_t>(k)]);
    }
    const auto n = static_cast<std::size_t>(arity);
    ++counts[world_of(ex.axioms, std::span<const Profile* const>(ptrs.data(), n),
                      std::span<const Candidate>(winners.data(), n))];
  }
}

inline std::vector<std::uint64_t> superset_sums(std::vector<std::uint64_t> v) {
  for (std::size_t bit = 1; bit < v.size(); bit <<= 1) {
    for (std::size_t s = 0; s < v.size(); ++s) {
      if (!(s & bit)) v[s] += v[s | bit];
    }
  }
  return v;
}

}  // namespace detail

/// Monte Carlo estimate from N i.i.d. draws. Draws are split into fixed-size
/// shards, each with its own stream derived from (seed, shard index), so the
/// result is identical for any thread count.
inline EstimatedCollection estimate_collection(const Experiment& ex, unsigned threads = 1) {
  ex.validate();
  const AxiomSet axioms = axiom_set_of(ex.axioms);
  const int arity = tuple_arity(ex.axioms);
  const std::uint64_t shards = (ex.samples + kShardSize - 1) / kShardSize;
  const std::size_t worlds = axioms.subset_count();

  std::vector<std::uint64_t> world_counts(worlds, 0);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(shards, 256))));
  if (threads == 1) {
    for (std::uint64_t s = 0; s < shards; ++s) detail::sample_shard(ex, arity, s, world_counts);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::mutex merge;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        std::vector<std::uint64_t> local(worlds, 0);
        for (std::uint64_t s = next++; s < shards; s = next++) detail::sample_shard(ex, arity, s, local);
        std::lock_guard lock(merge);
        for (std::size_t w = 0; w < worlds; ++w) world_counts[w] += local[w];
      });
    }
    for (auto& th : pool) th.join();
  }

  EstimatedCollection out;
  out.samples = ex.samples;
  out.world_counts = world_counts;
  out.satisfied_counts = detail::superset_sums(std::move(world_counts));
  out.seed = ex.seed;
  out.sampler = ex.sampler;
  out.rule = ex.rule;
  const double n = static_cast<double>(ex.samples);
  SubsetVector p(axioms.size());
  out.standard_error = SubsetVector(axioms.size());
  for (Mask s = 0; s < p.size(); ++s) {
    p[s] = static_cast<double>(out.satisfied_counts[s]) / n;
    out.standard_error[s] = std::sqrt(p[s] * (1.0 - p[s]) / n);
  }
  out.collection = Collection(axioms, std::move(p));
  return out;
}

inline constexpr double kMaxEnumeratedTuples = 1e8;

/// (m!)^(n * arity), the number of tuples an exhaustive sweep visits.
inline double tuple_space_size(int m, int n, int arity) {
  return std::pow(static_cast<double>(PermutationTable::of(m).count()), static_cast<double>(n) * arity);
}

namespace detail {

inline void check_enumerable(int m, int n, int arity) {
  PermutationTable::check_candidates(m);
  if (n < 1 || n > kMaxVoters) throw RangeError("voter count must be in [1, 50]");
  const double size = tuple_space_size(m, n, arity);
  if (size > kMaxEnumeratedTuples) {
    std::ostringstream msg;
    msg << "exhaustive sweep over " << std::setprecision(3) << size << " tuples exceeds the 1e8 guard";
    throw SizeError(msg.str());
  }
}

/// Visits every tuple of `arity` profiles with its unnormalized weight.
/// visit(tuple pointers, profile ids, weight). Profile ids index the
/// (m!)^n profile space in odometer order.
template <typename Visit>
void for_each_tuple(const Sampler& sampler, int m, int n, int arity, Visit&& visit) {
  const auto& table = PermutationTable::of(m);
  std::vector<double> rank_weight(static_cast<std::size_t>(table.count()));
  for (int r = 0; r < table.count(); ++r) rank_weight[static_cast<std::size_t>(r)] = ranking_weight(sampler, m, r);

  auto next_profile = [&](Profile& prof) {
    for (int v = n - 1; v >= 0; --v) {
      if (prof.ranking(v) + 1 < table.count()) {
        prof.set_ranking(v, prof.ranking(v) + 1);
        return true;
      }
      prof.set_ranking(v, 0);
    }
    return false;
  };
  auto weight_of = [&](const Profile& prof) {
    double w = 1.0;
    for (auto r : prof.rankings()) w *= rank_weight[r];
    return w;
  };

  Profile cursor(m, std::vector<std::uint16_t>(static_cast<std::size_t>(n), 0));
  if (arity == 1) {
    std::size_t id = 0;
    do {
      const Profile* ptr = &cursor;
      const std::size_t ids[1] = {id++};
      visit(std::span<const Profile* const>(&ptr, 1), std::span<const std::size_t>(ids, 1), weight_of(cursor));
    } while (next_profile(cursor));
    return;
  }

  std::vector<Profile> all;
  std::vector<double> weights;
  do {
    all.push_back(cursor);
    weights.push_back(weight_of(cursor));
  } while (next_profile(cursor));
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = 0; b < all.size(); ++b) {
      const Profile* ptrs[2] = {&all[a], &all[b]};
      const std::size_t ids[2] = {a, b};
      visit(std::span<const Profile* const>(ptrs, 2), std::span<const std::size_t>(ids, 2), weights[a] * weights[b]);
    }
  }
}

/// Rule outcome per coordinate, memoized by profile id for pair sweeps.
class WinnerCache {
 public:
  explicit WinnerCache(VotingRule rule) : rule_(rule) {}

  Candidate operator()(const Profile& prof, std::size_t id, bool memoize) {
    if (!memoize) return apply_rule(rule_, prof);
    if (id >= cache_.size()) cache_.resize(id + 1, -1);
    auto& slot = cache_[id];
    if (slot < 0) slot = static_cast<std::int8_t>(apply_rule(rule_, prof));
    return slot;
  }

 private:
  VotingRule rule_;
  std::vector<std::int8_t> cache_;
};

}  // namespace detail

/// Exact collection by weighted sweep over every tuple of profiles.
inline Collection enumerate_collection(VotingRule rule, std::span<const AxiomSpec> axioms, int m, int n,
                                       const Sampler& sampler = Sampler::impartial_culture()) {
  const AxiomSet set = axiom_set_of(axioms);
  sampler.validate(m);
  const int arity = tuple_arity(axioms);
  detail::check_enumerable(m, n, arity);

  detail::WinnerCache winner(rule);
  SubsetVector world_weight(set.size());
  double total = 0.0;
  detail::for_each_tuple(sampler, m, n, arity, [&](auto tuple, auto ids, double w) {
    std::array<Candidate, 2> winners{};
    for (std::size_t k = 0; k < tuple.size(); ++k) winners[k] = winner(*tuple[k], ids[k], arity > 1);
    world_weight[detail::world_of(axioms, tuple, std::span<const Candidate>(winners.data(), tuple.size()))] += w;
    total += w;
  });
  // Sum before dividing so that p_S = 1 comes out exactly when it holds.
  auto p = zeta_superset(std::move(world_weight));
  for (auto& x : p.values()) x /= total;
  return Collection(set, std::move(p));
}

struct DominanceReport {
  AxiomSet axioms;
  /// included[S]: every tuple where G satisfies all of S is one where F does
  /// too. Entry 0 is always true.
  std::vector<bool> included;
  bool dominates = true;
};

/// Instance-level dominance of ruleF over ruleG for every axiom combination.
inline DominanceReport dominance_check(VotingRule rule_f, VotingRule rule_g, std::span<const AxiomSpec> axioms, int m,
                                       int n) {
  const AxiomSet set = axiom_set_of(axioms);
  const int arity = tuple_arity(axioms);
  detail::check_enumerable(m, n, arity);

  detail::WinnerCache winner_f(rule_f);
  detail::WinnerCache winner_g(rule_g);
  std::set<std::pair<Mask, Mask>> world_pairs;
  detail::for_each_tuple(Sampler::impartial_culture(), m, n, arity, [&](auto tuple, auto ids, double) {
    std::array<Candidate, 2> wf{};
    std::array<Candidate, 2> wg{};
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      wf[k] = winner_f(*tuple[k], ids[k], arity > 1);
      wg[k] = winner_g(*tuple[k], ids[k], arity > 1);
    }
    const Mask f = detail::world_of(axioms, tuple, std::span<const Candidate>(wf.data(), tuple.size()));
    const Mask g = detail::world_of(axioms, tuple, std::span<const Candidate>(wg.data(), tuple.size()));
    if (!is_subset(g, f)) world_pairs.emplace(f, g);
  });

  DominanceReport out{set, std::vector<bool>(set.subset_count(), true), true};
  for (const auto& [f, g] : world_pairs) {
    // S fails when S lies inside G's world but not inside F's.
    for (Mask s = g; s; s = (s - 1) & g) {
      if (!is_subset(s, f)) out.included[s] = false;
    }
  }
  out.dominates = std::all_of(out.included.begin(), out.included.end(), [](bool b) { return b; });
  return out;
}

}  // namespace axiometer
