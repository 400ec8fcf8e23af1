#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gw/abelian.hpp"
#include "gw/config.hpp"
#include "gw/error.hpp"
#include "gw/group_expr.hpp"
#include "gw/numeric.hpp"
#include "gw/perm_group.hpp"

namespace gw {

enum class CountMode
{
  formula,
  brute_force,
  exhaustive_subgroups,
  witness_lower_bound,
};

inline std::string to_string(CountMode m)
{
  switch (m) {
  case CountMode::formula: return "formula";
  case CountMode::brute_force: return "brute_force";
  case CountMode::exhaustive_subgroups: return "exhaustive_subgroups";
  case CountMode::witness_lower_bound: return "witness_lower_bound";
  }
  return "?";
}

/// I_G(n) or I_G(n,m) together with how it was obtained.
struct CountReport
{
  std::uint64_t n = 1;
  std::optional<std::uint64_t> m;
  BigInt value = 0;
  CountMode mode = CountMode::formula;
  /// Subgroup that attains (exhaustive) or certifies (witness) the value.
  std::optional<std::string> witness;
  std::optional<BigInt> witness_index;
};

namespace detail {

inline std::vector<std::uint64_t> divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d)
        out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int moebius(std::uint64_t n)
{
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0)
        return 0;
      sign = -sign;
    }
  }
  if (n > 1)
    sign = -sign;
  return sign;
}

inline std::uint64_t euler_phi(std::uint64_t n)
{
  std::uint64_t out = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0)
        n /= p;
      out -= out / p;
    }
  }
  if (n > 1)
    out -= out / n;
  return out;
}

} // namespace detail

/// I_G(n) from the invariant factors of G/G': the number of surjections onto
/// C_n (Moebius inversion of |Hom(A, C_d)| = prod gcd(d_i, d)) divided by phi(n).
inline BigInt cyclic_quotients_from_invariants(AbelianInvariants const &inv,
                                               std::uint64_t n)
{
  if (n == 0)
    throw DomainError("n must be positive");
  BigInt surjections = 0;
  for (std::uint64_t d : detail::divisors(n)) {
    int mu = detail::moebius(n / d);
    if (mu == 0)
      continue;
    BigInt homs = 1;
    for (auto const &f : inv.factors)
      homs *= gcd(f, BigInt(d));
    surjections += mu > 0 ? homs : BigInt(-homs);
  }
  return surjections / detail::euler_phi(n);
}

inline CountReport count_cyclic_quotients(PermGroup const &G, std::uint64_t n)
{
  if (n == 0)
    throw DomainError("n must be positive");
  CountReport r;
  r.n = n;
  r.mode = CountMode::formula;
  r.value = n == 1 ? BigInt(1) : cyclic_quotients_from_invariants(abelian_invariants(G), n);
  return r;
}

namespace detail {

class Bitset
{
public:
  explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  bool subset_of(Bitset const &o) const
  {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~o.words_[w])
        return false;
    }
    return true;
  }
  friend bool operator==(Bitset const &, Bitset const &) = default;
  friend auto operator<=>(Bitset const &a, Bitset const &b) { return a.words_ <=> b.words_; }

private:
  std::vector<std::uint64_t> words_;
};

/// All elements of a small group, found by closing the generators under
/// multiplication (independently of the stabilizer chain) and sorted
/// lexicographically by image list.
class ElementTable
{
public:
  explicit ElementTable(PermGroup const &G) : degree_(G.degree())
  {
    Permutation id(degree_);
    std::unordered_map<Permutation, std::size_t, PermutationHash> seen;
    std::vector<Permutation> found{id};
    seen.emplace(id, 0);
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (auto const &g : G.generators()) {
        Permutation h = found[i] * g;
        if (seen.emplace(h, found.size()).second)
          found.push_back(std::move(h));
      }
    }
    std::sort(found.begin(), found.end());
    elements_ = std::move(found);
    for (std::size_t i = 0; i < elements_.size(); ++i)
      index_.emplace(elements_[i], i);
    columns_.resize(elements_.size());
    for (auto const &g : G.generators())
      generators_.push_back(index_.at(g));
  }

  std::size_t size() const { return elements_.size(); }
  Permutation const &element(std::size_t i) const { return elements_[i]; }
  std::size_t index(Permutation const &p) const { return index_.at(p); }
  std::vector<std::size_t> const &generators() const { return generators_; }
  std::size_t degree() const { return degree_; }

  std::size_t mul(std::size_t a, std::size_t b)
  {
    auto &col = columns_[b];
    if (col.empty()) {
      col.resize(elements_.size());
      for (std::size_t x = 0; x < elements_.size(); ++x)
        col[x] = static_cast<std::uint32_t>(index_.at(elements_[x] * elements_[b]));
    }
    return col[a];
  }

  struct Subgroup
  {
    Bitset members;
    std::vector<std::size_t> gens;
    std::size_t order = 1;
  };

  Subgroup trivial() const
  {
    Subgroup s{Bitset(size()), {}, 1};
    s.members.set(0);
    return s;
  }

  /// Smallest subgroup containing `start` and all of `extra`.
  Subgroup extend(Subgroup start, std::vector<std::size_t> const &extra)
  {
    std::vector<std::size_t> list;
    list.reserve(start.order);
    for (std::size_t i = 0; i < size(); ++i) {
      if (start.members.test(i))
        list.push_back(i);
    }
    for (std::size_t x : extra) {
      if (start.members.test(x))
        continue;
      start.gens.push_back(x);
      std::size_t const old_size = list.size();
      auto visit = [&](std::size_t e, std::size_t g) {
        std::size_t h = mul(e, g);
        if (!start.members.test(h)) {
          start.members.set(h);
          list.push_back(h);
        }
      };
      for (std::size_t i = 0; i < old_size; ++i)
        visit(list[i], x);
      for (std::size_t i = old_size; i < list.size(); ++i) {
        for (std::size_t g : start.gens)
          visit(list[i], g);
      }
    }
    start.order = list.size();
    return start;
  }

  std::vector<std::vector<std::size_t>> conjugacy_classes()
  {
    std::vector<bool> done(size(), false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (done[i])
        continue;
      std::vector<std::size_t> cls{i};
      done[i] = true;
      for (std::size_t k = 0; k < cls.size(); ++k) {
        for (std::size_t g : generators_) {
          std::size_t c = index_.at(elements_[cls[k]].conjugate(elements_[g]));
          if (!done[c]) {
            done[c] = true;
            cls.push_back(c);
          }
        }
      }
      std::sort(cls.begin(), cls.end());
      out.push_back(std::move(cls));
    }
    return out;
  }

  /// Smallest k >= 1 with e^k in N.
  std::size_t coset_order(std::size_t e, Bitset const &N, std::size_t limit)
  {
    std::size_t p = e;
    for (std::size_t k = 1; k <= limit; ++k) {
      if (N.test(p))
        return k;
      p = mul(p, e);
    }
    return limit + 1;
  }

private:
  std::size_t degree_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
  std::vector<std::vector<std::uint32_t>> columns_;
  std::vector<std::size_t> generators_;
};

} // namespace detail

/// Normal subgroups of a small group, enumerated as joins of normal closures
/// of conjugacy classes. Serves as the independent oracle for the
/// abelianization formula.
class NormalSubgroupLattice
{
public:
  explicit NormalSubgroupLattice(PermGroup const &G, Guards const &guards = {})
    : table_((guards.check_oracle(G.order(), "brute-force oracle input"), G))
  {
    auto classes = table_.conjugacy_classes();
    std::set<detail::Bitset> seen;
    normals_.push_back(table_.trivial());
    seen.insert(normals_.back().members);
    for (std::size_t q = 0; q < normals_.size(); ++q) {
      for (auto const &cls : classes) {
        if (normals_[q].members.test(cls.front()))
          continue;
        auto M = table_.extend(normals_[q], cls);
        if (seen.insert(M.members).second)
          normals_.push_back(std::move(M));
      }
    }
    std::sort(normals_.begin(), normals_.end(), [](auto const &a, auto const &b) {
      return a.order != b.order ? a.order < b.order : a.members < b.members;
    });
  }

  std::size_t group_order() const { return table_.size(); }
  std::size_t size() const { return normals_.size(); }

  /// Orders of the normal subgroups, ascending.
  std::vector<std::size_t> orders() const
  {
    std::vector<std::size_t> out;
    for (auto const &N : normals_)
      out.push_back(N.order);
    return out;
  }

  /// Generators of the i-th normal subgroup.
  std::vector<Permutation> generators(std::size_t i) const
  {
    std::vector<Permutation> out;
    for (std::size_t g : normals_.at(i).gens)
      out.push_back(table_.element(g));
    return out;
  }

  /// Number of N with G/N cyclic of order n.
  std::size_t count_cyclic(std::uint64_t n)
  {
    std::size_t count = 0;
    for (auto const &N : normals_) {
      if (N.order * n != table_.size())
        continue;
      for (std::size_t e = 0; e < table_.size(); ++e) {
        if (table_.coset_order(e, N.members, n) == n) {
          ++count;
          break;
        }
      }
    }
    return count;
  }

private:
  detail::ElementTable table_;
  std::vector<detail::ElementTable::Subgroup> normals_;
};

inline CountReport brute_force_cyclic_quotients(PermGroup const &G, std::uint64_t n,
                                                Guards const &guards = {})
{
  if (n == 0)
    throw DomainError("n must be positive");
  NormalSubgroupLattice lattice(G, guards);
  CountReport r;
  r.n = n;
  r.mode = CountMode::brute_force;
  r.value = lattice.count_cyclic(n);
  return r;
}

enum class SubgroupSearch
{
  automatic,
  full_lattice,
  low_index,
};

namespace detail {

/// All subgroups of a small group as joins of cyclic subgroups.
inline std::vector<PermGroup> full_subgroup_lattice(PermGroup const &G, std::uint64_t m)
{
  ElementTable table(G);
  std::size_t const order = table.size();
  std::set<Bitset> seen;
  std::vector<ElementTable::Subgroup> subs{table.trivial()};
  seen.insert(subs.back().members);
  std::vector<std::size_t> cyclic_gens;
  for (std::size_t e = 1; e < order; ++e) {
    auto C = table.extend(table.trivial(), {e});
    if (seen.insert(C.members).second) {
      subs.push_back(std::move(C));
      cyclic_gens.push_back(e);
    }
  }
  for (std::size_t q = 0; q < subs.size(); ++q) {
    for (std::size_t c : cyclic_gens) {
      if (subs[q].members.test(c))
        continue;
      auto M = table.extend(subs[q], {c});
      if (seen.insert(M.members).second)
        subs.push_back(std::move(M));
    }
  }
  std::erase_if(subs, [&](auto const &H) { return H.order * m < order; });
  std::sort(subs.begin(), subs.end(), [](auto const &a, auto const &b) {
    return a.order != b.order ? a.order > b.order : a.members < b.members;
  });
  std::vector<PermGroup> out;
  for (auto const &H : subs) {
    std::vector<Permutation> gens;
    for (std::size_t g : H.gens)
      gens.push_back(table.element(g));
    out.push_back(PermGroup::build(G.degree(), std::move(gens)));
  }
  return out;
}

/// Subgroups of index <= m as point stabilizers of transitive actions on at
/// most m points, found by backtracking over canonical coset tables.
///
/// Entries (coset, generator) are filled in scan order and a new coset is
/// only ever introduced at the first undefined entry, so each subgroup has
/// exactly one table. Partial tables are pruned with relators w^ord(w) for
/// short words w; a complete table is accepted only when the diagonal group
/// <(g, pi(g))> has order |G|, which proves that the generator images extend
/// to a homomorphism.
class LowIndexSearch
{
public:
  LowIndexSearch(PermGroup const &G, std::uint64_t m) : G_(G), m_(m)
  {
    for (auto const &g : G.generators()) {
      if (!g.is_identity() && std::find(gens_.begin(), gens_.end(), g) == gens_.end())
        gens_.push_back(g);
    }
    build_relators();
    std::size_t const r = gens_.size();
    fwd_.assign(m_, std::vector<int>(r, -1));
    bwd_.assign(m_, std::vector<int>(r, -1));
  }

  std::vector<PermGroup> run()
  {
    count_ = 1;
    search();
    std::sort(found_.begin(), found_.end());
    std::vector<PermGroup> out;
    for (auto const &t : found_)
      out.push_back(subgroup_of(t));
    return out;
  }

private:
  using Letter = std::pair<std::size_t, bool>;  // generator, inverted
  struct Table
  {
    std::size_t cosets;
    std::vector<int> entries;  // row-major cosets x gens
    friend auto operator<=>(Table const &, Table const &) = default;
  };

  void build_relators()
  {
    std::size_t const r = gens_.size();
    std::vector<std::vector<Letter>> words;
    for (std::size_t i = 0; i < r; ++i)
      words.push_back({{i, false}});
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        words.push_back({{i, false}, {j, false}});
        words.push_back({{i, false}, {j, true}});
        words.push_back({{i, true}, {j, true}, {i, false}, {j, false}});
      }
    }
    for (auto const &w : words) {
      Permutation p(G_.degree());
      for (auto [g, inv] : w)
        p *= inv ? gens_[g].inverse() : gens_[g];
      BigInt const ord = p.order();
      if (ord * w.size() > kMaxRelatorLength)
        continue;
      std::vector<Letter> rel;
      for (std::size_t k = 0; k < static_cast<std::size_t>(ord); ++k)
        rel.insert(rel.end(), w.begin(), w.end());
      relators_.push_back(std::move(rel));
    }
  }

  int step(int x, Letter l) const
  {
    return l.second ? bwd_[static_cast<std::size_t>(x)][l.first]
                    : fwd_[static_cast<std::size_t>(x)][l.first];
  }

  int step_back(int y, Letter l) const
  {
    return l.second ? fwd_[static_cast<std::size_t>(y)][l.first]
                    : bwd_[static_cast<std::size_t>(y)][l.first];
  }

  bool consistent() const
  {
    for (std::size_t x = 0; x < count_; ++x) {
      for (auto const &rel : relators_) {
        int cur = static_cast<int>(x);
        std::size_t pos = 0;
        for (; pos < rel.size(); ++pos) {
          int next = step(cur, rel[pos]);
          if (next < 0)
            break;
          cur = next;
        }
        if (pos == rel.size()) {
          if (cur != static_cast<int>(x))
            return false;
          continue;
        }
        int back = static_cast<int>(x);
        std::size_t end = rel.size();
        for (; end > pos; --end) {
          int prev = step_back(back, rel[end - 1]);
          if (prev < 0)
            break;
          back = prev;
        }
        if (end == pos && back != cur)
          return false;
      }
    }
    return true;
  }

  void search()
  {
    std::size_t const r = gens_.size();
    std::size_t c = 0, j = 0;
    bool open = false;
    for (c = 0; c < count_; ++c) {
      for (j = 0; j < r; ++j) {
        if (fwd_[c][j] < 0) {
          open = true;
          break;
        }
      }
      if (open)
        break;
    }
    if (!open) {
      record();
      return;
    }
    auto assign = [&](std::size_t d) {
      fwd_[c][j] = static_cast<int>(d);
      bwd_[d][j] = static_cast<int>(c);
      if (consistent())
        search();
      fwd_[c][j] = -1;
      bwd_[d][j] = -1;
    };
    for (std::size_t d = 0; d < count_; ++d) {
      if (bwd_[d][j] < 0)
        assign(d);
    }
    if (count_ < m_) {
      ++count_;
      assign(count_ - 1);
      --count_;
    }
  }

  void record()
  {
    std::size_t const r = gens_.size();
    std::size_t const n = G_.degree();
    std::vector<Permutation> diagonal;
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Point> img(n + count_);
      for (std::size_t x = 0; x < n; ++x)
        img[x] = gens_[j][static_cast<Point>(x)];
      for (std::size_t c = 0; c < count_; ++c)
        img[n + c] = static_cast<Point>(n + static_cast<std::size_t>(fwd_[c][j]));
      diagonal.push_back(Permutation::from_images(std::move(img)));
    }
    if (PermGroup::build(n + count_, std::move(diagonal)).order() != G_.order())
      return;
    Table t{count_, {}};
    for (std::size_t c = 0; c < count_; ++c)
      t.entries.insert(t.entries.end(), fwd_[c].begin(), fwd_[c].end());
    found_.push_back(std::move(t));
  }

  PermGroup subgroup_of(Table const &t) const
  {
    std::size_t const r = gens_.size();
    std::size_t const n = G_.degree();
    auto entry = [&](std::size_t c, std::size_t j) {
      return static_cast<std::size_t>(t.entries[c * r + j]);
    };
    std::vector<std::optional<Permutation>> rep(t.cosets);
    rep[0] = Permutation(n);
    std::vector<std::size_t> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::size_t c = queue[q];
      for (std::size_t j = 0; j < r; ++j) {
        std::size_t d = entry(c, j);
        if (!rep[d]) {
          rep[d] = *rep[c] * gens_[j];
          queue.push_back(d);
        }
      }
    }
    std::vector<Permutation> schreier;
    for (std::size_t c = 0; c < t.cosets; ++c) {
      for (std::size_t j = 0; j < r; ++j) {
        Permutation s = *rep[c] * gens_[j] * rep[entry(c, j)]->inverse();
        if (!s.is_identity() && std::find(schreier.begin(), schreier.end(), s) == schreier.end())
          schreier.push_back(std::move(s));
      }
    }
    auto H = PermGroup::build(n, std::move(schreier));
    if (index_of(G_, H) != t.cosets)
      throw Error("internal error: coset table index mismatch");
    return H;
  }

  static constexpr std::size_t kMaxRelatorLength = 64;

  PermGroup const &G_;
  std::size_t m_;
  std::vector<Permutation> gens_;
  std::vector<std::vector<Letter>> relators_;
  std::vector<std::vector<int>> fwd_;
  std::vector<std::vector<int>> bwd_;
  std::size_t count_ = 0;
  std::vector<Table> found_;
};

} // namespace detail

/// Every subgroup of index at most m.
///
/// full_lattice (|G| <= oracle bound) orders the result by decreasing order,
/// ties broken by the sorted element list. low_index (m <= low-index bound)
/// orders by index, then by canonical coset table. automatic uses low_index
/// when m is within its bound and the full lattice otherwise.
inline std::vector<PermGroup> subgroups_up_to_index(PermGroup const &G, std::uint64_t m,
                                                    Guards const &guards = {},
                                                    SubgroupSearch how = SubgroupSearch::automatic)
{
  if (m == 0)
    throw DomainError("m must be positive");
  bool const small = G.order() <= guards.oracle_bound;
  bool const low = m <= guards.low_index_bound;
  if (how == SubgroupSearch::automatic)
    how = low ? SubgroupSearch::low_index : SubgroupSearch::full_lattice;
  auto reject = [&] {
    throw GuardError(how == SubgroupSearch::low_index ? "low-index-bound" : "oracle-bound",
                     "subgroup enumeration needs |G| <= " + std::to_string(guards.oracle_bound) +
                         " (|G| = " + to_string(G.order()) + ") or m <= " +
                         std::to_string(guards.low_index_bound) + " (m = " +
                         std::to_string(m) + ")");
  };
  if (how == SubgroupSearch::full_lattice) {
    if (!small)
      reject();
    return detail::full_subgroup_lattice(G, m);
  }
  if (!low)
    reject();
  return detail::LowIndexSearch(G, m).run();
}

inline std::string describe_subgroup(PermGroup const &H)
{
  std::string out = "order " + to_string(H.order()) + ", generators [";
  for (std::size_t i = 0; i < H.generators().size(); ++i)
    out += (i ? ", " : "") + H.generators()[i].to_cycle_string();
  return out + "]";
}

/// I_G(n,m) by exhaustion over all subgroups of index <= m.
inline CountReport uniform_count(PermGroup const &G, std::uint64_t n, std::uint64_t m,
                                 Guards const &guards = {},
                                 SubgroupSearch how = SubgroupSearch::automatic)
{
  auto subs = subgroups_up_to_index(G, m, guards, how);
  CountReport r;
  r.n = n;
  r.m = m;
  r.mode = CountMode::exhaustive_subgroups;
  r.value = -1;
  for (auto const &H : subs) {
    BigInt v = count_cyclic_quotients(H, n).value;
    if (v > r.value) {
      r.value = v;
      r.witness = describe_subgroup(H);
      r.witness_index = G.order() / H.order();
    }
  }
  return r;
}

/// Certified lower bound I_G(n,m) >= I_H(n) for a given subgroup H of index <= m.
inline CountReport uniform_count_witness(PermGroup const &G, std::uint64_t n,
                                         std::uint64_t m, PermGroup const &H,
                                         std::string const &label)
{
  BigInt const index = index_of(G, H);
  if (index > m)
    throw DomainError("witness index " + to_string(index) + " exceeds m = " +
                      std::to_string(m));
  CountReport r;
  r.n = n;
  r.m = m;
  r.mode = CountMode::witness_lower_bound;
  r.value = count_cyclic_quotients(H, n).value;
  r.witness = label;
  r.witness_index = index;
  return r;
}

inline CountReport uniform_count(PermGroup const &G, std::uint64_t n, std::uint64_t m,
                                 GroupExpr const &witness, Guards const &guards = {})
{
  return uniform_count_witness(G, n, m, eval_expr(witness, guards), to_string(witness));
}

} // namespace gw
