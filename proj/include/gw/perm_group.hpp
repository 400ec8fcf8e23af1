#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gw/error.hpp"
#include "gw/numeric.hpp"
#include "gw/perm.hpp"

namespace gw {

namespace detail {

/// Base and strong generating set, completed with the deterministic
/// Schreier-Sims procedure. New base points are always the smallest point
/// moved by the element that forces them.
///
/// Each level remembers, per strong generator, how many orbit positions have
/// had their Schreier generator sifted. Transversal entries are never
/// rewritten and lower levels only grow, so a verified pair stays verified and
/// every Schreier generator is tested once over the chain's lifetime.
class StabilizerChain
{
public:
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  std::size_t depth() const { return levels_.size(); }

  std::vector<Point> base() const
  {
    std::vector<Point> out;
    out.reserve(levels_.size());
    for (auto const &level : levels_)
      out.push_back(level.base);
    return out;
  }

  std::vector<std::size_t> orbit_lengths() const
  {
    std::vector<std::size_t> out;
    out.reserve(levels_.size());
    for (auto const &level : levels_)
      out.push_back(level.orbit.size());
    return out;
  }

  std::vector<Permutation> strong_generators() const { return pool_; }

  std::vector<Permutation> level_generators(std::size_t level) const
  {
    std::vector<Permutation> out;
    for (std::size_t idx : levels_.at(level).gens)
      out.push_back(pool_[idx]);
    return out;
  }

  std::span<Point const> orbit(std::size_t level) const
  {
    return levels_.at(level).orbit;
  }

  Permutation const &transversal(std::size_t level, std::size_t pos) const
  {
    return levels_.at(level).transversal.at(pos);
  }

  BigInt order() const
  {
    BigInt out = 1;
    for (auto const &level : levels_)
      out *= level.orbit.size();
    return out;
  }

  /// Strips g through levels [from, depth). Returns the residue and the level
  /// at which sifting stopped (depth() if every level was passed).
  std::pair<Permutation, std::size_t> sift(Permutation g,
                                           std::size_t from = 0) const
  {
    std::size_t level = from;
    for (; level < levels_.size(); ++level) {
      auto const &lv = levels_[level];
      Point beta = g[lv.base];
      std::int32_t pos = lv.position[beta];
      if (pos < 0)
        return {std::move(g), level};
      g *= lv.inverse_transversal[static_cast<std::size_t>(pos)];
    }
    return {std::move(g), level};
  }

  bool contains(Permutation const &g) const
  {
    if (g.degree() != degree_)
      throw DomainError("degree mismatch: element of degree " +
                        std::to_string(g.degree()) + " tested against group of degree " +
                        std::to_string(degree_));
    return sift(g).first.is_identity();
  }

  /// Adds g to the generating set; returns false when g was already a member.
  bool add_generator(Permutation const &g)
  {
    if (contains(g))
      return false;
    std::size_t deepest = insert(g, 0);
    complete(deepest);
    return true;
  }

  /// Adds all of gens and completes once.
  void add_generators(std::span<Permutation const> gens)
  {
    bool any = false;
    for (auto const &g : gens) {
      if (g.degree() != degree_)
        throw DomainError("generator degree " + std::to_string(g.degree()) +
                          " differs from group degree " + std::to_string(degree_));
      if (g.is_identity())
        continue;
      insert(g, 0);
      any = true;
    }
    if (any)
      complete(levels_.size() - 1);
  }

private:
  struct Level
  {
    Point base = 0;
    std::vector<std::size_t> gens;
    std::vector<std::size_t> verified;
    std::vector<Point> orbit;
    std::vector<std::int32_t> position;
    std::vector<Permutation> transversal;
    std::vector<Permutation> inverse_transversal;
  };

  void push_level(Point base)
  {
    Level level;
    level.base = base;
    level.orbit.push_back(base);
    level.position.assign(degree_, -1);
    level.position[base] = 0;
    level.transversal.emplace_back(degree_);
    level.inverse_transversal.emplace_back(degree_);
    levels_.push_back(std::move(level));
  }

  /// Registers h (non-identity, fixing the base points before `from`) as a
  /// strong generator on levels from..j, where j is the first level whose base
  /// point h moves; appends a level if h fixes every base point. Returns j.
  std::size_t insert(Permutation const &h, std::size_t from)
  {
    std::size_t j = from;
    while (j < levels_.size() && h[levels_[j].base] == levels_[j].base)
      ++j;
    if (j == levels_.size())
      push_level(*h.smallest_moved_point());
    pool_.push_back(h);
    std::size_t idx = pool_.size() - 1;
    for (std::size_t l = from; l <= j; ++l) {
      levels_[l].gens.push_back(idx);
      levels_[l].verified.push_back(0);
      extend_orbit(l, idx);
    }
    return j;
  }

  void extend_orbit(std::size_t l, std::size_t new_gen)
  {
    Level &lv = levels_[l];
    std::size_t const old_size = lv.orbit.size();
    auto add = [&](std::size_t from_pos, Permutation const &s) {
      Point img = s[lv.orbit[from_pos]];
      if (lv.position[img] >= 0)
        return;
      lv.position[img] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(img);
      Permutation u = lv.transversal[from_pos] * s;
      lv.inverse_transversal.push_back(u.inverse());
      lv.transversal.push_back(std::move(u));
    };
    Permutation const &s_new = pool_[new_gen];
    for (std::size_t pos = 0; pos < old_size; ++pos)
      add(pos, s_new);
    for (std::size_t pos = old_size; pos < lv.orbit.size(); ++pos) {
      for (std::size_t gi : lv.gens)
        add(pos, pool_[gi]);
    }
  }

  void complete(std::size_t start)
  {
    std::size_t i = start;
    for (;;) {
      bool descended = false;
      for (std::size_t gi = 0; gi < levels_[i].gens.size() && !descended; ++gi) {
        while (levels_[i].verified[gi] < levels_[i].orbit.size()) {
          Level const &lv = levels_[i];
          std::size_t pos = lv.verified[gi];
          Permutation const &s = pool_[lv.gens[gi]];
          Point image = s[lv.orbit[pos]];
          auto target = static_cast<std::size_t>(lv.position[image]);
          Permutation schreier = lv.transversal[pos] * s;
          schreier *= lv.inverse_transversal[target];
          ++levels_[i].verified[gi];
          if (schreier.is_identity())
            continue;
          Permutation residue = sift(std::move(schreier), i + 1).first;
          if (residue.is_identity())
            continue;
          i = insert(residue, i + 1);
          descended = true;
          break;
        }
      }
      if (descended)
        continue;
      if (i == 0)
        break;
      --i;
    }
  }

  std::size_t degree_;
  std::vector<Permutation> pool_;
  std::vector<Level> levels_;
};

} // namespace detail

struct WreathInfo;

/// A permutation group with a completed stabilizer chain. Immutable once built;
/// copies share the chain.
class PermGroup
{
public:
  /// Builds <gens> on `degree` points.
  static PermGroup build(std::size_t degree, std::vector<Permutation> gens)
  {
    if (degree == 0)
      throw DomainError("degree must be positive");
    for (auto const &g : gens) {
      if (g.degree() != degree)
        throw DomainError("generator degree " + std::to_string(g.degree()) +
                          " differs from group degree " + std::to_string(degree));
    }
    auto chain = std::make_shared<detail::StabilizerChain>(degree);
    chain->add_generators(gens);
    return PermGroup(std::move(chain), std::move(gens));
  }

  static PermGroup trivial(std::size_t degree) { return build(degree, {}); }

  std::size_t degree() const { return chain_->degree(); }
  std::vector<Permutation> const &generators() const { return gens_; }
  BigInt order() const { return chain_->order(); }
  bool contains(Permutation const &g) const { return chain_->contains(g); }
  bool is_trivial() const { return chain_->depth() == 0; }

  std::vector<Point> base() const { return chain_->base(); }
  std::vector<std::size_t> orbit_lengths() const { return chain_->orbit_lengths(); }
  std::vector<Permutation> strong_generators() const
  {
    return chain_->strong_generators();
  }
  detail::StabilizerChain const &chain() const { return *chain_; }

  /// Present when the group was produced by `wreath`.
  std::shared_ptr<WreathInfo const> const &wreath_info() const { return wreath_; }

  PermGroup with_wreath_info(std::shared_ptr<WreathInfo const> info) const
  {
    PermGroup out = *this;
    out.wreath_ = std::move(info);
    return out;
  }

  /// All elements, as products of transversal elements along the chain.
  /// Callers are responsible for keeping the order small.
  std::vector<Permutation> elements() const
  {
    std::vector<Permutation> out;
    Permutation id(degree());
    collect(0, id, out);
    return out;
  }

  /// Wraps a completed chain; `gens` must generate the chain's group.
  static PermGroup from_chain(std::shared_ptr<detail::StabilizerChain> chain,
                              std::vector<Permutation> gens)
  {
    return PermGroup(std::move(chain), std::move(gens));
  }

private:
  PermGroup(std::shared_ptr<detail::StabilizerChain> chain,
            std::vector<Permutation> gens)
    : chain_(std::move(chain)), gens_(std::move(gens))
  {}

  // Element = u_{k-1} * ... * u_1 * u_0 with u_l from level l's transversal.
  void collect(std::size_t level, Permutation const &suffix,
               std::vector<Permutation> &out) const
  {
    if (level == chain_->depth()) {
      out.push_back(suffix);
      return;
    }
    auto const n = chain_->orbit(level).size();
    for (std::size_t pos = 0; pos < n; ++pos)
      collect(level + 1, chain_->transversal(level, pos) * suffix, out);
  }

  std::shared_ptr<detail::StabilizerChain const> chain_;
  std::vector<Permutation> gens_;
  std::shared_ptr<WreathInfo const> wreath_;
};

/// Block structure of A wr S: block x (the element of S that moves point 0 of
/// S's regular domain to x) occupies points [x*|A|, (x+1)*|A|).
struct WreathInfo
{
  PermGroup base_factor;
  PermGroup top;
};

inline void require_same_degree(PermGroup const &G, Permutation const &g)
{
  if (g.degree() != G.degree())
    throw DomainError("degree mismatch: element of degree " +
                      std::to_string(g.degree()) + " vs group of degree " +
                      std::to_string(G.degree()));
}

inline bool is_subgroup(PermGroup const &G, PermGroup const &H)
{
  if (G.degree() != H.degree())
    return false;
  for (auto const &h : H.generators()) {
    if (!G.contains(h))
      return false;
  }
  return true;
}

inline void require_subgroup(PermGroup const &G, PermGroup const &H)
{
  if (G.degree() != H.degree())
    throw DomainError("subgroup degree " + std::to_string(H.degree()) +
                      " differs from group degree " + std::to_string(G.degree()));
  for (auto const &h : H.generators()) {
    if (!G.contains(h))
      throw DomainError("not a subgroup: generator " + h.to_cycle_string() +
                        " is not a member");
  }
}

/// Smallest normal subgroup of G containing `seeds`.
inline PermGroup normal_closure(PermGroup const &G,
                                std::span<Permutation const> seeds)
{
  for (auto const &s : seeds) {
    require_same_degree(G, s);
    if (!G.contains(s))
      throw DomainError("normal closure seed " + s.to_cycle_string() +
                        " is not in the group");
  }
  auto chain = std::make_shared<detail::StabilizerChain>(G.degree());
  std::vector<Permutation> gens;
  std::deque<std::size_t> pending;
  for (auto const &s : seeds) {
    if (chain->add_generator(s)) {
      gens.push_back(s);
      pending.push_back(gens.size() - 1);
    }
  }
  while (!pending.empty()) {
    std::size_t idx = pending.front();
    pending.pop_front();
    for (auto const &g : G.generators()) {
      Permutation c = gens[idx].conjugate(g);
      if (chain->add_generator(c)) {
        gens.push_back(std::move(c));
        pending.push_back(gens.size() - 1);
      }
    }
  }
  return PermGroup::from_chain(std::move(chain), std::move(gens));
}

inline Permutation commutator(Permutation const &a, Permutation const &b)
{
  return a.inverse() * b.inverse() * a * b;
}

/// G' as the normal closure of the commutators of generator pairs.
inline PermGroup derived_subgroup(PermGroup const &G)
{
  std::vector<Permutation> seeds;
  auto const &gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = commutator(gens[i], gens[j]);
      if (!c.is_identity())
        seeds.push_back(std::move(c));
    }
  }
  return normal_closure(G, seeds);
}

inline bool is_perfect(PermGroup const &G)
{
  return derived_subgroup(G).order() == G.order();
}

/// (G:H); H must be a subgroup of G.
inline BigInt index_of(PermGroup const &G, PermGroup const &H)
{
  require_subgroup(G, H);
  BigInt const g = G.order();
  BigInt const h = H.order();
  if (g % h != 0)
    throw Error("internal error: subgroup order " + to_string(h) +
                " does not divide " + to_string(g));
  return g / h;
}

inline bool is_normal(PermGroup const &G, PermGroup const &H)
{
  require_subgroup(G, H);
  for (auto const &h : H.generators()) {
    for (auto const &g : G.generators()) {
      if (!H.contains(h.conjugate(g)))
        return false;
    }
  }
  return true;
}

/// Orbit of `point` under the generators, in discovery order.
inline std::vector<Point> orbit_of(PermGroup const &G, Point point)
{
  std::vector<Point> out{point};
  std::vector<bool> seen(G.degree(), false);
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto const &g : G.generators()) {
      Point img = g[out[i]];
      if (!seen[img]) {
        seen[img] = true;
        out.push_back(img);
      }
    }
  }
  return out;
}

/// Transitive with every point stabilizer trivial.
inline bool is_regular(PermGroup const &G)
{
  return orbit_of(G, 0).size() == G.degree() && G.order() == G.degree();
}

} // namespace gw
