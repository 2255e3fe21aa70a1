#pragma once

// Multiset matching of side-tagged occurrences, shared by the unlabelled and
// labelled rule checkers.

#include <algorithm>
#include <optional>
#include <vector>

#include "iwb/sequent.hpp"

namespace iwb::detail {

template <class F>
struct Tagged {
  F f;
  Side side;
};

template <class F>
struct PartSpec {
  std::vector<Tagged<F>> req;   // must be present
  std::vector<Tagged<F>> pool;  // context that may be carried over
  bool exact = true;            // pool must be used up
};

template <class F>
bool same(const Tagged<F>& a, const Tagged<F>& b, bool tags) {
  return a.f == b.f && (!tags || a.side == b.side);
}

template <class F>
bool match_part(const std::vector<Tagged<F>>& got, const PartSpec<F>& spec, bool tags) {
  std::vector<bool> used(got.size(), false);
  for (const auto& r : spec.req) {
    bool found = false;
    for (std::size_t i = 0; i < got.size() && !found; ++i)
      if (!used[i] && same(got[i], r, tags)) used[i] = found = true;
    if (!found) return false;
  }
  std::vector<bool> pool_used(spec.pool.size(), false);
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (used[i]) continue;
    bool found = false;
    for (std::size_t k = 0; k < spec.pool.size() && !found; ++k)
      if (!pool_used[k] && same(got[i], spec.pool[k], tags)) pool_used[k] = found = true;
    if (!found) return false;
  }
  if (spec.exact) return std::all_of(pool_used.begin(), pool_used.end(), [](bool b) { return b; });
  return true;
}

// Sides for the occurrences of `got` so that it matches `spec`, if possible.
template <class F>
std::optional<std::vector<Side>> assign_part(const std::vector<F>& got, const PartSpec<F>& spec) {
  std::vector<std::optional<Side>> sides(got.size());
  for (const auto& r : spec.req) {
    bool found = false;
    for (std::size_t i = 0; i < got.size() && !found; ++i)
      if (!sides[i] && got[i] == r.f) {
        sides[i] = r.side;
        found = true;
      }
    if (!found) return std::nullopt;
  }
  std::vector<bool> pool_used(spec.pool.size(), false);
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (sides[i]) continue;
    for (std::size_t k = 0; k < spec.pool.size() && !sides[i]; ++k)
      if (!pool_used[k] && got[i] == spec.pool[k].f) {
        pool_used[k] = true;
        sides[i] = spec.pool[k].side;
      }
    if (!sides[i]) return std::nullopt;
  }
  if (spec.exact && !std::all_of(pool_used.begin(), pool_used.end(), [](bool b) { return b; })) return std::nullopt;
  std::vector<Side> out;
  out.reserve(sides.size());
  for (auto& s : sides) out.push_back(*s);
  return out;
}

template <class F>
std::vector<Tagged<F>> tag_all(const std::vector<F>& xs, const std::vector<Side>* sides) {
  std::vector<Tagged<F>> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({xs[i], sides ? (*sides)[i] : Side::Left});
  return out;
}

template <class T>
bool same_multiset(std::vector<T> a, std::vector<T> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace iwb::detail
