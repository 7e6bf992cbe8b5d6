#include "orth/ground.hpp"

#include <algorithm>
#include <set>

namespace orth {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxFinitePoints)
    throw InputError("ground set has " + std::to_string(names_.size()) + " points; at most " +
                     std::to_string(kMaxFinitePoints) + " are supported");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty point name");
    if (!seen.insert(n).second) throw InputError("duplicate point name '" + n + "'");
  }
}

GroundSet GroundSet::anonymous(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  return GroundSet(std::move(names));
}

std::optional<std::size_t> GroundSet::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Mask GroundSet::mask_of(const std::vector<std::string>& names) const {
  Mask m = 0;
  for (const auto& n : names) {
    auto i = index_of(n);
    if (!i) throw InputError("unknown point '" + n + "'");
    m |= bit(*i);
  }
  return m;
}

std::vector<std::string> GroundSet::names_of(Mask m) const {
  std::vector<std::string> out;
  for_each_point(m, [&](std::size_t i) { out.push_back(names_.at(i)); });
  return out;
}

std::string GroundSet::format(Mask m) const {
  std::string s = "{";
  bool first = true;
  for_each_point(m, [&](std::size_t i) {
    if (!first) s += ",";
    s += names_.at(i);
    first = false;
  });
  return s + "}";
}

GroundSet GroundSet::restrict_to(Mask m) const { return GroundSet(names_of(m)); }

}  // namespace orth
