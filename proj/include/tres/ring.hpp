#ifndef TRES_RING_HPP
#define TRES_RING_HPP

#include <memory>
#include <string>
#include <vector>

#include "tres/error.hpp"

namespace tres {

/// Role of a variable.  Torus variables admit negative exponents (Laurent),
/// homogeneous coordinates and parameters do not.
enum class VarKind { Torus, Cox, Param };

/// Immutable list of named variables.  Polynomials hold a shared_ptr to
/// their ring; two rings are interchangeable when they agree structurally.
class Ring {
 public:
  Ring(std::vector<std::string> names, std::vector<VarKind> kinds)
      : names_(std::move(names)), kinds_(std::move(kinds)) {
    if (names_.size() != kinds_.size())
      fail(ErrorCode::DimensionMismatch, "ring names/kinds length mismatch");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          fail(ErrorCode::DuplicateDefinition,
               "duplicate variable '" + names_[i] + "'");
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  VarKind kind(std::size_t i) const { return kinds_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<VarKind>& kinds() const { return kinds_; }

  /// Index of a variable by name, or -1 when absent.
  int find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return -1;
  }

  bool allows_negative(std::size_t i) const {
    return kinds_.at(i) == VarKind::Torus;
  }

  static bool same(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ && a.kinds_ == b.kinds_;
  }

  /// True when `prefix` lists a leading segment of this ring's variables;
  /// polynomials over the prefix embed by zero-padding exponents.
  bool extends(const Ring& prefix) const {
    if (prefix.size() > size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
      if (names_[i] != prefix.names_[i] || kinds_[i] != prefix.kinds_[i])
        return false;
    return true;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names,
                         std::vector<VarKind> kinds) {
  return std::make_shared<const Ring>(std::move(names), std::move(kinds));
}

/// Ring with the given variables appended (used to adjoin homogeneous
/// coordinates to a parameter ring).
inline RingPtr extend_ring(const RingPtr& base,
                           const std::vector<std::string>& extra_names,
                           VarKind kind) {
  std::vector<std::string> names = base->names();
  std::vector<VarKind> kinds = base->kinds();
  for (const auto& n : extra_names) {
    names.push_back(n);
    kinds.push_back(kind);
  }
  return make_ring(std::move(names), std::move(kinds));
}

}  // namespace tres

#endif  // TRES_RING_HPP
