#pragma once

// Subject-program fact model. A frontend (or the corpus generator) emits a
// facts file; everything downstream works on the validated, immutable
// ProgramFacts built from it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aspectminer {

enum class TypeKind { Class, Interface };

enum class Binding { Virtual, Static };

enum class MethodFlag : std::uint8_t {
  Accessor = 1u << 0,
  Constructor = 1u << 1,
  Static = 1u << 2,
  Private = 1u << 3,
  Utility = 1u << 4,
};

class MethodFlags {
 public:
  constexpr MethodFlags() = default;
  constexpr MethodFlags(std::initializer_list<MethodFlag> flags) {
    for (auto f : flags) bits_ |= static_cast<std::uint8_t>(f);
  }

  constexpr bool has(MethodFlag f) const { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  constexpr void set(MethodFlag f) { bits_ |= static_cast<std::uint8_t>(f); }
  constexpr bool empty() const { return bits_ == 0; }

  friend constexpr bool operator==(MethodFlags, MethodFlags) = default;

 private:
  std::uint8_t bits_ = 0;
};

struct TypeDecl {
  std::string id;
  std::string name;  // fully scoped, e.g. org.jhotdraw.standard.AbstractCommand
  TypeKind kind = TypeKind::Class;
  std::optional<std::string> superId;
  std::vector<std::string> interfaceIds;
  bool isTest = false;

  /// Last segment of the scoped name.
  std::string_view simple_name() const;

  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct MethodDecl {
  std::string id;
  std::string typeId;
  std::string name;
  std::vector<std::string> paramSig;
  MethodFlags flags;

  friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

struct CallEdge {
  std::string callerId;
  std::string calleeId;
  Binding binding = Binding::Virtual;

  friend bool operator==(const CallEdge&, const CallEdge&) = default;
};

/// (overrider, overridden)
using OverridePair = std::pair<std::string, std::string>;

/// Source line of each record, used to attach context to validation errors.
struct RecordLines {
  std::vector<std::size_t> types;
  std::vector<std::size_t> methods;
  std::vector<std::size_t> calls;
  std::vector<std::pair<OverridePair, std::size_t>> overrides;
};

class ProgramFacts {
 public:
  ProgramFacts() = default;

  /// Validates every invariant and merges the explicit override pairs with
  /// the derived ones. Throws aspectminer::Error on violation.
  static ProgramFacts build(std::vector<TypeDecl> types, std::vector<MethodDecl> methods,
                            std::vector<CallEdge> calls,
                            std::set<OverridePair> explicitOverrides = {},
                            const RecordLines* lines = nullptr);

  const std::vector<TypeDecl>& types() const { return types_; }
  const std::vector<MethodDecl>& methods() const { return methods_; }
  const std::vector<CallEdge>& calls() const { return calls_; }
  const std::set<OverridePair>& overrides() const { return overrides_; }

  const TypeDecl* find_type(std::string_view id) const;
  const MethodDecl* find_method(std::string_view id) const;
  std::optional<std::size_t> type_index(std::string_view id) const;
  std::optional<std::size_t> method_index(std::string_view id) const;

  /// Enclosing type of a method; the method must belong to these facts.
  const TypeDecl& enclosing_type(const MethodDecl& m) const;

  /// True iff `sub` reaches `super` through one or more extends/implements edges.
  bool is_proper_subtype(std::size_t sub, std::size_t super) const;

  /// Methods transitively overridden by / overriding the method at `index`.
  const std::vector<std::size_t>& override_ancestors(std::size_t index) const {
    return overrideUp_[index];
  }
  const std::vector<std::size_t>& override_descendants(std::size_t index) const {
    return overrideDown_[index];
  }

  friend bool operator==(const ProgramFacts& a, const ProgramFacts& b) {
    return a.types_ == b.types_ && a.methods_ == b.methods_ && a.calls_ == b.calls_ &&
           a.overrides_ == b.overrides_;
  }

 private:
  std::vector<TypeDecl> types_;
  std::vector<MethodDecl> methods_;
  std::vector<CallEdge> calls_;
  std::set<OverridePair> overrides_;

  std::unordered_map<std::string, std::size_t> typeIndex_;
  std::unordered_map<std::string, std::size_t> methodIndex_;
  std::vector<std::size_t> methodType_;
  // Sorted proper supertypes per type (extends + implements, transitive).
  std::vector<std::vector<std::size_t>> supertypes_;
  std::vector<std::vector<std::size_t>> overrideUp_;
  std::vector<std::vector<std::size_t>> overrideDown_;
};

/// Parses the tab-separated facts format (T/M/C/O records, `#` comments).
ProgramFacts parse_facts(std::string_view text);
ProgramFacts read_facts_file(const std::string& path);

/// Inverse of parse_facts; writes every override pair as an explicit O record.
std::string serialize_facts(const ProgramFacts& facts);

/// All (m2, m1) where m2, m1 share (name, paramSig) and m2's type is a proper
/// subtype of m1's type.
std::set<OverridePair> derive_overrides(const ProgramFacts& facts);

/// Topmost class on the extends chain; interfaces are their own roots.
/// Throws Error(UnknownType).
std::string hierarchy_root(const ProgramFacts& facts, std::string_view typeId);

/// Frontend flag, or get/set/is prefix on a camel-case boundary with <= 1 parameter.
bool is_accessor(const MethodDecl& m);

/// Frontend flag, or *Test / Test* on the simple name.
bool is_test_type(const TypeDecl& t);

std::string_view to_string(Binding b);
std::string_view to_string(TypeKind k);

}  // namespace aspectminer
