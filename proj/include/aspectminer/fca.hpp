#pragma once

// Formal concept analysis over a binary element x property context:
// closure operators, Close-by-One concept enumeration, the concept lattice
// with its cover relation, and sparse labeling.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace aspectminer::fca {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Indices of the set bits, ascending.
std::vector<std::size_t> indices(const Bits& bits);

class Context {
 public:
  Context() = default;
  /// Ids must be unique within each side; throws Error(InvalidArgument).
  Context(std::vector<std::string> elements, std::vector<std::string> properties);

  void set(std::size_t element, std::size_t property);
  bool incident(std::size_t element, std::size_t property) const {
    return rows_[element].test(property);
  }

  std::size_t element_count() const { return elements_.size(); }
  std::size_t property_count() const { return properties_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<std::string>& properties() const { return properties_; }
  std::optional<std::size_t> element_index(std::string_view id) const;
  std::optional<std::size_t> property_index(std::string_view id) const;

  /// Properties of one element / elements having one property.
  const Bits& row(std::size_t element) const { return rows_[element]; }
  const Bits& column(std::size_t property) const { return columns_[property]; }

  Bits no_elements() const { return Bits(elements_.size()); }
  Bits no_properties() const { return Bits(properties_.size()); }
  Bits element_set(const std::vector<std::string>& ids) const;
  Bits property_set(const std::vector<std::string>& ids) const;

  Context transposed() const;

 private:
  std::vector<std::string> elements_;
  std::vector<std::string> properties_;
  std::unordered_map<std::string, std::size_t> elementIndex_;
  std::unordered_map<std::string, std::size_t> propertyIndex_;
  std::vector<Bits> rows_;
  std::vector<Bits> columns_;
};

struct Concept {
  Bits extent;
  Bits intent;

  friend bool operator==(const Concept&, const Concept&) = default;
};

/// Properties shared by every element of `elements` (all properties for the empty set).
Bits intent_closure(const Context& ctx, const Bits& elements);
/// Elements having every property in `properties` (all elements for the empty set).
Bits extent_closure(const Context& ctx, const Bits& properties);

bool is_concept(const Context& ctx, const Concept& c);

/// Canonical order: extent size ascending, then the extents' element ids
/// (sorted as strings) compared lexicographically.
void sort_canonical(const Context& ctx, std::vector<Concept>& concepts);

/// Every concept of the context, in canonical order. Close-by-One runs on
/// whichever side of the context is smaller.
std::vector<Concept> concepts(const Context& ctx);

class ConceptLattice {
 public:
  const std::vector<Concept>& concepts() const { return concepts_; }
  std::size_t size() const { return concepts_.size(); }
  const Concept& at(std::size_t i) const { return concepts_.at(i); }

  /// Cover edges as (lower, upper) index pairs, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_[i]; }
  const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_[i]; }

  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }

  /// Extent inclusion order.
  bool leq(std::size_t a, std::size_t b) const;

  /// gamma(e) / mu(p): most specific concept holding e, most general holding p.
  std::size_t element_label(std::size_t element) const { return gamma_[element]; }
  std::size_t property_label(std::size_t property) const { return mu_[property]; }

  /// alpha(c): properties labeling c; beta(c): elements labeling c.
  const std::vector<std::size_t>& alpha(std::size_t i) const { return alpha_[i]; }
  const std::vector<std::size_t>& beta(std::size_t i) const { return beta_[i]; }

  std::optional<std::size_t> index_of(const Concept& c) const;
  std::optional<std::size_t> index_of_extent(const Bits& extent) const;

  std::size_t meet(std::size_t a, std::size_t b) const;
  std::size_t join(std::size_t a, std::size_t b) const;

  const Context& context() const { return ctx_; }

 private:
  friend ConceptLattice lattice(const Context& ctx);

  Context ctx_;
  std::vector<Concept> concepts_;
  std::unordered_map<Bits, std::size_t> byExtent_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<std::vector<std::size_t>> lower_;
  std::vector<std::size_t> gamma_;
  std::vector<std::size_t> mu_;
  std::vector<std::vector<std::size_t>> alpha_;
  std::vector<std::vector<std::size_t>> beta_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
};

ConceptLattice lattice(const Context& ctx);

/// Sparse labels of a concept given by value; throws Error(UnknownConcept)
/// when the pair is not a node of the lattice.
std::vector<std::size_t> alpha(const ConceptLattice& lat, const Concept& c);
std::vector<std::size_t> beta(const ConceptLattice& lat, const Concept& c);

/// One line per concept: `{e1,e2} | {p1,p2}`, ids in context order.
std::string dump(const Context& ctx, const std::vector<Concept>& concepts);

}  // namespace aspectminer::fca

