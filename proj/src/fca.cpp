#include "aspectminer/fca.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "aspectminer/error.hpp"

namespace aspectminer::fca {

std::vector<std::size_t> indices(const Bits& bits) {
  std::vector<std::size_t> out;
  out.reserve(bits.count());
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) out.push_back(i);
  return out;
}

Context::Context(std::vector<std::string> elements, std::vector<std::string> properties)
    : elements_(std::move(elements)), properties_(std::move(properties)) {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (!elementIndex_.emplace(elements_[i], i).second)
      throw Error(Errc::InvalidArgument, "duplicate element " + elements_[i]);
  for (std::size_t i = 0; i < properties_.size(); ++i)
    if (!propertyIndex_.emplace(properties_[i], i).second)
      throw Error(Errc::InvalidArgument, "duplicate property " + properties_[i]);
  rows_.assign(elements_.size(), Bits(properties_.size()));
  columns_.assign(properties_.size(), Bits(elements_.size()));
}

void Context::set(std::size_t element, std::size_t property) {
  if (element >= elements_.size() || property >= properties_.size())
    throw Error(Errc::InvalidArgument, "incidence outside the context");
  rows_[element].set(property);
  columns_[property].set(element);
}

std::optional<std::size_t> Context::element_index(std::string_view id) const {
  auto it = elementIndex_.find(std::string(id));
  if (it == elementIndex_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Context::property_index(std::string_view id) const {
  auto it = propertyIndex_.find(std::string(id));
  if (it == propertyIndex_.end()) return std::nullopt;
  return it->second;
}

Bits Context::element_set(const std::vector<std::string>& ids) const {
  Bits out = no_elements();
  for (const auto& id : ids) {
    auto i = element_index(id);
    if (!i) throw Error(Errc::InvalidArgument, "unknown element " + id);
    out.set(*i);
  }
  return out;
}

Bits Context::property_set(const std::vector<std::string>& ids) const {
  Bits out = no_properties();
  for (const auto& id : ids) {
    auto i = property_index(id);
    if (!i) throw Error(Errc::InvalidArgument, "unknown property " + id);
    out.set(*i);
  }
  return out;
}

Context Context::transposed() const {
  Context t(properties_, elements_);
  t.rows_ = columns_;
  t.columns_ = rows_;
  return t;
}

Bits intent_closure(const Context& ctx, const Bits& elements) {
  Bits out = ctx.no_properties();
  out.set();
  for (auto e = elements.find_first(); e != Bits::npos; e = elements.find_next(e)) out &= ctx.row(e);
  return out;
}

Bits extent_closure(const Context& ctx, const Bits& properties) {
  Bits out = ctx.no_elements();
  out.set();
  for (auto p = properties.find_first(); p != Bits::npos; p = properties.find_next(p))
    out &= ctx.column(p);
  return out;
}

bool is_concept(const Context& ctx, const Concept& c) {
  return extent_closure(ctx, c.intent) == c.extent && intent_closure(ctx, c.extent) == c.intent;
}

void sort_canonical(const Context& ctx, std::vector<Concept>& concepts) {
  const auto& ids = ctx.elements();
  std::vector<std::size_t> byName(ids.size());
  std::iota(byName.begin(), byName.end(), 0);
  std::sort(byName.begin(), byName.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
  std::vector<std::size_t> rank(ids.size());
  for (std::size_t r = 0; r < byName.size(); ++r) rank[byName[r]] = r;

  struct Keyed {
    std::vector<std::size_t> key;
    Concept value;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(concepts.size());
  for (auto& c : concepts) {
    std::vector<std::size_t> key;
    for (auto e : indices(c.extent)) key.push_back(rank[e]);
    std::sort(key.begin(), key.end());
    keyed.push_back({std::move(key), std::move(c)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.key.size() != b.key.size()) return a.key.size() < b.key.size();
    return a.key < b.key;
  });
  concepts.clear();
  for (auto& k : keyed) concepts.push_back(std::move(k.value));
}

namespace {

bool same_prefix(const Bits& a, const Bits& b, std::size_t j) {
  Bits diff = a ^ b;
  auto first = diff.find_first();
  return first == Bits::npos || first >= j;
}

// Close-by-One over the property side of `ctx`. Each concept is reached from
// exactly one parent through the canonicity test, so no duplicate check is needed.
void close_by_one(const Context& ctx, std::vector<Concept>& out) {
  struct Frame {
    Bits extent;
    Bits intent;
    std::size_t next;
  };
  Bits all = ctx.no_elements();
  all.set();
  std::vector<Frame> stack;
  Bits topIntent = intent_closure(ctx, all);
  out.push_back({all, topIntent});
  stack.push_back({std::move(all), std::move(topIntent), 0});

  const std::size_t np = ctx.property_count();
  while (!stack.empty()) {
    Frame& f = stack.back();
    while (f.next < np && f.intent.test(f.next)) ++f.next;
    if (f.next >= np) {
      stack.pop_back();
      continue;
    }
    const std::size_t j = f.next++;
    Bits extent = f.extent & ctx.column(j);
    Bits intent = intent_closure(ctx, extent);
    if (!same_prefix(intent, f.intent, j)) continue;
    out.push_back({extent, intent});
    stack.push_back({std::move(extent), std::move(intent), j + 1});
  }
}

}  // namespace

std::vector<Concept> concepts(const Context& ctx) {
  std::vector<Concept> out;
  if (ctx.property_count() <= ctx.element_count()) {
    close_by_one(ctx, out);
  } else {
    close_by_one(ctx.transposed(), out);
    for (auto& c : out) std::swap(c.extent, c.intent);
  }
  sort_canonical(ctx, out);
  return out;
}

bool ConceptLattice::leq(std::size_t a, std::size_t b) const {
  return concepts_.at(a).extent.is_subset_of(concepts_.at(b).extent);
}

std::optional<std::size_t> ConceptLattice::index_of_extent(const Bits& extent) const {
  auto it = byExtent_.find(extent);
  if (it == byExtent_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ConceptLattice::index_of(const Concept& c) const {
  auto i = index_of_extent(c.extent);
  if (!i || concepts_[*i].intent != c.intent) return std::nullopt;
  return i;
}

std::size_t ConceptLattice::meet(std::size_t a, std::size_t b) const {
  // Intersections of extents are extents.
  return byExtent_.at(concepts_.at(a).extent & concepts_.at(b).extent);
}

std::size_t ConceptLattice::join(std::size_t a, std::size_t b) const {
  Bits shared = concepts_.at(a).intent & concepts_.at(b).intent;
  return byExtent_.at(extent_closure(ctx_, shared));
}

ConceptLattice lattice(const Context& ctx) {
  ConceptLattice lat;
  lat.ctx_ = ctx;
  lat.concepts_ = concepts(ctx);
  const std::size_t n = lat.concepts_.size();
  for (std::size_t i = 0; i < n; ++i) lat.byExtent_.emplace(lat.concepts_[i].extent, i);

  // Canonical order sorts by extent size, so every strict superset of
  // concepts_[i] sits at a higher index and is visited smallest-first.
  lat.upper_.assign(n, {});
  lat.lower_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const Bits& ext = lat.concepts_[i].extent;
    std::vector<std::size_t>& covers = lat.upper_[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Bits& other = lat.concepts_[j].extent;
      if (other.count() == ext.count() || !ext.is_subset_of(other)) continue;
      bool minimal = std::none_of(covers.begin(), covers.end(), [&](std::size_t k) {
        return lat.concepts_[k].extent.is_subset_of(other);
      });
      if (minimal) covers.push_back(j);
    }
    for (auto j : covers) {
      lat.lower_[j].push_back(i);
      lat.covers_.emplace_back(i, j);
    }
  }
  std::sort(lat.covers_.begin(), lat.covers_.end());

  lat.top_ = n - 1;  // largest extent
  lat.bottom_ = 0;   // smallest extent

  lat.gamma_.resize(ctx.element_count());
  lat.beta_.assign(n, {});
  for (std::size_t e = 0; e < ctx.element_count(); ++e) {
    Bits single = ctx.no_elements();
    single.set(e);
    auto idx = lat.byExtent_.at(extent_closure(ctx, intent_closure(ctx, single)));
    lat.gamma_[e] = idx;
    lat.beta_[idx].push_back(e);
  }
  lat.mu_.resize(ctx.property_count());
  lat.alpha_.assign(n, {});
  for (std::size_t p = 0; p < ctx.property_count(); ++p) {
    auto idx = lat.byExtent_.at(ctx.column(p));
    lat.mu_[p] = idx;
    lat.alpha_[idx].push_back(p);
  }
  return lat;
}

std::vector<std::size_t> alpha(const ConceptLattice& lat, const Concept& c) {
  auto i = lat.index_of(c);
  if (!i) throw Error(Errc::UnknownConcept, "concept is not a node of this lattice");
  return lat.alpha(*i);
}

std::vector<std::size_t> beta(const ConceptLattice& lat, const Concept& c) {
  auto i = lat.index_of(c);
  if (!i) throw Error(Errc::UnknownConcept, "concept is not a node of this lattice");
  return lat.beta(*i);
}

std::string dump(const Context& ctx, const std::vector<Concept>& concepts) {
  std::ostringstream out;
  auto write = [&](const Bits& bits, const std::vector<std::string>& ids) {
    out << '{';
    bool first = true;
    for (auto i : indices(bits)) {
      if (!first) out << ',';
      out << ids[i];
      first = false;
    }
    out << '}';
  };
  for (const auto& c : concepts) {
    write(c.extent, ctx.elements());
    out << " | ";
    write(c.intent, ctx.properties());
    out << '\n';
  }
  return out.str();
}

}  // namespace aspectminer::fca
