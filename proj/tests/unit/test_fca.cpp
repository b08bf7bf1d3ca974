#include <set>

#include "doctest.h"

#include "aspectminer/error.hpp"
#include "aspectminer/fca.hpp"
#include "fca_oracle.hpp"
#include "random_inputs.hpp"

using namespace aspectminer;
using namespace aspectminer::fca;

namespace {

Context languages() {
  Context ctx({"Java", "Smalltalk", "C++", "Scheme", "Prolog"},
              {"object-oriented", "functional", "logic", "static typing", "dynamic typing"});
  auto mark = [&](const char* e, const char* p) { ctx.set(*ctx.element_index(e), *ctx.property_index(p)); };
  mark("Java", "object-oriented");
  mark("Java", "static typing");
  mark("Smalltalk", "object-oriented");
  mark("Smalltalk", "dynamic typing");
  mark("C++", "object-oriented");
  mark("C++", "static typing");
  mark("Scheme", "functional");
  mark("Scheme", "dynamic typing");
  mark("Prolog", "logic");
  mark("Prolog", "dynamic typing");
  return ctx;
}

std::set<oracle::Pair> as_pairs(const std::vector<Concept>& cs) {
  std::set<oracle::Pair> out;
  for (const auto& c : cs) {
    oracle::IdSet x, y;
    for (auto e : indices(c.extent)) x.insert(static_cast<int>(e));
    for (auto p : indices(c.intent)) y.insert(static_cast<int>(p));
    out.emplace(x, y);
  }
  return out;
}

std::set<std::string> names(const std::vector<std::string>& all, const Bits& bits) {
  std::set<std::string> out;
  for (auto i : indices(bits)) out.insert(all[i]);
  return out;
}

}  // namespace

TEST_CASE("languages context has eight concepts") {
  auto ctx = languages();
  auto lat = lattice(ctx);
  CHECK(lat.size() == 8);

  auto jc = lat.index_of_extent(ctx.element_set({"Java", "C++"}));
  REQUIRE(jc);
  CHECK(names(ctx.properties(), lat.at(*jc).intent) == std::set<std::string>{"object-oriented", "static typing"});
  CHECK(lat.element_label(*ctx.element_index("Java")) == *jc);
  CHECK(lat.element_label(*ctx.element_index("C++")) == *jc);

  auto oo = lat.property_label(*ctx.property_index("object-oriented"));
  CHECK(names(ctx.elements(), lat.at(oo).extent) == std::set<std::string>{"Java", "Smalltalk", "C++"});
  CHECK(names(ctx.properties(), lat.at(oo).intent) == std::set<std::string>{"object-oriented"});

  CHECK(lat.at(lat.bottom()).extent.none());
  CHECK(lat.at(lat.top()).intent.none());
  CHECK(lat.at(lat.top()).extent.count() == 5);
  CHECK(lat.alpha(lat.top()).empty());
  CHECK(lat.beta(lat.bottom()).empty());
}

TEST_CASE("concepts match brute-force enumeration") {
  testgen::Rng rng(20240611);
  for (int trial = 0; trial < 150; ++trial) {
    auto rc = testgen::random_context(rng, 12, 12);
    auto got = concepts(rc.ctx);
    auto want = oracle::all_concepts(rc.table, rc.ctx.property_count());
    REQUIRE(as_pairs(got) == want);
    CHECK(got.size() == want.size());
    for (const auto& c : got) CHECK(is_concept(rc.ctx, c));
  }
}

TEST_CASE("canonical order sorts by extent size then ids") {
  testgen::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto rc = testgen::random_context(rng, 8, 8);
    auto cs = concepts(rc.ctx);
    for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i - 1].extent.count() <= cs[i].extent.count());
    auto shuffled = cs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    sort_canonical(rc.ctx, shuffled);
    CHECK(shuffled == cs);
  }
}

TEST_CASE("concepts of the transposed context are the swapped pairs") {
  testgen::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto rc = testgen::random_context(rng, 10, 10);
    std::set<std::pair<Bits, Bits>> a, b;
    for (const auto& c : concepts(rc.ctx)) a.emplace(c.extent, c.intent);
    for (const auto& c : concepts(rc.ctx.transposed())) b.emplace(c.intent, c.extent);
    CHECK(a == b);
  }
}

TEST_CASE("galois duality, closure idempotence and meet") {
  testgen::Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    auto rc = testgen::random_context(rng, 9, 9);
    auto lat = lattice(rc.ctx);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      for (std::size_t j = 0; j < lat.size(); ++j) {
        const auto& a = lat.at(i);
        const auto& b = lat.at(j);
        CHECK(a.extent.is_subset_of(b.extent) == b.intent.is_subset_of(a.intent));
        CHECK(lat.at(lat.meet(i, j)).extent == (a.extent & b.extent));
        CHECK(lat.at(lat.join(i, j)).intent == (a.intent & b.intent));
        CHECK(lat.leq(i, j) == a.extent.is_subset_of(b.extent));
      }
    }
    for (int k = 0; k < 10; ++k) {
      Bits y = rc.ctx.no_properties();
      for (std::size_t p = 0; p < y.size(); ++p)
        if (testgen::coin(rng, 0.3)) y.set(p);
      auto once = intent_closure(rc.ctx, extent_closure(rc.ctx, y));
      CHECK(y.is_subset_of(once));
      CHECK(intent_closure(rc.ctx, extent_closure(rc.ctx, once)) == once);
    }
  }
}

TEST_CASE("extent and intent are rebuilt from sparse labels") {
  testgen::Rng rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    auto rc = testgen::random_context(rng, 10, 10);
    auto lat = lattice(rc.ctx);
    for (std::size_t c = 0; c < lat.size(); ++c) {
      Bits ext = rc.ctx.no_elements(), in = rc.ctx.no_properties();
      for (std::size_t d = 0; d < lat.size(); ++d) {
        if (lat.leq(d, c))
          for (auto e : lat.beta(d)) ext.set(e);
        if (lat.leq(c, d))
          for (auto p : lat.alpha(d)) in.set(p);
      }
      CHECK(ext == lat.at(c).extent);
      CHECK(in == lat.at(c).intent);
    }
  }
}

TEST_CASE("sparse labels agree with the oracle's gamma and mu") {
  testgen::Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    auto rc = testgen::random_context(rng, 8, 8);
    auto lat = lattice(rc.ctx);
    auto cs = oracle::all_concepts(rc.table, rc.ctx.property_count());
    for (std::size_t e = 0; e < rc.ctx.element_count(); ++e) {
      auto want = oracle::gamma(cs, static_cast<int>(e));
      CHECK(as_pairs({lat.at(lat.element_label(e))}) == std::set<oracle::Pair>{want});
    }
    for (std::size_t p = 0; p < rc.ctx.property_count(); ++p) {
      auto want = oracle::mu(cs, static_cast<int>(p));
      CHECK(as_pairs({lat.at(lat.property_label(p))}) == std::set<oracle::Pair>{want});
    }
  }
}

TEST_CASE("cover edges are exactly the immediate successors") {
  testgen::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto rc = testgen::random_context(rng, 8, 8);
    auto lat = lattice(rc.ctx);
    std::set<std::pair<std::size_t, std::size_t>> want;
    for (std::size_t a = 0; a < lat.size(); ++a)
      for (std::size_t b = 0; b < lat.size(); ++b) {
        if (a == b || !lat.leq(a, b)) continue;
        bool immediate = true;
        for (std::size_t m = 0; m < lat.size(); ++m)
          if (m != a && m != b && lat.leq(a, m) && lat.leq(m, b)) immediate = false;
        if (immediate) want.emplace(a, b);
      }
    std::set<std::pair<std::size_t, std::size_t>> got(lat.covers().begin(), lat.covers().end());
    CHECK(got == want);
  }
}

TEST_CASE("empty context yields a single concept") {
  Context ctx({}, {});
  auto lat = lattice(ctx);
  CHECK(lat.size() == 1);
  CHECK(lat.top() == lat.bottom());
  CHECK(lat.covers().empty());
}

TEST_CASE("labels of a concept given by value") {
  auto ctx = languages();
  auto lat = lattice(ctx);
  Concept stranger{ctx.element_set({"Java", "Scheme"}), ctx.no_properties()};
  CHECK_THROWS_AS(alpha(lat, stranger), Error);
  auto jc = *lat.index_of_extent(ctx.element_set({"Java", "C++"}));
  CHECK(beta(lat, lat.at(jc)).size() == 2);
  CHECK_THROWS_AS(Context({"a", "a"}, {"p"}), Error);
}
