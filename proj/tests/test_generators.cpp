#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gcdc/canonical.hpp"
#include "gcdc/coders.hpp"
#include "gcdc/generators.hpp"
#include "oracles.hpp"

using namespace gcdc;

namespace {

double mean_degree(const Graph& g) { return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count()); }

std::size_t max_degree(const Graph& g) {
  auto d = g.degrees();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

double context_fraction(const Graph& g) {
  const auto s = triangle_statistics(CanonicalGraph(g));
  const double ones = static_cast<double>(s.context_ones + s.plain_ones);
  return ones > 0 ? static_cast<double>(s.context_ones) / ones : 0.0;
}

}  // namespace

TEST_CASE("ER extremes and mean") {
  CHECK(gen_er(20, 0.0, 1).edge_count() == 0);
  CHECK(gen_er(20, 1.0, 1) == Graph::complete(20));
  double total = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) total += mean_degree(gen_er(100, 0.182, s));
  CHECK(std::abs(total / 100 - 18.018) <= 1.0);

  // edge count mean within 3 sigma of Binomial(T, p)
  const double T = 4950, p = 0.1;
  double edges = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) edges += static_cast<double>(gen_er(100, p, 1000 + s).edge_count());
  const double sigma = std::sqrt(T * p * (1 - p) / 100);
  CHECK(std::abs(edges / 100 - T * p) <= 3 * sigma);
}

TEST_CASE("BA edge counts and heavy tail") {
  const Graph small = gen_ba(6, 5, 3);
  CHECK(small.edge_count() == 5);
  CHECK(small.degree(5) == 5);
  for (std::uint64_t s = 0; s < 10; ++s) CHECK(gen_ba(100, 10, s).edge_count() == 900);
  CHECK(gen_ba(50, 1, 4).edge_count() == 49);
  CHECK_THROWS(gen_ba(5, 5, 0));
  CHECK_THROWS(gen_ba(5, 0, 0));

  int heavier = 0;
  const double p = 2.0 * 10 * 390 / (400.0 * 399.0);
  for (std::uint64_t s = 0; s < 100; ++s)
    heavier += max_degree(gen_ba(400, 10, s)) > max_degree(gen_er(400, p, 5000 + s));
  CHECK(heavier >= 95);
}

TEST_CASE("NWS lattice") {
  Graph c = gen_nws(12, 2, 0.0, 1);
  CHECK(c.edge_count() == 12);
  for (NodeId v = 0; v < 12; ++v) {
    CHECK(c.degree(v) == 2);
    CHECK(c.has_edge(v, (v + 1) % 12));
  }
  for (std::size_t n : {10u, 11u, 100u}) CHECK(gen_nws(n, 5, 0.0, 1).edge_count() == (n * 5 + 1) / 2);
  const Graph k4 = gen_nws(20, 4, 0.0, 1);
  for (NodeId v = 0; v < 20; ++v) CHECK(k4.degree(v) == 4);
  const Graph k5 = gen_nws(20, 5, 0.0, 1);
  for (NodeId v = 0; v < 20; ++v) CHECK(k5.degree(v) == 5);
  // shortcuts only add
  const Graph s = gen_nws(100, 5, 0.1, 9);
  const Graph l = gen_nws(100, 5, 0.0, 9);
  for (auto [u, v] : l.edges()) CHECK(s.has_edge(u, v));
  CHECK(s.edge_count() > l.edge_count());
  CHECK_THROWS(gen_nws(5, 5, 0.1, 0));
}

TEST_CASE("NWS has more triangle-context edges than ER with matched edge count") {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph w = gen_nws(100, 5, 0.1, seed);
    const double p = static_cast<double>(w.edge_count()) / 4950.0;
    const Graph e = gen_er(100, p, 777 + seed);
    wins += context_fraction(w) > context_fraction(e);
  }
  CHECK(wins == 10);
}

TEST_CASE("mixture") {
  CHECK(gen_mixture(100, 10, 0.0, 42) == gen_ba(100, 10, 42));
  CHECK(gen_mixture(30, 3, 1.0, 42) == Graph::complete(30));
  double edges = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) edges += static_cast<double>(gen_mixture(100, 10, 0.01, s).edge_count());
  const double expected = 900 + 0.01 * 4950 * (1 - 900.0 / 4950);
  CHECK(std::abs(edges / 200 - expected) <= 2.0);
  const Graph mix = gen_mixture(100, 10, 0.05, 3);
  for (auto [u, v] : gen_ba(100, 10, 3).edges()) CHECK(mix.has_edge(u, v));
}

TEST_CASE("determinism and invariants") {
  for (Family f : {Family::ER, Family::BA, Family::NWS, Family::MIX}) {
    GenSpec spec{f, 60, 0.1, 4, 5, 123};
    const Graph a = generate(spec);
    CHECK(a == generate(spec));
    spec.seed = 124;
    CHECK_FALSE(a == generate(spec));
    for (NodeId u = 0; u < a.node_count(); ++u) {
      REQUIRE_FALSE(a.has_edge(u, u));
      for (NodeId v = 0; v < u; ++v) REQUIRE(a.has_edge(u, v) == a.has_edge(v, u));
    }
  }
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  CHECK(stream_id("BA10") != stream_id("BA9"));
}

TEST_CASE("GenSpec text") {
  const GenSpec s = GenSpec::parse("family=BA n=100 m=10 seed=7");
  CHECK(s.family == Family::BA);
  CHECK(s.n == 100);
  CHECK(s.m == 10);
  CHECK(s.seed == 7);
  CHECK(GenSpec::parse(s.to_string()) == s);
  const GenSpec w = GenSpec::parse("p=0.1 k=5 n=300 family=NWS");
  CHECK(GenSpec::parse(w.to_string()) == w);
  CHECK_THROWS(GenSpec::parse("family=ER n=10 p=1.5"));
  CHECK_THROWS(GenSpec::parse("family=BA n=10 m=10"));
  CHECK_THROWS(GenSpec::parse("family=XX n=10"));
  CHECK_THROWS(GenSpec::parse("family=ER"));
  CHECK_THROWS(GenSpec::parse("family=ER n=10 q=3"));
}
