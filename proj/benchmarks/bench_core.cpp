#include <benchmark/benchmark.h>

#include "qdslab/autgroup.hpp"
#include "qdslab/geometry.hpp"
#include "qdslab/incidence.hpp"

using namespace qdslab;

namespace {

IncidenceStructure make(const Group& g, const std::vector<int>& d) {
  return IncidenceStructure::build(g, QDSet(g, d));
}

IncidenceStructure plane13_square() {
  return power_structure(make(Group::cyclic(13), {0, 1, 3, 9}), 2);
}

void BM_BuildPlaneSquare(benchmark::State& state) {
  Group g = Group::cyclic(13);
  QDSet d(g, {0, 1, 3, 9});
  QDSet squared = qds_sum(d, d);
  for (auto _ : state) {
    IncidenceStructure s = IncidenceStructure::build(squared.group(), squared);
    benchmark::DoNotOptimize(s.num_lines());
  }
}
BENCHMARK(BM_BuildPlaneSquare);

void BM_AutomorphismsFano(benchmark::State& state) {
  IncidenceStructure f = make(Group::cyclic(7), {0, 1, 3});
  for (auto _ : state) {
    PermGroup g = automorphism_group(f);
    benchmark::DoNotOptimize(g.order);
  }
}
BENCHMARK(BM_AutomorphismsFano);

void BM_AutomorphismsPlaneSquare(benchmark::State& state) {
  IncidenceStructure s = plane13_square();
  for (auto _ : state) {
    PermGroup g = automorphism_group(s);
    benchmark::DoNotOptimize(g.order);
  }
}
BENCHMARK(BM_AutomorphismsPlaneSquare);

void BM_VeblenTernaryCube(benchmark::State& state) {
  QDSet d = canonical_set({3, 3, 3});
  IncidenceStructure s = IncidenceStructure::build(d.group(), d);
  for (auto _ : state) {
    VeblenReport r = veblen_check(s);
    benchmark::DoNotOptimize(r.holds);
  }
}
BENCHMARK(BM_VeblenTernaryCube);

void BM_DesarguesTernaryCube(benchmark::State& state) {
  QDSet d = canonical_set({3, 3, 3});
  IncidenceStructure s = IncidenceStructure::build(d.group(), d);
  for (auto _ : state) {
    DesarguesReport r = desargues_check(s);
    benchmark::DoNotOptimize(r.holds);
  }
}
BENCHMARK(BM_DesarguesTernaryCube);

void BM_SingerSearch(benchmark::State& state) {
  for (auto _ : state) {
    auto sets = singer_search(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(sets.size());
  }
}
BENCHMARK(BM_SingerSearch)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
