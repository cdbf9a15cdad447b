#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "matchkit/gadget.hpp"
#include "matchkit/holant.hpp"
#include "matchkit/matchgate.hpp"

using namespace matchkit;

namespace {

Signature pair_gate(int arity, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Scalar> pool{Scalar::zero(), Scalar::one(), -Scalar::one(), Scalar::i_unit()};
  std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
  std::map<std::pair<int, int>, Scalar> pairs;
  for (int a = 1; a <= arity; ++a)
    for (int b = a + 1; b <= arity; ++b) pairs[{a, b}] = pool[d(rng)];
  return generate_from_pairs(arity, pairs);
}

void BM_MgiScan(benchmark::State& state) {
  Signature f = pair_gate(static_cast<int>(state.range(0)), 99);
  for (auto _ : state) benchmark::DoNotOptimize(mgi_check(f).pass);
}
BENCHMARK(BM_MgiScan)->Arg(4)->Arg(5)->Arg(6);

void BM_PfaffianExpand(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Signature f = pair_gate(n, 7);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian_expand(f, all));
}
BENCHMARK(BM_PfaffianExpand)->Arg(6)->Arg(8)->Arg(10);

void BM_StarContract(benchmark::State& state) {
  std::map<std::pair<int, int>, Scalar> pairs;
  int n = static_cast<int>(state.range(0));
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) pairs[{a, b}] = Scalar::integer(a) * Scalar::integer(b);
  Signature f = generate_from_pairs(n, pairs);
  StarGadget star = synthesize_star(f);
  GadgetGraph gg = star.to_gadget();
  for (auto _ : state) benchmark::DoNotOptimize(contract(gg).size());
}
BENCHMARK(BM_StarContract)->Arg(4)->Arg(6);

void BM_HolantGrid(benchmark::State& state) {
  // a 2 x k grid of equality vertices
  int k = static_cast<int>(state.range(0));
  HolantInstance inst;
  std::vector<std::vector<int>> incident(2 * k);
  int edge = 0;
  auto link = [&](int u, int v) {
    incident[u].push_back(edge);
    incident[v].push_back(edge);
    ++edge;
  };
  for (int c = 0; c < k; ++c) {
    link(2 * c, 2 * c + 1);
    if (c + 1 < k) {
      link(2 * c, 2 * c + 2);
      link(2 * c + 1, 2 * c + 3);
    }
  }
  inst.edge_count = edge;
  for (int v = 0; v < 2 * k; ++v)
    inst.vertices.push_back(
        {Signature::equality(static_cast<int>(incident[v].size())), incident[v],
         std::nullopt});
  for (auto _ : state) benchmark::DoNotOptimize(eval_holant(inst).is_zero());
}
BENCHMARK(BM_HolantGrid)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
