// Micro-benchmarks for the hot paths: group-ring multiplication, the
// divisor (elimination) pipeline, quadratic-form arithmetic, and
// function-field point counting / class numbers.

#include <benchmark/benchmark.h>

#include "iwasawa/finite_field.hpp"
#include "iwasawa/function_field.hpp"
#include "iwasawa/group_ring.hpp"
#include "iwasawa/heuristics.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/quadform.hpp"
#include "iwasawa/reiner.hpp"

namespace {

using namespace iwasawa;

void BM_GroupRingMultiply(benchmark::State& state) {
  long p = state.range(0);
  int precision = 12;
  GroupRingElement a = make_alpha(p, precision, 2, 3, 1);
  GroupRingElement b = GroupRingElement::t(p, precision) + norm_element(p, precision);
  for (auto _ : state) {
    GroupRingElement c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_GroupRingMultiply)->Arg(3)->Arg(7)->Arg(13);

void BM_QuotientDivisors(benchmark::State& state) {
  ReinerIdeal ideal{state.range(0), 2, 6, 1};
  for (auto _ : state) {
    QuotientModel model = quotient_model(ideal);
    benchmark::DoNotOptimize(model.shape);
  }
}
BENCHMARK(BM_QuotientDivisors)->Arg(3)->Arg(5)->Arg(7);

void BM_SmithNormalForm(benchmark::State& state) {
  ReinerIdeal ideal{7, 3, static_cast<int>(state.range(0)), 1};
  LocalMatrix m = relation_matrix(ideal, default_precision(ideal));
  for (auto _ : state) {
    SNFResult snf = smith_normal_form(m);
    benchmark::DoNotOptimize(snf);
  }
}
BENCHMARK(BM_SmithNormalForm)->Arg(6)->Arg(18)->Arg(30);

void BM_FormComposition(benchmark::State& state) {
  std::vector<QuadForm> forms = reduced_forms(-10007);
  size_t i = 0, j = forms.size() / 2;
  for (auto _ : state) {
    QuadForm c = compose(forms[i], forms[j]);
    benchmark::DoNotOptimize(c);
    i = (i + 1) % forms.size();
    j = (j + 3) % forms.size();
  }
}
BENCHMARK(BM_FormComposition);

void BM_ClassGroup(benchmark::State& state) {
  long long d = -state.range(0);
  for (auto _ : state) {
    ClassGroupResult result = class_group(d, 3);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_ClassGroup)->Arg(10007)->Arg(1000031);

void BM_PointCount(benchmark::State& state) {
  PrimePoly f(3, {0, 1, 1, 0, 0, 0, 0, 1});  // x^7 + x^2 + x
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    long long n = point_count(f, k);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_PointCount)->Arg(1)->Arg(3)->Arg(5);

void BM_BaseClassNumber(benchmark::State& state) {
  PrimePoly f(3, {0, 1, 1, 0, 0, 0, 0, 1});  // x^7 + x^2 + x
  for (auto _ : state) {
    ZetaData z = class_number(f);
    benchmark::DoNotOptimize(z.class_number);
  }
}
BENCHMARK(BM_BaseClassNumber);

void BM_FirstLayerClassNumber(benchmark::State& state) {
  PrimePoly h(3, {0, 1, 1, 0, 0, 0, 0, 1});
  for (auto _ : state) {
    HyperellipticModel layer = first_layer_model(h);
    ZetaData z = class_number(layer.f);
    benchmark::DoNotOptimize(z.class_number);
  }
}
BENCHMARK(BM_FirstLayerClassNumber);

}  // namespace

BENCHMARK_MAIN();
