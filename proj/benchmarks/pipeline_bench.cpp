#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "lemmaforge/driver/driver.hpp"
#include "lemmaforge/frontend/parser.hpp"
#include "lemmaforge/smt/encoder.hpp"

using namespace lemmaforge;

namespace {

const char* kFiles[] = {"strlen.c", "skip_spaces.c", "strchr.c", "strchrnul.c",
                        "strspn.c", "strcspn.c", "strnlen.c", "strpbrk.c"};

std::string source(int i) {
  std::ifstream in(std::string(LEMMAFORGE_CORPUS_DIR) + "/" + kFiles[i]);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void file_args(benchmark::internal::Benchmark* b) {
  for (int i = 0; i < 8; ++i) b->Arg(i);
}

void BM_Parse(benchmark::State& state) {
  std::string text = source(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(parse_program(text, kFiles[state.range(0)]));
  state.SetLabel(kFiles[state.range(0)]);
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(BM_Parse)->Apply(file_args);

void BM_Check(benchmark::State& state) {
  SourceUnit u = parse_program(source(state.range(0)), kFiles[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(check(u));
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_Check)->Apply(file_args);

void BM_Elaborate(benchmark::State& state) {
  TypedUnit t = check(parse_program(source(state.range(0)), kFiles[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(elaborate(t));
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_Elaborate)->Apply(file_args);

void BM_Vcgen(benchmark::State& state) {
  Elaboration e = driver::elaborate_source(parse_program(source(state.range(0)), kFiles[state.range(0)]));
  size_t n = 0;
  for (auto _ : state) {
    auto vcs = generate_vcs(e.typed);
    for (auto& f : vcs) n += f.vcs.size();
  }
  state.SetLabel(kFiles[state.range(0)]);
  state.counters["vcs"] = benchmark::Counter(static_cast<double>(n), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Vcgen)->Apply(file_args);

void BM_Encode(benchmark::State& state) {
  Elaboration e = driver::elaborate_source(parse_program(source(state.range(0)), kFiles[state.range(0)]));
  auto vcs = generate_vcs(e.typed);
  for (auto _ : state) {
    for (auto& f : vcs) {
      for (auto& vc : f.vcs) benchmark::DoNotOptimize(smt::encode(e.typed, vc));
    }
  }
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_Encode)->Apply(file_args);

void BM_FalsifyMaxLen(benchmark::State& state) {
  TypedUnit t = check(parse_program(source(3), "strchrnul.c"));
  ExprPtr target = driver::falsify_target(t, "strchrnul_in_range");
  oracle::SearchSpace space;
  space.max_len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::falsify(t, target, space));
}
BENCHMARK(BM_FalsifyMaxLen)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Crosscheck(benchmark::State& state) {
  oracle::SearchSpace space;
  space.int_lo = 0;
  space.int_hi = 3;
  unsigned seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    TypedUnit t = check(parse_program(oracle::random_function(seed++)));
    state.ResumeTiming();
    benchmark::DoNotOptimize(oracle::crosscheck_wp(t, "f", space));
  }
}
BENCHMARK(BM_Crosscheck);

void BM_ProveStrchrnulInRange(benchmark::State& state) {
  Elaboration e = driver::elaborate_source(parse_program(source(3), "strchrnul.c"));
  std::vector<UnitVcs> vcs;
  for (auto& f : generate_vcs(e.typed)) {
    if (f.name == "strchrnul_in_range") vcs.push_back(f);
  }
  for (auto _ : state) benchmark::DoNotOptimize(smt::discharge_all(e.typed, vcs, {}));
}
BENCHMARK(BM_ProveStrchrnulInRange)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
