#include <benchmark/benchmark.h>

#include "qui/bounds.hpp"
#include "qui/exchange_exact.hpp"
#include "qui/linalg.hpp"
#include "qui/qsr.hpp"
#include "qui/qstate.hpp"

using namespace qui;

static void BM_ZetaEntropyAB(benchmark::State& st) {
    const auto z = make_zeta(zeta_from_x(0.5));
    for (auto _ : st) {
        benchmark::DoNotOptimize(entropy(z, {"A", "B"}));
    }
}
BENCHMARK(BM_ZetaEntropyAB);

static void BM_ZetaStretch(benchmark::State& st) {
    const auto z = make_zeta(zeta_from_x(0.5));
    const auto cert = zeta_common_cert();
    for (auto _ : st) {
        benchmark::DoNotOptimize(stretch(z, cert));
    }
}
BENCHMARK(BM_ZetaStretch);

static void BM_ZetaReport(benchmark::State& st) {
    const auto params = zeta_from_x(0.5);
    const auto z = make_zeta(params);
    const ReportInputs in{zeta_common_cert(), make_zeta_decomposition(params), {}};
    for (auto _ : st) {
        benchmark::DoNotOptimize(full_report(z, in));
    }
}
BENCHMARK(BM_ZetaReport)->Unit(benchmark::kMillisecond);

static void BM_ExactSse(benchmark::State& st) {
    const auto z = make_zeta(zeta_from_x(0.5));
    const auto cert = zeta_common_cert();
    for (auto _ : st) {
        benchmark::DoNotOptimize(run_exact_sse(z, cert));
    }
}
BENCHMARK(BM_ExactSse);

static void BM_QsrNumericPoint(benchmark::State& st) {
    const auto xi = make_xi(zeta_from_x(0.5));
    const auto cert = xi_common_cert();
    for (auto _ : st) {
        benchmark::DoNotOptimize(qsr_numeric(xi, cert));
    }
}
BENCHMARK(BM_QsrNumericPoint)->Unit(benchmark::kMillisecond);

static void BM_RandomEntropy(benchmark::State& st) {
    const auto d = static_cast<std::size_t>(st.range(0));
    CVector v = CVector::Random(static_cast<Eigen::Index>(d * d * d));
    const PureState psi({{"A", d}, {"B", d}, {"R", d}}, v / v.norm());
    for (auto _ : st) {
        benchmark::DoNotOptimize(entropy(psi, {"A"}));
    }
}
BENCHMARK(BM_RandomEntropy)->Arg(4)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
