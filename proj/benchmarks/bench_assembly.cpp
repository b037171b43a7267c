#include "stagbox/cases.hpp"
#include "stagbox/jacobian.hpp"
#include "stagbox/linear_solver.hpp"
#include "stagbox/newton.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

namespace {

using namespace stagbox;

std::unique_ptr<CoupledProblem> manufactured(int level, PmGridKind grid)
{
    static const ManufacturedCase mc;
    ManufacturedSetup s;
    s.level = level;
    s.grid = grid;
    return build_manufactured_problem(mc, s);
}

void BM_Residual(benchmark::State& state)
{
    auto p = manufactured(static_cast<int>(state.range(0)), PmGridKind::conforming);
    std::vector<double> x(p->size(), 0.1), r(p->size());
    for (auto _ : state) {
        p->residual<double>(x, r);
        benchmark::DoNotOptimize(r.data());
    }
    state.counters["dofs"] = p->size();
}
BENCHMARK(BM_Residual)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_Jacobian(benchmark::State& state)
{
    auto p = manufactured(static_cast<int>(state.range(0)), PmGridKind::conforming);
    JacobianAssembler ja(*p);
    std::vector<double> x(p->size(), 0.1), r;
    SparseMatrix J;
    for (auto _ : state) {
        ja.assemble(x, r, J, static_cast<JacobianMode>(state.range(1)));
        benchmark::DoNotOptimize(J.valuePtr());
    }
    state.counters["dofs"] = p->size();
    state.counters["colors"] = ja.num_colors();
}
BENCHMARK(BM_Jacobian)
    ->ArgsProduct({{0, 1, 2, 3}, {static_cast<int>(JacobianMode::autodiff), static_cast<int>(JacobianMode::finite_difference)}})
    ->Unit(benchmark::kMillisecond);

void BM_PatternTrace(benchmark::State& state)
{
    auto p = manufactured(static_cast<int>(state.range(0)), PmGridKind::simplex);
    for (auto _ : state) {
        JacobianAssembler ja(*p);
        benchmark::DoNotOptimize(ja.num_colors());
    }
}
BENCHMARK(BM_PatternTrace)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_LinearSolve(benchmark::State& state)
{
    auto p = manufactured(static_cast<int>(state.range(0)), PmGridKind::conforming);
    JacobianAssembler ja(*p);
    std::vector<double> x(p->size(), 0.0), r;
    SparseMatrix J;
    ja.assemble(x, r, J);
    for (auto _ : state) {
        auto res = linear_solve(J, r);
        benchmark::DoNotOptimize(res.x.data());
    }
    state.SetLabel(linear_solver_backend());
}
BENCHMARK(BM_LinearSolve)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Newton(benchmark::State& state)
{
    auto p = manufactured(static_cast<int>(state.range(0)), PmGridKind::conforming);
    JacobianAssembler ja(*p);
    NewtonConfig nc;
    int its = 0;
    for (auto _ : state) {
        std::vector<double> x(p->size(), 0.0);
        its = newton_solve(ja, x, nc).iterations;
        benchmark::DoNotOptimize(x.data());
    }
    state.counters["iterations"] = its;
}
BENCHMARK(BM_Newton)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
