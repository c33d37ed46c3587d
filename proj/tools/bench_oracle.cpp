// Serial versus OpenMP strategy enumeration in the reference evaluator.

#include "slfmc/oracle.hpp"
#include "slfmc/parser.hpp"
#include "slfmc/structures.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#ifndef SLFMC_FIXTURES
#define SLFMC_FIXTURES "fixtures"
#endif

using namespace slfmc;

namespace {

double run(const Formula& f, const Wcgs& g, bool parallel, Rat& value, int reps) {
    OracleOptions o;
    o.mode = OracleMode::MemorylessApprox;
    o.parallel = parallel;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) value = eval_sl(f, g, o).value;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::stoi(argv[1]) : 3;
    std::string dir = SLFMC_FIXTURES;
    std::vector<std::pair<std::string, std::string>> cases{
        {"ne_game.json", "<<x>> <<y>> (a,x) (b,y) min(neg(<<z>> (a,z) A F ga), A F gb)"},
        {"ne_game.json", "<<x>> [[y]] <<z>> (a,x) (b,y) A F ga"},
        {"drones.json", "<<x>> [[z]] <<y>> (c,x) (g,y) (v,z) A (dist U safe)"},
        {"matching_pennies.json", "[[y]] <<x>> (c,x) (e,y) A F win"},
    };
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads %d, repetitions %d\n", threads, reps);
    std::printf("%-22s %10s %10s %8s  %s\n", "fixture", "serial", "parallel", "speedup", "formula");
    bool agree = true;
    for (const auto& [file, text] : cases) {
        Wcgs g = Wcgs::load(dir + "/" + file);
        Formula f = parse_formula(text, Dialect::SL);
        Rat a, b;
        double s = run(f, g, false, a, reps);
        double p = run(f, g, true, b, reps);
        agree = agree && a == b;
        std::printf("%-22s %9.4fs %9.4fs %7.2fx  %s\n", file.c_str(), s, p, p > 0 ? s / p : 0.0, text.c_str());
    }
    std::printf("values agree: %s\n", agree ? "yes" : "no");
    return agree ? 0 : 1;
}
