#include <cstdio>
#include <fstream>

#include "graphos/sdp.hpp"

using namespace graphos;

int main(int argc, char** argv) {
    std::ifstream in(argv[1]);
    LmiProblem p = load_lmi(in);
    std::printf("vars=%d blocks=%zu eqs=%zu seed=%zu\n", p.num_vars, p.block_dims.size(),
                p.equalities.size(), p.initial_x.size());
    for (int d : p.block_dims) std::printf("dim %d\n", d);
    SdpSettings set;
    set.max_iter = 60;
    set.trace = true;
    SdpSolution sol = solve(p, set);
    std::printf("status=%s iters=%d primal=%.12g dual=%.12g gap=%.3g comp=%.3g dres=%.3g\n",
                to_string(sol.status), sol.iterations, sol.primal_objective, sol.dual_objective,
                sol.gap, sol.complementarity, sol.dual_residual);
    return 0;
}
