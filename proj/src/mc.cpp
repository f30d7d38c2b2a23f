#include "frontier_lab/mc.hpp"

#include <cstdlib>

namespace flab {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FRONTIER_LAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

}  // namespace flab
