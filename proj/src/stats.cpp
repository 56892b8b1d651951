#include "hitpack/stats.hpp"

namespace hitpack::stats {

long long branch_nodes = 0;
long long dp_classes = 0;

void reset() {
    branch_nodes = 0;
    dp_classes = 0;
}

}  // namespace hitpack::stats
